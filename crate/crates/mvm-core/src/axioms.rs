//! Batch verification of the axiom systems against any model, with
//! counterexample extraction.
//!
//! Six suites are provided: MVM (E1-E7), ULM (M0-M3, on ℓ-monoids),
//! DyadicMVM (DE'0-DE'6), TwoDiv (TE0-TE6), LimitDyadic (LDE0-LDE3) and
//! LimitTwoDiv (LTE0-LTE6). Reports carry a per-axiom status; every FAIL
//! stores a re-checkable environment.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Fragment, Value};
use crate::error::Error;
use crate::limit::{self, EvConstSeq};
use crate::rational::{Rational, UnitRational};
use crate::term::{derive_sigma, Term};
use crate::Result;

/// The default seed used by reproducible runs when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Hard cap on enumerated tuples per law; grid products beyond the cap
/// are strided deterministically.
pub const TUPLE_CAP: usize = 100_000;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// strategies
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    /// Full product over a finite carrier.
    Exhaustive,
    /// Product over the values of denominator 2^e, strided past the
    /// tuple cap.
    Grid(u32),
    /// Seeded pseudorandom environments.
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strategy {
    pub kind: StrategyKind,
    /// Instantiation bound for indexed axiom families and λ prefixes.
    pub schema_depth: u32,
}

impl Strategy {
    pub fn exhaustive() -> Self {
        Strategy { kind: StrategyKind::Exhaustive, schema_depth: 8 }
    }

    pub fn grid(e: u32) -> Self {
        Strategy { kind: StrategyKind::Grid(e), schema_depth: 8 }
    }

    pub fn random(count: usize, seed: u64) -> Self {
        Strategy { kind: StrategyKind::Random { count, seed }, schema_depth: 8 }
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.schema_depth = depth;
        self
    }

    pub fn describe(&self) -> String {
        match self.kind {
            StrategyKind::Exhaustive => "exhaustive".into(),
            StrategyKind::Grid(e) => format!("grid:{e}"),
            StrategyKind::Random { count, seed } => format!("random:{count}(seed {seed})"),
        }
    }
}

/// The base value pool the strategy draws environments from.
fn value_pool(alg: &Algebra, strategy: &Strategy) -> Result<Vec<Value>> {
    match strategy.kind {
        StrategyKind::Exhaustive => alg
            .carrier()
            .ok_or_else(|| Error::InfiniteCarrier(alg.name())),
        StrategyKind::Grid(e) => Ok(alg.grid(e)),
        StrategyKind::Random { .. } => Ok(Vec::new()),
    }
}

/// Deterministic environments for a given arity: the full product in
/// lexicographic order when it fits the cap; an evenly strided subset of
/// the same order otherwise; seeded samples for the random strategy.
pub fn environments(
    alg: &Algebra,
    arity: usize,
    strategy: &Strategy,
) -> Result<Vec<Vec<Value>>> {
    if let StrategyKind::Random { count, seed } = strategy.kind {
        let mut rng = seeded_rng(seed);
        return Ok((0..count)
            .map(|_| (0..arity).map(|_| alg.sample(&mut rng)).collect())
            .collect());
    }
    let pool = value_pool(alg, strategy)?;
    if arity == 0 {
        return Ok(vec![Vec::new()]);
    }
    if pool.is_empty() {
        return Ok(Vec::new());
    }
    let total: u128 = (pool.len() as u128)
        .checked_pow(arity as u32)
        .unwrap_or(u128::MAX);
    let cap = match strategy.kind {
        StrategyKind::Exhaustive => u128::MAX,
        _ => TUPLE_CAP as u128,
    };
    let step = if total <= cap { 1 } else { total / cap + 1 };
    let mut out = Vec::new();
    let mut idx: u128 = 0;
    while idx < total {
        let mut env = Vec::with_capacity(arity);
        let mut rest = idx;
        for _ in 0..arity {
            env.push(pool[(rest % pool.len() as u128) as usize].clone());
            rest /= pool.len() as u128;
        }
        out.push(env);
        idx += step;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Counterexample {
    /// Environment values in the algebra's canonical text form,
    /// x1, x2, ... in order.
    pub env: Vec<String>,
    /// The violated law, as `lhs REL rhs` over the term grammar where
    /// expressible, or a named internal check.
    pub law: String,
    pub lhs_value: String,
    pub rhs_value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail { counterexample: Counterexample },
    Skipped { reason: String },
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail { .. })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomOutcome {
    pub id: String,
    #[serde(flatten)]
    pub status: Status,
    pub tuples: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub suite: String,
    pub strategy: String,
    pub axioms: Vec<AxiomOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| !a.status.is_fail())
    }

    pub fn all_pass_no_skip(&self) -> bool {
        self.axioms.iter().all(|a| a.status.is_pass())
    }

    pub fn first_fail(&self) -> Option<&AxiomOutcome> {
        self.axioms.iter().find(|a| a.status.is_fail())
    }
}

// ---------------------------------------------------------------------------
// laws and axioms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
}

impl Rel {
    fn symbol(&self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Le => "<=",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Law {
    pub name: String,
    pub rel: Rel,
    pub lhs: Term,
    pub rhs: Term,
}

impl Law {
    pub fn eq(name: &str, lhs: Term, rhs: Term) -> Self {
        Law { name: name.into(), rel: Rel::Eq, lhs, rhs }
    }

    pub fn le(name: &str, lhs: Term, rhs: Term) -> Self {
        Law { name: name.into(), rel: Rel::Le, lhs, rhs }
    }

    pub fn arity(&self) -> usize {
        self.lhs.arity().max(self.rhs.arity())
    }

    pub fn holds(&self, alg: &Algebra, env: &[Value]) -> Result<bool> {
        let l = self.lhs.eval(alg, env)?;
        let r = self.rhs.eval(alg, env)?;
        match self.rel {
            Rel::Eq => Ok(l == r),
            Rel::Le => alg.le(&l, &r),
        }
    }

    fn describe(&self) -> String {
        format!("{} {} {}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

/// How an axiom is checked.
#[derive(Debug, Clone)]
pub enum AxiomKind {
    /// Ordered sub-laws, each enumerated fully before the next.
    Laws(Vec<Law>),
    /// λ of the τ-sequence of (x, y) converges to y: y is contained in
    /// every μ-sandwich of the τ-prefix up to max_n, with width bound.
    TauSandwich { max_n: usize },
    /// λ(x1, x2, ..., tail...) lies in the μ_n sandwich (one n).
    MuSandwich { n: u32 },
    /// λ(s) = λ(μ-image of s), on prefix_len variables plus a tail.
    MuRewrite { prefix_len: usize },
    /// λ(s) ⊕ λ(s) = λ(shifted doubled s) on 2-Cauchy inputs (and the
    /// ⊙ dual). Environments are 2-Cauchy-ified deterministically.
    Doubling { odot: bool, prefix_len: usize },
}

#[derive(Debug, Clone)]
pub struct Axiom {
    pub id: String,
    pub kind: AxiomKind,
}

impl Axiom {
    fn laws(id: &str, laws: Vec<Law>) -> Self {
        Axiom { id: id.into(), kind: AxiomKind::Laws(laws) }
    }

    pub fn arity(&self) -> usize {
        match &self.kind {
            AxiomKind::Laws(ls) => ls.iter().map(Law::arity).max().unwrap_or(0),
            AxiomKind::TauSandwich { .. } => 2,
            AxiomKind::MuSandwich { n } => *n as usize + 1,
            AxiomKind::MuRewrite { prefix_len } => prefix_len + 1,
            AxiomKind::Doubling { prefix_len, .. } => prefix_len + 1,
        }
    }
}

// ---------------------------------------------------------------------------
// suite definitions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    Mvm,
    Ulm,
    DyadicMvm,
    TwoDiv,
    LimitDyadic,
    LimitTwoDiv,
}

impl SuiteId {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Mvm => "mvm",
            SuiteId::Ulm => "ulm",
            SuiteId::DyadicMvm => "dyadic-mvm",
            SuiteId::TwoDiv => "two-div",
            SuiteId::LimitDyadic => "limit-dyadic",
            SuiteId::LimitTwoDiv => "limit-two-div",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mvm" => Ok(SuiteId::Mvm),
            "ulm" => Ok(SuiteId::Ulm),
            "dyadic-mvm" | "dyadic" => Ok(SuiteId::DyadicMvm),
            "two-div" | "2div" => Ok(SuiteId::TwoDiv),
            "limit-dyadic" | "lde" => Ok(SuiteId::LimitDyadic),
            "limit-two-div" | "lte" => Ok(SuiteId::LimitTwoDiv),
            _ => Err(Error::invalid(format!("unknown suite {s:?}"))),
        }
    }
}

fn v(i: usize) -> Term {
    Term::Var(i)
}

fn dyadic_term(t: Rational) -> Term {
    Term::Const(UnitRational::new(t).expect("dyadic constant in [0,1]"))
}

/// E1-E7.
pub fn mvm_axioms() -> Vec<Axiom> {
    let (x, y, z) = (v(0), v(1), v(2));
    let zero = Term::c("0");
    let one = Term::c("1");
    vec![
        Axiom::laws(
            "E1",
            vec![
                Law::eq("join-comm", Term::join(x.clone(), y.clone()), Term::join(y.clone(), x.clone())),
                Law::eq("meet-comm", Term::meet(x.clone(), y.clone()), Term::meet(y.clone(), x.clone())),
                Law::eq(
                    "join-assoc",
                    Term::join(Term::join(x.clone(), y.clone()), z.clone()),
                    Term::join(x.clone(), Term::join(y.clone(), z.clone())),
                ),
                Law::eq(
                    "meet-assoc",
                    Term::meet(Term::meet(x.clone(), y.clone()), z.clone()),
                    Term::meet(x.clone(), Term::meet(y.clone(), z.clone())),
                ),
                Law::eq("join-idem", Term::join(x.clone(), x.clone()), x.clone()),
                Law::eq("meet-idem", Term::meet(x.clone(), x.clone()), x.clone()),
                Law::eq(
                    "absorb-1",
                    Term::join(x.clone(), Term::meet(x.clone(), y.clone())),
                    x.clone(),
                ),
                Law::eq(
                    "absorb-2",
                    Term::meet(x.clone(), Term::join(x.clone(), y.clone())),
                    x.clone(),
                ),
                Law::eq(
                    "distribute",
                    Term::meet(x.clone(), Term::join(y.clone(), z.clone())),
                    Term::join(Term::meet(x.clone(), y.clone()), Term::meet(x.clone(), z.clone())),
                ),
                Law::eq(
                    "distribute-dual",
                    Term::join(x.clone(), Term::meet(y.clone(), z.clone())),
                    Term::meet(Term::join(x.clone(), y.clone()), Term::join(x.clone(), z.clone())),
                ),
            ],
        ),
        Axiom::laws(
            "E2",
            vec![
                Law::eq("oplus-comm", Term::oplus(x.clone(), y.clone()), Term::oplus(y.clone(), x.clone())),
                Law::eq("oplus-unit", Term::oplus(x.clone(), zero.clone()), x.clone()),
                Law::eq(
                    "oplus-assoc",
                    Term::oplus(Term::oplus(x.clone(), y.clone()), z.clone()),
                    Term::oplus(x.clone(), Term::oplus(y.clone(), z.clone())),
                ),
                Law::eq("odot-comm", Term::odot(x.clone(), y.clone()), Term::odot(y.clone(), x.clone())),
                Law::eq("odot-unit", Term::odot(x.clone(), one.clone()), x.clone()),
                Law::eq(
                    "odot-assoc",
                    Term::odot(Term::odot(x.clone(), y.clone()), z.clone()),
                    Term::odot(x.clone(), Term::odot(y.clone(), z.clone())),
                ),
            ],
        ),
        Axiom::laws("E3", {
            let mut laws = Vec::new();
            let pairs: [(&str, fn(Term, Term) -> Term); 2] =
                [("oplus", Term::oplus), ("odot", Term::odot)];
            let lats: [(&str, fn(Term, Term) -> Term); 2] =
                [("join", Term::join), ("meet", Term::meet)];
            for (opn, op) in pairs {
                for (latn, lat) in lats {
                    laws.push(Law::eq(
                        &format!("{opn}-over-{latn}-left"),
                        op(lat(x.clone(), y.clone()), z.clone()),
                        lat(op(x.clone(), z.clone()), op(y.clone(), z.clone())),
                    ));
                    laws.push(Law::eq(
                        &format!("{opn}-over-{latn}-right"),
                        op(x.clone(), lat(y.clone(), z.clone())),
                        lat(op(x.clone(), y.clone()), op(x.clone(), z.clone())),
                    ));
                }
            }
            laws
        }),
        Axiom::laws(
            "E4",
            vec![Law::eq("sigma1=sigma3", derive_sigma(1).unwrap(), derive_sigma(3).unwrap())],
        ),
        Axiom::laws(
            "E5",
            vec![Law::eq("sigma2=sigma4", derive_sigma(2).unwrap(), derive_sigma(4).unwrap())],
        ),
        Axiom::laws(
            "E6",
            vec![Law::eq(
                "odot-oplus-vs-sigma",
                Term::oplus(Term::odot(x.clone(), y.clone()), z.clone()),
                Term::join(derive_sigma(1).unwrap(), z.clone()),
            )],
        ),
        Axiom::laws(
            "E7",
            vec![Law::eq(
                "oplus-odot-vs-sigma",
                Term::odot(Term::oplus(x.clone(), y.clone()), z.clone()),
                Term::meet(derive_sigma(2).unwrap(), z),
            )],
        ),
    ]
}

/// DE'0-DE'6: the MVM reduct plus the indexed constant axioms
/// d_n ⊕ d_n = d_{n-1}, u_n ⊙ u_n = u_{n-1}, d_n ⊙ d_n = 0,
/// u_n ⊕ u_n = 1, d_n ⊕ u_n = 1, d_n ⊙ u_n = 0, instantiated up to the
/// schema depth.
pub fn dyadic_axioms(depth: u32) -> Vec<Axiom> {
    let mut out: Vec<Axiom> = mvm_axioms()
        .into_iter()
        .map(|a| Axiom { id: format!("DE'0:{}", a.id), kind: a.kind })
        .collect();
    let d = |n: u32| dyadic_term(Rational::pow2_inv(n));
    let u = |n: u32| dyadic_term(&Rational::one() - &Rational::pow2_inv(n));
    let mut fam = |id: &str, mk: &dyn Fn(u32) -> Law| {
        let laws: Vec<Law> = (1..=depth).map(mk).collect();
        out.push(Axiom::laws(id, laws));
    };
    fam("DE'1", &|n| Law::eq(&format!("n={n}"), Term::oplus(d(n), d(n)), d(n - 1)));
    fam("DE'2", &|n| Law::eq(&format!("n={n}"), Term::odot(u(n), u(n)), u(n - 1)));
    fam("DE'3", &|n| Law::eq(&format!("n={n}"), Term::odot(d(n), d(n)), Term::c("0")));
    fam("DE'4", &|n| Law::eq(&format!("n={n}"), Term::oplus(u(n), u(n)), Term::c("1")));
    fam("DE'5", &|n| Law::eq(&format!("n={n}"), Term::oplus(d(n), u(n)), Term::c("1")));
    fam("DE'6", &|n| Law::eq(&format!("n={n}"), Term::odot(d(n), u(n)), Term::c("0")));
    out
}

/// TE0-TE6.
pub fn two_div_axioms() -> Vec<Axiom> {
    let (x, y) = (v(0), v(1));
    let mut out: Vec<Axiom> = mvm_axioms()
        .into_iter()
        .map(|a| Axiom { id: format!("TE0:{}", a.id), kind: a.kind })
        .collect();
    out.push(Axiom::laws(
        "TE1",
        vec![Law::eq(
            "cohalf-via-half",
            Term::cohalf(x.clone()),
            Term::oplus(Term::half(Term::c("1")), Term::half(x.clone())),
        )],
    ));
    out.push(Axiom::laws(
        "TE2",
        vec![Law::eq(
            "half-via-cohalf",
            Term::half(x.clone()),
            Term::odot(Term::cohalf(Term::c("0")), Term::cohalf(x.clone())),
        )],
    ));
    out.push(Axiom::laws(
        "TE3",
        vec![Law::eq(
            "half-doubles-back",
            Term::oplus(Term::half(x.clone()), Term::half(x.clone())),
            x.clone(),
        )],
    ));
    out.push(Axiom::laws(
        "TE4",
        vec![Law::eq(
            "cohalf-doubles-back",
            Term::odot(Term::cohalf(x.clone()), Term::cohalf(x.clone())),
            x.clone(),
        )],
    ));
    out.push(Axiom::laws(
        "TE5",
        vec![Law::eq(
            "half-additive",
            Term::half(Term::oplus(Term::half(x.clone()), Term::half(y.clone()))),
            Term::oplus(Term::half(Term::half(x.clone())), Term::half(Term::half(y.clone()))),
        )],
    ));
    out.push(Axiom::laws(
        "TE6",
        vec![Law::eq(
            "cohalf-multiplicative",
            Term::cohalf(Term::odot(Term::cohalf(x.clone()), Term::cohalf(y.clone()))),
            Term::odot(Term::cohalf(Term::cohalf(x)), Term::cohalf(Term::cohalf(y))),
        )],
    ));
    out
}

/// Derived two-div facts pinned as standalone identities: h(0) = 0,
/// j(1) = 1, h(1) = j(0).
pub fn two_div_derived_laws() -> Vec<Law> {
    vec![
        Law::eq("half-of-zero", Term::half(Term::c("0")), Term::c("0")),
        Law::eq("cohalf-of-one", Term::cohalf(Term::c("1")), Term::c("1")),
        Law::eq("two-ways-for-one-half", Term::half(Term::c("1")), Term::cohalf(Term::c("0"))),
    ]
}

/// LDE0-LDE3.
pub fn limit_dyadic_axioms(depth: u32) -> Vec<Axiom> {
    let mut out: Vec<Axiom> = dyadic_axioms(depth)
        .into_iter()
        .map(|a| Axiom { id: format!("LDE0:{}", a.id), kind: a.kind })
        .collect();
    out.push(Axiom::laws(
        "LDE1",
        vec![Law::eq(
            "lambda-const",
            Term::LambdaNode(Vec::new(), Box::new(v(0))),
            v(0),
        )],
    ));
    out.push(Axiom { id: "LDE2".into(), kind: AxiomKind::TauSandwich { max_n: 20 } });
    for n in 1..=depth {
        out.push(Axiom { id: format!("LDE3[n={n}]"), kind: AxiomKind::MuSandwich { n } });
    }
    out
}

/// LTE0-LTE6. LTE4 is the n = 2 sandwich; LTE5/LTE6 are the doubling
/// equations, checked exactly on 2-Cauchy eventually-constant inputs;
/// LTE3 is the μ-rewriting law.
pub fn limit_two_div_axioms() -> Vec<Axiom> {
    let mut out: Vec<Axiom> = two_div_axioms()
        .into_iter()
        .map(|a| Axiom { id: format!("LTE0:{}", a.id), kind: a.kind })
        .collect();
    out.push(Axiom::laws(
        "LTE1",
        vec![Law::eq(
            "lambda-const",
            Term::LambdaNode(Vec::new(), Box::new(v(0))),
            v(0),
        )],
    ));
    out.push(Axiom { id: "LTE2".into(), kind: AxiomKind::TauSandwich { max_n: 20 } });
    out.push(Axiom { id: "LTE3".into(), kind: AxiomKind::MuRewrite { prefix_len: 3 } });
    out.push(Axiom { id: "LTE4".into(), kind: AxiomKind::MuSandwich { n: 2 } });
    out.push(Axiom { id: "LTE5".into(), kind: AxiomKind::Doubling { odot: false, prefix_len: 3 } });
    out.push(Axiom { id: "LTE6".into(), kind: AxiomKind::Doubling { odot: true, prefix_len: 3 } });
    out
}

pub fn suite_axioms(suite: SuiteId, depth: u32) -> Result<Vec<Axiom>> {
    match suite {
        SuiteId::Mvm => Ok(mvm_axioms()),
        SuiteId::DyadicMvm => Ok(dyadic_axioms(depth)),
        SuiteId::TwoDiv => Ok(two_div_axioms()),
        SuiteId::LimitDyadic => Ok(limit_dyadic_axioms(depth)),
        SuiteId::LimitTwoDiv => Ok(limit_two_div_axioms()),
        SuiteId::Ulm => Err(Error::invalid(
            "the ulm suite runs on ℓ-monoid models; use check_ulm_suite",
        )),
    }
}

fn suite_fragment(suite: SuiteId) -> Fragment {
    match suite {
        SuiteId::Mvm => Fragment::MvmCore,
        SuiteId::DyadicMvm => Fragment::DyadicConstants,
        SuiteId::TwoDiv => Fragment::TwoDiv,
        SuiteId::LimitDyadic | SuiteId::LimitTwoDiv => Fragment::Lambda,
        SuiteId::Ulm => Fragment::LmonoidCore,
    }
}

// ---------------------------------------------------------------------------
// checking
// ---------------------------------------------------------------------------

fn unit_components(alg: &Algebra, v: &Value) -> Result<Vec<UnitRational>> {
    match v {
        Value::Unit(u) => Ok(vec![u.clone()]),
        Value::Fn(vs) => Ok(vs.clone()),
        _ => Err(Error::BadTerm(format!(
            "λ checks need interval components on {}",
            alg.name()
        ))),
    }
}

fn counterexample(
    alg: &Algebra,
    env: &[Value],
    law: String,
    lhs: String,
    rhs: String,
) -> Counterexample {
    Counterexample {
        env: env.iter().map(|x| alg.value_str(x)).collect(),
        law,
        lhs_value: lhs,
        rhs_value: rhs,
    }
}

/// Evaluates a single axiom over the strategy's environments. Returns a
/// status and the number of checked tuples.
pub fn check_axiom(alg: &Algebra, axiom: &Axiom, strategy: &Strategy) -> Result<(Status, u64)> {
    let mut tuples: u64 = 0;
    match &axiom.kind {
        AxiomKind::Laws(laws) => {
            for law in laws {
                let envs = environments(alg, law.arity(), strategy)?;
                for env in envs {
                    // constants outside the model's resolution mark the
                    // instance skipped rather than failed
                    let l = match law.lhs.eval(alg, &env) {
                        Ok(v) => v,
                        Err(Error::NotInCarrier(c)) => {
                            return Ok((
                                Status::Skipped {
                                    reason: format!("constant {c} not in carrier"),
                                },
                                tuples,
                            ))
                        }
                        Err(e) => return Err(e),
                    };
                    let r = match law.rhs.eval(alg, &env) {
                        Ok(v) => v,
                        Err(Error::NotInCarrier(c)) => {
                            return Ok((
                                Status::Skipped {
                                    reason: format!("constant {c} not in carrier"),
                                },
                                tuples,
                            ))
                        }
                        Err(e) => return Err(e),
                    };
                    tuples += 1;
                    let ok = match law.rel {
                        Rel::Eq => l == r,
                        Rel::Le => alg.le(&l, &r)?,
                    };
                    if !ok {
                        return Ok((
                            Status::Fail {
                                counterexample: counterexample(
                                    alg,
                                    &env,
                                    law.describe(),
                                    alg.value_str(&l),
                                    alg.value_str(&r),
                                ),
                            },
                            tuples,
                        ));
                    }
                }
            }
            Ok((Status::Pass, tuples))
        }
        AxiomKind::TauSandwich { max_n } => {
            let envs = environments(alg, 2, strategy)?;
            for env in envs {
                tuples += 1;
                let xs = unit_components(alg, &env[0])?;
                let ys = unit_components(alg, &env[1])?;
                for (x, y) in xs.iter().zip(&ys) {
                    let prefix: Vec<UnitRational> = (0..*max_n as u32)
                        .map(|i| limit::tau_step(i, x, y))
                        .collect();
                    for n in 1..=*max_n {
                        let iv = limit::lambda_interval(&prefix, n)?;
                        let width_ok = n < 2
                            || iv.width() <= Rational::pow2_inv(n as u32 - 2);
                        if !iv.contains(y) || !width_ok {
                            return Ok((
                                Status::Fail {
                                    counterexample: counterexample(
                                        alg,
                                        &env,
                                        format!("y in mu-sandwich of tau-prefix at N={n}"),
                                        format!("[{}, {}]", iv.lo, iv.hi),
                                        y.to_string(),
                                    ),
                                },
                                tuples,
                            ));
                        }
                    }
                }
            }
            Ok((Status::Pass, tuples))
        }
        AxiomKind::MuSandwich { n } => {
            let n = *n as usize;
            let envs = environments(alg, n + 1, strategy)?;
            for env in envs {
                tuples += 1;
                let comps: Vec<Vec<UnitRational>> = env
                    .iter()
                    .map(|v| unit_components(alg, v))
                    .collect::<Result<_>>()?;
                for c in 0..comps[0].len() {
                    let prefix: Vec<UnitRational> =
                        (0..n).map(|i| comps[i][c].clone()).collect();
                    let tail = comps[n][c].clone();
                    let lam = limit::lambda_exact(&EvConstSeq::new(prefix.clone(), tail));
                    let iv = limit::lambda_interval(&prefix, n)?;
                    if !iv.contains(&lam) {
                        return Ok((
                            Status::Fail {
                                counterexample: counterexample(
                                    alg,
                                    &env,
                                    format!("mu_{n} sandwich contains λ"),
                                    format!("[{}, {}]", iv.lo, iv.hi),
                                    lam.to_string(),
                                ),
                            },
                            tuples,
                        ));
                    }
                }
            }
            Ok((Status::Pass, tuples))
        }
        AxiomKind::MuRewrite { prefix_len } => {
            let envs = environments(alg, prefix_len + 1, strategy)?;
            for env in envs {
                tuples += 1;
                let comps: Vec<Vec<UnitRational>> = env
                    .iter()
                    .map(|v| unit_components(alg, v))
                    .collect::<Result<_>>()?;
                for c in 0..comps[0].len() {
                    let prefix: Vec<UnitRational> =
                        (0..*prefix_len).map(|i| comps[i][c].clone()).collect();
                    let tail = comps[*prefix_len][c].clone();
                    if let Some(st) = mu_rewrite_violation(&prefix, &tail)? {
                        return Ok((
                            Status::Fail {
                                counterexample: counterexample(
                                    alg,
                                    &env,
                                    "λ(s) = λ(μ-image of s)".into(),
                                    st.0,
                                    st.1,
                                ),
                            },
                            tuples,
                        ));
                    }
                }
            }
            Ok((Status::Pass, tuples))
        }
        AxiomKind::Doubling { odot, prefix_len } => {
            let envs = environments(alg, prefix_len + 1, strategy)?;
            for env in envs {
                tuples += 1;
                let comps: Vec<Vec<UnitRational>> = env
                    .iter()
                    .map(|v| unit_components(alg, v))
                    .collect::<Result<_>>()?;
                for c in 0..comps[0].len() {
                    let raw: Vec<UnitRational> =
                        (0..=*prefix_len).map(|i| comps[i][c].clone()).collect();
                    if let Some(st) = doubling_violation(&raw, *odot)? {
                        return Ok((
                            Status::Fail {
                                counterexample: counterexample(
                                    alg,
                                    &env,
                                    if *odot {
                                        "λ(s)⊙λ(s) = λ(doubled shifted s)".into()
                                    } else {
                                        "λ(s)⊕λ(s) = λ(doubled shifted s)".into()
                                    },
                                    st.0,
                                    st.1,
                                ),
                            },
                            tuples,
                        ));
                    }
                }
            }
            Ok((Status::Pass, tuples))
        }
    }
}

/// The μ-rewriting law on one component: λ(s) must agree with λ of the
/// μ-image of s. The image is unrolled to stationarity when it becomes
/// eventually constant; otherwise λ(s) is checked against every certified
/// sandwich of the image prefix up to N = 20.
fn mu_rewrite_violation(
    prefix: &[UnitRational],
    tail: &UnitRational,
) -> Result<Option<(String, String)>> {
    let lam = limit::lambda_exact(&EvConstSeq::new(prefix.to_vec(), tail.clone()));
    // unroll the μ-image through the constant tail
    let mut image = limit::mu_trace(prefix);
    let mut stationary = false;
    let unroll_to = prefix.len() + 24;
    for k in prefix.len()..unroll_to {
        let prev = image.last().cloned().unwrap_or_else(|| tail.clone());
        let next = limit::tau_step(k as u32, tail, &prev);
        if &next == tail {
            stationary = true;
            image.push(next);
            break;
        }
        image.push(next);
    }
    if stationary {
        let lam_image = limit::lambda_exact(&EvConstSeq::new(image.clone(), tail.clone()));
        if lam_image != lam {
            return Ok(Some((lam.to_string(), lam_image.to_string())));
        }
        return Ok(None);
    }
    // non-stationary image: λ(image) is only enclosed, so demand that
    // λ(s) lies in every sandwich of the image prefix
    for n in 1..=image.len().min(20) {
        let iv = limit::lambda_interval(&image, n)?;
        if !iv.contains(&lam) {
            return Ok(Some((lam.to_string(), format!("[{}, {}]", iv.lo, iv.hi))));
        }
    }
    Ok(None)
}

/// The doubling law on one component. The raw values are first made
/// 2-Cauchy by μ-folding (on 2-Cauchy input this is the identity), so the
/// law's μ_k terms reduce to the sequence entries themselves and both
/// sides are exactly evaluable.
fn doubling_violation(raw: &[UnitRational], odot: bool) -> Result<Option<(String, String)>> {
    let (raw_prefix, raw_tail) = raw.split_at(raw.len() - 1);
    let mut prefix = limit::mu_trace(raw_prefix);
    let tail = limit::tau_step(prefix.len() as u32, &raw_tail[0], prefix.last().unwrap());
    prefix.push(tail.clone());
    debug_assert!(limit::is_2cauchy(&prefix, Some(&tail)));
    let s = EvConstSeq::new(prefix.clone(), tail.clone());
    let lam = limit::lambda_exact(&s);
    let dbl = |x: &UnitRational| if odot { x.odot(x) } else { x.oplus(x) };
    let lhs = dbl(&lam);
    // μ_k of a 2-Cauchy sequence is its k-th entry, so the shifted
    // doubled argument drops the first entry
    let shifted: Vec<UnitRational> = prefix.iter().skip(1).map(&dbl).collect();
    let rhs = limit::lambda_exact(&EvConstSeq::new(shifted, dbl(&tail)));
    if lhs != rhs {
        return Ok(Some((lhs.to_string(), rhs.to_string())));
    }
    Ok(None)
}

/// Runs a full suite against a model.
pub fn check_suite(alg: &Algebra, suite: SuiteId, strategy: &Strategy) -> Result<VerificationReport> {
    let frag = suite_fragment(suite);
    if !alg.supports(frag) {
        return Err(Error::UnsupportedFragment(alg.name(), frag.to_string()));
    }
    let axioms = suite_axioms(suite, strategy.schema_depth)?;
    let mut outcomes = Vec::with_capacity(axioms.len());
    for axiom in &axioms {
        let (status, tuples) = check_axiom(alg, axiom, strategy)?;
        outcomes.push(AxiomOutcome { id: axiom.id.clone(), status, tuples });
    }
    Ok(VerificationReport {
        subject: alg.name(),
        suite: suite.name().into(),
        strategy: strategy.describe(),
        axioms: outcomes,
    })
}

/// Checks a single identity lhs = rhs, reporting PASS with coverage or
/// FAIL with the first counterexample in enumeration order.
pub fn check_identity(
    lhs: &Term,
    rhs: &Term,
    alg: &Algebra,
    strategy: &Strategy,
) -> Result<VerificationReport> {
    let axiom = Axiom::laws("identity", vec![Law::eq("identity", lhs.clone(), rhs.clone())]);
    let (status, tuples) = check_axiom(alg, &axiom, strategy)?;
    Ok(VerificationReport {
        subject: alg.name(),
        suite: "identity".into(),
        strategy: strategy.describe(),
        axioms: vec![AxiomOutcome { id: format!("{lhs} = {rhs}"), status, tuples }],
    })
}

/// First counterexample of an identity in deterministic enumeration
/// order, if any.
pub fn find_counterexample(
    alg: &Algebra,
    lhs: &Term,
    rhs: &Term,
    strategy: &Strategy,
) -> Result<Option<Vec<Value>>> {
    let arity = lhs.arity().max(rhs.arity());
    for env in environments(alg, arity, strategy)? {
        if lhs.eval(alg, &env)? != rhs.eval(alg, &env)? {
            return Ok(Some(env));
        }
    }
    Ok(None)
}

/// Re-evaluates a stored counterexample and confirms whether the axiom
/// still fails on it. The axiom is located by id in its suite.
pub fn recheck(
    alg: &Algebra,
    suite: SuiteId,
    axiom_id: &str,
    env_strings: &[String],
) -> Result<bool> {
    let axioms = suite_axioms(suite, 8)?;
    let axiom = axioms
        .iter()
        .find(|a| a.id == axiom_id)
        .ok_or_else(|| Error::invalid(format!("axiom {axiom_id:?} not in suite")))?;
    let env: Vec<Value> = env_strings
        .iter()
        .map(|s| alg.parse_value(s))
        .collect::<Result<_>>()?;
    let pinned = Strategy {
        kind: StrategyKind::Random { count: 0, seed: 0 },
        schema_depth: 8,
    };
    // check only the provided environment by running the axiom kind on it
    let status = check_axiom_on_env(alg, axiom, &env, &pinned)?;
    Ok(status.is_fail())
}

fn check_axiom_on_env(
    alg: &Algebra,
    axiom: &Axiom,
    env: &[Value],
    _strategy: &Strategy,
) -> Result<Status> {
    match &axiom.kind {
        AxiomKind::Laws(laws) => {
            for law in laws {
                if law.arity() > env.len() {
                    continue;
                }
                if !law.holds(alg, env)? {
                    let l = law.lhs.eval(alg, env)?;
                    let r = law.rhs.eval(alg, env)?;
                    return Ok(Status::Fail {
                        counterexample: counterexample(
                            alg,
                            env,
                            law.describe(),
                            alg.value_str(&l),
                            alg.value_str(&r),
                        ),
                    });
                }
            }
            Ok(Status::Pass)
        }
        _ => {
            // special kinds re-run their full per-env check
            let single = SingleEnvStrategy(env.to_vec());
            check_axiom_special_on(alg, axiom, &single)
        }
    }
}

struct SingleEnvStrategy(Vec<Value>);

fn check_axiom_special_on(
    alg: &Algebra,
    axiom: &Axiom,
    single: &SingleEnvStrategy,
) -> Result<Status> {
    // reuse the main path by swapping environments for the fixed one
    let envs = vec![single.0.clone()];
    match &axiom.kind {
        AxiomKind::TauSandwich { max_n } => {
            for env in envs {
                let xs = unit_components(alg, &env[0])?;
                let ys = unit_components(alg, &env[1])?;
                for (x, y) in xs.iter().zip(&ys) {
                    let prefix: Vec<UnitRational> = (0..*max_n as u32)
                        .map(|i| limit::tau_step(i, x, y))
                        .collect();
                    for n in 1..=*max_n {
                        let iv = limit::lambda_interval(&prefix, n)?;
                        if !iv.contains(y) {
                            return Ok(Status::Fail {
                                counterexample: counterexample(
                                    alg,
                                    &env,
                                    format!("y in mu-sandwich of tau-prefix at N={n}"),
                                    format!("[{}, {}]", iv.lo, iv.hi),
                                    y.to_string(),
                                ),
                            });
                        }
                    }
                }
            }
            Ok(Status::Pass)
        }
        AxiomKind::MuSandwich { n } => {
            let n = *n as usize;
            for env in envs {
                let comps: Vec<Vec<UnitRational>> = env
                    .iter()
                    .map(|v| unit_components(alg, v))
                    .collect::<Result<_>>()?;
                for c in 0..comps[0].len() {
                    let prefix: Vec<UnitRational> =
                        (0..n).map(|i| comps[i][c].clone()).collect();
                    let tail = comps[n][c].clone();
                    let lam = limit::lambda_exact(&EvConstSeq::new(prefix.clone(), tail));
                    let iv = limit::lambda_interval(&prefix, n)?;
                    if !iv.contains(&lam) {
                        return Ok(Status::Fail {
                            counterexample: counterexample(
                                alg,
                                &env,
                                format!("mu_{n} sandwich contains λ"),
                                format!("[{}, {}]", iv.lo, iv.hi),
                                lam.to_string(),
                            ),
                        });
                    }
                }
            }
            Ok(Status::Pass)
        }
        AxiomKind::MuRewrite { prefix_len } => {
            for env in envs {
                let comps: Vec<Vec<UnitRational>> = env
                    .iter()
                    .map(|v| unit_components(alg, v))
                    .collect::<Result<_>>()?;
                for c in 0..comps[0].len() {
                    let prefix: Vec<UnitRational> =
                        (0..*prefix_len).map(|i| comps[i][c].clone()).collect();
                    let tail = comps[*prefix_len][c].clone();
                    if let Some(st) = mu_rewrite_violation(&prefix, &tail)? {
                        return Ok(Status::Fail {
                            counterexample: counterexample(
                                alg,
                                &env,
                                "λ(s) = λ(μ-image of s)".into(),
                                st.0,
                                st.1,
                            ),
                        });
                    }
                }
            }
            Ok(Status::Pass)
        }
        AxiomKind::Doubling { odot, prefix_len } => {
            for env in envs {
                let comps: Vec<Vec<UnitRational>> = env
                    .iter()
                    .map(|v| unit_components(alg, v))
                    .collect::<Result<_>>()?;
                for c in 0..comps[0].len() {
                    let raw: Vec<UnitRational> =
                        (0..=*prefix_len).map(|i| comps[i][c].clone()).collect();
                    if let Some(st) = doubling_violation(&raw, *odot)? {
                        return Ok(Status::Fail {
                            counterexample: counterexample(
                                alg,
                                &env,
                                "doubling".into(),
                                st.0,
                                st.1,
                            ),
                        });
                    }
                }
            }
            Ok(Status::Pass)
        }
        AxiomKind::Laws(_) => unreachable!("handled by caller"),
    }
}

// ---------------------------------------------------------------------------
// the ULM suite on ℓ-monoid-shaped models
// ---------------------------------------------------------------------------

/// A model in the unital ℓ-monoid signature (+, ∨, ∧, 0, 1, -1). The
/// builtin monoids implement this, and so do good-sequence monoids.
pub trait UlmModel {
    type Elem: Clone + Eq + std::fmt::Debug;

    fn model_name(&self) -> String;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn pos_unit(&self) -> Self::Elem;
    fn neg_unit(&self) -> Self::Elem;
    /// Sample pool for law checking.
    fn elements(&self, strategy: &Strategy) -> Vec<Self::Elem>;
    /// Least order-unit bound n for M3, when computable.
    fn order_unit_witness(&self, x: &Self::Elem) -> Option<u64>;
    fn elem_str(&self, x: &Self::Elem) -> String;

    fn le(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        &self.join(x, y) == y
    }
}

impl UlmModel for crate::algebra::LMonoid {
    type Elem = crate::algebra::MValue;

    fn model_name(&self) -> String {
        self.name().into()
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        LMonoidDispatch::add(self, x, y)
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        LMonoidDispatch::join(self, x, y)
    }

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        LMonoidDispatch::meet(self, x, y)
    }

    fn zero(&self) -> Self::Elem {
        LMonoidDispatch::zero(self)
    }

    fn pos_unit(&self) -> Self::Elem {
        LMonoidDispatch::pos_unit(self)
    }

    fn neg_unit(&self) -> Self::Elem {
        LMonoidDispatch::neg_unit(self)
    }

    fn elements(&self, strategy: &Strategy) -> Vec<Self::Elem> {
        let pool = match strategy.kind {
            StrategyKind::Grid(e) => self.grid(e),
            StrategyKind::Exhaustive => self.grid(3),
            StrategyKind::Random { count, seed } => {
                let mut rng = seeded_rng(seed);
                let pool = self.grid(4);
                return (0..count.min(pool.len() * 4))
                    .map(|_| pool[rand::Rng::gen_range(&mut rng, 0..pool.len())].clone())
                    .collect();
            }
        };
        stride_pool(pool, 24)
    }

    fn order_unit_witness(&self, x: &Self::Elem) -> Option<u64> {
        Some(crate::algebra::LMonoid::order_unit_witness(self, x))
    }

    fn elem_str(&self, x: &Self::Elem) -> String {
        x.to_string()
    }
}

/// Disambiguation shim: the inherent methods on LMonoid share names with
/// the trait methods.
trait LMonoidDispatch {
    fn add(&self, x: &crate::algebra::MValue, y: &crate::algebra::MValue) -> crate::algebra::MValue;
    fn join(&self, x: &crate::algebra::MValue, y: &crate::algebra::MValue)
        -> crate::algebra::MValue;
    fn meet(&self, x: &crate::algebra::MValue, y: &crate::algebra::MValue)
        -> crate::algebra::MValue;
    fn zero(&self) -> crate::algebra::MValue;
    fn pos_unit(&self) -> crate::algebra::MValue;
    fn neg_unit(&self) -> crate::algebra::MValue;
}

impl LMonoidDispatch for crate::algebra::LMonoid {
    fn add(&self, x: &crate::algebra::MValue, y: &crate::algebra::MValue) -> crate::algebra::MValue {
        crate::algebra::LMonoid::add(self, x, y)
    }

    fn join(&self, x: &crate::algebra::MValue, y: &crate::algebra::MValue)
        -> crate::algebra::MValue {
        crate::algebra::LMonoid::join(self, x, y)
    }

    fn meet(&self, x: &crate::algebra::MValue, y: &crate::algebra::MValue)
        -> crate::algebra::MValue {
        crate::algebra::LMonoid::meet(self, x, y)
    }

    fn zero(&self) -> crate::algebra::MValue {
        crate::algebra::LMonoid::zero(self)
    }

    fn pos_unit(&self) -> crate::algebra::MValue {
        crate::algebra::LMonoid::pos_unit(self)
    }

    fn neg_unit(&self) -> crate::algebra::MValue {
        crate::algebra::LMonoid::neg_unit(self)
    }
}

/// Cubic law loops need small pools; an oversized pool is thinned by a
/// deterministic stride that keeps the extremes.
pub fn stride_pool<T>(pool: Vec<T>, max: usize) -> Vec<T> {
    if pool.len() <= max {
        return pool;
    }
    let step = pool.len().div_ceil(max);
    pool.into_iter().step_by(step).collect()
}

/// The least order-unit bound for one element: M3's witness.
pub fn check_order_unit<M: UlmModel>(m: &M, x: &M::Elem) -> Result<u64> {
    m.order_unit_witness(x)
        .ok_or_else(|| Error::UnboundedElement(m.elem_str(x)))
}

/// M0-M3 on an ℓ-monoid-shaped model. M0 is the ℓ-monoid equational
/// base, M1 the unit cancellation, M2 the unit ordering, and M3 the
/// order-unit property checked by constructive witness.
pub fn check_ulm_suite<M: UlmModel>(m: &M, strategy: &Strategy) -> VerificationReport {
    let pool = m.elements(strategy);
    let mut outcomes = Vec::new();

    let fail = |name: &str, env: Vec<String>, l: String, r: String| Status::Fail {
        counterexample: Counterexample { env, law: name.into(), lhs_value: l, rhs_value: r },
    };

    // M0: lattice + commutative monoid + distributivity laws
    let mut tuples = 0u64;
    let mut status = Status::Pass;
    'm0: for x in &pool {
        for y in &pool {
            let pairs: [(&str, M::Elem, M::Elem); 4] = [
                ("add-comm", m.add(x, y), m.add(y, x)),
                ("join-comm", m.join(x, y), m.join(y, x)),
                ("meet-comm", m.meet(x, y), m.meet(y, x)),
                ("add-zero", m.add(x, &m.zero()), x.clone()),
            ];
            for (name, l, r) in pairs {
                tuples += 1;
                if l != r {
                    status = fail(
                        name,
                        vec![m.elem_str(x), m.elem_str(y)],
                        m.elem_str(&l),
                        m.elem_str(&r),
                    );
                    break 'm0;
                }
            }
            for z in &pool {
                let triples: [(&str, M::Elem, M::Elem); 6] = [
                    ("add-assoc", m.add(&m.add(x, y), z), m.add(x, &m.add(y, z))),
                    ("join-assoc", m.join(&m.join(x, y), z), m.join(x, &m.join(y, z))),
                    ("meet-assoc", m.meet(&m.meet(x, y), z), m.meet(x, &m.meet(y, z))),
                    ("add-over-join", m.add(x, &m.join(y, z)), m.join(&m.add(x, y), &m.add(x, z))),
                    ("add-over-meet", m.add(x, &m.meet(y, z)), m.meet(&m.add(x, y), &m.add(x, z))),
                    (
                        "lattice-distributive",
                        m.meet(x, &m.join(y, z)),
                        m.join(&m.meet(x, y), &m.meet(x, z)),
                    ),
                ];
                for (name, l, r) in triples {
                    tuples += 1;
                    if l != r {
                        status = fail(
                            name,
                            vec![m.elem_str(x), m.elem_str(y), m.elem_str(z)],
                            m.elem_str(&l),
                            m.elem_str(&r),
                        );
                        break 'm0;
                    }
                }
            }
        }
    }
    outcomes.push(AxiomOutcome { id: "M0".into(), status, tuples });

    // M1: -1 + 1 = 0
    let l = m.add(&m.neg_unit(), &m.pos_unit());
    let status = if l == m.zero() {
        Status::Pass
    } else {
        fail("neg-unit-cancels", vec![], m.elem_str(&l), m.elem_str(&m.zero()))
    };
    outcomes.push(AxiomOutcome { id: "M1".into(), status, tuples: 1 });

    // M2: -1 <= 0 <= 1
    let ok = m.le(&m.neg_unit(), &m.zero()) && m.le(&m.zero(), &m.pos_unit());
    let status = if ok {
        Status::Pass
    } else {
        fail("unit-order", vec![], "-1 <= 0 <= 1".into(), "violated".into())
    };
    outcomes.push(AxiomOutcome { id: "M2".into(), status, tuples: 1 });

    // M3: order-unit witnesses, verified
    let mut tuples = 0u64;
    let mut status = Status::Pass;
    for x in &pool {
        tuples += 1;
        match m.order_unit_witness(x) {
            None => {
                status = fail("order-unit", vec![m.elem_str(x)], "no witness".into(), "".into());
                break;
            }
            Some(n) => {
                let mut upper = m.zero();
                let mut lower = m.zero();
                for _ in 0..n {
                    upper = m.add(&upper, &m.pos_unit());
                    lower = m.add(&lower, &m.neg_unit());
                }
                if !(m.le(&lower, x) && m.le(x, &upper)) {
                    status = fail(
                        "order-unit",
                        vec![m.elem_str(x)],
                        format!("witness {n}"),
                        "bound check failed".into(),
                    );
                    break;
                }
            }
        }
    }
    outcomes.push(AxiomOutcome { id: "M3".into(), status, tuples });

    VerificationReport {
        subject: m.model_name(),
        suite: "ulm".into(),
        strategy: strategy.describe(),
        axioms: outcomes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BinOp, LMonoid, TableAlgebra};

    #[test]
    fn mvm_passes_on_small_chains_exhaustively() {
        for k in 0..=2 {
            let alg = Algebra::luka_chain(k);
            let report = check_suite(&alg, SuiteId::Mvm, &Strategy::exhaustive()).unwrap();
            assert!(report.all_pass_no_skip(), "luka:{k}: {report:?}");
        }
    }

    #[test]
    fn e4_tuple_count_on_three_chain() {
        let alg = Algebra::luka_chain(1);
        let report = check_suite(&alg, SuiteId::Mvm, &Strategy::exhaustive()).unwrap();
        let e4 = report.axioms.iter().find(|a| a.id == "E4").unwrap();
        assert!(e4.status.is_pass());
        assert_eq!(e4.tuples, 27);
    }

    #[test]
    fn sigma_permutation_on_interval_grid() {
        let alg = Algebra::interval();
        let s1 = derive_sigma(1).unwrap();
        let s2 = derive_sigma(2).unwrap();
        // permuted variables: σ1(x,y,z) = σ1(z,y,x)
        let permuted = s1.subst(&[v(2), v(1), v(0)]);
        let r = check_identity(&s1, &permuted, &alg, &Strategy::grid(3)).unwrap();
        assert!(r.passed());
        let r = check_identity(&s1, &s2, &alg, &Strategy::grid(3)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn failing_identity_reports_counterexample() {
        let alg = Algebra::luka_chain(1);
        let lhs = Term::oplus(v(0), v(1));
        let rhs = Term::odot(v(0), v(1));
        let report = check_identity(&lhs, &rhs, &alg, &Strategy::exhaustive()).unwrap();
        let fail = report.first_fail().expect("must fail");
        let Status::Fail { counterexample: ce } = &fail.status else {
            panic!()
        };
        // the reported environment itself re-checks as a violation
        let env: Vec<Value> = ce.env.iter().map(|s| alg.parse_value(s).unwrap()).collect();
        assert_ne!(lhs.eval(&alg, &env).unwrap(), rhs.eval(&alg, &env).unwrap());
        // and (1/2, 1/2) is a counterexample too
        let half = alg.parse_value("1/2").unwrap();
        assert_ne!(
            lhs.eval(&alg, &[half.clone(), half.clone()]).unwrap(),
            rhs.eval(&alg, &[half.clone(), half]).unwrap()
        );
    }

    #[test]
    fn mutated_chain_fails_e2_at_one() {
        let mut t = TableAlgebra::luka_chain(1);
        t.set_op(BinOp::Odot, 2, 2, 1); // 1 ⊙ 1 := 1/2
        let alg = Algebra::Table(t);
        let report = check_suite(&alg, SuiteId::Mvm, &Strategy::exhaustive()).unwrap();
        let e2 = report.axioms.iter().find(|a| a.id == "E2").unwrap();
        let Status::Fail { counterexample: ce } = &e2.status else {
            panic!("E2 should fail: {e2:?}")
        };
        assert_eq!(ce.env, vec!["1".to_string()]);
        assert!(ce.law.contains("odot"));
    }

    #[test]
    fn identity_with_no_counterexample() {
        let alg = Algebra::interval();
        let x = v(0);
        let found = find_counterexample(&alg, &x, &x, &Strategy::grid(3)).unwrap();
        assert!(found.is_none());
        // ⊕ differs from ∨ on the interval
        let lhs = Term::oplus(v(0), v(1));
        let rhs = Term::join(v(0), v(1));
        let found = find_counterexample(&alg, &lhs, &rhs, &Strategy::grid(3)).unwrap();
        assert!(found.is_some());
        // but not on a lattice model
        let lat = Algebra::lattice(&crate::poset::FinPoset::chain(2)).unwrap();
        let found = find_counterexample(&lat, &lhs, &rhs, &Strategy::exhaustive()).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn exhaustive_on_interval_is_rejected() {
        let alg = Algebra::interval();
        let e = check_suite(&alg, SuiteId::Mvm, &Strategy::exhaustive()).unwrap_err();
        assert!(matches!(e, Error::InfiniteCarrier(_)));
    }

    #[test]
    fn two_div_passes_on_interval() {
        let alg = Algebra::interval();
        let report = check_suite(&alg, SuiteId::TwoDiv, &Strategy::grid(3)).unwrap();
        assert!(report.all_pass_no_skip(), "{report:?}");
        for law in two_div_derived_laws() {
            assert!(law.holds(&alg, &[]).unwrap(), "{}", law.describe());
        }
    }

    #[test]
    fn dyadic_suite_on_chain_skips_deep_constants() {
        let alg = Algebra::luka_chain(1);
        let report = check_suite(&alg, SuiteId::DyadicMvm, &Strategy::exhaustive()).unwrap();
        assert!(report.passed());
        // depth-2 constants are not in the 3-element chain
        assert!(report
            .axioms
            .iter()
            .any(|a| matches!(a.status, Status::Skipped { .. })));
    }

    #[test]
    fn limit_dyadic_passes_on_interval_small_grid() {
        let alg = Algebra::interval();
        let strategy = Strategy::grid(2).with_depth(4);
        let report = check_suite(&alg, SuiteId::LimitDyadic, &strategy).unwrap();
        assert!(report.all_pass_no_skip(), "{:?}", report.first_fail());
    }

    #[test]
    fn limit_two_div_passes_on_interval_small_grid() {
        let alg = Algebra::interval();
        let strategy = Strategy::grid(1).with_depth(3);
        let report = check_suite(&alg, SuiteId::LimitTwoDiv, &strategy).unwrap();
        assert!(report.all_pass_no_skip(), "{:?}", report.first_fail());
    }

    #[test]
    fn ulm_suite_on_builtin_monoids() {
        for m in [
            LMonoid::int(),
            LMonoid::dyadics(),
            LMonoid::lex_z_flat(),
            LMonoid::lex_z_z(),
        ] {
            let report = check_ulm_suite(&m, &Strategy::grid(2));
            assert!(report.all_pass_no_skip(), "{}: {report:?}", m.name());
        }
    }

    #[test]
    fn order_unit_examples() {
        let z = LMonoid::int();
        let x = crate::algebra::MValue::scalar(Rational::from_int(2));
        assert_eq!(check_order_unit(&z, &x).unwrap(), 2);
        assert_eq!(check_order_unit(&z, &z.zero()).unwrap(), 1);
        let flat = LMonoid::lex_z_flat();
        let y = crate::algebra::MValue::new(Rational::from_int(3), Rational::one());
        assert_eq!(check_order_unit(&flat, &y).unwrap(), 4);
    }

    #[test]
    fn recheck_confirms_stored_failures() {
        let mut t = TableAlgebra::luka_chain(1);
        t.set_op(BinOp::Odot, 2, 2, 1);
        let alg = Algebra::Table(t);
        let report = check_suite(&alg, SuiteId::Mvm, &Strategy::exhaustive()).unwrap();
        let e2 = report.axioms.iter().find(|a| a.id == "E2").unwrap();
        let Status::Fail { counterexample: ce } = &e2.status else {
            panic!()
        };
        assert!(recheck(&alg, SuiteId::Mvm, "E2", &ce.env).unwrap());
        // a healthy chain does not confirm
        let healthy = Algebra::luka_chain(1);
        assert!(!recheck(&healthy, SuiteId::Mvm, "E2", &ce.env).unwrap());
    }

    #[test]
    fn dual_algebra_also_satisfies_mvm() {
        let base = TableAlgebra::luka_chain(2);
        let dual = Algebra::Table(base.dual());
        let report = check_suite(&dual, SuiteId::Mvm, &Strategy::exhaustive()).unwrap();
        assert!(report.all_pass_no_skip());
    }

    #[test]
    fn grid_striding_respects_cap() {
        let alg = Algebra::interval();
        // arity 8 over a 9-value grid would be 43M tuples; the strided
        // enumeration stays within the cap
        let envs = environments(&alg, 8, &Strategy::grid(3)).unwrap();
        assert!(envs.len() <= TUPLE_CAP);
        assert!(envs.len() > 10_000);
    }
}
