//! Abstract term syntax over the MVM / dyadic / 2-divisible / λ
//! signatures, the derived-term builders σ_i, τ_n, μ_n, and a generic
//! evaluator against any [`Algebra`].
//!
//! Terms are immutable trees with 0-based variable indices internally;
//! the text grammar prints 1-based names x1, x2, ...

use std::fmt;

use crate::algebra::{Algebra, Value};
use crate::error::Error;
use crate::rational::{Rational, UnitRational};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const(UnitRational),
    Oplus(Box<Term>, Box<Term>),
    Odot(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Half(Box<Term>),
    CoHalf(Box<Term>),
    /// λ applied to the eventually-constant sequence: the listed prefix,
    /// then the tail repeated forever.
    LambdaNode(Vec<Term>, Box<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn constant(v: UnitRational) -> Term {
        Term::Const(v)
    }

    pub fn c(s: &str) -> Term {
        Term::Const(s.parse().expect("constant literal"))
    }

    pub fn oplus(a: Term, b: Term) -> Term {
        Term::Oplus(Box::new(a), Box::new(b))
    }

    pub fn odot(a: Term, b: Term) -> Term {
        Term::Odot(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn half(a: Term) -> Term {
        Term::Half(Box::new(a))
    }

    pub fn cohalf(a: Term) -> Term {
        Term::CoHalf(Box::new(a))
    }

    /// Number of variables: one past the largest index used.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Const(_) => 0,
            Term::Oplus(a, b) | Term::Odot(a, b) | Term::Join(a, b) | Term::Meet(a, b) => {
                a.arity().max(b.arity())
            }
            Term::Half(a) | Term::CoHalf(a) => a.arity(),
            Term::LambdaNode(prefix, tail) => prefix
                .iter()
                .map(Term::arity)
                .max()
                .unwrap_or(0)
                .max(tail.arity()),
        }
    }

    /// Substitutes the given terms for the variables.
    pub fn subst(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(i) => args.get(*i).cloned().unwrap_or(Term::Var(*i)),
            Term::Const(v) => Term::Const(v.clone()),
            Term::Oplus(a, b) => Term::oplus(a.subst(args), b.subst(args)),
            Term::Odot(a, b) => Term::odot(a.subst(args), b.subst(args)),
            Term::Join(a, b) => Term::join(a.subst(args), b.subst(args)),
            Term::Meet(a, b) => Term::meet(a.subst(args), b.subst(args)),
            Term::Half(a) => Term::half(a.subst(args)),
            Term::CoHalf(a) => Term::cohalf(a.subst(args)),
            Term::LambdaNode(prefix, tail) => Term::LambdaNode(
                prefix.iter().map(|t| t.subst(args)).collect(),
                Box::new(tail.subst(args)),
            ),
        }
    }

    /// Evaluates the term on an algebra under an environment covering all
    /// variables.
    pub fn eval(&self, alg: &Algebra, env: &[Value]) -> Result<Value> {
        match self {
            Term::Var(i) => env
                .get(*i)
                .cloned()
                .ok_or(Error::EnvTooShort(*i, env.len())),
            Term::Const(v) => alg.constant(v.rational()),
            Term::Oplus(a, b) => alg.oplus(&a.eval(alg, env)?, &b.eval(alg, env)?),
            Term::Odot(a, b) => alg.odot(&a.eval(alg, env)?, &b.eval(alg, env)?),
            Term::Join(a, b) => alg.join(&a.eval(alg, env)?, &b.eval(alg, env)?),
            Term::Meet(a, b) => alg.meet(&a.eval(alg, env)?, &b.eval(alg, env)?),
            Term::Half(a) => alg.half(&a.eval(alg, env)?),
            Term::CoHalf(a) => alg.cohalf(&a.eval(alg, env)?),
            Term::LambdaNode(prefix, tail) => {
                let p: Vec<Value> = prefix
                    .iter()
                    .map(|t| t.eval(alg, env))
                    .collect::<Result<_>>()?;
                let t = tail.eval(alg, env)?;
                alg.lambda_ev(&p, &t)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{}", i + 1),
            Term::Const(v) => write!(f, "c({v})"),
            Term::Oplus(a, b) => write!(f, "oplus({a}, {b})"),
            Term::Odot(a, b) => write!(f, "odot({a}, {b})"),
            Term::Join(a, b) => write!(f, "join({a}, {b})"),
            Term::Meet(a, b) => write!(f, "meet({a}, {b})"),
            Term::Half(a) => write!(f, "half({a})"),
            Term::CoHalf(a) => write!(f, "cohalf({a})"),
            Term::LambdaNode(prefix, tail) => {
                let parts: Vec<String> = prefix.iter().map(|t| t.to_string()).collect();
                write!(f, "lambda([{}]; {tail})", parts.join(", "))
            }
        }
    }
}

/// The four ternary sum-layer terms:
///
/// - σ1(x,y,z) = (x ⊕ y) ⊙ ((x ⊙ y) ⊕ z)
/// - σ2(x,y,z) = (x ⊙ y) ⊕ ((x ⊕ y) ⊙ z)
/// - σ3(x,y,z) = (x ⊙ (y ⊕ z)) ⊕ (y ⊙ z)
/// - σ4(x,y,z) = (x ⊕ (y ⊙ z)) ⊙ (y ⊕ z)
pub fn derive_sigma(i: u32) -> Result<Term> {
    let (x, y, z) = (Term::Var(0), Term::Var(1), Term::Var(2));
    let t = match i {
        1 => Term::odot(
            Term::oplus(x.clone(), y.clone()),
            Term::oplus(Term::odot(x, y), z),
        ),
        2 => Term::oplus(
            Term::odot(x.clone(), y.clone()),
            Term::odot(Term::oplus(x, y), z),
        ),
        3 => Term::oplus(
            Term::odot(x, Term::oplus(y.clone(), z.clone())),
            Term::odot(y, z),
        ),
        4 => Term::odot(
            Term::oplus(x, Term::odot(y.clone(), z.clone())),
            Term::oplus(y, z),
        ),
        _ => return Err(Error::SigmaIndex(i)),
    };
    Ok(t)
}

/// τ_n(x, y) = (x ∧ (y ⊕ 1/2^n)) ∨ (y ⊙ (1 - 1/2^n)).
pub fn derive_tau(n: u32) -> Term {
    let x = Term::Var(0);
    let y = Term::Var(1);
    let lo = UnitRational::new(Rational::pow2_inv(n)).expect("unit");
    let hi = UnitRational::new(&Rational::one() - &Rational::pow2_inv(n)).expect("unit");
    Term::join(
        Term::meet(x, Term::oplus(y.clone(), Term::Const(lo))),
        Term::odot(y, Term::Const(hi)),
    )
}

/// μ_n of arity n: μ_1(x1) = x1 and μ_n = τ_{n-1}(x_n, μ_{n-1}).
pub fn derive_mu(n: u32) -> Result<Term> {
    if n == 0 {
        return Err(Error::EmptyMu);
    }
    let mut acc = Term::Var(0);
    for k in 2..=n {
        acc = derive_tau(k - 1).subst(&[Term::Var(k as usize - 1), acc]);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// text grammar
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::invalid(format!("term parse error at byte {}: {msg}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        for (off, ch) in self.src[start..].char_indices() {
            if !(ch.is_ascii_alphanumeric() || ch == '_') {
                self.pos = start + off;
                return self.src[start..self.pos].to_string();
            }
        }
        self.pos = self.src.len();
        self.src[start..].to_string()
    }

    /// Raw text until a top-level ',' ')' ']' or ';', used for rational
    /// constants and numeric indices.
    fn raw_until_delim(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if matches!(ch, ',' | ')' | ']' | ';') {
                break;
            }
            self.pos += ch.len_utf8();
        }
        self.src[start..self.pos].trim().to_string()
    }

    fn number(&mut self) -> Result<u32> {
        let raw = self.raw_until_delim();
        raw.parse().map_err(|_| self.err("expected an index"))
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.peek() == Some('[') {
            return Err(self.err("unexpected '['"));
        }
        let head = self.ident();
        match head.as_str() {
            "" => Err(self.err("expected a term")),
            "oplus" | "odot" | "join" | "meet" => {
                self.eat('(')?;
                let a = self.term()?;
                self.eat(',')?;
                let b = self.term()?;
                self.eat(')')?;
                Ok(match head.as_str() {
                    "oplus" => Term::oplus(a, b),
                    "odot" => Term::odot(a, b),
                    "join" => Term::join(a, b),
                    _ => Term::meet(a, b),
                })
            }
            "half" | "cohalf" => {
                self.eat('(')?;
                let a = self.term()?;
                self.eat(')')?;
                Ok(if head == "half" {
                    Term::half(a)
                } else {
                    Term::cohalf(a)
                })
            }
            "c" => {
                self.eat('(')?;
                let raw = self.raw_until_delim();
                self.eat(')')?;
                let v: UnitRational = raw.parse()?;
                Ok(Term::Const(v))
            }
            "tau" => {
                self.eat('(')?;
                let n = self.number()?;
                self.eat(')')?;
                Ok(derive_tau(n))
            }
            "mu" => {
                self.eat('(')?;
                let n = self.number()?;
                self.eat(')')?;
                derive_mu(n)
            }
            "lambda" => {
                self.eat('(')?;
                self.eat('[')?;
                let mut prefix = Vec::new();
                if self.peek() != Some(']') {
                    loop {
                        prefix.push(self.term()?);
                        if self.peek() == Some(',') {
                            self.eat(',')?;
                        } else {
                            break;
                        }
                    }
                }
                self.eat(']')?;
                self.eat(';')?;
                let tail = self.term()?;
                self.eat(')')?;
                Ok(Term::LambdaNode(prefix, Box::new(tail)))
            }
            s if s.starts_with("sigma") => {
                let i: u32 = s[5..]
                    .parse()
                    .map_err(|_| self.err("expected sigma1..sigma4"))?;
                derive_sigma(i)
            }
            s if s.starts_with('x') => {
                let i: usize = s[1..].parse().map_err(|_| self.err("expected x<k>"))?;
                if i == 0 {
                    return Err(self.err("variables are 1-based"));
                }
                Ok(Term::Var(i - 1))
            }
            _ => Err(self.err(&format!("unknown head {head:?}"))),
        }
    }
}

/// Parses the CLI term grammar, e.g. `oplus(x1, odot(x2, c(1/2)))`,
/// `sigma1`, `tau(3)`, `mu(4)`, `lambda([x1, c(0)]; x2)`.
pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src);
    let t = p.term()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn u(s: &str) -> Value {
        Value::unit(s)
    }

    fn eval_interval(t: &Term, env: &[Value]) -> Value {
        t.eval(&Algebra::interval(), env).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let interval = Algebra::interval();
        let s1 = derive_sigma(1).unwrap();
        // oracle: ((x + y + z - 1) ∨ 0) ∧ 1
        let v = s1.eval(&interval, &[u("1/2"), u("1/2"), u("1/2")]).unwrap();
        assert_eq!(v, u("1/2"));
        let s2 = derive_sigma(2).unwrap();
        assert_eq!(s2.eval(&interval, &[u("1"), u("1"), u("1")]).unwrap(), u("1"));
        let s3 = derive_sigma(3).unwrap();
        assert_eq!(
            s3.eval(&interval, &[u("0"), u("0"), u("1/4")]).unwrap(),
            u("0")
        );
        assert!(derive_sigma(0).is_err());
        assert!(derive_sigma(5).is_err());
    }

    #[test]
    fn sigma_matches_sum_oracle_on_grid() {
        let interval = Algebra::interval();
        let grid: Vec<UnitRational> = (0..=4)
            .map(|i| UnitRational::from_ints(i, 4).unwrap())
            .collect();
        for i in 1..=4 {
            let s = derive_sigma(i).unwrap();
            for x in &grid {
                for y in &grid {
                    for z in &grid {
                        let got = s
                            .eval(
                                &interval,
                                &[
                                    Value::Unit(x.clone()),
                                    Value::Unit(y.clone()),
                                    Value::Unit(z.clone()),
                                ],
                            )
                            .unwrap();
                        let sum = x.rational().clone()
                            + y.rational().clone()
                            + z.rational().clone()
                            - Rational::one();
                        assert_eq!(got, Value::Unit(sum.clip_unit()), "sigma{i} at {x},{y},{z}");
                    }
                }
            }
        }
    }

    #[test]
    fn tau_examples() {
        // τ0 is the first projection
        let t0 = derive_tau(0);
        for x in ["0", "1/3", "1"] {
            for y in ["0", "1/2", "1"] {
                assert_eq!(eval_interval(&t0, &[u(x), u(y)]), u(x));
            }
        }
        let t2 = derive_tau(2);
        assert_eq!(eval_interval(&t2, &[u("0"), u("1/2")]), u("1/4"));
        let t3 = derive_tau(3);
        assert_eq!(eval_interval(&t3, &[u("3/10"), u("1/4")]), u("3/10"));
    }

    #[test]
    fn mu_examples() {
        let m1 = derive_mu(1).unwrap();
        assert_eq!(eval_interval(&m1, &[u("7/8")]), u("7/8"));
        let m3 = derive_mu(3).unwrap();
        assert_eq!(eval_interval(&m3, &[u("1/10"), u("1/2"), u("0")]), u("1/4"));
        let m4 = derive_mu(4).unwrap();
        assert_eq!(
            eval_interval(&m4, &[u("1/10"), u("1/2"), u("0"), u("3/10")]),
            u("3/10")
        );
        assert!(derive_mu(0).is_err());
    }

    #[test]
    fn structural_mu_agrees_with_iterative() {
        use crate::limit::mu_fold;
        let interval = Algebra::interval();
        let mut rng = crate::axioms::seeded_rng(7);
        for n in 1..=16u32 {
            let mut prefix = Vec::new();
            let mut env = Vec::new();
            for _ in 0..n {
                let v = interval.sample(&mut rng);
                prefix.push(v.as_unit().unwrap().clone());
                env.push(v);
            }
            let term = derive_mu(n).unwrap();
            assert_eq!(term.arity(), n as usize);
            let structural = term.eval(&interval, &env).unwrap();
            let iterative = mu_fold(&prefix).unwrap();
            assert_eq!(structural, Value::Unit(iterative), "n = {n}");
        }
    }

    #[test]
    fn tau_fixes_nearby_points() {
        // τ_n(x, y) = x whenever |x - y| <= 1/2^n
        let interval = Algebra::interval();
        let mut rng = crate::axioms::seeded_rng(11);
        for n in 0..=6u32 {
            let t = derive_tau(n);
            for _ in 0..200 {
                let x = interval.sample(&mut rng);
                let y = interval.sample(&mut rng);
                let (xr, yr) = (
                    x.as_unit().unwrap().rational().clone(),
                    y.as_unit().unwrap().rational().clone(),
                );
                if (&xr - &yr).abs() <= Rational::pow2_inv(n) {
                    assert_eq!(t.eval(&interval, &[x.clone(), y]).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        let interval = Algebra::interval();
        let t = Term::oplus(Term::Var(0), Term::Var(1));
        assert_eq!(t.eval(&interval, &[u("3/4"), u("1/2")]).unwrap(), u("1"));

        // on a lattice model ⊕ coincides with join
        let two = crate::poset::FinPoset::chain(2);
        let lat = Algebra::lattice(&two).unwrap();
        let jn = Term::join(Term::Var(0), Term::Var(1));
        for a in lat.carrier().unwrap() {
            for b in lat.carrier().unwrap() {
                assert_eq!(
                    t.eval(&lat, &[a.clone(), b.clone()]).unwrap(),
                    jn.eval(&lat, &[a.clone(), b.clone()]).unwrap()
                );
            }
        }

        // λ node on the interval
        let lam = Term::LambdaNode(vec![Term::c("0")], Box::new(Term::c("1")));
        assert_eq!(lam.eval(&interval, &[]).unwrap(), u("1"));
        // λ rejected on models without the fragment
        assert!(lam.eval(&lat, &[]).is_err());
    }

    #[test]
    fn env_too_short_is_reported() {
        let t = Term::oplus(Term::Var(0), Term::Var(3));
        let e = t.eval(&Algebra::interval(), &[u("0")]).unwrap_err();
        assert!(matches!(e, Error::EnvTooShort(3, 1)));
    }

    #[test]
    fn grammar_round_trip() {
        for src in [
            "oplus(x1, odot(x2, c(1/2)))",
            "join(meet(x1, x2), c(3/4))",
            "half(cohalf(x1))",
            "lambda([x1, c(0)]; x2)",
            "lambda([]; c(1))",
        ] {
            let t = parse_term(src).unwrap();
            let printed = t.to_string();
            assert_eq!(parse_term(&printed).unwrap(), t, "{src}");
        }
        assert_eq!(parse_term("sigma1").unwrap(), derive_sigma(1).unwrap());
        assert_eq!(parse_term("tau(3)").unwrap(), derive_tau(3));
        assert_eq!(parse_term("mu(4)").unwrap(), derive_mu(4).unwrap());
        assert!(parse_term("frob(x1)").is_err());
        assert!(parse_term("oplus(x1)").is_err());
        assert!(parse_term("x0").is_err());
    }
}
