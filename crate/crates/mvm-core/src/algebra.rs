//! The model zoo: concrete algebras interpreting the MV-monoidal
//! signature fragments.
//!
//! Four carrier kinds are implemented behind the [`Algebra`] enum:
//!
//! - the unit interval of exact rationals,
//! - finite tables (Łukasiewicz chains, lattice models, loaded tables,
//!   binary products and quotients thereof),
//! - function algebras of order-preserving maps from a finite poset to
//!   the unit interval, with pointwise operations,
//! - unit intervals Γ(M) of unital commutative distributive ℓ-monoids.
//!
//! Every model declares which signature fragments it supports; operations
//! outside the declared fragments return errors instead of guessing.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::limit;
use crate::poset::FinPoset;
use crate::rational::{Rational, UnitRational};
use crate::Result;

/// Signature fragments a model may declare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// ⊕, ⊙, ∨, ∧, 0, 1
    MvmCore,
    /// the dyadic constants d_n, u_n
    DyadicConstants,
    /// the halving operations h, j
    TwoDiv,
    /// the limit operation λ on eventually-constant sequences
    Lambda,
    /// +, ∨, ∧, 0 on an ℓ-monoid
    LmonoidCore,
    /// the units 1, -1 with the order-unit property
    LmonoidUnits,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Fragment::MvmCore => "mvm-core",
            Fragment::DyadicConstants => "dyadic-constants",
            Fragment::TwoDiv => "two-div",
            Fragment::Lambda => "lambda",
            Fragment::LmonoidCore => "lmonoid-core",
            Fragment::LmonoidUnits => "lmonoid-units",
        };
        f.write_str(s)
    }
}

// ---------------------------------------------------------------------------
// ℓ-monoids
// ---------------------------------------------------------------------------

/// The implemented unital commutative distributive ℓ-monoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LMonoidKind {
    /// ℤ with addition.
    Int,
    /// Dyadic rationals with addition.
    Dyadics,
    /// ℤ lexicographically over the flat monoid ({0,1}, ∨).
    LexZFlat,
    /// ℤ lexicographically over ℤ, componentwise addition.
    LexZZ,
}

/// An ℓ-monoid element, stored as a pair. Plain monoids keep the second
/// coordinate at zero; lexicographic models use both.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MValue {
    pub a: Rational,
    pub b: Rational,
}

impl MValue {
    pub fn new(a: Rational, b: Rational) -> Self {
        MValue { a, b }
    }

    pub fn scalar(a: Rational) -> Self {
        MValue { a, b: Rational::zero() }
    }
}

impl fmt::Display for MValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({},{})", self.a, self.b)
        }
    }
}

/// A unital commutative distributive ℓ-monoid model with decidable order,
/// arithmetic, and comparison against dyadic scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LMonoid {
    pub kind: LMonoidKind,
}

impl LMonoid {
    pub fn int() -> Self {
        LMonoid { kind: LMonoidKind::Int }
    }

    pub fn dyadics() -> Self {
        LMonoid { kind: LMonoidKind::Dyadics }
    }

    pub fn lex_z_flat() -> Self {
        LMonoid { kind: LMonoidKind::LexZFlat }
    }

    pub fn lex_z_z() -> Self {
        LMonoid { kind: LMonoidKind::LexZZ }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            LMonoidKind::Int => "z",
            LMonoidKind::Dyadics => "dyadics",
            LMonoidKind::LexZFlat => "lex-z-flat",
            LMonoidKind::LexZZ => "lex-z-z",
        }
    }

    pub fn contains(&self, v: &MValue) -> bool {
        match self.kind {
            LMonoidKind::Int => v.a.is_integer() && v.b.is_zero(),
            LMonoidKind::Dyadics => v.a.is_dyadic() && v.b.is_zero(),
            LMonoidKind::LexZFlat => {
                v.a.is_integer() && (v.b.is_zero() || v.b == Rational::one())
            }
            LMonoidKind::LexZZ => v.a.is_integer() && v.b.is_integer(),
        }
    }

    pub fn add(&self, x: &MValue, y: &MValue) -> MValue {
        let b = match self.kind {
            // flat second component: + is ∨
            LMonoidKind::LexZFlat => x.b.clone().max(y.b.clone()),
            _ => &x.b + &y.b,
        };
        MValue { a: &x.a + &y.a, b }
    }

    /// Lexicographic comparison; for the plain monoids the second
    /// coordinate is constantly zero, so this is the usual order.
    pub fn le(&self, x: &MValue, y: &MValue) -> bool {
        match x.a.cmp_exact(&y.a) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => x.b <= y.b,
        }
    }

    pub fn join(&self, x: &MValue, y: &MValue) -> MValue {
        if self.le(x, y) {
            y.clone()
        } else {
            x.clone()
        }
    }

    pub fn meet(&self, x: &MValue, y: &MValue) -> MValue {
        if self.le(x, y) {
            x.clone()
        } else {
            y.clone()
        }
    }

    pub fn zero(&self) -> MValue {
        MValue::scalar(Rational::zero())
    }

    pub fn pos_unit(&self) -> MValue {
        MValue::scalar(Rational::one())
    }

    pub fn neg_unit(&self) -> MValue {
        MValue::scalar(-Rational::one())
    }

    /// Whether the scalar constant t has an interpretation inside the
    /// monoid's carrier (as opposed to being merely comparable).
    pub fn scalar_in_carrier(&self, t: &Rational) -> bool {
        self.contains(&MValue::scalar(t.clone()))
    }

    /// Exact comparison of an element against the virtual scalar (t, 0).
    /// Decidable even when t is not a carrier member (lexicographic
    /// models against non-integer dyadics).
    pub fn cmp_scalar(&self, x: &MValue, t: &Rational) -> Ordering {
        match x.a.cmp_exact(t) {
            Ordering::Equal => x.b.cmp_exact(&Rational::zero()),
            ord => ord,
        }
    }

    /// x + n·1 for signed n.
    pub fn shift(&self, x: &MValue, n: i64) -> MValue {
        MValue { a: &x.a + &Rational::from_int(n), b: x.b.clone() }
    }

    /// Least n ≥ 1 with -n·1 ≤ x ≤ n·1.
    pub fn order_unit_witness(&self, x: &MValue) -> u64 {
        let mut n: u64 = {
            let c: BigInt = x.a.abs().floor();
            let approx: u64 = c.abs().try_into().unwrap_or(u64::MAX);
            approx.max(1)
        };
        loop {
            let ok = self.cmp_scalar(x, &Rational::from_int(n as i64)) != Ordering::Greater
                && self.cmp_scalar(x, &(-Rational::from_int(n as i64))) != Ordering::Less;
            if ok {
                return n;
            }
            n += 1;
        }
    }

    /// Window of monoid elements for sampling equational laws.
    pub fn grid(&self, e: u32) -> Vec<MValue> {
        let span = 2i64.pow(e.min(4));
        match self.kind {
            LMonoidKind::Int => (-span..=span)
                .map(|k| MValue::scalar(Rational::from_int(k)))
                .collect(),
            LMonoidKind::Dyadics => {
                let den = 1i64 << e.min(4);
                (-2 * den..=2 * den)
                    .map(|k| MValue::scalar(Rational::new(k, den).unwrap()))
                    .collect()
            }
            LMonoidKind::LexZFlat => (-span..=span)
                .flat_map(|k| {
                    [
                        MValue::new(Rational::from_int(k), Rational::zero()),
                        MValue::new(Rational::from_int(k), Rational::one()),
                    ]
                })
                .collect(),
            LMonoidKind::LexZZ => {
                let inner = 2i64.pow(e.min(2));
                (-inner..=inner)
                    .flat_map(move |k| {
                        (-inner..=inner)
                            .map(move |l| MValue::new(Rational::from_int(k), Rational::from_int(l)))
                    })
                    .collect()
            }
        }
    }

    /// The elements of Γ(M) when finite.
    pub fn gamma_carrier(&self) -> Option<Vec<MValue>> {
        match self.kind {
            LMonoidKind::Int => Some(vec![self.zero(), self.pos_unit()]),
            LMonoidKind::LexZFlat => Some(vec![
                self.zero(),
                MValue::new(Rational::zero(), Rational::one()),
                self.pos_unit(),
            ]),
            _ => None,
        }
    }

    /// A finite slice of Γ(M) for grid checking.
    pub fn gamma_grid(&self, e: u32) -> Vec<MValue> {
        if let Some(c) = self.gamma_carrier() {
            return c;
        }
        match self.kind {
            LMonoidKind::Dyadics => {
                let den = 1i64 << e;
                (0..=den)
                    .map(|k| MValue::scalar(Rational::new(k, den).unwrap()))
                    .collect()
            }
            LMonoidKind::LexZZ => {
                let span = 2i64.pow(e.min(4));
                let mut out: Vec<MValue> = (0..=span)
                    .map(|b| MValue::new(Rational::zero(), Rational::from_int(b)))
                    .collect();
                out.extend((0..=span).map(|b| MValue::new(Rational::one(), Rational::from_int(-b))));
                out
            }
            _ => unreachable!("finite carriers handled above"),
        }
    }

    /// Every implemented monoid is totally ordered, which makes the exact
    /// ess value available as the first coordinate.
    pub fn is_totally_ordered(self) -> bool {
        true
    }
}

// ---------------------------------------------------------------------------
// finite tables
// ---------------------------------------------------------------------------

/// JSON document for a finite-table algebra. Tables hold indices into the
/// carrier list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub carrier: Vec<String>,
    pub ops: OpsDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpsDoc {
    pub oplus: Vec<Vec<usize>>,
    pub odot: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

/// Which binary operation of the MVM signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Oplus,
    Odot,
    Join,
    Meet,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Oplus, BinOp::Odot, BinOp::Join, BinOp::Meet];
}

/// A finite algebra given by explicit operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableAlgebra {
    pub name: String,
    labels: Vec<String>,
    rationals: Option<Vec<Rational>>,
    oplus: Vec<usize>,
    odot: Vec<usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
    zero: usize,
    one: usize,
    /// Depth up to which dyadic constants 1/2^m exist in the carrier
    /// (power-of-two Łukasiewicz chains).
    dyadic_depth: Option<u32>,
}

impl TableAlgebra {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn zero_ix(&self) -> usize {
        self.zero
    }

    pub fn one_ix(&self) -> usize {
        self.one
    }

    pub fn rational_label(&self, i: usize) -> Option<&Rational> {
        self.rationals.as_ref().map(|rs| &rs[i])
    }

    pub fn op(&self, op: BinOp, i: usize, j: usize) -> usize {
        let n = self.size();
        match op {
            BinOp::Oplus => self.oplus[i * n + j],
            BinOp::Odot => self.odot[i * n + j],
            BinOp::Join => self.join[i * n + j],
            BinOp::Meet => self.meet[i * n + j],
        }
    }

    pub fn set_op(&mut self, op: BinOp, i: usize, j: usize, v: usize) {
        let n = self.size();
        assert!(v < n);
        let table = match op {
            BinOp::Oplus => &mut self.oplus,
            BinOp::Odot => &mut self.odot,
            BinOp::Join => &mut self.join,
            BinOp::Meet => &mut self.meet,
        };
        table[i * n + j] = v;
        self.dyadic_depth = None;
        if !self.name.ends_with('*') {
            self.name.push('*');
        }
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.op(BinOp::Join, i, j) == j
    }

    fn parse_rationals(labels: &[String]) -> Option<Vec<Rational>> {
        labels.iter().map(|s| s.parse().ok()).collect()
    }

    /// The Łukasiewicz chain {i/2^k} with interval operations restricted.
    pub fn luka_chain(k: u32) -> Self {
        let den = 1i64 << k;
        let values: Vec<Rational> = (0..=den).map(|i| Rational::new(i, den).unwrap()).collect();
        let labels: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let n = values.len();
        let ix_of = |r: &Rational| values.iter().position(|v| v == r).expect("closed");
        let mut oplus = vec![0; n * n];
        let mut odot = vec![0; n * n];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let x = UnitRational::new(values[i].clone()).unwrap();
                let y = UnitRational::new(values[j].clone()).unwrap();
                oplus[i * n + j] = ix_of(x.oplus(&y).rational());
                odot[i * n + j] = ix_of(x.odot(&y).rational());
                join[i * n + j] = ix_of(x.join(&y).rational());
                meet[i * n + j] = ix_of(x.meet(&y).rational());
            }
        }
        TableAlgebra {
            name: format!("luka:{k}"),
            labels,
            rationals: Some(values),
            oplus,
            odot,
            join,
            meet,
            zero: 0,
            one: n - 1,
            dyadic_depth: Some(k),
        }
    }

    /// A bounded distributive lattice as an MVM algebra with ⊕ = ∨ and
    /// ⊙ = ∧. The input order is validated for bounds, joins, meets and
    /// distributivity.
    pub fn from_lattice(poset: &FinPoset) -> Result<Self> {
        let n = poset.n();
        if n == 0 {
            return Err(Error::Unbounded);
        }
        let mut join = vec![usize::MAX; n * n];
        let mut meet = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                let ubs: Vec<usize> = (0..n)
                    .filter(|&k| poset.le(i, k) && poset.le(j, k))
                    .collect();
                let lub = ubs
                    .iter()
                    .copied()
                    .find(|&k| ubs.iter().all(|&m| poset.le(k, m)));
                let lbs: Vec<usize> = (0..n)
                    .filter(|&k| poset.le(k, i) && poset.le(k, j))
                    .collect();
                let glb = lbs
                    .iter()
                    .copied()
                    .find(|&k| lbs.iter().all(|&m| poset.le(m, k)));
                match (lub, glb) {
                    (Some(a), Some(b)) => {
                        join[i * n + j] = a;
                        meet[i * n + j] = b;
                    }
                    _ => {
                        return Err(Error::NotDistributive(format!(
                            "no join/meet for {} and {}",
                            poset.name(i),
                            poset.name(j)
                        )))
                    }
                }
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|i| poset.le(b, i)))
            .ok_or(Error::Unbounded)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|i| poset.le(i, t)))
            .ok_or(Error::Unbounded)?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = meet[x * n + join[y * n + z]];
                    let rhs = join[meet[x * n + y] * n + meet[x * n + z]];
                    if lhs != rhs {
                        return Err(Error::NotDistributive(format!(
                            "x∧(y∨z) ≠ (x∧y)∨(x∧z) at ({}, {}, {})",
                            poset.name(x),
                            poset.name(y),
                            poset.name(z)
                        )));
                    }
                }
            }
        }
        Ok(TableAlgebra {
            name: format!("lattice[{n}]"),
            labels: poset.names().to_vec(),
            rationals: None,
            oplus: join.clone(),
            odot: meet.clone(),
            join,
            meet,
            zero: bottom,
            one: top,
            dyadic_depth: None,
        })
    }

    pub fn from_doc(doc: &AlgebraDoc, name: &str) -> Result<Self> {
        let n = doc.carrier.len();
        if n == 0 {
            return Err(Error::schema("carrier", "carrier must be non-empty"));
        }
        let flatten = |table: &Vec<Vec<usize>>, op: &str| -> Result<Vec<usize>> {
            if table.len() != n {
                return Err(Error::schema(
                    format!("ops/{op}"),
                    format!("expected {n} rows, found {}", table.len()),
                ));
            }
            let mut out = Vec::with_capacity(n * n);
            for (i, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::schema(
                        format!("ops/{op}/{i}"),
                        format!("expected {n} entries, found {}", row.len()),
                    ));
                }
                for (j, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(Error::schema(
                            format!("ops/{op}/{i}/{j}"),
                            format!("index {v} out of range 0..{n}"),
                        ));
                    }
                    out.push(v);
                }
            }
            Ok(out)
        };
        if doc.ops.zero >= n {
            return Err(Error::schema("ops/zero", "index out of range"));
        }
        if doc.ops.one >= n {
            return Err(Error::schema("ops/one", "index out of range"));
        }
        Ok(TableAlgebra {
            name: name.to_string(),
            labels: doc.carrier.clone(),
            rationals: Self::parse_rationals(&doc.carrier),
            oplus: flatten(&doc.ops.oplus, "oplus")?,
            odot: flatten(&doc.ops.odot, "odot")?,
            join: flatten(&doc.ops.join, "join")?,
            meet: flatten(&doc.ops.meet, "meet")?,
            zero: doc.ops.zero,
            one: doc.ops.one,
            dyadic_depth: None,
        })
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        let n = self.size();
        let unflatten = |t: &Vec<usize>| -> Vec<Vec<usize>> {
            (0..n).map(|i| t[i * n..(i + 1) * n].to_vec()).collect()
        };
        AlgebraDoc {
            carrier: self.labels.clone(),
            ops: OpsDoc {
                oplus: unflatten(&self.oplus),
                odot: unflatten(&self.odot),
                join: unflatten(&self.join),
                meet: unflatten(&self.meet),
                zero: self.zero,
                one: self.one,
            },
        }
    }

    /// Componentwise binary product.
    pub fn product(a: &TableAlgebra, b: &TableAlgebra) -> TableAlgebra {
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        let pair = |i: usize, j: usize| i * nb + j;
        let mut labels = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                labels.push(format!("{}|{}", a.labels[i], b.labels[j]));
            }
        }
        let mut tables: Vec<Vec<usize>> = vec![vec![0; n * n]; 4];
        for (t, op) in BinOp::ALL.iter().enumerate() {
            for i1 in 0..na {
                for j1 in 0..nb {
                    for i2 in 0..na {
                        for j2 in 0..nb {
                            let x = pair(i1, j1);
                            let y = pair(i2, j2);
                            tables[t][x * n + y] = pair(a.op(*op, i1, i2), b.op(*op, j1, j2));
                        }
                    }
                }
            }
        }
        let meet = tables.pop().unwrap();
        let join = tables.pop().unwrap();
        let odot = tables.pop().unwrap();
        let oplus = tables.pop().unwrap();
        TableAlgebra {
            name: format!("{}x{}", a.name, b.name),
            labels,
            rationals: None,
            oplus,
            odot,
            join,
            meet,
            zero: pair(a.zero, b.zero),
            one: pair(a.one, b.one),
            dyadic_depth: None,
        }
    }

    /// Quotient by a congruence, given as a block id per element.
    /// Compatibility of the partition is verified.
    pub fn quotient(&self, class_of: &[usize]) -> Result<TableAlgebra> {
        let n = self.size();
        if class_of.len() != n {
            return Err(Error::invalid("partition length mismatch"));
        }
        let blocks = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; blocks];
        for (i, &c) in class_of.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = i;
            }
        }
        let labels: Vec<String> = rep
            .iter()
            .map(|&r| format!("[{}]", self.labels[r]))
            .collect();
        let mut tables = vec![vec![0usize; blocks * blocks]; 4];
        for (t, op) in BinOp::ALL.iter().enumerate() {
            for a in 0..blocks {
                for b in 0..blocks {
                    tables[t][a * blocks + b] = class_of[self.op(*op, rep[a], rep[b])];
                }
            }
        }
        // well-definedness sweep over all members, not only representatives
        for op in BinOp::ALL {
            for i in 0..n {
                for j in 0..n {
                    let got = class_of[self.op(op, i, j)];
                    let expect = class_of[self.op(op, rep[class_of[i]], rep[class_of[j]])];
                    if got != expect {
                        return Err(Error::invalid(
                            "partition is not compatible with the operations",
                        ));
                    }
                }
            }
        }
        let meet = tables.pop().unwrap();
        let join = tables.pop().unwrap();
        let odot = tables.pop().unwrap();
        let oplus = tables.pop().unwrap();
        Ok(TableAlgebra {
            name: format!("{}/theta", self.name),
            labels,
            rationals: None,
            oplus,
            odot,
            join,
            meet,
            zero: class_of[self.zero],
            one: class_of[self.one],
            dyadic_depth: None,
        })
    }

    /// The dual algebra: ⊕/⊙, ∨/∧ and 0/1 interchanged.
    pub fn dual(&self) -> TableAlgebra {
        TableAlgebra {
            name: format!("dual({})", self.name),
            labels: self.labels.clone(),
            rationals: self.rationals.clone(),
            oplus: self.odot.clone(),
            odot: self.oplus.clone(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            zero: self.one,
            one: self.zero,
            dyadic_depth: None,
        }
    }
}

// ---------------------------------------------------------------------------
// function algebras
// ---------------------------------------------------------------------------

/// The algebra of order-preserving maps from a finite poset into the unit
/// interval, with pointwise operations. Elements are value vectors
/// indexed by the poset's element order; the algebra itself is lazily
/// represented and membership is a monotonicity check.
#[derive(Debug, Clone)]
pub struct FunctionAlgebra {
    pub base: FinPoset,
}

impl FunctionAlgebra {
    pub fn new(base: FinPoset) -> Self {
        FunctionAlgebra { base }
    }

    pub fn is_member(&self, values: &[UnitRational]) -> bool {
        if values.len() != self.base.n() {
            return false;
        }
        for i in 0..self.base.n() {
            for j in 0..self.base.n() {
                if self.base.le(i, j) && values[i] > values[j] {
                    return false;
                }
            }
        }
        true
    }

    pub fn constant(&self, v: UnitRational) -> Vec<UnitRational> {
        vec![v; self.base.n()]
    }

    /// All monotone maps with values on the grid {i/2^e}.
    pub fn enumerate_grid(&self, e: u32) -> Vec<Vec<UnitRational>> {
        let steps: Vec<UnitRational> = (0..=(1i64 << e))
            .map(|i| UnitRational::new(Rational::new(i, 1i64 << e).unwrap()).unwrap())
            .collect();
        let n = self.base.n();
        let mut out = Vec::new();
        let mut current: Vec<usize> = Vec::with_capacity(n);
        self.enumerate_rec(&steps, &mut current, &mut out);
        out
    }

    fn enumerate_rec(
        &self,
        steps: &[UnitRational],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<UnitRational>>,
    ) {
        let n = self.base.n();
        let i = current.len();
        if i == n {
            out.push(current.iter().map(|&s| steps[s].clone()).collect());
            return;
        }
        'next: for s in 0..steps.len() {
            for j in 0..i {
                if self.base.le(j, i) && current[j] > s {
                    continue 'next;
                }
                if self.base.le(i, j) && current[j] < s {
                    continue 'next;
                }
            }
            current.push(s);
            self.enumerate_rec(steps, current, out);
            current.pop();
        }
    }

    /// Random monotone map: random grid values repaired by the monotone
    /// closure f(y) := max over x ≤ y of the raw value.
    pub fn sample(&self, rng: &mut impl Rng, max_den_exp: u32) -> Vec<UnitRational> {
        let n = self.base.n();
        let den = 1i64 << max_den_exp;
        let raw: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.gen_range(0..=den), den).unwrap())
            .collect();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let m = (0..n)
                .filter(|&j| self.base.le(j, i))
                .map(|j| raw[j].clone())
                .max()
                .unwrap_or_else(Rational::zero);
            values.push(UnitRational::new(m).unwrap());
        }
        values
    }
}

// ---------------------------------------------------------------------------
// the unified model type
// ---------------------------------------------------------------------------

/// A carrier element of some [`Algebra`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Unit(UnitRational),
    Elem(usize),
    Fn(Vec<UnitRational>),
    M(MValue),
}

impl Value {
    pub fn unit(s: &str) -> Value {
        Value::Unit(s.parse().expect("unit rational literal"))
    }

    pub fn as_unit(&self) -> Option<&UnitRational> {
        match self {
            Value::Unit(u) => Some(u),
            _ => None,
        }
    }
}

/// One of the concrete models. All operations are total on the declared
/// fragments and return errors outside them.
#[derive(Debug, Clone)]
pub enum Algebra {
    /// The unit interval of exact rationals with clipped arithmetic.
    Interval,
    /// A finite algebra given by tables.
    Table(TableAlgebra),
    /// Order-preserving maps from a finite poset to the interval.
    Function(FunctionAlgebra),
    /// The unit interval Γ(M) of an ℓ-monoid, with ⊕ = (x+y) ∧ 1 and
    /// ⊙ = (x+y-1) ∨ 0.
    Gamma(LMonoid),
}

/// The dyadic unit constants in scope up to the given depth: 0, 1 and
/// 1/2^m, 1 - 1/2^m for m ≤ depth.
pub fn dyadic_constants(depth: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero(), Rational::one()];
    for m in 1..=depth {
        out.push(Rational::pow2_inv(m));
        out.push(&Rational::one() - &Rational::pow2_inv(m));
    }
    out.sort();
    out.dedup();
    out
}

impl Algebra {
    pub fn interval() -> Self {
        Algebra::Interval
    }

    pub fn luka_chain(k: u32) -> Self {
        Algebra::Table(TableAlgebra::luka_chain(k))
    }

    pub fn lattice(poset: &FinPoset) -> Result<Self> {
        Ok(Algebra::Table(TableAlgebra::from_lattice(poset)?))
    }

    pub fn function(poset: FinPoset) -> Self {
        Algebra::Function(FunctionAlgebra::new(poset))
    }

    pub fn gamma(m: LMonoid) -> Self {
        Algebra::Gamma(m)
    }

    pub fn name(&self) -> String {
        match self {
            Algebra::Interval => "interval".into(),
            Algebra::Table(t) => t.name.clone(),
            Algebra::Function(f) => format!("func[{}]", f.base.n()),
            Algebra::Gamma(m) => format!("gamma:{}", m.name()),
        }
    }

    pub fn supports(&self, frag: Fragment) -> bool {
        match (self, frag) {
            (_, Fragment::MvmCore) => true,
            (
                Algebra::Interval,
                Fragment::DyadicConstants | Fragment::TwoDiv | Fragment::Lambda,
            ) => true,
            (Algebra::Table(t), Fragment::DyadicConstants) => t.dyadic_depth.is_some(),
            (Algebra::Table(_), _) => false,
            (
                Algebra::Function(_),
                Fragment::DyadicConstants | Fragment::TwoDiv | Fragment::Lambda,
            ) => true,
            (Algebra::Gamma(m), Fragment::DyadicConstants) => m.kind == LMonoidKind::Dyadics,
            (Algebra::Gamma(_), _) => false,
            _ => false,
        }
    }

    /// Chains carry the dyadic constants only down to their resolution.
    pub fn dyadic_depth(&self) -> Option<u32> {
        match self {
            Algebra::Interval | Algebra::Function(_) => Some(u32::MAX),
            Algebra::Table(t) => t.dyadic_depth,
            Algebra::Gamma(m) if m.kind == LMonoidKind::Dyadics => Some(u32::MAX),
            _ => None,
        }
    }

    pub fn zero(&self) -> Value {
        match self {
            Algebra::Interval => Value::Unit(UnitRational::zero()),
            Algebra::Table(t) => Value::Elem(t.zero),
            Algebra::Function(f) => Value::Fn(f.constant(UnitRational::zero())),
            Algebra::Gamma(m) => Value::M(m.zero()),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Algebra::Interval => Value::Unit(UnitRational::one()),
            Algebra::Table(t) => Value::Elem(t.one),
            Algebra::Function(f) => Value::Fn(f.constant(UnitRational::one())),
            Algebra::Gamma(m) => Value::M(m.pos_unit()),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Algebra::Interval, Value::Unit(_)) => true,
            (Algebra::Table(t), Value::Elem(i)) => *i < t.size(),
            (Algebra::Function(f), Value::Fn(vs)) => f.is_member(vs),
            (Algebra::Gamma(m), Value::M(x)) => {
                m.contains(x) && m.le(&m.zero(), x) && m.le(x, &m.pos_unit())
            }
            _ => false,
        }
    }

    fn type_err(&self, what: &str) -> Error {
        Error::BadTerm(format!("{what} got a foreign value on {}", self.name()))
    }

    pub fn binop(&self, op: BinOp, x: &Value, y: &Value) -> Result<Value> {
        match (self, x, y) {
            (Algebra::Interval, Value::Unit(a), Value::Unit(b)) => Ok(Value::Unit(match op {
                BinOp::Oplus => a.oplus(b),
                BinOp::Odot => a.odot(b),
                BinOp::Join => a.join(b),
                BinOp::Meet => a.meet(b),
            })),
            (Algebra::Table(t), Value::Elem(i), Value::Elem(j)) => {
                if *i >= t.size() || *j >= t.size() {
                    return Err(Error::NotInCarrier(format!("#{i} or #{j}")));
                }
                Ok(Value::Elem(t.op(op, *i, *j)))
            }
            (Algebra::Function(f), Value::Fn(a), Value::Fn(b)) => {
                if a.len() != f.base.n() || b.len() != f.base.n() {
                    return Err(self.type_err("binop"));
                }
                let vs = a
                    .iter()
                    .zip(b)
                    .map(|(p, q)| match op {
                        BinOp::Oplus => p.oplus(q),
                        BinOp::Odot => p.odot(q),
                        BinOp::Join => p.join(q),
                        BinOp::Meet => p.meet(q),
                    })
                    .collect();
                Ok(Value::Fn(vs))
            }
            (Algebra::Gamma(m), Value::M(a), Value::M(b)) => {
                let v = match op {
                    BinOp::Oplus => m.meet(&m.add(a, b), &m.pos_unit()),
                    BinOp::Odot => m.join(&m.add(&m.add(a, b), &m.neg_unit()), &m.zero()),
                    BinOp::Join => m.join(a, b),
                    BinOp::Meet => m.meet(a, b),
                };
                Ok(Value::M(v))
            }
            _ => Err(self.type_err("binop")),
        }
    }

    pub fn oplus(&self, x: &Value, y: &Value) -> Result<Value> {
        self.binop(BinOp::Oplus, x, y)
    }

    pub fn odot(&self, x: &Value, y: &Value) -> Result<Value> {
        self.binop(BinOp::Odot, x, y)
    }

    pub fn join(&self, x: &Value, y: &Value) -> Result<Value> {
        self.binop(BinOp::Join, x, y)
    }

    pub fn meet(&self, x: &Value, y: &Value) -> Result<Value> {
        self.binop(BinOp::Meet, x, y)
    }

    pub fn le(&self, x: &Value, y: &Value) -> Result<bool> {
        Ok(self.join(x, y)? == *y)
    }

    pub fn half(&self, x: &Value) -> Result<Value> {
        match (self, x) {
            (Algebra::Interval, Value::Unit(a)) => Ok(Value::Unit(a.half())),
            (Algebra::Function(_), Value::Fn(vs)) => {
                Ok(Value::Fn(vs.iter().map(|v| v.half()).collect()))
            }
            _ => Err(Error::UnsupportedFragment(self.name(), "two-div".into())),
        }
    }

    pub fn cohalf(&self, x: &Value) -> Result<Value> {
        match (self, x) {
            (Algebra::Interval, Value::Unit(a)) => Ok(Value::Unit(a.cohalf())),
            (Algebra::Function(_), Value::Fn(vs)) => {
                Ok(Value::Fn(vs.iter().map(|v| v.cohalf()).collect()))
            }
            _ => Err(Error::UnsupportedFragment(self.name(), "two-div".into())),
        }
    }

    /// The interpretation of a constant value t ∈ [0, 1] ∩ ℚ, when the
    /// carrier holds it.
    pub fn constant(&self, t: &Rational) -> Result<Value> {
        if t < &Rational::zero() || t > &Rational::one() {
            return Err(Error::OutsideUnit(t.to_string()));
        }
        match self {
            Algebra::Interval => Ok(Value::Unit(UnitRational::new(t.clone())?)),
            Algebra::Table(tab) => {
                // 0 and 1 are structural constants, not label lookups:
                // the dual algebra keeps its labels but swaps the units
                if t.is_zero() {
                    return Ok(Value::Elem(tab.zero));
                }
                if t == &Rational::one() {
                    return Ok(Value::Elem(tab.one));
                }
                let rats = tab
                    .rationals
                    .as_ref()
                    .ok_or_else(|| Error::NotInCarrier(t.to_string()))?;
                rats.iter()
                    .position(|r| r == t)
                    .map(Value::Elem)
                    .ok_or_else(|| Error::NotInCarrier(t.to_string()))
            }
            Algebra::Function(f) => Ok(Value::Fn(f.constant(UnitRational::new(t.clone())?))),
            Algebra::Gamma(m) => {
                let v = MValue::scalar(t.clone());
                if m.contains(&v) {
                    Ok(Value::M(v))
                } else {
                    Err(Error::NotInCarrier(t.to_string()))
                }
            }
        }
    }

    /// The dyadic constant t^A; errors when t is not dyadic or the
    /// fragment is absent.
    pub fn dyadic_const(&self, t: &Rational) -> Result<Value> {
        if !t.is_dyadic() {
            return Err(Error::NotDyadic(t.to_string()));
        }
        if !self.supports(Fragment::DyadicConstants) {
            return Err(Error::UnsupportedFragment(
                self.name(),
                "dyadic-constants".into(),
            ));
        }
        self.constant(t)
    }

    /// λ on an eventually-constant argument sequence; exact.
    pub fn lambda_ev(&self, prefix: &[Value], tail: &Value) -> Result<Value> {
        if !self.supports(Fragment::Lambda) {
            return Err(Error::UnsupportedFragment(self.name(), "lambda".into()));
        }
        match self {
            Algebra::Interval => {
                let mut p = Vec::with_capacity(prefix.len());
                for v in prefix {
                    p.push(v.as_unit().ok_or_else(|| self.type_err("lambda"))?.clone());
                }
                let t = tail.as_unit().ok_or_else(|| self.type_err("lambda"))?.clone();
                Ok(Value::Unit(limit::lambda_exact(&limit::EvConstSeq::new(p, t))))
            }
            Algebra::Function(f) => {
                let n = f.base.n();
                let as_fn = |v: &Value| -> Result<Vec<UnitRational>> {
                    match v {
                        Value::Fn(vs) if vs.len() == n => Ok(vs.clone()),
                        _ => Err(self.type_err("lambda")),
                    }
                };
                let tail = as_fn(tail)?;
                let prefixes: Vec<Vec<UnitRational>> =
                    prefix.iter().map(as_fn).collect::<Result<_>>()?;
                let mut out = Vec::with_capacity(n);
                for p in 0..n {
                    let comp: Vec<UnitRational> = prefixes.iter().map(|v| v[p].clone()).collect();
                    out.push(limit::lambda_exact(&limit::EvConstSeq::new(
                        comp,
                        tail[p].clone(),
                    )));
                }
                Ok(Value::Fn(out))
            }
            _ => unreachable!("fragment check above"),
        }
    }

    pub fn carrier(&self) -> Option<Vec<Value>> {
        match self {
            Algebra::Interval | Algebra::Function(_) => None,
            Algebra::Table(t) => Some((0..t.size()).map(Value::Elem).collect()),
            Algebra::Gamma(m) => m
                .gamma_carrier()
                .map(|vs| vs.into_iter().map(Value::M).collect()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.carrier().map_or(false, |c| c.len() <= 1)
    }

    /// A finite slice of the carrier for grid checking: the full carrier
    /// when finite, otherwise values of denominator 2^e.
    pub fn grid(&self, e: u32) -> Vec<Value> {
        match self {
            Algebra::Interval => {
                let den = 1i64 << e;
                (0..=den)
                    .map(|i| {
                        Value::Unit(UnitRational::new(Rational::new(i, den).unwrap()).unwrap())
                    })
                    .collect()
            }
            Algebra::Table(t) => (0..t.size()).map(Value::Elem).collect(),
            Algebra::Function(f) => f.enumerate_grid(e).into_iter().map(Value::Fn).collect(),
            Algebra::Gamma(m) => m.gamma_grid(e).into_iter().map(Value::M).collect(),
        }
    }

    /// One pseudorandom carrier element; reproducible from the caller's
    /// seeded generator. Interval values include non-dyadic rationals.
    pub fn sample(&self, rng: &mut impl Rng) -> Value {
        match self {
            Algebra::Interval => {
                let den = rng.gen_range(1..=64i64);
                let num = rng.gen_range(0..=den);
                Value::Unit(UnitRational::new(Rational::new(num, den).unwrap()).unwrap())
            }
            Algebra::Table(t) => Value::Elem(rng.gen_range(0..t.size())),
            Algebra::Function(f) => Value::Fn(f.sample(rng, 5)),
            Algebra::Gamma(m) => {
                let g = m.gamma_grid(4);
                Value::M(g[rng.gen_range(0..g.len())].clone())
            }
        }
    }

    pub fn value_str(&self, v: &Value) -> String {
        match (self, v) {
            (Algebra::Table(t), Value::Elem(i)) => t.label(*i).to_string(),
            (_, Value::Unit(u)) => u.to_string(),
            (_, Value::Fn(vs)) => {
                let parts: Vec<String> = vs.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            (_, Value::M(m)) => m.to_string(),
            (_, Value::Elem(i)) => format!("#{i}"),
        }
    }

    pub fn parse_value(&self, s: &str) -> Result<Value> {
        let s = s.trim();
        match self {
            Algebra::Interval => Ok(Value::Unit(s.parse()?)),
            Algebra::Table(t) => t
                .labels
                .iter()
                .position(|l| l == s)
                .map(Value::Elem)
                .ok_or_else(|| Error::NotInCarrier(s.to_string())),
            Algebra::Function(f) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|x| x.strip_suffix(')'))
                    .ok_or_else(|| Error::invalid(format!("expected (v,...,v), got {s}")))?;
                let vs: Result<Vec<UnitRational>> =
                    inner.split(',').map(|p| p.trim().parse()).collect();
                let vs = vs?;
                if !f.is_member(&vs) {
                    return Err(Error::NotMonotone(s.to_string()));
                }
                Ok(Value::Fn(vs))
            }
            Algebra::Gamma(_) => {
                let v = if let Some(inner) = s.strip_prefix('(').and_then(|x| x.strip_suffix(')'))
                {
                    let mut parts = inner.splitn(2, ',');
                    let a: Rational = parts
                        .next()
                        .ok_or_else(|| Error::invalid("empty pair"))?
                        .trim()
                        .parse()?;
                    let b: Rational = parts
                        .next()
                        .ok_or_else(|| Error::invalid("expected (a,b)"))?
                        .trim()
                        .parse()?;
                    MValue::new(a, b)
                } else {
                    MValue::scalar(s.parse()?)
                };
                if !self.contains(&Value::M(v.clone())) {
                    return Err(Error::NotInCarrier(s.to_string()));
                }
                Ok(Value::M(v))
            }
        }
    }
}

/// Closure of `gens` together with the constants in scope under the
/// selected operations, truncated at `size_bound`. Returns the closure
/// set and whether truncation occurred. `dyadic_depth` selects how deep
/// the dyadic constant fragment is drawn from (None: only 0 and 1);
/// `with_halving` additionally closes under h and j when the model has
/// them.
pub fn subalgebra_generate(
    alg: &Algebra,
    gens: &[Value],
    size_bound: usize,
    dyadic_depth: Option<u32>,
    with_halving: bool,
) -> Result<(BTreeSet<Value>, bool)> {
    let mut set: BTreeSet<Value> = BTreeSet::new();
    for g in gens {
        if !alg.contains(g) {
            return Err(Error::NotInCarrier(alg.value_str(g)));
        }
        set.insert(g.clone());
    }
    set.insert(alg.zero());
    set.insert(alg.one());
    if let Some(depth) = dyadic_depth {
        let depth = depth.min(alg.dyadic_depth().unwrap_or(0));
        for t in dyadic_constants(depth) {
            if let Ok(v) = alg.dyadic_const(&t) {
                set.insert(v);
            }
        }
    }
    if with_halving && !alg.supports(Fragment::TwoDiv) {
        return Err(Error::UnsupportedFragment(alg.name(), "two-div".into()));
    }
    let use_halving = with_halving;
    let mut frontier: Vec<Value> = set.iter().cloned().collect();
    let mut truncated = false;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let known: Vec<Value> = set.iter().cloned().collect();
        for x in &frontier {
            if use_halving {
                for v in [alg.half(x)?, alg.cohalf(x)?] {
                    if set.len() >= size_bound && !set.contains(&v) {
                        truncated = true;
                        continue;
                    }
                    if set.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            for y in &known {
                for op in BinOp::ALL {
                    for v in [alg.binop(op, x, y)?, alg.binop(op, y, x)?] {
                        if set.len() >= size_bound && !set.contains(&v) {
                            truncated = true;
                            continue;
                        }
                        if set.insert(v.clone()) {
                            next.push(v);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok((set, truncated))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> Value {
        Value::unit(s)
    }

    #[test]
    fn interval_examples() {
        let a = Algebra::interval();
        assert_eq!(a.oplus(&u("3/4"), &u("1/2")).unwrap(), u("1"));
        assert_eq!(a.odot(&u("3/4"), &u("1/2")).unwrap(), u("1/4"));
        assert_eq!(a.half(&u("1/2")).unwrap(), u("1/4"));
        assert_eq!(a.cohalf(&u("1/2")).unwrap(), u("3/4"));
        assert!(a.supports(Fragment::Lambda));
    }

    #[test]
    fn luka_chain_examples() {
        let a = Algebra::luka_chain(1);
        let half = a.parse_value("1/2").unwrap();
        let one = a.one();
        let zero = a.zero();
        assert_eq!(a.oplus(&half, &half).unwrap(), one);
        assert_eq!(a.odot(&half, &half).unwrap(), zero);

        let k0 = Algebra::luka_chain(0);
        assert_eq!(k0.carrier().unwrap().len(), 2);
        assert_eq!(Algebra::luka_chain(2).carrier().unwrap().len(), 5);
    }

    #[test]
    fn chain_constants_stop_at_resolution() {
        let a = Algebra::luka_chain(1);
        assert!(a.dyadic_const(&"1/2".parse().unwrap()).is_ok());
        assert!(a.dyadic_const(&"1/4".parse().unwrap()).is_err());
        assert!(a.dyadic_const(&"1/3".parse().unwrap()).is_err());
    }

    #[test]
    fn lattice_examples() {
        // 2-element lattice works
        let two = FinPoset::chain(2);
        let a = Algebra::lattice(&two).unwrap();
        let bot = a.zero();
        let top = a.one();
        assert_eq!(a.oplus(&bot, &top).unwrap(), top);

        // diamond M3 is rejected
        let m3 = FinPoset::new(
            vec!["0".into(), "a".into(), "b".into(), "c".into(), "1".into()],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        assert!(matches!(Algebra::lattice(&m3), Err(Error::NotDistributive(_))));

        // 4-element Boolean lattice: ⊕ is join
        let b4 = FinPoset::new(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let alg = Algebra::lattice(&b4).unwrap();
        let a_el = alg.parse_value("a").unwrap();
        let b_el = alg.parse_value("b").unwrap();
        assert_eq!(alg.oplus(&a_el, &b_el).unwrap(), alg.one());
    }

    #[test]
    fn function_algebra_examples() {
        let f = Algebra::function(FinPoset::chain(2));
        let g = f.parse_value("(0,1)").unwrap();
        let h = f.parse_value("(1/2,1/2)").unwrap();
        assert_eq!(f.oplus(&g, &h).unwrap(), f.parse_value("(1/2,1)").unwrap());
        // not order-preserving
        assert!(f.parse_value("(1,0)").is_err());
        // constants accepted
        assert!(f.parse_value("(1/4,1/4)").is_ok());
    }

    #[test]
    fn gamma_lex_examples() {
        let g = Algebra::gamma(LMonoid::lex_z_flat());
        let inf = g.parse_value("(0,1)").unwrap();
        assert_eq!(g.oplus(&inf, &inf).unwrap(), inf);
        assert_eq!(g.odot(&inf, &inf).unwrap(), g.zero());
        // lex meet
        let one = g.one();
        assert_eq!(g.meet(&one, &inf).unwrap(), inf);
        assert_eq!(g.carrier().unwrap().len(), 3);
    }

    #[test]
    fn gamma_of_z_is_boolean() {
        let g = Algebra::gamma(LMonoid::int());
        let c = g.carrier().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(g.oplus(&g.one(), &g.one()).unwrap(), g.one());
    }

    #[test]
    fn monoid_laws_spot_checks() {
        for m in [
            LMonoid::int(),
            LMonoid::dyadics(),
            LMonoid::lex_z_flat(),
            LMonoid::lex_z_z(),
        ] {
            for x in m.grid(2) {
                for y in m.grid(2) {
                    // (x ∧ y) + (x ∨ y) = x + y
                    let lhs = m.add(&m.meet(&x, &y), &m.join(&x, &y));
                    assert_eq!(lhs, m.add(&x, &y), "on {}", m.name());
                }
            }
        }
    }

    #[test]
    fn order_unit_witnesses() {
        let z = LMonoid::int();
        assert_eq!(z.order_unit_witness(&MValue::scalar(Rational::from_int(2))), 2);
        assert_eq!(z.order_unit_witness(&z.zero()), 1);
        let flat = LMonoid::lex_z_flat();
        let x = MValue::new(Rational::from_int(3), Rational::one());
        assert_eq!(flat.order_unit_witness(&x), 4);
    }

    #[test]
    fn subalgebra_generation() {
        // gens {1/2} in the interval, core constants only
        let a = Algebra::interval();
        let (set, truncated) = subalgebra_generate(&a, &[u("1/2")], 10, None, false).unwrap();
        assert!(!truncated);
        let want: BTreeSet<Value> = [u("0"), u("1/2"), u("1")].into_iter().collect();
        assert_eq!(set, want);

        // gens ∅ over the Łukasiewicz chain k=1
        let c = Algebra::luka_chain(1);
        let (set, _) = subalgebra_generate(&c, &[], 10, None, false).unwrap();
        assert_eq!(set.len(), 2);

        // full carrier is already closed
        let full: Vec<Value> = c.carrier().unwrap();
        let (set, truncated) = subalgebra_generate(&c, &full, 10, None, false).unwrap();
        assert_eq!(set.len(), 3);
        assert!(!truncated);
    }

    #[test]
    fn subalgebra_truncation_flag() {
        let a = Algebra::interval();
        let (set, truncated) = subalgebra_generate(&a, &[u("1/7")], 5, None, false).unwrap();
        assert!(truncated);
        assert!(set.len() <= 5);
    }

    #[test]
    fn product_and_quotient() {
        let c = TableAlgebra::luka_chain(1);
        let p = TableAlgebra::product(&c, &c);
        assert_eq!(p.size(), 9);
        // first projection kernel: blocks by first coordinate
        let class_of: Vec<usize> = (0..9).map(|i| i / 3).collect();
        let q = p.quotient(&class_of).unwrap();
        assert_eq!(q.size(), 3);
    }

    #[test]
    fn mutated_table_breaks_unit_law() {
        let mut t = TableAlgebra::luka_chain(1);
        t.set_op(BinOp::Odot, 2, 2, 1); // 1⊙1 := 1/2
        let a = Algebra::Table(t);
        let one = a.one();
        assert_ne!(a.odot(&one, &one).unwrap(), one);
    }

    #[test]
    fn value_round_trip_strings() {
        let g = Algebra::gamma(LMonoid::lex_z_flat());
        for v in g.carrier().unwrap() {
            let s = g.value_str(&v);
            assert_eq!(g.parse_value(&s).unwrap(), v);
        }
    }
}
