//! Finite posets, ordered separation witnesses, preorders of monotone
//! maps, and quotients. Finite posets with the discrete topology are
//! exactly the finite compact ordered spaces, so closedness of preorders
//! is automatic and never represented.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::UnitRational;
use crate::Result;

/// A finite partial order on named points. `le` is a full reflexive,
/// antisymmetric, transitive relation matrix (row-major, n*n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    le: Vec<bool>,
}

/// JSON document form: `{"elements": [...], "le": [["a","b"], ...]}`;
/// reflexive-transitive closure is applied on load.
#[derive(Debug, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

/// Reflexive-transitive closure of an arbitrary relation matrix, in place.
pub fn close_reflexive_transitive(rel: &mut [bool], n: usize) {
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
}

impl FinPoset {
    /// Builds a poset from named points and generating pairs. The closure
    /// is computed here; duplicate names and cycles are rejected.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if names[i + 1..].contains(a) {
                return Err(Error::Poset(format!("duplicate name {a:?}")));
            }
        }
        let mut le = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Poset(format!("pair index out of range: ({a}, {b})")));
            }
            le[a * n + b] = true;
        }
        close_reflexive_transitive(&mut le, n);
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(Error::Poset(format!(
                        "cycle between {:?} and {:?}",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(FinPoset { names, le })
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Self> {
        let names = doc.elements.clone();
        let index = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::schema(format!("le/{s}"), "unknown element name"))
        };
        let mut pairs = Vec::new();
        for (a, b) in &doc.le {
            pairs.push((index(a)?, index(b)?));
        }
        FinPoset::new(names, &pairs)
    }

    pub fn to_doc(&self) -> PosetDoc {
        let mut le = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i != j && self.le(i, j) {
                    le.push((self.names[i].clone(), self.names[j].clone()));
                }
            }
        }
        PosetDoc { elements: self.names.clone(), le }
    }

    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| format!("c{i}")).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinPoset::new(names, &pairs).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        let names = (0..n).map(|i| format!("a{i}")).collect();
        FinPoset::new(names, &[]).expect("antichain is a poset")
    }

    /// Two minimal points a, b below a common top c.
    pub fn vee() -> Self {
        FinPoset::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 2), (1, 2)],
        )
        .expect("vee is a poset")
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.n() + j]
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.le(i, j)).collect()
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.le(j, i)).collect()
    }

    pub fn is_down_set(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&i| self.down_set(i).iter().all(|j| set.contains(j)))
    }

    pub fn is_up_set(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&i| self.up_set(i).iter().all(|j| set.contains(j)))
    }

    /// All down-sets as bitmasks, the elements of the Birkhoff dual
    /// lattice. Only sensible for small posets.
    pub fn down_sets(&self) -> Vec<u64> {
        let n = self.n();
        assert!(n <= 16, "down-set enumeration limited to 16 points");
        let mut out = Vec::new();
        'candidate: for mask in 0u64..(1 << n) {
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    for j in 0..n {
                        if self.le(j, i) && mask >> j & 1 == 0 {
                            continue 'candidate;
                        }
                    }
                }
            }
            out.push(mask);
        }
        out
    }

    /// Checks that the index map `f` into `cod` is order-preserving.
    pub fn map_is_monotone(&self, f: &[usize], cod: &FinPoset) -> bool {
        if f.len() != self.n() || f.iter().any(|&v| v >= cod.n()) {
            return false;
        }
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.le(i, j) && !cod.le(f[i], f[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Two disjoint tagged copies, no cross relations. Point (x, t) gets
    /// index x + t*n and name "x:t".
    pub fn doubled(&self) -> FinPoset {
        let n = self.n();
        let names = (0..2)
            .flat_map(|t| self.names.iter().map(move |s| format!("{s}:{t}")))
            .collect();
        let mut pairs = Vec::new();
        for t in 0..2 {
            for i in 0..n {
                for j in 0..n {
                    if self.le(i, j) {
                        pairs.push((i + t * n, j + t * n));
                    }
                }
            }
        }
        FinPoset::new(names, &pairs).expect("doubling preserves posethood")
    }

    /// All labelled posets on n points, each exactly once, by incremental
    /// pair addition with transitive closure.
    pub fn enumerate_all(n: usize) -> Vec<FinPoset> {
        assert!(n <= 5, "labelled poset enumeration limited to 5 points");
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let base = FinPoset::new(names.clone(), &[]).expect("antichain");
        let mut seen = std::collections::HashSet::new();
        let encode = |p: &FinPoset| -> u64 {
            p.le.iter()
                .enumerate()
                .fold(0u64, |acc, (k, &b)| acc | ((b as u64) << k))
        };
        seen.insert(encode(&base));
        let mut queue = vec![base.clone()];
        let mut out = vec![base];
        while let Some(p) = queue.pop() {
            for i in 0..n {
                for j in 0..n {
                    if i == j || p.le(i, j) {
                        continue;
                    }
                    let mut pairs = Vec::new();
                    for a in 0..n {
                        for b in 0..n {
                            if a != b && p.le(a, b) {
                                pairs.push((a, b));
                            }
                        }
                    }
                    pairs.push((i, j));
                    if let Ok(q) = FinPoset::new(names.clone(), &pairs) {
                        if seen.insert(encode(&q)) {
                            queue.push(q.clone());
                            out.push(q);
                        }
                    }
                }
            }
        }
        out
    }
}

/// An order-preserving map into the unit interval, stored as a value
/// vector indexed by the poset's element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    pub values: Vec<UnitRational>,
}

impl SeparationWitness {
    pub fn new(poset: &FinPoset, values: Vec<UnitRational>) -> Result<Self> {
        if values.len() != poset.n() {
            return Err(Error::Poset(format!(
                "witness has {} values for {} points",
                values.len(),
                poset.n()
            )));
        }
        for i in 0..poset.n() {
            for j in 0..poset.n() {
                if poset.le(i, j) && values[i] > values[j] {
                    return Err(Error::NotMonotone(format!(
                        "{} <= {} but f maps them to {} > {}",
                        poset.name(i),
                        poset.name(j),
                        values[i],
                        values[j]
                    )));
                }
            }
        }
        Ok(SeparationWitness { values })
    }

    fn indicator(poset: &FinPoset, set: &[usize]) -> Self {
        let values = (0..poset.n())
            .map(|i| {
                if set.contains(&i) {
                    UnitRational::one()
                } else {
                    UnitRational::zero()
                }
            })
            .collect();
        SeparationWitness { values }
    }
}

/// Ordered Urysohn separation at finite scale: for a down-set F0 and an
/// up-set F1, disjoint, the indicator of F1 is an order-preserving witness
/// with value 0 on F0 and 1 on F1.
pub fn urysohn_witness(
    poset: &FinPoset,
    f0: &[usize],
    f1: &[usize],
) -> Result<SeparationWitness> {
    if !poset.is_down_set(f0) {
        return Err(Error::Poset("F0 is not a down-set".into()));
    }
    if !poset.is_up_set(f1) {
        return Err(Error::Poset("F1 is not an up-set".into()));
    }
    if f0.iter().any(|i| f1.contains(i)) {
        return Err(Error::Poset("F0 and F1 intersect".into()));
    }
    Ok(SeparationWitness::indicator(poset, f1))
}

/// For x not above y, the indicator of the up-set of y separates them:
/// value 0 at x and 1 at y.
pub fn point_separator(poset: &FinPoset, x: usize, y: usize) -> Result<SeparationWitness> {
    if poset.le(y, x) {
        return Err(Error::Poset(format!(
            "{} >= {}: no separator exists",
            poset.name(x),
            poset.name(y)
        )));
    }
    Ok(SeparationWitness::indicator(poset, &poset.up_set(y)))
}

/// The preorder induced by a monotone map f: X -> Y, as a relation matrix
/// on X: x1 related to x2 iff f(x1) <= f(x2). Always extends the order
/// of X.
pub fn preorder_of_map(dom: &FinPoset, cod: &FinPoset, f: &[usize]) -> Result<Vec<bool>> {
    if !dom.map_is_monotone(f, cod) {
        return Err(Error::NotMonotone("map is not order-preserving".into()));
    }
    let n = dom.n();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = cod.le(f[i], f[j]);
        }
    }
    Ok(rel)
}

fn is_preorder(rel: &[bool], n: usize) -> bool {
    for i in 0..n {
        if !rel[i * n + i] {
            return false;
        }
        for j in 0..n {
            if rel[i * n + j] {
                for k in 0..n {
                    if rel[j * n + k] && !rel[i * n + k] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Quotient of X by a preorder p extending the partial order: classes of
/// p ∩ p^op, ordered by `[x] <= [y] iff x p y`, with the projection map.
pub fn quotient_poset(poset: &FinPoset, p: &[bool]) -> Result<(FinPoset, Vec<usize>)> {
    let n = poset.n();
    if p.len() != n * n || !is_preorder(p, n) {
        return Err(Error::Poset("relation is not a preorder".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if poset.le(i, j) && !p[i * n + j] {
                return Err(Error::Poset(
                    "preorder does not extend the partial order".into(),
                ));
            }
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if class[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for j in i..n {
            if p[i * n + j] && p[j * n + i] {
                class[j] = c;
            }
        }
    }
    let names = reps
        .iter()
        .map(|&r| format!("[{}]", poset.name(r)))
        .collect();
    let mut pairs = Vec::new();
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            if a != b && p[ra * n + rb] {
                pairs.push((a, b));
            }
        }
    }
    let q = FinPoset::new(names, &pairs)?;
    Ok((q, class))
}

/// The preorder reconstructed from a family of monotone witnesses:
/// x below y iff f(x) <= f(y) for every f in the family.
pub fn reconstruct_order(poset: &FinPoset, family: &[SeparationWitness]) -> Vec<bool> {
    let n = poset.n();
    let mut rel = vec![true; n * n];
    for f in family {
        for i in 0..n {
            for j in 0..n {
                if f.values[i] > f.values[j] {
                    rel[i * n + j] = false;
                }
            }
        }
    }
    rel
}

/// The full separator family {point_separator(x, y) : x not >= y}.
pub fn separator_family(poset: &FinPoset) -> Vec<SeparationWitness> {
    let n = poset.n();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !poset.le(y, x) {
                out.push(point_separator(poset, x, y).expect("x not >= y"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_examples() {
        let p = FinPoset::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        assert!(p.le(0, 1));
        assert!(!p.le(1, 0));

        let cyc = FinPoset::new(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(cyc.is_err());

        let anti = FinPoset::new(vec!["a".into(), "b".into(), "c".into()], &[]).unwrap();
        assert!(!anti.le(0, 1) && !anti.le(1, 0));

        let dup = FinPoset::new(vec!["a".into(), "a".into()], &[]);
        assert!(dup.is_err());
    }

    #[test]
    fn closure_applied_on_load() {
        let doc = PosetDoc {
            elements: vec!["a".into(), "b".into(), "c".into()],
            le: vec![("a".into(), "b".into()), ("b".into(), "c".into())],
        };
        let p = FinPoset::from_doc(&doc).unwrap();
        assert!(p.le(0, 2));
    }

    #[test]
    fn urysohn_examples() {
        let two = FinPoset::chain(2);
        let w = urysohn_witness(&two, &[0], &[1]).unwrap();
        assert_eq!(w.values, vec![UnitRational::zero(), UnitRational::one()]);

        let vee = FinPoset::vee();
        let a = vee.index_of("a").unwrap();
        let b = vee.index_of("b").unwrap();
        let c = vee.index_of("c").unwrap();
        let w = urysohn_witness(&vee, &[a], &[b, c]).unwrap();
        assert_eq!(w.values[a], UnitRational::zero());
        assert_eq!(w.values[b], UnitRational::one());
        assert_eq!(w.values[c], UnitRational::one());

        assert!(urysohn_witness(&two, &[0], &[0, 1]).is_err()); // intersecting
        assert!(urysohn_witness(&two, &[1], &[0]).is_err()); // F0 not a down-set
    }

    #[test]
    fn separator_examples() {
        let two = FinPoset::chain(2);
        let w = point_separator(&two, 0, 1).unwrap();
        assert_eq!(w.values, vec![UnitRational::zero(), UnitRational::one()]);

        let anti = FinPoset::antichain(2);
        let w = point_separator(&anti, 0, 1).unwrap();
        assert_eq!(w.values, vec![UnitRational::zero(), UnitRational::one()]);

        assert!(point_separator(&two, 0, 0).is_err());
        assert!(point_separator(&two, 1, 0).is_err());
    }

    #[test]
    fn doubled_examples() {
        let two = FinPoset::chain(2);
        let d = two.doubled();
        assert_eq!(d.n(), 4);
        assert!(d.le(0, 1) && d.le(2, 3));
        assert!(!d.le(0, 2) && !d.le(1, 3) && !d.le(0, 3));

        assert_eq!(FinPoset::antichain(2).doubled().n(), 4);
    }

    #[test]
    fn preorder_of_map_paper_example() {
        // X = {a <= b, c}, Y = 2-chain, f(a) = f(b) = bottom, f(c) = top
        let x = FinPoset::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1)],
        )
        .unwrap();
        let y = FinPoset::chain(2);
        let rel = preorder_of_map(&x, &y, &[0, 0, 1]).unwrap();
        let n = 3;
        // a ~ b both ways, both below c, c above only itself
        assert!(rel[n + 0] && rel[1]);
        assert!(rel[n + 2] && rel[2]);
        assert!(!rel[2 * n] && !rel[2 * n + 1]);

        // injective order-reflecting map gives back the order
        let id_rel = preorder_of_map(&y, &y, &[0, 1]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(id_rel[i * 2 + j], y.le(i, j));
            }
        }

        // constant map gives the total preorder
        let c_rel = preorder_of_map(&x, &y, &[0, 0, 0]).unwrap();
        assert!(c_rel.iter().all(|&b| b));

        // non-monotone rejected
        assert!(preorder_of_map(&x, &y, &[1, 0, 0]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let x = FinPoset::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1)],
        )
        .unwrap();
        let y = FinPoset::chain(2);
        let rel = preorder_of_map(&x, &y, &[0, 0, 1]).unwrap();
        let (q, proj) = quotient_poset(&x, &rel).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(proj[0], proj[1]);
        assert_ne!(proj[0], proj[2]);
        assert!(q.le(proj[0], proj[2]));

        // identity quotient
        let mut id = vec![false; 9];
        for i in 0..3 {
            for j in 0..3 {
                id[i * 3 + j] = x.le(i, j);
            }
        }
        let (q, _) = quotient_poset(&x, &id).unwrap();
        assert_eq!(q.n(), 3);

        // total preorder collapses to a point
        let total = vec![true; 9];
        let (q, _) = quotient_poset(&x, &total).unwrap();
        assert_eq!(q.n(), 1);
    }

    #[test]
    fn quotient_round_trip() {
        // preorder_of_map(projection) recovers the preorder
        let x = FinPoset::vee();
        let y = FinPoset::chain(2);
        let rel = preorder_of_map(&x, &y, &[0, 0, 1]).unwrap();
        let (q, proj) = quotient_poset(&x, &rel).unwrap();
        let back = preorder_of_map(&x, &q, &proj).unwrap();
        assert_eq!(back, rel);
    }

    #[test]
    fn reconstruct_from_full_family() {
        for p in [FinPoset::vee(), FinPoset::chain(3), FinPoset::antichain(3)] {
            let fam = separator_family(&p);
            let rel = reconstruct_order(&p, &fam);
            for i in 0..p.n() {
                for j in 0..p.n() {
                    assert_eq!(rel[i * p.n() + j], p.le(i, j));
                }
            }
        }
    }

    #[test]
    fn reconstruct_from_constants_is_total() {
        let p = FinPoset::antichain(3);
        let f = SeparationWitness::new(&p, vec![UnitRational::zero(); 3]).unwrap();
        let rel = reconstruct_order(&p, &[f]);
        assert!(rel.iter().all(|&b| b));
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(FinPoset::enumerate_all(1).len(), 1);
        assert_eq!(FinPoset::enumerate_all(2).len(), 3);
        assert_eq!(FinPoset::enumerate_all(3).len(), 19);
        assert_eq!(FinPoset::enumerate_all(4).len(), 219);
    }

    #[test]
    fn down_sets_of_chain() {
        let c = FinPoset::chain(3);
        assert_eq!(c.down_sets().len(), 4);
        let v = FinPoset::vee();
        // {}, {a}, {b}, {a,b}, {a,b,c}
        assert_eq!(v.down_sets().len(), 5);
    }
}
