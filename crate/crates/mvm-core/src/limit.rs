//! Limit machinery on the unit interval: the clamping recursion μ_n, its
//! single step τ_n, 2-Cauchy detection, the exact limit operation λ on
//! eventually-constant sequences, and certified intervals for everything
//! else.

use crate::error::Error;
use crate::rational::{Rational, UnitRational};
use crate::Result;

/// τ_n(x, y) = (x ∧ (y ⊕ 1/2^n)) ∨ (y ⊙ (1 - 1/2^n)): clamp x into the
/// radius-1/2^n band around y.
pub fn tau_step(n: u32, x: &UnitRational, y: &UnitRational) -> UnitRational {
    let step = UnitRational::new(Rational::pow2_inv(n)).expect("1/2^n is a unit value");
    let upper = y.oplus(&step);
    let lower = y.odot(&UnitRational::new(&Rational::one() - &Rational::pow2_inv(n)).unwrap());
    x.meet(&upper).join(&lower)
}

/// Iterative evaluation of μ_N over a non-empty prefix:
/// μ_1(x_1) = x_1 and μ_n = τ_{n-1}(x_n, μ_{n-1}).
pub fn mu_fold(prefix: &[UnitRational]) -> Result<UnitRational> {
    let (first, rest) = prefix.split_first().ok_or(Error::EmptyMu)?;
    let mut acc = first.clone();
    for (i, x) in rest.iter().enumerate() {
        acc = tau_step(i as u32 + 1, x, &acc);
    }
    Ok(acc)
}

/// The full μ-image μ_1, μ_2(x_1,x_2), ..., μ_N(x_1..x_N) of a prefix.
pub fn mu_trace(prefix: &[UnitRational]) -> Vec<UnitRational> {
    let mut out = Vec::with_capacity(prefix.len());
    let mut acc: Option<UnitRational> = None;
    for (i, x) in prefix.iter().enumerate() {
        let next = match acc {
            None => x.clone(),
            Some(prev) => tau_step(i as u32, x, &prev),
        };
        out.push(next.clone());
        acc = Some(next);
    }
    out
}

/// A sequence given by a finite prefix followed by a constant tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvConstSeq {
    pub prefix: Vec<UnitRational>,
    pub tail: UnitRational,
}

impl EvConstSeq {
    pub fn new(prefix: Vec<UnitRational>, tail: UnitRational) -> Self {
        EvConstSeq { prefix, tail }
    }

    pub fn constant(tail: UnitRational) -> Self {
        EvConstSeq { prefix: Vec::new(), tail }
    }

    /// Value at 1-based index n.
    pub fn at(&self, n: usize) -> &UnitRational {
        debug_assert!(n >= 1);
        self.prefix.get(n - 1).unwrap_or(&self.tail)
    }
}

/// Checks the defining bound x_n ⊙ (1 - 1/2^n) ≤ x_{n+1} ≤ x_n ⊕ 1/2^n at
/// every adjacent index of the denoted sequence. With a tail, the
/// prefix-to-tail step is included; tail-to-tail steps hold automatically.
pub fn is_2cauchy(prefix: &[UnitRational], tail: Option<&UnitRational>) -> bool {
    let step_ok = |n: u32, a: &UnitRational, b: &UnitRational| {
        let up = a.oplus(&UnitRational::new(Rational::pow2_inv(n)).unwrap());
        let down = a.odot(&UnitRational::new(&Rational::one() - &Rational::pow2_inv(n)).unwrap());
        &down <= b && b <= &up
    };
    for (i, pair) in prefix.windows(2).enumerate() {
        if !step_ok(i as u32 + 1, &pair[0], &pair[1]) {
            return false;
        }
    }
    if let (Some(last), Some(t)) = (prefix.last(), tail) {
        if !step_ok(prefix.len() as u32, last, t) {
            return false;
        }
    }
    true
}

/// Exact value of λ on an eventually-constant sequence.
///
/// With N = prefix length, m = μ_N and c the tail, the unrolled recursion
/// μ_{N+k} = τ_{N+k-1}(c, μ_{N+k-1}) moves monotonically toward c with
/// step caps 1/2^{N+k-1}, whose total is 1/2^{N-1}; the limit is therefore
/// the clamp of c into [m ⊙ (1 - 1/2^{N-1}), m ⊕ 1/2^{N-1}]. The N = 0
/// case degenerates to c. The tests validate this closed form against an
/// independent symbolic unrolling oracle.
pub fn lambda_exact(s: &EvConstSeq) -> UnitRational {
    let n = s.prefix.len() as u32;
    if n == 0 {
        return s.tail.clone();
    }
    let m = mu_fold(&s.prefix).expect("non-empty prefix");
    let radius = Rational::pow2_inv(n - 1);
    let hi = m.oplus(&Rational::pow2_inv(n - 1).clip_unit());
    let lo = m.odot(&(&Rational::one() - &radius).clip_unit());
    s.tail.meet(&hi).join(&lo)
}

/// A certified enclosure [lo, hi] for a λ value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedInterval {
    pub lo: UnitRational,
    pub hi: UnitRational,
}

impl CertifiedInterval {
    pub fn contains(&self, v: &UnitRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn width(&self) -> Rational {
        self.hi.rational() - self.lo.rational()
    }
}

/// The sandwich [μ_N ⊙ (1 - 1/2^{N-1}), μ_N ⊕ 1/2^{N-1}] enclosing λ of any
/// extension of the prefix. Requires 1 ≤ N ≤ prefix length.
pub fn lambda_interval(prefix: &[UnitRational], n: usize) -> Result<CertifiedInterval> {
    if n == 0 || n > prefix.len() {
        return Err(Error::invalid(format!(
            "interval index {n} out of range 1..={}",
            prefix.len()
        )));
    }
    let m = mu_fold(&prefix[..n])?;
    let radius = Rational::pow2_inv(n as u32 - 1);
    let hi = m.oplus(&radius.clip_unit());
    let lo = m.odot(&(&Rational::one() - &radius).clip_unit());
    Ok(CertifiedInterval { lo, hi })
}

/// One of the two doubling maps on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Doubling {
    /// x ↦ x ⊕ x = min(2x, 1)
    DblOplus,
    /// x ↦ x ⊙ x = max(2x - 1, 0)
    DblOdot,
}

impl Doubling {
    pub fn apply(&self, x: &UnitRational) -> UnitRational {
        match self {
            Doubling::DblOplus => x.oplus(x),
            Doubling::DblOdot => x.odot(x),
        }
    }
}

/// The profile of a composition of doubling maps: the composite of a word
/// of length n equals the linear interpolant through (k/2^n, 0) and
/// ((k+1)/2^n, 1), i.e. x ↦ clamp(2^n·x - k). Words are applied left to
/// right (first entry first).
pub struct PiecewiseProfile {
    pub word: Vec<Doubling>,
    pub k: u64,
}

impl PiecewiseProfile {
    /// The interpolant value clamp(2^n x - k) at a point.
    pub fn interpolant(&self, x: &Rational) -> UnitRational {
        let n = self.word.len() as u32;
        let scaled = x.clone() * Rational::from_int(1i64 << n) - Rational::from_int(self.k as i64);
        scaled.clip_unit()
    }

    /// The actual composition of the word's doubling maps at a point.
    pub fn compose(&self, x: &UnitRational) -> UnitRational {
        let mut v = x.clone();
        for d in &self.word {
            v = d.apply(&v);
        }
        v
    }

    /// Exact agreement of composition and interpolant at all breakpoints
    /// i/2^n and at the supplied sample points.
    pub fn check(&self, samples: &[UnitRational]) -> bool {
        let n = self.word.len() as u32;
        let denom = 1u64 << n;
        for i in 0..=denom {
            let bp = UnitRational::new(
                Rational::from_big(i.into(), denom.into()).expect("nonzero denominator"),
            )
            .expect("breakpoint in unit interval");
            if self.compose(&bp) != self.interpolant(bp.rational()) {
                return false;
            }
        }
        samples
            .iter()
            .all(|x| self.compose(x) == self.interpolant(x.rational()))
    }
}

/// Computes the index k of the interpolant equal to the composition of the
/// given doubling word: appending DblOplus doubles k, appending DblOdot
/// doubles and adds one.
pub fn piecewise_profile(word: &[Doubling]) -> Result<PiecewiseProfile> {
    if word.is_empty() {
        return Err(Error::invalid("doubling word must be non-empty"));
    }
    let mut k: u64 = 0;
    for d in word {
        k = match d {
            Doubling::DblOplus => 2 * k,
            Doubling::DblOdot => 2 * k + 1,
        };
    }
    Ok(PiecewiseProfile { word: word.to_vec(), k })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> UnitRational {
        s.parse().unwrap()
    }

    fn seq(prefix: &[&str], tail: &str) -> EvConstSeq {
        EvConstSeq::new(prefix.iter().map(|s| u(s)).collect(), u(tail))
    }

    /// Independent oracle for λ: symbolically unroll
    /// μ_{m+1} = τ_m(c, μ_m) from (μ_N, N) and take the exact limit.
    ///
    /// At state (y, m) with gap g = |c - y|:
    ///   - g ≤ 1/2^m: the recursion is stationary at c from the next step;
    ///   - g ≥ 1/2^{m-1}: every later step moves y by its full cap, so the
    ///     limit is y shifted toward c by the remaining geometric sum
    ///     1/2^{m-1};
    ///   - otherwise a single exact step is taken and the analysis repeats.
    /// The loop always terminates: after one full-cap step the gap drops
    /// below the current cap.
    fn lambda_oracle(s: &EvConstSeq) -> UnitRational {
        let c = s.tail.clone();
        if s.prefix.is_empty() {
            return c;
        }
        let mut y = mu_fold(&s.prefix).unwrap();
        let mut m = s.prefix.len() as u32;
        loop {
            let cap = Rational::pow2_inv(m);
            let gap = (c.rational() - y.rational()).abs();
            if gap <= cap {
                return c;
            }
            let total_remaining = Rational::pow2_inv(m - 1);
            if gap >= total_remaining {
                let shifted = if c > y {
                    y.rational() + &total_remaining
                } else {
                    y.rational() - &total_remaining
                };
                return shifted.clip_unit();
            }
            y = tau_step(m, &c, &y);
            m += 1;
        }
    }

    #[test]
    fn mu_fold_worked_examples() {
        assert_eq!(mu_fold(&[u("1/10"), u("1/2"), u("0")]).unwrap(), u("1/4"));
        assert_eq!(mu_fold(&[u("1/10"), u("1/2"), u("0"), u("3/10")]).unwrap(), u("3/10"));
        assert_eq!(mu_fold(&[u("7/8")]).unwrap(), u("7/8"));
        assert_eq!(mu_fold(&[u("1/8"), u("1/2"), u("0")]).unwrap(), u("1/4"));
        assert!(mu_fold(&[]).is_err());
    }

    #[test]
    fn mu_image_is_2cauchy() {
        let inputs = [
            vec![u("1/10"), u("1/2"), u("0"), u("3/10")],
            vec![u("0"), u("1"), u("0"), u("1"), u("0")],
            vec![u("1"), u("0"), u("1/3"), u("2/3")],
        ];
        for xs in inputs {
            let image = mu_trace(&xs);
            assert!(is_2cauchy(&image, None), "mu image of {xs:?} not 2-Cauchy");
        }
    }

    #[test]
    fn two_cauchy_detection() {
        assert!(is_2cauchy(&[u("1/2"), u("1/2"), u("1/2")], Some(&u("1/2"))));
        assert!(!is_2cauchy(&[u("0"), u("1")], None));
        assert!(is_2cauchy(&[u("0"), u("1/2"), u("1/4")], None));
        // prefix fits but the tail step breaks
        assert!(!is_2cauchy(&[u("0"), u("1/2")], Some(&u("1")))); // |1 - 1/2| > 1/4
    }

    #[test]
    fn two_cauchy_inputs_are_fixed_by_mu() {
        let xs = [u("1/2"), u("1/4"), u("3/8"), u("5/16")];
        assert!(is_2cauchy(&xs, None));
        assert_eq!(mu_trace(&xs), xs.to_vec());
    }

    #[test]
    fn lambda_exact_examples() {
        assert_eq!(lambda_exact(&seq(&[], "3/7")), u("3/7"));
        assert_eq!(lambda_exact(&seq(&["0"], "1")), u("1"));
        assert_eq!(lambda_exact(&seq(&["1/8", "1/2", "0"], "1/4")), u("1/4"));
    }

    #[test]
    fn lambda_exact_matches_unrolling_oracle() {
        // all grid prefixes of length <= 3 over denominators 4, all tails
        let grid: Vec<UnitRational> = (0..=4)
            .map(|i| UnitRational::from_ints(i, 4).unwrap())
            .collect();
        let mut count = 0usize;
        for len in 0..=3usize {
            let mut idx = vec![0usize; len];
            loop {
                let prefix: Vec<UnitRational> = idx.iter().map(|&i| grid[i].clone()).collect();
                for tail in &grid {
                    let s = EvConstSeq::new(prefix.clone(), tail.clone());
                    assert_eq!(lambda_exact(&s), lambda_oracle(&s), "mismatch on {s:?}");
                    count += 1;
                }
                // odometer
                let mut j = 0;
                loop {
                    if j == len {
                        break;
                    }
                    idx[j] += 1;
                    if idx[j] < grid.len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == len {
                    break;
                }
            }
        }
        assert!(count > 600);
        // plus a few non-dyadic spot checks
        for (p, t) in [
            (vec!["1/10", "1/2", "0"], "9/10"),
            (vec!["2/3"], "0"),
            (vec!["1", "0", "1"], "1/3"),
        ] {
            let s = seq(&p.iter().map(|x| *x).collect::<Vec<_>>(), t);
            assert_eq!(lambda_exact(&s), lambda_oracle(&s));
        }
    }

    #[test]
    fn lambda_of_2cauchy_is_tail() {
        let s = seq(&["1/2", "1/4", "3/8"], "3/8");
        assert!(is_2cauchy(&s.prefix, Some(&s.tail)));
        assert_eq!(lambda_exact(&s), s.tail);
    }

    #[test]
    fn lambda_interval_examples() {
        let prefix = [u("1/10"), u("1/2"), u("0")];
        let iv = lambda_interval(&prefix, 3).unwrap();
        assert_eq!(iv.lo, u("0"));
        assert_eq!(iv.hi, u("1/2"));
        let iv1 = lambda_interval(&[u("2/3")], 1).unwrap();
        assert_eq!(iv1.lo, u("0"));
        assert_eq!(iv1.hi, u("1"));
        assert!(lambda_interval(&prefix, 4).is_err());
        assert!(lambda_interval(&prefix, 0).is_err());
    }

    #[test]
    fn intervals_shrink_and_contain_lambda() {
        let prefixes = [
            vec![u("0"), u("1"), u("1/2"), u("1/3"), u("1/4"), u("1/4")],
            vec![u("9/10"), u("1/10"), u("1/2"), u("1/2"), u("1/2"), u("1/2")],
        ];
        for prefix in prefixes {
            for tail in [u("0"), u("1/2"), u("1")] {
                let s = EvConstSeq::new(prefix.clone(), tail);
                let lam = lambda_exact(&s);
                for n in 1..=prefix.len() {
                    let iv = lambda_interval(&prefix, n).unwrap();
                    assert!(iv.contains(&lam), "n={n} {s:?}");
                    if n >= 2 {
                        assert!(iv.width() <= Rational::pow2_inv(n as u32 - 2));
                    }
                }
            }
        }
    }

    #[test]
    fn piecewise_examples() {
        use Doubling::*;
        let p = piecewise_profile(&[DblOplus, DblOplus]).unwrap();
        assert_eq!(p.k, 0);
        assert!(p.check(&[u("1/8"), u("1/3"), u("9/10")]));

        let p = piecewise_profile(&[DblOdot, DblOdot]).unwrap();
        assert_eq!(p.k, 3);
        assert!(p.check(&[u("2/3"), u("7/8")]));

        let p = piecewise_profile(&[DblOplus, DblOdot]).unwrap();
        assert_eq!(p.k, 1);
        assert_eq!(p.compose(&u("3/8")), u("1/2"));
    }

    #[test]
    fn piecewise_bijection_small() {
        use Doubling::*;
        for n in 1..=6u32 {
            let mut seen = std::collections::HashSet::new();
            for bits in 0..(1u64 << n) {
                let word: Vec<Doubling> = (0..n)
                    .map(|i| if bits >> (n - 1 - i) & 1 == 1 { DblOdot } else { DblOplus })
                    .collect();
                let p = piecewise_profile(&word).unwrap();
                assert!(p.k < (1 << n));
                assert!(seen.insert(p.k), "duplicate k for n={n}");
            }
            assert_eq!(seen.len(), 1 << n);
        }
    }
}
