//! Exact rational arithmetic with dyadic-subset detection.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms
//! with a positive denominator; [`UnitRational`] restricts it to [0, 1].
//! These are the carrier values of the interval algebra and of function
//! values everywhere else in the crate. No floating point is involved.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// An exact rational number. Always normalized: gcd(|num|, den) = 1 and
/// den >= 1; zero is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// 1/2^n.
    pub fn pow2_inv(n: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// True iff the denominator is a power of two (2^0 = 1 included).
    pub fn is_dyadic(&self) -> bool {
        let den = self.0.denom();
        // den >= 1 by normalization; a power of two has a single set bit
        den.bits() >= 1 && (den & (den - BigInt::one())).is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Total order by exact cross-multiplication.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Clip into [0, 1]: (a ∨ 0) ∧ 1.
    pub fn clip_unit(&self) -> UnitRational {
        let v = self.clone().max(Rational::zero()).min(Rational::one());
        UnitRational(v)
    }

    pub fn half(&self) -> Self {
        Rational(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    /// Canonical text form: "num/den", with "/1" omitted for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts "±a/b", "±a", or a terminating decimal such as "0.25".
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::BadRational(text.to_string()));
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::BadRational(text.to_string()))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::BadRational(text.to_string()))?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((int_part, frac_part)) = t.split_once('.') {
            let (sign, int_digits) = match int_part.trim() {
                s if s.starts_with('-') => (-1, &s[1..]),
                s if s.starts_with('+') => (1, &s[1..]),
                s => (1, s),
            };
            if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
                return Err(Error::BadRational(text.to_string()));
            }
            let int_digits = if int_digits.is_empty() { "0" } else { int_digits };
            let whole: BigInt = int_digits
                .parse()
                .map_err(|_| Error::BadRational(text.to_string()))?;
            let frac: BigInt = frac_part
                .parse()
                .map_err(|_| Error::BadRational(text.to_string()))?;
            let scale = BigInt::from(10).pow(frac_part.len() as u32);
            let num = (whole * &scale + frac) * BigInt::from(sign);
            return Ok(Rational(BigRational::new(num, scale)));
        }
        let n: BigInt = t.parse().map_err(|_| Error::BadRational(text.to_string()))?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

/// A rational confined to the unit interval [0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitRational(Rational);

impl UnitRational {
    pub fn new(r: Rational) -> Result<Self> {
        if r < Rational::zero() || r > Rational::one() {
            return Err(Error::OutsideUnit(r.to_string()));
        }
        Ok(UnitRational(r))
    }

    pub fn zero() -> Self {
        UnitRational(Rational::zero())
    }

    pub fn one() -> Self {
        UnitRational(Rational::one())
    }

    pub fn from_ints(num: i64, den: i64) -> Result<Self> {
        UnitRational::new(Rational::new(num, den)?)
    }

    pub fn rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn is_dyadic(&self) -> bool {
        self.0.is_dyadic()
    }

    /// Truncated sum: (x + y) ∧ 1.
    pub fn oplus(&self, other: &Self) -> Self {
        UnitRational((&self.0 + &other.0).min(Rational::one()))
    }

    /// Truncated co-sum: (x + y - 1) ∨ 0.
    pub fn odot(&self, other: &Self) -> Self {
        UnitRational((&(&self.0 + &other.0) - &Rational::one()).max(Rational::zero()))
    }

    pub fn join(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Halving: x/2.
    pub fn half(&self) -> Self {
        UnitRational(self.0.half())
    }

    /// Co-halving: (1 + x)/2.
    pub fn cohalf(&self) -> Self {
        UnitRational((&Rational::one() + &self.0).half())
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for UnitRational {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        UnitRational::new(text.parse()?)
    }
}

/// (a ∨ 0) ∧ 1.
pub fn unit_clip(a: &Rational) -> UnitRational {
    a.clip_unit()
}

/// Which end of the interval a dyadic unit constant approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pole {
    Lower,
    Upper,
}

/// The dyadic constants d_n = 1/2^n (lower) and u_n = 1 - 1/2^n (upper).
pub fn dyadic_unit(n: u32, pole: Pole) -> UnitRational {
    let step = Rational::pow2_inv(n);
    match pole {
        Pole::Lower => UnitRational(step),
        Pole::Upper => UnitRational(&Rational::one() - &step),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(rat("3/6"), rat("1/2"));
        assert_eq!(rat("0.25"), rat("1/4"));
        assert_eq!(rat("-2/4"), rat("-1/2"));
        assert_eq!(rat("+3"), rat("3"));
        assert_eq!(rat("-0.5"), rat("-1/2"));
        assert_eq!(rat("0.1"), rat("1/10"));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(matches!("1/0".parse::<Rational>(), Err(Error::ZeroDenominator(_))));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "x", "1/2/3", "1.", ".5e3", "1.2.3"] {
            assert!(bad.parse::<Rational>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn add_examples() {
        assert_eq!(rat("1/2") + rat("1/4"), rat("3/4"));
        assert_eq!(rat("1/3") + rat("-1/3"), rat("0"));
        assert_eq!(rat("1/10") + rat("1/2"), rat("3/5"));
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(rat("1/2").cmp_exact(&rat("2/3")), Ordering::Less);
        assert_eq!(rat("2/4").cmp_exact(&rat("1/2")), Ordering::Equal);
        assert_eq!(rat("1").cmp_exact(&rat("0")), Ordering::Greater);
    }

    #[test]
    fn clip_examples() {
        assert_eq!(unit_clip(&rat("3/2")), UnitRational::one());
        assert_eq!(unit_clip(&rat("-1/4")), UnitRational::zero());
        assert_eq!(unit_clip(&rat("1/2")).rational(), &rat("1/2"));
    }

    #[test]
    fn clip_is_idempotent_and_monotone() {
        let samples = ["-3", "-1/2", "0", "1/7", "1/2", "9/10", "1", "8/3"];
        let mut prev: Option<UnitRational> = None;
        for s in samples {
            let c = unit_clip(&rat(s));
            assert_eq!(unit_clip(c.rational()), c);
            if let Some(p) = prev {
                assert!(p <= c);
            }
            prev = Some(c);
        }
    }

    #[test]
    fn dyadic_units() {
        assert_eq!(dyadic_unit(0, Pole::Lower), UnitRational::one());
        assert_eq!(dyadic_unit(2, Pole::Lower).rational(), &rat("1/4"));
        assert_eq!(dyadic_unit(2, Pole::Upper).rational(), &rat("3/4"));
        for n in 0..=64 {
            let lo = dyadic_unit(n, Pole::Lower);
            let hi = dyadic_unit(n, Pole::Upper);
            assert_eq!(lo.rational() + hi.rational(), Rational::one());
        }
    }

    #[test]
    fn dyadic_detection() {
        assert!(rat("1/4").is_dyadic());
        assert!(rat("3").is_dyadic());
        assert!(rat("0").is_dyadic());
        assert!(!rat("1/10").is_dyadic());
        assert!(!rat("2/3").is_dyadic());
        assert!(rat("-5/8").is_dyadic());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(rat("4/8").to_string(), "1/2");
        assert_eq!(rat("4/2").to_string(), "2");
        assert_eq!(rat("-3/9").to_string(), "-1/3");
        assert_eq!(rat("0").to_string(), "0");
    }

    #[test]
    fn unit_ops() {
        let a = UnitRational::from_ints(3, 4).unwrap();
        let b = UnitRational::from_ints(1, 2).unwrap();
        assert_eq!(a.oplus(&b), UnitRational::one());
        assert_eq!(a.odot(&b).rational(), &rat("1/4"));
        assert_eq!(b.half().rational(), &rat("1/4"));
        assert_eq!(b.cohalf().rational(), &rat("3/4"));
    }
}
