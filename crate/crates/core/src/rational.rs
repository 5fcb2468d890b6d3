//! Exact arbitrary-precision rationals.
//!
//! [`Rational`] wraps `num_rational::BigRational` so the rest of the crate
//! never sees a float. Values are always kept in lowest terms with a
//! positive denominator, and they serialize as `p/q` (or `p` when `q = 1`).

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse `{0}` as a rational (expected `p/q` or an integer)")]
    Parse(String),
    #[error("value {0} is not finite")]
    NotFinite(String),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `p/q` in lowest terms.
    pub fn new(p: i64, q: i64) -> Result<Self, RationalError> {
        if q == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    /// Panicking shorthand for literals in code and tests.
    pub fn frac(p: i64, q: i64) -> Self {
        Self::new(p, q).expect("nonzero denominator")
    }

    pub fn integer(p: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(p)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> Self {
        Rational(self.0.floor())
    }

    pub fn ceil(&self) -> Self {
        Rational(self.0.ceil())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn min_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// The exact binary value of a finite float.
    pub fn from_f64(x: f64) -> Result<Self, RationalError> {
        BigRational::from_float(x)
            .map(Rational)
            .ok_or_else(|| RationalError::NotFinite(x.to_string()))
    }

    /// Nearest float; only used for progress logs and the annealing mirror.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(p: i64) -> Self {
        Rational::integer(p)
    }
}

impl From<usize> for Rational {
    fn from(p: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(p)))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RationalError::Parse(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(p, q)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// The fraction with denominator at most `max_denominator` closest to `x`.
///
/// Ties go to the smaller denominator, then to the smaller value, so
/// `snap_to_rational(0.5, 1)` is `0`. The float is converted to its exact
/// binary value first, so all distance comparisons are exact.
pub fn snap_to_rational(x: f64, max_denominator: u64) -> Result<Rational, RationalError> {
    if max_denominator == 0 {
        return Err(RationalError::ZeroDenominator);
    }
    let target = Rational::from_f64(x)?;
    if target.is_negative() {
        let snapped = snap_to_rational(-x, max_denominator)?;
        return Ok(-snapped);
    }
    let (lo, hi) = farey_neighbours(target.as_big(), &BigInt::from(max_denominator));
    let lo = Rational(lo);
    let Some(hi) = hi.map(Rational) else {
        return Ok(lo);
    };
    let dlo = (&target - &lo).abs();
    let dhi = (&hi - &target).abs();
    Ok(match dlo.cmp(&dhi) {
        Ordering::Less => lo,
        Ordering::Greater => hi,
        Ordering::Equal => {
            if hi.denom() < lo.denom() {
                hi
            } else {
                lo
            }
        }
    })
}

/// Consecutive fractions `lo <= x < hi` of the Farey sequence of order
/// `max_den`, found by a Stern–Brocot descent with batched steps. Returns
/// `hi = None` when `x` is itself representable (then `lo == x`).
fn farey_neighbours(x: &BigRational, max_den: &BigInt) -> (BigRational, Option<BigRational>) {
    // lo = p0/q0, hi = p1/q1 (starting at 0/1 and 1/0).
    let (mut p0, mut q0) = (x.floor().to_integer(), BigInt::one());
    let (mut p1, mut q1) = (&p0 + BigInt::one(), BigInt::one());
    let frac = |p: &BigInt, q: &BigInt| BigRational::new(p.clone(), q.clone());
    if frac(&p0, &q0) == *x {
        return (x.clone(), None);
    }
    loop {
        let qm = &q0 + &q1;
        if &qm > max_den {
            return (frac(&p0, &q0), Some(frac(&p1, &q1)));
        }
        let pm = &p0 + &p1;
        let mediant = frac(&pm, &qm);
        match x.cmp(&mediant) {
            Ordering::Equal => return (mediant, None),
            Ordering::Less => {
                // hi <- (p1 + t p0)/(q1 + t q0) for the largest admissible t
                // keeping hi > x.
                let num = BigRational::from_integer(p1.clone()) - x * BigRational::from_integer(q1.clone());
                let den = x * BigRational::from_integer(q0.clone()) - BigRational::from_integer(p0.clone());
                let by_value = ceil_minus_one(&(num / den));
                let by_den = (max_den - &q1).div_floor(&q0);
                let t = by_value.min(by_den).max(BigInt::one());
                p1 += &t * &p0;
                q1 += &t * &q0;
            }
            Ordering::Greater => {
                // lo <- (p0 + t p1)/(q0 + t q1) for the largest t keeping lo < x.
                let num = x * BigRational::from_integer(q0.clone()) - BigRational::from_integer(p0.clone());
                let den = BigRational::from_integer(p1.clone()) - x * BigRational::from_integer(q1.clone());
                let by_value = ceil_minus_one(&(num / den));
                let by_den = (max_den - &q0).div_floor(&q1);
                let t = by_value.min(by_den).max(BigInt::one());
                p0 += &t * &p1;
                q0 += &t * &q1;
                if frac(&p0, &q0) == *x {
                    return (x.clone(), None);
                }
            }
        }
    }
}

/// Largest integer strictly below `r` (for r > 0), i.e. `ceil(r) - 1`.
fn ceil_minus_one(r: &BigRational) -> BigInt {
    r.ceil().to_integer() - BigInt::one()
}
