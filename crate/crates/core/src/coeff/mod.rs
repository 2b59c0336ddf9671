//! Exact coefficient arithmetic.
//!
//! Two coefficient domains live here. [`TruncSeries`] is the ring of formal
//! power series in the deformation parameters `(h, xi)` truncated at a fixed
//! total degree, used by the symbolic tier. [`RatFun`] is the field of
//! rational functions in `(p, xi, z)` over the rationals, used by the
//! representation tier (`q = p^2`).

mod poly;
mod ratfun;
mod series;
mod zseries;

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use poly::{MPoly, Monomial, Var};
pub use ratfun::RatFun;
pub use series::{Deg, TruncSeries, ZetaSeries};
pub use zseries::ZSeries;

/// Arbitrary precision rational number.
pub type Q = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(u32, u32),
    #[error("exponential needs a series without constant term")]
    ExpConstantTerm,
    #[error("logarithm needs a series with constant term 1")]
    LogConstantTerm,
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("divisor is not a monomial times a unit")]
    NotMonomialUnit,
    #[error("valuation of the dividend is below that of the divisor")]
    ValuationTooLow,
    #[error("series is not invertible (constant term is zero)")]
    NotUnit,
    #[error("exact polynomial division failed")]
    InexactDivision,
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("cannot parse rational number {0:?}")]
    Parse(String),
}

/// `n / d` as a rational.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational square root, if one exists.
pub fn sqrt_q(x: &Q) -> Option<Q> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"n"`, `"-n"` or `"n/d"`.
pub fn parse_q(s: &str) -> Result<Q, CoeffError> {
    let bad = || CoeffError::Parse(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub(crate) fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

pub(crate) fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

/// `x^n` for a rational and a signed exponent.
pub(crate) fn qpow(x: &Q, n: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..n.unsigned_abs() {
        acc *= x;
    }
    if n < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Commutative ring with a partial inverse, shared by the matrix code.
///
/// Implemented by [`Q`], [`RatFun`] and [`ZSeries`]; method names avoid the
/// `num_traits` ones so both traits can be in scope.
pub trait Scalar: Clone + PartialEq + core::fmt::Debug {
    fn zero_s() -> Self;
    fn one_s() -> Self;
    fn from_q(c: Q) -> Self;
    fn is_zero_s(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Result<Self, CoeffError>;
    fn text(&self) -> String;
}

impl Scalar for Q {
    fn zero_s() -> Self {
        <Q as Zero>::zero()
    }
    fn one_s() -> Self {
        <Q as One>::one()
    }
    fn from_q(c: Q) -> Self {
        c
    }
    fn is_zero_s(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, CoeffError> {
        if Zero::is_zero(self) {
            Err(CoeffError::InverseOfZero)
        } else {
            Ok(self.recip())
        }
    }
    fn text(&self) -> String {
        fmt_q(self)
    }
}

impl Scalar for RatFun {
    fn zero_s() -> Self {
        RatFun::zero()
    }
    fn one_s() -> Self {
        RatFun::one()
    }
    fn from_q(c: Q) -> Self {
        RatFun::constant(c)
    }
    fn is_zero_s(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, CoeffError> {
        self.inv()
    }
    fn text(&self) -> String {
        self.to_canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_q("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_q("-4").unwrap(), int(-4));
        assert_eq!(fmt_q(&rat(-2, 4)), "-1/2");
        assert_eq!(fmt_q(&int(7)), "7");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(qpow(&rat(2, 3), -2), rat(9, 4));
    }
}
