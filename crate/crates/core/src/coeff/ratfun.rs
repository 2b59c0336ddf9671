use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{fmt_q, CoeffError, MPoly, Var, Q};

/// Reduced quotient of polynomials in `(p, xi, z)`.
///
/// The denominator is nonzero, coprime to the numerator and has leading
/// coefficient 1, so structural equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFun {
            num: MPoly::constant(c),
            den: MPoly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn p() -> Self {
        Self::var(Var::P)
    }

    pub fn xi() -> Self {
        Self::var(Var::Xi)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn from_poly(num: MPoly) -> Self {
        RatFun {
            num,
            den: MPoly::one(),
        }
    }

    /// Builds `num / den` in reduced normalized form.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(d) = den.as_constant() {
            return RatFun {
                num: num.scale(&d.recip()),
                den: MPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff().recip();
        RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The value when the function is a rational constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RatFun, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::InverseOfZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<RatFun, CoeffError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs() as u32;
        Ok(RatFun {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
        .renormalize())
    }

    // Powers of a reduced pair stay reduced; only the scale needs fixing.
    fn renormalize(self) -> RatFun {
        let lc = self.den.leading_coeff().recip();
        RatFun {
            num: self.num.scale(&lc),
            den: self.den.scale(&lc),
        }
    }

    pub fn scale(&self, c: &Q) -> RatFun {
        RatFun {
            num: self.num.scale(c),
            den: if c.is_zero() {
                MPoly::one()
            } else {
                self.den.clone()
            },
        }
    }

    /// Exact square root when numerator and denominator are squares.
    pub fn sqrt(&self) -> Option<RatFun> {
        let num = self.num.sqrt()?;
        let den = self.den.sqrt()?;
        Some(Self::reduce(num, den))
    }

    /// Evaluates at a rational point `[p, xi, z]`.
    pub fn eval(&self, point: &[Q; 3]) -> Result<Q, CoeffError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(CoeffError::PoleAtPoint);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitutes a rational value for one variable.
    pub fn subst(&self, v: Var, x: &Q) -> Result<RatFun, CoeffError> {
        let d = self.den.subst(v, x);
        if d.is_zero() {
            return Err(CoeffError::PoleAtPoint);
        }
        Ok(Self::reduce(self.num.subst(v, x), d))
    }

    /// Canonical `"num/den"` text; parenthesized when a side has several
    /// terms.
    pub fn to_canonical(&self) -> String {
        if let Some(c) = self.as_constant() {
            return fmt_q(&c);
        }
        let wrap = |p: &MPoly| {
            if p.terms().count() > 1 {
                alloc::format!("({})", p)
            } else {
                alloc::format!("{}", p)
            }
        };
        if self.den.is_one() {
            return alloc::format!("{}", self.num);
        }
        alloc::format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }

    fn add_impl(&self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    fn mul_impl(&self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl From<Q> for RatFun {
    fn from(c: Q) -> Self {
        RatFun::constant(c)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        self.add_impl(rhs)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.add_impl(&-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        self.mul_impl(rhs)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.mul_impl(&rhs.inv().expect("division by zero rational function"))
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    fn q() -> RatFun {
        &RatFun::p() * &RatFun::p()
    }

    #[test]
    fn gcd_reduction() {
        let p = RatFun::p();
        let num = MPoly::var(Var::P).pow(2).sub(&MPoly::one());
        let den = MPoly::var(Var::P).sub(&MPoly::one());
        let r = RatFun::new(num, den).unwrap();
        assert_eq!(r, &p + &RatFun::one());
    }

    #[test]
    fn a1_at_trivial_point() {
        let z = RatFun::z();
        let a1 = &(&(&q() * &q()) - &z) / &(&RatFun::one() - &z);
        assert_eq!(a1.eval(&[int(1), int(0), int(0)]).unwrap(), int(1));
    }

    #[test]
    fn s_vanishes_at_xi_zero() {
        let s = &RatFun::xi() / &(&RatFun::one() + &q());
        assert!(s.subst(Var::Xi, &int(0)).unwrap().is_zero());
        assert_eq!(s.eval(&[int(2), int(5), int(0)]).unwrap(), int(1));
    }

    #[test]
    fn inversion_of_zero_fails() {
        assert_eq!(RatFun::zero().inv(), Err(CoeffError::InverseOfZero));
    }

    #[test]
    fn normalization_makes_equality_syntactic() {
        let a = &RatFun::one() / &(&RatFun::p() - &RatFun::one());
        let b = &RatFun::int(-2) / &(&RatFun::int(2) - &(&RatFun::p() * &RatFun::int(2)));
        assert_eq!(a, b);
        assert_eq!(a.denom().leading_coeff(), Q::one());
        assert_eq!(RatFun::constant(rat(1, 2)).to_canonical(), "1/2");
    }

    #[test]
    fn square_roots() {
        let p = RatFun::p();
        let x = &(&p + &RatFun::xi()) / &(&p * &RatFun::int(3));
        let sq = &(&x * &x) * &RatFun::constant(rat(4, 9));
        assert_eq!(sq.sqrt().unwrap(), &x * &RatFun::constant(rat(2, 3)));
        assert_eq!(q().inv().unwrap().sqrt().unwrap(), p.inv().unwrap());
        assert!(p.sqrt().is_none());
        assert!((&q() + &RatFun::one()).sqrt().is_none());
    }

    #[test]
    fn pole_is_reported() {
        let r = &RatFun::one() / &(&RatFun::one() - &RatFun::z());
        assert_eq!(
            r.eval(&[int(1), int(1), int(1)]),
            Err(CoeffError::PoleAtPoint)
        );
    }
}
