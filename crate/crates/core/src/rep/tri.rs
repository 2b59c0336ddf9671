use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Signed;

use super::{RepError, RepMatrix};
use crate::coeff::{int, RatFun, Q};

/// Half-integer exponents, one per block of a weighted power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(pub Vec<Q>);

impl WeightVector {
    /// Weights of `H` in the fundamental representation.
    pub fn fundamental() -> Self {
        WeightVector(alloc::vec![
            crate::coeff::rat(1, 2),
            crate::coeff::rat(-1, 2)
        ])
    }

    pub fn negate(&self) -> Self {
        WeightVector(self.0.iter().map(|w| -w).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriOp {
    Sqrt,
    Inv,
    /// Block-diagonal matrix with blocks `M^{w_i}`.
    WeightedPower(WeightVector),
}

/// Exact functions of a triangular 2x2 matrix.
pub fn tri_matrix_funcs(m: &RepMatrix, op: &TriOp) -> Result<RepMatrix, RepError> {
    check_triangular(m)?;
    match op {
        TriOp::Sqrt => sqrt2(m),
        TriOp::Inv => m.inverse(),
        TriOp::WeightedPower(w) => weighted_power(m, w),
    }
}

fn check_triangular(m: &RepMatrix) -> Result<(), RepError> {
    if m.dim() != 2 {
        return Err(RepError::Dimension(m.dim()));
    }
    if !m.is_upper_triangular() && !m.is_lower_triangular() {
        return Err(RepError::NotTriangular);
    }
    if m.get(0, 0).is_zero() || m.get(1, 1).is_zero() {
        return Err(RepError::NonInvertibleDiagonal);
    }
    Ok(())
}

fn sqrt2(m: &RepMatrix) -> Result<RepMatrix, RepError> {
    if !m.is_upper_triangular() {
        return Ok(sqrt2(&m.transpose())?.transpose());
    }
    let ra = m.get(0, 0).sqrt().ok_or(RepError::NoSquareRoot)?;
    let rd = m.get(1, 1).sqrt().ok_or(RepError::NoSquareRoot)?;
    let sum = &ra + &rd;
    if sum.is_zero() {
        return Err(RepError::NoSquareRoot);
    }
    let b = m.get(0, 1) / &sum;
    Ok(RepMatrix::from_rows(alloc::vec![
        alloc::vec![ra, b],
        alloc::vec![RatFun::zero(), rd],
    ]))
}

/// `M^w` for a half-integer `w`.
fn half_power(m: &RepMatrix, w: &Q) -> Result<RepMatrix, RepError> {
    let twice = w * int(2);
    if !twice.is_integer() {
        return Err(RepError::NotHalfInteger);
    }
    let k = twice.to_integer();
    let (base, k) = if k.is_even() {
        (m.clone(), k / 2)
    } else {
        (sqrt2(m)?, k)
    };
    let base = if k.is_negative() {
        base.inverse()?
    } else {
        base
    };
    let e: u32 = k.abs().try_into().map_err(|_| RepError::NotHalfInteger)?;
    Ok(base.pow(e))
}

fn weighted_power(m: &RepMatrix, w: &WeightVector) -> Result<RepMatrix, RepError> {
    let n = w.0.len();
    let mut out = RepMatrix::zero(2 * n);
    for (b, wi) in w.0.iter().enumerate() {
        let blk = half_power(m, wi)?;
        for i in 0..2 {
            for j in 0..2 {
                out.set(2 * b + i, 2 * b + j, blk.get(i, j).clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn p() -> RatFun {
        RatFun::p()
    }

    fn q() -> RatFun {
        &p() * &p()
    }

    #[test]
    fn sqrt_example() {
        let m = RepMatrix::from_rows(alloc::vec![
            alloc::vec![q(), RatFun::xi()],
            alloc::vec![RatFun::zero(), q().inv().unwrap()],
        ]);
        let r = tri_matrix_funcs(&m, &TriOp::Sqrt).unwrap();
        assert_eq!(r.get(0, 0), &p());
        assert_eq!(
            r.get(0, 1),
            &(&RatFun::xi() / &(&p() + &p().inv().unwrap()))
        );
        assert_eq!(r.mul(&r), m);
        let lower = tri_matrix_funcs(&m.transpose(), &TriOp::Sqrt).unwrap();
        assert_eq!(lower.mul(&lower), m.transpose());
    }

    #[test]
    fn inverse_of_diagonal() {
        let m = RepMatrix::diag(alloc::vec![q(), q().inv().unwrap()]);
        let i = tri_matrix_funcs(&m, &TriOp::Inv).unwrap();
        assert_eq!(i, RepMatrix::diag(alloc::vec![q().inv().unwrap(), q()]));
    }

    #[test]
    fn weighted_power_of_identity() {
        let w = WeightVector(alloc::vec![rat(1, 2), rat(-3, 2), int(2)]);
        let r = tri_matrix_funcs(&RepMatrix::identity(2), &TriOp::WeightedPower(w)).unwrap();
        assert_eq!(r, RepMatrix::identity(6));
    }

    #[test]
    fn rejects_bad_input() {
        let full = RepMatrix::from_rows(alloc::vec![
            alloc::vec![RatFun::one(), RatFun::one()],
            alloc::vec![RatFun::one(), RatFun::int(2)],
        ]);
        assert_eq!(
            tri_matrix_funcs(&full, &TriOp::Sqrt),
            Err(RepError::NotTriangular)
        );
        let m = RepMatrix::diag(alloc::vec![p(), RatFun::one()]);
        assert_eq!(
            tri_matrix_funcs(&m, &TriOp::Sqrt),
            Err(RepError::NoSquareRoot)
        );
    }
}
