use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{CoeffError, Scalar, Q};

/// Power series in the spectral parameter `z` over a [`Scalar`], known
/// exactly for the powers `z^0 .. z^(prec-1)`.
///
/// Series of length at most one are treated as exact constants when mixed
/// with longer ones; otherwise binary operations keep the smaller precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> ZSeries<F> {
    pub fn zero(prec: usize) -> Self {
        ZSeries {
            coeffs: vec![F::zero_s(); prec],
        }
    }

    pub fn constant(c: F, prec: usize) -> Self {
        Self::monomial(c, 0, prec)
    }

    /// `c z^k`, zero when `k` is beyond the precision.
    pub fn monomial(c: F, k: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if k < prec {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<F>, prec: usize) -> Self {
        coeffs.resize(prec, F::zero_s());
        ZSeries { coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient; `None` if all known ones vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_s())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> ZSeries<G> {
        ZSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Scalar, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<ZSeries<G>, E> {
        Ok(ZSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().take(prec).cloned().collect(),
            prec.min(self.prec()),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.times(c))
    }

    /// Multiplies by `z^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.prec();
        let mut out = Self::zero(n);
        for i in 0..n.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    pub fn exp(&self) -> Result<Self, CoeffError> {
        if !self.coeffs.first().is_none_or(|c| c.is_zero_s()) {
            return Err(CoeffError::ExpConstantTerm);
        }
        // f' = a' f, solved coefficientwise.
        let n = self.prec();
        let mut out = vec![F::zero_s(); n];
        if n > 0 {
            out[0] = F::one_s();
        }
        for k in 1..n {
            let mut acc = F::zero_s();
            for j in 1..=k {
                let t = self.coeffs[j]
                    .times(&out[k - j])
                    .times(&F::from_q(Q::from_integer((j as i64).into())));
                acc = acc.plus(&t);
            }
            out[k] = acc.times(&F::from_q(Q::new(1.into(), (k as i64).into())));
        }
        Ok(ZSeries { coeffs: out })
    }

    pub fn log(&self) -> Result<Self, CoeffError> {
        let n = self.prec();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != F::one_s() {
            return Err(CoeffError::LogConstantTerm);
        }
        // k g_k = k a_k - sum_{j<k} j g_j a_{k-j}
        let mut g = vec![F::zero_s(); n];
        for k in 1..n {
            let kq = F::from_q(Q::from_integer((k as i64).into()));
            let mut acc = self.coeffs[k].times(&kq);
            for j in 1..k {
                let jq = F::from_q(Q::from_integer((j as i64).into()));
                acc = acc.minus(&g[j].times(&self.coeffs[k - j]).times(&jq));
            }
            g[k] = acc.times(&F::from_q(Q::new(1.into(), (k as i64).into())));
        }
        Ok(ZSeries { coeffs: g })
    }
}

impl<F: Scalar> Scalar for ZSeries<F> {
    /// Precision-free zero; arithmetic adopts the other operand's precision.
    fn zero_s() -> Self {
        ZSeries { coeffs: Vec::new() }
    }
    fn one_s() -> Self {
        ZSeries {
            coeffs: vec![F::one_s()],
        }
    }
    fn from_q(c: Q) -> Self {
        ZSeries {
            coeffs: vec![F::from_q(c)],
        }
    }
    fn is_zero_s(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_s())
    }
    fn plus(&self, o: &Self) -> Self {
        let n = match (self.prec(), o.prec()) {
            (a, b) if a <= 1 || b <= 1 => a.max(b),
            (a, b) => a.min(b),
        };
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => F::zero_s(),
            });
        }
        ZSeries { coeffs: out }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        // A length-one series is a constant known to all orders.
        let n = match (self.prec(), o.prec()) {
            (0, _) | (_, 0) => return <Self as Scalar>::zero_s(),
            (1, b) => b,
            (a, 1) => a,
            (a, b) => a.min(b),
        };
        let mut out = vec![F::zero_s(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero_s() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero_s() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        ZSeries { coeffs: out }
    }
    fn negate(&self) -> Self {
        self.map(|c| c.negate())
    }
    fn inverse(&self) -> Result<Self, CoeffError> {
        let n = self.prec();
        let c0 = self.coeffs.first().ok_or(CoeffError::NotUnit)?;
        if c0.is_zero_s() {
            return Err(CoeffError::NotUnit);
        }
        let inv0 = c0.inverse()?;
        let mut out = vec![F::zero_s(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = F::zero_s();
            for i in 1..=k {
                acc = acc.plus(&self.coeffs[i].times(&out[k - i]));
            }
            out[k] = acc.times(&inv0).negate();
        }
        Ok(ZSeries { coeffs: out })
    }
    fn text(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_s() {
                continue;
            }
            parts.push(match k {
                0 => alloc::format!("({})", c.text()),
                1 => alloc::format!("({})*z", c.text()),
                _ => alloc::format!("({})*z^{}", c.text(), k),
            });
        }
        parts.push(alloc::format!("O(z^{})", self.prec()));
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    #[test]
    fn geometric_inverse() {
        let s = ZSeries::from_coeffs(alloc::vec![int(1), int(-1)], 5);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[int(1), int(1), int(1), int(1), int(1)]);
        assert!(s.times(&inv).minus(&ZSeries::one_s()).is_zero_s());
    }

    #[test]
    fn exp_log_round_trip() {
        let a = ZSeries::from_coeffs(alloc::vec![int(0), rat(1, 2), int(3)], 6);
        let e = a.exp().unwrap();
        assert_eq!(e.log().unwrap(), a);
        assert_eq!(e.coeff(1), &rat(1, 2));
    }

    #[test]
    fn shift_and_valuation() {
        let a = ZSeries::constant(int(2), 4).shift(2);
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(ZSeries::<Q>::zero(3).valuation(), None);
    }
}
