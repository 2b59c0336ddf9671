use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{fmt_q, qpow, CoeffError, Q};

/// Formal variables of the representation tier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    P = 0,
    Xi = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::P, Var::Xi, Var::Z];

    fn name(self) -> &'static str {
        match self {
            Var::P => "p",
            Var::Xi => "xi",
            Var::Z => "z",
        }
    }
}

/// Exponent vector over `(p, xi, z)`.
///
/// Ordered graded-lexicographically with precedence `p < xi < z`: first by
/// total degree, then by the `z`, `xi`, `p` exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 3]);

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut m = [0; 3];
        m[v as usize] = e;
        Monomial(m)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v as usize]
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    fn divides(&self, o: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then(self.0[2].cmp(&other.0[2]))
            .then(self.0[1].cmp(&other.0[1]))
            .then(self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over the rationals in `(p, xi, z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &Q) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly, CoeffError> {
        let (dm, dc) = d.leading().ok_or(CoeffError::InverseOfZero)?;
        let (dm, dc) = (*dm, dc.clone());
        if let Some(c) = d.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(CoeffError::InexactDivision);
            }
            let m = rm.div(&dm);
            let c = rc / &dc;
            rem = rem.sub(&d.mul_term(&m, &c));
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    /// Exact square root with positive leading coefficient, if one exists.
    pub fn sqrt(&self) -> Option<MPoly> {
        let (lm, lc) = match self.leading() {
            None => return Some(MPoly::zero()),
            Some((m, c)) => (*m, c.clone()),
        };
        if lm.0.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let root_m = Monomial([lm.0[0] / 2, lm.0[1] / 2, lm.0[2] / 2]);
        let root_c = super::sqrt_q(&lc)?;
        let twice = &root_c + &root_c;
        let mut r = MPoly::term(root_m, root_c);
        loop {
            let rem = self.sub(&r.mul(&r));
            let Some((rm, rc)) = rem.leading() else {
                return Some(r);
            };
            // Every new term sits strictly below the root's leading term.
            if !root_m.divides(rm) {
                return None;
            }
            let m = rm.div(&root_m);
            if m >= root_m {
                return None;
            }
            r.add_term(m, rc / &twice);
        }
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v);
            let mut rest = *m;
            rest.0[v as usize] = 0;
            out[k as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_coeffs(v: Var, cs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            out = out.add(&c.mul_term(&Monomial::var(v, k as u32), &Q::one()));
        }
        out
    }

    fn main_var(&self) -> Option<Var> {
        Var::ALL
            .iter()
            .rev()
            .copied()
            .find(|v| self.degree_in(*v) > 0)
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    pub fn gcd(&self, o: &MPoly) -> MPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let v = match (self.main_var(), o.main_var()) {
            (None, _) | (_, None) => return MPoly::one(),
            (Some(a), Some(b)) => a.max(b),
        };
        let ca = self.content(v);
        let cb = o.content(v);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = o.div_exact(&cb).expect("content divides");
        let c = ca.gcd(&cb);
        if a.degree_in(v) < b.degree_in(v) {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.degree_in(v) > 0 {
            let r = a.prem(&b, v);
            a = b;
            b = if r.is_zero() { r } else { r.primitive(v) };
        }
        let g = if b.is_zero() { a } else { MPoly::one() };
        c.mul(&g).monic()
    }

    /// Gcd of the coefficients with respect to `v`.
    fn content(&self, v: Var) -> MPoly {
        let mut g = MPoly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.monic() } else { g.gcd(&c) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive(&self, v: Var) -> MPoly {
        self.div_exact(&self.content(v)).expect("content divides")
    }

    /// Pseudo-remainder of `self` by `d` as polynomials in `v`.
    fn prem(&self, d: &MPoly, v: Var) -> MPoly {
        let dd = d.degree_in(v);
        let dcs = d.coeffs_in(v);
        let lc = dcs[dd as usize].clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dd {
            let k = r.degree_in(v);
            let rc = r.coeffs_in(v)[k as usize].clone();
            let mut shifted = vec![MPoly::zero(); (k - dd) as usize];
            shifted.extend(dcs.iter().cloned());
            let sub = MPoly::from_coeffs(v, &shifted).mul(&rc);
            r = r.mul(&lc).sub(&sub);
        }
        r
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Evaluates at a full rational point `[p, xi, z]`.
    pub fn eval(&self, point: &[Q; 3]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for i in 0..3 {
                t *= qpow(&point[i], m.0[i] as i64);
            }
            acc + t
        })
    }

    /// Substitutes a rational value for one variable.
    pub fn subst(&self, v: Var, x: &Q) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest.0[v as usize] = 0;
            out.add_term(rest, c * qpow(x, m.exp(v) as i64));
        }
        out
    }

    /// True when the leading coefficient is negative.
    pub fn leading_is_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }

    /// Canonical text, terms in decreasing monomial order.
    pub fn to_canonical(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || *m == Monomial::ONE {
                factors.push(fmt_q(&a));
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(String::from(v.name())),
                    e => factors.push(alloc::format!("{}^{}", v.name(), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    fn p() -> MPoly {
        MPoly::var(Var::P)
    }
    fn xi() -> MPoly {
        MPoly::var(Var::Xi)
    }
    fn z() -> MPoly {
        MPoly::var(Var::Z)
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(int(n))
    }

    #[test]
    fn monomial_order_is_graded_with_z_highest() {
        let pz = Monomial::var(Var::Z, 1);
        let pxi = Monomial::var(Var::Xi, 1);
        let pp2 = Monomial::var(Var::P, 2);
        assert!(pz > pxi);
        assert!(pxi > Monomial::var(Var::P, 1));
        assert!(pp2 > pz);
    }

    #[test]
    fn exact_division_and_failure() {
        let a = p().mul(&p()).sub(&c(1));
        let b = p().sub(&c(1));
        assert_eq!(a.div_exact(&b).unwrap(), p().add(&c(1)));
        assert_eq!(p().div_exact(&b), Err(CoeffError::InexactDivision));
    }

    #[test]
    fn gcd_of_products() {
        let f = p().add(&xi()).add(&c(1));
        let g = z().sub(&p());
        let h = xi().mul(&xi()).add(&c(2));
        let a = f.mul(&g).mul(&h);
        let b = f.mul(&h).mul(&z().add(&c(3)));
        assert_eq!(a.gcd(&b), f.mul(&h).monic());
        assert!(g.gcd(&h).is_one());
    }

    #[test]
    fn gcd_with_univariate_part() {
        let a = p().pow(4).sub(&c(1));
        let b = p().pow(2).add(&c(1)).mul(&z());
        assert_eq!(a.gcd(&b), p().pow(2).add(&c(1)));
    }

    #[test]
    fn substitution_and_evaluation_agree() {
        let a = p().mul(&xi()).add(&z().pow(2));
        let pt = [int(2), int(3), int(5)];
        assert_eq!(a.eval(&pt), int(31));
        let s = a.subst(Var::Z, &int(5));
        assert_eq!(s.eval(&pt), int(31));
    }

    #[test]
    fn canonical_text() {
        let a = p().mul(&p()).sub(&xi().scale(&int(2))).add(&c(1));
        assert_eq!(a.to_canonical(), "p^2 - 2*xi + 1");
    }
}
