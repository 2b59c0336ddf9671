use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{factorial, fmt_q, CoeffError, Q};

/// Bidegree of a monomial `h^h xi^xi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deg {
    pub h: u32,
    pub xi: u32,
}

impl Deg {
    pub const fn new(h: u32, xi: u32) -> Self {
        Deg { h, xi }
    }

    pub const fn total(self) -> u32 {
        self.h + self.xi
    }
}

/// Formal power series in `(h, xi)` with rational coefficients, truncated at
/// total degree `order`.
///
/// No stored coefficient is zero and no stored term exceeds the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    order: u32,
    terms: BTreeMap<Deg, Q>,
}

impl TruncSeries {
    pub fn zero(order: u32) -> Self {
        TruncSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Q::one(), order)
    }

    pub fn constant(c: Q, order: u32) -> Self {
        Self::monomial(c, 0, 0, order)
    }

    /// `c h^dh xi^dxi`, or zero when the degree exceeds the order.
    pub fn monomial(c: Q, dh: u32, dxi: u32, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(Deg::new(dh, dxi), c);
        s
    }

    pub fn h(order: u32) -> Self {
        Self::monomial(Q::one(), 1, 0, order)
    }

    pub fn xi(order: u32) -> Self {
        Self::monomial(Q::one(), 0, 1, order)
    }

    pub fn from_terms<I: IntoIterator<Item = (Deg, Q)>>(order: u32, terms: I) -> Self {
        let mut s = Self::zero(order);
        for (d, c) in terms {
            s.add_term(d, c);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Deg, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn coeff(&self, dh: u32, dxi: u32) -> Q {
        self.terms
            .get(&Deg::new(dh, dxi))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    /// Lowest total degree among stored terms; `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|d| d.total()).min()
    }

    /// Adds `c h^d.h xi^d.xi` in place, dropping terms above the order.
    pub fn add_term(&mut self, d: Deg, c: Q) {
        if d.total() > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &TruncSeries) {
        debug_assert_eq!(self.order, other.order);
        for (d, c) in &other.terms {
            self.add_term(*d, c.clone());
        }
    }

    /// `self += a * b`, skipping products above the order.
    pub fn add_product(&mut self, a: &TruncSeries, b: &TruncSeries) {
        for (da, ca) in &a.terms {
            let room = self.order.saturating_sub(da.total());
            if da.total() > self.order {
                continue;
            }
            for (db, cb) in &b.terms {
                if db.total() > room {
                    continue;
                }
                self.add_term(Deg::new(da.h + db.h, da.xi + db.xi), ca * cb);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> TruncSeries {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        TruncSeries {
            order: self.order,
            terms: self.terms.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    fn check_order(&self, other: &TruncSeries) -> Result<(), CoeffError> {
        if self.order != other.order {
            Err(CoeffError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &TruncSeries) -> Result<TruncSeries, CoeffError> {
        self.check_order(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &TruncSeries) -> Result<TruncSeries, CoeffError> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        out.add_product(self, other);
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> TruncSeries {
        let mut acc = Self::one(self.order);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `exp(a)` for `a` without constant term.
    pub fn exp(&self) -> Result<TruncSeries, CoeffError> {
        if !self.constant_term().is_zero() {
            return Err(CoeffError::ExpConstantTerm);
        }
        let mut acc = Self::one(self.order);
        let mut power = Self::one(self.order);
        for n in 1..=self.order {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            acc.add_assign_ref(&power.scale(&factorial(n).recip()));
        }
        Ok(acc)
    }

    /// `log(a)` for `a = 1 + x` with `x` of positive valuation.
    pub fn log(&self) -> Result<TruncSeries, CoeffError> {
        if !self.constant_term().is_one() {
            return Err(CoeffError::LogConstantTerm);
        }
        let x = self - &Self::one(self.order);
        let mut acc = Self::zero(self.order);
        let mut power = Self::one(self.order);
        for n in 1..=self.order {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            let mut c = Q::from_integer(n.into()).recip();
            if n % 2 == 0 {
                c = -c;
            }
            acc.add_assign_ref(&power.scale(&c));
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a unit (nonzero constant term).
    pub fn inverse(&self) -> Result<TruncSeries, CoeffError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(CoeffError::NotUnit);
        }
        let inv0 = c0.recip();
        // 1/(c0 (1 + y)) = inv0 * sum (-y)^n
        let y = &self.scale(&inv0) - &Self::one(self.order);
        let neg_y = -&y;
        let mut acc = Self::one(self.order);
        let mut power = Self::one(self.order);
        for _ in 1..=self.order {
            power = &power * &neg_y;
            if power.is_zero() {
                break;
            }
            acc.add_assign_ref(&power);
        }
        Ok(acc.scale(&inv0))
    }

    /// Valuation-compatible division `a / b`.
    ///
    /// `b` must factor as a monomial `m` times a unit `u`; every term of `a`
    /// must be divisible by `m`. The quotient is exact to order
    /// `N - deg(m)`, which becomes the order of the result.
    pub fn div_val(&self, b: &TruncSeries) -> Result<TruncSeries, CoeffError> {
        self.check_order(b)?;
        let lead = b.terms.keys().min_by_key(|d| (d.total(), d.h)).copied();
        let m = lead.ok_or(CoeffError::DivisionByZero)?;
        if b.terms.keys().any(|d| d.h < m.h || d.xi < m.xi) {
            return Err(CoeffError::NotMonomialUnit);
        }
        if let Some(va) = self.valuation() {
            if va < m.total() {
                return Err(CoeffError::ValuationTooLow);
            }
            if self.terms.keys().any(|d| d.h < m.h || d.xi < m.xi) {
                return Err(CoeffError::ValuationTooLow);
            }
        }
        let order = self.order - m.total();
        let shift = |s: &TruncSeries| {
            TruncSeries::from_terms(
                order,
                s.terms
                    .iter()
                    .map(|(d, c)| (Deg::new(d.h - m.h, d.xi - m.xi), c.clone())),
            )
        };
        let a_red = shift(self);
        let unit = shift(b);
        Ok(&a_red * &unit.inverse()?)
    }

    /// Divides by `xi`, requiring every term to carry at least one `xi`.
    /// The order drops by one.
    pub fn div_xi(&self) -> Result<TruncSeries, CoeffError> {
        if self.terms.keys().any(|d| d.xi == 0) {
            return Err(CoeffError::ValuationTooLow);
        }
        Ok(TruncSeries::from_terms(
            self.order.saturating_sub(1),
            self.terms
                .iter()
                .map(|(d, c)| (Deg::new(d.h, d.xi - 1), c.clone())),
        ))
    }

    /// Same series viewed at a lower truncation order.
    pub fn truncate(&self, order: u32) -> TruncSeries {
        assert!(order <= self.order, "cannot raise truncation order");
        TruncSeries::from_terms(order, self.terms.iter().map(|(d, c)| (*d, c.clone())))
    }

    /// Keeps only terms free of `xi` (the `xi = 0` specialization).
    pub fn at_xi_zero(&self) -> TruncSeries {
        self.filter(|d| d.xi == 0)
    }

    /// Keeps only terms free of `h` (the `h = 0` specialization).
    pub fn at_h_zero(&self) -> TruncSeries {
        self.filter(|d| d.h == 0)
    }

    fn filter(&self, keep: impl Fn(&Deg) -> bool) -> TruncSeries {
        TruncSeries {
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| keep(d))
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `h -> zeta * xi` for a rational `zeta`; the result only
    /// involves `xi` and keeps the order.
    pub fn subst_h(&self, zeta: &Q) -> TruncSeries {
        let mut out = TruncSeries::zero(self.order);
        for (d, c) in &self.terms {
            out.add_term(Deg::new(0, d.h + d.xi), c * super::qpow(zeta, d.h as i64));
        }
        out
    }

    /// Substitutes `h -> zeta * xi` with `zeta` kept as a formal symbol.
    pub fn subst_h_symbolic(&self) -> ZetaSeries {
        let mut out = ZetaSeries::zero(self.order);
        for (d, c) in &self.terms {
            out.add_term(d.h, d.h + d.xi, c.clone());
        }
        out
    }

    /// Evaluates the series as a polynomial at rational `(h, xi)`.
    pub fn eval(&self, h: &Q, xi: &Q) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (d, c)| {
            acc + c * super::qpow(h, d.h as i64) * super::qpow(xi, d.xi as i64)
        })
    }

    /// Lowest-degree term in graded order, if any.
    pub fn lowest_term(&self) -> Option<(Deg, Q)> {
        self.terms
            .iter()
            .min_by_key(|(d, _)| (d.total(), d.xi))
            .map(|(d, c)| (*d, c.clone()))
    }

    /// Canonical text: terms sorted by (total degree, xi-degree).
    pub fn to_canonical(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut items: Vec<(&Deg, &Q)> = self.terms.iter().collect();
        items.sort_by_key(|(d, _)| (d.total(), d.xi));
        let mut out = String::new();
        for (i, (d, c)) in items.into_iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&fmt_q(c));
            if d.h > 0 {
                out.push_str(&alloc::format!("*h^{}", d.h));
            }
            if d.xi > 0 {
                out.push_str(&alloc::format!("*xi^{}", d.xi));
            }
        }
        out
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_add(rhs).expect("series orders must match")
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_add(&-rhs).expect("series orders must match")
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_mul(rhs).expect("series orders must match")
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            order: self.order,
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

/// Result of `h -> zeta xi` with `zeta` symbolic: coefficients indexed by
/// `(zeta-degree, xi-degree)`, truncated at xi-degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    order: u32,
    terms: BTreeMap<(u32, u32), Q>,
}

impl ZetaSeries {
    pub fn zero(order: u32) -> Self {
        ZetaSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, zeta: u32, xi: u32, c: Q) {
        if xi > self.order || c.is_zero() {
            return;
        }
        let e = self.terms.entry((zeta, xi)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(zeta, xi));
        }
    }

    /// Coefficient of `xi^k` as a polynomial in `zeta` (index = power).
    pub fn xi_coeff(&self, k: u32) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::new();
        for ((z, x), c) in &self.terms {
            if *x == k {
                let z = *z as usize;
                if out.len() <= z {
                    out.resize(z + 1, Q::zero());
                }
                out[z] = c.clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &ZetaSeries) -> ZetaSeries {
        let mut out = ZetaSeries::zero(self.order.min(other.order));
        for ((za, xa), ca) in &self.terms {
            for ((zb, xb), cb) in &other.terms {
                out.add_term(za + zb, xa + xb, ca * cb);
            }
        }
        out
    }

    /// Specializes `zeta` to a rational value.
    pub fn at_zeta(&self, zeta: &Q) -> TruncSeries {
        let mut out = TruncSeries::zero(self.order);
        for ((z, x), c) in &self.terms {
            out.add_term(Deg::new(0, *x), c * super::qpow(zeta, *z as i64));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    fn s(order: u32, terms: &[(u32, u32, Q)]) -> TruncSeries {
        TruncSeries::from_terms(
            order,
            terms.iter().map(|(a, b, c)| (Deg::new(*a, *b), c.clone())),
        )
    }

    #[test]
    fn product_of_linear_factors() {
        let n = 4;
        let a = &TruncSeries::one(n) + &TruncSeries::h(n);
        let b = &TruncSeries::one(n) + &TruncSeries::xi(n);
        let expect = s(
            n,
            &[
                (0, 0, int(1)),
                (1, 0, int(1)),
                (0, 1, int(1)),
                (1, 1, int(1)),
            ],
        );
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn exp_h_times_exp_minus_h_is_one() {
        let n = 5;
        let e = TruncSeries::h(n).exp().unwrap();
        let ei = (-&TruncSeries::h(n)).exp().unwrap();
        assert!((&e * &ei).is_one());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let n = 3;
        let hx = TruncSeries::monomial(int(1), 1, 1, n);
        let a = &TruncSeries::one(n) + &hx;
        let b = &TruncSeries::one(n) - &hx;
        assert_eq!(&a * &b, TruncSeries::one(n));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = TruncSeries::h(3);
        let b = TruncSeries::h(4);
        assert_eq!(a.try_mul(&b), Err(CoeffError::OrderMismatch(3, 4)));
    }

    #[test]
    fn exp_examples() {
        let e = TruncSeries::h(4).exp().unwrap();
        let expect = s(
            4,
            &[
                (0, 0, int(1)),
                (1, 0, int(1)),
                (2, 0, rat(1, 2)),
                (3, 0, rat(1, 6)),
                (4, 0, rat(1, 24)),
            ],
        );
        assert_eq!(e, expect);
        assert!(TruncSeries::zero(4).exp().unwrap().is_one());
        let hx = &TruncSeries::h(2) + &TruncSeries::xi(2);
        let expect = s(
            2,
            &[
                (0, 0, int(1)),
                (1, 0, int(1)),
                (0, 1, int(1)),
                (2, 0, rat(1, 2)),
                (1, 1, int(1)),
                (0, 2, rat(1, 2)),
            ],
        );
        assert_eq!(hx.exp().unwrap(), expect);
        assert_eq!(TruncSeries::one(3).exp(), Err(CoeffError::ExpConstantTerm));
    }

    #[test]
    fn log_examples() {
        let a = &TruncSeries::one(3) + &TruncSeries::xi(3);
        let expect = s(3, &[(0, 1, int(1)), (0, 2, rat(-1, 2)), (0, 3, rat(1, 3))]);
        assert_eq!(a.log().unwrap(), expect);
        let eh = TruncSeries::h(5).exp().unwrap();
        assert_eq!(eh.log().unwrap(), TruncSeries::h(5));
        assert_eq!(TruncSeries::h(3).log(), Err(CoeffError::LogConstantTerm));
    }

    #[test]
    fn log_of_one_plus_h_plus_xi_matches_exp_round_trip() {
        // Oracle: log(1 + h + xi) = (h + xi) - (h + xi)^2 / 2 at order 2.
        let n = 2;
        let x = &TruncSeries::h(n) + &TruncSeries::xi(n);
        let arg = &TruncSeries::one(n) + &x;
        let expect = &x - &(&x * &x).scale(&rat(1, 2));
        let got = arg.log().unwrap();
        assert_eq!(got, expect);
        assert_eq!(got.exp().unwrap(), arg);
    }

    #[test]
    fn div_val_examples() {
        let n = 4;
        let one_minus = &TruncSeries::one(n) - &(-&TruncSeries::h(n)).exp().unwrap();
        let q = one_minus.div_val(&TruncSeries::h(n)).unwrap();
        let expect = s(
            3,
            &[
                (0, 0, int(1)),
                (1, 0, rat(-1, 2)),
                (2, 0, rat(1, 6)),
                (3, 0, rat(-1, 24)),
            ],
        );
        assert_eq!(q, expect);
        assert!(TruncSeries::h(n)
            .div_val(&TruncSeries::h(n))
            .unwrap()
            .is_one());
        assert_eq!(
            TruncSeries::one(n).div_val(&TruncSeries::h(n)),
            Err(CoeffError::ValuationTooLow)
        );
        assert_eq!(
            TruncSeries::h(n).div_val(&TruncSeries::zero(n)),
            Err(CoeffError::DivisionByZero)
        );
        let hx = &TruncSeries::h(n) + &TruncSeries::xi(n);
        assert_eq!(
            TruncSeries::h(n).div_val(&hx),
            Err(CoeffError::NotMonomialUnit)
        );
    }

    #[test]
    fn subst_examples() {
        let n = 4;
        let hx = TruncSeries::monomial(int(1), 1, 1, n);
        let zeta = int(3);
        assert_eq!(hx.subst_h(&zeta), TruncSeries::monomial(int(3), 0, 2, n));
        assert!(TruncSeries::one(n).subst_h(&zeta).is_one());
        let lin = &TruncSeries::h(n) + &TruncSeries::xi(n);
        assert_eq!(lin.subst_h(&int(2)), TruncSeries::monomial(int(3), 0, 1, n));
        let sym = hx.subst_h_symbolic();
        assert_eq!(sym.xi_coeff(2), alloc::vec![int(0), int(1)]);
    }
}
