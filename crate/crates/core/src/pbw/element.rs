use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::word::{Generator, Presentation, SlotAlgebra, Word};
use super::PbwError;
use crate::coeff::{factorial, CoeffError, TruncSeries, Q};

/// Maximal tensor degree handled by the symbolic tier.
pub const MAX_DEGREE: usize = 3;

/// Tuple of PBW words, one per tensor slot; unused slots hold [`Word::ONE`].
pub type TensorWord = [Word; MAX_DEGREE];

/// Finite combination of tensor words with truncated series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pres: Presentation,
    degree: usize,
    order: u32,
    terms: BTreeMap<TensorWord, TruncSeries>,
}

const EMPTY: TensorWord = [Word::ONE; MAX_DEGREE];

impl AlgebraElement {
    pub fn zero(pres: Presentation, degree: usize, order: u32) -> Self {
        assert!(degree <= MAX_DEGREE, "tensor degree {degree} unsupported");
        AlgebraElement {
            pres,
            degree,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(pres: Presentation, degree: usize, order: u32) -> Self {
        Self::scalar(pres, degree, TruncSeries::one(order))
    }

    pub fn scalar(pres: Presentation, degree: usize, c: TruncSeries) -> Self {
        let mut e = Self::zero(pres, degree, c.order());
        e.add_term(EMPTY, c);
        e
    }

    /// A single word in degree 1 with coefficient 1.
    pub fn word(pres: Presentation, w: Word, order: u32) -> Self {
        let mut e = Self::zero(pres, 1, order);
        let mut tw = EMPTY;
        tw[0] = w;
        e.add_term(tw, TruncSeries::one(order));
        e
    }

    pub fn generator(pres: Presentation, g: Generator, order: u32) -> Result<Self, PbwError> {
        let w = g
            .word(pres)
            .ok_or(PbwError::UnknownGenerator(g.symbol(), pres.name()))?;
        Ok(Self::word(pres, w, order))
    }

    /// The Borel generator `E`, which is `E+` in sl2.
    pub fn carrier_e(pres: Presentation, order: u32) -> Self {
        Self::word(pres, pres.carrier_e(), order)
    }

    pub fn h(pres: Presentation, order: u32) -> Self {
        Self::word(pres, Word::new(0, 1, 0), order)
    }

    pub fn from_terms<I: IntoIterator<Item = (TensorWord, TruncSeries)>>(
        pres: Presentation,
        degree: usize,
        order: u32,
        terms: I,
    ) -> Self {
        let mut e = Self::zero(pres, degree, order);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn presentation(&self) -> Presentation {
        self.pres
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &TruncSeries)> {
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

    pub fn coeff(&self, w: &TensorWord) -> TruncSeries {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| TruncSeries::zero(self.order))
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> TruncSeries {
        self.coeff(&EMPTY)
    }

    /// Lowest `(h, xi)` degree among the coefficients.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.values().filter_map(|c| c.valuation()).min()
    }

    pub fn add_term(&mut self, w: TensorWord, c: TruncSeries) {
        debug_assert_eq!(c.order(), self.order);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, o: &AlgebraElement) -> Result<(), PbwError> {
        if self.pres != o.pres {
            return Err(PbwError::PresentationMismatch);
        }
        if self.degree != o.degree {
            return Err(PbwError::DegreeMismatch(self.degree, o.degree));
        }
        if self.order != o.order {
            return Err(PbwError::OrderMismatch(self.order, o.order));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        self.check_compatible(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        self.try_add(o).expect("incompatible algebra elements")
    }

    pub fn sub(&self, o: &AlgebraElement) -> AlgebraElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &TruncSeries) -> AlgebraElement {
        let mut out = Self::zero(self.pres, self.degree, self.order);
        for (w, v) in &self.terms {
            out.add_term(*w, v * c);
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> AlgebraElement {
        self.map_coeffs(|v| v.scale(c))
    }

    /// Applies `f` to every coefficient, keeping the order.
    pub fn map_coeffs(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> AlgebraElement {
        let mut out = Self::zero(self.pres, self.degree, self.order);
        for (w, v) in &self.terms {
            out.add_term(*w, f(v));
        }
        out
    }

    /// Applies a coefficient map that may change the truncation order.
    pub fn map_coeffs_order(
        &self,
        order: u32,
        f: impl Fn(&TruncSeries) -> Result<TruncSeries, PbwError>,
    ) -> Result<AlgebraElement, PbwError> {
        let mut out = Self::zero(self.pres, self.degree, order);
        for (w, v) in &self.terms {
            out.add_term(*w, f(v)?);
        }
        Ok(out)
    }

    pub fn truncate(&self, order: u32) -> AlgebraElement {
        self.map_coeffs_order(order, |c| Ok(c.truncate(order)))
            .expect("truncation is infallible")
    }

    /// Divides every coefficient by `xi`; the order drops by one.
    pub fn div_xi(&self) -> Result<AlgebraElement, PbwError> {
        self.map_coeffs_order(self.order.saturating_sub(1), |c| Ok(c.div_xi()?))
    }

    pub fn at_xi_zero(&self) -> AlgebraElement {
        self.map_coeffs(|c| c.at_xi_zero())
    }

    pub fn at_h_zero(&self) -> AlgebraElement {
        self.map_coeffs(|c| c.at_h_zero())
    }

    /// Re-expresses the element in a higher order; only valid when the
    /// coefficients are exact polynomials (for example constants).
    pub fn lift_exact(&self, order: u32) -> AlgebraElement {
        self.map_coeffs_order(order, |c| {
            Ok(TruncSeries::from_terms(
                order,
                c.terms().map(|(d, v)| (*d, v.clone())),
            ))
        })
        .expect("lifting is infallible")
    }

    /// Divides every coefficient by the series `b` (a monomial times a
    /// unit); the order drops by the valuation of `b`.
    pub fn div_series(&self, b: &TruncSeries) -> Result<AlgebraElement, PbwError> {
        let v = b.valuation().ok_or(CoeffError::DivisionByZero)?;
        self.map_coeffs_order(self.order - v, |c| Ok(c.div_val(b)?))
    }

    pub fn try_mul(&self, o: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        self.check_compatible(o)?;
        let mut slots = SlotAlgebra::new(self.pres, self.order);
        Ok(self.mul_with(o, &mut slots))
    }

    pub fn mul(&self, o: &AlgebraElement) -> AlgebraElement {
        self.try_mul(o).expect("incompatible algebra elements")
    }

    pub(crate) fn mul_with(&self, o: &AlgebraElement, slots: &mut SlotAlgebra) -> AlgebraElement {
        let n = self.order;
        let mut out = Self::zero(self.pres, self.degree, n);
        let rhs: Vec<(&TensorWord, &TruncSeries, u32)> = o
            .terms
            .iter()
            .map(|(w, c)| (w, c, c.valuation().unwrap_or(0)))
            .collect();
        for (wa, ca) in &self.terms {
            let va = ca.valuation().unwrap_or(0);
            for (wb, cb, vb) in &rhs {
                if va + vb > n {
                    continue;
                }
                let c0 = ca * *cb;
                if c0.is_zero() {
                    continue;
                }
                let mut partial: Vec<(TensorWord, TruncSeries)> = alloc::vec![(EMPTY, c0)];
                for s in 0..self.degree {
                    let prods = slots.mul_words(wa[s], wb[s]);
                    let mut next = Vec::with_capacity(partial.len() * prods.len());
                    for (tw, c) in &partial {
                        for (w, k) in &prods {
                            let v = if k.is_one() { c.clone() } else { c * k };
                            if v.is_zero() {
                                continue;
                            }
                            let mut t = *tw;
                            t[s] = *w;
                            next.push((t, v));
                        }
                    }
                    partial = next;
                }
                for (tw, c) in partial {
                    out.add_term(tw, c);
                }
            }
        }
        out
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> AlgebraElement {
        let mut slots = SlotAlgebra::new(self.pres, self.order);
        let mut acc = Self::one(self.pres, self.degree, self.order);
        for _ in 0..k {
            acc = acc.mul_with(self, &mut slots);
        }
        acc
    }

    /// `exp(self)` for an element of positive valuation.
    pub fn exp(&self) -> Result<AlgebraElement, PbwError> {
        if self.valuation().is_some_and(|v| v == 0) {
            return Err(PbwError::NotNilpotent);
        }
        let mut slots = SlotAlgebra::new(self.pres, self.order);
        let mut acc = Self::one(self.pres, self.degree, self.order);
        let mut power = acc.clone();
        for k in 1..=self.order {
            power = power.mul_with(self, &mut slots);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale_q(&factorial(k).recip()));
        }
        Ok(acc)
    }

    /// `log(self)` for an element `1 + y` with `y` of positive valuation.
    pub fn log(&self) -> Result<AlgebraElement, PbwError> {
        let one = Self::one(self.pres, self.degree, self.order);
        let y = self.sub(&one);
        if y.valuation().is_some_and(|v| v == 0) {
            return Err(PbwError::NotNilpotent);
        }
        let mut slots = SlotAlgebra::new(self.pres, self.order);
        let mut acc = Self::zero(self.pres, self.degree, self.order);
        let mut power = one;
        for k in 1..=self.order {
            power = power.mul_with(&y, &mut slots);
            if power.is_zero() {
                break;
            }
            let mut c = Q::from_integer(k.into()).recip();
            if k % 2 == 0 {
                c = -c;
            }
            acc = acc.add(&power.scale_q(&c));
        }
        Ok(acc)
    }

    /// Inverse of `1 + y` with `y` of positive valuation.
    pub fn inverse(&self) -> Result<AlgebraElement, PbwError> {
        let one = Self::one(self.pres, self.degree, self.order);
        let y = self.sub(&one);
        if y.valuation().is_some_and(|v| v == 0) {
            return Err(PbwError::NotUnipotent);
        }
        let neg_y = y.neg();
        let mut slots = SlotAlgebra::new(self.pres, self.order);
        let mut acc = one.clone();
        let mut power = one;
        for _ in 1..=self.order {
            power = power.mul_with(&neg_y, &mut slots);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// `self * x * self^{-1}` given the inverse.
    pub fn conjugate(&self, x: &AlgebraElement, inv: &AlgebraElement) -> AlgebraElement {
        let mut slots = SlotAlgebra::new(self.pres, self.order);
        self.mul_with(x, &mut slots).mul_with(inv, &mut slots)
    }

    /// Outer tensor product `self (x) o`.
    pub fn tensor(&self, o: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.pres, o.pres);
        let degree = self.degree + o.degree;
        assert!(degree <= MAX_DEGREE, "tensor degree {degree} unsupported");
        let mut out = Self::zero(self.pres, degree, self.order);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let mut t = *wa;
                t[self.degree..degree].copy_from_slice(&wb[..o.degree]);
                out.add_term(t, ca * cb);
            }
        }
        out
    }

    /// Places the slots of `self` at positions `legs` of a degree-`degree`
    /// tensor, filling the rest with 1. `F.place(3, &[0, 2])` is `F_13`.
    pub fn place(&self, degree: usize, legs: &[usize]) -> AlgebraElement {
        assert_eq!(legs.len(), self.degree);
        let mut out = Self::zero(self.pres, degree, self.order);
        for (w, c) in &self.terms {
            let mut t = EMPTY;
            for (i, &l) in legs.iter().enumerate() {
                t[l] = w[i];
            }
            out.add_term(t, c.clone());
        }
        out
    }

    /// Flips the two slots of a degree-2 element.
    pub fn swap(&self) -> AlgebraElement {
        assert_eq!(self.degree, 2);
        self.place(2, &[1, 0])
    }

    /// Replaces slot `slot` by `f(word)`, an element of degree `k`; the
    /// result has degree `degree - 1 + k`. With `k = 0` the slot is
    /// contracted to a scalar.
    pub fn apply_at_slot(
        &self,
        slot: usize,
        k: usize,
        mut f: impl FnMut(Word) -> AlgebraElement,
    ) -> AlgebraElement {
        let degree = self.degree - 1 + k;
        let mut out = Self::zero(self.pres, degree, self.order);
        let mut cache: BTreeMap<Word, AlgebraElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let img = cache.entry(w[slot]).or_insert_with(|| f(w[slot]));
            debug_assert_eq!(img.degree, k);
            for (iw, ic) in &img.terms {
                let mut t = EMPTY;
                let mut pos = 0;
                for s in 0..self.degree {
                    if s == slot {
                        for j in 0..k {
                            t[pos] = iw[j];
                            pos += 1;
                        }
                    } else {
                        t[pos] = w[s];
                        pos += 1;
                    }
                }
                out.add_term(t, c * ic);
            }
        }
        out
    }

    /// Multiplication map `A (x) A -> A` on a degree-2 element.
    pub fn multiply_out(&self) -> AlgebraElement {
        assert_eq!(self.degree, 2);
        let mut slots = SlotAlgebra::new(self.pres, self.order);
        let mut out = Self::zero(self.pres, 1, self.order);
        for (w, c) in &self.terms {
            for (pw, pc) in slots.mul_words(w[0], w[1]) {
                let mut t = EMPTY;
                t[0] = pw;
                out.add_term(t, c * &pc);
            }
        }
        out
    }

    /// Image of a word under an algebra morphism (or anti-morphism when
    /// `anti`) given the images of `E-` (or Borel `E`), `H` and `E+`.
    pub(crate) fn morphism_image(
        w: Word,
        images: [&AlgebraElement; 3],
        anti: bool,
        slots: &mut SlotAlgebra,
    ) -> AlgebraElement {
        let base = images[1];
        let mut acc = Self::one(base.pres, base.degree, base.order);
        let seq: [(usize, u8); 3] = [(0, w.a), (1, w.b), (2, w.c)];
        let mut factors: Vec<usize> = Vec::new();
        for (g, e) in seq {
            for _ in 0..e {
                factors.push(g);
            }
        }
        if anti {
            factors.reverse();
        }
        for g in factors {
            acc = acc.mul_with(images[g], slots);
        }
        acc
    }

    /// Canonical text: terms in word order, coefficients in canonical form.
    pub fn to_canonical(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut lines: Vec<String> = Vec::new();
        for (w, c) in &self.terms {
            let word = (0..self.degree.max(1))
                .map(|s| w[s].render(self.pres))
                .collect::<Vec<_>>()
                .join(" ⊗ ");
            lines.push(alloc::format!("[{}] {}", c.to_canonical(), word));
        }
        lines.join("\n")
    }

    /// Maximal coefficient-wise difference report: the lowest `(h, xi)`
    /// degree at which `self - o` is nonzero.
    pub fn lowest_discrepancy(&self, o: &AlgebraElement) -> Option<(u32, u32)> {
        let d = self.sub(o);
        d.terms
            .values()
            .filter_map(|c| c.lowest_term().map(|(deg, _)| (deg.h, deg.xi)))
            .min_by_key(|(h, x)| (h + x, *x))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}
