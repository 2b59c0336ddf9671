use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::RepError;
use super::RepMatrix;
use crate::coeff::{rat, Deg, RatFun, TruncSeries, Var};
use crate::pbw::{AlgebraElement, Presentation, Word};

/// Square matrix of truncated `(h, xi)` series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    dim: usize,
    order: u32,
    entries: Vec<TruncSeries>,
}

impl SeriesMatrix {
    pub fn zero(dim: usize, order: u32) -> Self {
        SeriesMatrix {
            dim,
            order,
            entries: alloc::vec![TruncSeries::zero(order); dim * dim],
        }
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        let mut m = Self::zero(dim, order);
        for i in 0..dim {
            m.entries[i * dim + i] = TruncSeries::one(order);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, x: TruncSeries) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn add(&self, o: &Self) -> Self {
        SeriesMatrix {
            dim: self.dim,
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &TruncSeries) -> Self {
        SeriesMatrix {
            dim: self.dim,
            order: self.order,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n, self.order);
        for i in 0..n {
            for j in 0..n {
                let mut acc = TruncSeries::zero(self.order);
                for k in 0..n {
                    acc.add_product(self.get(i, k), o.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.dim, o.dim);
        let mut out = Self::zero(n * m, self.order);
        for i in 0..n * m {
            for j in 0..n * m {
                out.set(i, j, self.get(i / m, j / m) * o.get(i % m, j % m));
            }
        }
        out
    }

    /// Expands every entry with `p = e^{h/4}`.
    pub fn from_ratfun(m: &RepMatrix, order: u32) -> Result<Self, RepError> {
        let mut out = Self::zero(m.dim(), order);
        let mut cache = PCache::new(order);
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                out.set(i, j, expand(m.get(i, j), &mut cache)?);
            }
        }
        Ok(out)
    }

    /// Lowest `(h, xi)` degree where the matrices differ.
    pub fn lowest_discrepancy(&self, o: &Self) -> Option<(u32, u32)> {
        self.entries
            .iter()
            .zip(&o.entries)
            .filter_map(|(a, b)| (a - b).lowest_term().map(|(d, _)| (d.h, d.xi)))
            .min_by_key(|(h, x)| (h + x, *x))
    }
}

struct PCache {
    order: u32,
    powers: BTreeMap<u32, TruncSeries>,
}

impl PCache {
    fn new(order: u32) -> Self {
        PCache {
            order,
            powers: BTreeMap::new(),
        }
    }

    /// `p^k = e^{k h / 4}`.
    fn p_pow(&mut self, k: u32) -> TruncSeries {
        let n = self.order;
        self.powers
            .entry(k)
            .or_insert_with(|| {
                TruncSeries::h(n)
                    .scale(&rat(k as i64, 4))
                    .exp()
                    .expect("no constant term")
            })
            .clone()
    }
}

fn expand_poly(p: &crate::coeff::MPoly, cache: &mut PCache) -> Result<TruncSeries, RepError> {
    let n = cache.order;
    let mut acc = TruncSeries::zero(n);
    for (m, c) in p.terms() {
        if m.exp(Var::Z) > 0 {
            return Err(RepError::SpectralParameter);
        }
        let xi = TruncSeries::from_terms(
            n,
            [(
                Deg {
                    h: 0,
                    xi: m.exp(Var::Xi),
                },
                c.clone(),
            )],
        );
        acc.add_product(&cache.p_pow(m.exp(Var::P)), &xi);
    }
    Ok(acc)
}

fn expand(r: &RatFun, cache: &mut PCache) -> Result<TruncSeries, RepError> {
    let num = expand_poly(r.numer(), cache)?;
    let den = expand_poly(r.denom(), cache)?;
    Ok(&num * &den.inverse()?)
}

/// Expands a `z`-free rational function in `(p, xi)` as an `(h, xi)`
/// series with `p = e^{h/4}`.
pub fn ratfun_to_series(r: &RatFun, order: u32) -> Result<TruncSeries, RepError> {
    expand(r, &mut PCache::new(order))
}

fn word_image(p: Presentation, w: Word, order: u32, cache: &mut PCache) -> SeriesMatrix {
    let pe = cache.p_pow(1);
    let mut em = SeriesMatrix::zero(2, order);
    em.set(1, 0, pe.clone());
    let mut ep = SeriesMatrix::zero(2, order);
    ep.set(0, 1, pe);
    let mut h = SeriesMatrix::zero(2, order);
    h.set(0, 0, TruncSeries::constant(rat(1, 2), order));
    h.set(1, 1, TruncSeries::constant(rat(-1, 2), order));
    let mut m = SeriesMatrix::identity(2, order);
    // Borel words are E^a H^b with E carried by E+.
    let factors = match p {
        Presentation::Borel => [(&ep, w.a), (&h, w.b), (&em, 0)],
        Presentation::Sl2 => [(&em, w.a), (&h, w.b), (&ep, w.c)],
    };
    for (g, k) in factors {
        for _ in 0..k {
            m = m.mul(g);
        }
    }
    m
}

/// Matrix image of a degree 1 or 2 element in the (tensor power of the)
/// fundamental representation, `p = e^{h/4}` expanded.
pub fn evaluate_in_rep(x: &AlgebraElement) -> Result<SeriesMatrix, RepError> {
    let (p, n, d) = (x.presentation(), x.order(), x.degree());
    if d == 0 || d > 2 {
        return Err(RepError::Dimension(d));
    }
    let mut cache = PCache::new(n);
    let mut images: BTreeMap<Word, SeriesMatrix> = BTreeMap::new();
    let mut out = SeriesMatrix::zero(1 << d, n);
    for (tw, c) in x.terms() {
        let mut m = SeriesMatrix::identity(1, n);
        for w in &tw[..d] {
            let img = images
                .entry(*w)
                .or_insert_with(|| word_image(p, *w, n, &mut cache));
            m = m.kron(img);
        }
        out = out.add(&m.scale(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::TruncSeries;
    use crate::pbw::normal_order;

    #[test]
    fn unit_maps_to_identity() {
        let one = AlgebraElement::one(Presentation::Sl2, 2, 3);
        assert_eq!(evaluate_in_rep(&one).unwrap(), SeriesMatrix::identity(4, 3));
    }

    #[test]
    fn commutator_is_represented() {
        let p = Presentation::Sl2;
        let n = 4;
        let ep = normal_order("Ep", p, n).unwrap();
        let em = normal_order("Em", p, n).unwrap();
        let comm = ep.mul(&em).sub(&em.mul(&ep));
        let a = evaluate_in_rep(&ep).unwrap();
        let b = evaluate_in_rep(&em).unwrap();
        let lhs = evaluate_in_rep(&comm).unwrap();
        let neg = b
            .mul(&a)
            .scale(&TruncSeries::constant(crate::coeff::int(-1), n));
        assert_eq!(lhs, a.mul(&b).add(&neg));
    }

    #[test]
    fn words_multiply_like_matrices() {
        let p = Presentation::Sl2;
        let w = normal_order("Ep H Em H", p, 3).unwrap();
        let prod = ["Ep", "H", "Em", "H"]
            .iter()
            .map(|g| evaluate_in_rep(&normal_order(g, p, 3).unwrap()).unwrap())
            .fold(SeriesMatrix::identity(2, 3), |acc, m| acc.mul(&m));
        assert_eq!(evaluate_in_rep(&w).unwrap(), prod);
    }

    #[test]
    fn q_expands_as_exponential() {
        let q = &RatFun::p() * &RatFun::p();
        let s = ratfun_to_series(&q, 3).unwrap();
        assert_eq!(s, TruncSeries::h(3).scale(&rat(1, 2)).exp().unwrap());
        assert!(ratfun_to_series(&RatFun::z(), 3).is_err());
    }
}
