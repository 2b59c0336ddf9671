use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::coeff::{binomial, factorial, int, Deg, TruncSeries, Q};

/// Algebra presentation of the symbolic tier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Presentation {
    /// `[H, E] = E`.
    Borel,
    /// `[H, E+-] = +-E+-`, `[E+, E-] = (e^{hH} - e^{-hH}) / (1 - e^{-h})`.
    Sl2,
}

impl Presentation {
    pub fn name(self) -> &'static str {
        match self {
            Presentation::Borel => "borel",
            Presentation::Sl2 => "sl2",
        }
    }

    /// Word of the Borel generator `E` (which is `E+` inside sl2).
    pub fn carrier_e(self) -> Word {
        match self {
            Presentation::Borel => Word::new(1, 0, 0),
            Presentation::Sl2 => Word::new(0, 0, 1),
        }
    }

    pub fn generators(self) -> &'static [Generator] {
        match self {
            Presentation::Borel => &[Generator::E, Generator::H],
            Presentation::Sl2 => &[Generator::EMinus, Generator::H, Generator::EPlus],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Borel raising generator.
    E,
    H,
    EPlus,
    EMinus,
}

impl Generator {
    pub fn symbol(self) -> &'static str {
        match self {
            Generator::E => "E",
            Generator::H => "H",
            Generator::EPlus => "Ep",
            Generator::EMinus => "Em",
        }
    }

    pub fn parse(s: &str) -> Option<Generator> {
        match s {
            "E" => Some(Generator::E),
            "H" => Some(Generator::H),
            "Ep" | "E+" => Some(Generator::EPlus),
            "Em" | "E-" => Some(Generator::EMinus),
            _ => None,
        }
    }

    /// Normal-ordered word of the generator, if it belongs to `p`.
    pub fn word(self, p: Presentation) -> Option<Word> {
        match (p, self) {
            (Presentation::Borel, Generator::E) => Some(Word::new(1, 0, 0)),
            (_, Generator::H) => Some(Word::new(0, 1, 0)),
            (Presentation::Sl2, Generator::EPlus) => Some(Word::new(0, 0, 1)),
            (Presentation::Sl2, Generator::EMinus) => Some(Word::new(1, 0, 0)),
            _ => None,
        }
    }
}

/// PBW monomial. For sl2 it is `E-^a H^b E+^c`; for Borel `E^a H^b` with
/// `c = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

impl Word {
    pub const ONE: Word = Word { a: 0, b: 0, c: 0 };

    pub const fn new(a: u8, b: u8, c: u8) -> Word {
        Word { a, b, c }
    }

    pub fn is_one(&self) -> bool {
        *self == Word::ONE
    }

    pub fn len(&self) -> u32 {
        self.a as u32 + self.b as u32 + self.c as u32
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn render(&self, p: Presentation) -> String {
        let parts: [(&str, u8); 3] = match p {
            Presentation::Borel => [("E", self.a), ("H", self.b), ("", 0)],
            Presentation::Sl2 => [("Em", self.a), ("H", self.b), ("Ep", self.c)],
        };
        let mut out: Vec<String> = Vec::new();
        for (s, e) in parts {
            match e {
                0 => {}
                1 => out.push(String::from(s)),
                e => out.push(alloc::format!("{}^{}", s, e)),
            }
        }
        if out.is_empty() {
            String::from("1")
        } else {
            out.join("*")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Polynomial in `H` with series coefficients; entry `k` multiplies `H^k`.
pub(crate) type HPoly = Vec<TruncSeries>;

fn hpoly_monomial(k: usize, order: u32) -> HPoly {
    let mut v = vec![TruncSeries::zero(order); k + 1];
    v[k] = TruncSeries::one(order);
    v
}

fn hpoly_add(a: &mut HPoly, b: &HPoly) {
    if a.len() < b.len() {
        let order = b[0].order();
        a.resize(b.len(), TruncSeries::zero(order));
    }
    for (x, y) in a.iter_mut().zip(b) {
        x.add_assign_ref(y);
    }
}

fn hpoly_mul(a: &HPoly, b: &HPoly) -> HPoly {
    let order = a[0].order();
    let mut out = vec![TruncSeries::zero(order); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j].add_product(x, y);
            }
        }
    }
    trim(out)
}

fn trim(mut v: HPoly) -> HPoly {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// `P(H + s)`.
fn hpoly_shift(a: &HPoly, s: i64) -> HPoly {
    if s == 0 {
        return a.clone();
    }
    let order = a[0].order();
    let sq = int(s);
    let mut out = vec![TruncSeries::zero(order); a.len()];
    for (k, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut spow = Q::one();
        for i in (0..=k).rev() {
            // coefficient of H^i in (H + s)^k is C(k, i) s^(k - i)
            let f = binomial(k as u32, i as u32) * &spow;
            out[i].add_assign_ref(&c.scale(&f));
            spow *= &sq;
        }
    }
    out
}

/// `C(H) = (e^{hH} - e^{-hH}) / (1 - e^{-h})` expanded in powers of `H`.
pub(crate) fn central_function(order: u32) -> HPoly {
    // (1 - e^{-h}) / h = sum_n (-1)^n h^n / (n+1)!
    let denom = TruncSeries::from_terms(
        order,
        (0..=order).map(|n| {
            let s = if n % 2 == 0 { Q::one() } else { -Q::one() };
            (Deg::new(n, 0), s / factorial(n + 1))
        }),
    );
    let u = denom.inverse().expect("unit series");
    let mut out = vec![TruncSeries::zero(order); order as usize + 2];
    // numerator / h = 2 sum_{k odd} h^{k-1} H^k / k!
    for k in (1..=order + 1).step_by(2) {
        let c = TruncSeries::monomial(int(2) / factorial(k), k - 1, 0, order);
        out[k as usize] = &c * &u;
    }
    trim(out)
}

/// Caches for multiplying PBW words within one product computation.
pub(crate) struct SlotAlgebra {
    pres: Presentation,
    order: u32,
    central: HPoly,
    /// `G_k(H) = sum_{i<k} C(H - i)`, indexed by `k`.
    g: Vec<HPoly>,
    /// `E+^c E-^d = sum_j E-^{d-j} P_{c,d,j}(H) E+^{c-j}`.
    exchange: BTreeMap<(u8, u8), Vec<HPoly>>,
    products: BTreeMap<(Word, Word), Vec<(Word, TruncSeries)>>,
}

impl SlotAlgebra {
    pub(crate) fn new(pres: Presentation, order: u32) -> Self {
        let central = match pres {
            Presentation::Sl2 => central_function(order),
            Presentation::Borel => Vec::new(),
        };
        SlotAlgebra {
            pres,
            order,
            central,
            g: Vec::new(),
            exchange: BTreeMap::new(),
            products: BTreeMap::new(),
        }
    }

    fn g_poly(&mut self, k: usize) -> HPoly {
        if self.g.is_empty() {
            self.g.push(vec![TruncSeries::zero(self.order)]);
        }
        while self.g.len() <= k {
            let i = self.g.len() - 1;
            let mut next = self.g[i].clone();
            hpoly_add(&mut next, &hpoly_shift(&self.central, -(i as i64)));
            self.g.push(trim(next));
        }
        self.g[k].clone()
    }

    fn exchange_table(&mut self, c: u8, d: u8) -> Vec<HPoly> {
        if let Some(t) = self.exchange.get(&(c, d)) {
            return t.clone();
        }
        let jmax = c.min(d) as usize;
        let table = if c == 0 {
            vec![hpoly_monomial(0, self.order)]
        } else {
            let prev = self.exchange_table(c - 1, d);
            let mut cur = vec![vec![TruncSeries::zero(self.order)]; jmax + 1];
            for (j, pj) in prev.iter().enumerate() {
                hpoly_add(&mut cur[j], &hpoly_shift(pj, -1));
                let k = d as usize - j;
                if k > 0 && j < jmax {
                    let gk = self.g_poly(k);
                    hpoly_add(&mut cur[j + 1], &hpoly_mul(&gk, pj));
                }
            }
            cur.into_iter().map(trim).collect()
        };
        self.exchange.insert((c, d), table.clone());
        table
    }

    /// Normal-ordered product of two words.
    pub(crate) fn mul_words(&mut self, x: Word, y: Word) -> Vec<(Word, TruncSeries)> {
        if x.is_one() {
            return vec![(y, TruncSeries::one(self.order))];
        }
        if y.is_one() {
            return vec![(x, TruncSeries::one(self.order))];
        }
        if let Some(r) = self.products.get(&(x, y)) {
            return r.clone();
        }
        let r = match self.pres {
            Presentation::Borel => self.mul_borel(x, y),
            Presentation::Sl2 => self.mul_sl2(x, y),
        };
        self.products.insert((x, y), r.clone());
        r
    }

    fn mul_borel(&self, x: Word, y: Word) -> Vec<(Word, TruncSeries)> {
        // E^a H^b E^c H^d = E^{a+c} (H + c)^b H^d
        let mut out = Vec::new();
        let b = x.b as u32;
        let c = int(y.a as i64);
        for k in 0..=b {
            let coeff = binomial(b, k) * crate::coeff::qpow(&c, (b - k) as i64);
            if coeff.is_zero() {
                continue;
            }
            let w = Word::new(x.a + y.a, (k + y.b as u32) as u8, 0);
            out.push((w, TruncSeries::constant(coeff, self.order)));
        }
        out
    }

    fn mul_sl2(&mut self, x: Word, y: Word) -> Vec<(Word, TruncSeries)> {
        let table = self.exchange_table(x.c, y.a);
        let mut acc: BTreeMap<Word, TruncSeries> = BTreeMap::new();
        for (j, pj) in table.iter().enumerate() {
            if pj.iter().all(|c| c.is_zero()) {
                continue;
            }
            let j8 = j as u8;
            let left = hpoly_shift(
                &hpoly_monomial(x.b as usize, self.order),
                -((y.a - j8) as i64),
            );
            let right = hpoly_shift(
                &hpoly_monomial(y.b as usize, self.order),
                -((x.c - j8) as i64),
            );
            let poly = hpoly_mul(&hpoly_mul(&left, pj), &right);
            for (k, c) in poly.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let w = Word::new(x.a + y.a - j8, k as u8, x.c - j8 + y.c);
                acc.entry(w)
                    .or_insert_with(|| TruncSeries::zero(self.order))
                    .add_assign_ref(&c);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn central_function_low_orders() {
        // Oracle: multiply back by (1 - e^{-h}) and compare to 2 sinh(hH).
        let n = 3;
        let c = central_function(n);
        let one_minus = &TruncSeries::one(n + 1) - &(-&TruncSeries::h(n + 1)).exp().unwrap();
        for (k, ck) in c.iter().enumerate() {
            let lifted = TruncSeries::from_terms(n + 1, ck.terms().map(|(d, v)| (*d, v.clone())));
            let prod = (&lifted * &one_minus).truncate(n);
            let expect = if k % 2 == 1 {
                TruncSeries::monomial(int(2) / factorial(k as u32), k as u32, 0, n)
            } else {
                TruncSeries::zero(n)
            };
            assert_eq!(prod, expect, "H^{k}");
        }
        assert_eq!(c[1].coeff(0, 0), int(2));
        assert_eq!(c[1].coeff(1, 0), int(1));
        assert_eq!(c[1].coeff(2, 0), rat(1, 6));
    }

    #[test]
    fn borel_exchange() {
        let mut s = SlotAlgebra::new(Presentation::Borel, 2);
        let r = s.mul_words(Word::new(0, 1, 0), Word::new(1, 0, 0));
        assert_eq!(
            r,
            vec![
                (Word::new(1, 0, 0), TruncSeries::one(2)),
                (Word::new(1, 1, 0), TruncSeries::one(2))
            ]
        );
    }

    #[test]
    fn sl2_exchange_at_order_one() {
        let mut s = SlotAlgebra::new(Presentation::Sl2, 1);
        let r = s.mul_words(Word::new(0, 0, 1), Word::new(1, 0, 0));
        let h1 = &TruncSeries::constant(int(2), 1) + &TruncSeries::h(1);
        assert_eq!(
            r,
            vec![
                (Word::new(0, 1, 0), h1),
                (Word::new(1, 0, 1), TruncSeries::one(1))
            ]
        );
    }
}
