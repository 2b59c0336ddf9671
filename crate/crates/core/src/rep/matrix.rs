use alloc::string::String;
use alloc::vec::Vec;

use super::RepError;
use crate::coeff::{RatFun, Scalar, Q};

/// Dense square matrix over a [`Scalar`].
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix<F = RatFun> {
    dim: usize,
    entries: Vec<F>,
}

impl<F: Scalar> RepMatrix<F> {
    pub fn zero(dim: usize) -> Self {
        RepMatrix {
            dim,
            entries: alloc::vec![F::zero_s(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag((0..dim).map(|_| F::one_s()).collect())
    }

    pub fn diag(d: Vec<F>) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        RepMatrix { dim, entries }
    }

    /// Row-major entries.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        RepMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// `c` at `(i, j)`, zero elsewhere.
    pub fn unit(dim: usize, i: usize, j: usize, c: F) -> Self {
        let mut m = Self::zero(dim);
        m.set(i, j, c);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> RepMatrix<G> {
        RepMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Scalar, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<RepMatrix<G>, E> {
        Ok(RepMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero_s)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        RepMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        RepMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.negate())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero_s() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero_s() {
                        let cur = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `ab - ba`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Kronecker product, `self` carrying the slow index.
    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.dim, o.dim);
        Self::from_fn(n * m, |i, j| {
            self.get(i / m, j / m).times(o.get(i % m, j % m))
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    /// `P M P^{-1}` for the basis permutation `e_i -> e_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    /// Exchange of the two factors of a `2 (x) 2` matrix.
    pub fn flip(&self) -> Self {
        assert_eq!(self.dim, 4);
        self.permute(&[0, 2, 1, 3])
    }

    /// Reverses the basis order.
    pub fn reverse(&self) -> Self {
        let n = self.dim;
        let perm: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        self.permute(&perm)
    }

    /// Places a `2 (x) 2` matrix on the factors `legs` of the triple
    /// tensor cube.
    pub fn embed3(&self, legs: (usize, usize)) -> Self {
        assert_eq!(self.dim, 4);
        let bit = |x: usize, k: usize| (x >> (2 - k)) & 1;
        let other = 3 - legs.0 - legs.1;
        Self::from_fn(8, |i, j| {
            if bit(i, other) != bit(j, other) {
                return F::zero_s();
            }
            let a = 2 * bit(i, legs.0) + bit(i, legs.1);
            let b = 2 * bit(j, legs.0) + bit(j, legs.1);
            self.get(a, b).clone()
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).is_zero_s()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.transpose().is_upper_triangular()
    }

    /// Gauss-Jordan inverse; pivots are the first invertible entries.
    pub fn inverse(&self) -> Result<Self, RepError> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (row, pivot_inv) = (col..n)
                .find_map(|r| a.get(r, col).inverse().ok().map(|x| (r, x)))
                .ok_or(RepError::Singular)?;
            a.swap_rows(row, col);
            inv.swap_rows(row, col);
            a.scale_row(col, &pivot_inv);
            inv.scale_row(col, &pivot_inv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero_s() {
                    continue;
                }
                for c in 0..n {
                    let x = a.get(r, c).minus(&f.times(a.get(col, c)));
                    a.set(r, c, x);
                    let y = inv.get(r, c).minus(&f.times(inv.get(col, c)));
                    inv.set(r, c, y);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.dim {
            self.entries.swap(a * self.dim + c, b * self.dim + c);
        }
    }

    fn scale_row(&mut self, r: usize, x: &F) {
        for c in 0..self.dim {
            let v = self.get(r, c).times(x);
            self.set(r, c, v);
        }
    }

    /// Entries as row-major strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).text()).collect())
            .collect()
    }

    /// Aligned plain-text grid.
    pub fn to_grid(&self) -> String {
        let rows = self.to_strings();
        let w = rows
            .iter()
            .flatten()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in rows {
            let cells: Vec<String> = row
                .iter()
                .map(|s| alloc::format!("{:>w$}", s, w = w))
                .collect();
            out.push_str(&cells.join("  "));
            out.push('\n');
        }
        out
    }
}

impl RepMatrix<RatFun> {
    /// Substitutes rational values for every variable.
    pub fn eval(&self, point: &[Q; 3]) -> Result<RepMatrix<Q>, RepError> {
        Ok(self.try_map(|x| x.eval(point))?)
    }
}

/// Outcome of comparing two matrices up to a scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Projective<F> {
    /// `A = c B`.
    Scalar(F),
    /// First entry where `A - c B` is nonzero, `c` being fixed by the pivot.
    Mismatch { row: usize, col: usize, scalar: F },
    /// `B` has no invertible entry to fix the scalar.
    Degenerate,
}

/// Finds `c` with `A = c B`, pivoting on the first invertible entry of `B`.
pub fn projective_compare<F: Scalar>(a: &RepMatrix<F>, b: &RepMatrix<F>) -> Projective<F> {
    assert_eq!(a.dim, b.dim);
    let Some((k, inv)) = b
        .entries
        .iter()
        .enumerate()
        .find_map(|(k, x)| x.inverse().ok().map(|i| (k, i)))
    else {
        return Projective::Degenerate;
    };
    let c = a.entries[k].times(&inv);
    for (idx, (x, y)) in a.entries.iter().zip(&b.entries).enumerate() {
        if !x.minus(&y.times(&c)).is_zero_s() {
            return Projective::Mismatch {
                row: idx / a.dim,
                col: idx % a.dim,
                scalar: c,
            };
        }
    }
    Projective::Scalar(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    fn m2(a: i64, b: i64, c: i64, d: i64) -> RepMatrix<Q> {
        RepMatrix::from_rows(alloc::vec![
            alloc::vec![int(a), int(b)],
            alloc::vec![int(c), int(d)]
        ])
    }

    #[test]
    fn inverse_round_trip() {
        let m = m2(0, 1, 2, 3);
        let i = m.inverse().unwrap();
        assert_eq!(m.mul(&i), RepMatrix::identity(2));
        assert_eq!(m2(1, 2, 2, 4).inverse(), Err(RepError::Singular));
    }

    #[test]
    fn flip_of_kron() {
        let a = m2(1, 2, 3, 4);
        let b = m2(0, 1, 5, 0);
        assert_eq!(a.kron(&b).flip(), b.kron(&a));
    }

    #[test]
    fn embedding_matches_kron() {
        let a = m2(1, 2, 3, 4);
        let b = m2(0, 1, 5, 0);
        let i = RepMatrix::identity(2);
        let ab = a.kron(&b);
        assert_eq!(ab.embed3((0, 1)), ab.kron(&i));
        assert_eq!(ab.embed3((1, 2)), i.kron(&ab));
        assert_eq!(ab.embed3((0, 2)), a.kron(&i).kron(&b));
    }

    #[test]
    fn projective_examples() {
        let m = m2(1, 2, 3, 4);
        assert_eq!(projective_compare(&m, &m), Projective::Scalar(int(1)));
        assert_eq!(
            projective_compare(&m.scale(&int(2)), &m),
            Projective::Scalar(int(2))
        );
        let mut p = m.clone();
        p.set(1, 1, rat(9, 2));
        assert!(matches!(
            projective_compare(&p, &m),
            Projective::Mismatch { row: 1, col: 1, .. }
        ));
    }
}
