//! Dense matrices over Q(ζ_ℓ) and exact Gaussian elimination.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicScalar;
use crate::error::{Error, Result};

type S = CyclotomicScalar;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactMatrix {
    ell: u32,
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Result of a reduced row echelon computation.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(ell: u32, rows: usize, cols: usize) -> Self {
        ExactMatrix { ell, rows, cols, data: vec![S::zero(ell); rows * cols] }
    }

    pub fn identity(ell: u32, n: usize) -> Self {
        let mut m = Self::zeros(ell, n, n);
        for i in 0..n {
            m.set(i, i, S::one(ell));
        }
        m
    }

    pub fn from_fn(ell: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert_eq!(v.ell(), ell);
                data.push(v);
            }
        }
        ExactMatrix { ell, rows, cols, data }
    }

    pub fn from_rows(ell: u32, rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for v in row {
                if v.ell() != ell {
                    return Err(Error::EllMismatch(ell, v.ell()));
                }
                data.push(v);
            }
        }
        Ok(ExactMatrix { ell, rows: r, cols: c, data })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(ell: u32, diag: Vec<S>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ell, n, n);
        for (i, v) in diag.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.ell != other.ell {
            return Err(Error::EllMismatch(self.ell, other.ell));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell {
            return Err(Error::EllMismatch(self.ell, other.ell));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.ell, other.ell);
        let mut out = Self::zeros(self.ell, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero(self.ell);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ExactMatrix { ell: self.ell, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ExactMatrix { ell: self.ell, rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert!(self.rows == other.rows && self.cols == other.cols);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        assert!(self.rows == other.rows && self.cols == other.cols);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let data = self.data.iter().map(|a| if a.is_zero() { a.clone() } else { a * s }).collect();
        ExactMatrix { ell: self.ell, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| -a).collect();
        ExactMatrix { ell: self.ell, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ell, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, with `(i1, i2)` mapped to row `i1 * other.rows + i2`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(self.ell, r, c);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * other.rows + i2, j1 * other.cols + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let c0 = cols.start;
        let r0 = rows.start;
        Self::from_fn(self.ell, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ell, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ell, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(ell: u32, parts: &[&Self], rows: usize) -> Self {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(ell, rows, cols);
        let mut c = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.set_block(0, c, p);
            c += p.cols;
        }
        out
    }

    pub fn vstack(ell: u32, parts: &[&Self], cols: usize) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(ell, rows, cols);
        let mut r = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            out.set_block(r, 0, p);
            r += p.rows;
        }
        out
    }

    pub fn block_diag(ell: u32, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(ell, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form by pivoted Gaussian elimination.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j);
                if !v.is_zero() {
                    let nv = v * &inv;
                    m.set(r, j, nv);
                }
            }
            let pivot_row: Vec<S> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let d = &f * pv;
                        *m.get_mut(i, c + k) -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space as the columns of a `cols x k` matrix.
    pub fn kernel(&self) -> Self {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.ell, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, S::one(self.ell));
            for (r, &p) in pivots.iter().enumerate() {
                let v = reduced.get(r, f);
                if !v.is_zero() {
                    k.set(p, t, -v);
                }
            }
        }
        k
    }

    /// Basis of the column space, in reduced column echelon form.
    pub fn image(&self) -> Self {
        let Echelon { reduced, pivots } = self.transpose().rref();
        reduced.submatrix(0..pivots.len(), 0..self.rows).transpose()
    }

    /// Column echelon basis together with its pivot rows: every basis column has a 1 at its
    /// pivot row and every other basis column a 0 there.
    pub fn column_echelon(&self) -> (Self, Vec<usize>) {
        let Echelon { reduced, pivots } = self.transpose().rref();
        (reduced.submatrix(0..pivots.len(), 0..self.rows).transpose(), pivots)
    }

    /// Solves `self · X = b`; `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows);
        let aug = Self::hstack(self.ell, &[self, b], self.rows);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.ell, self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, reduced.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let id = Self::identity(self.ell, self.rows);
        match self.solve(&id) {
            Some(x) if self.rank() == self.rows => Ok(x),
            _ => Err(Error::DivisionByZero),
        }
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero(self.ell);
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} (ℓ={})", self.rows, self.cols, self.ell)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ell: u32, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(ell, rows.iter().map(|r| r.iter().map(|&v| S::from_int(ell, v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn kernels_of_trivial_matrices() {
        assert_eq!(ExactMatrix::identity(3, 3).kernel().cols(), 0);
        assert_eq!(ExactMatrix::zeros(3, 2, 3).kernel().cols(), 3);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = m(5, &[&[1, 1], &[2, 2]]);
        assert!(a.solve(&m(5, &[&[1], &[3]])).is_none());
        let x = a.solve(&m(5, &[&[1], &[2]])).unwrap();
        assert_eq!(a.mul(&x), m(5, &[&[1], &[2]]));
    }

    #[test]
    fn image_and_echelon() {
        let a = m(3, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let (basis, piv) = a.column_echelon();
        assert_eq!(basis.cols(), 2);
        for (j, &p) in piv.iter().enumerate() {
            for jj in 0..basis.cols() {
                assert_eq!(basis.get(p, jj).is_one(), j == jj);
            }
        }
        assert_eq!(a.kernel().cols(), 1);
        assert!(a.mul(&a.kernel()).is_zero());
    }

    #[test]
    fn inverse_over_cyclotomic_field() {
        let z = S::zeta_pow(5, 1);
        let mut a = ExactMatrix::identity(5, 2);
        a.set(0, 1, z.clone());
        a.set(1, 0, &z + &S::one(5));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
    }
}
