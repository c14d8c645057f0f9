//! Exact dense linear algebra over a prime field GF(p).
//!
//! Matrices are row-major with entries in `[0, p)`. Subspaces are carried as
//! row bases; [`Echelon`] keeps one in reduced row echelon form so that
//! membership tests and coordinates are cheap.

mod echelon;
pub mod poly;

pub use echelon::{Echelon, Reduction, SpanTracker};
pub use poly::{minimal_polynomial, Poly};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero");
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

/// `dst += c * src` entrywise.
#[inline]
pub(crate) fn axpy(dst: &mut [u32], c: u32, src: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    if p == 2 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= *s;
        }
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d = (*d + c * *s) % p;
    }
}

#[inline]
pub(crate) fn scale_in_place(v: &mut [u32], c: u32, p: u32) {
    if c == 1 {
        return;
    }
    for x in v.iter_mut() {
        *x = (*x * c) % p;
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes above this bound would overflow the `u32` accumulation in [`axpy`].
pub const MAX_PRIME: u32 = 65_521;

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::Input(format!("{p} is not a supported prime")));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(p, n, n);
        let c = c % p;
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod `p`.
    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Input(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(Self {
            p,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|x| x % p));
        }
        Self {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Signed integer entries, reduced into `[0, p)`.
    pub fn from_i64(p: u32, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let data = entries
            .iter()
            .map(|x| x.rem_euclid(p as i64) as u32)
            .collect();
        Self {
            p,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn into_data(self) -> Vec<u32> {
        self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = self.p;
        let n = other.cols;
        let mut out = Self::zeros(p, self.rows, n);
        let mut acc = vec![0u64; n];
        // Entries are < 2^16, so products are < 2^32 and a u64 accumulator
        // absorbs 2^32 of them before reduction.
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let lhs = self.row(r);
            for (k, &a) in lhs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (acc_j, &b) in acc.iter_mut().zip(other.row(k)) {
                    *acc_j += a * b as u64;
                }
            }
            for (o, a) in out.row_mut(r).iter_mut().zip(&acc) {
                *o = (a % p as u64) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add_mod(a, b, p))
            .collect();
        Self {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub_mod(a, b, p))
            .collect();
        Self {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        let c = c % p;
        Self {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| mul_mod(a, c, p)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&mut self.data, c % self.p, &other.data, self.p);
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.row_mut(r).copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        assert!(!parts.is_empty());
        let p = parts[0].p;
        let rows = parts[0].rows;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(p, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Self]) -> Self {
        assert!(!parts.is_empty());
        let p = parts[0].p;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Self {
            p,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, &x) in v.iter().enumerate() {
                m.data[r * columns.len() + c] = x % p;
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let ech = Echelon::from_rows(self.p, self.cols, self.row_vectors());
        let pivots = ech.sorted_pivots();
        (ech.to_matrix(), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.p, self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.rank()
    }

    /// Basis (as rows, reduced echelon) of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots)
    }

    /// Basis (as rows) of `{y : y * self = 0}`.
    pub fn left_nullspace(&self) -> Self {
        self.transpose().nullspace()
    }

    /// Row space basis in reduced echelon form.
    pub fn row_space(&self) -> Self {
        self.rref().0
    }

    /// Column space basis, returned as the columns of a matrix.
    pub fn column_space(&self) -> Self {
        let basis = self.transpose().row_space();
        basis.transpose()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let p = self.p;
        let mut a = Self::hstack(&[self, &Self::identity(p, n)]);
        let w = 2 * n;
        for col in 0..n {
            let piv = (col..n).find(|&r| a.data[r * w + col] != 0)?;
            if piv != col {
                for k in 0..w {
                    a.data.swap(piv * w + k, col * w + k);
                }
            }
            let inv = inv_mod(a.data[col * w + col], p);
            scale_in_place(&mut a.data[col * w..(col + 1) * w], inv, p);
            let pivot_row: Vec<u32> = a.data[col * w..(col + 1) * w].to_vec();
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.data[r * w + col];
                if f != 0 {
                    axpy(&mut a.data[r * w..(r + 1) * w], p - f, &pivot_row, p);
                }
            }
        }
        Some(a.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// True iff some power of the matrix vanishes.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        if self.rows == 0 {
            return true;
        }
        self.pow(self.rows as u64).is_zero()
    }

    /// Solves `self * x = b` for one particular `x`, if any.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::hstack(&[self, &Self::from_columns(self.p, self.rows, &[b.to_vec()])]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Some(x)
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        let mut t = 0;
        for i in 0..self.rows {
            t = add_mod(t, self.get(i, i), self.p);
        }
        t
    }
}

pub(crate) fn nullspace_from_rref(r: &FpMatrix, pivots: &[usize]) -> FpMatrix {
    let p = r.prime();
    let n = r.cols();
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut basis = FpMatrix::zeros(p, free.len(), n);
    for (k, &f) in free.iter().enumerate() {
        basis.set(k, f, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            let v = r.get(i, f);
            if v != 0 {
                basis.set(k, pc, p - v);
            }
        }
    }
    // Rows already come out with distinct leading free columns; re-reduce
    // so callers always see reduced echelon form.
    basis.row_space()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip_mod_5() {
        // det = 26 = 1 mod 5
        let a = FpMatrix::from_rows(5, 3, &[vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 2]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = FpMatrix::from_rows(3, 2, &[vec![1, 2], vec![2, 1]]);
        // det = 1 - 4 = -3 = 0 mod 3
        assert!(a.inverse().is_none());
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn nullspace_annihilates() {
        let a = FpMatrix::from_rows(
            7,
            4,
            &[vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![3, 6, 2, 5]],
        );
        let ns = a.nullspace();
        assert_eq!(ns.rows() + a.rank(), 4);
        for r in 0..ns.rows() {
            assert!(a.mul_vec(ns.row(r)).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = FpMatrix::from_rows(2, 2, &[vec![1, 1], vec![0, 0]]);
        assert_eq!(a.solve(&[1, 0]).map(|x| a.mul_vec(&x)), Some(vec![1, 0]));
        assert!(a.solve(&[0, 1]).is_none());
    }

    #[test]
    fn inv_mod_small_primes() {
        for p in [2u32, 3, 5, 7, 11, 13, 65521] {
            for a in 1..p.min(200) {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn nilpotent_detection() {
        let n = FpMatrix::from_rows(3, 3, &[vec![0, 1, 2], vec![0, 0, 1], vec![0, 0, 0]]);
        assert!(n.is_nilpotent());
        assert!(!FpMatrix::identity(3, 3).is_nilpotent());
    }
}
