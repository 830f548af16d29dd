//! Dense linear algebra over a prime field GF(p).
//!
//! Matrices are stored row-major with entries reduced into `[0, p)`. Every
//! subspace in this crate is represented by a matrix whose columns form a
//! basis. Elimination always pivots on the first nonzero entry so that bases
//! are reproducible from run to run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus used by the CLI and the fixture suites.
pub const DEFAULT_PRIME: u32 = 101;

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("modulus {p} is not prime")));
        }
        if p > 46_337 {
            // products of two residues must fit comfortably in u64 sums
            return Err(Error::Input(format!("modulus {p} is too large (max 46337)")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn from_i128(self, v: i128) -> u32 {
        v.rem_euclid(self.p as i128) as u32
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.from_i64(v)))
            .collect();
        Ok(Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
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
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.field.p as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                // keep accumulators bounded
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|s| *s %= p);
                }
            }
            for (c, s) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (s % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| (a as u64 * b as u64) % p)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = f.add(*a, f.mul(b, s));
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diagonal(field: PrimeField, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.data[(r0 + r) * cols + c0 + c] = b.get(r, c);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row-echelon form together with the strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if pr != lead {
                for k in c..cols {
                    self.data.swap(pr * cols + k, lead * cols + k);
                }
            }
            let inv = f.inv(self.data[lead * cols + c]) as u64;
            for k in c..cols {
                let v = &mut self.data[lead * cols + k];
                *v = ((*v as u64 * inv) % p) as u32;
            }
            let (before, rest) = self.data.split_at_mut(lead * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let pivot_row: &[u32] = pivot_row;
            let nz: Vec<usize> = (c..cols).filter(|&k| pivot_row[k] != 0).collect();
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for &k in &nz {
                    let v = &mut row[k];
                    *v = ((*v as u64 + neg * pivot_row[k] as u64) % p) as u32;
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows > self.cols * 2 {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Columns form a basis of `{v : A v = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let f = self.field;
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + j] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                k.data[pc * free.len() + j] = f.neg(r.get(i, fc));
            }
        }
        k
    }

    /// Some `x` with `A x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::Input(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let (r, pivots) = self.hstack(&rhs).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Indices of a maximal independent set of columns, chosen greedily left to right.
    pub fn pivot_columns(&self) -> Vec<usize> {
        if self.cols == 0 || self.rows == 0 {
            return Vec::new();
        }
        self.rref().1
    }

    /// A basis (as columns) of the column space, taken from the original columns.
    pub fn column_basis(&self) -> Matrix {
        self.select_columns(&self.pivot_columns())
    }
}

/// Basis of the intersection of two column spaces in the same ambient space.
pub fn subspace_intersection(u: &Matrix, v: &Matrix) -> Matrix {
    assert_eq!(u.rows(), v.rows(), "subspaces live in different ambient spaces");
    let f = u.field();
    if u.cols() == 0 || v.cols() == 0 {
        return Matrix::zeros(f, u.rows(), 0);
    }
    let ub = u.column_basis();
    let vb = v.column_basis();
    let stacked = ub.hstack(&vb.scale(f.neg(1)));
    let ker = stacked.kernel_basis();
    let top: Vec<usize> = (0..ub.cols()).collect();
    let coeffs = Matrix::from_columns(
        f,
        ub.cols(),
        &ker.columns()
            .into_iter()
            .map(|c| top.iter().map(|&i| c[i]).collect())
            .collect::<Vec<_>>(),
    );
    ub.mul(&coeffs).column_basis()
}

/// Incrementally maintained, fully reduced echelon basis of a subspace of `F^dim`.
///
/// Pivots sit on the first nonzero coordinate, so the coordinate order decides
/// which coordinates become pivots; the remaining coordinates index the
/// quotient space.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_pivot(&self, coord: usize) -> bool {
        self.pivot_row[coord].is_some()
    }

    /// Reduces `v` against the basis; the result is zero on every pivot coordinate.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        let p = f.p as u64;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c as u64;
            for (slot, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *slot = ((*slot as u64 + neg * r as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(w[pc]);
        w.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for row in &mut self.rows {
            let c = row[pc];
            if c != 0 {
                let neg = f.neg(c);
                for (slot, &x) in row.iter_mut().zip(&w) {
                    if x != 0 {
                        *slot = f.add(*slot, f.mul(neg, x));
                    }
                }
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    /// The basis vectors as matrix columns.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.dim, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = gf(101);
        let id = Matrix::identity(f, 3);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
        let z = Matrix::zeros(f, 2, 3);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_hand_example_gf5() {
        let f = gf(5);
        let a = Matrix::from_rows(f, &[vec![2, 4], vec![1, 2]]).unwrap();
        let (r, piv) = a.rref();
        assert_eq!(r, Matrix::from_rows(f, &[vec![1, 2], vec![0, 0]]).unwrap());
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rank_examples() {
        let f = gf(7);
        assert_eq!(Matrix::identity(f, 4).rank(), 4);
        assert_eq!(Matrix::zeros(f, 3, 5).rank(), 0);
        let a = Matrix::from_rows(f, &[vec![1, 1], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(3);
        assert_eq!(Matrix::identity(f, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(f, 2, 4).kernel_basis().cols(), 4);
        let a = Matrix::from_rows(f, &[vec![1, 1, 0]]).unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        let mut span = EchelonBasis::new(f, 3);
        for c in k.columns() {
            span.insert(&c);
        }
        assert!(span.contains(&[1, 2, 0]));
        assert!(span.contains(&[0, 0, 1]));
    }

    #[test]
    fn solve_examples() {
        let f = gf(5);
        let id = Matrix::identity(f, 3);
        assert_eq!(id.solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let a = Matrix::from_rows(f, &[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(a.solve(&[0, 1]).unwrap(), Some(vec![3, 1]));
        assert!(a.solve(&[1]).is_err());
    }

    #[test]
    fn intersection_examples() {
        let f = gf(5);
        let u = Matrix::from_rows(f, &[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(subspace_intersection(&u, &u).cols(), 2);
        let e1 = Matrix::from_rows(f, &[vec![1], vec![0]]).unwrap();
        let e2 = Matrix::from_rows(f, &[vec![0], vec![1]]).unwrap();
        assert_eq!(subspace_intersection(&e1, &e2).cols(), 0);
        // planes z = 0 and x = y meet in the line spanned by (1,1,0)
        let v = Matrix::from_rows(f, &[vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let w = subspace_intersection(&u, &v);
        assert_eq!(w.cols(), 1);
        let c = w.column(0);
        assert_eq!(c[0], c[1]);
        assert_eq!(c[2], 0);
        assert_ne!(c[0], 0);
    }

    #[test]
    fn echelon_basis_reduces_to_non_pivots() {
        let f = gf(101);
        let mut b = EchelonBasis::new(f, 3);
        assert!(b.insert(&[0, 1, 1]));
        assert!(!b.insert(&[0, 2, 2]));
        assert!(b.insert(&[1, 1, 0]));
        let mut v = vec![3, 4, 5];
        b.reduce(&mut v);
        assert_eq!(v[0], 0);
        assert_eq!(v[1], 0);
        assert_eq!(b.dim(), 2);
    }
}
