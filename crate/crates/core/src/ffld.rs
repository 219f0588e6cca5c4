//! Dense linear algebra over a prime field `F_p`.
//!
//! Everything downstream (Hom spaces, kernels, resolutions) reduces to the
//! routines here, so elimination is deterministic: the same input always
//! produces the same echelon form and the same kernel basis.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field `F_p` with `2 <= p <= 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: 2 }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p > (1u64 << 31) {
            return Err(Error::input(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::input(format!("modulus {p} is not prime")));
        }
        Ok(Field { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.reduce(t0)
    }

    /// `p^e`, saturating at `u64::MAX`.
    pub fn pow_count(self, e: usize) -> u64 {
        let mut acc = 1u64;
        for _ in 0..e {
            acc = acc.saturating_mul(self.p as u64);
        }
        acc
    }
}

/// Dense row-major matrix with entries reduced into `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    /// `cols` is needed so that `rows x 0` and `0 x cols` shapes round-trip.
    pub fn from_rows(field: Field, rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut m = Mat::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::input(format!(
                    "matrix row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(x);
            }
        }
        Ok(m)
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    /// Column vector from entries.
    pub fn column_vector(field: Field, entries: &[u32]) -> Self {
        Mat::from_fn(field, entries.len(), 1, |i, _| entries[i])
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
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
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn same_shape(&self, other: &Mat) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = ((*d as u64 + a * b as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert!(self.same_shape(other), "shape mismatch in sum");
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert!(self.same_shape(other), "shape mismatch in difference");
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn pow(&self, e: usize) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horizontal concatenation; all parts must share the row count `rows`.
    pub fn hstack(field: Field, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.data[i * cols + off + j] = m.get(i, j);
                }
            }
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must share the column count `cols`.
    pub fn vstack(field: Field, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&m.data);
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn block_diag(field: Field, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.data[(r0 + i) * cols + c0 + j] = m.get(i, j);
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    pub fn column(&self, j: usize) -> Mat {
        self.select_columns(&[j])
    }

    /// Reduced row echelon form by Gauss-Jordan elimination, pivoting on the
    /// first nonzero entry of each column.
    pub fn rref(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.data[r * m.cols + j] = f.mul(v, inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
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

    /// Kernel basis as the columns of a `cols x (cols - rank)` matrix.
    pub fn kernel(&self) -> Mat {
        let f = self.field;
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, 1);
            for (row, &pc) in ech.pivots.iter().enumerate() {
                k.set(pc, idx, f.neg(ech.reduced.get(row, fc)));
            }
        }
        k
    }

    /// Rank together with a kernel basis given as column vectors.
    pub fn rank_kernel(&self) -> (usize, Vec<Mat>) {
        let k = self.kernel();
        let rank = self.cols - k.cols();
        (rank, (0..k.cols()).map(|j| k.column(j)).collect())
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    /// `b` may have several columns; they are solved simultaneously.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::input(format!(
                "solve: A has {} rows but b has {}",
                self.rows, b.rows
            )));
        }
        let f = self.field;
        let aug = Mat::hstack(f, self.rows, &[self, b]);
        let ech = aug.rref();
        if ech.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(f, self.cols, b.cols);
        for (row, &pc) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, ech.reduced.get(row, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let id = Mat::identity(self.field, n);
        let aug = Mat::hstack(self.field, n, &[self, &id]);
        let ech = aug.rref();
        if ech.pivots.len() < n || ech.pivots.iter().take(n).any(|&c| c >= n) {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(ech.reduced.select_columns(&cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Columns of `self` forming a basis of its column space (first-found order).
    pub fn column_space(&self) -> Mat {
        let ech = self.rref();
        self.select_columns(&ech.pivots)
    }

    /// Standard basis vectors extending the independent columns `basis` to a
    /// basis of the ambient space, returned as the columns of a matrix.
    pub fn complement_columns(basis: &Mat) -> Mat {
        let f = basis.field;
        let n = basis.rows;
        let id = Mat::identity(f, n);
        let aug = Mat::hstack(f, n, &[basis, &id]);
        let ech = aug.rref();
        let extra: Vec<usize> = ech
            .pivots
            .iter()
            .filter(|&&c| c >= basis.cols)
            .map(|&c| c - basis.cols)
            .collect();
        id.select_columns(&extra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn mat(p: u64, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Mat::from_rows(f(p), &rows, cols).unwrap()
    }

    #[test]
    fn field_validation() {
        assert!(Field::new(2).is_ok());
        assert!(Field::new(2147483647).is_ok());
        assert!(Field::new(1).is_err());
        assert!(Field::new(9).is_err());
        assert!(Field::new(1u64 << 32).is_err());
    }

    #[test]
    fn inverses() {
        let k = f(7);
        for a in 1..7 {
            assert_eq!(k.mul(a, k.inv(a)), 1);
        }
    }

    #[test]
    fn zero_matrix_rank_kernel() {
        let z = Mat::zeros(f(2), 2, 3);
        let (r, k) = z.rank_kernel();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn identity_rank_kernel() {
        let (r, k) = Mat::identity(f(3), 3).rank_kernel();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let a = mat(5, &[&[1, 2], &[2, 4]]);
        let (r, k) = a.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        assert!(a.mul(&k[0]).is_zero());
    }

    #[test]
    fn solve_identity() {
        let a = Mat::identity(f(5), 3);
        let b = Mat::column_vector(f(5), &[4, 0, 2]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_zero_system() {
        let a = Mat::zeros(f(3), 2, 2);
        let b = Mat::zeros(f(3), 2, 1);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn solve_underdetermined_f2() {
        let a = mat(2, &[&[1, 1]]);
        let b = Mat::column_vector(f(2), &[1]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn solve_inconsistent_and_mismatch() {
        let a = mat(3, &[&[1, 0], &[1, 0]]);
        let b = Mat::column_vector(f(3), &[1, 2]);
        assert!(a.solve(&b).unwrap().is_none());
        let bad = Mat::column_vector(f(3), &[1]);
        assert!(a.solve(&bad).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(f(5), 2));
        assert!(mat(5, &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Mat::zeros(f(2), 0, 0).inverse().unwrap().rows(), 0);
    }

    #[test]
    fn complement_extends_to_basis() {
        let b = mat(2, &[&[1], &[1], &[0]]);
        let c = Mat::complement_columns(&b);
        assert_eq!(c.cols(), 2);
        assert_eq!(Mat::hstack(f(2), 3, &[&b, &c]).rank(), 3);
    }

    fn arb_mat() -> impl Strategy<Value = Mat> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0i64..p as i64, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = (0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect();
                Mat::from_rows(Field::new(p).unwrap(), &rows, c).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(a in arb_mat()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn kernel_vectors_are_annihilated(a in arb_mat()) {
            let (r, ker) = a.rank_kernel();
            prop_assert_eq!(r + ker.len(), a.cols());
            for v in &ker {
                prop_assert!(a.mul(v).is_zero());
            }
            if !ker.is_empty() {
                let refs: Vec<&Mat> = ker.iter().collect();
                prop_assert_eq!(Mat::hstack(a.field(), a.cols(), &refs).rank(), ker.len());
            }
        }

        #[test]
        fn solve_residual_is_zero(a in arb_mat(), seed in 0u32..1000) {
            let k = a.field();
            let x0 = Mat::from_fn(k, a.cols(), 1, |i, _| (seed.wrapping_mul(31).wrapping_add(i as u32 * 17)) % k.p());
            let b = a.mul(&x0);
            let x = a.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul(&x), b);
        }
    }
}
