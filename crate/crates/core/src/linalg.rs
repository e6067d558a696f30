//! Exact dense linear algebra over a prime field `F_p`.
//!
//! Matrices act on column vectors: an `r × c` matrix is a map `F_p^c → F_p^r`
//! and `g ∘ f` is the product `g · f`. Every routine uses leftmost-pivot
//! Gaussian elimination without randomization, so bases and solutions are
//! reproducible bit for bit.

use std::fmt;

use crate::error::{Error, Result};

/// A column vector over a prime field, entries in `[0, p)`.
pub type Vector = Vec<u32>;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest supported modulus; products of two residues must fit in `u64`.
    pub const MAX_MODULUS: u32 = 65_521;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
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

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod `p`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|v| v % field.p).collect();
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows given as signed integers.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = field.reduce(v);
            }
        }
        m
    }

    /// Builds an `rows × k` matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % field.p;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Matrix product `self · rhs`. Panics on a shape mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch: {}x{} · {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let p = self.field.p as u64;
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &a) in acc.iter().enumerate() {
                out.data[r * rhs.cols + c] = a as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                (row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum::<u64>() % p) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    pub fn pow(&self, mut exp: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.field, self.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, rhs);
        out
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "column mismatch in vstack");
        let mut out = Self::zeros(self.field, self.rows + rhs.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, rhs);
        out
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, rhs);
        out
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a != 0 {
                    out.paste(r * rhs.rows, c * rhs.cols, &rhs.scale(a));
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols]
                .copy_from_slice(&block.data[r * block.cols..(r + 1) * block.cols]);
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Self::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns, leftmost pivot first.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(found) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(found, row);
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let v = m.get(row, c);
                m.data[row * m.cols + c] = f.mul(v, inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (red, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        Some(red.submatrix(0..n, n..2 * n))
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column of the
    /// reduced echelon form, with a 1 in that free position.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let f = self.field;
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1 % f.p;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(red.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self · x = b`, free variables set to zero, or `None`.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} but the matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let (red, pivots) = self.hstack(&rhs).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `self · X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for c in 0..rhs.cols {
            match self.solve(&rhs.column(c))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.field, self.cols, &cols)))
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Decomposes the ambient space as `colspace(self) ⊕ span{e_j : j ∈ complement}`.
    pub fn cokernel(&self) -> Cokernel {
        let f = self.field;
        let n = self.rows;
        let w = self.column_basis();
        let k = w.cols;
        let (_, pivots) = w.hstack(&Matrix::identity(f, n)).rref();
        let complement: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
        let mut full = w.clone();
        for &j in &complement {
            let mut e = vec![0; n];
            e[j] = 1 % f.p;
            full = full.hstack(&Matrix::from_columns(f, n, &[e]));
        }
        let inv = full.inverse().expect("column basis plus complement is invertible");
        Cokernel {
            projection: inv.submatrix(k..n, 0..n),
            complement,
        }
    }

    /// A full-row-rank `q` with `q · self = 0` and `rank(q) = rows − rank(self)`.
    pub fn cokernel_projection(&self) -> (Matrix, usize) {
        let c = self.cokernel();
        let d = c.complement.len();
        (c.projection, d)
    }
}

/// Quotient data of a column space: the projection onto the cokernel and the
/// standard basis vectors spanning the chosen complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    /// `d × n`, kills the column space and maps `e_{complement[k]}` to `e_k`.
    pub projection: Matrix,
    pub complement: Vec<usize>,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// `n × d` matrix of the complement vectors; a section of the projection.
    pub fn section(&self) -> Matrix {
        let f = self.projection.field();
        let n = self.projection.cols();
        let mut s = Matrix::zeros(f, n, self.dim());
        for (k, &j) in self.complement.iter().enumerate() {
            s.set(j, k, 1);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(251).is_ok());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(f(2), 3).rank(), 3);
        assert_eq!(Matrix::zeros(f(2), 2, 4).rank(), 0);
        assert_eq!(Matrix::from_rows(f(2), &[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(f(3), 4).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f(2), 2, 3).kernel_basis().len(), 3);
        assert_eq!(Matrix::from_rows(f(2), &[vec![1, 1]]).kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(f(5), 3);
        assert_eq!(id.solve(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));
        let z = Matrix::zeros(f(5), 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let m = Matrix::from_rows(f(2), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.solve(&[0, 1]).unwrap(), Some(vec![1, 1]));
        assert!(matches!(m.solve(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn cokernel_examples() {
        let inv = Matrix::from_rows(f(3), &[vec![1, 2], vec![0, 1]]);
        assert_eq!(inv.cokernel_projection().1, 0);
        let z = Matrix::zeros(f(3), 3, 2);
        let (q, d) = z.cokernel_projection();
        assert_eq!(d, 3);
        assert_eq!(q, Matrix::identity(f(3), 3));
        let diag = Matrix::from_rows(f(2), &[vec![1], vec![1]]);
        let (q, d) = diag.cokernel_projection();
        assert_eq!(d, 1);
        assert!(q.mul(&diag).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(f(7), &[vec![2, 3], vec![1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f(7), 2));
        assert!(Matrix::from_rows(f(7), &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_matches_vec_identity() {
        // vec(A X B) = (Bᵀ ⊗ A) vec(X) with column-major vec.
        let fld = f(5);
        let a = Matrix::from_rows(fld, &[vec![1, 2], vec![3, 4]]);
        let x = Matrix::from_rows(fld, &[vec![0, 1, 2], vec![4, 3, 1]]);
        let b = Matrix::from_rows(fld, &[vec![1, 0], vec![2, 2], vec![3, 1]]);
        let vec_cm = |m: &Matrix| m.transpose().entries().to_vec();
        let lhs = vec_cm(&a.mul(&x).mul(&b));
        let rhs = b.transpose().kron(&a).mul_vec(&vec_cm(&x));
        assert_eq!(lhs, rhs);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u32, 3, 5]), 0usize..=8, 0usize..=8).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c)
                .prop_map(move |data| Matrix::from_vec(PrimeField::new(p).unwrap(), r, c, data).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|&e| e == 0));
            }
        }

        #[test]
        fn solve_is_sound_and_complete(m in arb_matrix(), seed in any::<u64>()) {
            let p = m.field().modulus() as u64;
            let b: Vector = (0..m.rows()).map(|i| ((seed >> (i % 32)) % p) as u32).collect();
            let augmented = m.hstack(&Matrix::from_columns(m.field(), m.rows(), std::slice::from_ref(&b)));
            match m.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
                None => prop_assert!(augmented.rank() > m.rank()),
            }
        }

        #[test]
        fn cokernel_projection_kills_image(m in arb_matrix()) {
            let (q, d) = m.cokernel_projection();
            prop_assert_eq!(d, m.rows() - m.rank());
            prop_assert_eq!(q.rank(), d);
            prop_assert!(q.mul(&m).is_zero());
            let c = m.cokernel();
            prop_assert_eq!(c.projection.mul(&c.section()), Matrix::identity(m.field(), d));
        }

        #[test]
        fn deterministic(m in arb_matrix()) {
            prop_assert_eq!(m.kernel_basis(), m.kernel_basis());
            prop_assert_eq!(m.cokernel(), m.cokernel());
        }
    }
}
