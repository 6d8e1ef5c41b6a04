//! Dense exact linear algebra over a prime field GF(p).
//!
//! Everything the representation oracle computes (Hom spaces, kernels,
//! projective-factoring subspaces) reduces to Gaussian elimination here.
//! Matrices act on column vectors: an `r x c` matrix maps `GF(p)^c` to
//! `GF(p)^r`. Zero-sized matrices are legal everywhere.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime used when nothing else is configured.
pub const DEFAULT_PRIME: u32 = 32003;

/// Environment variable that overrides [`DEFAULT_PRIME`].
pub const PRIME_ENV_VAR: &str = "DGSTAB_FIELD_PRIME";

/// Residue of a prime field, always in `0..p`.
pub type FieldElem = u32;

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p as u64 {
        if (p as u64).is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        // keep products of two residues inside u64
        if !is_prime(p) || p > (1 << 31) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// Field from `DGSTAB_FIELD_PRIME`, falling back to [`DEFAULT_PRIME`].
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRIME_ENV_VAR) {
            Ok(s) => {
                let p = s
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidParameter(format!("{PRIME_ENV_VAR}={s}")))?;
                Self::new(p)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    #[inline]
    pub fn prime(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: FieldElem) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: FieldElem) -> FieldElem {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduce an arbitrary integer into `0..p`.
    pub fn elem(self, v: i64) -> FieldElem {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// Row-major dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.prime();
        }
        m
    }

    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<FieldElem>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        let p = field.prime();
        let data = data.into_iter().map(|v| v % p).collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Build from signed integer rows; all rows must have equal length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| field.elem(v)));
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<FieldElem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
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
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v % self.field.prime();
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let p = self.field.prime() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; rhs.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let brow = rhs.row(k);
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * rhs.cols + j] = v as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let p = self.field.prime() as u64;
        (0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.scale(self.field.neg(1 % self.field.prime())))
    }

    pub fn scale(&self, s: FieldElem) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        out
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Submatrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form by exact Gauss-Jordan elimination.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let p = f.prime() as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..m.cols {
                    m.data.swap(piv * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.data[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col) as u64;
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let sub = factor * m.data[row * m.cols + c] as u64 % p;
                    let cur = m.data[r * m.cols + c] as u64;
                    m.data[r * m.cols + c] = ((cur + p - sub) % p) as u32;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            self.transpose().echelon().pivots.len()
        } else {
            self.echelon().pivots.len()
        }
    }

    /// Basis of the null space as a matrix whose columns are the basis vectors.
    pub fn kernel(&self) -> Matrix {
        let f = self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(reduced.get(i, fc)));
            }
        }
        k
    }

    /// Null space basis as a list of column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        self.kernel().columns()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.column(0))
    }

    /// Some `X` with `self * X = rhs`, column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows, "right-hand side rows");
        let f = self.field;
        let aug = self.hstack(rhs);
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, reduced.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    /// Columns spanning the column space (a subset of the original columns).
    pub fn column_space(&self) -> Matrix {
        let piv = self.echelon().pivots;
        self.select_columns(&piv)
    }

    /// `M` with `M * self = 0` and full row rank `rows - rank`: a cokernel projection.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel().transpose()
    }

    /// Right inverse of a full-row-rank matrix.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
    }
}

/// `dim span(ambient) - dim span(sub)`; fails when `sub` is not inside `span(ambient)`.
pub fn quotient_dim(
    field: PrimeField,
    dim: usize,
    ambient: &[Vec<FieldElem>],
    sub: &[Vec<FieldElem>],
) -> Result<usize> {
    let a = Matrix::from_columns(field, dim, ambient);
    let s = Matrix::from_columns(field, dim, sub);
    let ra = a.rank();
    let rs = s.rank();
    if a.hstack(&s).rank() != ra {
        return Err(Error::NotASubspace);
    }
    Ok(ra - rs)
}
