//! Dense exact-rational linear algebra: row reduction, kernels, linear
//! solving, characteristic polynomials, and canonical subspaces.
#![allow(clippy::needless_range_loop)] // index loops mirror the matrix math
//!
//! Subspaces are kept in reduced row-echelon form so that equality and
//! containment are plain matrix comparisons.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{format_scalar, int, scalar_to_f64, Scalar};

/// Row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| format_scalar(self.get(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, j) * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) + other.get(r, c)
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) - other.get(r, c)
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// trace(self * other) without forming the product.
    pub fn trace_mul(&self, other: &Self) -> Scalar {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, i);
                }
            }
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pr);
            let inv = self.get(lead, col).recip();
            for c in col..self.cols {
                let v = self.get(lead, c) * &inv;
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r != lead && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &factor * self.get(lead, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : A x = 0}`, rows in rref form.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc] = Scalar::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(prow, fc).clone();
            }
            rows.push(v);
        }
        let mut m = Self::from_rows(rows);
        if m.rows == 0 {
            m = Self::zeros(0, self.cols);
        }
        m.rref_in_place();
        m
    }

    /// Solves `A x = b` exactly. Returns the pivot solution (free variables
    /// zero) or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let rhs = Self::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        let aug = self.hstack(&rhs);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constants column
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Rank of `A` and of `[A | b]`; a strict increase certifies infeasibility.
    pub fn rank_certificate(&self, b: &[Scalar]) -> (usize, usize) {
        let rhs = Self::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        (self.rank(), self.hstack(&rhs).rank())
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if !m.get(r, col).is_zero() {
                    let factor = m.get(r, col) / &pivot;
                    for c in col..n {
                        let v = m.get(r, c) - &factor * m.get(col, c);
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial of a square matrix via Faddeev–LeVerrier.
    /// Returns coefficients `c` with `det(xI - A) = sum c[k] x^k`, `c[n] = 1`.
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Self::zeros(n, n); // M_0 = 0
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut am = self.mul(&m);
            for i in 0..n {
                let v = am.get(i, i) + &coeffs[n - k + 1];
                am.set(i, i, v);
            }
            m = am;
            let c = -(self.trace_mul(&m)) / int(k as i64);
            coeffs[n - k] = c;
        }
        coeffs
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| scalar_to_f64(self.get(r, c)))
                    .collect()
            })
            .collect()
    }
}

/// Definiteness classification of a symmetric rational matrix, decided
/// exactly from the sign pattern of its characteristic polynomial (valid
/// because symmetric matrices are real-diagonalizable).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Zero,
    PositiveDefinite,
    PositiveSemidefinite,
    NegativeDefinite,
    NegativeSemidefinite,
    Indefinite,
}

pub fn symmetric_definiteness(m: &QMatrix) -> Definiteness {
    assert!(m.is_symmetric(), "definiteness requires a symmetric matrix");
    if m.rows() == 0 {
        // Vacuous: definite in both senses; report the strongest neutral tag.
        return Definiteness::Zero;
    }
    if m.is_zero() {
        return Definiteness::Zero;
    }
    let n = m.rows();
    let p = m.char_poly();
    // All eigenvalues <= 0 iff every coefficient of det(xI - M) is >= 0;
    // all >= 0 iff coefficients alternate as (-1)^(n-k) c_k >= 0.
    let nonpos = p.iter().all(|c| !c.is_negative());
    let nonneg = p.iter().enumerate().all(|(k, c)| {
        let signed = if (n - k).is_multiple_of(2) {
            c.clone()
        } else {
            -c.clone()
        };
        !signed.is_negative()
    });
    let invertible = !p[0].is_zero();
    match (nonneg, nonpos, invertible) {
        (true, _, true) => Definiteness::PositiveDefinite,
        (true, _, false) => Definiteness::PositiveSemidefinite,
        (_, true, true) => Definiteness::NegativeDefinite,
        (_, true, false) => Definiteness::NegativeSemidefinite,
        _ => Definiteness::Indefinite,
    }
}

/// Sylvester test: all leading principal minors positive.
pub fn is_positive_definite(m: &QMatrix) -> bool {
    if !m.is_symmetric() {
        return false;
    }
    for k in 1..=m.rows() {
        let sub = QMatrix::from_fn(k, k, |i, j| m.get(i, j).clone());
        if !sub.determinant().is_positive() {
            return false;
        }
    }
    true
}

/// A linear subspace of Q^n in canonical form: the rows of `basis` are a
/// reduced row-echelon basis, so two subspaces are equal iff their matrices
/// are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMatrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}) {:?}",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

impl Subspace {
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
        }
        let mut m = if vectors.is_empty() {
            QMatrix::zeros(0, ambient_dim)
        } else {
            QMatrix::from_rows(vectors)
        };
        let pivots = m.rref_in_place();
        let basis = QMatrix::from_fn(pivots.len(), ambient_dim, |r, c| m.get(r, c).clone());
        Self { ambient_dim, basis }
    }

    pub fn from_rref(basis: QMatrix) -> Self {
        let ambient_dim = basis.cols();
        Self::from_vectors(ambient_dim, basis.rows_vec())
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: QMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: QMatrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.rows_vec()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let stacked = self.basis.vstack(&QMatrix::from_rows(vec![v.to_vec()]));
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vector(v))
    }

    /// Coordinates of `v` in this subspace's rref basis, if `v` lies in it.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.basis.transpose().solve(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Subspace::from_vectors(self.ambient_dim, vecs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // row space(A) = null(N_A) where N_A spans the dot-orthogonal
        // complement, so intersect by stacking both constraint sets.
        let na = self.constraint_matrix();
        let nb = other.constraint_matrix();
        let stacked = na.vstack(&nb);
        Subspace::from_rref(stacked.kernel())
    }

    /// Matrix `N` with row space(self) = `{x : N x = 0}`.
    pub fn constraint_matrix(&self) -> QMatrix {
        if self.dim() == 0 {
            return QMatrix::identity(self.ambient_dim);
        }
        self.basis.kernel()
    }

    /// `{x in self : form(x, w) = 0 for all w in other}` where `form` is a
    /// symmetric ambient bilinear form.
    pub fn orthogonal_complement_in(&self, form: &QMatrix, other: &Subspace) -> Subspace {
        assert_eq!(form.rows(), self.ambient_dim);
        if other.dim() == 0 {
            return self.clone();
        }
        let constraints = other.basis.mul(form); // rows: w^T G
        let all = constraints.vstack(&self.constraint_matrix());
        Subspace::from_rref(all.kernel())
    }

    /// Deterministic total order: by dimension, then entrywise on the
    /// canonical basis matrix.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| {
            for (a, b) in self.basis.data.iter().zip(&other.basis.data) {
                match a.cmp(b) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }

    pub fn basis_strings(&self) -> Vec<Vec<String>> {
        self.basis_vectors()
            .iter()
            .map(|row| row.iter().map(format_scalar).collect())
            .collect()
    }
}

/// Incrementally maintained reduced echelon basis of a subspace of Q^n.
/// Supports cheap membership tests and independent-insertion, which the
/// associative-closure and solution-span checks rely on.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Inserts `v` if independent of the current span; returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v;
        self.reduce(&mut w);
        let Some(j) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = w[j].clone();
        for x in &mut w {
            *x /= &lead;
        }
        for (row, &p) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert_ne!(p, j);
            if !row[j].is_zero() {
                let factor = row[j].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
        let pos = self
            .pivots
            .iter()
            .position(|&p| p > j)
            .unwrap_or(self.pivots.len());
        self.rows.insert(pos, w);
        self.pivots.insert(pos, j);
        true
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::from_vectors(self.cols, self.rows.clone())
    }
}

/// Eigenvalues of a symmetric f64 matrix by cyclic Jacobi rotations.
/// Used only for the numeric fallback of spectra that do not split over
/// the rationals.
pub fn jacobi_eigenvalues(a: &[Vec<f64>], tol: f64) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() < tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < tol * 1e-3 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}
