//! Dense exact-rational matrices, reduced row echelon form, kernels,
//! eigenspaces and certified semidefiniteness.
//!
//! Subspaces are represented by their unique RREF basis, so subspace
//! equality is representation equality.

use crate::scalar::{self, Scalar};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    Shape(String),
    NotSymmetric,
    Singular,
    /// Joint diagonalization left a residual subspace (dimension attached).
    IncompleteDecomposition {
        residual_dim: usize,
    },
    NonCommuting,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::Shape(s) => write!(f, "shape mismatch: {s}"),
            LinalgError::NotSymmetric => write!(f, "matrix is not symmetric"),
            LinalgError::Singular => write!(f, "matrix is singular"),
            LinalgError::IncompleteDecomposition { residual_dim } => write!(
                f,
                "eigenspaces do not exhaust the space ({residual_dim} residual dimensions; \
                 spectrum not rational half-integers?)"
            ),
            LinalgError::NonCommuting => write!(f, "matrices do not commute"),
        }
    }
}

impl std::error::Error for LinalgError {}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Integer test matrix helper.
    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(scalar::int).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = &out[(i, j)] + a * b;
                        out[(i, j)] = t;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Scalar::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    let e = &self[(i, j)];
                    if !e.is_zero() {
                        acc += e * vj;
                    }
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t += self[(i, i)].clone();
        }
        t
    }

    /// Unique reduced row-echelon form; preserves the row space.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    pub fn rref_in_place(&mut self) {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(r) = (pivot_row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, r);
            let inv = self[(pivot_row, col)].recip();
            for j in col..self.cols {
                let t = &self[(pivot_row, j)] * &inv;
                self[(pivot_row, j)] = t;
            }
            for r2 in 0..self.rows {
                if r2 != pivot_row && !self[(r2, col)].is_zero() {
                    let factor = self[(r2, col)].clone();
                    for j in col..self.cols {
                        let t = &self[(r2, j)] - &factor * &self[(pivot_row, j)];
                        self[(r2, j)] = t;
                    }
                }
            }
            pivot_row += 1;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let r = self.rref();
        (0..r.rows)
            .filter(|&i| r.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// Basis of the kernel (null space), as a Subspace of `cols`-space.
    pub fn kernel(&self) -> Subspace {
        let r = self.rref();
        let mut pivot_of_col = vec![None; self.cols];
        let mut pivots = Vec::new();
        for i in 0..r.rows {
            if let Some(c) = (0..r.cols).find(|&c| !r[(i, c)].is_zero()) {
                pivot_of_col[c] = Some(i);
                pivots.push(c);
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| pivot_of_col[*c].is_none()).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc] = Scalar::one();
            for &pc in &pivots {
                let prow = pivot_of_col[pc].unwrap();
                if !r[(prow, fc)].is_zero() {
                    v[pc] = -r[(prow, fc)].clone();
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Eigenspace ker(m - lambda id); may be zero-dimensional.
    pub fn eigenspace(&self, lambda: &Scalar) -> Subspace {
        assert!(self.is_square(), "eigenspace needs a square matrix");
        let mut shifted = self.clone();
        for i in 0..self.rows {
            let t = &shifted[(i, i)] - lambda;
            shifted[(i, i)] = t;
        }
        shifted.kernel()
    }

    /// Inverse via Gauss-Jordan; errors on singular input.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        aug.rref_in_place();
        for i in 0..n {
            if aug[(i, i)] != Scalar::one() {
                return Err(LinalgError::Singular);
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Exact positive-semidefiniteness of a symmetric rational matrix via
    /// symmetric Gaussian pivoting. A zero diagonal pivot is accepted only
    /// when its entire row/column is zero; otherwise the matrix is not PSD.
    pub fn is_psd_symmetric(&self) -> Result<bool, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("PSD test needs a square matrix".into()));
        }
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(&k) = active.first() {
            let d = m[(k, k)].clone();
            if d.is_negative() {
                return Ok(false);
            }
            if d.is_zero() {
                // PSD forces the whole row to vanish.
                if active.iter().any(|&j| !m[(k, j)].is_zero()) {
                    return Ok(false);
                }
                active.remove(0);
                continue;
            }
            active.remove(0);
            for idx_i in 0..active.len() {
                let i = active[idx_i];
                if m[(i, k)].is_zero() {
                    continue;
                }
                let factor = &m[(i, k)] / &d;
                for idx_j in 0..active.len() {
                    let j = active[idx_j];
                    let t = &m[(i, j)] - &factor * &m[(k, j)];
                    m[(i, j)] = t;
                }
            }
        }
        Ok(true)
    }

    /// Exact positive-definiteness of a symmetric matrix (all pivots > 0).
    pub fn is_positive_definite_symmetric(&self) -> Result<bool, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("PD test needs a square matrix".into()));
        }
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let mut m = self.clone();
        let n = self.rows;
        for k in 0..n {
            let d = m[(k, k)].clone();
            if !d.is_positive() {
                return Ok(false);
            }
            for i in (k + 1)..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let factor = &m[(i, k)] / &d;
                for j in (k + 1)..n {
                    let t = &m[(i, j)] - &factor * &m[(k, j)];
                    m[(i, j)] = t;
                }
            }
        }
        Ok(true)
    }

    /// All rational eigenvalues with eigenspaces. Succeeds only if the
    /// eigenspaces exhaust the whole space; candidates are half-integers
    /// within the Gershgorin bound (the realizations are arranged so that
    /// every spectrum that arises is of this form).
    pub fn rational_eigen_decomposition(
        &self,
    ) -> Result<BTreeMap<String, (Scalar, Subspace)>, LinalgError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut bound = Scalar::zero();
        for i in 0..n {
            let mut s = Scalar::zero();
            for j in 0..n {
                s += self[(i, j)].abs();
            }
            if s > bound {
                bound = s;
            }
        }
        let mut out = BTreeMap::new();
        let mut total = 0usize;
        let two_bound = (&bound * scalar::int(2)).ceil().to_integer();
        let mut k = num_bigint::BigInt::from(0);
        // enumerate 0, 1, -1, 2, -2, ... up to 2*bound, as lambda = k/2
        let mut candidates = vec![Scalar::zero()];
        while k <= two_bound {
            k += 1;
            let lam = Scalar::new(k.clone(), num_bigint::BigInt::from(2));
            candidates.push(lam.clone());
            candidates.push(-lam);
        }
        for lam in candidates {
            if total == n {
                break;
            }
            let es = self.eigenspace(&lam);
            if es.dim() > 0 {
                total += es.dim();
                out.insert(crate::scalar::format_scalar(&lam), (lam, es));
            }
        }
        if total != n {
            return Err(LinalgError::IncompleteDecomposition {
                residual_dim: n - total,
            });
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// A linear subspace in canonical form: rows of `basis` are the RREF basis.
/// Two subspaces are equal iff their representations are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    /// pivot column of each basis row
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_vectors(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); ambient_dim];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        )
    }

    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length != ambient dim");
        }
        let r = Matrix::from_rows(vectors).rref();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for i in 0..r.rows() {
            if let Some(c) = (0..r.cols()).find(|&c| !r[(i, c)].is_zero()) {
                rows.push(r.row_vec(i));
                pivots.push(c);
            }
        }
        Subspace {
            ambient_dim,
            basis: Matrix::from_rows(if rows.is_empty() {
                return Subspace::zero(ambient_dim);
            } else {
                rows
            }),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut v = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for j in 0..self.ambient_dim {
                    let t = &v[j] - &c * &self.basis[(row, j)];
                    v[j] = t;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in the RREF basis (reads off pivot columns).
    /// Returns None if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_vectors(self.ambient_dim, vs)
    }

    /// Intersection via kernel of the stacked coefficient system.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        // Solve a*B1 + b*B2 = 0; intersection vectors are a*B1.
        let d1 = self.dim();
        let d2 = other.dim();
        let m = Matrix::from_fn(self.ambient_dim, d1 + d2, |i, j| {
            if j < d1 {
                self.basis[(j, i)].clone()
            } else {
                -other.basis[(j - d1, i)].clone()
            }
        });
        let ker = m.kernel();
        let mut vecs = Vec::new();
        for k in 0..ker.dim() {
            let coeffs = ker.basis.row(k);
            let mut v = vec![Scalar::zero(); self.ambient_dim];
            for a in 0..d1 {
                if !coeffs[a].is_zero() {
                    for j in 0..self.ambient_dim {
                        let t = &v[j] + &coeffs[a] * &self.basis[(a, j)];
                        v[j] = t;
                    }
                }
            }
            vecs.push(v);
        }
        Subspace::from_vectors(self.ambient_dim, vecs)
    }

    /// Image of the subspace under a linear map given by `m` (columns act on
    /// coordinates).
    pub fn map(&self, m: &Matrix) -> Subspace {
        Subspace::from_vectors(
            m.rows(),
            (0..self.dim()).map(|i| m.apply(self.basis.row(i))).collect(),
        )
    }
}

/// Simultaneous eigenspace decomposition of a family of commuting,
/// individually rationally-diagonalizable matrices. Keys are tuples of
/// eigenvalues, in the order of the input family; the values partition the
/// ambient space.
pub fn simultaneous_eigenspaces(
    ms: &[Matrix],
) -> Result<Vec<(Vec<Scalar>, Subspace)>, LinalgError> {
    let n = match ms.first() {
        None => {
            return Ok(vec![(Vec::new(), Subspace::full(0))]);
        }
        Some(m) => {
            assert!(m.is_square());
            m.rows()
        }
    };
    for m in ms {
        if m.rows() != n || m.cols() != n {
            return Err(LinalgError::Shape("family dimensions differ".into()));
        }
    }
    for i in 0..ms.len() {
        for j in (i + 1)..ms.len() {
            if !ms[i].commutator(&ms[j]).is_zero() {
                return Err(LinalgError::NonCommuting);
            }
        }
    }
    let mut parts: Vec<(Vec<Scalar>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
    for m in ms {
        let eig = m.rational_eigen_decomposition()?;
        let mut next = Vec::new();
        for (tuple, sub) in parts {
            let mut covered = 0usize;
            for (_, (lam, es)) in &eig {
                let inter = sub.intersect(es);
                if inter.dim() > 0 {
                    covered += inter.dim();
                    let mut t = tuple.clone();
                    t.push(lam.clone());
                    next.push((t, inter));
                }
            }
            if covered != sub.dim() {
                return Err(LinalgError::IncompleteDecomposition {
                    residual_dim: sub.dim() - covered,
                });
            }
        }
        parts = next;
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn rref_identity_case() {
        let m = Matrix::identity(3);
        assert_eq!(m.rref(), Matrix::identity(3));
    }

    #[test]
    fn rref_rank_one_forced() {
        let m = Matrix::from_i64(vec![vec![2, 4], vec![1, 2]]);
        assert_eq!(m.rref(), Matrix::from_i64(vec![vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn rref_permutation() {
        let m = Matrix::from_i64(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.rref(), Matrix::identity(2));
    }

    #[test]
    fn eigenspace_diagonal_case() {
        let m = Matrix::from_i64(vec![vec![1, 0], vec![0, 2]]);
        let es = m.eigenspace(&int(1));
        assert_eq!(es.dim(), 1);
        assert!(es.contains(&[int(1), int(0)]));
    }

    #[test]
    fn eigenspace_zero_matrix_full() {
        let m = Matrix::zeros(3, 3);
        assert_eq!(m.eigenspace(&int(0)), Subspace::full(3));
    }

    #[test]
    fn psd_examples() {
        assert!(Matrix::identity(4).is_psd_symmetric().unwrap());
        // eigenvalues 3 and -1
        let m = Matrix::from_i64(vec![vec![1, 2], vec![2, 1]]);
        assert!(!m.is_psd_symmetric().unwrap());
        // eigenvalues 2 and 0
        let m = Matrix::from_i64(vec![vec![1, 1], vec![1, 1]]);
        assert!(m.is_psd_symmetric().unwrap());
        // zero diagonal with nonzero row
        let m = Matrix::from_i64(vec![vec![0, 1], vec![1, 0]]);
        assert!(!m.is_psd_symmetric().unwrap());
        let ns = Matrix::from_i64(vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(ns.is_psd_symmetric(), Err(LinalgError::NotSymmetric));
    }

    #[test]
    fn positive_definite_examples() {
        assert!(Matrix::identity(3).is_positive_definite_symmetric().unwrap());
        let m = Matrix::from_i64(vec![vec![1, 1], vec![1, 1]]);
        assert!(!m.is_positive_definite_symmetric().unwrap());
    }

    #[test]
    fn simultaneous_diag_example() {
        let m = Matrix::from_i64(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]);
        let parts = simultaneous_eigenspaces(&[m]).unwrap();
        assert_eq!(parts.len(), 2);
        let dims: Vec<usize> = parts.iter().map(|(_, s)| s.dim()).collect();
        assert_eq!(dims.iter().sum::<usize>(), 3);
    }

    #[test]
    fn simultaneous_empty_family_is_full_space() {
        let parts = simultaneous_eigenspaces(&[]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0.len(), 0);
    }

    #[test]
    fn subspace_coordinates_read_pivots() {
        let s = Subspace::from_vectors(
            3,
            vec![vec![int(1), int(1), int(0)], vec![int(0), int(0), int(1)]],
        );
        let v = vec![int(2), int(2), frac(1, 2)];
        assert_eq!(s.coordinates(&v).unwrap(), vec![int(2), frac(1, 2)]);
        assert!(s.coordinates(&[int(1), int(0), int(0)]).is_none());
    }

    #[test]
    fn subspace_intersection_and_sum() {
        let a = Subspace::from_vectors(3, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]);
        let b = Subspace::from_vectors(3, vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[int(0), int(1), int(0)]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }
}
