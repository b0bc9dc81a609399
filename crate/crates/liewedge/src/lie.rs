//! Structure-constant Lie algebras over exact rationals: brackets, Killing
//! form, ad operators, gradings, generated subalgebras, ideal decomposition,
//! automorphism checks and Cartan involutions.

use crate::matrix::{simultaneous_eigenspaces, LinalgError, Matrix, Subspace};
use crate::scalar::{self, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Coordinates of an element in the basis of its parent algebra.
pub type LieElement = Vec<Scalar>;

#[derive(Debug, Clone)]
pub enum LieError {
    Dimension(String),
    NotAntisymmetric {
        i: usize,
        j: usize,
    },
    JacobiFails {
        i: usize,
        j: usize,
        k: usize,
    },
    NotAutomorphism(String),
    NotSemisimple,
    GradingIncomplete {
        residual_dim: usize,
    },
    InvalidCartanInvolution(String),
    Linalg(LinalgError),
    Other(String),
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::Dimension(s) => write!(f, "dimension mismatch: {s}"),
            LieError::NotAntisymmetric { i, j } => {
                write!(f, "structure tensor not antisymmetric at ({i},{j})")
            }
            LieError::JacobiFails { i, j, k } => {
                write!(f, "Jacobi identity fails on basis triple ({i},{j},{k})")
            }
            LieError::NotAutomorphism(s) => write!(f, "not an automorphism: {s}"),
            LieError::NotSemisimple => write!(f, "Killing form degenerate (not semisimple)"),
            LieError::GradingIncomplete { residual_dim } => write!(
                f,
                "grading incomplete: {residual_dim} residual dimensions (irrational spectrum?)"
            ),
            LieError::InvalidCartanInvolution(s) => write!(f, "invalid Cartan involution: {s}"),
            LieError::Linalg(e) => write!(f, "{e}"),
            LieError::Other(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for LieError {}

impl From<LinalgError> for LieError {
    fn from(e: LinalgError) -> Self {
        LieError::Linalg(e)
    }
}

/// Bracket-preserving invertible linear map, as a matrix on coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearAutomorphism {
    pub matrix: Matrix,
}

/// Eigenspace decomposition of ad(generator).
#[derive(Debug, Clone)]
pub struct Grading {
    pub generator: LieElement,
    /// eigenvalue (canonical string key for ordering) -> (eigenvalue, part)
    pub parts: BTreeMap<String, (Scalar, Subspace)>,
}

impl Grading {
    pub fn part(&self, lambda: &Scalar) -> Subspace {
        let key = scalar::format_scalar(lambda);
        match self.parts.get(&key) {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.generator.len()),
        }
    }

    pub fn eigenvalues(&self) -> Vec<Scalar> {
        self.parts.values().map(|(l, _)| l.clone()).collect()
    }

    pub fn spectrum_within(&self, allowed: &[Scalar]) -> bool {
        self.parts.values().all(|(l, _)| allowed.contains(l))
    }
}

/// Finite-dimensional Lie algebra given by structure constants
/// `[e_i, e_j] = sum_k c(i,j,k) e_k`, stored sparsely per (i,j).
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub dim: usize,
    /// `structure[i*dim + j]` lists the nonzero (k, c(i,j,k)).
    structure: Vec<Vec<(usize, Scalar)>>,
    pub label: String,
    pub cartan_involution: Option<LinearAutomorphism>,
    /// Optional faithful matrix realization of each basis vector.
    pub matrix_realization: Option<Vec<Matrix>>,
}

impl LieAlgebra {
    /// Builds and fully validates: antisymmetry and the Jacobi identity on
    /// every basis triple; if a Cartan involution is attached, it must be an
    /// involutive automorphism with positive definite B_theta.
    pub fn new(
        dim: usize,
        brackets: Vec<Vec<(usize, Scalar)>>,
        label: impl Into<String>,
    ) -> Result<Self, LieError> {
        let alg = Self::new_unchecked(dim, brackets, label);
        alg.validate_antisymmetry()?;
        alg.validate_jacobi()?;
        Ok(alg)
    }

    /// Constructs without validation. Used for restrictions of already
    /// validated algebras, where antisymmetry and Jacobi are inherited from
    /// the ambient bracket.
    pub fn new_unchecked(
        dim: usize,
        mut brackets: Vec<Vec<(usize, Scalar)>>,
        label: impl Into<String>,
    ) -> Self {
        assert_eq!(brackets.len(), dim * dim);
        for row in brackets.iter_mut() {
            row.retain(|(_, c)| !c.is_zero());
            row.sort_by_key(|(k, _)| *k);
        }
        LieAlgebra {
            dim,
            structure: brackets,
            label: label.into(),
            cartan_involution: None,
            matrix_realization: None,
        }
    }

    /// Builds the structure tensor from a bracket closure on basis pairs.
    pub fn from_basis_brackets(
        dim: usize,
        mut pair_bracket: impl FnMut(usize, usize) -> Vec<Scalar>,
        label: impl Into<String>,
    ) -> Result<Self, LieError> {
        let mut brackets = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let v = pair_bracket(i, j);
                assert_eq!(v.len(), dim);
                brackets[i * dim + j] = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
            }
        }
        LieAlgebra::new(dim, brackets, label)
    }

    pub fn structure_row(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.structure[i * self.dim + j]
    }

    fn validate_antisymmetry(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.structure_row(i, j);
                let b = self.structure_row(j, i);
                if a.len() != b.len()
                    || a.iter()
                        .zip(b.iter())
                        .any(|((ka, ca), (kb, cb))| ka != kb || *ca != -cb.clone())
                {
                    return Err(LieError::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    fn validate_jacobi(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut acc = vec![Scalar::zero(); self.dim];
                    self.add_double_bracket(&mut acc, i, j, k);
                    self.add_double_bracket(&mut acc, j, k, i);
                    self.add_double_bracket(&mut acc, k, i, j);
                    if acc.iter().any(|c| !c.is_zero()) {
                        return Err(LieError::JacobiFails { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// acc += [e_i, [e_j, e_k]]
    fn add_double_bracket(&self, acc: &mut [Scalar], i: usize, j: usize, k: usize) {
        for (m, c) in self.structure_row(j, k) {
            for (t, d) in self.structure_row(i, *m) {
                acc[*t] += c * d;
            }
        }
    }

    pub fn zero_element(&self) -> LieElement {
        vec![Scalar::zero(); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        let mut v = self.zero_element();
        v[i] = scalar::one();
        v
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(LieError::Dimension(format!(
                "bracket: got {} and {}, algebra dim {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in self.structure_row(i, j) {
                    out[*k] += &coeff * c;
                }
            }
        }
        Ok(out)
    }

    /// ad(x) as a matrix on coordinates.
    pub fn ad(&self, x: &LieElement) -> Matrix {
        assert_eq!(x.len(), self.dim);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.structure_row(i, j) {
                    let t = &m[(*k, j)] + xi * c;
                    m[(*k, j)] = t;
                }
            }
        }
        m
    }

    /// Killing form beta(x,y) = trace(ad x . ad y).
    pub fn killing_form(&self, x: &LieElement, y: &LieElement) -> Result<Scalar, LieError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(LieError::Dimension("killing form".into()));
        }
        let ax = self.ad(x);
        let ay = self.ad(y);
        let mut t = Scalar::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = &ax[(i, j)];
                if !a.is_zero() {
                    let b = &ay[(j, i)];
                    if !b.is_zero() {
                        t += a * b;
                    }
                }
            }
        }
        Ok(t)
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_gram(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad(&self.basis_element(i))).collect();
        let mut g = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut t = Scalar::zero();
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        let x = &ads[i][(a, b)];
                        if !x.is_zero() {
                            let y = &ads[j][(b, a)];
                            if !y.is_zero() {
                                t += x * y;
                            }
                        }
                    }
                }
                g[(i, j)] = t.clone();
                g[(j, i)] = t;
            }
        }
        g
    }

    /// Attaches a validated Cartan involution: involutive automorphism with
    /// B_theta(x,y) = -beta(x, theta y) positive definite.
    pub fn with_cartan_involution(mut self, theta: Matrix) -> Result<Self, LieError> {
        let phi = LinearAutomorphism { matrix: theta };
        if !self.is_involutive_automorphism(&phi) {
            return Err(LieError::InvalidCartanInvolution(
                "not an involutive automorphism".into(),
            ));
        }
        let gram = self.killing_gram();
        // B_theta gram = -G * theta
        let bt = gram.mul(&phi.matrix).scale(&-scalar::one());
        if !bt
            .is_positive_definite_symmetric()
            .map_err(|e| LieError::InvalidCartanInvolution(e.to_string()))?
        {
            return Err(LieError::InvalidCartanInvolution(
                "B_theta not positive definite".into(),
            ));
        }
        self.cartan_involution = Some(phi);
        Ok(self)
    }

    pub fn theta(&self) -> &LinearAutomorphism {
        self.cartan_involution
            .as_ref()
            .expect("algebra carries no Cartan involution")
    }

    /// True iff phi^2 = id and phi[x,y] = [phi x, phi y] on all basis pairs.
    pub fn is_involutive_automorphism(&self, phi: &LinearAutomorphism) -> bool {
        let m = &phi.matrix;
        if m.rows() != self.dim || m.cols() != self.dim {
            return false;
        }
        if m.mul(m) != Matrix::identity(self.dim) {
            return false;
        }
        self.is_automorphism_matrix(m)
    }

    pub fn is_automorphism_matrix(&self, m: &Matrix) -> bool {
        if m.rows() != self.dim || m.cols() != self.dim || m.rank() != self.dim {
            return false;
        }
        for i in 0..self.dim {
            let phi_ei = m.apply(&self.basis_element(i));
            for j in 0..self.dim {
                let phi_ej = m.apply(&self.basis_element(j));
                let lhs = m.apply(&self.bracket(&self.basis_element(i), &self.basis_element(j)).unwrap());
                let rhs = self.bracket(&phi_ei, &phi_ej).unwrap();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Complete ad-eigenspace decomposition of a rationally diagonalizable
    /// element; fails loudly naming the residual dimension otherwise.
    pub fn grading_of(&self, h: &LieElement) -> Result<Grading, LieError> {
        let ad_h = self.ad(h);
        let parts = ad_h.rational_eigen_decomposition().map_err(|e| match e {
            LinalgError::IncompleteDecomposition { residual_dim } => {
                LieError::GradingIncomplete { residual_dim }
            }
            other => LieError::Linalg(other),
        })?;
        let grading = Grading {
            generator: h.clone(),
            parts,
        };
        Ok(grading)
    }

    /// Checks [g_a, g_b] subset g_{a+b} on the parts of a grading.
    pub fn grading_is_bracket_compatible(&self, g: &Grading) -> bool {
        let values: Vec<(Scalar, Subspace)> = g.parts.values().cloned().collect();
        for (la, sa) in &values {
            for (lb, sb) in &values {
                let target = g.part(&(la + lb));
                for va in sa.basis_vectors() {
                    for vb in sb.basis_vectors() {
                        let br = self.bracket(&va, &vb).unwrap();
                        if br.iter().any(|c| !c.is_zero()) && !target.contains(&br) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Smallest bracket-closed subspace containing `s`.
    pub fn subalgebra_generated(&self, s: &Subspace) -> Subspace {
        let mut current = s.clone();
        loop {
            let basis = current.basis_vectors();
            let mut new_vecs = Vec::new();
            for (i, x) in basis.iter().enumerate() {
                for y in basis.iter().skip(i + 1) {
                    let br = self.bracket(x, y).unwrap();
                    if !current.contains(&br) {
                        new_vecs.push(br);
                    }
                }
            }
            if new_vecs.is_empty() {
                return current;
            }
            let mut all = basis;
            all.extend(new_vecs);
            current = Subspace::from_vectors(self.dim, all);
        }
    }

    /// Smallest ideal containing `v` (closure under bracketing with the
    /// whole basis).
    pub fn ideal_generated(&self, v: &LieElement) -> Subspace {
        let mut current = Subspace::from_vectors(self.dim, vec![v.clone()]);
        loop {
            let basis = current.basis_vectors();
            let mut new_vecs = Vec::new();
            for x in &basis {
                for i in 0..self.dim {
                    let br = self.bracket(&self.basis_element(i), x).unwrap();
                    if !current.contains(&br) {
                        new_vecs.push(br);
                    }
                }
            }
            if new_vecs.is_empty() {
                return current;
            }
            let mut all = basis;
            all.extend(new_vecs);
            current = Subspace::from_vectors(self.dim, all);
        }
    }

    /// Killing-orthogonal complement of a subspace.
    pub fn killing_orthogonal(&self, s: &Subspace) -> Subspace {
        let gram = self.killing_gram();
        // rows: beta(b_i, .) as functionals
        let rows: Vec<Vec<Scalar>> = s
            .basis_vectors()
            .iter()
            .map(|b| gram.apply(b))
            .collect();
        if rows.is_empty() {
            return Subspace::full(self.dim);
        }
        Matrix::from_rows(rows).kernel()
    }

    /// Minimal ideals of a semisimple algebra: pairwise Killing-orthogonal,
    /// direct sum is the whole algebra. Splits along ideals generated by
    /// single basis vectors and Killing-orthogonal complements, iterated to
    /// minimality.
    pub fn ideal_decomposition(&self) -> Result<Vec<Subspace>, LieError> {
        let gram = self.killing_gram();
        if gram.rank() != self.dim {
            return Err(LieError::NotSemisimple);
        }
        let mut queue: Vec<Subspace> = vec![Subspace::full(self.dim)];
        let mut minimal: Vec<Subspace> = Vec::new();
        while let Some(part) = queue.pop() {
            let mut split = None;
            for v in part.basis_vectors() {
                let ideal = self.ideal_generated(&v);
                debug_assert!(part.contains_subspace(&ideal));
                if ideal.dim() < part.dim() {
                    let complement = self.killing_orthogonal(&ideal).intersect(&part);
                    if ideal.dim() + complement.dim() != part.dim() {
                        return Err(LieError::NotSemisimple);
                    }
                    split = Some((ideal, complement));
                    break;
                }
            }
            match split {
                Some((a, b)) => {
                    queue.push(a);
                    queue.push(b);
                }
                None => minimal.push(part),
            }
        }
        minimal.sort_by_key(|s| std::cmp::Reverse(s.dim()));
        Ok(minimal)
    }

    /// Joint root-space data of a commuting diagonalizable family spanning
    /// an abelian subspace: functionals are coordinate tuples against
    /// `a_basis`; the zero functional is reported separately as the
    /// centralizer.
    pub fn restricted_root_data(&self, a_basis: &[LieElement]) -> Result<RootData, LieError> {
        let ads: Vec<Matrix> = a_basis.iter().map(|h| self.ad(h)).collect();
        let parts = simultaneous_eigenspaces(&ads)?;
        let mut roots = Vec::new();
        let mut centralizer = Subspace::zero(self.dim);
        for (tuple, sub) in parts {
            if tuple.iter().all(|c| c.is_zero()) {
                centralizer = sub;
            } else {
                roots.push((tuple, sub));
            }
        }
        roots.sort_by(|a, b| root_key(&a.0).cmp(&root_key(&b.0)));
        Ok(RootData { roots, centralizer })
    }

    /// Restricts the bracket to a bracket-closed subspace, producing the
    /// subalgebra in its own basis plus the inclusion matrix (columns are
    /// the RREF basis vectors of `s`). Antisymmetry/Jacobi are inherited.
    pub fn restrict_to_subspace(&self, s: &Subspace) -> Result<(LieAlgebra, Matrix), LieError> {
        let m = s.dim();
        let basis = s.basis_vectors();
        let mut brackets = vec![Vec::new(); m * m];
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let br = self.bracket(&basis[i], &basis[j])?;
                let coords = s.coordinates(&br).ok_or_else(|| {
                    LieError::Other("subspace is not bracket-closed".into())
                })?;
                brackets[i * m + j] = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
            }
        }
        let alg = LieAlgebra::new_unchecked(m, brackets, format!("{}|sub", self.label));
        let incl = Matrix::from_fn(self.dim, m, |a, b| basis[b][a].clone());
        Ok((alg, incl))
    }

    /// Direct sum of two structure-constant algebras (block structure).
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut brackets = vec![Vec::new(); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                brackets[i * n + j] = self.structure_row(i, j).to_vec();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                brackets[(self.dim + i) * n + (self.dim + j)] = other
                    .structure_row(i, j)
                    .iter()
                    .map(|(k, c)| (self.dim + k, c.clone()))
                    .collect();
            }
        }
        LieAlgebra::new_unchecked(n, brackets, format!("{}+{}", self.label, other.label))
    }

    /// exp(i pi ad h) for an integral hyperbolic element: acts by (-1)^n on
    /// the n-eigenspace of ad h. Rational because the spectrum is integral.
    pub fn exp_i_pi_ad(&self, h: &LieElement) -> Result<Matrix, LieError> {
        let grading = self.grading_of(h)?;
        for (lam, _) in grading.parts.values() {
            if !scalar::is_integer(lam) {
                return Err(LieError::Other(format!(
                    "exp(i pi ad h) needs integral spectrum, found {}",
                    scalar::format_scalar(lam)
                )));
            }
        }
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim);
        let mut basis_rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim);
        for (lam, sub) in grading.parts.values() {
            let sign = if (lam.numer() % num_bigint::BigInt::from(2)).is_zero() {
                scalar::one()
            } else {
                -scalar::one()
            };
            for v in sub.basis_vectors() {
                columns.push(v.iter().map(|c| c * &sign).collect());
                basis_rows.push(v);
            }
        }
        // change of basis: P maps eigencoords to std; the involution is
        // P . diag(signs) . P^{-1}
        let p = Matrix::from_fn(self.dim, self.dim, |i, j| basis_rows[j][i].clone());
        let signed = Matrix::from_fn(self.dim, self.dim, |i, j| columns[j][i].clone());
        let p_inv = p.inverse()?;
        Ok(signed.mul(&p_inv))
    }
}

fn root_key(tuple: &[Scalar]) -> String {
    tuple
        .iter()
        .map(scalar::format_scalar)
        .collect::<Vec<_>>()
        .join(",")
}

/// Restricted root data over an abelian family.
#[derive(Debug, Clone)]
pub struct RootData {
    /// (functional as coordinate tuple, root space), zero excluded.
    pub roots: Vec<(Vec<Scalar>, Subspace)>,
    pub centralizer: Subspace,
}

impl RootData {
    pub fn multiplicities(&self) -> BTreeMap<String, usize> {
        self.roots
            .iter()
            .map(|(t, s)| (root_key(t), s.dim()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.roots.iter().map(|(_, s)| s.dim()).sum::<usize>() + self.centralizer.dim()
    }

    pub fn root_space(&self, tuple: &[Scalar]) -> Option<&Subspace> {
        self.roots
            .iter()
            .find(|(t, _)| t == tuple)
            .map(|(_, s)| s)
    }
}

/// The five distinguished elements of sl(2,R) in the basis {H, X, Y}:
/// [H,X]=2X, [H,Y]=-2Y, [X,Y]=H, plus T = X+Y and U = X-Y with
/// [U,T]=2H, [U,H]=-2T, [H,T]=2U.
pub fn sl2() -> LieAlgebra {
    let h = 0usize;
    let x = 1usize;
    let y = 2usize;
    let mut brackets = vec![Vec::new(); 9];
    let set = |br: &mut Vec<Vec<(usize, Scalar)>>, i: usize, j: usize, v: Vec<(usize, i64)>| {
        br[i * 3 + j] = v.iter().map(|(k, c)| (*k, scalar::int(*c))).collect();
        br[j * 3 + i] = v.iter().map(|(k, c)| (*k, scalar::int(-*c))).collect();
    };
    set(&mut brackets, h, x, vec![(x, 2)]);
    set(&mut brackets, h, y, vec![(y, -2)]);
    set(&mut brackets, x, y, vec![(h, 1)]);
    let alg = LieAlgebra::new(3, brackets, "sl(2,R)").unwrap();
    // theta(H) = -H, theta(X) = -Y, theta(Y) = -X  (negative transpose)
    let theta = Matrix::from_i64(vec![vec![-1, 0, 0], vec![0, 0, -1], vec![0, -1, 0]]);
    alg.with_cartan_involution(theta).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn elem(v: Vec<i64>) -> LieElement {
        v.into_iter().map(int).collect()
    }

    #[test]
    fn sl2_bracket_relations() {
        let g = sl2();
        let h = g.basis_element(0);
        let x = g.basis_element(1);
        let y = g.basis_element(2);
        assert_eq!(g.bracket(&h, &x).unwrap(), elem(vec![0, 2, 0]));
        assert_eq!(g.bracket(&x, &x).unwrap(), g.zero_element());
        // U = X - Y, T = X + Y, [U,T] = 2H
        let u: LieElement = vec![int(0), int(1), int(-1)];
        let t: LieElement = vec![int(0), int(1), int(1)];
        assert_eq!(g.bracket(&u, &t).unwrap(), elem(vec![2, 0, 0]));
        assert_eq!(g.bracket(&u, &h).unwrap(), elem(vec![0, -2, -2]));
        assert_eq!(g.bracket(&h, &t).unwrap(), elem(vec![0, 2, -2]));
        let _ = y;
    }

    #[test]
    fn sl2_killing_form_oracle() {
        // independent oracle: trace of products of brute-force ad matrices
        let g = sl2();
        let h = g.basis_element(0);
        let x = g.basis_element(1);
        let ad_h = g.ad(&h);
        let oracle_hh = ad_h.mul(&ad_h).trace();
        assert_eq!(oracle_hh, int(8));
        assert_eq!(g.killing_form(&h, &h).unwrap(), int(8));
        assert_eq!(g.killing_form(&h, &x).unwrap(), int(0));
        assert_eq!(g.killing_form(&x, &g.zero_element()).unwrap(), int(0));
    }

    #[test]
    fn sl2_grading_of_half_h() {
        let g = sl2();
        let half_h: LieElement = vec![frac(1, 2), int(0), int(0)];
        let grading = g.grading_of(&half_h).unwrap();
        assert_eq!(grading.parts.len(), 3);
        let p1 = grading.part(&int(1));
        assert_eq!(p1.dim(), 1);
        assert!(p1.contains(&elem(vec![0, 1, 0])));
        let pm1 = grading.part(&int(-1));
        assert!(pm1.contains(&elem(vec![0, 0, 1])));
        assert_eq!(grading.part(&int(0)).dim(), 1);
        assert!(g.grading_is_bracket_compatible(&grading));
    }

    #[test]
    fn grading_of_zero_is_whole_algebra() {
        let g = sl2();
        let grading = g.grading_of(&g.zero_element()).unwrap();
        assert_eq!(grading.parts.len(), 1);
        assert_eq!(grading.part(&int(0)).dim(), 3);
    }

    #[test]
    fn eigenspace_of_ad_h_at_two_is_x() {
        let g = sl2();
        let ad_h = g.ad(&g.basis_element(0));
        let es = ad_h.eigenspace(&int(2));
        assert_eq!(es.dim(), 1);
        assert!(es.contains(&elem(vec![0, 1, 0])));
    }

    #[test]
    fn subalgebra_generated_examples() {
        let g = sl2();
        let x_line = Subspace::from_vectors(3, vec![elem(vec![0, 1, 0])]);
        assert_eq!(g.subalgebra_generated(&x_line), x_line);
        let xy = Subspace::from_vectors(3, vec![elem(vec![0, 1, 0]), elem(vec![0, 0, 1])]);
        assert_eq!(g.subalgebra_generated(&xy), Subspace::full(3));
        let zero = Subspace::zero(3);
        assert_eq!(g.subalgebra_generated(&zero), zero);
    }

    #[test]
    fn ideal_decomposition_simple_and_sum() {
        let g = sl2();
        let ideals = g.ideal_decomposition().unwrap();
        assert_eq!(ideals.len(), 1);
        assert_eq!(ideals[0].dim(), 3);

        let gg = g.direct_sum(&sl2());
        let ideals = gg.ideal_decomposition().unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals.iter().all(|i| i.dim() == 3));
        // distinct ideals commute and are Killing-orthogonal
        for a in ideals[0].basis_vectors() {
            for b in ideals[1].basis_vectors() {
                assert!(gg.bracket(&a, &b).unwrap().iter().all(|c| c.is_zero()));
                assert!(gg.killing_form(&a, &b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn involutive_automorphism_examples() {
        let g = sl2();
        let id = LinearAutomorphism {
            matrix: Matrix::identity(3),
        };
        assert!(g.is_involutive_automorphism(&id));
        // Cartan involution H->-H, X->-Y, Y->-X
        assert!(g.is_involutive_automorphism(g.theta()));
        // swapping X<->H fixing Y is not an automorphism
        let bad = LinearAutomorphism {
            matrix: Matrix::from_i64(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
        };
        assert!(!g.is_involutive_automorphism(&bad));
    }

    #[test]
    fn exp_i_pi_ad_h_is_involution_fixing_even_part() {
        let g = sl2();
        let h = g.basis_element(0); // spectrum {0, +-2}: exp = identity
        let e = g.exp_i_pi_ad(&h).unwrap();
        assert_eq!(e, Matrix::identity(3));
        let half_h: LieElement = vec![frac(1, 2), int(0), int(0)];
        let e = g.exp_i_pi_ad(&half_h).unwrap();
        // spectrum {0,+-1}: fixes H, negates X and Y
        assert_eq!(
            e,
            Matrix::from_i64(vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]])
        );
        assert!(g.is_involutive_automorphism(&LinearAutomorphism { matrix: e }));
    }

    #[test]
    fn restricted_roots_of_sl2() {
        let g = sl2();
        let data = g.restricted_root_data(&[g.basis_element(0)]).unwrap();
        assert_eq!(data.roots.len(), 2);
        assert_eq!(data.centralizer.dim(), 1);
        assert_eq!(data.total_dim(), 3);
    }

    #[test]
    fn restrict_to_subspace_round_trip() {
        let g = sl2().direct_sum(&sl2());
        let first = Subspace::from_vectors(
            6,
            vec![
                elem(vec![1, 0, 0, 0, 0, 0]),
                elem(vec![0, 1, 0, 0, 0, 0]),
                elem(vec![0, 0, 1, 0, 0, 0]),
            ],
        );
        let (sub, incl) = g.restrict_to_subspace(&first).unwrap();
        assert_eq!(sub.dim, 3);
        let h = sub.basis_element(0);
        let x = sub.basis_element(1);
        assert_eq!(sub.bracket(&h, &x).unwrap(), elem(vec![0, 2, 0]));
        assert_eq!(incl.apply(&h), elem(vec![1, 0, 0, 0, 0, 0]));
    }
}
