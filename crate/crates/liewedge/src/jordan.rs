//! Euclidean Jordan algebras over exact rationals: direct constructions of
//! the simple families, frames, Peirce decompositions, the symmetric-cone
//! membership test, and the classification of involutive automorphisms.

use crate::division::{CdMatrix, CdNumber};
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{self, half, int, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone)]
pub enum JordanError {
    NotCommutative(usize, usize),
    JordanIdentityFails(usize, usize, usize),
    InnerNotAssociative(usize, usize, usize),
    InnerNotPositive,
    UnitFails(usize),
    NotIdempotent,
    NotFrame(String),
    NotAutomorphism(String),
    BadPeirce(String),
    NotSimple,
    Other(String),
}

impl fmt::Display for JordanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanError::NotCommutative(i, j) => write!(f, "product not commutative at ({i},{j})"),
            JordanError::JordanIdentityFails(a, b, c) => {
                write!(f, "linearized Jordan identity fails on triple ({a},{b},{c})")
            }
            JordanError::InnerNotAssociative(a, b, c) => {
                write!(f, "inner form not associative on triple ({a},{b},{c})")
            }
            JordanError::InnerNotPositive => write!(f, "inner form not positive definite"),
            JordanError::UnitFails(i) => write!(f, "unit law fails on basis vector {i}"),
            JordanError::NotIdempotent => write!(f, "element is not idempotent"),
            JordanError::NotFrame(s) => write!(f, "not a Jordan frame: {s}"),
            JordanError::NotAutomorphism(s) => write!(f, "not a Jordan automorphism: {s}"),
            JordanError::BadPeirce(s) => write!(f, "Peirce decomposition failure: {s}"),
            JordanError::NotSimple => write!(f, "Jordan algebra is not simple"),
            JordanError::Other(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for JordanError {}

/// Isomorphism class of a simple euclidean Jordan algebra.
/// `Mink(d)` is R x R^(d-1) with total dimension d.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum JordanFamily {
    Sym(usize),
    HermC(usize),
    HermH(usize),
    Mink(usize),
    HermO3,
}

impl JordanFamily {
    pub fn rank(&self) -> usize {
        match self {
            JordanFamily::Sym(n) | JordanFamily::HermC(n) | JordanFamily::HermH(n) => *n,
            JordanFamily::Mink(d) => {
                if *d == 1 {
                    1
                } else {
                    2
                }
            }
            JordanFamily::HermO3 => 3,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            JordanFamily::Sym(n) => n * (n + 1) / 2,
            JordanFamily::HermC(n) => n * n,
            JordanFamily::HermH(n) => n * (2 * n - 1),
            JordanFamily::Mink(d) => *d,
            JordanFamily::HermO3 => 27,
        }
    }

    /// Canonical representative of the isomorphism class: rank-1 algebras
    /// become Sym(1); rank-2 algebras become Mink(dim).
    pub fn canonical(&self) -> JordanFamily {
        match self.rank() {
            1 => JordanFamily::Sym(1),
            2 => JordanFamily::Mink(self.dim()),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for JordanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanFamily::Sym(n) => write!(f, "Sym({n},R)"),
            JordanFamily::HermC(n) => write!(f, "Herm({n},C)"),
            JordanFamily::HermH(n) => write!(f, "Herm({n},H)"),
            JordanFamily::Mink(d) => write!(f, "M^{d}"),
            JordanFamily::HermO3 => write!(f, "Herm(3,O)"),
        }
    }
}

/// Commutative product tensor plus unit and associative inner product.
#[derive(Debug, Clone)]
pub struct JordanAlgebra {
    pub dim: usize,
    /// `product[i*dim + j]` lists the nonzero (k, coefficient of e_k in e_i e_j).
    product: Vec<Vec<(usize, Scalar)>>,
    pub unit: Vec<Scalar>,
    /// Gram matrix of the associative positive definite inner form.
    pub inner: Matrix,
    pub label: String,
}

impl JordanAlgebra {
    /// Builds and validates: commutativity, the fully linearized Jordan
    /// identity on all basis triples, unit law, associativity and positive
    /// definiteness of the inner form.
    pub fn new(
        dim: usize,
        product: Vec<Vec<(usize, Scalar)>>,
        unit: Vec<Scalar>,
        inner: Matrix,
        label: impl Into<String>,
    ) -> Result<Self, JordanError> {
        let mut alg = JordanAlgebra {
            dim,
            product,
            unit,
            inner,
            label: label.into(),
        };
        for row in alg.product.iter_mut() {
            row.retain(|(_, c)| !c.is_zero());
            row.sort_by_key(|(k, _)| *k);
        }
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), JordanError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                if self.product[i * n + j] != self.product[j * n + i] {
                    return Err(JordanError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            let ei = self.basis_element(i);
            if self.mul(&self.unit, &ei) != ei {
                return Err(JordanError::UnitFails(i));
            }
        }
        if !self
            .inner
            .is_positive_definite_symmetric()
            .map_err(|_| JordanError::InnerNotPositive)?
        {
            return Err(JordanError::InnerNotPositive);
        }
        // associativity <xy, z> = <y, xz>: G L(e_i) symmetric for all i
        for i in 0..n {
            let li = self.left_mult_matrix(&self.basis_element(i));
            let q = self.inner.mul(&li);
            if !q.is_symmetric() {
                for j in 0..n {
                    for k in 0..n {
                        if q[(j, k)] != q[(k, j)] {
                            return Err(JordanError::InnerNotAssociative(i, j, k));
                        }
                    }
                }
            }
        }
        self.validate_linearized_jordan()
    }

    /// Checks the full linearization of x(x^2 y) = x^2(xy):
    /// [L(a), L(bc)] + [L(b), L(ca)] + [L(c), L(ab)] = 0 for basis a,b,c.
    fn validate_linearized_jordan(&self) -> Result<(), JordanError> {
        let n = self.dim;
        let ls: Vec<Matrix> = (0..n)
            .map(|i| self.left_mult_matrix(&self.basis_element(i)))
            .collect();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let ab = self.mul_basis(a, b);
                    let bc = self.mul_basis(b, c);
                    let ca = self.mul_basis(c, a);
                    for y in 0..n {
                        let ey = self.basis_element(y);
                        let mut acc = vec![Scalar::zero(); n];
                        self.add_comm_term(&mut acc, &ls, a, &bc, &ey);
                        self.add_comm_term(&mut acc, &ls, b, &ca, &ey);
                        self.add_comm_term(&mut acc, &ls, c, &ab, &ey);
                        if acc.iter().any(|x| !x.is_zero()) {
                            return Err(JordanError::JordanIdentityFails(a, b, c));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// acc += [L(e_a), L(w)] y  where w is given sparsely.
    fn add_comm_term(
        &self,
        acc: &mut [Scalar],
        ls: &[Matrix],
        a: usize,
        w: &[(usize, Scalar)],
        y: &[Scalar],
    ) {
        let mut wy = vec![Scalar::zero(); self.dim];
        for (m, c) in w {
            let t = ls[*m].apply(y);
            for (i, ti) in t.iter().enumerate() {
                if !ti.is_zero() {
                    wy[i] += c * ti;
                }
            }
        }
        let first = ls[a].apply(&wy);
        let ay = ls[a].apply(y);
        let mut second = vec![Scalar::zero(); self.dim];
        for (m, c) in w {
            let t = ls[*m].apply(&ay);
            for (i, ti) in t.iter().enumerate() {
                if !ti.is_zero() {
                    second[i] += c * ti;
                }
            }
        }
        for i in 0..self.dim {
            acc[i] += &first[i] - &second[i];
        }
    }

    fn mul_basis(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        self.product[i * self.dim + j].clone()
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.dim]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in &self.product[i * self.dim + j] {
                    out[*k] += &coeff * c;
                }
            }
        }
        out
    }

    pub fn square(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.mul(x, x)
    }

    /// Left multiplication operator L(x) as a matrix.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in &self.product[i * self.dim + j] {
                    let t = &m[(*k, j)] + xi * c;
                    m[(*k, j)] = t;
                }
            }
        }
        m
    }

    /// Quadratic representation P(x) = 2 L(x)^2 - L(x^2).
    pub fn quadratic_rep(&self, x: &[Scalar]) -> Matrix {
        let l = self.left_mult_matrix(x);
        let l2 = self.left_mult_matrix(&self.square(x));
        l.mul(&l).scale(&int(2)).sub(&l2)
    }

    /// Membership in the closed symmetric cone (closure of the squares):
    /// true iff the Gram-symmetrized matrix of L(x) is positive
    /// semidefinite. L(x) is self-adjoint for the associative inner form,
    /// and its spectrum is {(li+lj)/2} over the spectrum {li} of x, so
    /// PSD-ness of L(x) is equivalent to x having nonnegative spectrum.
    pub fn in_cone_closure(&self, x: &[Scalar]) -> bool {
        let q = self.inner.mul(&self.left_mult_matrix(x));
        q.is_psd_symmetric().expect("Gram-symmetrized L(x) is symmetric")
    }

    pub fn is_idempotent(&self, c: &[Scalar]) -> bool {
        self.square(c) == c
    }

    /// Peirce decomposition for a single idempotent: eigenspaces of L(c) at
    /// 0, 1/2, 1. Errors if c is not idempotent or eigenvalues escape.
    pub fn peirce(&self, c: &[Scalar]) -> Result<(Subspace, Subspace, Subspace), JordanError> {
        if !self.is_idempotent(c) {
            return Err(JordanError::NotIdempotent);
        }
        let l = self.left_mult_matrix(c);
        let v0 = l.eigenspace(&Scalar::zero());
        let vh = l.eigenspace(&half());
        let v1 = l.eigenspace(&Scalar::one());
        if v0.dim() + vh.dim() + v1.dim() != self.dim {
            return Err(JordanError::BadPeirce(format!(
                "eigenvalues of L(c) escape {{0,1/2,1}} (dims {} + {} + {} != {})",
                v0.dim(),
                vh.dim(),
                v1.dim(),
                self.dim
            )));
        }
        Ok((v0, vh, v1))
    }

    /// True iff the nonzero idempotent `c` is primitive (dim V_1(c) = 1).
    pub fn is_primitive_idempotent(&self, c: &[Scalar]) -> Result<bool, JordanError> {
        let (_, _, v1) = self.peirce(c)?;
        Ok(v1.dim() == 1)
    }

    /// Restricts the product to a product-closed subspace containing `unit`.
    /// Returns the subalgebra in its own coordinates plus the inclusion.
    pub fn restrict_to_subspace(
        &self,
        s: &Subspace,
        unit: &[Scalar],
    ) -> Result<(JordanAlgebra, Matrix), JordanError> {
        let m = s.dim();
        let basis = s.basis_vectors();
        if !s.contains(unit) {
            return Err(JordanError::Other("unit not inside subspace".into()));
        }
        let mut product = vec![Vec::new(); m * m];
        for i in 0..m {
            for j in i..m {
                let p = self.mul(&basis[i], &basis[j]);
                let coords = s
                    .coordinates(&p)
                    .ok_or_else(|| JordanError::Other("subspace not product-closed".into()))?;
                let row: Vec<(usize, Scalar)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                product[i * m + j] = row.clone();
                product[j * m + i] = row;
            }
        }
        let sub_unit = s.coordinates(unit).unwrap();
        let gram = Matrix::from_fn(m, m, |i, j| {
            let gi = self.inner.apply(&basis[i]);
            gi.iter().zip(&basis[j]).map(|(a, b)| a * b).sum::<Scalar>()
        });
        let alg = JordanAlgebra::new(m, product, sub_unit, gram, format!("{}|sub", self.label))?;
        let incl = Matrix::from_fn(self.dim, m, |a, b| basis[b][a].clone());
        Ok((alg, incl))
    }

    /// V^(j) = V_1(c_1 + ... + c_j) with the restricted product; simple of
    /// rank j.
    pub fn subalgebra_vj(
        &self,
        frame: &JordanFrame,
        j: usize,
    ) -> Result<(JordanAlgebra, Matrix), JordanError> {
        if j == 0 || j > frame.idempotents.len() {
            return Err(JordanError::Other(format!(
                "V^(j) index {j} out of range 1..={}",
                frame.idempotents.len()
            )));
        }
        let mut c = self.zero_element();
        for ci in frame.idempotents.iter().take(j) {
            for (a, x) in ci.iter().enumerate() {
                c[a] += x;
            }
        }
        let (_, _, v1) = self.peirce(&c)?;
        self.restrict_to_subspace(&v1, &c)
    }

    /// Jordan ideal generated by `v` (closure under multiplication by the
    /// whole algebra).
    fn ideal_generated(&self, v: &[Scalar]) -> Subspace {
        let mut current = Subspace::from_vectors(self.dim, vec![v.to_vec()]);
        loop {
            let basis = current.basis_vectors();
            let mut new_vecs = Vec::new();
            for x in &basis {
                for i in 0..self.dim {
                    let p = self.mul(&self.basis_element(i), x);
                    if !current.contains(&p) {
                        new_vecs.push(p);
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

    pub fn is_simple(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        (0..self.dim).all(|i| self.ideal_generated(&self.basis_element(i)).dim() == self.dim)
    }

    /// Identifies the isomorphism class from a frame: rank plus common
    /// off-diagonal Peirce block dimension.
    pub fn identify_family(&self, frame: &JordanFrame) -> Result<JordanFamily, JordanError> {
        let r = frame.idempotents.len();
        if r == 1 {
            if self.dim != 1 {
                return Err(JordanError::Other(
                    "rank 1 with dim > 1 is not a simple euclidean Jordan algebra".into(),
                ));
            }
            return Ok(JordanFamily::Sym(1));
        }
        if r == 2 {
            return Ok(JordanFamily::Mink(self.dim));
        }
        let pd = self.peirce_frame(frame)?;
        let mut off_dims: Vec<usize> = pd.off.values().map(|s| s.dim()).collect();
        off_dims.sort();
        off_dims.dedup();
        if off_dims.len() != 1 {
            return Err(JordanError::Other(
                "off-diagonal Peirce blocks have unequal dimensions (not simple?)".into(),
            ));
        }
        let d = off_dims[0];
        let fam = match d {
            1 => JordanFamily::Sym(r),
            2 => JordanFamily::HermC(r),
            4 => JordanFamily::HermH(r),
            8 if r == 3 => JordanFamily::HermO3,
            _ => {
                return Err(JordanError::Other(format!(
                    "no simple euclidean Jordan algebra with rank {r} and off-block dim {d}"
                )))
            }
        };
        if fam.dim() != self.dim {
            return Err(JordanError::Other(format!(
                "family {fam} has dim {} but algebra has dim {}",
                fam.dim(),
                self.dim
            )));
        }
        Ok(fam)
    }

    /// Full Peirce decomposition for a frame, with the multiplication rules
    /// verified on all basis pairs.
    pub fn peirce_frame(&self, frame: &JordanFrame) -> Result<PeirceDecomposition, JordanError> {
        frame.validate(self)?;
        let r = frame.idempotents.len();
        let ls: Vec<Matrix> = frame
            .idempotents
            .iter()
            .map(|c| self.left_mult_matrix(c))
            .collect();
        let parts = crate::matrix::simultaneous_eigenspaces(&ls)
            .map_err(|e| JordanError::BadPeirce(e.to_string()))?;
        let mut diagonal: Vec<Option<Subspace>> = vec![None; r];
        let mut off: BTreeMap<(usize, usize), Subspace> = BTreeMap::new();
        for (tuple, sub) in parts {
            let ones: Vec<usize> = (0..r).filter(|&k| tuple[k].is_one()).collect();
            let halves: Vec<usize> = (0..r).filter(|&k| tuple[k] == half()).collect();
            let zeros = r - ones.len() - halves.len();
            if ones.len() == 1 && halves.is_empty() && zeros == r - 1 {
                diagonal[ones[0]] = Some(sub);
            } else if ones.is_empty() && halves.len() == 2 && zeros == r - 2 {
                off.insert((halves[0], halves[1]), sub);
            } else {
                return Err(JordanError::BadPeirce(format!(
                    "eigenvalue pattern {:?} is not of Peirce type",
                    tuple.iter().map(scalar::format_scalar).collect::<Vec<_>>()
                )));
            }
        }
        let diagonal: Vec<Subspace> = diagonal
            .into_iter()
            .enumerate()
            .map(|(k, d)| d.ok_or(JordanError::BadPeirce(format!("missing V_{k}"))))
            .collect::<Result<_, _>>()?;
        for (k, d) in diagonal.iter().enumerate() {
            if d.dim() != 1 {
                return Err(JordanError::BadPeirce(format!(
                    "diagonal block V_{k} has dim {} (frame element not primitive)",
                    d.dim()
                )));
            }
        }
        let pd = PeirceDecomposition {
            diagonal,
            off,
            rank: r,
        };
        self.verify_peirce_rules(&pd)?;
        Ok(pd)
    }

    /// The multiplication rules: V_ij V_kl lies in V_i + V_j when
    /// {i,j} = {k,l}, in V_il when j = k and i != l, and vanishes when the
    /// index pairs are disjoint.
    pub fn verify_peirce_rules(&self, pd: &PeirceDecomposition) -> Result<(), JordanError> {
        let blocks = pd.blocks();
        for ((ia, ja), sa) in &blocks {
            for ((ib, jb), sb) in &blocks {
                let target = pd.rule_target(self.dim, (*ia, *ja), (*ib, *jb));
                for va in sa.basis_vectors() {
                    for vb in sb.basis_vectors() {
                        let p = self.mul(&va, &vb);
                        if !target.contains(&p) {
                            return Err(JordanError::BadPeirce(format!(
                                "V_{ia}{ja} . V_{ib}{jb} escapes its target"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Complete system of orthogonal primitive idempotents summing to the unit.
#[derive(Debug, Clone)]
pub struct JordanFrame {
    pub idempotents: Vec<Vec<Scalar>>,
}

impl JordanFrame {
    pub fn new(idempotents: Vec<Vec<Scalar>>) -> Self {
        JordanFrame { idempotents }
    }

    pub fn rank(&self) -> usize {
        self.idempotents.len()
    }

    pub fn validate(&self, v: &JordanAlgebra) -> Result<(), JordanError> {
        let mut sum = v.zero_element();
        for (a, c) in self.idempotents.iter().enumerate() {
            if !v.is_idempotent(c) {
                return Err(JordanError::NotFrame(format!("element {a} not idempotent")));
            }
            if c.iter().all(|x| x.is_zero()) {
                return Err(JordanError::NotFrame(format!("element {a} is zero")));
            }
            if !v.is_primitive_idempotent(c)? {
                return Err(JordanError::NotFrame(format!("element {a} not primitive")));
            }
            for (b, d) in self.idempotents.iter().enumerate() {
                if a != b && v.mul(c, d).iter().any(|x| !x.is_zero()) {
                    return Err(JordanError::NotFrame(format!(
                        "elements {a},{b} not orthogonal"
                    )));
                }
            }
            for (i, x) in c.iter().enumerate() {
                sum[i] += x;
            }
        }
        if sum != v.unit {
            return Err(JordanError::NotFrame(
                "idempotents do not sum to the unit".into(),
            ));
        }
        Ok(())
    }
}

/// Joint Peirce decomposition with respect to a frame.
#[derive(Debug, Clone)]
pub struct PeirceDecomposition {
    pub rank: usize,
    /// V_i = R c_i (1-dimensional).
    pub diagonal: Vec<Subspace>,
    /// V_ij for i < j.
    pub off: BTreeMap<(usize, usize), Subspace>,
}

impl PeirceDecomposition {
    fn blocks(&self) -> Vec<((usize, usize), Subspace)> {
        let mut out = Vec::new();
        for (i, d) in self.diagonal.iter().enumerate() {
            out.push(((i, i), d.clone()));
        }
        for ((i, j), s) in &self.off {
            out.push(((*i, *j), s.clone()));
        }
        out
    }

    fn rule_target(&self, ambient: usize, a: (usize, usize), b: (usize, usize)) -> Subspace {
        let set_a = [a.0, a.1];
        let set_b = [b.0, b.1];
        let inter: Vec<usize> = set_a.iter().filter(|x| set_b.contains(x)).cloned().collect();
        if inter.is_empty() {
            return Subspace::zero(ambient);
        }
        if (a.0 == b.0 && a.1 == b.1) || (a.0 == b.1 && a.1 == b.0) {
            let t = self.diagonal[a.0].clone();
            return t.sum(&self.diagonal[a.1]);
        }
        let shared = inter[0];
        let i = if a.0 == shared { a.1 } else { a.0 };
        let k = if b.0 == shared { b.1 } else { b.0 };
        if i == k {
            return self.diagonal[i].clone();
        }
        let key = (i.min(k), i.max(k));
        match self.off.get(&key) {
            Some(s) => s.clone(),
            None => Subspace::zero(ambient),
        }
    }

    pub fn block(&self, i: usize, j: usize) -> &Subspace {
        if i == j {
            &self.diagonal[i]
        } else {
            &self.off[&(i.min(j), i.max(j))]
        }
    }
}

/// Split/non-split/Peirce-reflection classification of an involutive
/// Jordan automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionClass {
    SplitSimple,
    /// Peirce reflection P(2c - e): the partition sizes (s, r - s).
    PeirceReflection(usize, usize),
    NonSplit,
}

impl fmt::Display for InvolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionClass::SplitSimple => write!(f, "split-simple"),
            InvolutionClass::PeirceReflection(a, b) => write!(f, "peirce-reflection({a},{b})"),
            InvolutionClass::NonSplit => write!(f, "non-split"),
        }
    }
}

/// Identified isomorphism type of the fixed-point algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedJordanType {
    Simple(JordanFamily),
    /// V^(k) + V^(l) for a Peirce reflection (either part may be zero-rank).
    Pair(Option<JordanFamily>, Option<JordanFamily>),
}

impl fmt::Display for FixedJordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedJordanType::Simple(fam) => write!(f, "{fam}"),
            FixedJordanType::Pair(a, b) => {
                match a {
                    Some(x) => write!(f, "{x}")?,
                    None => write!(f, "0")?,
                }
                write!(f, " + ")?;
                match b {
                    Some(x) => write!(f, "{x}"),
                    None => write!(f, "0"),
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct JordanInvolution {
    pub matrix: Matrix,
    pub class: InvolutionClass,
    /// Fixed-point subspace in ambient coordinates.
    pub fixed_subspace: Subspace,
    pub fixed_algebra: JordanAlgebra,
    /// Columns embed fixed-algebra coordinates into ambient coordinates.
    pub fixed_embedding: Matrix,
    /// Frame of the fixed algebra, in ambient coordinates.
    pub fixed_frame_ambient: Vec<Vec<Scalar>>,
    pub fixed_rank: usize,
    pub fixed_type: FixedJordanType,
}

/// Classifies an involutive automorphism, given a frame permuted by sigma.
///
/// Split case: sigma fixes every frame element; the fixed frame certifies
/// rank V^sigma = rank V, and a Peirce reflection is recognized by its +-1
/// block pattern. Non-split case: sigma pairs the frame elements with no
/// fixed points; F+ = {c + sigma(c)} is a frame of V^sigma, each element
/// certified primitive by dim(V_1(d) cap V^sigma) = 1.
pub fn classify_involution(
    v: &JordanAlgebra,
    sigma: &Matrix,
    frame: &JordanFrame,
) -> Result<JordanInvolution, JordanError> {
    if sigma.mul(sigma) != Matrix::identity(v.dim) {
        return Err(JordanError::NotAutomorphism("sigma^2 != id".into()));
    }
    for i in 0..v.dim {
        for j in i..v.dim {
            let lhs = sigma.apply(&v.mul(&v.basis_element(i), &v.basis_element(j)));
            let rhs = v.mul(
                &sigma.apply(&v.basis_element(i)),
                &sigma.apply(&v.basis_element(j)),
            );
            if lhs != rhs {
                return Err(JordanError::NotAutomorphism(format!(
                    "product not preserved on basis pair ({i},{j})"
                )));
            }
        }
    }
    frame.validate(v)?;
    let r = frame.rank();
    let mut image_of: Vec<usize> = Vec::with_capacity(r);
    for c in &frame.idempotents {
        let sc = sigma.apply(c);
        match frame.idempotents.iter().position(|d| *d == sc) {
            Some(p) => image_of.push(p),
            None => {
                return Err(JordanError::NotFrame(
                    "sigma does not permute the supplied frame".into(),
                ))
            }
        }
    }
    let fixed_subspace = sigma.eigenspace(&Scalar::one());
    let (fixed_algebra, fixed_embedding) = v.restrict_to_subspace(&fixed_subspace, &v.unit)?;

    let fixed_points: Vec<usize> = (0..r).filter(|&k| image_of[k] == k).collect();
    if fixed_points.len() == r {
        // split: rank V^sigma = r, certified by the fixed frame
        let fixed_frame_ambient = frame.idempotents.clone();
        let class = match peirce_groups(v, sigma, frame) {
            Ok((a, b)) => InvolutionClass::PeirceReflection(a.len(), b.len()),
            Err(_) => InvolutionClass::SplitSimple,
        };
        let fixed_type = match &class {
            InvolutionClass::PeirceReflection(s, t) => {
                let (group_a, group_b) = peirce_groups(v, sigma, frame)?;
                debug_assert_eq!((group_a.len(), group_b.len()), (*s, *t));
                let part = |take: &[usize]| -> Result<Option<JordanFamily>, JordanError> {
                    if take.is_empty() {
                        return Ok(None);
                    }
                    let mut c = v.zero_element();
                    for &k in take {
                        for (a, x) in frame.idempotents[k].iter().enumerate() {
                            c[a] += x;
                        }
                    }
                    let (_, _, v1) = v.peirce(&c)?;
                    let (sub, _) = v.restrict_to_subspace(&v1, &c)?;
                    let subframe = JordanFrame::new(
                        take.iter()
                            .map(|&k| v1.coordinates(&frame.idempotents[k]).unwrap())
                            .collect(),
                    );
                    Ok(Some(sub.identify_family(&subframe)?))
                };
                FixedJordanType::Pair(part(&group_a)?, part(&group_b)?)
            }
            _ => {
                let subframe = JordanFrame::new(
                    fixed_frame_ambient
                        .iter()
                        .map(|c| fixed_subspace.coordinates(c).unwrap())
                        .collect(),
                );
                FixedJordanType::Simple(fixed_algebra.identify_family(&subframe)?)
            }
        };
        return Ok(JordanInvolution {
            matrix: sigma.clone(),
            class,
            fixed_subspace,
            fixed_algebra,
            fixed_embedding,
            fixed_frame_ambient,
            fixed_rank: r,
            fixed_type,
        });
    }
    if !fixed_points.is_empty() {
        return Err(JordanError::NotFrame(
            "frame is sigma-invariant with a mix of fixed and moved elements".into(),
        ));
    }
    // non-split: perfect pairing
    if r % 2 != 0 {
        return Err(JordanError::Other(
            "fixed-point-free frame action on odd rank contradicts the split/non-split dichotomy"
                .into(),
        ));
    }
    let mut seen = vec![false; r];
    let mut fixed_frame_ambient = Vec::new();
    for k in 0..r {
        if seen[k] {
            continue;
        }
        let p = image_of[k];
        if image_of[p] != k || p == k {
            return Err(JordanError::NotFrame(
                "sigma is not an involutive pairing".into(),
            ));
        }
        seen[k] = true;
        seen[p] = true;
        let d: Vec<Scalar> = frame.idempotents[k]
            .iter()
            .zip(&frame.idempotents[p])
            .map(|(a, b)| a + b)
            .collect();
        // primitivity of d in V^sigma: V_1(d) meets the fixed space in R d
        let (_, _, v1) = v.peirce(&d)?;
        let meet = v1.intersect(&fixed_subspace);
        if meet.dim() != 1 {
            return Err(JordanError::Other(format!(
                "paired idempotent is not primitive in the fixed algebra (dim {})",
                meet.dim()
            )));
        }
        fixed_frame_ambient.push(d);
    }
    let s = fixed_frame_ambient.len();
    let subframe = JordanFrame::new(
        fixed_frame_ambient
            .iter()
            .map(|c| fixed_subspace.coordinates(c).unwrap())
            .collect(),
    );
    subframe.validate(&fixed_algebra)?;
    let fam = fixed_algebra.identify_family(&subframe)?;
    Ok(JordanInvolution {
        matrix: sigma.clone(),
        class: InvolutionClass::NonSplit,
        fixed_subspace,
        fixed_algebra,
        fixed_embedding,
        fixed_frame_ambient,
        fixed_rank: s,
        fixed_type: FixedJordanType::Simple(fam),
    })
}

/// If sigma acts as +-1 on every off-diagonal Peirce block with a
/// 2-colorable sign pattern (+1 within groups, -1 across), returns the
/// groups. This recognizes sigma = P(2c - e) for c a partial frame sum.
fn peirce_groups(
    v: &JordanAlgebra,
    sigma: &Matrix,
    frame: &JordanFrame,
) -> Result<(Vec<usize>, Vec<usize>), JordanError> {
    let r = frame.rank();
    let pd = v.peirce_frame(frame)?;
    let mut sign = BTreeMap::new();
    for ((i, j), s) in &pd.off {
        if s.dim() == 0 {
            continue;
        }
        let mut block_sign: Option<bool> = None;
        for b in s.basis_vectors() {
            let sb = sigma.apply(&b);
            let plus = sb == b;
            let minus = sb.iter().zip(&b).all(|(x, y)| *x == -y.clone());
            let this = if plus {
                true
            } else if minus {
                false
            } else {
                return Err(JordanError::Other("sigma not +-1 on a Peirce block".into()));
            };
            match block_sign {
                None => block_sign = Some(this),
                Some(prev) if prev != this => {
                    return Err(JordanError::Other("mixed signs inside a Peirce block".into()))
                }
                _ => {}
            }
        }
        sign.insert((*i, *j), block_sign.unwrap());
    }
    // 2-coloring: i~j same group iff sign +1
    let mut color = vec![None::<bool>; r];
    color[0] = Some(true);
    loop {
        let mut changed = false;
        for ((i, j), s) in &sign {
            let (ci, cj) = (color[*i], color[*j]);
            let want = |c: bool| if *s { c } else { !c };
            match (ci, cj) {
                (Some(a), None) => {
                    color[*j] = Some(want(a));
                    changed = true;
                }
                (None, Some(b)) => {
                    color[*i] = Some(want(b));
                    changed = true;
                }
                (Some(a), Some(b)) => {
                    if b != want(a) {
                        return Err(JordanError::Other("sign pattern not 2-colorable".into()));
                    }
                }
                (None, None) => {}
            }
        }
        if !changed {
            match color.iter().position(|c| c.is_none()) {
                // disconnected pieces (zero off-blocks) default to group A
                Some(k) => color[k] = Some(true),
                None => break,
            }
        }
    }
    let a: Vec<usize> = (0..r).filter(|&k| color[k] == Some(true)).collect();
    let b: Vec<usize> = (0..r).filter(|&k| color[k] == Some(false)).collect();
    for ((i, j), s) in &sign {
        let same = a.contains(i) == a.contains(j);
        if same != *s {
            return Err(JordanError::Other("sign pattern inconsistent".into()));
        }
    }
    Ok((a, b))
}

// ---------------------------------------------------------------------------
// direct constructions

/// Hermitian matrices over a composition algebra of dimension `ed`
/// (1: Sym(n,R), 2: Herm(n,C), 4: Herm(n,H), 8: Herm(3,O)), with the
/// symmetrized matrix product and the real trace form.
fn herm_family(n: usize, ed: usize, label: &str) -> (JordanAlgebra, JordanFrame) {
    assert!(n >= 1);
    assert!(ed != 8 || n == 3, "octonion hermitian algebras need n = 3");
    // basis: diagonal E_aa, then for a<b and each unit u: u E_ab + conj(u) E_ba
    let mut basis: Vec<CdMatrix> = Vec::new();
    for a in 0..n {
        let mut m = CdMatrix::zeros(n, ed);
        m.set(a, a, CdNumber::one(ed));
        basis.push(m);
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for u in 0..ed {
                let mut m = CdMatrix::zeros(n, ed);
                m.set(a, b, CdNumber::basis(ed, u));
                m.set(b, a, CdNumber::basis(ed, u).conj());
                basis.push(m);
            }
        }
    }
    let dim = basis.len();
    // coordinates of a hermitian matrix in this basis can be read off
    let coords = |m: &CdMatrix| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(dim);
        for a in 0..n {
            v.push(m.at(a, a).real_part());
        }
        for a in 0..n {
            for b in (a + 1)..n {
                for u in 0..ed {
                    v.push(m.at(a, b).coords[u].clone());
                }
            }
        }
        v
    };
    let mut product = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let p = basis[i]
                .mul(&basis[j])
                .add(&basis[j].mul(&basis[i]))
                .scale(&half());
            let row: Vec<(usize, Scalar)> = coords(&p)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            product[i * dim + j] = row.clone();
            product[j * dim + i] = row;
        }
    }
    let mut unit_m = CdMatrix::zeros(n, ed);
    for a in 0..n {
        unit_m.set(a, a, CdNumber::one(ed));
    }
    let unit = coords(&unit_m);
    // trace form <x,y> = Re tr(x . y) with the Jordan product
    let inner = Matrix::from_fn(dim, dim, |i, j| {
        basis[i]
            .mul(&basis[j])
            .add(&basis[j].mul(&basis[i]))
            .scale(&half())
            .real_trace()
    });
    let alg = JordanAlgebra::new(dim, product, unit, inner, label).unwrap();
    let frame = JordanFrame::new((0..n).map(|a| alg.basis_element(a)).collect());
    (alg, frame)
}

pub fn sym(n: usize) -> (JordanAlgebra, JordanFrame) {
    herm_family(n, 1, &format!("Sym({n},R)"))
}

pub fn herm_c(n: usize) -> (JordanAlgebra, JordanFrame) {
    herm_family(n, 2, &format!("Herm({n},C)"))
}

pub fn herm_h(n: usize) -> (JordanAlgebra, JordanFrame) {
    herm_family(n, 4, &format!("Herm({n},H)"))
}

pub fn herm_o3() -> (JordanAlgebra, JordanFrame) {
    herm_family(3, 8, "Herm(3,O)")
}

/// Minkowski algebra M^d = R x R^(d-1) with
/// (x,v)(y,w) = (xy + <v,w>, xw + yv); total dimension d >= 1.
pub fn minkowski(d: usize) -> (JordanAlgebra, JordanFrame) {
    assert!(d >= 1);
    let dim = d;
    let mut product = vec![Vec::new(); dim * dim];
    let mut set = |i: usize, j: usize, v: Vec<(usize, Scalar)>| {
        product[i * dim + j] = v.clone();
        product[j * dim + i] = v;
    };
    set(0, 0, vec![(0, scalar::one())]);
    for k in 1..dim {
        set(0, k, vec![(k, scalar::one())]);
        set(k, k, vec![(0, scalar::one())]);
    }
    let mut unit = vec![Scalar::zero(); dim];
    unit[0] = scalar::one();
    let alg =
        JordanAlgebra::new(dim, product, unit, Matrix::identity(dim), format!("M^{d}")).unwrap();
    let frame = if d == 1 {
        JordanFrame::new(vec![alg.basis_element(0)])
    } else {
        let mut c1 = alg.zero_element();
        c1[0] = half();
        c1[1] = half();
        let mut c2 = alg.zero_element();
        c2[0] = half();
        c2[1] = -half();
        JordanFrame::new(vec![c1, c2])
    };
    (alg, frame)
}

pub fn build_direct(family: &JordanFamily) -> (JordanAlgebra, JordanFrame) {
    match family {
        JordanFamily::Sym(n) => sym(*n),
        JordanFamily::HermC(n) => herm_c(*n),
        JordanFamily::HermH(n) => herm_h(*n),
        JordanFamily::Mink(d) => minkowski(*d),
        JordanFamily::HermO3 => herm_o3(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn sym1_is_plain_multiplication() {
        let (v, frame) = sym(1);
        assert_eq!(v.dim, 1);
        assert_eq!(v.mul(&[int(3)], &[int(5)]), vec![int(15)]);
        assert_eq!(frame.rank(), 1);
    }

    #[test]
    fn sym2_structure() {
        let (v, frame) = sym(2);
        assert_eq!(v.dim, 3);
        frame.validate(&v).unwrap();
        assert_eq!(v.left_mult_matrix(&v.unit), Matrix::identity(3));
        assert_eq!(v.quadratic_rep(&v.unit), Matrix::identity(3));
        // Peirce for c = E_11: V_1 = R E_11, V_1/2 = off, V_0 = R E_22
        let c = v.basis_element(0);
        let (v0, vh, v1) = v.peirce(&c).unwrap();
        assert_eq!((v0.dim(), vh.dim(), v1.dim()), (1, 1, 1));
        assert!(v1.contains(&v.basis_element(0)));
        assert!(v0.contains(&v.basis_element(1)));
        assert!(vh.contains(&v.basis_element(2)));
        assert!(v.is_simple());
        assert_eq!(v.identify_family(&frame).unwrap().canonical(), JordanFamily::Mink(3));
    }

    #[test]
    fn peirce_of_unit_and_zero() {
        let (v, _) = sym(2);
        let (v0, vh, v1) = v.peirce(&v.unit).unwrap();
        assert_eq!((v0.dim(), vh.dim(), v1.dim()), (0, 0, 3));
        let (v0, vh, v1) = v.peirce(&v.zero_element()).unwrap();
        assert_eq!((v0.dim(), vh.dim(), v1.dim()), (3, 0, 0));
    }

    #[test]
    fn cone_membership_examples() {
        let (v, _) = sym(2);
        assert!(v.in_cone_closure(&v.unit));
        let neg_unit: Vec<Scalar> = v.unit.iter().map(|x| -x.clone()).collect();
        assert!(!v.in_cone_closure(&neg_unit));
        // matrix [[1,2],[2,1]]: coordinates (E11, E22, E12+E21) = (1,1,2)
        let m = vec![int(1), int(1), int(2)];
        assert!(!v.in_cone_closure(&m));
        // squares always pass
        let x = vec![int(2), int(-1), frac(1, 3)];
        assert!(v.in_cone_closure(&v.square(&x)));
    }

    #[test]
    fn quadratic_rep_peirce_reflection() {
        let (v, _) = sym(2);
        // P(2c - e) for c = E_11 negates the off-diagonal block
        let c = v.basis_element(0);
        let w: Vec<Scalar> = c.iter().zip(&v.unit).map(|(a, b)| int(2) * a - b).collect();
        let p = v.quadratic_rep(&w);
        assert_eq!(
            p,
            Matrix::from_i64(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]])
        );
    }

    #[test]
    fn minkowski_product_and_frame() {
        let (v, frame) = minkowski(4);
        frame.validate(&v).unwrap();
        let a = vec![int(2), int(1), int(0), int(3)];
        let b = vec![int(1), int(4), int(5), int(0)];
        let p = v.mul(&a, &b);
        assert_eq!(p, vec![int(2 + 4), int(2 * 4 + 1), int(10), int(3)]);
        assert_eq!(v.identify_family(&frame).unwrap(), JordanFamily::Mink(4));
    }

    #[test]
    fn herm2c_and_vj() {
        let (v, frame) = herm_c(2);
        assert_eq!(v.dim, 4);
        frame.validate(&v).unwrap();
        let (sub, _) = v.subalgebra_vj(&frame, 1).unwrap();
        assert_eq!(sub.dim, 1);
        let (sub, _) = v.subalgebra_vj(&frame, 2).unwrap();
        assert_eq!(sub.dim, 4);
        assert!(v.subalgebra_vj(&frame, 3).is_err());
    }

    #[test]
    fn herm_o3_shape() {
        let (v, frame) = herm_o3();
        assert_eq!(v.dim, 27);
        frame.validate(&v).unwrap();
        let pd = v.peirce_frame(&frame).unwrap();
        for s in pd.off.values() {
            assert_eq!(s.dim(), 8);
        }
        assert_eq!(v.identify_family(&frame).unwrap(), JordanFamily::HermO3);
        // V^(2) = R x R^9, V^(1) = R
        let (sub2, _) = v.subalgebra_vj(&frame, 2).unwrap();
        assert_eq!(sub2.dim, 10);
        assert!(sub2.is_simple());
        let (sub1, _) = v.subalgebra_vj(&frame, 1).unwrap();
        assert_eq!(sub1.dim, 1);
    }

    #[test]
    fn classify_involution_minkowski() {
        let (v, _) = minkowski(4);
        let frame_v = JordanFrame::new(vec![
            vec![frac(1, 2), frac(1, 2), int(0), int(0)],
            vec![frac(1, 2), frac(-1, 2), int(0), int(0)],
        ]);
        // alpha|_W = -id: non-split
        let mut neg = Matrix::identity(4);
        for k in 1..4 {
            neg[(k, k)] = int(-1);
        }
        let inv = classify_involution(&v, &neg, &frame_v).unwrap();
        assert_eq!(inv.class, InvolutionClass::NonSplit);
        assert_eq!(inv.fixed_rank, 1);
        assert_eq!(inv.fixed_algebra.dim, 1);

        // alpha fixing exactly one W-direction: Peirce reflection, fixed R x R
        let mut refl = Matrix::identity(4);
        refl[(2, 2)] = int(-1);
        refl[(3, 3)] = int(-1);
        let inv = classify_involution(&v, &refl, &frame_v).unwrap();
        assert!(matches!(inv.class, InvolutionClass::PeirceReflection(1, 1)));
        assert_eq!(inv.fixed_algebra.dim, 2);
        assert_eq!(
            inv.fixed_type,
            FixedJordanType::Pair(Some(JordanFamily::Sym(1)), Some(JordanFamily::Sym(1)))
        );

        // alpha fixing a 2-dim piece of W: split, fixed M^3
        let mut split = Matrix::identity(4);
        split[(3, 3)] = int(-1);
        let inv = classify_involution(&v, &split, &frame_v).unwrap();
        assert_eq!(inv.class, InvolutionClass::SplitSimple);
        assert_eq!(inv.fixed_rank, 2);
        assert_eq!(inv.fixed_type, FixedJordanType::Simple(JordanFamily::Mink(3)));
    }

    #[test]
    fn classify_involution_herm2c_conjugation() {
        let (v, frame) = herm_c(2);
        // entrywise complex conjugation: basis (E11, E22, F12, G12) with
        // G12 = i(E12 - E21) mapping to -G12
        let mut conj = Matrix::identity(4);
        conj[(3, 3)] = int(-1);
        let inv = classify_involution(&v, &conj, &frame).unwrap();
        assert_eq!(inv.class, InvolutionClass::SplitSimple);
        assert_eq!(inv.fixed_rank, 2);
        assert_eq!(inv.fixed_algebra.dim, 3);
        // Sym(2,R), canonically M^3 at rank 2
        assert_eq!(inv.fixed_type, FixedJordanType::Simple(JordanFamily::Mink(3)));
    }

    #[test]
    fn identity_involution_is_degenerate_peirce_reflection() {
        let (v, frame) = sym(2);
        let inv = classify_involution(&v, &Matrix::identity(3), &frame).unwrap();
        assert!(matches!(inv.class, InvolutionClass::PeirceReflection(2, 0)));
        assert_eq!(inv.fixed_rank, 2);
    }

    #[test]
    fn squares_lemma_on_random_elements() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (v, frame) = herm_c(3);
        let pd = v.peirce_frame(&frame).unwrap();
        // indices of coordinates lying in blocks touching frame index 0
        let mut touching: Vec<usize> = Vec::new();
        for (key, s) in &pd.off {
            if key.0 == 0 || key.1 == 0 {
                for b in s.basis_vectors() {
                    for (i, c) in b.iter().enumerate() {
                        if !c.is_zero() {
                            touching.push(i);
                        }
                    }
                }
            }
        }
        for _ in 0..200 {
            let mut x: Vec<Scalar> = (0..v.dim)
                .map(|_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
                .collect();
            // kill everything along c_1 and its off-blocks so that the
            // square has vanishing diagonal component at index 0
            x[0] = Scalar::zero();
            for &i in &touching {
                x[i] = Scalar::zero();
            }
            let y = v.square(&x);
            assert!(y[0].is_zero());
            for &i in &touching {
                assert!(y[i].is_zero(), "squares lemma fails at coordinate {i}");
            }
        }
    }
}
