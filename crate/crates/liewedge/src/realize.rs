//! Exact matrix realizations of the classical hermitian simple Lie
//! algebras, with all distinguished data: Cartan involution, maximal
//! abelian subspace with its coroots H_k, the sl(2) grid (H_k, X_k, Y_k),
//! the H-element H_0, and representatives of the involutions with
//! tau(W_min) = -W_min. so(2,n) and e7(-25) are produced through the KKT
//! construction on M^n and Herm(3,O).

use crate::division::{CdMatrix, CdNumber};
use crate::jordan::{self, JordanAlgebra, JordanFrame};
use crate::kkt::{kkt_lie, KktLie};
use crate::lie::{LieAlgebra, LieElement, LieError, LinearAutomorphism, RootData};
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{self, frac, half, int, Scalar};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Families buildable as realizations, with the CLI parameter conventions
/// `su:p,q`, `sp:n` (= sp(2n,R)), `sostar:n` (= so*(2n)), `so2:n`
/// (= so(2,n)), and `kkt:hermO3` for e7(-25).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Su(usize, usize),
    Sp(usize),
    SoStar(usize),
    So2(usize),
    E7,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, String> {
        let s = s.trim();
        if s == "kkt:hermO3" || s == "e7" {
            return Ok(Family::E7);
        }
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| format!("expected family:params, got `{s}`"))?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad parameter `{x}`"))
            })
            .collect::<Result<_, _>>()?;
        match (name, nums.as_slice()) {
            ("su", [p, q]) => Ok(Family::Su(*p, *q)),
            ("sp", [n]) => Ok(Family::Sp(*n)),
            ("sostar", [n]) => Ok(Family::SoStar(*n)),
            ("so2", [n]) => Ok(Family::So2(*n)),
            _ => Err(format!("unknown family spec `{s}`")),
        }
    }

    pub fn spec_string(&self) -> String {
        match self {
            Family::Su(p, q) => format!("su:{p},{q}"),
            Family::Sp(n) => format!("sp:{n}"),
            Family::SoStar(n) => format!("sostar:{n}"),
            Family::So2(n) => format!("so2:{n}"),
            Family::E7 => "kkt:hermO3".to_string(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Family::Su(p, q) => (p + q) * (p + q) - 1,
            Family::Sp(n) => n * (2 * n + 1),
            Family::SoStar(n) => n * (2 * n - 1),
            Family::So2(n) => (n + 2) * (n + 1) / 2,
            Family::E7 => 133,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Family::Su(_, q) => *q,
            Family::Sp(n) => *n,
            Family::SoStar(n) => n / 2,
            Family::So2(n) => {
                if *n == 1 {
                    1
                } else {
                    2
                }
            }
            Family::E7 => 3,
        }
    }

    pub fn is_tube(&self) -> bool {
        match self {
            Family::Su(p, q) => p == q,
            Family::Sp(_) => true,
            Family::SoStar(n) => n % 2 == 0,
            Family::So2(_) => true,
            Family::E7 => true,
        }
    }

    fn validate_params(&self) -> Result<(), LieError> {
        let ok = match self {
            Family::Su(p, q) => *p >= *q && *q >= 1,
            Family::Sp(n) => *n >= 1,
            Family::SoStar(n) => *n >= 3,
            Family::So2(n) => *n >= 1 && *n != 2,
            Family::E7 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(LieError::Other(format!("parameters out of range for {self}")))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Su(p, q) => write!(f, "su({p},{q})"),
            Family::Sp(n) => write!(f, "sp({},R)", 2 * n),
            Family::SoStar(n) => write!(f, "so*({})", 2 * n),
            Family::So2(n) => write!(f, "so(2,{n})"),
            Family::E7 => write!(f, "e7(-25)"),
        }
    }
}

/// Multiplicity pattern of a restricted root system of type (C_r) or
/// (BC_r) in epsilon coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPattern {
    pub rank: usize,
    pub long_mult: usize,
    /// multiplicity of eps_i +- eps_j (rank >= 2)
    pub middle_mult: Option<usize>,
    /// multiplicity of eps_k (BC only)
    pub short_mult: Option<usize>,
}

impl RootPattern {
    pub fn is_tube(&self) -> bool {
        self.short_mult.is_none()
    }
}

/// Classifies root data whose functionals are already in epsilon
/// coordinates (values alpha(H_k) for the coroots H_k of 2 eps_k):
/// long roots are +-2 eps_k, middles +-eps_i +- eps_j, shorts +-eps_k.
pub fn classify_c_bc(data: &RootData, rank: usize) -> Result<RootPattern, LieError> {
    let mut long_mults = Vec::new();
    let mut middle_mults = Vec::new();
    let mut short_mults = Vec::new();
    for (tuple, space) in &data.roots {
        if tuple.len() != rank {
            return Err(LieError::Other("root tuple length mismatch".into()));
        }
        let nonzero: Vec<&Scalar> = tuple.iter().filter(|c| !c.is_zero()).collect();
        let mult = space.dim();
        match nonzero.as_slice() {
            [c] if c.abs() == int(2) => long_mults.push(mult),
            [c] if c.abs() == int(1) => short_mults.push(mult),
            [a, b] if a.abs() == int(1) && b.abs() == int(1) => middle_mults.push(mult),
            _ => {
                return Err(LieError::Other(format!(
                    "root {:?} is not of (C_r)/(BC_r) shape",
                    tuple.iter().map(scalar::format_scalar).collect::<Vec<_>>()
                )))
            }
        }
    }
    let uniq = |v: &[usize]| -> Result<Option<usize>, LieError> {
        let mut m: Vec<usize> = v.to_vec();
        m.sort();
        m.dedup();
        match m.as_slice() {
            [] => Ok(None),
            [x] => Ok(Some(*x)),
            _ => Err(LieError::Other("non-uniform root multiplicities".into())),
        }
    };
    if long_mults.len() != 2 * rank {
        return Err(LieError::Other(format!(
            "expected {} long roots, found {}",
            2 * rank,
            long_mults.len()
        )));
    }
    let expected_middles = 2 * rank * (rank - 1);
    if middle_mults.len() != expected_middles {
        return Err(LieError::Other(format!(
            "expected {} middle roots, found {}",
            expected_middles,
            middle_mults.len()
        )));
    }
    let shorts = uniq(&short_mults)?;
    if shorts.is_some() && short_mults.len() != 2 * rank {
        return Err(LieError::Other("short roots do not pair up".into()));
    }
    Ok(RootPattern {
        rank,
        long_mult: uniq(&long_mults)?.unwrap_or(1),
        middle_mult: uniq(&middle_mults)?,
        short_mult: shorts,
    })
}

/// A fully validated realization.
pub struct Realization {
    pub family: Family,
    pub algebra: LieAlgebra,
    pub rank: usize,
    /// Coroots H_1..H_r of 2 eps_1..2 eps_r; a basis of the maximal abelian
    /// subspace, with eps_k(H_l) = delta_kl.
    pub a_basis: Vec<LieElement>,
    /// (X_k, Y_k) with (H_k, X_k, Y_k) an sl(2)-triple and theta X_k = -Y_k.
    pub grid: Vec<(LieElement, LieElement)>,
    pub h_element: LieElement,
    pub root_data: RootData,
    pub pattern: RootPattern,
    /// Realified matrix model of each basis vector, when built from one.
    pub realization_matrices: Option<Vec<Matrix>>,
    /// For KKT-backed families: the source Jordan algebra and frame.
    pub jordan_origin: Option<(JordanAlgebra, JordanFrame)>,
}

impl Realization {
    pub fn theta(&self) -> &Matrix {
        &self.algebra.theta().matrix
    }

    pub fn is_tube(&self) -> bool {
        self.pattern.is_tube()
    }

    /// h = sum coords_k H_k.
    pub fn a_element(&self, coords: &[Scalar]) -> LieElement {
        assert_eq!(coords.len(), self.rank);
        let mut out = self.algebra.zero_element();
        for (k, c) in coords.iter().enumerate() {
            for (i, x) in self.a_basis[k].iter().enumerate() {
                out[i] += c * x;
            }
        }
        out
    }

    /// The canonical 3-grading element H = (1/2) sum H_k (tube families).
    pub fn cayley_h(&self) -> LieElement {
        self.a_element(&vec![half(); self.rank])
    }

    /// Coordinates of an element of the Cartan subspace over the original
    /// coroot basis H_1..H_r (not the RREF basis of its span).
    pub fn a_coordinates(&self, h: &LieElement) -> Option<Vec<Scalar>> {
        let a_span = Subspace::from_vectors(self.algebra.dim, self.a_basis.clone());
        let rref_coords = a_span.coordinates(h)?;
        // change of basis: columns are the RREF coordinates of each H_k
        let m = Matrix::from_fn(self.rank, self.rank, |i, j| {
            a_span.coordinates(&self.a_basis[j]).unwrap()[i].clone()
        });
        let inv = m.inverse().ok()?;
        Some(inv.apply(&rref_coords))
    }

    pub fn unit_x(&self) -> LieElement {
        let mut out = self.algebra.zero_element();
        for (x, _) in &self.grid {
            for (i, c) in x.iter().enumerate() {
                out[i] += c;
            }
        }
        out
    }

    pub fn unit_y(&self) -> LieElement {
        let mut out = self.algebra.zero_element();
        for (_, y) in &self.grid {
            for (i, c) in y.iter().enumerate() {
                out[i] += c;
            }
        }
        out
    }

    fn validate(&self) -> Result<(), LieError> {
        let g = &self.algebra;
        let theta = self.theta();
        if self.a_basis.len() != self.rank || self.grid.len() != self.rank {
            return Err(LieError::Other("rank mismatch in grid".into()));
        }
        for (k, (x, y)) in self.grid.iter().enumerate() {
            let h = &self.a_basis[k];
            let two_x: LieElement = x.iter().map(|c| c * int(2)).collect();
            let neg_two_y: LieElement = y.iter().map(|c| c * -int(2)).collect();
            if g.bracket(h, x)? != two_x {
                return Err(LieError::Other(format!("[H_{k}, X_{k}] != 2 X_{k}")));
            }
            if g.bracket(h, y)? != neg_two_y {
                return Err(LieError::Other(format!("[H_{k}, Y_{k}] != -2 Y_{k}")));
            }
            if g.bracket(x, y)? != *h {
                return Err(LieError::Other(format!("[X_{k}, Y_{k}] != H_{k}")));
            }
            let tx = theta.apply(x);
            if tx.iter().zip(y).any(|(a, b)| *a != -b.clone()) {
                return Err(LieError::Other(format!("theta X_{k} != -Y_{k}")));
            }
            // eps-duality: X_k lies in the root space of 2 eps_k
            for (l, hl) in self.a_basis.iter().enumerate() {
                let expect: LieElement = x
                    .iter()
                    .map(|c| c * int(if l == k { 2 } else { 0 }))
                    .collect();
                if g.bracket(hl, x)? != expect {
                    return Err(LieError::Other(format!(
                        "X_{k} is not in the root space of 2 eps_{k}"
                    )));
                }
            }
        }
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                if g
                    .bracket(&self.a_basis[i], &self.a_basis[j])?
                    .iter()
                    .any(|c| !c.is_zero())
                {
                    return Err(LieError::Other("a_basis is not abelian".into()));
                }
            }
        }
        if self.root_data.total_dim() != g.dim {
            return Err(LieError::Other(
                "root data does not exhaust the algebra".into(),
            ));
        }
        let expected = expected_pattern(&self.family);
        if self.pattern != expected {
            return Err(LieError::Other(format!(
                "root pattern {:?} does not match expected {:?}",
                self.pattern, expected
            )));
        }
        if self.pattern.is_tube() != self.family.is_tube() {
            return Err(LieError::Other("tube-type flag mismatch".into()));
        }
        // H-element: ad(H0)^3 = -ad(H0) and ker(ad H0) = fix(theta)
        let ad_h0 = g.ad(&self.h_element);
        let cubed = ad_h0.mul(&ad_h0).mul(&ad_h0);
        if cubed != ad_h0.scale(&-scalar::one()) {
            return Err(LieError::Other("ad(H0)^3 != -ad(H0)".into()));
        }
        let kernel = ad_h0.kernel();
        let k_part = theta.eigenspace(&scalar::one());
        if kernel != k_part {
            return Err(LieError::Other(
                "ker(ad H0) is not the fixed algebra of theta".into(),
            ));
        }
        if g.dim != self.family.dim() {
            return Err(LieError::Other(format!(
                "dimension {} does not match the family formula {}",
                g.dim,
                self.family.dim()
            )));
        }
        Ok(())
    }
}

fn expected_pattern(family: &Family) -> RootPattern {
    match family {
        Family::Su(p, q) => RootPattern {
            rank: *q,
            long_mult: 1,
            middle_mult: if *q >= 2 { Some(2) } else { None },
            short_mult: if p == q { None } else { Some(2 * (p - q)) },
        },
        Family::Sp(n) => RootPattern {
            rank: *n,
            long_mult: 1,
            middle_mult: if *n >= 2 { Some(1) } else { None },
            short_mult: None,
        },
        Family::SoStar(n) => {
            let m = n / 2;
            RootPattern {
                rank: m,
                long_mult: 1,
                middle_mult: if m >= 2 { Some(4) } else { None },
                short_mult: if n % 2 == 0 { None } else { Some(4) },
            }
        }
        Family::So2(n) => RootPattern {
            rank: if *n == 1 { 1 } else { 2 },
            long_mult: 1,
            middle_mult: if *n >= 3 { Some(n - 2) } else { None },
            short_mult: None,
        },
        Family::E7 => RootPattern {
            rank: 3,
            long_mult: 1,
            middle_mult: Some(8),
            short_mult: None,
        },
    }
}

// ---------------------------------------------------------------------------
// matrix-model plumbing

/// Coordinate solver for a fixed basis of composition-algebra matrices.
struct BasisSolver {
    basis: Vec<CdMatrix>,
    pivot_rows: Vec<usize>,
    inv: Matrix,
}

impl BasisSolver {
    fn new(basis: Vec<CdMatrix>) -> Self {
        let dim = basis.len();
        let flat: Vec<Vec<Scalar>> = basis.iter().map(|m| m.flatten()).collect();
        let rows = flat[0].len();
        // independent coordinate positions via RREF of the stacked basis
        let mt = Matrix::from_fn(dim, rows, |i, j| flat[i][j].clone());
        let r = mt.rref();
        let mut pivot_rows = Vec::new();
        for i in 0..dim {
            let c = (0..rows)
                .find(|&c| !r[(i, c)].is_zero())
                .expect("basis vectors are linearly independent");
            pivot_rows.push(c);
        }
        let square = Matrix::from_fn(dim, dim, |i, j| flat[j][pivot_rows[i]].clone());
        let inv = square.inverse().expect("independent basis");
        BasisSolver {
            basis,
            pivot_rows,
            inv,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a matrix in the basis; verified exactly.
    fn coords(&self, m: &CdMatrix) -> Vec<Scalar> {
        let flat = m.flatten();
        let rhs: Vec<Scalar> = self.pivot_rows.iter().map(|&r| flat[r].clone()).collect();
        let x = self.inv.apply(&rhs);
        let mut recon = vec![Scalar::zero(); flat.len()];
        for (j, c) in x.iter().enumerate() {
            if !c.is_zero() {
                for (t, v) in self.basis[j].flatten().iter().enumerate() {
                    if !v.is_zero() {
                        recon[t] += c * v;
                    }
                }
            }
        }
        assert_eq!(recon, flat, "element escapes the model basis");
        x
    }
}

/// Structure-constant Lie algebra from a basis of matrices over an
/// associative composition algebra, with theta(X) = -X^*.
fn algebra_from_matrix_basis(
    basis: Vec<CdMatrix>,
    label: &str,
) -> Result<(LieAlgebra, BasisSolver), LieError> {
    assert!(
        basis[0].entry_dim <= 4,
        "matrix models need associative entries"
    );
    let solver = BasisSolver::new(basis);
    let dim = solver.dim();
    let mut brackets = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in (i + 1)..dim {
            let c = solver.basis[i].commutator(&solver.basis[j]);
            let coords = solver.coords(&c);
            let row: Vec<(usize, Scalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            brackets[i * dim + j] = row.iter().map(|(k, c)| (*k, c.clone())).collect();
            brackets[j * dim + i] = row.into_iter().map(|(k, c)| (k, -c)).collect();
        }
    }
    let algebra = LieAlgebra::new(dim, brackets, label)?;
    let mut theta = Matrix::zeros(dim, dim);
    for j in 0..dim {
        let img = solver.basis[j].conj_transpose().scale(&-scalar::one());
        for (i, c) in solver.coords(&img).iter().enumerate() {
            theta[(i, j)] = c.clone();
        }
    }
    let algebra = algebra.with_cartan_involution(theta)?;
    Ok((algebra, solver))
}

/// Realification via the left regular representation of each entry.
fn realify(m: &CdMatrix) -> Matrix {
    let ed = m.entry_dim;
    assert!(ed <= 4);
    let n = m.n;
    let mut out = Matrix::zeros(n * ed, n * ed);
    for a in 0..n {
        for b in 0..n {
            let q = m.at(a, b);
            if q.is_zero() {
                continue;
            }
            for u in 0..ed {
                let col = q.mul(&CdNumber::basis(ed, u));
                for t in 0..ed {
                    out[(a * ed + t, b * ed + u)] = col.coords[t].clone();
                }
            }
        }
    }
    out
}

fn e_matrix(n: usize, ed: usize, a: usize, b: usize, q: CdNumber) -> CdMatrix {
    let mut m = CdMatrix::zeros(n, ed);
    m.set(a, b, q);
    m
}

fn su_model_basis(p: usize, q: usize) -> Vec<CdMatrix> {
    let n = p + q;
    let ed = 2;
    let one = || CdNumber::one(ed);
    let i_unit = || CdNumber::basis(ed, 1);
    let mut basis: Vec<CdMatrix> = Vec::new();
    // traceless skew-hermitian diagonal: i(E_aa - E_{n-1,n-1})
    for a in 0..(n - 1) {
        basis.push(e_matrix(n, ed, a, a, i_unit()).sub(&e_matrix(n, ed, n - 1, n - 1, i_unit())));
    }
    let same_block = |a: usize, b: usize| (a < p) == (b < p);
    for a in 0..n {
        for b in (a + 1)..n {
            if same_block(a, b) {
                basis.push(e_matrix(n, ed, a, b, one()).sub(&e_matrix(n, ed, b, a, one())));
                basis.push(e_matrix(n, ed, a, b, i_unit()).add(&e_matrix(n, ed, b, a, i_unit())));
            } else {
                basis.push(e_matrix(n, ed, a, b, one()).add(&e_matrix(n, ed, b, a, one())));
                basis.push(e_matrix(n, ed, a, b, i_unit()).sub(&e_matrix(n, ed, b, a, i_unit())));
            }
        }
    }
    basis
}

fn sp_model_basis(n: usize) -> Vec<CdMatrix> {
    let ed = 1;
    let one = || CdNumber::one(ed);
    let nn = 2 * n;
    let mut basis = Vec::new();
    for a in 0..n {
        for b in 0..n {
            basis.push(e_matrix(nn, ed, a, b, one()).sub(&e_matrix(nn, ed, n + b, n + a, one())));
        }
    }
    for a in 0..n {
        for b in a..n {
            basis.push(if a == b {
                e_matrix(nn, ed, a, n + a, one())
            } else {
                e_matrix(nn, ed, a, n + b, one()).add(&e_matrix(nn, ed, b, n + a, one()))
            });
        }
    }
    for a in 0..n {
        for b in a..n {
            basis.push(if a == b {
                e_matrix(nn, ed, n + a, a, one())
            } else {
                e_matrix(nn, ed, n + a, b, one()).add(&e_matrix(nn, ed, n + b, a, one()))
            });
        }
    }
    basis
}

fn so_star_model_basis(n: usize) -> Vec<CdMatrix> {
    let ed = 4;
    let iu = || CdNumber::basis(ed, 1);
    let ju = || CdNumber::basis(ed, 2);
    let ku = || CdNumber::basis(ed, 3);
    let one = || CdNumber::one(ed);
    // model: X^* = j X j entrywise; diagonal entries in R j, off-diagonal
    // pairs x_ba = -(a + bi - cj + dk) for x_ab = a + bi + cj + dk
    let mut basis = Vec::new();
    for a in 0..n {
        basis.push(e_matrix(n, ed, a, a, ju()));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            basis.push(e_matrix(n, ed, a, b, one()).sub(&e_matrix(n, ed, b, a, one())));
            basis.push(e_matrix(n, ed, a, b, iu()).sub(&e_matrix(n, ed, b, a, iu())));
            basis.push(e_matrix(n, ed, a, b, ju()).add(&e_matrix(n, ed, b, a, ju())));
            basis.push(e_matrix(n, ed, a, b, ku()).sub(&e_matrix(n, ed, b, a, ku())));
        }
    }
    basis
}

// ---------------------------------------------------------------------------
// the three matrix families

fn build_su(p: usize, q: usize) -> Result<Realization, LieError> {
    let n = p + q;
    let ed = 2;
    let one = || CdNumber::one(ed);
    let i_unit = || CdNumber::basis(ed, 1);
    let family = Family::Su(p, q);
    let (algebra, solver) = algebra_from_matrix_basis(su_model_basis(p, q), &family.to_string())?;

    // grid: the su(1,1) block in rows/cols (k, p+k)
    let mut a_basis = Vec::new();
    let mut grid = Vec::new();
    for k in 0..q {
        let (a, b) = (k, p + k);
        let h = e_matrix(n, ed, a, b, one()).add(&e_matrix(n, ed, b, a, one()));
        let x = e_matrix(n, ed, a, a, i_unit())
            .sub(&e_matrix(n, ed, a, b, i_unit()))
            .add(&e_matrix(n, ed, b, a, i_unit()))
            .sub(&e_matrix(n, ed, b, b, i_unit()))
            .scale(&half());
        let y = e_matrix(n, ed, a, a, i_unit())
            .add(&e_matrix(n, ed, a, b, i_unit()))
            .sub(&e_matrix(n, ed, b, a, i_unit()))
            .sub(&e_matrix(n, ed, b, b, i_unit()))
            .scale(&-half());
        a_basis.push(solver.coords(&h));
        grid.push((solver.coords(&x), solver.coords(&y)));
    }
    // H0 = i diag(q/n 1_p, -p/n 1_q)
    let mut h0 = CdMatrix::zeros(n, ed);
    for a in 0..n {
        let c = if a < p {
            frac(q as i64, n as i64)
        } else {
            -frac(p as i64, n as i64)
        };
        h0.set(a, a, i_unit().scale(&c));
    }
    let h_element = solver.coords(&h0);
    let realization_matrices = Some(solver.basis.iter().map(realify).collect());
    finish_matrix_realization(family, algebra, a_basis, grid, h_element, realization_matrices)
}

fn build_sp(n: usize) -> Result<Realization, LieError> {
    let ed = 1;
    let one = || CdNumber::one(ed);
    let nn = 2 * n;
    let family = Family::Sp(n);
    let (algebra, solver) = algebra_from_matrix_basis(sp_model_basis(n), &family.to_string())?;
    let mut a_basis = Vec::new();
    let mut grid = Vec::new();
    for k in 0..n {
        let h = e_matrix(nn, ed, k, k, one()).sub(&e_matrix(nn, ed, n + k, n + k, one()));
        let x = e_matrix(nn, ed, k, n + k, one());
        let y = e_matrix(nn, ed, n + k, k, one());
        a_basis.push(solver.coords(&h));
        grid.push((solver.coords(&x), solver.coords(&y)));
    }
    let mut h0 = CdMatrix::zeros(nn, ed);
    for k in 0..n {
        h0.set(k, n + k, one().scale(&half()));
        h0.set(n + k, k, one().scale(&-half()));
    }
    let h_element = solver.coords(&h0);
    let realization_matrices = Some(solver.basis.iter().map(realify).collect());
    finish_matrix_realization(family, algebra, a_basis, grid, h_element, realization_matrices)
}

fn build_so_star(n: usize) -> Result<Realization, LieError> {
    let ed = 4;
    let iu = || CdNumber::basis(ed, 1);
    let ju = || CdNumber::basis(ed, 2);
    let ku = || CdNumber::basis(ed, 3);
    let family = Family::SoStar(n);
    let (algebra, solver) =
        algebra_from_matrix_basis(so_star_model_basis(n), &family.to_string())?;
    let m = n / 2;
    let mut a_basis = Vec::new();
    let mut grid = Vec::new();
    for l in 0..m {
        let (a, b) = (2 * l, 2 * l + 1);
        let h = e_matrix(n, ed, a, b, iu()).sub(&e_matrix(n, ed, b, a, iu()));
        let x = e_matrix(n, ed, a, a, ju())
            .add(&e_matrix(n, ed, b, b, ju()))
            .add(&e_matrix(n, ed, a, b, ku()))
            .sub(&e_matrix(n, ed, b, a, ku()))
            .scale(&half());
        let y = e_matrix(n, ed, a, a, ju())
            .add(&e_matrix(n, ed, b, b, ju()))
            .sub(&e_matrix(n, ed, a, b, ku()))
            .add(&e_matrix(n, ed, b, a, ku()))
            .scale(&-half());
        a_basis.push(solver.coords(&h));
        grid.push((solver.coords(&x), solver.coords(&y)));
    }
    let mut h0 = CdMatrix::zeros(n, ed);
    for a in 0..n {
        h0.set(a, a, ju().scale(&half()));
    }
    let h_element = solver.coords(&h0);
    let realization_matrices = Some(solver.basis.iter().map(realify).collect());
    finish_matrix_realization(family, algebra, a_basis, grid, h_element, realization_matrices)
}

fn finish_matrix_realization(
    family: Family,
    algebra: LieAlgebra,
    a_basis: Vec<LieElement>,
    grid: Vec<(LieElement, LieElement)>,
    h_element: LieElement,
    realization_matrices: Option<Vec<Matrix>>,
) -> Result<Realization, LieError> {
    let rank = family.rank();
    let root_data = algebra.restricted_root_data(&a_basis)?;
    let pattern = classify_c_bc(&root_data, rank)?;
    let r = Realization {
        family,
        algebra,
        rank,
        a_basis,
        grid,
        h_element,
        root_data,
        pattern,
        realization_matrices,
        jordan_origin: None,
    };
    r.validate()?;
    Ok(r)
}

/// KKT-backed realization of the tube family attached to a simple
/// euclidean Jordan algebra: so(2,n) from M^n, e7(-25) from Herm(3,O).
fn build_from_jordan(
    family: Family,
    v: JordanAlgebra,
    frame: JordanFrame,
) -> Result<Realization, LieError> {
    let k: KktLie = kkt_lie(&v)?;
    let theta = k.algebra.theta().matrix.clone();
    let mut a_basis = Vec::new();
    let mut grid = Vec::new();
    for c in &frame.idempotents {
        let x = k.embed_v(c);
        let y: LieElement = theta.apply(&x).iter().map(|t| -t).collect();
        let h = k.algebra.bracket(&x, &y)?;
        a_basis.push(h);
        grid.push((x, y));
    }
    // H0 = (1/2)(x + theta x) for the Jordan unit x in g_1
    let x = k.unit_element.clone();
    let tx = theta.apply(&x);
    let h_element: LieElement = x.iter().zip(&tx).map(|(a, b)| (a + b) * half()).collect();
    let rank = family.rank();
    let root_data = k.algebra.restricted_root_data(&a_basis)?;
    let pattern = classify_c_bc(&root_data, rank)?;
    let r = Realization {
        family,
        algebra: k.algebra,
        rank,
        a_basis,
        grid,
        h_element,
        root_data,
        pattern,
        realization_matrices: None,
        jordan_origin: Some((v, frame)),
    };
    r.validate()?;
    Ok(r)
}

/// Builds a fully validated realization of the family.
pub fn build(family: &Family) -> Result<Realization, LieError> {
    family.validate_params()?;
    match family {
        Family::Su(p, q) => build_su(*p, *q),
        Family::Sp(n) => build_sp(*n),
        Family::SoStar(n) => build_so_star(*n),
        Family::So2(n) => {
            let (v, frame) = jordan::minkowski(*n);
            build_from_jordan(family.clone(), v, frame)
        }
        Family::E7 => {
            let (v, frame) = jordan::herm_o3();
            build_from_jordan(family.clone(), v, frame)
        }
    }
}

// ---------------------------------------------------------------------------
// Weyl normalization and integral hyperbolic elements

/// Unique Weyl-orbit representative: absolute values sorted descending,
/// all signs positive. Returns the representative and the signed
/// permutation used, as (source index, sign).
pub fn weyl_normalize(coords: &[Scalar]) -> (Vec<Scalar>, Vec<(usize, i8)>) {
    let mut tagged: Vec<(Scalar, usize, i8)> = coords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let sign = if c.is_negative() { -1 } else { 1 };
            (c.abs(), i, sign)
        })
        .collect();
    tagged.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let rep = tagged.iter().map(|(v, _, _)| v.clone()).collect();
    let perm = tagged.iter().map(|(_, i, s)| (*i, *s)).collect();
    (rep, perm)
}

/// True iff all root values alpha(h) are integers for h = sum coords_k H_k.
pub fn is_integral_hyperbolic(r: &Realization, coords: &[Scalar]) -> bool {
    r.root_data.roots.iter().all(|(tuple, _)| {
        let val: Scalar = tuple.iter().zip(coords).map(|(a, c)| a * c).sum();
        scalar::is_integer(&val)
    })
}

/// True iff exp(i pi ad h) flips W_min: the family is of tube type and all
/// coordinates lie in Z + 1/2. Cross-validated against the explicit action
/// of exp(i pi ad h) on the H-element whenever h is integral hyperbolic.
pub fn flips_wmin(r: &Realization, coords: &[Scalar]) -> Result<bool, LieError> {
    let by_criterion = r.is_tube() && coords.iter().all(scalar::is_half_odd_integer);
    if is_integral_hyperbolic(r, coords) {
        let m = exp_i_pi_on_root_spaces(r, coords)?;
        let h0m: LieElement = m.apply(&r.h_element);
        let flipped = h0m.iter().zip(&r.h_element).all(|(a, b)| *a == -b.clone());
        if flipped != by_criterion {
            return Err(LieError::Other(
                "flip criterion disagrees with the computed action on H0".into(),
            ));
        }
    }
    Ok(by_criterion)
}

/// exp(i pi ad h) as the rational map acting by (-1)^{alpha(h)} on each
/// root space and +1 on the centralizer, for integral hyperbolic h in
/// a-coordinates.
pub fn exp_i_pi_on_root_spaces(r: &Realization, coords: &[Scalar]) -> Result<Matrix, LieError> {
    let n = r.algebra.dim;
    let mut basis_rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut signed_rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut push = |sub: &Subspace, sign: Scalar| {
        for v in sub.basis_vectors() {
            signed_rows.push(v.iter().map(|c| c * &sign).collect());
            basis_rows.push(v);
        }
    };
    push(&r.root_data.centralizer, scalar::one());
    for (tuple, sub) in &r.root_data.roots {
        let val: Scalar = tuple.iter().zip(coords).map(|(a, c)| a * c).sum();
        if !scalar::is_integer(&val) {
            return Err(LieError::Other("element is not integral hyperbolic".into()));
        }
        let sign = if (val.numer() % num_bigint::BigInt::from(2)).is_zero() {
            scalar::one()
        } else {
            -scalar::one()
        };
        push(sub, sign);
    }
    let p = Matrix::from_fn(n, n, |i, j| basis_rows[j][i].clone());
    let s = Matrix::from_fn(n, n, |i, j| signed_rows[j][i].clone());
    Ok(s.mul(&p.inverse()?))
}

/// For lambda with all coordinates in Z + 1/2: mu_k = +1/2 when
/// lambda_k - 1/2 is even and -1/2 when odd generates the same involution
/// exp(i pi ad .) and has spectrum {-1, 0, 1}.
pub fn half_spectrum_representative(coords: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
    coords
        .iter()
        .map(|c| match scalar::half_integer_parity(c) {
            Some(true) => Ok(half()),
            Some(false) => Ok(-half()),
            None => Err(LieError::Other(format!(
                "coordinate {} is not in Z + 1/2",
                scalar::format_scalar(c)
            ))),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// standard involutions

/// A validated involution representative with tau(W_min) = -W_min.
#[derive(Clone)]
pub struct InvolutionRecord {
    pub phi: LinearAutomorphism,
    /// Equivalence-class slug, stable across runs (the CLI selector).
    pub class: String,
    /// Fixed-algebra label, as in the classification tables.
    pub fixed_label: String,
    pub is_cayley: bool,
    /// Basis of a maximal abelian subspace of fix(tau) in p, inside a.
    pub a_h_basis: Vec<LieElement>,
    pub fixed_dim: usize,
}

fn a_fixed_basis(r: &Realization, phi: &Matrix) -> Vec<LieElement> {
    let a_span = Subspace::from_vectors(r.algebra.dim, r.a_basis.clone());
    let fixed = phi.eigenspace(&scalar::one());
    a_span.intersect(&fixed).basis_vectors()
}

fn make_record(
    r: &Realization,
    phi: Matrix,
    class: &str,
    fixed_label: String,
    is_cayley: bool,
    expected_fixed_dim: usize,
    expected_s: usize,
) -> Result<InvolutionRecord, LieError> {
    let phi = LinearAutomorphism { matrix: phi };
    if !r.algebra.is_involutive_automorphism(&phi) {
        return Err(LieError::NotAutomorphism(format!(
            "class {class}: not an involutive automorphism"
        )));
    }
    let theta = r.theta();
    if theta.mul(&phi.matrix) != phi.matrix.mul(theta) {
        return Err(LieError::Other(format!(
            "class {class}: does not commute with theta"
        )));
    }
    let h0_img = phi.matrix.apply(&r.h_element);
    if h0_img.iter().zip(&r.h_element).any(|(a, b)| *a != -b.clone()) {
        return Err(LieError::Other(format!("class {class}: tau(H0) != -H0")));
    }
    let fixed_dim = phi.matrix.eigenspace(&scalar::one()).dim();
    if fixed_dim != expected_fixed_dim {
        return Err(LieError::Other(format!(
            "class {class}: fixed dim {fixed_dim}, expected {expected_fixed_dim}"
        )));
    }
    let a_h_basis = a_fixed_basis(r, &phi.matrix);
    if a_h_basis.len() != expected_s {
        return Err(LieError::Other(format!(
            "class {class}: dim(a^tau) = {}, expected {expected_s}",
            a_h_basis.len()
        )));
    }
    Ok(InvolutionRecord {
        phi,
        class: class.to_string(),
        fixed_label,
        is_cayley,
        a_h_basis,
        fixed_dim,
    })
}

/// One representative per equivalence class of involutions with
/// tau(W_min) = -W_min for the family: the Cayley involution
/// exp(i pi ad H) on tube families, and compositions tau_H . sigma_g for
/// the standard Jordan involutions sigma of g_1(H) (realized directly as
/// model maps on the matrix families). For so(2,n) the split classes carry
/// one record per orientation under the same class slug: both are needed
/// to realize all listed subalgebras.
pub fn standard_involutions(r: &Realization) -> Result<Vec<InvolutionRecord>, LieError> {
    let mut out = Vec::new();
    match &r.family {
        Family::Su(p, q) => {
            let n = p + q;
            if p == q {
                let tau = r.algebra.exp_i_pi_ad(&r.cayley_h())?;
                out.push(make_record(
                    r,
                    tau,
                    "cayley",
                    format!("sl({p},C)+R"),
                    true,
                    2 * (p * p - 1) + 1,
                    r.rank,
                )?);
            }
            let conj = model_map_su(r, *p, *q, SuMap::Conj)?;
            out.push(make_record(
                r,
                conj,
                "conj",
                format!("so({p},{q})"),
                false,
                n * (n - 1) / 2,
                r.rank,
            )?);
            if p % 2 == 0 && q % 2 == 0 {
                let quat = model_map_su(r, *p, *q, SuMap::Quat)?;
                let (hp, hq) = (p / 2, q / 2);
                out.push(make_record(
                    r,
                    quat,
                    "quat",
                    format!("sp({hp},{hq})"),
                    false,
                    (hp + hq) * (2 * (hp + hq) + 1),
                    q / 2,
                )?);
            }
        }
        Family::Sp(n) => {
            let tau = r.algebra.exp_i_pi_ad(&r.cayley_h())?;
            out.push(make_record(
                r,
                tau.clone(),
                "cayley",
                format!("sl({n},R)+R"),
                true,
                n * n,
                r.rank,
            )?);
            if n % 2 == 0 {
                let adg = model_map_sp(r, *n)?;
                let comp = adg.mul(&tau);
                out.push(make_record(
                    r,
                    comp,
                    "complex",
                    format!("sp({n},C)"),
                    false,
                    n * (n + 1),
                    n / 2,
                )?);
            }
        }
        Family::SoStar(n) => {
            if n % 2 == 0 {
                let tau = r.algebra.exp_i_pi_ad(&r.cayley_h())?;
                out.push(make_record(
                    r,
                    tau,
                    "cayley",
                    format!("su*({n})+R"),
                    true,
                    n * n,
                    r.rank,
                )?);
            }
            let conj = model_map_so_star(r, *n)?;
            out.push(make_record(
                r,
                conj,
                "complex",
                format!("so({n},C)"),
                false,
                n * (n - 1),
                r.rank,
            )?);
        }
        Family::So2(n) => {
            let tau = r.algebra.exp_i_pi_ad(&r.cayley_h())?;
            out.push(make_record(
                r,
                tau.clone(),
                "cayley",
                format!("so(1,1)+so(1,{})", n - 1),
                true,
                1 + (n - 1) * n / 2,
                r.rank,
            )?);
            if *n >= 3 {
                let (v, _) = r.jordan_origin.as_ref().unwrap();
                let k = rebuild_kkt(r)?;
                // non-split: alpha|_W = -id, g^tau = so(1,n)
                let sigma = mink_sigma(v.dim, 0);
                let ext = k.extend_involution(v, &sigma)?;
                let comp = tau.mul(&ext.matrix);
                out.push(make_record(
                    r,
                    comp,
                    "nonsplit",
                    format!("so(1,{n})"),
                    false,
                    n * (n + 1) / 2,
                    1,
                )?);
                // split classes: alpha fixing w of the n-1 directions of W;
                // g^tau = so(n-w,1) + so(1,w), both orientations listed
                for w in 2..=(n - 2) {
                    let q = n - w;
                    let sigma = mink_sigma(v.dim, w);
                    let ext = k.extend_involution(v, &sigma)?;
                    let comp = tau.mul(&ext.matrix);
                    let (lo, hi) = (q.min(*n - q), q.max(*n - q));
                    let fixed_dim =
                        1 + w + w * (w - 1) / 2 + (q - 1) * (q - 2) / 2 + 2 * (q - 1);
                    out.push(make_record(
                        r,
                        comp,
                        &format!("split:{lo}"),
                        format!("so({hi},1)+so(1,{lo})"),
                        false,
                        fixed_dim,
                        2,
                    )?);
                }
            }
        }
        Family::E7 => {
            let tau = r.algebra.exp_i_pi_ad(&r.cayley_h())?;
            out.push(make_record(
                r,
                tau.clone(),
                "cayley",
                "e6(-26)+R".to_string(),
                true,
                79,
                r.rank,
            )?);
            let (v, _) = r.jordan_origin.as_ref().unwrap();
            let k = rebuild_kkt(r)?;
            let sigma = oct_conj_sigma(v);
            let ext = k.extend_involution(v, &sigma)?;
            let comp = tau.mul(&ext.matrix);
            out.push(make_record(
                r,
                comp,
                "split",
                "su*(8)".to_string(),
                false,
                63,
                r.rank,
            )?);
        }
    }
    Ok(out)
}

/// Reconstructs the KKT layout for a KKT-backed realization (deterministic,
/// so the rebuilt algebra coincides with the stored one).
fn rebuild_kkt(r: &Realization) -> Result<KktLie, LieError> {
    let (v, _) = r
        .jordan_origin
        .as_ref()
        .ok_or_else(|| LieError::Other("not a KKT-backed realization".into()))?;
    kkt_lie(v)
}

/// Involution of M^d fixing the first w coordinates of W = R^(d-1).
fn mink_sigma(d: usize, w: usize) -> Matrix {
    let mut m = Matrix::identity(d);
    for k in (1 + w)..d {
        m[(k, k)] = -scalar::one();
    }
    m
}

/// Octonion -> quaternion conjugation on Herm(3,O) coordinates: fixes the
/// quaternionic units 0..4 in each off-diagonal slot, negates the rest.
fn oct_conj_sigma(v: &JordanAlgebra) -> Matrix {
    // basis layout of the hermitian families: n diagonal, then (a<b) x units
    let mut m = Matrix::identity(v.dim);
    let mut idx = 3;
    for _pair in 0..3 {
        for u in 0..8 {
            if u >= 4 {
                m[(idx, idx)] = -scalar::one();
            }
            idx += 1;
        }
    }
    assert_eq!(idx, v.dim);
    m
}

enum SuMap {
    Conj,
    Quat,
}

/// Entrywise model maps on su(p,q), expressed in coordinates.
fn model_map_su(r: &Realization, p: usize, q: usize, which: SuMap) -> Result<Matrix, LieError> {
    let n = p + q;
    let solver = BasisSolver::new(su_model_basis(p, q));
    let mut out = Matrix::zeros(r.algebra.dim, r.algebra.dim);
    for j in 0..r.algebra.dim {
        let img = match which {
            SuMap::Conj => conj_entrywise(&solver.basis[j]),
            SuMap::Quat => {
                let xb = conj_entrywise(&solver.basis[j]);
                let jm = su_quat_j(n, p, 2);
                let jinv = jm.scale(&-scalar::one());
                jm.mul(&xb).mul(&jinv)
            }
        };
        for (i, c) in solver.coords(&img).iter().enumerate() {
            out[(i, j)] = c.clone();
        }
    }
    Ok(out)
}

fn conj_entrywise(m: &CdMatrix) -> CdMatrix {
    let mut out = CdMatrix::zeros(m.n, m.entry_dim);
    for a in 0..m.n {
        for b in 0..m.n {
            out.set(a, b, m.at(a, b).conj());
        }
    }
    out
}

/// Block-diagonal J with [[0,-1],[1,0]] on consecutive index pairs inside
/// the p block and inside the q block; J^2 = -1, J real.
fn su_quat_j(n: usize, p: usize, ed: usize) -> CdMatrix {
    let mut m = CdMatrix::zeros(n, ed);
    let mut pairs = Vec::new();
    let mut a = 0;
    while a + 1 < p {
        pairs.push((a, a + 1));
        a += 2;
    }
    let mut a = p;
    while a + 1 < n {
        pairs.push((a, a + 1));
        a += 2;
    }
    for (a, b) in pairs {
        m.set(a, b, CdNumber::one(ed).scale(&-scalar::one()));
        m.set(b, a, CdNumber::one(ed));
    }
    m
}

/// Ad(diag(g,g)) on sp(2n,R) for g the standard n x n complex structure.
fn model_map_sp(r: &Realization, n: usize) -> Result<Matrix, LieError> {
    let ed = 1;
    let nn = 2 * n;
    let one = || CdNumber::one(ed);
    let solver = BasisSolver::new(sp_model_basis(n));
    let mut g = CdMatrix::zeros(nn, ed);
    let mut a = 0;
    while a + 1 < n {
        for off in [0, n] {
            g.set(a + off, a + 1 + off, one().scale(&-scalar::one()));
            g.set(a + 1 + off, a + off, one());
        }
        a += 2;
    }
    let ginv = g.scale(&-scalar::one());
    let mut out = Matrix::zeros(r.algebra.dim, r.algebra.dim);
    for j in 0..r.algebra.dim {
        let img = g.mul(&solver.basis[j]).mul(&ginv);
        for (i, c) in solver.coords(&img).iter().enumerate() {
            out[(i, j)] = c.clone();
        }
    }
    Ok(out)
}

/// Entrywise conjugation q -> (-i) q i on the so*(2n) model; fixes the
/// complex entries, so the fixed algebra is so(n,C).
fn model_map_so_star(r: &Realization, n: usize) -> Result<Matrix, LieError> {
    let solver = BasisSolver::new(so_star_model_basis(n));
    let neg_i = CdNumber::basis(4, 1).neg();
    let i_u = CdNumber::basis(4, 1);
    let mut out = Matrix::zeros(r.algebra.dim, r.algebra.dim);
    for j in 0..r.algebra.dim {
        let mut img = CdMatrix::zeros(n, 4);
        for a in 0..n {
            for b in 0..n {
                let q = solver.basis[j].at(a, b);
                img.set(a, b, neg_i.mul(q).mul(&i_u));
            }
        }
        for (i, c) in solver.coords(&img).iter().enumerate() {
            out[(i, j)] = c.clone();
        }
    }
    Ok(out)
}

/// Root multiplicities of the realization as a sorted map, for reports.
pub fn multiplicity_summary(r: &Realization) -> BTreeMap<String, usize> {
    r.root_data.multiplicities()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn su11_is_sl2() {
        let r = build(&Family::Su(1, 1)).unwrap();
        assert_eq!(r.algebra.dim, 3);
        assert_eq!(r.rank, 1);
        assert!(r.is_tube());
        assert_eq!(r.pattern.long_mult, 1);
    }

    #[test]
    fn sp2_shape() {
        let r = build(&Family::Sp(2)).unwrap();
        assert_eq!(r.algebra.dim, 10);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pattern.middle_mult, Some(1));
        // 8 roots of C_2 plus a 2-dim centralizer
        assert_eq!(r.root_data.roots.len(), 8);
        assert_eq!(r.root_data.centralizer.dim(), 2);
    }

    #[test]
    fn so_star_6_shape() {
        let r = build(&Family::SoStar(3)).unwrap();
        assert_eq!(r.algebra.dim, 15);
        assert_eq!(r.rank, 1);
        assert!(!r.is_tube());
        assert_eq!(r.pattern.short_mult, Some(4));
    }

    #[test]
    fn su21_is_bc1() {
        let r = build(&Family::Su(2, 1)).unwrap();
        assert_eq!(r.algebra.dim, 8);
        assert_eq!(r.rank, 1);
        assert!(!r.is_tube());
        assert_eq!(r.pattern.short_mult, Some(2));
        assert_eq!(r.pattern.long_mult, 1);
    }

    #[test]
    fn sp4_grading_of_half_sum() {
        let r = build(&Family::Sp(2)).unwrap();
        let h = r.cayley_h();
        let g = r.algebra.grading_of(&h).unwrap();
        assert_eq!(g.part(&int(1)).dim(), 3);
        assert_eq!(g.part(&int(0)).dim(), 4);
        assert_eq!(g.part(&int(-1)).dim(), 3);
    }

    #[test]
    fn so2_via_kkt() {
        let r = build(&Family::So2(3)).unwrap();
        assert_eq!(r.algebra.dim, 10);
        assert_eq!(r.pattern.middle_mult, Some(1));
        let r = build(&Family::So2(1)).unwrap();
        assert_eq!(r.algebra.dim, 3);
        assert!(build(&Family::So2(2)).is_err());
    }

    #[test]
    fn realified_matrices_reproduce_structure_constants() {
        let r = build(&Family::Su(2, 1)).unwrap();
        let mats = r.realization_matrices.as_ref().unwrap();
        for i in 0..r.algebra.dim {
            for j in 0..r.algebra.dim {
                let mut expect = Matrix::zeros(mats[0].rows(), mats[0].cols());
                for (k, c) in r.algebra.structure_row(i, j) {
                    expect = expect.add(&mats[*k].scale(c));
                }
                assert_eq!(mats[i].commutator(&mats[j]), expect);
            }
        }
    }

    #[test]
    fn weyl_normalize_examples() {
        let (rep, _) = weyl_normalize(&[frac(-1, 2), frac(3, 2)]);
        assert_eq!(rep, vec![frac(3, 2), frac(1, 2)]);
        let (rep, _) = weyl_normalize(&[int(0), int(0)]);
        assert_eq!(rep, vec![int(0), int(0)]);
        let (rep, _) = weyl_normalize(&[frac(1, 2), frac(1, 2), frac(1, 2)]);
        assert_eq!(rep, vec![frac(1, 2); 3]);
    }

    #[test]
    fn integral_hyperbolic_and_flips() {
        let r = build(&Family::Sp(2)).unwrap();
        assert!(flips_wmin(&r, &[half(), half()]).unwrap());
        assert!(is_integral_hyperbolic(&r, &[int(1), int(0)]));
        assert!(!flips_wmin(&r, &[int(1), int(0)]).unwrap());
        assert!(flips_wmin(&r, &[frac(3, 2), half()]).unwrap());
        // non-tube: no integral hyperbolic element flips the cone
        let r = build(&Family::Su(2, 1)).unwrap();
        assert!(is_integral_hyperbolic(&r, &[int(1)]));
        assert!(!flips_wmin(&r, &[int(1)]).unwrap());
    }

    #[test]
    fn half_spectrum_rule() {
        assert_eq!(
            half_spectrum_representative(&[frac(3, 2), half()]).unwrap(),
            vec![-half(), half()]
        );
        assert_eq!(
            half_spectrum_representative(&[frac(5, 2)]).unwrap(),
            vec![half()]
        );
        assert!(half_spectrum_representative(&[int(1)]).is_err());
    }

    #[test]
    fn standard_involutions_su22() {
        let r = build(&Family::Su(2, 2)).unwrap();
        let invs = standard_involutions(&r).unwrap();
        let classes: Vec<&str> = invs.iter().map(|i| i.class.as_str()).collect();
        assert_eq!(classes, vec!["cayley", "conj", "quat"]);
        let labels: Vec<&str> = invs.iter().map(|i| i.fixed_label.as_str()).collect();
        assert_eq!(labels, vec!["sl(2,C)+R", "so(2,2)", "sp(1,1)"]);
    }

    #[test]
    fn standard_involutions_sp4_and_sp8() {
        let r = build(&Family::Sp(2)).unwrap();
        let invs = standard_involutions(&r).unwrap();
        let labels: Vec<&str> = invs.iter().map(|i| i.fixed_label.as_str()).collect();
        assert_eq!(labels, vec!["sl(2,R)+R", "sp(2,C)"]);
        let r = build(&Family::Sp(4)).unwrap();
        let invs = standard_involutions(&r).unwrap();
        let labels: Vec<&str> = invs.iter().map(|i| i.fixed_label.as_str()).collect();
        assert_eq!(labels, vec!["sl(4,R)+R", "sp(4,C)"]);
    }

    #[test]
    fn standard_involutions_so_star() {
        let r = build(&Family::SoStar(3)).unwrap();
        let invs = standard_involutions(&r).unwrap();
        assert_eq!(invs.len(), 1);
        assert_eq!(invs[0].fixed_label, "so(3,C)");
        let r = build(&Family::SoStar(4)).unwrap();
        let invs = standard_involutions(&r).unwrap();
        let labels: Vec<&str> = invs.iter().map(|i| i.fixed_label.as_str()).collect();
        assert_eq!(labels, vec!["su*(4)+R", "so(4,C)"]);
    }

    #[test]
    fn standard_involutions_so2() {
        let r = build(&Family::So2(5)).unwrap();
        let invs = standard_involutions(&r).unwrap();
        let labels: Vec<String> = invs.iter().map(|i| i.fixed_label.clone()).collect();
        assert_eq!(
            labels,
            vec![
                "so(1,1)+so(1,4)".to_string(),
                "so(1,5)".to_string(),
                "so(3,1)+so(1,2)".to_string(),
                "so(3,1)+so(1,2)".to_string(),
            ]
        );
        // the two split representatives share one class
        assert_eq!(invs[2].class, "split:2");
        assert_eq!(invs[3].class, "split:2");
    }

    #[test]
    fn standard_involutions_su42() {
        let r = build(&Family::Su(4, 2)).unwrap();
        let invs = standard_involutions(&r).unwrap();
        let labels: Vec<&str> = invs.iter().map(|i| i.fixed_label.as_str()).collect();
        assert_eq!(labels, vec!["so(4,2)", "sp(2,1)"]);
    }
}
