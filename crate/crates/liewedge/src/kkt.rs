//! The Kantor–Koecher–Tits construction: from a simple euclidean Jordan
//! algebra V to the 3-graded hermitian Lie algebra V-bar + str(V) + V, and
//! back from a 3-graded Lie algebra to the Jordan algebra on its top part.

use crate::jordan::{JordanAlgebra, JordanError};
use crate::lie::{LieAlgebra, LieElement, LieError, LinearAutomorphism};
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{half, int, Scalar};
use num_traits::Zero;

/// Derivation algebra Der(V): the kernel of the linear constraint
/// D(xy) = Dx.y + x.Dy over all basis pairs, on dim^2 unknowns.
///
/// The kernel is found by exhibiting the span of the inner derivations
/// [L(x), L(y)] (each verified to satisfy the constraint exactly) and
/// certifying maximality by an exact rank computation on the constraint
/// rows: row insertion stops once rank(constraints) + dim(span) = dim^2.
/// If the constraint rows are exhausted below that rank, the kernel of the
/// accumulated row space is returned instead, so the result is the exact
/// kernel in all cases.
pub fn derivation_algebra(v: &JordanAlgebra) -> Vec<Matrix> {
    let n = v.dim;
    let nn = n * n;
    let ls: Vec<Matrix> = (0..n)
        .map(|i| v.left_mult_matrix(&v.basis_element(i)))
        .collect();

    // candidate span: inner derivations [L_i, L_j]
    let mut inner = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = ls[i].commutator(&ls[j]);
            if !c.is_zero() {
                inner.push(flatten(&c));
            }
        }
    }
    let span = Subspace::from_vectors(nn, inner);
    for row in span.basis_vectors() {
        debug_assert!(is_derivation(v, &unflatten(&row, n)));
    }
    let target_rank = nn - span.dim();

    // constraint rows, inserted until the rank certificate is reached
    let mut acc = RowSpace::new(nn);
    'outer: for i in 0..n {
        for j in i..n {
            let prod_ij = v.mul(&v.basis_element(i), &v.basis_element(j));
            for k in 0..n {
                let mut row = vec![Scalar::zero(); nn];
                // D(e_i e_j)_k = sum_m (e_i e_j)_m D_{km}
                for (m, c) in prod_ij.iter().enumerate() {
                    if !c.is_zero() {
                        row[k * n + m] += c;
                    }
                }
                // -(D e_i . e_j)_k = -sum_b D_{bi} (e_b e_j)_k
                for b in 0..n {
                    let c = &ls[j][(k, b)];
                    if !c.is_zero() {
                        row[b * n + i] -= c;
                    }
                }
                // -(e_i . D e_j)_k
                for b in 0..n {
                    let c = &ls[i][(k, b)];
                    if !c.is_zero() {
                        row[b * n + j] -= c;
                    }
                }
                acc.insert(row);
                if acc.rank() == target_rank {
                    break 'outer;
                }
            }
        }
    }
    let basis = if acc.rank() == target_rank {
        span.basis_vectors()
    } else {
        // derivations beyond the inner span: take the exact kernel
        acc.kernel().basis_vectors()
    };
    basis.iter().map(|r| unflatten(r, n)).collect()
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        v.extend(m.row(i).iter().cloned());
    }
    v
}

fn unflatten(v: &[Scalar], n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| v[i * n + j].clone())
}

fn is_derivation(v: &JordanAlgebra, d: &Matrix) -> bool {
    for i in 0..v.dim {
        for j in i..v.dim {
            let ei = v.basis_element(i);
            let ej = v.basis_element(j);
            let lhs = d.apply(&v.mul(&ei, &ej));
            let mut rhs = v.mul(&d.apply(&ei), &ej);
            for (a, x) in v.mul(&ei, &d.apply(&ej)).iter().enumerate() {
                rhs[a] += x;
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Incremental row-space accumulator kept in reduced echelon form.
struct RowSpace {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut row: Vec<Scalar>) {
        for (r, &p) in self.pivots.iter().enumerate() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for j in 0..self.cols {
                    if !self.rows[r][j].is_zero() {
                        let t = &row[j] - &c * &self.rows[r][j];
                        row[j] = t;
                    }
                }
            }
        }
        let Some(p) = (0..self.cols).find(|&j| !row[j].is_zero()) else {
            return;
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for existing in self.rows.iter_mut() {
            if !existing[p].is_zero() {
                let c = existing[p].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        let t = &existing[j] - &c * &row[j];
                        existing[j] = t;
                    }
                }
            }
        }
        let pos = self
            .pivots
            .iter()
            .position(|&q| q > p)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(pos, p);
        self.rows.insert(pos, row);
    }

    fn kernel(&self) -> Subspace {
        Matrix::from_rows(if self.rows.is_empty() {
            vec![vec![Scalar::zero(); self.cols]]
        } else {
            self.rows.clone()
        })
        .kernel()
    }
}

/// Output of the KKT construction, with the block layout
/// `g = [bars | L(V) | Der(V) | V]`.
pub struct KktLie {
    pub algebra: LieAlgebra,
    pub dv: usize,
    pub dder: usize,
    /// Grading element h = L(e): spectrum {-1, 0, 1} with g_1 = V.
    pub grading_element: LieElement,
    /// The Jordan unit as the element x of g_1 (sl2 partner of h).
    pub unit_element: LieElement,
    /// Der(V) basis matrices, in the order of the Der block.
    pub der_basis: Vec<Matrix>,
    /// RREF span of the flattened Der basis; solves Der coordinates.
    der_span: Subspace,
}

impl KktLie {
    pub fn dim(&self) -> usize {
        3 * self.dv + self.dder
    }

    pub fn bar_index(&self, i: usize) -> usize {
        i
    }

    pub fn l_index(&self, i: usize) -> usize {
        self.dv + i
    }

    pub fn der_index(&self, k: usize) -> usize {
        2 * self.dv + k
    }

    pub fn v_index(&self, i: usize) -> usize {
        2 * self.dv + self.dder + i
    }

    /// Embeds a Jordan element into g_1.
    pub fn embed_v(&self, x: &[Scalar]) -> LieElement {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, c) in x.iter().enumerate() {
            out[self.v_index(i)] = c.clone();
        }
        out
    }

    /// Embeds L(a) into g_0.
    pub fn embed_l(&self, a: &[Scalar]) -> LieElement {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, c) in a.iter().enumerate() {
            out[self.l_index(i)] = c.clone();
        }
        out
    }

    /// Coordinates of a derivation matrix in the Der block.
    pub fn der_coordinates(&self, d: &Matrix) -> Option<Vec<Scalar>> {
        self.der_span.coordinates(&flatten(d))
    }

    /// Extends a Jordan involution sigma of V to the unique involutive Lie
    /// algebra automorphism fixing h and commuting with theta:
    /// sigma on g_1, theta-conjugate on g_-1, conjugation on g_0.
    pub fn extend_involution(
        &self,
        v: &JordanAlgebra,
        sigma: &Matrix,
    ) -> Result<LinearAutomorphism, LieError> {
        let n = self.dim();
        let dv = self.dv;
        let mut m = Matrix::zeros(n, n);
        for j in 0..dv {
            let col = sigma.apply(&v.basis_element(j));
            for (i, c) in col.iter().enumerate() {
                m[(self.v_index(i), self.v_index(j))] = c.clone();
                m[(self.bar_index(i), self.bar_index(j))] = c.clone();
                m[(self.l_index(i), self.l_index(j))] = c.clone();
            }
        }
        for k in 0..self.dder {
            let conj = sigma.mul(&self.der_basis[k]).mul(sigma);
            let coords = self.der_coordinates(&conj).ok_or_else(|| {
                LieError::Other("sigma-conjugate of a derivation left Der(V)".into())
            })?;
            for (t, c) in coords.iter().enumerate() {
                m[(self.der_index(t), self.der_index(k))] = c.clone();
            }
        }
        let phi = LinearAutomorphism { matrix: m };
        if !self.algebra.is_involutive_automorphism(&phi) {
            return Err(LieError::NotAutomorphism(
                "extension of the Jordan involution fails the automorphism check".into(),
            ));
        }
        if phi.matrix.apply(&self.grading_element) != self.grading_element {
            return Err(LieError::Other("extension moves the grading element".into()));
        }
        let theta = &self.algebra.theta().matrix;
        if theta.mul(&phi.matrix) != phi.matrix.mul(theta) {
            return Err(LieError::Other(
                "extension does not commute with theta".into(),
            ));
        }
        Ok(phi)
    }
}

/// Builds the 3-graded Lie algebra g = V-bar + (L(V) + Der(V)) + V with
/// brackets
///   [u, w-bar] = 2 L(u.w) + 2 [L(u), L(w)],
///   [T, u] = T u,   [T, w-bar] = -(T* w)-bar   (T* = L-part - Der-part),
/// the Cartan involution exchanging V and V-bar, and everything validated:
/// antisymmetry, Jacobi, involutivity of theta, positive definite B_theta.
pub fn kkt_lie(v: &JordanAlgebra) -> Result<KktLie, LieError> {
    if !v.is_simple() {
        return Err(LieError::Other(
            "KKT construction expects a simple euclidean Jordan algebra".into(),
        ));
    }
    let dv = v.dim;
    let ders = derivation_algebra(v);
    let dder = ders.len();
    let der_span = Subspace::from_vectors(dv * dv, ders.iter().map(flatten).collect());
    // derivations must be skew-adjoint for the inner form
    for d in &ders {
        let gd = v.inner.mul(d);
        if gd.add(&gd.transpose()) != Matrix::zeros(dv, dv) {
            return Err(LieError::Other(
                "derivation is not skew-adjoint for the inner form".into(),
            ));
        }
    }
    let n = 3 * dv + dder;
    let bar_index = |i: usize| i;
    let l_index = |i: usize| dv + i;
    let der_index = |k: usize| 2 * dv + k;
    let v_index = |i: usize| 2 * dv + dder + i;

    let ls: Vec<Matrix> = (0..dv)
        .map(|i| v.left_mult_matrix(&v.basis_element(i)))
        .collect();
    // cached inner-derivation coordinates for [L_i, L_j], i < j
    let mut comm_coords = vec![Vec::new(); dv * dv];
    for i in 0..dv {
        for j in (i + 1)..dv {
            let c = ls[i].commutator(&ls[j]);
            comm_coords[i * dv + j] = der_span
                .coordinates(&flatten(&c))
                .expect("[L,L] is an inner derivation");
        }
    }

    let mut brackets = vec![Vec::new(); n * n];
    {
        let mut set = |a: usize, b: usize, val: Vec<(usize, Scalar)>| {
            let val: Vec<(usize, Scalar)> =
                val.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            brackets[a * n + b] = val.iter().map(|(k, c)| (*k, c.clone())).collect();
            brackets[b * n + a] = val.into_iter().map(|(k, c)| (k, -c)).collect();
        };

        // [u_i, bar_j] = 2 L(e_i e_j) + 2 [L_i, L_j]
        for i in 0..dv {
            for j in 0..dv {
                let mut val = Vec::new();
                let prod = v.mul(&v.basis_element(i), &v.basis_element(j));
                for (m, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        val.push((l_index(m), c * int(2)));
                    }
                }
                if i != j {
                    let (coords, sign) = if i < j {
                        (&comm_coords[i * dv + j], int(1))
                    } else {
                        (&comm_coords[j * dv + i], -int(1))
                    };
                    for (k, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            val.push((der_index(k), c * int(2) * &sign));
                        }
                    }
                }
                set(v_index(i), bar_index(j), val);
            }
        }
        // [L_i, u_j] = (e_i e_j) in g_1 ; [L_i, bar_j] = -(e_i e_j) in g_-1
        for i in 0..dv {
            for j in 0..dv {
                let prod = v.mul(&v.basis_element(i), &v.basis_element(j));
                set(
                    l_index(i),
                    v_index(j),
                    prod.iter()
                        .enumerate()
                        .map(|(m, c)| (v_index(m), c.clone()))
                        .collect(),
                );
                set(
                    l_index(i),
                    bar_index(j),
                    prod.iter()
                        .enumerate()
                        .map(|(m, c)| (bar_index(m), -c.clone()))
                        .collect(),
                );
            }
        }
        // [D_k, u_j] = (D_k e_j) in g_1 ; [D_k, bar_j] = (D_k e_j) in g_-1
        for k in 0..dder {
            for j in 0..dv {
                let img = ders[k].apply(&v.basis_element(j));
                set(
                    der_index(k),
                    v_index(j),
                    img.iter()
                        .enumerate()
                        .map(|(m, c)| (v_index(m), c.clone()))
                        .collect(),
                );
                set(
                    der_index(k),
                    bar_index(j),
                    img.iter()
                        .enumerate()
                        .map(|(m, c)| (bar_index(m), c.clone()))
                        .collect(),
                );
            }
        }
        // [L_i, L_j] in Der
        for i in 0..dv {
            for j in (i + 1)..dv {
                set(
                    l_index(i),
                    l_index(j),
                    comm_coords[i * dv + j]
                        .iter()
                        .enumerate()
                        .map(|(k, c)| (der_index(k), c.clone()))
                        .collect(),
                );
            }
        }
        // [D_k, L_i] = L(D_k e_i)
        for k in 0..dder {
            for i in 0..dv {
                let img = ders[k].apply(&v.basis_element(i));
                set(
                    der_index(k),
                    l_index(i),
                    img.iter()
                        .enumerate()
                        .map(|(m, c)| (l_index(m), c.clone()))
                        .collect(),
                );
            }
        }
        // [D_a, D_b] in Der
        for a in 0..dder {
            for b in (a + 1)..dder {
                let c = ders[a].commutator(&ders[b]);
                let coords = der_span
                    .coordinates(&flatten(&c))
                    .expect("Der closed under commutators");
                set(
                    der_index(a),
                    der_index(b),
                    coords
                        .iter()
                        .enumerate()
                        .map(|(k, x)| (der_index(k), x.clone()))
                        .collect(),
                );
            }
        }
    }

    let algebra = LieAlgebra::new(n, brackets, format!("kkt({})", v.label))?;
    // theta: u <-> -bar, L -> -L, D -> D
    let mut theta = Matrix::zeros(n, n);
    for i in 0..dv {
        theta[(bar_index(i), v_index(i))] = -int(1);
        theta[(v_index(i), bar_index(i))] = -int(1);
        theta[(l_index(i), l_index(i))] = -int(1);
    }
    for k in 0..dder {
        theta[(der_index(k), der_index(k))] = int(1);
    }
    let algebra = algebra.with_cartan_involution(theta)?;

    let mut grading_element = vec![Scalar::zero(); n];
    for (i, c) in v.unit.iter().enumerate() {
        grading_element[l_index(i)] = c.clone();
    }
    let mut unit_element = vec![Scalar::zero(); n];
    for (i, c) in v.unit.iter().enumerate() {
        unit_element[v_index(i)] = c.clone();
    }
    Ok(KktLie {
        algebra,
        dv,
        dder,
        grading_element,
        unit_element,
        der_basis: ders,
        der_span,
    })
}

/// The Jordan algebra on g_1(h) for a 3-grading with sl(2)-triple
/// (2h, x, y), theta x = -y: product a.b = (1/2)[[a, y], b], unit x, inner
/// form <a,b> = -beta(a, theta b). Validated euclidean simple. Returns the
/// algebra and the subspace g_1(h) it lives on.
pub fn jordan_from_grading(
    g: &LieAlgebra,
    h: &LieElement,
    x: &LieElement,
    y: &LieElement,
) -> Result<(JordanAlgebra, Subspace), JordanError> {
    let err = JordanError::Other;
    let grading = g.grading_of(h).map_err(|e| err(e.to_string()))?;
    let allowed = [int(0), int(1), -int(1), half(), -half()];
    if !grading.spectrum_within(&allowed) {
        return Err(err("grading spectrum is not within {0, +-1/2, +-1}".into()));
    }
    let v_space = grading.part(&int(1));
    if v_space.is_zero() {
        return Err(err("g_1(h) is zero".into()));
    }
    let two_h: LieElement = h.iter().map(|c| c * int(2)).collect();
    let bx = g.bracket(&two_h, x).map_err(|e| err(e.to_string()))?;
    if bx != x.iter().map(|c| c * int(2)).collect::<Vec<_>>() {
        return Err(err("[2h, x] != 2x".into()));
    }
    let by = g.bracket(&two_h, y).map_err(|e| err(e.to_string()))?;
    if by != y.iter().map(|c| c * -int(2)).collect::<Vec<_>>() {
        return Err(err("[2h, y] != -2y".into()));
    }
    let bxy = g.bracket(x, y).map_err(|e| err(e.to_string()))?;
    if bxy != two_h {
        return Err(err("[x, y] != 2h".into()));
    }
    let theta = &g.theta().matrix;
    if theta.apply(x) != y.iter().map(|c| -c).collect::<Vec<_>>() {
        return Err(err("theta x != -y".into()));
    }
    let basis = v_space.basis_vectors();
    let m = basis.len();
    let mut product = vec![Vec::new(); m * m];
    for i in 0..m {
        // [e_i, y] once per i
        let inner_br = g.bracket(&basis[i], y).map_err(|e| err(e.to_string()))?;
        for j in i..m {
            let ab = g
                .bracket(&inner_br, &basis[j])
                .map_err(|e| err(e.to_string()))?;
            let ab: Vec<Scalar> = ab.iter().map(|c| c * half()).collect();
            let coords = v_space
                .coordinates(&ab)
                .ok_or_else(|| err("product escapes g_1(h)".into()))?;
            let row: Vec<(usize, Scalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            product[i * m + j] = row.clone();
            product[j * m + i] = row;
        }
    }
    let unit = v_space
        .coordinates(x)
        .ok_or_else(|| err("unit x does not lie in g_1(h)".into()))?;
    let gram = Matrix::from_fn(m, m, |i, j| {
        let tb = theta.apply(&basis[j]);
        -g.killing_form(&basis[i], &tb).unwrap()
    });
    let alg = JordanAlgebra::new(m, product, unit, gram, format!("{}|g1", g.label))?;
    if !alg.is_simple() {
        return Err(JordanError::NotSimple);
    }
    Ok((alg, v_space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan;
    use crate::scalar::int;

    #[test]
    fn derivations_of_small_algebras() {
        let (v, _) = jordan::sym(2);
        // Der(Sym(2,R)) = so(2): dimension 1
        assert_eq!(derivation_algebra(&v).len(), 1);
        let (v, _) = jordan::sym(3);
        // Der(Sym(3,R)) = so(3): dimension 3
        assert_eq!(derivation_algebra(&v).len(), 3);
        let (v, _) = jordan::herm_c(2);
        // Der(Herm(2,C)) = su(2): dimension 3
        assert_eq!(derivation_algebra(&v).len(), 3);
        let (v, _) = jordan::minkowski(5);
        // Der(M^5) = so(4): dimension 6
        assert_eq!(derivation_algebra(&v).len(), 6);
    }

    #[test]
    fn kkt_of_r_is_sl2() {
        let (v, _) = jordan::sym(1);
        let k = kkt_lie(&v).unwrap();
        assert_eq!(k.algebra.dim, 3);
        let h = &k.grading_element;
        let x = &k.unit_element;
        let y: Vec<Scalar> = {
            let mut v = vec![int(0); 3];
            v[k.bar_index(0)] = int(1);
            v
        };
        assert_eq!(k.algebra.bracket(h, x).unwrap(), *x);
        assert_eq!(
            k.algebra.bracket(x, &y).unwrap(),
            h.iter().map(|c| c * int(2)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn kkt_of_sym2_is_sp4() {
        let (v, _) = jordan::sym(2);
        let k = kkt_lie(&v).unwrap();
        // dim sp(4,R) = 10 = 3 + (3 + 1) + 3
        assert_eq!(k.algebra.dim, 10);
        let grading = k.algebra.grading_of(&k.grading_element).unwrap();
        assert_eq!(grading.part(&int(1)).dim(), 3);
        assert_eq!(grading.part(&int(0)).dim(), 4);
        assert_eq!(grading.part(&int(-1)).dim(), 3);
    }

    #[test]
    fn kkt_round_trip_extracts_same_product() {
        let (v, _) = jordan::herm_c(2);
        let k = kkt_lie(&v).unwrap();
        let y: Vec<Scalar> = {
            let theta = &k.algebra.theta().matrix;
            theta.apply(&k.unit_element).iter().map(|c| -c).collect()
        };
        let (v2, _space) =
            jordan_from_grading(&k.algebra, &k.grading_element, &k.unit_element, &y).unwrap();
        assert_eq!(v2.dim, v.dim);
        // the extracted basis is coordinate-aligned with V, so products agree
        for i in 0..v.dim {
            for j in 0..v.dim {
                assert_eq!(
                    v2.mul(&v2.basis_element(i), &v2.basis_element(j)),
                    v.mul(&v.basis_element(i), &v.basis_element(j))
                );
            }
        }
    }

    #[test]
    fn kkt_of_minkowski_is_so_2_n() {
        let (v, _) = jordan::minkowski(3);
        let k = kkt_lie(&v).unwrap();
        // so(2,3): dim 10
        assert_eq!(k.algebra.dim, 10);
        let (v, _) = jordan::minkowski(4);
        let k = kkt_lie(&v).unwrap();
        // so(2,4): dim 15
        assert_eq!(k.algebra.dim, 15);
    }

    #[test]
    fn extend_identity_involution() {
        let (v, _) = jordan::sym(2);
        let k = kkt_lie(&v).unwrap();
        let phi = k.extend_involution(&v, &Matrix::identity(3)).unwrap();
        assert_eq!(phi.matrix, Matrix::identity(10));
    }

    #[test]
    fn extend_nontrivial_involution_on_minkowski() {
        let (v, _) = jordan::minkowski(3);
        let k = kkt_lie(&v).unwrap();
        let mut sigma = Matrix::identity(3);
        sigma[(2, 2)] = -int(1);
        let phi = k.extend_involution(&v, &sigma).unwrap();
        assert!(k.algebra.is_involutive_automorphism(&phi));
        // tau = tau_h . sigma_g flips the cone; its fixed algebra has the
        // dimension of so(2,1) + so(1,1) = 3 + 1
        let tau_h = k.algebra.exp_i_pi_ad(&k.grading_element).unwrap();
        let tau = tau_h.mul(&phi.matrix);
        let fixed = tau.eigenspace(&int(1));
        assert_eq!(fixed.dim(), 4);
    }
}
