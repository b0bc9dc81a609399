//! The classification pipeline: cones C+-(tau, h) inside the minimal
//! invariant cone, their spans, the subalgebra g(tau,h) they generate, the
//! reduction of h to a {0,+-1/2,+-1}-spectrum representative, the
//! tube-type subalgebra g_t(h), and isomorphism types.

use crate::catalog::{identify_component, IsoComponent, IsoType};
use crate::jordan::{classify_involution, JordanAlgebra, JordanFrame, JordanInvolution};
use crate::kkt::jordan_from_grading;
use crate::lie::{LieAlgebra, LieElement, LieError};
use crate::matrix::{Matrix, Subspace};
use crate::realize::{InvolutionRecord, Realization};
use crate::scalar::{self, frac, half, int, Scalar};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// One structured step in the reduction trace.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TraceStep {
    pub step: String,
    pub info: String,
}

fn step(trace: &mut Vec<TraceStep>, step: &str, info: String) {
    trace.push(TraceStep {
        step: step.to_string(),
        info,
    });
}

/// The computed wedge data for one (realization, tau, h).
#[derive(Debug, Clone)]
pub struct WedgeResult {
    pub c_plus_span: Subspace,
    pub c_minus_span: Subspace,
    pub bracket_part: Subspace,
    pub g_tau_h: Subspace,
    pub iso: IsoType,
    pub h0: LieElement,
    pub trace: Vec<TraceStep>,
}

impl WedgeResult {
    fn zero(g: &LieAlgebra, trace: Vec<TraceStep>) -> WedgeResult {
        WedgeResult {
            c_plus_span: Subspace::zero(g.dim),
            c_minus_span: Subspace::zero(g.dim),
            bracket_part: Subspace::zero(g.dim),
            g_tau_h: Subspace::zero(g.dim),
            iso: IsoType::Zero,
            h0: g.zero_element(),
            trace,
        }
    }

    pub fn iso_components(&self) -> Vec<IsoComponent> {
        self.iso.components()
    }
}

fn fmt_coords(coords: &[Scalar]) -> String {
    coords
        .iter()
        .map(scalar::format_scalar)
        .collect::<Vec<_>>()
        .join(",")
}

/// Reduces h to h0 with g(tau,h) = g(tau,h0) and spec(ad h0) inside
/// {0, +-1/2, +-1}: if the spectrum is already of that form h0 = h;
/// otherwise h must lie in the ambient Cartan subspace and the
/// coordinates are filtered to their +-1/2 entries (the span of the cone
/// slices only sees frame indices with coefficient +-1/2).
pub fn reduce_h(
    r: &Realization,
    tau: &InvolutionRecord,
    h: &LieElement,
    trace: &mut Vec<TraceStep>,
) -> Result<LieElement, LieError> {
    if tau.phi.matrix.apply(h) != *h {
        return Err(LieError::Other("tau(h) != h".into()));
    }
    let grading = r.algebra.grading_of(h)?;
    let allowed = [int(0), int(1), -int(1), half(), -half()];
    if grading.spectrum_within(&allowed) {
        step(trace, "reduce_h", "spectrum already in {0,+-1/2,+-1}".into());
        return Ok(h.clone());
    }
    let lambda = r.a_coordinates(h).ok_or_else(|| {
        LieError::Other("reduction needs h inside the ambient Cartan subspace".into())
    })?;
    let mu: Vec<Scalar> = lambda
        .iter()
        .map(|c| {
            if *c == half() || *c == -half() {
                c.clone()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    let h0 = r.a_element(&mu);
    if tau.phi.matrix.apply(&h0) != h0 {
        return Err(LieError::Other("reduced element is not tau-fixed".into()));
    }
    step(
        trace,
        "reduce_h",
        format!("lambda=({}) -> mu=({})", fmt_coords(&lambda), fmt_coords(&mu)),
    );
    Ok(h0)
}

/// g_t(h0) = g_-1 + [g_-1, g_1] + g_1 for a {0,+-1/2,+-1} grading with
/// nonzero +-1 parts; verified bracket-closed, and identified as a simple
/// hermitian tube-type algebra.
pub fn tube_subalgebra(
    r: &Realization,
    h0: &LieElement,
) -> Result<(Subspace, IsoType), LieError> {
    let g = &r.algebra;
    let grading = g.grading_of(h0)?;
    let plus = grading.part(&int(1));
    let minus = grading.part(&int(-1));
    if plus.is_zero() || minus.is_zero() {
        return Err(LieError::Other("empty +-1 grading parts".into()));
    }
    let mut vectors = plus.basis_vectors();
    vectors.extend(minus.basis_vectors());
    for a in minus.basis_vectors() {
        for b in plus.basis_vectors() {
            vectors.push(g.bracket(&a, &b)?);
        }
    }
    let span = Subspace::from_vectors(g.dim, vectors);
    let closed = g.subalgebra_generated(&span);
    if closed != span {
        return Err(LieError::Other("g_t(h) failed to close under brackets".into()));
    }
    // Cartan candidates: the ambient coroots lying inside
    let candidates: Vec<LieElement> = r
        .a_basis
        .iter()
        .filter(|h| span.contains(h))
        .cloned()
        .collect();
    let iso = identify_iso_type(g, &span, &candidates, Some(r))?;
    match &iso {
        IsoType::Sl2 | IsoType::SuKK(_) | IsoType::Sp2K(_) | IsoType::SoStar4K(_)
        | IsoType::So2N(_) | IsoType::E7 => Ok((span, iso)),
        other => Err(LieError::Other(format!(
            "tube subalgebra is not simple hermitian tube type: {other}"
        ))),
    }
}

/// Span of the squares of a unital Jordan subalgebra (given as a product-
/// closed subspace of V in V-coordinates): equals the subspace itself by
/// polarization through the unit. Certified by checking the squares span
/// and sampling random squares for cone membership.
pub fn cone_section_span(
    v: &JordanAlgebra,
    sub: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<Subspace, LieError> {
    let basis = sub.basis_vectors();
    let mut squares = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let p = v.mul(b, b);
        if !sub.contains(&p) {
            return Err(LieError::Other("subspace is not closed under squaring".into()));
        }
        squares.push(p);
        for c in basis.iter().skip(i + 1) {
            let s: Vec<Scalar> = b.iter().zip(c).map(|(x, y)| x + y).collect();
            let p = v.mul(&s, &s);
            if !sub.contains(&p) {
                return Err(LieError::Other("subspace is not closed under squaring".into()));
            }
            squares.push(p);
        }
    }
    let span = Subspace::from_vectors(v.dim, squares);
    if span != *sub {
        return Err(LieError::Other(
            "squares do not span the cone section (subspace not unital?)".into(),
        ));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let u: Vec<Scalar> = (0..basis.len())
            .map(|_| frac(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
            .collect();
        let mut x = vec![Scalar::zero(); v.dim];
        for (c, b) in u.iter().zip(&basis) {
            for (i, t) in b.iter().enumerate() {
                x[i] += c * t;
            }
        }
        let sq = v.mul(&x, &x);
        if !sub.contains(&sq) || !v.in_cone_closure(&sq) {
            return Err(LieError::Other("sampled square escapes the cone section".into()));
        }
    }
    Ok(span)
}

/// Identifies a bracket-closed subspace: ideal decomposition, then per
/// ideal the restricted root data over the supplied commuting hyperbolic
/// candidates, matched against the catalog. Never guesses: unmatched
/// invariants yield `Unidentified` with the data attached.
pub fn identify_iso_type(
    g: &LieAlgebra,
    sub: &Subspace,
    cartan_candidates: &[LieElement],
    ambient_hint: Option<&Realization>,
) -> Result<IsoType, LieError> {
    if sub.is_zero() {
        return Ok(IsoType::Zero);
    }
    let (s_alg, _incl) = g.restrict_to_subspace(sub)?;
    // abelian case (fixed parts like so(1,1))
    let abelian = (0..s_alg.dim).all(|i| {
        (0..s_alg.dim).all(|j| s_alg.structure_row(i, j).is_empty())
    });
    if abelian {
        return Ok(if s_alg.dim == 1 {
            IsoType::Abelian1
        } else {
            IsoType::Sum(vec![IsoType::Abelian1; s_alg.dim])
        });
    }
    let cands_own: Vec<LieElement> = cartan_candidates
        .iter()
        .filter_map(|t| sub.coordinates(t))
        .collect();
    let cand_span = Subspace::from_vectors(s_alg.dim, cands_own.clone());
    let ideals = s_alg.ideal_decomposition()?;
    let mut parts = Vec::new();
    for ideal in &ideals {
        let a_i = cand_span.intersect(ideal);
        let (i_alg, _) = s_alg.restrict_to_subspace(ideal)?;
        let a_basis = cartan_basis_for(ideal, &cands_own, &a_i);
        let data = i_alg.restricted_root_data(&a_basis)?;
        let first = identify_component(i_alg.dim, &data, a_basis.len(), ambient_hint);
        if !matches!(first, IsoType::Unidentified(_)) {
            parts.push(first);
            continue;
        }
        // The decomposition can fail to separate ideals whose basis vectors
        // mix the factors (e.g. so(2,2) in mixed coordinates). Split along
        // connected components of the root graph instead.
        match split_by_root_components(&i_alg, &a_basis, &data, ambient_hint) {
            Some(mut sub_parts) => parts.append(&mut sub_parts),
            None => parts.push(first),
        }
    }
    Ok(IsoType::Sum(parts).canonical())
}

/// Cartan basis of an ideal: the supplied coroot candidates lying inside
/// the ideal when they span its candidate Cartan (this keeps the epsilon
/// normalization the C/BC classifier expects), the canonicalized span
/// basis otherwise. Coordinates are in the ideal's own basis.
fn cartan_basis_for(
    ideal: &Subspace,
    cands: &[LieElement],
    a_i: &Subspace,
) -> Vec<LieElement> {
    let inside: Vec<&LieElement> = cands.iter().filter(|t| ideal.contains(t)).collect();
    let inside_span = Subspace::from_vectors(
        ideal.ambient_dim(),
        inside.iter().map(|t| (*t).clone()).collect(),
    );
    if inside_span == *a_i && inside.len() == a_i.dim() {
        inside
            .iter()
            .map(|t| ideal.coordinates(t).unwrap())
            .collect()
    } else {
        a_i.basis_vectors()
            .iter()
            .map(|v| ideal.coordinates(v).unwrap())
            .collect()
    }
}

/// Splits a semisimple algebra along the connected components of its root
/// graph (roots connected when their root spaces bracket nontrivially) and
/// identifies each component. Returns None when the data is inconsistent.
fn split_by_root_components(
    i_alg: &LieAlgebra,
    a_basis: &[LieElement],
    data: &crate::lie::RootData,
    ambient_hint: Option<&Realization>,
) -> Option<Vec<IsoType>> {
    let n = data.roots.len();
    if n == 0 {
        return None;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, a: usize) -> usize {
        if parent[a] != a {
            let root = find(parent, parent[a]);
            parent[a] = root;
        }
        parent[a]
    }
    let mut union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for a in 0..n {
        for b in (a + 1)..n {
            let neg: Vec<Scalar> = data.roots[b].0.iter().map(|c| -c.clone()).collect();
            let opposite = data.roots[a].0 == neg;
            let mut connected = opposite;
            if !connected {
                'pairs: for u in data.roots[a].1.basis_vectors() {
                    for w in data.roots[b].1.basis_vectors() {
                        if i_alg
                            .bracket(&u, &w)
                            .ok()?
                            .iter()
                            .any(|c| !c.is_zero())
                        {
                            connected = true;
                            break 'pairs;
                        }
                    }
                }
            }
            if connected {
                union(&mut parent, a, b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for a in 0..n {
        let root = find(&mut parent, a);
        groups.entry(root).or_default().push(a);
    }
    if groups.len() < 2 {
        return None;
    }
    let cand_span = Subspace::from_vectors(i_alg.dim, a_basis.to_vec());
    let mut total = 0usize;
    let mut parts = Vec::new();
    for idx in groups.values() {
        let mut vectors = Vec::new();
        for &a in idx {
            vectors.extend(data.roots[a].1.basis_vectors());
        }
        let span = Subspace::from_vectors(i_alg.dim, vectors);
        let component = i_alg.subalgebra_generated(&span);
        total += component.dim();
        let a_c = cand_span.intersect(&component);
        let (c_alg, _) = i_alg.restrict_to_subspace(&component).ok()?;
        let c_basis = cartan_basis_for(&component, a_basis, &a_c);
        let c_data = c_alg.restricted_root_data(&c_basis).ok()?;
        parts.push(identify_component(
            c_alg.dim,
            &c_data,
            c_basis.len(),
            ambient_hint,
        ));
    }
    if total != i_alg.dim {
        return None;
    }
    Some(parts)
}

/// Everything compute_wedge learns about the Jordan stage, kept for
/// enumeration drivers.
pub struct JordanStage {
    pub v: JordanAlgebra,
    pub v_space: Subspace,
    pub involution: JordanInvolution,
}

/// Runs the full pipeline for tau and an element h of g^tau:
/// reduce h -> tube subalgebra -> extract the Jordan algebra on g_1(h0) ->
/// sigma = -tau restricted there -> fixed algebra V^sigma -> spans of the
/// cone slices and the bracket part -> identification.
pub fn compute_wedge(
    r: &Realization,
    tau: &InvolutionRecord,
    h: &LieElement,
) -> Result<WedgeResult, LieError> {
    let mut trace = Vec::new();
    let g = &r.algebra;
    let theta = r.theta();
    let h0 = reduce_h(r, tau, h, &mut trace)?;
    if h0.iter().all(|c| c.is_zero()) {
        step(&mut trace, "zero", "reduced element vanishes".into());
        return Ok(WedgeResult::zero(g, trace));
    }
    let grading = g.grading_of(&h0)?;
    if grading.part(&int(1)).is_zero() {
        step(&mut trace, "zero", "g_1(h0) vanishes".into());
        return Ok(WedgeResult::zero(g, trace));
    }
    // sign pattern of h0 over the coroots
    let mu = r
        .a_coordinates(&h0)
        .ok_or_else(|| LieError::Other("h0 is outside the ambient Cartan subspace".into()))?;
    let mut plus_idx = Vec::new();
    let mut minus_idx = Vec::new();
    for (k, c) in mu.iter().enumerate() {
        if *c == half() {
            plus_idx.push(k);
        } else if *c == -half() {
            minus_idx.push(k);
        } else if !c.is_zero() {
            return Err(LieError::Other(
                "reduced element has coordinates outside {0, +-1/2}".into(),
            ));
        }
    }
    let (gt_span, gt_iso) = tube_subalgebra(r, &h0)?;
    if gt_span.map(&tau.phi.matrix) != gt_span {
        return Err(LieError::Other("g_t(h0) is not tau-invariant".into()));
    }
    step(
        &mut trace,
        "tube_subalgebra",
        format!("dim {} = {}", gt_span.dim(), gt_iso),
    );
    // sl(2)-partner of 2 h0 aligned with the minimal cone:
    // x = sum_{P} X_k - sum_{M} Y_k
    let mut x = g.zero_element();
    for &k in &plus_idx {
        for (i, c) in r.grid[k].0.iter().enumerate() {
            x[i] += c;
        }
    }
    for &k in &minus_idx {
        for (i, c) in r.grid[k].1.iter().enumerate() {
            x[i] -= c;
        }
    }
    let y: LieElement = theta.apply(&x).iter().map(|c| -c).collect();
    let (v, v_space) =
        jordan_from_grading(g, &h0, &x, &y).map_err(|e| LieError::Other(e.to_string()))?;
    step(
        &mut trace,
        "jordan",
        format!("dim {} on g_1(h0), unit from frame signs (+{:?}, -{:?})", v.dim, plus_idx, minus_idx),
    );
    // sigma = -tau restricted to V
    let v_basis = v_space.basis_vectors();
    let mut sigma = Matrix::zeros(v.dim, v.dim);
    for (j, b) in v_basis.iter().enumerate() {
        let img: LieElement = tau.phi.matrix.apply(b).iter().map(|c| -c).collect();
        let coords = v_space
            .coordinates(&img)
            .ok_or_else(|| LieError::Other("tau does not preserve g_1(h0)".into()))?;
        for (i, c) in coords.iter().enumerate() {
            sigma[(i, j)] = c.clone();
        }
    }
    // frame of V from the grid, with cone-aligned signs
    let mut frame_vecs = Vec::new();
    for &k in &plus_idx {
        frame_vecs.push(v_space.coordinates(&r.grid[k].0).unwrap());
    }
    for &k in &minus_idx {
        let neg_y: LieElement = r.grid[k].1.iter().map(|c| -c).collect();
        frame_vecs.push(v_space.coordinates(&neg_y).unwrap());
    }
    let frame = JordanFrame::new(frame_vecs);
    let inv = classify_involution(&v, &sigma, &frame)
        .map_err(|e| LieError::Other(format!("sigma classification failed: {e}")))?;
    step(
        &mut trace,
        "sigma",
        format!(
            "{} with fixed algebra {} of rank {}",
            inv.class, inv.fixed_type, inv.fixed_rank
        ),
    );
    if inv.fixed_subspace.is_zero() {
        step(&mut trace, "zero", "V^sigma = 0".into());
        return Ok(WedgeResult::zero(g, trace));
    }
    // C+ span: the fixed subalgebra V^sigma, certified by squares
    let span_in_v = cone_section_span(&v, &inv.fixed_subspace, 50, 0x1f2e3d4c)?;
    let c_plus_span = lift_subspace(&span_in_v, &v_basis, g.dim);
    // tau acts by -1 on it
    for b in c_plus_span.basis_vectors() {
        let tb = tau.phi.matrix.apply(&b);
        if tb.iter().zip(&b).any(|(u, w)| *u != -w.clone()) {
            return Err(LieError::Other("C+ span is not in the -1 eigenspace of tau".into()));
        }
    }
    // C- span: theta of C+ (theta(W) = W exchanges the grading levels)
    let c_minus_span = c_plus_span.map(theta);
    for b in c_minus_span.basis_vectors() {
        let tb = tau.phi.matrix.apply(&b);
        if tb.iter().zip(&b).any(|(u, w)| *u != -w.clone()) {
            return Err(LieError::Other("C- span is not in the -1 eigenspace of tau".into()));
        }
        if !grading.part(&-int(1)).contains(&b) {
            return Err(LieError::Other("C- span is not inside g_-1(h0)".into()));
        }
    }
    // bracket part and the full subalgebra
    let mut brackets = Vec::new();
    for a in c_minus_span.basis_vectors() {
        for b in c_plus_span.basis_vectors() {
            brackets.push(g.bracket(&a, &b)?);
        }
    }
    let bracket_part = Subspace::from_vectors(g.dim, brackets);
    let g_tau_h = c_minus_span.sum(&bracket_part).sum(&c_plus_span);
    if g_tau_h.dim() != c_minus_span.dim() + bracket_part.dim() + c_plus_span.dim() {
        return Err(LieError::Other("wedge summands are not independent".into()));
    }
    if g.subalgebra_generated(&g_tau_h) != g_tau_h {
        return Err(LieError::Other("g(tau,h) is not bracket-closed".into()));
    }
    // 3-gradedness: the outer parts are abelian
    for part in [&c_plus_span, &c_minus_span] {
        let basis = part.basis_vectors();
        for (i, a) in basis.iter().enumerate() {
            for b in basis.iter().skip(i + 1) {
                if g.bracket(a, b)?.iter().any(|c| !c.is_zero()) {
                    return Err(LieError::Other("cone span is not abelian".into()));
                }
            }
        }
    }
    step(
        &mut trace,
        "spans",
        format!(
            "dims: C- {} | [C-,C+] {} | C+ {}",
            c_minus_span.dim(),
            bracket_part.dim(),
            c_plus_span.dim()
        ),
    );
    // Cartan candidates: coroots of the fixed frame
    let mut candidates = Vec::new();
    for d in &inv.fixed_frame_ambient {
        let d_amb = lift_vector(d, &v_basis, g.dim);
        let td: LieElement = theta.apply(&d_amb).iter().map(|c| -c).collect();
        candidates.push(g.bracket(&d_amb, &td)?);
    }
    let iso = identify_iso_type(g, &g_tau_h, &candidates, Some(r))?;
    step(&mut trace, "identify", iso.to_string());
    Ok(WedgeResult {
        c_plus_span,
        c_minus_span,
        bracket_part,
        g_tau_h,
        iso,
        h0,
        trace,
    })
}

fn lift_vector(coords: &[Scalar], basis: &[LieElement], ambient: usize) -> LieElement {
    let mut out = vec![Scalar::zero(); ambient];
    for (c, b) in coords.iter().zip(basis) {
        if !c.is_zero() {
            for (i, t) in b.iter().enumerate() {
                out[i] += c * t;
            }
        }
    }
    out
}

fn lift_subspace(sub: &Subspace, basis: &[LieElement], ambient: usize) -> Subspace {
    Subspace::from_vectors(
        ambient,
        sub.basis_vectors()
            .iter()
            .map(|v| lift_vector(v, basis, ambient))
            .collect(),
    )
}

/// Enumeration scope: Table 3 uses partial frame sums only; Table 1 also
/// realizes the split patterns h = (1/2)(sum_{k in A} H_k - sum_{k in B} H_k)
/// available for Cayley involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    PartialSums,
    WithSplits,
}

/// One enumerated case: a readable descriptor of h plus the computed type.
#[derive(Debug, Clone)]
pub struct EnumeratedCase {
    pub h_desc: String,
    pub iso: IsoType,
}

/// Enumerates representatives h for a fixed involution class (several
/// records may share a class; the union over them is taken). For Cayley
/// involutions h ranges over partial sums (1/2) sum_{k<=s} H_k and, in
/// `WithSplits` mode, all signed patterns; otherwise h_k = sum_{i<=k}
/// L(d_i) over the frame {d_i} of V^{-tau}.
pub fn enumerate_table(
    r: &Realization,
    records: &[&InvolutionRecord],
    mode: EnumerationMode,
) -> Result<Vec<EnumeratedCase>, LieError> {
    let mut out: Vec<EnumeratedCase> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut push = |case: EnumeratedCase, out: &mut Vec<EnumeratedCase>| {
        let key = format!("{}|{}", case.h_desc, case.iso);
        if seen.insert(key) {
            out.push(case);
        }
    };
    for tau in records {
        if tau.is_cayley {
            let r_rank = r.rank;
            let mut patterns: Vec<(usize, usize)> = (0..=r_rank).map(|s| (s, 0)).collect();
            if mode == EnumerationMode::WithSplits {
                for a in 0..=r_rank {
                    for b in 0..=(r_rank - a) {
                        patterns.push((a, b));
                    }
                }
            }
            patterns.sort();
            patterns.dedup();
            for (a, b) in patterns {
                let mut coords = vec![Scalar::zero(); r_rank];
                for c in coords.iter_mut().take(a) {
                    *c = half();
                }
                for c in coords.iter_mut().skip(a).take(b) {
                    *c = -half();
                }
                let h = r.a_element(&coords);
                let res = compute_wedge(r, tau, &h)?;
                push(
                    EnumeratedCase {
                        h_desc: format!("h=({})", fmt_coords(&coords)),
                        iso: res.iso,
                    },
                    &mut out,
                );
            }
        } else {
            // the Jordan algebra of the big 3-grading element H
            let h_big = r.cayley_h();
            let x = r.unit_x();
            let y = r.unit_y();
            let stage = jordan_stage(r, tau, &h_big, &x, &y)?;
            let d_frames = &stage.involution.fixed_frame_ambient;
            // h_k = sum_{i<=k} L(d_i), realized as (1/2)[d_i, -theta d_i]
            let mut acc = r.algebra.zero_element();
            let mut cases = vec![(String::from("h=0"), r.algebra.zero_element())];
            let v_basis = stage.v_space.basis_vectors();
            for (k, d) in d_frames.iter().enumerate() {
                let d_amb = lift_vector(d, &v_basis, r.algebra.dim);
                let td: LieElement = r.theta().apply(&d_amb).iter().map(|c| -c).collect();
                let coroot = r.algebra.bracket(&d_amb, &td)?;
                for (i, c) in coroot.iter().enumerate() {
                    acc[i] += c * half();
                }
                cases.push((format!("h=L(d_1..d_{})", k + 1), acc.clone()));
            }
            for (desc, h) in cases {
                let res = compute_wedge(r, tau, &h)?;
                push(
                    EnumeratedCase {
                        h_desc: desc,
                        iso: res.iso,
                    },
                    &mut out,
                );
            }
        }
    }
    Ok(out)
}

/// Builds the Jordan stage for an explicit 3-grading element (used by the
/// enumeration driver and the trichotomy checks): extracts V = g_1(h),
/// sigma = -tau|V, and classifies sigma against the grid frame.
pub fn jordan_stage(
    r: &Realization,
    tau: &InvolutionRecord,
    h: &LieElement,
    x: &LieElement,
    y: &LieElement,
) -> Result<JordanStage, LieError> {
    let g = &r.algebra;
    let (v, v_space) =
        jordan_from_grading(g, h, x, y).map_err(|e| LieError::Other(e.to_string()))?;
    let v_basis = v_space.basis_vectors();
    let mut sigma = Matrix::zeros(v.dim, v.dim);
    for (j, b) in v_basis.iter().enumerate() {
        let img: LieElement = tau.phi.matrix.apply(b).iter().map(|c| -c).collect();
        let coords = v_space
            .coordinates(&img)
            .ok_or_else(|| LieError::Other("tau does not preserve g_1(h)".into()))?;
        for (i, c) in coords.iter().enumerate() {
            sigma[(i, j)] = c.clone();
        }
    }
    let frame_vecs: Vec<Vec<Scalar>> = r
        .grid
        .iter()
        .map(|(xk, _)| {
            v_space
                .coordinates(xk)
                .ok_or_else(|| LieError::Other("grid element outside g_1(h)".into()))
        })
        .collect::<Result<_, _>>()?;
    let frame = JordanFrame::new(frame_vecs);
    let involution = classify_involution(&v, &sigma, &frame)
        .map_err(|e| LieError::Other(format!("sigma classification failed: {e}")))?;
    Ok(JordanStage {
        v,
        v_space,
        involution,
    })
}

/// For a non-tube family: the canonical h from the fixed Cartan subspace,
/// the tube subalgebra g_t(h) it generates, and the fixed algebra
/// g_t(h)^tau, both identified.
pub fn nontube_restriction_check(
    r: &Realization,
    tau: &InvolutionRecord,
) -> Result<(IsoType, IsoType), LieError> {
    let s = tau.a_h_basis.len();
    let mut h = r.algebra.zero_element();
    for k in &tau.a_h_basis {
        for (i, c) in k.iter().enumerate() {
            h[i] += c * half();
        }
    }
    let _ = s;
    let (gt_span, gt_iso) = tube_subalgebra(r, &h)?;
    // fixed part of tau inside g_t(h)
    let fixed = tau.phi.matrix.eigenspace(&scalar::one());
    let gt_tau = gt_span.intersect(&fixed);
    let candidates: Vec<LieElement> = tau.a_h_basis.clone();
    let fixed_iso = identify_iso_type(&r.algebra, &gt_tau, &candidates, Some(r))?;
    Ok((gt_iso, fixed_iso))
}

/// Per-case JSON report, the stable machine interface.
#[derive(Debug, Clone, Serialize)]
pub struct WedgeReport {
    pub schema_version: u32,
    pub algebra: String,
    pub params: Vec<usize>,
    pub tau_class: String,
    pub h: String,
    pub g_tau_h_dim: usize,
    pub iso: Vec<IsoComponent>,
    pub trace: Vec<TraceStep>,
}

pub const SCHEMA_VERSION: u32 = 1;

pub fn wedge_report(
    r: &Realization,
    tau: &InvolutionRecord,
    h_desc: &str,
    result: &WedgeResult,
) -> WedgeReport {
    let params = match &r.family {
        crate::realize::Family::Su(p, q) => vec![*p, *q],
        crate::realize::Family::Sp(n) => vec![*n],
        crate::realize::Family::SoStar(n) => vec![*n],
        crate::realize::Family::So2(n) => vec![*n],
        crate::realize::Family::E7 => vec![],
    };
    WedgeReport {
        schema_version: SCHEMA_VERSION,
        algebra: r.family.to_string(),
        params,
        tau_class: tau.class.clone(),
        h: h_desc.to_string(),
        g_tau_h_dim: result.g_tau_h.dim(),
        iso: result.iso_components(),
        trace: result.trace.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::cached_realization;
    use crate::realize::{standard_involutions, Family};

    fn records(r: &Realization) -> Vec<InvolutionRecord> {
        standard_involutions(r).unwrap()
    }

    #[test]
    fn su22_cayley_full_wedge_is_whole_algebra() {
        let r = cached_realization(&Family::Su(2, 2)).unwrap();
        let invs = records(&r);
        let cayley = &invs[0];
        let h = r.cayley_h();
        let res = compute_wedge(&r, cayley, &h).unwrap();
        assert_eq!(res.iso, IsoType::SuKK(2));
        assert_eq!(res.g_tau_h.dim(), 15);
    }

    #[test]
    fn su22_cayley_zero_wedge() {
        let r = cached_realization(&Family::Su(2, 2)).unwrap();
        let invs = records(&r);
        let h = r.algebra.zero_element();
        let res = compute_wedge(&r, &invs[0], &h).unwrap();
        assert_eq!(res.iso, IsoType::Zero);
    }

    #[test]
    fn sp4_cayley_split_gives_direct_sum() {
        let r = cached_realization(&Family::Sp(2)).unwrap();
        let invs = records(&r);
        let cayley = &invs[0];
        // h = (1/2)(H_1 - H_2): the wedge splits into sl2 + sl2
        let h = r.a_element(&[half(), -half()]);
        let res = compute_wedge(&r, cayley, &h).unwrap();
        assert_eq!(res.iso, IsoType::Sum(vec![IsoType::Sl2, IsoType::Sl2]));
        assert_eq!(res.g_tau_h.dim(), 6);
    }

    #[test]
    fn sp4_cayley_enumeration_matches_table() {
        let r = cached_realization(&Family::Sp(2)).unwrap();
        let invs = records(&r);
        let cayley = &invs[0];
        let cases = enumerate_table(&r, &[cayley], EnumerationMode::WithSplits).unwrap();
        let mut isos: Vec<String> = cases.iter().map(|c| c.iso.to_string()).collect();
        isos.sort();
        isos.dedup();
        assert_eq!(
            isos,
            vec!["0", "sl(2,R)", "sl(2,R)+sl(2,R)", "sp(4,R)"]
        );
    }

    #[test]
    fn su21_conj_gives_sl2() {
        // su(2,1) with g^tau = so(2,1): the only nonzero wedge is sl(2,R)
        let r = cached_realization(&Family::Su(2, 1)).unwrap();
        let invs = records(&r);
        assert_eq!(invs[0].class, "conj");
        let cases = enumerate_table(&r, &[&invs[0]], EnumerationMode::PartialSums).unwrap();
        let nonzero: Vec<String> = cases
            .iter()
            .filter(|c| c.iso != IsoType::Zero)
            .map(|c| c.iso.to_string())
            .collect();
        assert_eq!(nonzero, vec!["sl(2,R)"]);
    }

    #[test]
    fn reduction_soundness_example() {
        let r = cached_realization(&Family::Sp(2)).unwrap();
        let invs = records(&r);
        let cayley = &invs[0];
        // lambda = (1/2, 2): reduces to (1/2, 0)
        let h = r.a_element(&[half(), int(2)]);
        let res = compute_wedge(&r, cayley, &h).unwrap();
        let h2 = r.a_element(&[half(), int(0)]);
        let res2 = compute_wedge(&r, cayley, &h2).unwrap();
        assert_eq!(res.g_tau_h, res2.g_tau_h);
        assert_eq!(res.iso, IsoType::Sl2);
    }

    #[test]
    fn nontube_su21() {
        let r = cached_realization(&Family::Su(2, 1)).unwrap();
        let invs = records(&r);
        let (gt, gt_tau) = nontube_restriction_check(&r, &invs[0]).unwrap();
        assert_eq!(gt, IsoType::Sl2); // su(1,1)
        assert_eq!(gt_tau, IsoType::Abelian1); // so(1,1)
    }
}
