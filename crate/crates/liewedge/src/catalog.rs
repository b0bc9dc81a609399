//! Symbolic isomorphism types of the Lie algebras that occur as
//! cone-generated subalgebras, and their identification from computed
//! invariants (dimension, rank, restricted root multiplicities).
//!
//! The catalog is not transcribed from the literature: every match against
//! a buildable family is verified by constructing that family's
//! realization (cached per process) and comparing its own root data.

use crate::jordan::JordanFamily;
use crate::lie::RootData;
use crate::realize::{build, classify_c_bc, Family, Realization};
use crate::scalar::Scalar;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Isomorphism label: a hermitian tube-type family with integer
/// parameters, an auxiliary label for fixed-point algebras, a direct sum,
/// or an explicit "unidentified" carrying the offending invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum IsoType {
    Zero,
    /// sl(2,R) = su(1,1) = sp(2,R) = so(2,1)
    Sl2,
    /// su(k,k), k >= 2
    SuKK(usize),
    /// sp(2k,R), k >= 2
    Sp2K(usize),
    /// so*(4k), k >= 2
    SoStar4K(usize),
    /// so(2,n), n >= 3 (n = 3,4,6 canonicalize to the classical twins)
    So2N(usize),
    E7,
    /// so(1,1): one-dimensional abelian fixed parts
    Abelian1,
    /// sl(2,C) (ideals of so(2p,C) fixed algebras)
    Sl2C,
    /// sp(1,1) = so(1,4)
    Sp11,
    Sum(Vec<IsoType>),
    Unidentified(String),
}

impl IsoType {
    /// Canonical representative modulo the exceptional isomorphisms.
    pub fn canonical(&self) -> IsoType {
        match self {
            IsoType::SuKK(1) | IsoType::Sp2K(1) | IsoType::SoStar4K(1) | IsoType::So2N(1) => {
                IsoType::Sl2
            }
            IsoType::So2N(3) => IsoType::Sp2K(2),
            IsoType::So2N(4) => IsoType::SuKK(2),
            IsoType::So2N(6) => IsoType::SoStar4K(2),
            IsoType::Sum(parts) => {
                let mut c: Vec<IsoType> = parts
                    .iter()
                    .map(|p| p.canonical())
                    .filter(|p| *p != IsoType::Zero)
                    .collect();
                c.sort();
                match c.len() {
                    0 => IsoType::Zero,
                    1 => c.pop().unwrap(),
                    _ => IsoType::Sum(c),
                }
            }
            other => other.clone(),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            IsoType::Zero => Some(0),
            IsoType::Sl2 => Some(3),
            IsoType::SuKK(k) => Some(4 * k * k - 1),
            IsoType::Sp2K(k) => Some(k * (2 * k + 1)),
            IsoType::SoStar4K(k) => Some(2 * k * (4 * k - 1)),
            IsoType::So2N(n) => Some((n + 1) * (n + 2) / 2),
            IsoType::E7 => Some(133),
            IsoType::Abelian1 => Some(1),
            IsoType::Sl2C => Some(6),
            IsoType::Sp11 => Some(10),
            IsoType::Sum(parts) => parts.iter().map(|p| p.dim()).sum(),
            IsoType::Unidentified(_) => None,
        }
    }

    /// The realization family of a canonical tube-type label.
    fn family(&self) -> Option<Family> {
        match self.canonical() {
            IsoType::Sl2 => Some(Family::Sp(1)),
            IsoType::SuKK(k) => Some(Family::Su(k, k)),
            IsoType::Sp2K(k) => Some(Family::Sp(k)),
            IsoType::SoStar4K(k) => Some(Family::SoStar(2 * k)),
            IsoType::So2N(n) => Some(Family::So2(n)),
            IsoType::E7 => Some(Family::E7),
            _ => None,
        }
    }

    /// Flat component list for JSON reports.
    pub fn components(&self) -> Vec<IsoComponent> {
        match self.canonical() {
            IsoType::Zero => Vec::new(),
            IsoType::Sum(parts) => parts.iter().flat_map(|p| p.components()).collect(),
            one => vec![one.component()],
        }
    }

    fn component(&self) -> IsoComponent {
        let (family, params): (&str, Vec<usize>) = match self {
            IsoType::Sl2 => ("sl2", vec![]),
            IsoType::SuKK(k) => ("su", vec![*k, *k]),
            IsoType::Sp2K(k) => ("sp", vec![2 * k]),
            IsoType::SoStar4K(k) => ("sostar", vec![4 * k]),
            IsoType::So2N(n) => ("so2", vec![*n]),
            IsoType::E7 => ("e7", vec![]),
            IsoType::Abelian1 => ("so11", vec![]),
            IsoType::Sl2C => ("sl2C", vec![]),
            IsoType::Sp11 => ("sp11", vec![]),
            IsoType::Unidentified(s) => {
                return IsoComponent {
                    family: format!("unidentified:{s}"),
                    params: vec![],
                }
            }
            IsoType::Zero | IsoType::Sum(_) => unreachable!(),
        };
        IsoComponent {
            family: family.to_string(),
            params,
        }
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::Zero => write!(f, "0"),
            IsoType::Sl2 => write!(f, "sl(2,R)"),
            IsoType::SuKK(k) => write!(f, "su({k},{k})"),
            IsoType::Sp2K(k) => write!(f, "sp({},R)", 2 * k),
            IsoType::SoStar4K(k) => write!(f, "so*({})", 4 * k),
            IsoType::So2N(n) => write!(f, "so(2,{n})"),
            IsoType::E7 => write!(f, "e7(-25)"),
            IsoType::Abelian1 => write!(f, "so(1,1)"),
            IsoType::Sl2C => write!(f, "sl(2,C)"),
            IsoType::Sp11 => write!(f, "sp(1,1)"),
            IsoType::Sum(parts) => {
                let strs: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", strs.join("+"))
            }
            IsoType::Unidentified(s) => write!(f, "unidentified{{{s}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoComponent {
    pub family: String,
    pub params: Vec<usize>,
}

/// The KKT partner of a simple euclidean Jordan algebra (the tube-type
/// hermitian Lie algebra with g_1 = V).
pub fn kkt_partner(fam: &JordanFamily) -> IsoType {
    match fam.canonical() {
        JordanFamily::Sym(1) => IsoType::Sl2,
        JordanFamily::Sym(k) => IsoType::Sp2K(k),
        JordanFamily::HermC(k) => IsoType::SuKK(k),
        JordanFamily::HermH(k) => IsoType::SoStar4K(k),
        JordanFamily::Mink(d) => IsoType::So2N(d).canonical(),
        JordanFamily::HermO3 => IsoType::E7,
    }
}

/// Shared realization cache (identification rebuilds families to verify
/// pattern matches against their own root data).
fn realization_cache() -> &'static Mutex<BTreeMap<Family, Arc<Realization>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<Family, Arc<Realization>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Builds a realization through the process-wide cache.
pub fn cached_realization(family: &Family) -> Result<Arc<Realization>, String> {
    if let Some(r) = realization_cache().lock().unwrap().get(family) {
        return Ok(r.clone());
    }
    let built = Arc::new(build(family).map_err(|e| e.to_string())?);
    realization_cache()
        .lock()
        .unwrap()
        .insert(family.clone(), built.clone());
    Ok(built)
}

/// Identifies one simple component from its dimension and its restricted
/// root data over a maximal hyperbolic abelian subspace. The match is
/// confirmed against the root data of a freshly built (cached) realization
/// of the candidate family; `ambient` short-circuits that rebuild when the
/// candidate is the ambient family itself.
pub fn identify_component(
    dim: usize,
    data: &RootData,
    rank: usize,
    ambient: Option<&Realization>,
) -> IsoType {
    let unid = |why: String| {
        IsoType::Unidentified(format!(
            "dim={dim} rank={rank} mults={:?} ({why})",
            data.multiplicities()
        ))
    };
    if rank == 0 {
        return unid("no Cartan candidates".into());
    }
    if rank == 1 {
        // a single pair of opposite roots; identified by multiplicity
        let mults: Vec<usize> = data.roots.iter().map(|(_, s)| s.dim()).collect();
        if mults.len() != 2 || mults[0] != mults[1] {
            return unid("rank-1 roots do not pair".into());
        }
        return match (mults[0], dim) {
            (1, 3) => IsoType::Sl2,
            (2, 6) => IsoType::Sl2C,
            (3, 10) => IsoType::Sp11,
            _ => unid("no rank-1 catalog entry".into()),
        };
    }
    let pattern = match classify_c_bc(data, rank) {
        Ok(p) => p,
        Err(e) => return unid(e.to_string()),
    };
    if !pattern.is_tube() {
        return unid("(BC) pattern".into());
    }
    let m = pattern.middle_mult.unwrap_or(0);
    let candidate = if rank == 2 {
        IsoType::So2N(m + 2).canonical()
    } else {
        match (rank, m) {
            (_, 1) => IsoType::Sp2K(rank),
            (_, 2) => IsoType::SuKK(rank),
            (_, 4) => IsoType::SoStar4K(rank),
            (3, 8) => IsoType::E7,
            _ => return unid("no catalog family with this middle multiplicity".into()),
        }
    };
    if candidate.dim() != Some(dim) {
        return unid(format!("dimension mismatch against {candidate}"));
    }
    // confirm against the candidate family's own root data
    let family = candidate.family().expect("canonical tube label");
    if let Some(r) = ambient {
        if r.family == family {
            return candidate;
        }
    }
    match cached_realization(&family) {
        Ok(r) => {
            if r.pattern.rank == rank
                && r.pattern.middle_mult.unwrap_or(0) == m
                && r.pattern.long_mult == pattern.long_mult
                && r.algebra.dim == dim
            {
                candidate
            } else {
                unid(format!("realization of {candidate} disagrees"))
            }
        }
        Err(e) => unid(format!("could not verify against {candidate}: {e}")),
    }
}

/// True iff the root tuple is supported away from all-zero (helper for
/// splitting root data by ideal membership).
pub fn tuple_is_zero(tuple: &[Scalar]) -> bool {
    tuple.iter().all(|c| c.is_zero())
}

/// Expected label sets used by table verifications; used to render the
/// canonical name of a fixed-point label such as so(q,q) or so(2p,C).
pub fn aux_sum_label(parts: &[IsoType]) -> IsoType {
    IsoType::Sum(parts.to_vec()).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization_rules() {
        assert_eq!(IsoType::SuKK(1).canonical(), IsoType::Sl2);
        assert_eq!(IsoType::So2N(3).canonical(), IsoType::Sp2K(2));
        assert_eq!(IsoType::So2N(4).canonical(), IsoType::SuKK(2));
        assert_eq!(IsoType::So2N(6).canonical(), IsoType::SoStar4K(2));
        assert_eq!(IsoType::So2N(5).canonical(), IsoType::So2N(5));
        let s = IsoType::Sum(vec![IsoType::Zero, IsoType::Sp2K(1)]);
        assert_eq!(s.canonical(), IsoType::Sl2);
        let s = IsoType::Sum(vec![IsoType::Sl2, IsoType::So2N(3)]);
        assert_eq!(
            s.canonical(),
            IsoType::Sum(vec![IsoType::Sl2, IsoType::Sp2K(2)])
        );
    }

    #[test]
    fn dims() {
        assert_eq!(IsoType::SuKK(2).dim(), Some(15));
        assert_eq!(IsoType::Sp2K(2).dim(), Some(10));
        assert_eq!(IsoType::SoStar4K(2).dim(), Some(28));
        assert_eq!(IsoType::So2N(10).dim(), Some(66));
        assert_eq!(IsoType::E7.dim(), Some(133));
    }

    #[test]
    fn kkt_partners() {
        assert_eq!(kkt_partner(&JordanFamily::Sym(3)), IsoType::Sp2K(3));
        assert_eq!(kkt_partner(&JordanFamily::HermC(2)), IsoType::SuKK(2));
        assert_eq!(kkt_partner(&JordanFamily::HermH(2)), IsoType::SoStar4K(2));
        assert_eq!(kkt_partner(&JordanFamily::Mink(10)), IsoType::So2N(10));
        assert_eq!(kkt_partner(&JordanFamily::Mink(3)), IsoType::Sp2K(2));
        assert_eq!(kkt_partner(&JordanFamily::HermO3), IsoType::E7);
        assert_eq!(kkt_partner(&JordanFamily::Sym(1)), IsoType::Sl2);
    }

    #[test]
    fn identify_whole_realizations() {
        for (family, expect) in [
            (Family::Sp(1), IsoType::Sl2),
            (Family::Sp(2), IsoType::Sp2K(2)),
            (Family::Su(2, 2), IsoType::SuKK(2)),
            (Family::So2(5), IsoType::So2N(5)),
        ] {
            let r = cached_realization(&family).unwrap();
            let got = identify_component(r.algebra.dim, &r.root_data, r.rank, Some(&r));
            assert_eq!(got, expect, "family {family}");
        }
    }

    #[test]
    fn display_and_components() {
        let s = IsoType::Sum(vec![IsoType::So2N(10), IsoType::Sl2]);
        assert_eq!(s.to_string(), "so(2,10)+sl(2,R)");
        let comps = s.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].family, "sl2");
        assert_eq!(comps[1].family, "so2");
    }
}
