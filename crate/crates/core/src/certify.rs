//! Three-valued comparison of simplicial maps.
//!
//! A map of finite truncated simplicial sets is reported `Equivalent` only
//! with a witness (here: a levelwise bijection commuting with all operators),
//! `NotEquivalent` only with an invariant that differs (components or
//! integral homology below the cap), and `Unknown` otherwise.

use std::fmt;

use crate::error::Result;
use crate::fincat::EquivalenceFailure;
use crate::simpset::{check_explicit_map, ExplicitMap, ExplicitSimplicialSet, HomologyGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The induced map on components is not a bijection.
    Components { source: usize, target: usize, image: usize },
    /// Homology groups differ in some degree.
    Homology { degree: usize, source: HomologyGroup, target: HomologyGroup },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Components { source, target, image } => {
                write!(f, "pi0 {source} -> {target} hits {image} components")
            }
            Obstruction::Homology { degree, source, target } => write!(f, "H{degree} {source} vs {target}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A levelwise bijection up to the common cap.
    Equivalent,
    NotEquivalent(Obstruction),
    /// Invariants agree but no witness was found.
    Unknown,
}

impl Certificate {
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::Equivalent => "Equivalent",
            Certificate::NotEquivalent(_) => "NotEquivalent",
            Certificate::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::NotEquivalent(o) => write!(f, "NotEquivalent ({o})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Why a map of Segal-type objects is not a Dwyer-Kan equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DkObstruction {
    HomotopyCategory(EquivalenceFailure),
    /// The map `map(x, y) -> map(fx, fy)` fails the battery.
    MappingSpace { x: usize, y: usize, obstruction: Obstruction },
}

impl fmt::Display for DkObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DkObstruction::HomotopyCategory(e) => write!(f, "homotopy categories: {e:?}"),
            DkObstruction::MappingSpace { x, y, obstruction } => write!(f, "map({x},{y}): {obstruction}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DkVerdict {
    /// Every mapping-space map is a levelwise bijection and the homotopy
    /// categories are equivalent.
    Equivalent,
    NotEquivalent(DkObstruction),
    Unknown,
}

impl DkVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            DkVerdict::Equivalent => "Equivalent",
            DkVerdict::NotEquivalent(_) => "NotEquivalent",
            DkVerdict::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for DkVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DkVerdict::NotEquivalent(o) => write!(f, "NotEquivalent ({o})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Combines per-mapping-space certificates with the verdict on homotopy
/// categories.
pub fn combine_dk(
    ho: std::result::Result<(), EquivalenceFailure>,
    mapping: impl IntoIterator<Item = ((usize, usize), Certificate)>,
) -> DkVerdict {
    if let Err(e) = ho {
        return DkVerdict::NotEquivalent(DkObstruction::HomotopyCategory(e));
    }
    let mut all_witnessed = true;
    for ((x, y), cert) in mapping {
        match cert {
            Certificate::Equivalent => {}
            Certificate::NotEquivalent(obstruction) => {
                return DkVerdict::NotEquivalent(DkObstruction::MappingSpace { x, y, obstruction })
            }
            Certificate::Unknown => all_witnessed = false,
        }
    }
    if all_witnessed {
        DkVerdict::Equivalent
    } else {
        DkVerdict::Unknown
    }
}

/// `true` when every level of the map is a bijection.
pub fn is_levelwise_bijection(src: &ExplicitSimplicialSet, tgt: &ExplicitSimplicialSet, map: &ExplicitMap) -> bool {
    let cap = src.dim_cap.min(tgt.dim_cap);
    (0..=cap).all(|n| {
        if src.size(n) != tgt.size(n) {
            return false;
        }
        let mut hit = vec![false; tgt.size(n)];
        map[n].iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    })
}

/// Runs the battery on a map that must commute with the simplicial
/// operators.
pub fn certify_map(src: &ExplicitSimplicialSet, tgt: &ExplicitSimplicialSet, map: &ExplicitMap) -> Result<Certificate> {
    check_explicit_map(src, tgt, map)?;
    if is_levelwise_bijection(src, tgt, map) {
        return Ok(Certificate::Equivalent);
    }
    let (sl, sc) = src.pi0_labels();
    let (tl, tc) = tgt.pi0_labels();
    let mut induced: Vec<Option<usize>> = vec![None; sc];
    for (v, &c) in sl.iter().enumerate() {
        let t = tl[map[0][v]];
        if induced[c].is_some_and(|old| old != t) {
            unreachable!("simplicial maps preserve components");
        }
        induced[c] = Some(t);
    }
    let mut image: Vec<usize> = induced.iter().flatten().copied().collect();
    image.sort_unstable();
    image.dedup();
    if sc != tc || image.len() != tc {
        return Ok(Certificate::NotEquivalent(Obstruction::Components { source: sc, target: tc, image: image.len() }));
    }
    let cap = src.dim_cap.min(tgt.dim_cap);
    if cap >= 1 {
        let hs = src.to_truncated().with_dim_cap(cap).homology(cap - 1)?;
        let ht = tgt.to_truncated().with_dim_cap(cap).homology(cap - 1)?;
        for (degree, (a, b)) in hs.groups.iter().zip(&ht.groups).enumerate() {
            if a != b {
                return Ok(Certificate::NotEquivalent(Obstruction::Homology {
                    degree,
                    source: a.clone(),
                    target: b.clone(),
                }));
            }
        }
    }
    Ok(Certificate::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::TruncatedSimplicialSet;

    fn explicit(x: &TruncatedSimplicialSet) -> ExplicitSimplicialSet {
        ExplicitSimplicialSet::from_truncated(x)
    }

    #[test]
    fn identity_is_a_bijection() {
        let x = explicit(&TruncatedSimplicialSet::boundary(2).with_dim_cap(2));
        let id: ExplicitMap = (0..=2).map(|n| (0..x.size(n)).collect()).collect();
        assert_eq!(certify_map(&x, &x, &id).unwrap(), Certificate::Equivalent);
    }

    #[test]
    fn collapsing_components_is_detected() {
        let two = TruncatedSimplicialSet::standard_simplex(0).disjoint_union(&TruncatedSimplicialSet::standard_simplex(0));
        let src = explicit(&two.with_dim_cap(1));
        let tgt = explicit(&TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(1));
        let map: ExplicitMap = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(certify_map(&src, &tgt, &map).unwrap(), Certificate::NotEquivalent(Obstruction::Components { .. })));
    }

    #[test]
    fn collapsing_a_circle_is_detected() {
        let circle = explicit(&TruncatedSimplicialSet::boundary(2).with_dim_cap(2));
        let point = explicit(&TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(2));
        let map: ExplicitMap = (0..=2).map(|n| vec![0; circle.size(n)]).collect();
        let cert = certify_map(&circle, &point, &map).unwrap();
        assert!(matches!(cert, Certificate::NotEquivalent(Obstruction::Homology { degree: 1, .. })));
    }

    #[test]
    fn collapsing_a_simplex_is_unknown() {
        let simplex = explicit(&TruncatedSimplicialSet::standard_simplex(1).with_dim_cap(2));
        let point = explicit(&TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(2));
        let map: ExplicitMap = (0..=2).map(|n| vec![0; simplex.size(n)]).collect();
        assert_eq!(certify_map(&simplex, &point, &map).unwrap(), Certificate::Unknown);
    }
}
