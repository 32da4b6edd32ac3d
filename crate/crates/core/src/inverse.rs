//! Recovering tree shape from asymptotic branch data.
//!
//! The asymptotics expose `p̃`, `p̃_pen` and the cosines `α_i` (the roots of
//! the pencil determinant) but not its leading coefficient, so lookups match
//! root multisets rather than coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::canon::{canonical_code, CanonicalCode};
use crate::cospectral::{classify, SpectralKey};
use crate::enumerate::enumerate_trees;
use crate::error::{Error, Result};
use crate::graph::{BoundaryConfig, Tree};
use crate::spectrum::{closed_form_spectrum, extract_branches, BranchData};
use crate::sturm::real_roots;

/// Per-root tolerance when comparing observed cosines with dictionary roots.
pub const ROOT_MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DictEntry {
    /// Sorted canonical codes of the trees sharing the key.
    pub members: Vec<CanonicalCode>,
    /// Real roots of the key polynomial, increasing, repeated by multiplicity.
    pub roots: Vec<f64>,
}

/// Spectral key → trees, for every tree with `3 ≤ p ≤ max_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeDictionary {
    pub max_p: usize,
    pub entries: BTreeMap<SpectralKey, DictEntry>,
}

impl ShapeDictionary {
    /// Rebuilds the root cache from stored keys (used when loading from disk).
    pub fn from_parts(
        max_p: usize,
        parts: impl IntoIterator<Item = (SpectralKey, Vec<CanonicalCode>)>,
    ) -> ShapeDictionary {
        let entries = parts
            .into_iter()
            .map(|(key, mut members)| {
                members.sort();
                let roots = expand_roots(&key);
                (key, DictEntry { members, roots })
            })
            .collect();
        ShapeDictionary { max_p, entries }
    }

    pub fn tree_count(&self) -> usize {
        self.entries.values().map(|e| e.members.len()).sum()
    }

    /// Keys shared by more than one tree.
    pub fn ambiguous(&self) -> impl Iterator<Item = (&SpectralKey, &DictEntry)> {
        self.entries.iter().filter(|(_, e)| e.members.len() > 1)
    }
}

fn expand_roots(key: &SpectralKey) -> Vec<f64> {
    real_roots(key.poly.as_poly())
        .into_iter()
        .flat_map(|(x, m)| core::iter::repeat_n(x, m))
        .collect()
}

/// Enumerates every tree with `3 ≤ p ≤ max_p` and keys it.
pub fn build_dictionary(max_p: usize) -> Result<ShapeDictionary> {
    if max_p < 3 {
        return Err(Error::InvalidRange(format!(
            "max_p must be at least 3, got {max_p}"
        )));
    }
    let mut parts = Vec::new();
    for p in 3..=max_p {
        parts.extend(classify(&enumerate_trees(p))?);
    }
    Ok(ShapeDictionary::from_parts(max_p, parts))
}

/// Every dictionary tree whose key has `p = p̃ + p̃_pen`, pendant count
/// `p̃_pen`, and roots matching `alpha_values` one-to-one within
/// [`ROOT_MATCH_TOL`]. No match is an empty list.
pub fn recover_trees(branches: &BranchData, dict: &ShapeDictionary) -> Result<Vec<CanonicalCode>> {
    if branches.alpha_values.len() != branches.p_tilde {
        return Err(Error::AmbiguousInput(format!(
            "{} cosines given for p̃ = {}",
            branches.alpha_values.len(),
            branches.p_tilde
        )));
    }
    if branches.p_tilde == 0 || branches.p_pen_tilde < 2 {
        return Err(Error::AmbiguousInput("need p̃ >= 1 and p̃_pen >= 2".into()));
    }
    let p = branches.p_tilde + branches.p_pen_tilde;
    if p > dict.max_p {
        return Err(Error::InvalidRange(format!(
            "tree of {p} vertices exceeds the dictionary bound {}",
            dict.max_p
        )));
    }
    let mut query = branches.alpha_values.clone();
    query.sort_by(f64::total_cmp);
    let mut out = Vec::new();
    for (key, entry) in &dict.entries {
        if key.p != p || key.p_pen != branches.p_pen_tilde || entry.roots.len() != query.len() {
            continue;
        }
        if entry
            .roots
            .iter()
            .zip(&query)
            .all(|(r, q)| (r - q).abs() < ROOT_MATCH_TOL)
        {
            out.extend(entry.members.iter().cloned());
        }
    }
    out.sort();
    Ok(out)
}

/// Closed-form spectrum on `(0, 6π]` → branch extraction → dictionary lookup,
/// with Dirichlet conditions at every pendant.
pub fn round_trip(t: &Tree, l: f64, dict: &ShapeDictionary) -> Result<Vec<CanonicalCode>> {
    if t.vertex_count() > dict.max_p {
        return Err(Error::InvalidRange(
            "tree larger than the dictionary".into(),
        ));
    }
    let b = BoundaryConfig::all_dirichlet(t);
    let sample = closed_form_spectrum(t, &b, l, 6.0 * PI)?;
    let branches = extract_branches(&sample, None)?;
    let found = recover_trees(&branches, dict)?;
    debug_assert!(found.contains(&canonical_code(t)));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_p3_and_p4() {
        let dict = build_dictionary(6).unwrap();
        assert_eq!(dict.tree_count(), 1 + 2 + 3 + 6);
        assert_eq!(dict.ambiguous().count(), 0);
        let b = BranchData::new(alloc::vec![0.0], 2).unwrap();
        assert_eq!(
            recover_trees(&b, &dict).unwrap(),
            alloc::vec![canonical_code(&Tree::path(3))]
        );
        let b = BranchData::new(alloc::vec![0.5, -0.5], 2).unwrap();
        assert_eq!(
            recover_trees(&b, &dict).unwrap(),
            alloc::vec![canonical_code(&Tree::path(4))]
        );
    }

    #[test]
    fn double_stars_on_six_vertices() {
        let dict = build_dictionary(6).unwrap();
        let r8 = 1.0 / libm::sqrt(8.0);
        let a = recover_trees(&BranchData::new(alloc::vec![-r8, r8], 4).unwrap(), &dict).unwrap();
        let b = recover_trees(
            &BranchData::new(alloc::vec![-1.0 / 3.0, 1.0 / 3.0], 4).unwrap(),
            &dict,
        )
        .unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 1);
        assert_ne!(a, b);
        assert_eq!(a[0], canonical_code(&Tree::double_star(1, 3)));
        assert_eq!(b[0], canonical_code(&Tree::double_star(2, 2)));
    }

    #[test]
    fn no_match_and_bad_input() {
        let dict = build_dictionary(5).unwrap();
        let b = BranchData::new(alloc::vec![0.1], 2).unwrap();
        assert!(recover_trees(&b, &dict).unwrap().is_empty());
        let mut bad = BranchData::new(alloc::vec![0.0], 2).unwrap();
        bad.p_tilde = 2;
        assert!(matches!(
            recover_trees(&bad, &dict),
            Err(Error::AmbiguousInput(_))
        ));
        let big = BranchData::new(alloc::vec![0.0; 4], 3).unwrap();
        assert!(recover_trees(&big, &dict).is_err());
    }

    #[test]
    fn round_trip_small() {
        let dict = build_dictionary(6).unwrap();
        for t in [Tree::path(5), Tree::star(4), Tree::spider(&[1, 1, 3])] {
            assert_eq!(
                round_trip(&t, 1.0, &dict).unwrap(),
                alloc::vec![canonical_code(&t)]
            );
        }
    }
}
