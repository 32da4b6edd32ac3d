//! Cospectral classes of trees and reconciliation against published
//! polynomial tables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::canon::CanonicalCode;
use crate::charpoly::{dirichlet_poly, dirichlet_poly_interpolated};
use crate::enumerate::{enumerate_trees, TreeCatalog};
use crate::error::{Error, Result};
use crate::graph::{BoundaryConfig, Tree};
use crate::poly::{normalize, IntPoly, NormalizedPoly};

/// Everything the first two terms of the eigenvalue asymptotics can see:
/// vertex count, pendant count and the pencil determinant up to a constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectralKey {
    pub p: usize,
    pub p_pen: usize,
    pub poly: NormalizedPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CospectralClass {
    pub key: SpectralKey,
    /// Sorted.
    pub members: Vec<CanonicalCode>,
}

/// Key of a tree with Dirichlet conditions at every pendant vertex.
pub fn spectral_key(t: &Tree) -> Result<SpectralKey> {
    if t.vertex_count() < 3 {
        return Err(Error::InvalidGraph(
            "spectral keys need at least 3 vertices".into(),
        ));
    }
    let poly = dirichlet_poly(t, &BoundaryConfig::all_dirichlet(t))?;
    Ok(SpectralKey {
        p: t.vertex_count(),
        p_pen: t.pendant_count(),
        poly: normalize(&poly)?,
    })
}

/// Partition of a catalog by spectral key.
pub fn classify(catalog: &TreeCatalog) -> Result<BTreeMap<SpectralKey, Vec<CanonicalCode>>> {
    let mut out: BTreeMap<SpectralKey, Vec<CanonicalCode>> = BTreeMap::new();
    for (t, code) in catalog.iter() {
        out.entry(spectral_key(t)?).or_default().push(code.clone());
    }
    for members in out.values_mut() {
        members.sort();
    }
    Ok(out)
}

/// Classes with at least two non-isomorphic members among the `p`-vertex trees.
pub fn find_classes(p: usize) -> Result<Vec<CospectralClass>> {
    if p < 3 {
        return Err(Error::InvalidGraph("cospectral classes need p >= 3".into()));
    }
    Ok(classify(&enumerate_trees(p))?
        .into_iter()
        .filter(|(_, m)| m.len() > 1)
        .map(|(key, members)| CospectralClass { key, members })
        .collect())
}

/// One transcribed polynomial from a published table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub p_pen: usize,
    pub label: String,
    /// As printed.
    pub text: String,
    /// Marked as typographically damaged at transcription time.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryOutcome {
    /// Equal to a computed polynomial up to a nonzero constant.
    Matched {
        code: CanonicalCode,
        computed: IntPoly,
    },
    /// Flagged or unparseable entry resolved to the nearest leftover tree.
    Corrected {
        code: CanonicalCode,
        computed: IntPoly,
        /// Interpolation route gives the same polynomial.
        oracle_agrees: bool,
    },
    /// Clean entry that matches no computed polynomial; `nearest` is the
    /// closest leftover tree of the same pendant count, if any.
    Mismatch {
        nearest: Option<(CanonicalCode, IntPoly)>,
    },
    /// Flagged entry with no leftover tree to pair it with.
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub p: usize,
    pub entries: Vec<(TableEntry, EntryOutcome)>,
    /// Computed trees that no table entry accounts for.
    pub unlisted: Vec<(usize, CanonicalCode, IntPoly)>,
}

impl CatalogReport {
    pub fn matched(&self) -> usize {
        self.count(|o| matches!(o, EntryOutcome::Matched { .. }))
    }

    pub fn corrected(&self) -> usize {
        self.count(|o| matches!(o, EntryOutcome::Corrected { .. }))
    }

    pub fn mismatched(&self) -> usize {
        self.count(|o| matches!(o, EntryOutcome::Mismatch { .. } | EntryOutcome::Unresolved))
    }

    fn count(&self, f: impl Fn(&EntryOutcome) -> bool) -> usize {
        self.entries.iter().filter(|(_, o)| f(o)).count()
    }
}

/// Reads a damaged entry the way a reader would: a coefficient followed
/// directly by `^k` is taken to have lost its `z`.
pub fn parse_lenient(text: &str) -> Option<IntPoly> {
    let mut fixed = String::new();
    let mut prev_digit = false;
    for ch in text.chars() {
        if ch == '^' && prev_digit {
            fixed.push('z');
        }
        prev_digit = ch.is_ascii_digit();
        fixed.push(ch);
    }
    fixed.parse().ok()
}

/// Distance between a printed polynomial and a computed one, up to sign:
/// number of differing coefficients, then total absolute difference.
fn edit_distance(printed: &IntPoly, computed: &IntPoly) -> (usize, BigInt) {
    let n = printed.coeffs().len().max(computed.coeffs().len());
    [computed.clone(), -computed]
        .iter()
        .map(|c| {
            let mut diff = 0;
            let mut total = BigInt::zero();
            for k in 0..n {
                let d = printed.coeff(k) - c.coeff(k);
                if !d.is_zero() {
                    diff += 1;
                    total += d.abs();
                }
            }
            (diff, total)
        })
        .min()
        .unwrap()
}

struct Computed {
    code: CanonicalCode,
    poly: IntPoly,
    oracle_agrees: bool,
    normalized: NormalizedPoly,
    used: bool,
}

/// Matches the entries of a published table against every `p`-vertex tree
/// (Dirichlet at all pendants). Clean entries match by normalized polynomial;
/// flagged or unparseable entries are then paired with the remaining trees of
/// the same pendant count by minimal coefficient distance.
pub fn verify_catalog(p: usize, table: &[TableEntry]) -> Result<CatalogReport> {
    let catalog = enumerate_trees(p);
    let mut by_pen: BTreeMap<usize, Vec<Computed>> = BTreeMap::new();
    for (t, code) in catalog.iter() {
        let b = BoundaryConfig::all_dirichlet(t);
        let poly = dirichlet_poly(t, &b)?;
        let oracle_agrees = dirichlet_poly_interpolated(t, &b)? == poly;
        by_pen.entry(t.pendant_count()).or_default().push(Computed {
            code: code.clone(),
            normalized: normalize(&poly)?,
            poly,
            oracle_agrees,
            used: false,
        });
    }

    let mut outcomes: Vec<Option<EntryOutcome>> = alloc::vec![None; table.len()];
    for (i, entry) in table.iter().enumerate() {
        if entry.flagged {
            continue;
        }
        let Some(norm) = entry
            .text
            .parse::<IntPoly>()
            .ok()
            .and_then(|q| normalize(&q).ok())
        else {
            continue;
        };
        let bucket = by_pen.entry(entry.p_pen).or_default();
        if let Some(c) = bucket.iter_mut().find(|c| !c.used && c.normalized == norm) {
            c.used = true;
            outcomes[i] = Some(EntryOutcome::Matched {
                code: c.code.clone(),
                computed: c.poly.clone(),
            });
        }
    }

    // leftovers, per pendant count
    let pens: Vec<usize> = table.iter().map(|e| e.p_pen).collect();
    for pen in pens
        .iter()
        .copied()
        .collect::<alloc::collections::BTreeSet<_>>()
    {
        let pending: Vec<usize> = (0..table.len())
            .filter(|&i| pens[i] == pen && outcomes[i].is_none())
            .collect();
        if pending.is_empty() {
            continue;
        }
        let bucket = by_pen.entry(pen).or_default();
        let free: Vec<usize> = (0..bucket.len()).filter(|&j| !bucket[j].used).collect();
        let cost = |i: usize, j: usize| match parse_lenient(&table[i].text) {
            Some(q) => edit_distance(&q, &bucket[j].poly),
            None => (usize::MAX, BigInt::zero()),
        };
        let assignment = assign(pending.len(), free.len(), |a, b| cost(pending[a], free[b]));
        for (a, &i) in pending.iter().enumerate() {
            let outcome = match assignment[a] {
                Some(bi) => {
                    let c = &bucket[free[bi]];
                    if table[i].flagged || table[i].text.parse::<IntPoly>().is_err() {
                        EntryOutcome::Corrected {
                            code: c.code.clone(),
                            computed: c.poly.clone(),
                            oracle_agrees: c.oracle_agrees,
                        }
                    } else {
                        EntryOutcome::Mismatch {
                            nearest: Some((c.code.clone(), c.poly.clone())),
                        }
                    }
                }
                None if table[i].flagged => EntryOutcome::Unresolved,
                None => EntryOutcome::Mismatch { nearest: None },
            };
            if let Some(bi) = assignment[a] {
                bucket[free[bi]].used = true;
            }
            outcomes[i] = Some(outcome);
        }
    }

    let entries = table
        .iter()
        .cloned()
        .zip(
            outcomes
                .into_iter()
                .map(|o| o.expect("every entry resolved")),
        )
        .collect();
    let unlisted = by_pen
        .into_iter()
        .flat_map(|(pen, cs)| {
            cs.into_iter()
                .filter(|c| !c.used)
                .map(move |c| (pen, c.code, c.poly))
        })
        .collect();
    Ok(CatalogReport {
        p,
        entries,
        unlisted,
    })
}

/// Minimum-cost assignment of `n` rows to distinct columns among `m`.
/// Exhaustive for small problems, greedy otherwise. Rows left without a
/// column get `None`.
fn assign<C: Ord + Clone>(
    n: usize,
    m: usize,
    cost: impl Fn(usize, usize) -> C,
) -> Vec<Option<usize>> {
    if n == 0 {
        return Vec::new();
    }
    if m == 0 {
        return alloc::vec![None; n];
    }
    let table: Vec<Vec<C>> = (0..n)
        .map(|a| (0..m).map(|b| cost(a, b)).collect())
        .collect();
    if n <= 8 && m <= 8 {
        let mut best: Option<(Vec<C>, Vec<Option<usize>>)> = None;
        let mut current = alloc::vec![None; n];
        let mut taken = alloc::vec![false; m];
        search(0, &table, &mut current, &mut taken, &mut best);
        return best.map(|b| b.1).unwrap_or_else(|| alloc::vec![None; n]);
    }
    let mut out = alloc::vec![None; n];
    let mut taken = alloc::vec![false; m];
    for (a, row) in table.iter().enumerate() {
        if let Some(b) = (0..m)
            .filter(|&b| !taken[b])
            .min_by(|&x, &y| row[x].cmp(&row[y]))
        {
            taken[b] = true;
            out[a] = Some(b);
        }
    }
    out
}

fn search<C: Ord + Clone>(
    a: usize,
    table: &[Vec<C>],
    current: &mut Vec<Option<usize>>,
    taken: &mut Vec<bool>,
    best: &mut Option<(Vec<C>, Vec<Option<usize>>)>,
) {
    if a == table.len() {
        // compare sorted cost profiles, worst first
        let mut profile: Vec<C> = current
            .iter()
            .enumerate()
            .filter_map(|(r, c)| c.map(|c| table[r][c].clone()))
            .collect();
        profile.sort_by(|x, y| y.cmp(x));
        let assigned = current.iter().filter(|c| c.is_some()).count();
        let better = match best {
            None => true,
            Some((bp, bc)) => {
                let b_assigned = bc.iter().filter(|c| c.is_some()).count();
                assigned > b_assigned || (assigned == b_assigned && profile < *bp)
            }
        };
        if better {
            *best = Some((profile, current.clone()));
        }
        return;
    }
    let mut any = false;
    for b in 0..taken.len() {
        if !taken[b] {
            any = true;
            taken[b] = true;
            current[a] = Some(b);
            search(a + 1, table, current, taken, best);
            taken[b] = false;
            current[a] = None;
        }
    }
    if !any {
        search(a + 1, table, current, taken, best);
    }
}
