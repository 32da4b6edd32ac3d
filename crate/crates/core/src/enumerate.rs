//! Free-tree enumeration.
//!
//! Rooted trees are generated as canonical level sequences (each successor
//! obtained in constant amortized time); every rooted tree is re-encoded from
//! its center and deduplicated, which leaves one representative per free
//! tree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::canon::{canonical_code, CanonicalCode};
use crate::graph::Tree;

/// One canonically labeled tree per isomorphism class, sorted by code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCatalog {
    pub p: usize,
    pub trees: Vec<(Tree, CanonicalCode)>,
}

impl TreeCatalog {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Tree, CanonicalCode)> {
        self.trees.iter()
    }
}

/// Iterator over the rooted trees on `n` vertices as level sequences
/// (root at level 0, preorder), starting from the path and ending at the star.
pub struct LevelSequences {
    levels: Vec<usize>,
    done: bool,
}

impl LevelSequences {
    pub fn new(n: usize) -> Self {
        LevelSequences {
            levels: (0..n).collect(),
            done: n == 0,
        }
    }

    fn advance(&mut self) {
        let l = &mut self.levels;
        let Some(p) = l.iter().rposition(|&x| x > 1) else {
            self.done = true;
            return;
        };
        let q = l[..p]
            .iter()
            .rposition(|&x| x == l[p] - 1)
            .expect("a parent level precedes every non-root level");
        let shift = p - q;
        for i in p..l.len() {
            l[i] = l[i - shift];
        }
    }
}

impl Iterator for LevelSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.levels.clone();
        self.advance();
        Some(out)
    }
}

/// Tree whose vertex `i` hangs under the nearest earlier vertex one level up.
pub fn tree_from_levels(levels: &[usize]) -> Tree {
    let mut last_at = Vec::new();
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for (i, &lv) in levels.iter().enumerate() {
        if lv > 0 {
            edges.push((last_at[lv - 1], i));
        }
        last_at.truncate(lv);
        last_at.push(i);
    }
    Tree::new(levels.len(), edges).expect("level sequences describe trees")
}

/// All free trees on `p ≥ 1` vertices, one per isomorphism class.
pub fn enumerate_trees(p: usize) -> TreeCatalog {
    assert!(p >= 1, "trees need at least one vertex");
    let mut seen: BTreeMap<CanonicalCode, ()> = BTreeMap::new();
    for levels in LevelSequences::new(p) {
        let t = tree_from_levels(&levels);
        seen.entry(canonical_code(&t)).or_insert(());
    }
    let trees = seen
        .into_keys()
        .map(|code| {
            let t = code.to_tree().expect("canonical codes decode");
            (t, code)
        })
        .collect();
    TreeCatalog { p, trees }
}

/// Number of trees per pendant count.
pub fn count_by_pendants(catalog: &TreeCatalog) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (t, _) in &catalog.trees {
        *out.entry(t.pendant_count()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_tree_counts() {
        // rooted trees on n vertices
        let expected = [1, 1, 2, 4, 9, 20, 48, 115, 286];
        for (n, &want) in (1..).zip(expected.iter()) {
            assert_eq!(LevelSequences::new(n).count(), want, "n = {n}");
        }
    }

    #[test]
    fn free_tree_counts_small() {
        assert_eq!(enumerate_trees(1).len(), 1);
        assert_eq!(enumerate_trees(4).len(), 2);
        assert_eq!(enumerate_trees(5).len(), 3);
    }

    #[test]
    fn pendant_buckets() {
        let b = count_by_pendants(&enumerate_trees(7));
        assert_eq!(
            b.into_iter().collect::<Vec<_>>(),
            [(2, 1), (3, 3), (4, 4), (5, 2), (6, 1)]
        );
    }
}
