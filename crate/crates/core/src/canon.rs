//! Center-rooted AHU canonical codes for free trees.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Tree;

/// Balanced-parenthesis encoding of a tree rooted at its (canonical) center.
/// Equal codes ⇔ isomorphic trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Accepts only strings that are the canonical code of some tree.
    pub fn parse(s: &str) -> Result<CanonicalCode> {
        let code = CanonicalCode(String::from(s));
        let tree = code.to_tree()?;
        if canonical_code(&tree) != code {
            return Err(Error::Parse(alloc::format!(
                "{s:?} is not a canonical code"
            )));
        }
        Ok(code)
    }

    /// Tree described by the code, vertices numbered in preorder (root 0).
    pub fn to_tree(&self) -> Result<Tree> {
        let bad = || Error::Parse(alloc::format!("malformed tree code {:?}", self.0));
        let mut stack: Vec<usize> = Vec::new();
        let mut edges = Vec::new();
        let mut count = 0usize;
        let mut closed_root = false;
        for ch in self.0.chars() {
            if closed_root {
                return Err(bad());
            }
            match ch {
                '(' => {
                    if let Some(&parent) = stack.last() {
                        edges.push((parent, count));
                    } else if count > 0 {
                        return Err(bad());
                    }
                    stack.push(count);
                    count += 1;
                }
                ')' => {
                    stack.pop().ok_or_else(bad)?;
                    closed_root = stack.is_empty();
                }
                _ => return Err(bad()),
            }
        }
        if !closed_root {
            return Err(bad());
        }
        Tree::new(count, edges)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One or two central vertices, found by peeling leaves.
pub fn centers(t: &Tree) -> Vec<usize> {
    let p = t.vertex_count();
    if p <= 2 {
        return (0..p).collect();
    }
    let mut deg = t.degrees();
    let mut layer: Vec<usize> = (0..p).filter(|&v| deg[v] == 1).collect();
    let mut remaining = p;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &v in t.neighbors(leaf) {
                deg[v] -= 1;
                if deg[v] == 1 {
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// AHU encoding of `t` rooted at `root`: each vertex becomes `(` + sorted
/// child encodings + `)`.
pub fn rooted_code(t: &Tree, root: usize) -> String {
    let p = t.vertex_count();
    let mut parent = vec![usize::MAX; p];
    let mut order = Vec::with_capacity(p);
    order.push(root);
    parent[root] = root;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in t.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); p];
    for &u in order.iter().rev() {
        let mut kids = core::mem::take(&mut child_codes[u]);
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('(');
        for k in &kids {
            code.push_str(k);
        }
        code.push(')');
        if u == root {
            return code;
        }
        child_codes[parent[u]].push(code);
    }
    unreachable!("root is always visited")
}

/// Rooted at the center; for bicentral trees the smaller of the two rooted
/// codes is taken.
pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let code = centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c))
        .min()
        .expect("trees have at least one center");
    CanonicalCode(code)
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.vertex_count() == b.vertex_count() && canonical_code(a) == canonical_code(b)
}

/// Canonical code together with the canonically labeled representative.
pub fn canonical_form(t: &Tree) -> (CanonicalCode, Tree) {
    let code = canonical_code(t);
    let tree = code.to_tree().expect("canonical codes decode");
    (code, tree)
}
