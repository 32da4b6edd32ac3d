//! Simple connected graphs, trees, pendant boundary conditions and the
//! interior subgraph left after removing Dirichlet pendants.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Simple connected undirected graph on vertices `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    p: usize,
    /// Sorted, each pair stored as `(min, max)`.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(p: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if p == 0 {
            return Err(Error::InvalidGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= p || v >= p {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} out of range for {p} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); p];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let g = Graph { p, edges, adj };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.p];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.p
    }

    pub fn vertex_count(&self) -> usize {
        self.p
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Vertex degrees; they sum to twice the edge count.
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Degree-1 vertices in increasing order.
    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.p).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn pendant_count(&self) -> usize {
        (0..self.p).filter(|&v| self.degree(v) == 1).count()
    }

    /// `D^{-1/2} A D^{-1/2}`. Requires every vertex to have an edge.
    pub fn normalized_adjacency(&self) -> Result<Vec<Vec<f64>>> {
        let deg = self.degrees();
        if deg.contains(&0) {
            return Err(Error::InvalidGraph("isolated vertex".into()));
        }
        let mut m = vec![vec![0.0; self.p]; self.p];
        for &(u, v) in &self.edges {
            let w = 1.0 / libm::sqrt((deg[u] * deg[v]) as f64);
            m[u][v] = w;
            m[v][u] = w;
        }
        Ok(m)
    }

    /// Interior subgraph `Ĝ`: drops the Dirichlet pendants and their edges,
    /// keeping the degrees of the surviving vertices as they were in `self`.
    pub fn interior_subgraph(&self, b: &BoundaryConfig) -> Result<InteriorSubgraph> {
        b.validate(self)?;
        let vertices: Vec<usize> = (0..self.p).filter(|v| !b.is_dirichlet(*v)).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyInterior);
        }
        let n = vertices.len();
        let mut adjacency = vec![vec![false; n]; n];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                adjacency[i][j] = self.is_adjacent(u, v);
            }
        }
        let weights = vertices.iter().map(|&v| self.degree(v)).collect();
        Ok(InteriorSubgraph {
            vertices,
            adjacency,
            weights,
        })
    }
}

/// Connected graph with exactly `p − 1` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree(Graph);

impl Tree {
    pub fn new(p: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Tree> {
        Tree::try_from(Graph::new(p, edges)?)
    }

    /// Path on `n ≥ 1` vertices.
    pub fn path(n: usize) -> Tree {
        Tree::new(n, (1..n).map(|v| (v - 1, v))).expect("path is a tree")
    }

    /// Star with center 0 and `leaves` pendant vertices.
    pub fn star(leaves: usize) -> Tree {
        Tree::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is a tree")
    }

    /// Spider: center 0 with one path of each given length attached.
    pub fn spider(legs: &[usize]) -> Tree {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Tree::new(next, edges).expect("spider is a tree")
    }

    /// Two adjacent centers carrying `a` and `b` pendant vertices.
    pub fn double_star(a: usize, b: usize) -> Tree {
        let mut edges = vec![(0, 1)];
        edges.extend((0..a).map(|i| (0, 2 + i)));
        edges.extend((0..b).map(|i| (1, 2 + a + i)));
        Tree::new(a + b + 2, edges).expect("double star is a tree")
    }

    pub fn as_graph(&self) -> &Graph {
        &self.0
    }

    /// Same tree with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        let p = self.vertex_count();
        let mut seen = vec![false; p];
        if perm.len() != p
            || perm
                .iter()
                .any(|&v| v >= p || core::mem::replace(&mut seen[v], true))
        {
            return Err(Error::InvalidGraph(
                "relabeling is not a permutation".into(),
            ));
        }
        Tree::new(p, self.edges().iter().map(|&(u, v)| (perm[u], perm[v])))
    }
}

impl TryFrom<Graph> for Tree {
    type Error = Error;

    fn try_from(g: Graph) -> Result<Tree> {
        if g.edge_count() + 1 != g.vertex_count() {
            return Err(Error::NotATree(format!(
                "{} vertices but {} edges",
                g.vertex_count(),
                g.edge_count()
            )));
        }
        Ok(Tree(g))
    }
}

impl Deref for Tree {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

/// Which pendant vertices carry a Dirichlet condition; the remaining pendants
/// are Neumann.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryConfig {
    dirichlet: BTreeSet<usize>,
}

impl BoundaryConfig {
    pub fn new(g: &Graph, dirichlet: impl IntoIterator<Item = usize>) -> Result<BoundaryConfig> {
        let b = BoundaryConfig {
            dirichlet: dirichlet.into_iter().collect(),
        };
        b.validate(g)?;
        Ok(b)
    }

    pub fn all_dirichlet(g: &Graph) -> BoundaryConfig {
        BoundaryConfig {
            dirichlet: g.pendant_vertices().into_iter().collect(),
        }
    }

    pub fn all_neumann() -> BoundaryConfig {
        BoundaryConfig {
            dirichlet: BTreeSet::new(),
        }
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.dirichlet {
            if v >= g.vertex_count() || g.degree(v) != 1 {
                return Err(Error::InvalidBoundary(format!(
                    "vertex {v} is not a pendant vertex"
                )));
            }
        }
        Ok(())
    }

    /// Number of Dirichlet pendants.
    pub fn r(&self) -> usize {
        self.dirichlet.len()
    }

    pub fn is_dirichlet(&self, v: usize) -> bool {
        self.dirichlet.contains(&v)
    }

    pub fn dirichlet_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.dirichlet.iter().copied()
    }
}

/// `Ĝ` with its adjacency `Â` and the original degrees `D̂_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorSubgraph {
    /// Retained vertices of the host graph, increasing.
    pub vertices: Vec<usize>,
    pub adjacency: Vec<Vec<bool>>,
    /// Degrees in the host graph.
    pub weights: Vec<usize>,
}

impl InteriorSubgraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn subgraph_degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|&&a| a).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_pendants() {
        assert_eq!(Tree::path(3).degrees(), vec![1, 2, 1]);
        assert_eq!(Tree::star(3).degrees(), vec![3, 1, 1, 1]);
        let mut d = Tree::spider(&[1, 1, 3]).degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 2, 2, 3]);
        assert_eq!(Tree::path(3).pendant_vertices(), vec![0, 2]);
        assert_eq!(Tree::star(3).pendant_vertices(), vec![1, 2, 3]);
        assert_eq!(Tree::path(2).pendant_vertices(), vec![0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::new(3, [(0, 1), (0, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(2, [(1, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert_eq!(Graph::new(4, [(0, 1), (2, 3)]), Err(Error::Disconnected));
        assert!(matches!(
            Tree::new(3, [(0, 1), (1, 2), (0, 2)]),
            Err(Error::NotATree(_))
        ));
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn interior_subgraph_keeps_original_degrees() {
        let p3 = Tree::path(3);
        let s = p3
            .interior_subgraph(&BoundaryConfig::all_dirichlet(&p3))
            .unwrap();
        assert_eq!(s.vertices, vec![1]);
        assert_eq!(s.weights, vec![2]);
        assert_eq!(s.subgraph_degree(0), 0);

        let s3 = Tree::star(3);
        let s = s3
            .interior_subgraph(&BoundaryConfig::all_dirichlet(&s3))
            .unwrap();
        assert_eq!(s.weights, vec![3]);

        let p4 = Tree::path(4);
        let s = p4
            .interior_subgraph(&BoundaryConfig::all_dirichlet(&p4))
            .unwrap();
        assert_eq!(s.vertices, vec![1, 2]);
        assert_eq!(s.weights, vec![2, 2]);
        assert!(s.adjacency[0][1] && s.adjacency[1][0]);

        let p2 = Tree::path(2);
        assert_eq!(
            p2.interior_subgraph(&BoundaryConfig::all_dirichlet(&p2)),
            Err(Error::EmptyInterior)
        );
    }

    #[test]
    fn boundary_must_be_pendant() {
        let p3 = Tree::path(3);
        assert!(BoundaryConfig::new(&p3, [1]).is_err());
        assert!(BoundaryConfig::new(&p3, [7]).is_err());
        assert_eq!(BoundaryConfig::new(&p3, [0]).unwrap().r(), 1);
    }

    #[test]
    fn normalized_adjacency_entries() {
        let m = Tree::path(2).normalized_adjacency().unwrap();
        assert_eq!(m[0][1], 1.0);
        let m = Tree::path(3).normalized_adjacency().unwrap();
        assert!((m[0][1] - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(m[0][2], 0.0);
        let m = Tree::star(3).normalized_adjacency().unwrap();
        assert!((m[0][3] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(m[2][3], m[3][2]);
        assert!(Graph::new(1, []).unwrap().normalized_adjacency().is_err());
    }

    #[test]
    fn relabel_checks_permutation() {
        let t = Tree::path(3);
        assert!(t.relabel(&[0, 0, 1]).is_err());
        assert_eq!(t.relabel(&[1, 0, 2]).unwrap().degrees(), vec![2, 1, 1]);
    }
}
