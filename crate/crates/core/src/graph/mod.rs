//! Finite simple undirected graphs on `{0, .., n-1}`.

mod automorphism;
pub mod io;

use std::collections::VecDeque;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest order accepted by [`small_isomorphisms`].
pub const SMALL_ISO_MAX: usize = 6;

/// Adjacency lists (sorted) plus one bitset row per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    rows: Vec<Vec<u64>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Shape of a graph as seen by the structural detectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Complete { n: usize },
    /// `r` disjoint cliques of order `b`.
    DisjointCliques { r: usize, b: usize },
    /// Complete multipartite with `m` parts of size `b`.
    CompleteMultipartite { m: usize, b: usize },
    ConnectedOther,
    DisconnectedOther,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            rows: vec![vec![0; n.div_ceil(64)]; n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            g.set(u, v);
            g.set(v, u);
        }
        for list in &mut g.adj {
            list.clear();
        }
        for u in 0..n {
            for v in 0..n {
                if g.has_edge(u, v) {
                    g.adj[u].push(v);
                }
            }
        }
        Ok(g)
    }

    /// Graph with `u ~ v` iff `adjacent(u, v)`, for `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let edges: Vec<(usize, usize)> = (0..n)
            .tuple_combinations()
            .filter(|&(u, v)| adjacent(u, v))
            .collect();
        Graph::from_edges(n, edges).expect("edges in range")
    }

    fn set(&mut self, u: usize, v: usize) {
        self.rows[u][v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Common valency, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, |a| a.len());
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Breadth-first distances from `v`; `None` marks unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].expect("queued");
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp: Vec<usize> = self
                .distances_from(s)
                .iter()
                .enumerate()
                .filter_map(|(i, d)| d.map(|_| i))
                .collect();
            comp.sort_unstable();
            for &x in &comp {
                seen[x] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.distances_from(0).iter().all(|d| d.is_some())
    }

    /// Layers `Γ_0(v), Γ_1(v), ...` by BFS distance, plus the vertices not
    /// reachable from `v`.
    pub fn distance_layers(&self, v: usize) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
        self.check_vertex(v)?;
        let dist = self.distances_from(v);
        let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); ecc + 1];
        let mut unreached = Vec::new();
        for (x, d) in dist.iter().enumerate() {
            match d {
                Some(d) => layers[*d].push(x),
                None => unreached.push(x),
            }
        }
        Ok((layers, unreached))
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[x] + 1 >= b {
                        break;
                    }
                }
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn has_triangle(&self) -> bool {
        (0..self.n).any(|u| {
            self.adj[u]
                .iter()
                .tuple_combinations()
                .any(|(&v, &w)| self.has_edge(v, w))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::input(format!("vertex {v} out of range for n = {}", self.n)));
        }
        Ok(())
    }

    /// Subgraph induced on `vs`; vertex `i` of the result is the `i`-th
    /// smallest element of `vs`, which is also returned.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if vs.is_empty() {
            return Err(Error::input("induced subgraph on an empty vertex set"));
        }
        for &v in vs {
            self.check_vertex(v)?;
        }
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let g = self.induced_ordered(&sorted);
        Ok((g, sorted))
    }

    /// Subgraph induced on a tuple, keeping the tuple's order.
    pub fn induced_ordered(&self, tuple: &[usize]) -> Graph {
        let m = tuple.len();
        Graph::from_fn(m, |i, j| self.has_edge(tuple[i], tuple[j]))
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Line graph; vertex `i` is the `i`-th edge in lexicographic order.
    pub fn line_graph(&self) -> Result<(Graph, Vec<(usize, usize)>)> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(Error::input("line graph of an edgeless graph"));
        }
        let g = Graph::from_fn(edges.len(), |i, j| {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            a == c || a == d || b == c || b == d
        });
        Ok((g, edges))
    }

    /// Relabels vertices: vertex `v` becomes `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Graph {
        Graph::from_edges(self.n, self.edges().into_iter().map(|(u, v)| (p.image(u), p.image(v))))
            .expect("bijection")
    }

    /// `p` maps edges to edges and non-edges to non-edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && self
                .edges()
                .iter()
                .all(|&(u, v)| self.has_edge(p.image(u), p.image(v)))
    }

    /// Disjoint union of `r` cliques of order `b`.
    pub fn disjoint_cliques(r: usize, b: usize) -> Graph {
        Graph::from_fn(r * b, |u, v| u / b == v / b)
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|a| a.len() + 1 == self.n)
    }

    /// `(r, b)` when the graph is `r` disjoint cliques of common order `b`.
    pub fn detect_disjoint_cliques(&self) -> Option<(usize, usize)> {
        if self.n == 0 {
            return None;
        }
        let comps = self.components();
        let b = comps[0].len();
        let ok = comps.iter().all(|c| {
            c.len() == b && c.iter().all(|&v| self.degree(v) == b - 1)
        });
        ok.then_some((comps.len(), b))
    }

    /// `(m, b)` when the graph is complete multipartite with `m` parts of
    /// size `b` (complement is `m` disjoint `b`-cliques). `K_n` is reported
    /// as `(n, 1)`.
    pub fn detect_complete_multipartite(&self) -> Option<(usize, usize)> {
        self.complement().detect_disjoint_cliques()
    }

    /// Parts of a complete multipartite graph whose parts have unequal
    /// sizes, reported separately from the equal-part case.
    pub fn complete_multipartite_part_sizes(&self) -> Option<Vec<usize>> {
        let co = self.complement();
        let comps = co.components();
        let cliques = comps
            .iter()
            .all(|c| c.iter().all(|&v| co.degree(v) + 1 == c.len()));
        cliques.then(|| comps.iter().map(|c| c.len()).collect())
    }

    /// Classification used by local-structure reports.
    pub fn shape(&self) -> Shape {
        if self.is_complete() {
            return Shape::Complete { n: self.n };
        }
        if let Some((r, b)) = self.detect_disjoint_cliques() {
            return Shape::DisjointCliques { r, b };
        }
        if let Some((m, b)) = self.detect_complete_multipartite() {
            return Shape::CompleteMultipartite { m, b };
        }
        if self.is_connected() {
            Shape::ConnectedOther
        } else {
            Shape::DisconnectedOther
        }
    }

    /// Adjacency bit code over pairs `(i, j)`, `i < j`, in colexicographic
    /// order (`j` outer). Only for graphs with at most 11 vertices.
    pub(crate) fn small_code(&self) -> u64 {
        assert!(self.n <= 11);
        let mut code = 0u64;
        let mut bit = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    pub(crate) fn from_small_code(n: usize, code: u64) -> Graph {
        let mut edges = Vec::new();
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if code >> bit & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        Graph::from_edges(n, edges).expect("in range")
    }
}

/// All isomorphisms `a -> b` (as image lists `v -> iso[v]`), by exhaustive
/// search over injections. Orders above [`SMALL_ISO_MAX`] are refused.
pub fn small_isomorphisms(a: &Graph, b: &Graph) -> Result<Vec<Vec<usize>>> {
    if a.n() > SMALL_ISO_MAX || b.n() > SMALL_ISO_MAX {
        return Err(Error::capability(format!(
            "exhaustive isomorphism search is limited to order {SMALL_ISO_MAX}"
        )));
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(Vec::new());
    }
    let n = a.n();
    let a_edges = a.edges();
    Ok((0..n)
        .permutations(n)
        .filter(|f| a_edges.iter().all(|&(u, v)| b.has_edge(f[u], f[v])))
        .collect())
}

/// Named small graphs used throughout the tests and the CLI.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| (v - u) % n == 1 || (u + n - v) % n == 1)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1)
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_fn(leaves + 1, |u, _| u == 0)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_fn(a + b, |u, v| (u < a) != (v < a))
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn petersen() -> Graph {
        // Kneser K(5,2): 2-subsets adjacent when disjoint.
        let pairs: Vec<(usize, usize)> = (0..5).tuple_combinations().collect();
        Graph::from_fn(10, |i, j| {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            a != c && a != d && b != c && b != d
        })
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = complete(4).induced_subgraph(&[3, 1, 2]).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert!(k3.is_complete() && k3.n() == 3);
        let (p3, _) = cycle(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let pet = petersen();
        let nb = pet.neighbors(0).to_vec();
        let (local, _) = pet.induced_subgraph(&nb).unwrap();
        assert_eq!(local.edge_count(), 0);
        assert!(cycle(5).induced_subgraph(&[7]).is_err());
        assert!(cycle(5).induced_subgraph(&[]).is_err());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(cycle(6).girth(), Some(6));
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(path(5).girth(), None);
        assert_eq!(complete_bipartite(3, 3).girth(), Some(4));
    }

    #[test]
    fn layers() {
        let (l, un) = complete(5).distance_layers(2).unwrap();
        assert_eq!(l.iter().map(|x| x.len()).collect::<Vec<_>>(), vec![1, 4]);
        assert!(un.is_empty());
        let (l, _) = cycle(6).distance_layers(0).unwrap();
        assert_eq!(l.iter().map(|x| x.len()).collect::<Vec<_>>(), vec![1, 2, 2, 1]);
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let (l, un) = g.distance_layers(0).unwrap();
        assert_eq!(l, vec![vec![0], vec![1]]);
        assert_eq!(un, vec![2, 3]);
    }

    #[test]
    fn line_graphs() {
        let (l, _) = complete(3).line_graph().unwrap();
        assert!(l.is_complete() && l.n() == 3);
        let (l, _) = star(3).line_graph().unwrap();
        assert!(l.is_complete() && l.n() == 3);
        let (l, edges) = petersen().line_graph().unwrap();
        assert_eq!(l.n(), 15);
        assert_eq!(edges.len(), 15);
        assert_eq!(l.regular_degree(), Some(4));
        assert!(Graph::empty(3).line_graph().is_err());
    }

    #[test]
    fn detectors() {
        assert_eq!(cycle(4).detect_complete_multipartite(), Some((2, 2)));
        assert_eq!(Graph::disjoint_cliques(2, 3).detect_disjoint_cliques(), Some((2, 3)));
        let p3 = path(3);
        assert!(!p3.is_complete());
        assert_eq!(p3.detect_disjoint_cliques(), None);
        assert_eq!(p3.detect_complete_multipartite(), None);
        // K_{1,2} = P_3 has unequal parts; reported through part sizes.
        assert_eq!(p3.complete_multipartite_part_sizes(), Some(vec![2, 1]));
        assert_eq!(cycle(5).shape(), Shape::ConnectedOther);
    }

    #[test]
    fn small_isos() {
        assert_eq!(small_isomorphisms(&complete(3), &complete(3)).unwrap().len(), 6);
        assert_eq!(small_isomorphisms(&path(3), &path(3)).unwrap().len(), 2);
        assert!(small_isomorphisms(&path(3), &complete(3)).unwrap().is_empty());
        assert!(small_isomorphisms(&cycle(7), &cycle(7)).is_err());
    }

    #[test]
    fn complement_involution() {
        assert_eq!(complete(5).complement().edge_count(), 0);
        let pet = petersen();
        assert_eq!(pet.complement().complement(), pet);
    }
}
