//! Small labelled patterns and their induced embeddings into host graphs.
//!
//! The catalog of order `m` holds one representative per isomorphism class
//! of graphs on `m` vertices. The class is identified by its canonical code,
//! the smallest adjacency code over all relabellings. Representatives are
//! relabelled into breadth-first order so that, for connected patterns,
//! every vertex after the first has an earlier neighbour.

use std::sync::OnceLock;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{io, Graph};

/// Largest pattern order the catalog supports.
pub const MAX_PATTERN_ORDER: usize = 6;

#[derive(Clone, Debug)]
pub struct Pattern {
    graph: Graph,
    code: u64,
    automorphisms: Vec<Vec<usize>>,
    /// For vertex `i > 0`, an earlier neighbour if one exists.
    anchor: Vec<Option<usize>>,
}

/// Summary used inside reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternInfo {
    pub order: usize,
    pub edges: Vec<[usize; 2]>,
    pub graph6: String,
}

impl Pattern {
    fn from_code(m: usize, code: u64) -> Self {
        let raw = Graph::from_small_code(m, code);
        let order = bfs_order(&raw);
        let graph = raw.induced_ordered(&order);
        let automorphisms = (0..m)
            .permutations(m)
            .filter(|f| graph.edges().iter().all(|&(u, v)| graph.has_edge(f[u], f[v])))
            .collect();
        let anchor = (0..m)
            .map(|i| (0..i).find(|&j| graph.has_edge(i, j)))
            .collect();
        Pattern {
            graph,
            code,
            automorphisms,
            anchor,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// Canonical code of the isomorphism class.
    pub fn code(&self) -> u64 {
        self.code
    }

    /// Automorphisms as image lists.
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        &self.automorphisms
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn info(&self) -> PatternInfo {
        PatternInfo {
            order: self.order(),
            edges: self.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            graph6: io::to_graph6(&self.graph),
        }
    }
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut head = start;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

/// Canonical code of a graph with at most [`MAX_PATTERN_ORDER`] vertices.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let m = g.n();
    if m > MAX_PATTERN_ORDER {
        return Err(Error::capability(format!(
            "canonical codes are limited to order {MAX_PATTERN_ORDER}"
        )));
    }
    let edges = g.edges();
    Ok((0..m)
        .permutations(m)
        .map(|f| {
            Graph::from_edges(m, edges.iter().map(|&(u, v)| (f[u], f[v])))
                .expect("relabelling")
                .small_code()
        })
        .min()
        .unwrap_or(0))
}

fn build_catalog(m: usize) -> Vec<Pattern> {
    let pairs = m * m.saturating_sub(1) / 2;
    let total = 1usize << pairs;
    let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    // Bit index of pair (i, j), i < j, in the colex code.
    let bit = |i: usize, j: usize| {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        j * (j - 1) / 2 + i
    };
    let pair_list: Vec<(usize, usize)> = (1..m).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for code in 0..total {
        if seen[code] {
            continue;
        }
        // `code` is the smallest member of its class: every smaller code
        // was either a representative or already marked.
        for f in &perms {
            let mut image = 0usize;
            for (b, &(i, j)) in pair_list.iter().enumerate() {
                if code >> b & 1 == 1 {
                    image |= 1 << bit(f[i], f[j]);
                }
            }
            seen[image] = true;
        }
        out.push(Pattern::from_code(m, code as u64));
    }
    out
}

/// All patterns of order `m` (one per isomorphism class), in canonical-code
/// order. Computed once per order.
pub fn catalog(m: usize) -> Result<&'static [Pattern]> {
    static CATALOGS: [OnceLock<Vec<Pattern>>; MAX_PATTERN_ORDER + 1] =
        [const { OnceLock::new() }; MAX_PATTERN_ORDER + 1];
    if m == 0 || m > MAX_PATTERN_ORDER {
        return Err(Error::capability(format!(
            "pattern order must be between 1 and {MAX_PATTERN_ORDER}, got {m}"
        )));
    }
    Ok(CATALOGS[m].get_or_init(|| build_catalog(m)))
}

/// Connected patterns of order `m`.
pub fn connected_catalog(m: usize) -> Result<Vec<&'static Pattern>> {
    Ok(catalog(m)?.iter().filter(|p| p.is_connected()).collect())
}

/// The catalog entry isomorphic to `g`.
pub fn find_pattern(g: &Graph) -> Result<&'static Pattern> {
    let code = canonical_code(g)?;
    let cat = catalog(g.n())?;
    Ok(cat.iter().find(|p| p.code == code).expect("catalog is complete"))
}

/// All injective tuples `(v_0, .., v_{m-1})` of host vertices such that
/// `v_i ~ v_j` exactly when `i ~ j` in the pattern. Sorted lexicographically.
pub fn embeddings(p: &Pattern, host: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut tuple = Vec::with_capacity(p.order());
    extend_embedding(p, host, &mut tuple, &mut out);
    out.sort_unstable();
    out
}

fn extend_embedding(p: &Pattern, host: &Graph, tuple: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let i = tuple.len();
    if i == p.order() {
        out.push(tuple.clone());
        return;
    }
    let try_vertex = |v: usize, tuple: &mut Vec<usize>, out: &mut Vec<Vec<usize>>| {
        if tuple.contains(&v) {
            return;
        }
        if (0..i).all(|j| host.has_edge(tuple[j], v) == p.graph.has_edge(j, i)) {
            tuple.push(v);
            extend_embedding(p, host, tuple, out);
            tuple.pop();
        }
    };
    match p.anchor[i] {
        Some(j) => {
            for &v in host.neighbors(tuple[j]) {
                try_vertex(v, tuple, out);
            }
        }
        None => {
            for v in 0..host.n() {
                try_vertex(v, tuple, out);
            }
        }
    }
}
