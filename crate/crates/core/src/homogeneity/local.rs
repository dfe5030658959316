//! Local actions, the rank-3 criterion, arc and geodesic transitivity, and
//! the classification of `(G, k)`-CH graphs for `k >= 3`.

use serde::Serialize;

use super::{check_group_on_graph, is_kCH};
use crate::action::Action;
use crate::error::{Error, Result};
use crate::graph::{Graph, Shape};
use crate::group::PermGroup;

#[derive(Clone, Debug, Serialize)]
pub struct LocalActionReport {
    pub vertex: usize,
    pub valency: usize,
    pub stabilizer_order: u128,
    /// Order of `G_v^{Γ(v)}`.
    pub local_order: u128,
    pub kernel_order: u128,
    pub transitive: bool,
    pub two_transitive: bool,
    /// Rank of the local action; absent when it is intransitive.
    pub rank: Option<usize>,
    /// Suborbits of the local action at the first neighbour, as host
    /// vertices, base first. Empty when intransitive.
    pub suborbits: Vec<Vec<usize>>,
    /// Orbits of `G_v` on `Γ(v)`, as host vertices.
    pub orbits: Vec<Vec<usize>>,
    pub primitive: Option<bool>,
    /// Minimal block systems of the local action, as host vertices.
    pub block_systems: Vec<Vec<Vec<usize>>>,
    /// Shape of the induced subgraph `[Γ(v)]`.
    pub shape: Shape,
}

/// `G_v` acting on `Γ(v)`; domain point `i` is the `i`-th neighbour.
pub fn local_action_group(g: &Graph, group: &PermGroup, v: usize) -> Result<Action> {
    check_group_on_graph(g, group)?;
    if v >= g.n() {
        return Err(Error::input(format!("vertex {v} out of range")));
    }
    if g.degree(v) == 0 {
        return Err(Error::input(format!("vertex {v} is isolated")));
    }
    let stab = group.point_stabilizer(v)?;
    Action::on_points(&stab, g.neighbors(v))
}

pub fn local_action(g: &Graph, group: &PermGroup, v: usize) -> Result<LocalActionReport> {
    let act = local_action_group(g, group, v)?;
    let nb = g.neighbors(v);
    let to_host = |xs: &[usize]| xs.iter().map(|&i| nb[i]).collect::<Vec<_>>();
    let img = act.image();
    let transitive = img.is_transitive();
    let two_transitive = transitive && (nb.len() == 1 || img.is_k_transitive(2)?);
    let (rank, suborbits, primitive, block_systems) = if transitive {
        let subs = img.suborbits(0)?;
        let systems = img.minimal_block_systems()?;
        let blocks = systems
            .iter()
            .filter(|s| !s.is_trivial())
            .map(|s| s.blocks.iter().map(|b| to_host(b)).collect())
            .collect();
        (
            Some(subs.len()),
            subs.iter().map(|s| to_host(s)).collect(),
            Some(img.is_primitive()?),
            blocks,
        )
    } else {
        (None, Vec::new(), None, Vec::new())
    };
    let (local_graph, _) = g.induced_subgraph(nb)?;
    let stabilizer_order = act.source().order();
    let kernel_order = act.kernel().order();
    debug_assert_eq!(kernel_order * img.order(), stabilizer_order);
    Ok(LocalActionReport {
        vertex: v,
        valency: nb.len(),
        stabilizer_order,
        local_order: img.order(),
        kernel_order,
        transitive,
        two_transitive,
        rank,
        suborbits,
        orbits: img.orbits().iter().map(|o| to_host(o)).collect(),
        primitive,
        block_systems: blocks_sorted(block_systems),
        shape: local_graph.shape(),
    })
}

fn blocks_sorted(mut systems: Vec<Vec<Vec<usize>>>) -> Vec<Vec<Vec<usize>>> {
    for s in &mut systems {
        for b in s.iter_mut() {
            b.sort_unstable();
        }
        s.sort();
    }
    systems.sort();
    systems
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop12Branch {
    TwoTransitive,
    RankThreeGirthThree,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop12Report {
    pub vertex_transitive: bool,
    pub local_two_transitive: bool,
    pub local_rank: Option<usize>,
    pub girth: Option<usize>,
    pub branch: Option<Prop12Branch>,
    pub verdict: bool,
}

/// Evaluates: `G` vertex-transitive, and `G_u^{Γ(u)}` 2-transitive or of
/// rank 3 with girth 3.
pub fn proposition_1_2_check(g: &Graph, group: &PermGroup) -> Result<Prop12Report> {
    check_group_on_graph(g, group)?;
    if !g.is_connected() || g.n() < 2 {
        return Err(Error::input("the rank-3 criterion needs a connected graph with an edge"));
    }
    let vertex_transitive = group.is_transitive();
    let local = local_action(g, group, 0)?;
    let girth = g.girth();
    let branch = if !vertex_transitive {
        None
    } else if local.two_transitive {
        Some(Prop12Branch::TwoTransitive)
    } else if local.rank == Some(3) && girth == Some(3) {
        Some(Prop12Branch::RankThreeGirthThree)
    } else {
        None
    };
    Ok(Prop12Report {
        vertex_transitive,
        local_two_transitive: local.two_transitive,
        local_rank: local.rank,
        girth,
        branch,
        verdict: branch.is_some(),
    })
}

/// All `s`-arcs `(v_0, .., v_s)`: consecutive vertices adjacent and
/// `v_{i-1} != v_{i+1}`. Sorted lexicographically.
pub fn s_arcs(g: &Graph, s: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    for _ in 0..s {
        let mut next = Vec::new();
        for arc in &out {
            let last = arc[arc.len() - 1];
            for &w in g.neighbors(last) {
                if arc.len() >= 2 && arc[arc.len() - 2] == w {
                    continue;
                }
                let mut a = arc.clone();
                a.push(w);
                next.push(a);
            }
        }
        out = next;
    }
    out
}

fn single_orbit(group: &PermGroup, tuples: &[Vec<usize>]) -> Result<bool> {
    match tuples.first() {
        None => Ok(true),
        Some(t) => Ok(group.tuple_orbit_size(t)? == tuples.len() as u128),
    }
}

pub fn is_s_arc_transitive(g: &Graph, group: &PermGroup, s: usize) -> Result<bool> {
    check_group_on_graph(g, group)?;
    if s > 3 {
        return Err(Error::input(format!("s-arc transitivity is supported for s <= 3, got {s}")));
    }
    let arcs = s_arcs(g, s);
    if arcs.is_empty() {
        return Err(Error::input(format!("the graph has no {s}-arcs")));
    }
    single_orbit(group, &arcs)
}

/// Transitive on vertices, arcs and 2-geodesics.
pub fn is_2_geodesic_transitive(g: &Graph, group: &PermGroup) -> Result<bool> {
    check_group_on_graph(g, group)?;
    if g.edge_count() == 0 {
        return Err(Error::input("the graph has no arcs"));
    }
    let geodesics: Vec<Vec<usize>> = s_arcs(g, 2)
        .into_iter()
        .filter(|a| !g.has_edge(a[0], a[2]))
        .collect();
    Ok(group.is_transitive() && single_orbit(group, &s_arcs(g, 1))? && single_orbit(group, &geodesics)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem13Case {
    NotCh,
    /// (i) `K_n`.
    Complete,
    /// (ii) `K_{m[b]}`, `b >= 2`.
    CompleteMultipartite,
    /// (iii) 2-arc transitive, girth at least 4.
    TwoArcTransitive,
    /// (iv) `[Γ(u)] = rK_b`, `r, b > 1`.
    LocallyDisjointCliques,
    /// (v) locally connected, primitive local action of rank 3.
    LocallyConnected,
}

impl Theorem13Case {
    pub fn label(self) -> &'static str {
        match self {
            Theorem13Case::NotCh => "not k-CH",
            Theorem13Case::Complete => "(i)",
            Theorem13Case::CompleteMultipartite => "(ii)",
            Theorem13Case::TwoArcTransitive => "(iii)",
            Theorem13Case::LocallyDisjointCliques => "(iv)",
            Theorem13Case::LocallyConnected => "(v)",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClassifyEvidence {
    pub k_transitive: Option<bool>,
    pub multipartite: Option<(usize, usize)>,
    pub girth: Option<usize>,
    pub two_arc_transitive: Option<bool>,
    pub local_cliques: Option<(usize, usize)>,
    pub local_rank: Option<usize>,
    pub local_primitive: Option<bool>,
    pub local_connected: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub k: usize,
    pub ch: bool,
    pub case: Theorem13Case,
    pub case_label: &'static str,
    pub evidence: ClassifyEvidence,
    /// The evidence matches what the theorem asserts for the case.
    pub consistent: bool,
    pub note: Option<String>,
}

/// Places a `(G, k)`-CH graph (`k >= 3`) in the first matching case of the
/// classification, with supporting evidence.
pub fn theorem_1_3_classify(g: &Graph, group: &PermGroup, k: usize) -> Result<ClassifyReport> {
    if k < 3 {
        return Err(Error::input(format!("classification needs k >= 3, got {k}")));
    }
    let ch = is_kCH(g, group, k)?.verdict;
    let mut ev = ClassifyEvidence::default();
    let mut note = None;
    let report = |case: Theorem13Case, ev: ClassifyEvidence, consistent: bool, note: Option<String>| {
        ClassifyReport {
            k,
            ch,
            case,
            case_label: case.label(),
            evidence: ev,
            consistent,
            note,
        }
    };
    if !ch {
        return Ok(report(Theorem13Case::NotCh, ev, true, None));
    }
    if !g.is_connected() {
        return Err(Error::input("classification needs a connected graph"));
    }
    if g.is_complete() {
        let t = group.is_k_transitive(k.min(g.n()))?;
        ev.k_transitive = Some(t);
        return Ok(report(Theorem13Case::Complete, ev, t, None));
    }
    if let Some((m, b)) = g.detect_complete_multipartite() {
        ev.multipartite = Some((m, b));
        return Ok(report(Theorem13Case::CompleteMultipartite, ev, b >= 2, None));
    }
    ev.girth = g.girth();
    if ev.girth.is_none_or(|girth| girth >= 4) {
        let t = is_s_arc_transitive(g, group, 2)?;
        ev.two_arc_transitive = Some(t);
        return Ok(report(Theorem13Case::TwoArcTransitive, ev, t, None));
    }
    let local = local_action(g, group, 0)?;
    ev.local_rank = local.rank;
    ev.local_primitive = local.primitive;
    let (local_graph, _) = g.induced_subgraph(g.neighbors(0))?;
    ev.local_connected = Some(local_graph.is_connected());
    if let Some((r, b)) = local_graph.detect_disjoint_cliques().filter(|&(r, b)| r > 1 && b > 1) {
        ev.local_cliques = Some((r, b));
        let ok = local.rank == Some(3) && local.primitive == Some(false);
        return Ok(report(Theorem13Case::LocallyDisjointCliques, ev, ok, None));
    }
    if k >= 5 {
        note = Some("for k = 5 the theorem further identifies the graph as the Schläfli graph or its complement; not verified".into());
    }
    let ok = local.rank == Some(3) && local.primitive == Some(true) && ev.local_connected == Some(true);
    Ok(report(Theorem13Case::LocallyConnected, ev, ok, note))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions as c;
    use crate::graph::named;

    #[test]
    fn local_actions() {
        let h = c::hamming(2, 4).unwrap();
        let r = local_action(&h.graph, &h.group, 0).unwrap();
        assert_eq!(r.rank, Some(3));
        let mut sizes: Vec<usize> = r.suborbits.iter().map(|s| s.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(r.shape, Shape::DisjointCliques { r: 2, b: 3 });
        assert_eq!(r.primitive, Some(false));
        let j = c::johnson_complement(7, 2).unwrap();
        let r = local_action(&j.graph, &j.group, 0).unwrap();
        assert_eq!((r.rank, r.primitive), (Some(3), Some(true)));
        assert_eq!(r.shape, Shape::ConnectedOther);
        let k6 = c::complete(6).unwrap();
        let r = local_action(&k6.graph, &k6.group, 2).unwrap();
        assert!(r.two_transitive);
        assert_eq!(r.rank, Some(2));
        assert!(local_action(&Graph::empty(3), &PermGroup::symmetric(3), 0).is_err());
    }

    #[test]
    fn rank_three_criterion() {
        let p = c::petersen().unwrap();
        let r = proposition_1_2_check(&p.graph, &p.group).unwrap();
        assert_eq!(r.branch, Some(Prop12Branch::TwoTransitive));
        let h = c::hamming(2, 4).unwrap();
        let r = proposition_1_2_check(&h.graph, &h.group).unwrap();
        assert_eq!(r.branch, Some(Prop12Branch::RankThreeGirthThree));
        let c6 = c::cycle(6).unwrap();
        assert!(proposition_1_2_check(&c6.graph, &c6.group).unwrap().verdict);
    }

    #[test]
    fn arcs() {
        let p = c::petersen().unwrap();
        assert!(is_s_arc_transitive(&p.graph, &p.group, 3).unwrap());
        let q4 = c::hypercube(4).unwrap();
        assert!(is_s_arc_transitive(&q4.graph, &q4.group, 2).unwrap());
        assert!(!is_s_arc_transitive(&named::cycle(5), &PermGroup::cyclic(5), 1).unwrap());
        assert!(is_s_arc_transitive(&Graph::empty(3), &PermGroup::symmetric(3), 1).is_err());
        assert!(is_2_geodesic_transitive(&p.graph, &p.group).unwrap());
        assert_eq!(s_arcs(&named::cycle(5), 2).len(), 10);
    }

    #[test]
    fn classification() {
        let k6 = c::complete(6).unwrap();
        let r = theorem_1_3_classify(&k6.graph, &k6.group, 3).unwrap();
        assert_eq!(r.case, Theorem13Case::Complete);
        assert!(r.consistent);
        let h = c::hamming(2, 4).unwrap();
        let r = theorem_1_3_classify(&h.graph, &h.group, 3).unwrap();
        assert_eq!(r.case, Theorem13Case::LocallyDisjointCliques);
        assert_eq!(r.evidence.local_cliques, Some((2, 3)));
        assert!(r.consistent);
        let f = c::folded_cube_rank3(5).unwrap();
        let r = theorem_1_3_classify(&f.graph, &f.group, 3).unwrap();
        assert_eq!(r.case, Theorem13Case::LocallyConnected);
        assert!(r.consistent);
        let k33 = c::complete_multipartite(2, 3).unwrap();
        let r = theorem_1_3_classify(&k33.graph, &k33.group, 3).unwrap();
        assert_eq!(r.case, Theorem13Case::CompleteMultipartite);
        let p = c::petersen().unwrap();
        let r = theorem_1_3_classify(&p.graph, &p.group, 3).unwrap();
        assert_eq!(r.case, Theorem13Case::TwoArcTransitive);
        let c5 = named::cycle(5);
        let r = theorem_1_3_classify(&c5, &PermGroup::cyclic(5), 3).unwrap();
        assert_eq!(r.case, Theorem13Case::NotCh);
    }
}
