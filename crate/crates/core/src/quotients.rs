//! Normal quotients `Γ_N` and covers.

use serde::Serialize;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::graph::io::to_graph6;
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::homogeneity::{check, check_group_on_graph, is_s_arc_transitive, Mode};
use crate::perm::Permutation;

/// The quotient of a graph by the orbits of a normal subgroup.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// `N`-orbits, sorted by least element.
    pub orbits: Vec<Vec<usize>>,
    pub graph: Graph,
    /// Vertex to orbit index.
    pub projection: Vec<usize>,
    /// Edges with both ends in one orbit.
    pub intra_orbit_edges: Vec<(usize, usize)>,
}

fn check_normal(group: &PermGroup, n: &PermGroup) -> Result<()> {
    if n.degree() != group.degree() {
        return Err(Error::input("normal subgroup and group have different degrees"));
    }
    if !n.is_subgroup_of(group) {
        return Err(Error::input("N is not a subgroup of G"));
    }
    if !group.normalizes(n) {
        return Err(Error::input("N is not normal in G"));
    }
    Ok(())
}

/// `Γ_N`: orbits of `N` adjacent when some pair of members is adjacent.
pub fn quotient_graph(g: &Graph, group: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    check_group_on_graph(g, group)?;
    check_normal(group, n)?;
    if n.is_transitive() {
        return Err(Error::input("N is transitive, the quotient is a single vertex"));
    }
    let mut orbits = n.orbits();
    orbits.sort_by_key(|o| o[0]);
    let mut projection = vec![0; g.n()];
    for (i, o) in orbits.iter().enumerate() {
        for &v in o {
            projection[v] = i;
        }
    }
    let mut edges = Vec::new();
    let mut intra_orbit_edges = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (projection[u], projection[v]);
        if a == b {
            intra_orbit_edges.push((u, v));
        } else {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_edges(orbits.len(), edges)?;
    Ok(Quotient {
        orbits,
        graph,
        projection,
        intra_orbit_edges,
    })
}

/// The projection maps each neighbourhood `Γ(v)` bijectively onto
/// `Γ_N(v̄)`.
pub fn is_cover(g: &Graph, q: &Quotient) -> bool {
    (0..g.n()).all(|v| {
        let vb = q.projection[v];
        let mut images: Vec<usize> = g.neighbors(v).iter().map(|&w| q.projection[w]).collect();
        images.sort_unstable();
        images.dedup();
        images.len() == g.degree(v) && images.as_slice() == q.graph.neighbors(vb)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub orbits: Vec<Vec<usize>>,
    pub projection: Vec<usize>,
    pub quotient_vertices: usize,
    pub quotient_edges: usize,
    pub quotient_graph6: String,
    pub intra_orbit_edges: Vec<(usize, usize)>,
    /// Hypotheses: `(G, 3)`-CH, not complete multipartite, connected.
    pub three_ch: bool,
    pub complete_multipartite: bool,
    pub connected: bool,
    pub quotient_is_k2: bool,
    /// `K_2` branch: `(G, 2)`-arc-transitive.
    pub two_arc_transitive: Option<bool>,
    pub semiregular: bool,
    pub cover: bool,
    pub group_order: u128,
    pub normal_order: u128,
    /// Kernel of `G` on the orbits.
    pub kernel_order: u128,
    pub quotient_group_order: u128,
    pub kernel_equals_normal: bool,
    pub quotient_ch: Option<bool>,
    pub local_isomorphism: Option<bool>,
    pub verdict: bool,
    pub diagnostics: Vec<String>,
}

impl QuotientReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.three_ch && !self.complete_multipartite && self.connected && self.intra_orbit_edges.is_empty()
    }
}

/// Checks the conclusions about `Γ_N` for a `(G, 3)`-CH graph and an
/// intransitive normal subgroup `N`.
pub fn theorem_1_4_report(g: &Graph, group: &PermGroup, n: &PermGroup) -> Result<QuotientReport> {
    let q = quotient_graph(g, group, n)?;
    let mut diagnostics = Vec::new();
    let three_ch = check(g, group, 3, Mode::Ch)?.verdict;
    if !three_ch {
        diagnostics.push("hypothesis fails: the graph is not (G,3)-CH".to_string());
    }
    let complete_multipartite = g.detect_complete_multipartite().is_some();
    if complete_multipartite {
        diagnostics.push("hypothesis fails: the graph is complete multipartite".to_string());
    }
    let connected = g.is_connected();
    if !connected {
        diagnostics.push("hypothesis fails: the graph is disconnected".to_string());
    }
    if !q.intra_orbit_edges.is_empty() {
        diagnostics.push(format!(
            "{} edges lie inside an N-orbit",
            q.intra_orbit_edges.len()
        ));
    }
    let act = Action::on_partition(group, &q.orbits)?;
    let kernel = act.kernel();
    let quotient_group = act.image().clone();
    let quotient_is_k2 = q.graph.n() == 2 && q.graph.edge_count() == 1;
    let semiregular = n.is_semiregular();
    let cover = is_cover(g, &q);
    let kernel_equals_normal = kernel.same_group(n);

    let mut report = QuotientReport {
        orbits: q.orbits.clone(),
        projection: q.projection.clone(),
        quotient_vertices: q.graph.n(),
        quotient_edges: q.graph.edge_count(),
        quotient_graph6: to_graph6(&q.graph),
        intra_orbit_edges: q.intra_orbit_edges.clone(),
        three_ch,
        complete_multipartite,
        connected,
        quotient_is_k2,
        two_arc_transitive: None,
        semiregular,
        cover,
        group_order: group.order(),
        normal_order: n.order(),
        kernel_order: kernel.order(),
        quotient_group_order: quotient_group.order(),
        kernel_equals_normal,
        quotient_ch: None,
        local_isomorphism: None,
        verdict: false,
        diagnostics,
    };
    if quotient_is_k2 {
        let arc = g.edge_count() > 0 && is_s_arc_transitive(g, group, 2)?;
        report.two_arc_transitive = Some(arc);
        report.verdict = report.hypotheses_hold() && arc;
        return Ok(report);
    }
    let quotient_ch = check(&q.graph, &quotient_group, 3, Mode::Ch)?.verdict;
    report.quotient_ch = Some(quotient_ch);
    let local = local_isomorphism(g, group, &q, &act)?;
    report.local_isomorphism = Some(local);
    let many_orbits = q.orbits.len() >= 3;
    if many_orbits && !semiregular {
        report.diagnostics.push("N is not semiregular".to_string());
    }
    if !cover {
        report.diagnostics.push("the graph is not a cover of the quotient".to_string());
    }
    if !kernel_equals_normal {
        report.diagnostics.push("the kernel on N-orbits differs from N".to_string());
    }
    report.verdict = report.hypotheses_hold()
        && (!many_orbits || semiregular)
        && cover
        && kernel_equals_normal
        && quotient_ch
        && local;
    Ok(report)
}

/// At every vertex `v` in a set of `G`-orbit representatives: `w -> w̄`
/// is a bijection `Γ(v) -> Γ_N(v̄)` intertwining each generator of `G_v`
/// with its image in `Ḡ`, and transporting `G_v^{Γ(v)}` onto
/// `Ḡ_{v̄}^{Γ_N(v̄)}`.
fn local_isomorphism(g: &Graph, group: &PermGroup, q: &Quotient, act: &Action) -> Result<bool> {
    for orbit in group.orbits() {
        let v = orbit[0];
        let vb = q.projection[v];
        let nbrs = g.neighbors(v);
        let qnbrs = q.graph.neighbors(vb);
        if nbrs.len() != qnbrs.len() {
            return Ok(false);
        }
        // Position of w̄ in Γ_N(v̄) for each w in Γ(v).
        let mut square = Vec::with_capacity(nbrs.len());
        for &w in nbrs {
            match qnbrs.binary_search(&q.projection[w]) {
                Ok(i) if !square.contains(&i) => square.push(i),
                _ => return Ok(false),
            }
        }
        let stab = group.point_stabilizer(v)?;
        let mut transported = Vec::new();
        for x in stab.generators() {
            let xb = act.induced(x)?;
            let mut images = vec![0u32; nbrs.len()];
            for (i, &w) in nbrs.iter().enumerate() {
                let wx = x.image(w);
                if xb.image(q.projection[w]) != q.projection[wx] {
                    return Ok(false);
                }
                let j = nbrs.binary_search(&wx).expect("x fixes v");
                images[square[i]] = square[j] as u32;
            }
            transported.push(Permutation::from_images_unchecked(images));
        }
        let transported = PermGroup::from_gens_unchecked(nbrs.len(), transported);
        let qstab = act.image().point_stabilizer(vb)?;
        let qlocal = Action::on_points(&qstab, qnbrs)?;
        if !qlocal.image().same_group(&transported) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A maximal intransitive normal subgroup and the quotient action.
#[derive(Clone, Debug)]
pub struct NormalCandidate {
    pub subgroup: PermGroup,
    pub orbits: usize,
    pub quotient_quasiprimitive: bool,
}

/// Normal subgroups of `G` that are nontrivial, intransitive, and maximal
/// by inclusion among such.
pub fn maximal_intransitive_normal(group: &PermGroup) -> Result<Vec<NormalCandidate>> {
    let intransitive: Vec<PermGroup> = group
        .normal_subgroups()?
        .into_iter()
        .filter(|m| !m.is_trivial() && !m.is_transitive())
        .collect();
    let mut out = Vec::new();
    for (i, m) in intransitive.iter().enumerate() {
        let maximal = intransitive
            .iter()
            .enumerate()
            .all(|(j, other)| i == j || other.order() <= m.order() || !m.is_subgroup_of(other));
        if !maximal {
            continue;
        }
        let orbits = m.orbits();
        let act = Action::on_partition(group, &orbits)?;
        out.push(NormalCandidate {
            subgroup: m.clone(),
            orbits: orbits.len(),
            quotient_quasiprimitive: act.image().is_quasiprimitive()?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions as c;

    fn antipodal(n: usize) -> PermGroup {
        let mask = (1u32 << n) - 1;
        let p = Permutation::from_images_unchecked((0..1u32 << n).map(|x| x ^ mask).collect());
        PermGroup::new(1 << n, vec![p]).unwrap()
    }

    fn rotation_cubed() -> PermGroup {
        let r3 = Permutation::from_images_unchecked((0..6u32).map(|x| (x + 3) % 6).collect());
        PermGroup::new(6, vec![r3]).unwrap()
    }

    #[test]
    fn quotients_and_covers() {
        let c6 = c::cycle(6).unwrap();
        let q = quotient_graph(&c6.graph, &c6.group, &rotation_cubed()).unwrap();
        assert_eq!(q.orbits, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(q.graph.is_complete() && q.graph.n() == 3);
        assert!(is_cover(&c6.graph, &q));

        let q3 = c::hypercube(3).unwrap();
        let q = quotient_graph(&q3.graph, &q3.group, &antipodal(3)).unwrap();
        assert!(q.graph.is_complete() && q.graph.n() == 4);
        assert!(is_cover(&q3.graph, &q));

        // K_4 paired into K_2 inside D_8.
        let k4 = c::complete(4).unwrap();
        let pairing = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let pair = PermGroup::new(4, vec![pairing]).unwrap();
        let g = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 8);
        let q = quotient_graph(&k4.graph, &g, &pair).unwrap();
        assert_eq!(q.graph.n(), 2);
        assert_eq!(q.intra_orbit_edges, vec![(0, 1), (2, 3)]);
        assert!(!is_cover(&k4.graph, &q));
    }

    #[test]
    fn input_errors() {
        let c6 = c::cycle(6).unwrap();
        let refl = Permutation::from_images_unchecked(vec![0, 5, 4, 3, 2, 1]);
        let not_normal = PermGroup::new(6, vec![refl]).unwrap();
        assert!(quotient_graph(&c6.graph, &c6.group, &not_normal).is_err());
        assert!(quotient_graph(&c6.graph, &c6.group, &c6.group).is_err());
    }

    #[test]
    fn cube_and_hexagon_reports() {
        let q3 = c::hypercube(3).unwrap();
        let r = theorem_1_4_report(&q3.graph, &q3.group, &antipodal(3)).unwrap();
        assert!(r.verdict, "{r:?}");
        assert_eq!(r.quotient_group_order, 24);
        assert_eq!(r.kernel_order, 2);
        assert_eq!(r.local_isomorphism, Some(true));

        let c6 = c::cycle(6).unwrap();
        let r = theorem_1_4_report(&c6.graph, &c6.group, &rotation_cubed()).unwrap();
        assert!(r.verdict, "{r:?}");
        assert!(r.semiregular && r.cover);
    }

    #[test]
    fn four_cube_folds_to_k44() {
        let q4 = c::hypercube(4).unwrap();
        let r = theorem_1_4_report(&q4.graph, &q4.group, &antipodal(4)).unwrap();
        assert_eq!(r.quotient_vertices, 8);
        assert!(r.semiregular && r.cover);
        let q = quotient_graph(&q4.graph, &q4.group, &antipodal(4)).unwrap();
        assert_eq!(q.graph.detect_complete_multipartite(), Some((2, 4)));
    }

    #[test]
    fn k2_branch() {
        // C_6 by <r^2>: two orbits, quotient K_2.
        let c6 = c::cycle(6).unwrap();
        let r2 = Permutation::from_images_unchecked((0..6u32).map(|x| (x + 2) % 6).collect());
        let n = PermGroup::new(6, vec![r2]).unwrap();
        let r = theorem_1_4_report(&c6.graph, &c6.group, &n).unwrap();
        assert!(r.quotient_is_k2);
        assert_eq!(r.two_arc_transitive, Some(true));
        assert!(r.verdict);
    }

    #[test]
    fn maximal_candidates() {
        let q3 = c::hypercube(3).unwrap();
        let cands = maximal_intransitive_normal(&q3.group).unwrap();
        assert!(cands.iter().any(|m| m.subgroup.same_group(&antipodal(3))));
        assert!(cands.iter().all(|m| m.quotient_quasiprimitive));

        assert!(maximal_intransitive_normal(&PermGroup::symmetric(5)).unwrap().is_empty());

        let d12 = PermGroup::dihedral(6);
        let cands = maximal_intransitive_normal(&d12).unwrap();
        let mut orders: Vec<u128> = cands.iter().map(|m| m.subgroup.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 6]);
        assert!(cands.iter().any(|m| m.subgroup.same_group(&rotation_cubed())));
        assert!(cands.iter().all(|m| m.quotient_quasiprimitive));
    }
}
