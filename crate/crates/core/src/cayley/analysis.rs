//! Normal Cayley graph checks: the normaliser of `H_R`, Cayley recognition
//! by regular subgroups, and the structure of `S` for 3-CH normal Cayley
//! graphs.

use serde::Serialize;

use super::{aut_h_s, CayleySpec};
use crate::action::Action;
use crate::error::{Error, Result};
use crate::graph::{Graph, Shape};
use crate::group::PermGroup;
use crate::homogeneity::{check, check_group_on_graph, Mode};
use crate::perm::Permutation;

#[derive(Clone, Debug, Serialize)]
pub struct Lemma22Report {
    pub h_order: usize,
    pub aut_hs_order: u128,
    pub aut_graph_order: u128,
    pub normalizer_order: u128,
    /// `H_R` is regular on the vertices.
    pub h_r_regular: bool,
    /// Stabiliser of the identity in the normaliser equals `Aut(H, S)`.
    pub stabilizer_is_aut_hs: bool,
    /// `|N_A(H_R)| = |H| |Aut(H, S)|` and the two checks above.
    pub holds: bool,
    /// `N_A(H_R) = A`.
    pub normal_cayley: bool,
}

/// Computes `A = Aut(Cay(H, S))` and `N_A(H_R)`, and compares the latter
/// with `H_R : Aut(H, S)`.
pub fn lemma_2_2_check(spec: &CayleySpec) -> Result<Lemma22Report> {
    let g = spec.graph();
    let a = g.automorphism_group()?;
    let hr = spec.group.right_regular();
    let norm = a.normalizer(&hr)?;
    let aut = aut_h_s(spec)?;
    let h_order = spec.order();
    let h_r_regular = hr.is_regular() && hr.order() == h_order as u128;
    let stab = norm.point_stabilizer(0)?;
    let stabilizer_is_aut_hs = stab.same_group(&aut);
    let holds = h_r_regular
        && stabilizer_is_aut_hs
        && norm.order() == h_order as u128 * aut.order()
        && aut.generators().iter().all(|x| norm.has(x));
    Ok(Lemma22Report {
        h_order,
        aut_hs_order: aut.order(),
        aut_graph_order: a.order(),
        normalizer_order: norm.order(),
        h_r_regular,
        stabilizer_is_aut_hs,
        holds,
        normal_cayley: norm.order() == a.order(),
    })
}

/// Outcome of the regular subgroup search in `Aut(g)`.
#[derive(Clone, Debug)]
pub struct CayleyWitness {
    pub aut_order: u128,
    /// Regular subgroups up to conjugacy in `Aut(g)`.
    pub regular: Vec<PermGroup>,
}

impl CayleyWitness {
    pub fn is_cayley(&self) -> bool {
        !self.regular.is_empty()
    }

    pub fn witness(&self) -> Option<&PermGroup> {
        self.regular.first()
    }
}

/// `g` is a Cayley graph iff `Aut(g)` has a regular subgroup.
pub fn is_cayley(g: &Graph) -> Result<CayleyWitness> {
    let a = g.automorphism_group()?;
    let regular = a.regular_subgroups()?;
    Ok(CayleyWitness {
        aut_order: a.order(),
        regular,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Lemma51Case {
    /// `S = {s_1^{±1}, .., s_r^{±1}}` with each `s_i` of order 3.
    OrderThree { r: usize },
    /// Involutions, `[S] ≅ rK_b` with `b = 2^n - 1`.
    InvolutionsCliques { r: usize, b: usize, n: u32 },
    /// Involutions, `[S]` connected of girth 3.
    InvolutionsConnected,
    /// Hypotheses not met.
    Inapplicable,
    /// Hypotheses met but `S` fits none of the cases.
    Unclassified,
}

impl Lemma51Case {
    pub fn label(&self) -> &'static str {
        match self {
            Lemma51Case::OrderThree { .. } => "(1)",
            Lemma51Case::InvolutionsCliques { .. } => "(2i)",
            Lemma51Case::InvolutionsConnected => "(2ii)",
            Lemma51Case::Inapplicable => "inapplicable",
            Lemma51Case::Unclassified => "unclassified",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma51Report {
    pub group_order: u128,
    /// `G` acts by automorphisms of the graph.
    pub graph_automorphisms: bool,
    /// `H_R ⊴ G`.
    pub normal: bool,
    pub three_ch: bool,
    /// `G_1 ≤ Aut(H, S)`.
    pub stabilizer_in_aut_hs: bool,
    pub case: Lemma51Case,
    pub case_label: &'static str,
    /// Shape of the subgraph induced on `S`.
    pub local_shape: Option<Shape>,
    /// Element orders on `S^2 \ (S ∪ {1})` are all equal.
    pub m_constant: bool,
    pub m: Option<usize>,
    /// Two elements of `S^2 \ (S ∪ {1})` with different orders.
    pub m_counterexample: Option<[u32; 2]>,
    /// Case (1): every non-identity power of each `s` lies in `S`.
    pub powers_in_s: Option<bool>,
    /// Case (1): `G_1` is 2-transitive on `{<s_1>, .., <s_r>}`.
    pub two_transitive_on_cyclic: Option<bool>,
    /// Case (2i): each clique together with 1 is a subgroup.
    pub cliques_are_subgroups: Option<bool>,
    /// `S` is closed under conjugation by `H`.
    pub conjugation_closed: bool,
    /// When `S^H = S` and `S` consists of involutions: `H` is a 2-group or
    /// `m` is odd.
    pub final_clause: Option<bool>,
    pub diagnostics: Vec<String>,
}

impl Lemma51Report {
    /// Every applicable check passed.
    pub fn consistent(&self) -> bool {
        !matches!(self.case, Lemma51Case::Inapplicable | Lemma51Case::Unclassified)
            && self.m_constant
            && self.stabilizer_in_aut_hs
            && self.powers_in_s != Some(false)
            && self.two_transitive_on_cyclic != Some(false)
            && self.cliques_are_subgroups != Some(false)
            && self.final_clause != Some(false)
    }
}

/// Structure of `S` for a `(G, 3)`-CH graph `Cay(H, S)` with `H_R ⊴ G`.
/// `G` acts on the elements of `H`.
pub fn lemma_5_1_analyze(spec: &CayleySpec, group: &PermGroup) -> Result<Lemma51Report> {
    let h = &spec.group;
    let n = spec.order();
    if group.degree() != n {
        return Err(Error::input(format!(
            "group has degree {} but H has order {n}",
            group.degree()
        )));
    }
    let g = spec.graph();
    let s = &spec.connection;
    let mut diagnostics = Vec::new();
    let graph_automorphisms = check_group_on_graph(&g, group).is_ok();
    if !graph_automorphisms {
        diagnostics.push("G does not act by graph automorphisms".into());
    }
    let hr = h.right_regular();
    let normal = hr.is_subgroup_of(group) && group.normalizes(&hr);
    if !normal {
        diagnostics.push("H_R is not a normal subgroup of G".into());
    }
    let three_ch = graph_automorphisms && check(&g, group, 3, Mode::Ch)?.verdict;
    if graph_automorphisms && !three_ch {
        diagnostics.push("the graph is not (G,3)-CH".into());
    }
    let stab = group.point_stabilizer(0)?;
    let stabilizer_in_aut_hs = stab.generators().iter().all(|a| {
        h.is_automorphism(a) && s.iter().all(|&x| spec.contains(a.image(x as usize) as u32))
    });
    if !stabilizer_in_aut_hs {
        diagnostics.push("the stabiliser of 1 is not contained in Aut(H,S)".into());
    }

    // Orders on S^2 \ (S ∪ {1}).
    let mut square: Vec<u32> = s
        .iter()
        .flat_map(|&a| s.iter().map(move |&b| h.mul(a, b)))
        .filter(|&x| x != 0 && !spec.contains(x))
        .collect();
    square.sort_unstable();
    square.dedup();
    let mut m = square.first().map(|&x| h.element_order(x));
    let mut m_counterexample = None;
    if let Some(&first) = square.first() {
        if let Some(&other) = square.iter().find(|&&x| h.element_order(x) != m.unwrap()) {
            m_counterexample = Some([first, other]);
            m = None;
        }
    }
    let m_constant = m_counterexample.is_none();
    let conjugation_closed = (0..n as u32)
        .all(|x| s.iter().all(|&y| spec.contains(h.mul(h.mul(h.inv(x), y), x))));
    let involutions = s.iter().all(|&x| h.element_order(x) == 2);
    let final_clause = (conjugation_closed && involutions)
        .then(|| n.is_power_of_two() || m.is_some_and(|m| m % 2 == 1));

    let mut report = Lemma51Report {
        group_order: group.order(),
        graph_automorphisms,
        normal,
        three_ch,
        stabilizer_in_aut_hs,
        case: Lemma51Case::Inapplicable,
        case_label: "",
        local_shape: None,
        m_constant,
        m,
        m_counterexample,
        powers_in_s: None,
        two_transitive_on_cyclic: None,
        cliques_are_subgroups: None,
        conjugation_closed,
        final_clause,
        diagnostics,
    };
    if !(graph_automorphisms && normal && three_ch) {
        report.case_label = report.case.label();
        return Ok(report);
    }

    let s_vertices: Vec<usize> = s.iter().map(|&x| x as usize).collect();
    let local = g.induced_subgraph(&s_vertices)?.0;
    let shape = local.shape();
    report.local_shape = Some(shape);
    let order_three = s.iter().all(|&x| h.element_order(x) == 3);
    report.case = if order_three && local.detect_disjoint_cliques().is_some_and(|(_, b)| b == 2) {
        let cyclic: Vec<[u32; 2]> = cyclic_pairs(spec);
        report.powers_in_s = Some(s.iter().all(|&x| spec.contains(h.mul(x, x))));
        report.two_transitive_on_cyclic = Some(two_transitive_on(&stab, &cyclic)?);
        Lemma51Case::OrderThree { r: cyclic.len() }
    } else if involutions {
        match clique_decomposition(&local, &shape) {
            Some((r, b)) if (b + 1).is_power_of_two() => {
                report.cliques_are_subgroups = Some(cliques_closed(spec, &local));
                Lemma51Case::InvolutionsCliques {
                    r,
                    b,
                    n: (b + 1).trailing_zeros(),
                }
            }
            _ if local.is_connected() && local.has_triangle() => Lemma51Case::InvolutionsConnected,
            _ => Lemma51Case::Unclassified,
        }
    } else {
        Lemma51Case::Unclassified
    };
    if report.case == Lemma51Case::Unclassified {
        report.diagnostics.push(format!("S fits none of the cases; [S] is {shape:?}"));
        if local.edge_count() == 0 {
            report
                .diagnostics
                .push("[S] has no edges (girth at least 4); the case analysis needs girth 3".into());
        }
    }
    if !m_constant {
        report.diagnostics.push("orders on S^2 \\ (S ∪ {1}) are not constant".into());
    }
    report.case_label = report.case.label();
    Ok(report)
}

fn clique_decomposition(local: &Graph, shape: &Shape) -> Option<(usize, usize)> {
    match *shape {
        Shape::Complete { n } => Some((1, n)),
        _ => local.detect_disjoint_cliques(),
    }
}

/// `{s, s^{-1}}` pairs, sorted.
fn cyclic_pairs(spec: &CayleySpec) -> Vec<[u32; 2]> {
    let mut pairs: Vec<[u32; 2]> = spec
        .connection
        .iter()
        .map(|&x| {
            let y = spec.group.inv(x);
            [x.min(y), x.max(y)]
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn two_transitive_on(stab: &PermGroup, pairs: &[[u32; 2]]) -> Result<bool> {
    if pairs.len() < 2 {
        return Ok(true);
    }
    let act = Action::on_labels(stab, pairs, |pair: &[u32; 2], p: &Permutation| {
        let a = p.image(pair[0] as usize) as u32;
        let b = p.image(pair[1] as usize) as u32;
        [a.min(b), a.max(b)]
    })?;
    act.is_k_transitive(2)
}

/// Each component of `[S]`, together with the identity, is closed under
/// multiplication.
fn cliques_closed(spec: &CayleySpec, local: &Graph) -> bool {
    local.components().iter().all(|comp| {
        let mut set: Vec<u32> = comp.iter().map(|&i| spec.connection[i]).collect();
        set.push(0);
        set.sort_unstable();
        set.iter()
            .all(|&a| set.iter().all(|&b| set.binary_search(&spec.group.mul(a, b)).is_ok()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::FiniteGroup;
    use crate::constructions as c;

    fn q3_spec() -> CayleySpec {
        let h = FiniteGroup::elementary_abelian(2, 3).unwrap();
        CayleySpec::new(h, vec![1, 2, 4]).unwrap()
    }

    #[test]
    fn normaliser_identity() {
        let c5 = CayleySpec::new(FiniteGroup::cyclic(5).unwrap(), vec![1, 4]).unwrap();
        let r = lemma_2_2_check(&c5).unwrap();
        assert!(r.holds && r.normal_cayley);
        assert_eq!((r.normalizer_order, r.aut_graph_order), (10, 10));

        let e83 = c::example_83(2).unwrap();
        let r = lemma_2_2_check(e83.cayley.as_ref().unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!((r.normalizer_order, r.aut_hs_order), (72, 8));

        let r = lemma_2_2_check(&q3_spec()).unwrap();
        assert!(r.holds && r.normal_cayley);
        assert_eq!(r.normalizer_order, 48);
    }

    #[test]
    fn non_normal_cayley() {
        // K_4 = Cay(Z_4, {1,2,3}): Aut is S_4, the normaliser of Z_4 is D_8.
        let k4 = CayleySpec::new(FiniteGroup::cyclic(4).unwrap(), vec![1, 2, 3]).unwrap();
        let r = lemma_2_2_check(&k4).unwrap();
        assert!(r.holds);
        assert!(!r.normal_cayley);
        assert_eq!((r.normalizer_order, r.aut_graph_order), (8, 24));
    }

    #[test]
    fn cayley_recognition() {
        let p = c::petersen().unwrap();
        let w = is_cayley(&p.graph).unwrap();
        assert_eq!(w.aut_order, 120);
        assert!(!w.is_cayley());

        let c7 = crate::graph::named::cycle(7);
        let w = is_cayley(&c7).unwrap();
        assert_eq!(w.regular.len(), 1);
        assert!(w.witness().unwrap().is_abelian());

        let h23 = c::hamming(2, 3).unwrap();
        let w = is_cayley(&h23.graph).unwrap();
        assert!(w.is_cayley());
        assert!(w.regular.iter().all(|r| r.is_regular() && r.order() == 9));
    }

    #[test]
    fn lemma_5_1_cases() {
        let e83 = c::example_83(2).unwrap();
        let r = lemma_5_1_analyze(e83.cayley.as_ref().unwrap(), &e83.group).unwrap();
        assert_eq!(r.case, Lemma51Case::OrderThree { r: 2 });
        assert_eq!(r.m, Some(3));
        assert!(r.consistent(), "{r:?}");

        let e82 = c::example_82(2, 2).unwrap();
        let r = lemma_5_1_analyze(e82.cayley.as_ref().unwrap(), &e82.group).unwrap();
        assert_eq!(r.case, Lemma51Case::InvolutionsCliques { r: 2, b: 3, n: 2 });
        assert_eq!(r.final_clause, Some(true));
        assert!(r.consistent(), "{r:?}");

        let f5 = c::folded_cube_rank3(5).unwrap();
        let r = lemma_5_1_analyze(f5.cayley.as_ref().unwrap(), &f5.group).unwrap();
        assert_eq!(r.case, Lemma51Case::InvolutionsConnected);
        assert!(r.consistent(), "{r:?}");
    }

    #[test]
    fn lemma_5_1_inapplicable() {
        // C_6 under rotations alone is not 3-CH.
        let spec = CayleySpec::new(FiniteGroup::cyclic(6).unwrap(), vec![1, 5]).unwrap();
        let r = lemma_5_1_analyze(&spec, &spec.group.right_regular()).unwrap();
        assert_eq!(r.case, Lemma51Case::Inapplicable);
        assert!(!r.three_ch && r.normal);
        assert!(!r.diagnostics.is_empty());
    }

    #[test]
    fn lemma_5_1_outside_girth_three() {
        // C_5 = Cay(Z_5, {1, 4}) under D_10 meets the stated hypotheses, but
        // S has elements of order 5 and [S] is edgeless.
        let spec = CayleySpec::new(FiniteGroup::cyclic(5).unwrap(), vec![1, 4]).unwrap();
        let inst = crate::constructions::cayley_with_aut("c5", spec.clone()).unwrap();
        assert_eq!(inst.group.order(), 10);
        let r = lemma_5_1_analyze(&spec, &inst.group).unwrap();
        assert!(r.normal && r.three_ch && r.stabilizer_in_aut_hs);
        assert_eq!(r.case, Lemma51Case::Unclassified);
        assert!(!r.consistent());
        assert!(r.diagnostics.iter().any(|d| d.contains("girth")));
    }
}
