//! Literal reading of the definitions: list every pair of isomorphic
//! induced subgraphs, every isomorphism between them, and look each one up
//! among the images of the first copy under an explicit element list.

use std::collections::HashSet;

use itertools::Itertools;

use super::{check_group_on_graph, check_k, ChReport, Mode, PatternStat, Witness};
use crate::error::{Error, Result};
use crate::graph::{small_isomorphisms, Graph};
use crate::group::{brute_force_elements, enumeration_bound, PermGroup};
use crate::patterns::find_pattern;

/// Largest host order accepted by [`definitional_oracle`].
pub const ORACLE_MAX_VERTICES: usize = 32;

struct Class {
    rep: Graph,
    members: Vec<Vec<usize>>,
}

/// Independent oracle for all four modes. Per-pattern statistics report
/// the number of copies (vertex sets) and of isomorphism classes found to
/// be non-extendable (0 when the verdict holds).
pub fn definitional_oracle(g: &Graph, group: &PermGroup, k: usize, mode: Mode) -> Result<ChReport> {
    check_k(k)?;
    check_group_on_graph(g, group)?;
    let n = g.n();
    let bound = enumeration_bound().min(1_000_000) as u128;
    if n > ORACLE_MAX_VERTICES || group.order() > bound {
        return Err(Error::capability(format!(
            "oracle scale exceeded: {n} vertices, group order {} (limits {ORACLE_MAX_VERTICES} and {bound})",
            group.order()
        )));
    }
    let elements = brute_force_elements(n, group.generators());
    let mut stats = Vec::new();
    let mut witness = None;
    for m in 1..=k.min(n) {
        let mut classes: Vec<Class> = Vec::new();
        for subset in (0..n).combinations(m) {
            let sub = g.induced_ordered(&subset);
            if mode.connected_only() && !sub.is_connected() {
                continue;
            }
            let slot = classes
                .iter()
                .position(|c| !small_isomorphisms(&c.rep, &sub).map(|v| v.is_empty()).unwrap_or(true));
            match slot {
                Some(i) => classes[i].members.push(subset),
                None => classes.push(Class {
                    rep: sub,
                    members: vec![subset],
                }),
            }
        }
        for class in &classes {
            let mut failed = None;
            'pairs: for x in &class.members {
                let gx = g.induced_ordered(x);
                let images: HashSet<Vec<usize>> = elements
                    .iter()
                    .map(|e| {
                        let mut t = e.map_tuple(x);
                        if mode.setwise() {
                            t.sort_unstable();
                        }
                        t
                    })
                    .collect();
                for y in &class.members {
                    if mode.setwise() {
                        if !images.contains(y) {
                            failed = Some((x.clone(), y.clone()));
                            break 'pairs;
                        }
                        continue;
                    }
                    let gy = g.induced_ordered(y);
                    for f in small_isomorphisms(&gx, &gy)? {
                        let target: Vec<usize> = f.iter().map(|&i| y[i]).collect();
                        if !images.contains(&target) {
                            failed = Some((x.clone(), target));
                            break 'pairs;
                        }
                    }
                }
            }
            let info = find_pattern(&class.rep)?.info();
            stats.push(PatternStat {
                pattern: info.clone(),
                embeddings: class.members.len(),
                orbits: usize::from(failed.is_some()),
            });
            if witness.is_none() {
                if let Some((first, second)) = failed {
                    // Express the witness in the catalog labelling.
                    let pattern = Graph::from_edges(m, info.edges.iter().map(|e| (e[0], e[1])))?;
                    let to_first = small_isomorphisms(&pattern, &g.induced_ordered(&first))?
                        .into_iter()
                        .next()
                        .expect("same class");
                    witness = Some(Witness {
                        pattern: info,
                        first: to_first.iter().map(|&i| first[i]).collect(),
                        second: to_first.iter().map(|&i| second[i]).collect(),
                    });
                }
            }
        }
    }
    Ok(ChReport {
        mode,
        k,
        verdict: witness.is_none(),
        vertices: n,
        group_order: group.order(),
        patterns: stats,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions as c;
    use crate::homogeneity::{check, verify_witness};

    #[test]
    fn agrees_on_small_instances() {
        let p = c::petersen().unwrap();
        assert!(definitional_oracle(&p.graph, &p.group, 3, Mode::Ch).unwrap().verdict);
        assert!(check(&p.graph, &p.group, 3, Mode::Ch).unwrap().verdict);
        let k5 = c::complete(5).unwrap();
        for k in 1..=5 {
            assert!(definitional_oracle(&k5.graph, &k5.group, k, Mode::Ch).unwrap().verdict);
        }
        let c5 = c::cycle(5).unwrap();
        assert!(definitional_oracle(&c5.graph, &c5.group, 3, Mode::Homogeneous).unwrap().verdict);
    }

    #[test]
    fn halved_cube_agreement() {
        let hq = c::halved_cube(4).unwrap();
        assert!(definitional_oracle(&hq.graph, &hq.group, 4, Mode::Ch).unwrap().verdict);
        let ind = c::halved_cube_induced(4).unwrap();
        let r = definitional_oracle(&ind.graph, &ind.group, 4, Mode::Ch).unwrap();
        assert!(!r.verdict);
        assert!(verify_witness(&ind.graph, &ind.group, Mode::Ch, r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn rotations_of_c5() {
        let c5 = c::cycle(5).unwrap();
        let rot = PermGroup::cyclic(5);
        assert!(!definitional_oracle(&c5.graph, &rot, 2, Mode::Ch).unwrap().verdict);
        assert!(definitional_oracle(&c5.graph, &rot, 2, Mode::Csh).unwrap().verdict);
    }

    #[test]
    fn scale_limit() {
        let c = crate::graph::named::cycle(40);
        assert!(matches!(
            definitional_oracle(&c, &PermGroup::dihedral(40), 2, Mode::Ch),
            Err(Error::Capability(_))
        ));
    }
}
