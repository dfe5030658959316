//! Connected-homogeneity and its relatives, decided on pattern embeddings.
//!
//! For a pattern `P`, an isomorphism between two induced copies of `P` is
//! the same thing as a pair of embeddings of `P`. Every such isomorphism
//! extends to an element of `G` exactly when the embeddings of `P` form a
//! single `G`-orbit.

mod local;
mod oracle;

pub use local::{
    is_2_geodesic_transitive, is_s_arc_transitive, local_action, local_action_group,
    proposition_1_2_check, s_arcs, theorem_1_3_classify, ClassifyEvidence, ClassifyReport,
    LocalActionReport, Prop12Branch, Prop12Report, Theorem13Case,
};
pub use oracle::{definitional_oracle, ORACLE_MAX_VERTICES};

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{brute_force_elements, enumeration_bound, PermGroup};
use crate::patterns::{self, embeddings, Pattern, PatternInfo, MAX_PATTERN_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Connected patterns, ordered embeddings.
    Ch,
    /// Connected patterns, vertex sets.
    Csh,
    /// All patterns, ordered embeddings.
    Homogeneous,
    /// All patterns, vertex sets.
    SetHomogeneous,
}

impl Mode {
    pub fn connected_only(self) -> bool {
        matches!(self, Mode::Ch | Mode::Csh)
    }

    pub fn setwise(self) -> bool {
        matches!(self, Mode::Csh | Mode::SetHomogeneous)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Ch => "ch",
            Mode::Csh => "csh",
            Mode::Homogeneous => "homogeneous",
            Mode::SetHomogeneous => "set-homogeneous",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternStat {
    pub pattern: PatternInfo,
    pub embeddings: usize,
    /// `G`-orbits on embeddings, or on vertex sets in the setwise modes.
    pub orbits: usize,
}

/// Two copies of a pattern that `G` does not identify. In the ordered
/// modes the offending isomorphism is `first[i] -> second[i]`; in the
/// setwise modes no element of `G` maps the vertex set of `first` onto that
/// of `second`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pattern: PatternInfo,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChReport {
    pub mode: Mode,
    pub k: usize,
    pub verdict: bool,
    pub vertices: usize,
    pub group_order: u128,
    pub patterns: Vec<PatternStat>,
    pub witness: Option<Witness>,
}

/// Every generator of `group` is an automorphism of `g`.
pub fn check_group_on_graph(g: &Graph, group: &PermGroup) -> Result<()> {
    if group.degree() != g.n() {
        return Err(Error::input(format!(
            "group has degree {} but the graph has {} vertices",
            group.degree(),
            g.n()
        )));
    }
    if let Some(p) = group.generators().iter().find(|p| !g.is_automorphism(p)) {
        return Err(Error::input(format!("generator {p} is not an automorphism of the graph")));
    }
    Ok(())
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_PATTERN_ORDER {
        return Err(Error::input(format!("k must be between 1 and {MAX_PATTERN_ORDER}, got {k}")));
    }
    Ok(())
}

/// Patterns of order `1..=min(k, n)` used by `mode`.
pub(crate) fn patterns_for(mode: Mode, k: usize, n: usize) -> Result<Vec<&'static Pattern>> {
    let mut out = Vec::new();
    for m in 1..=k.min(n) {
        if mode.connected_only() {
            out.extend(patterns::connected_catalog(m)?);
        } else {
            out.extend(patterns::catalog(m)?.iter());
        }
    }
    Ok(out)
}

/// Orbit index of each tuple under the group generated by `gens`. All
/// images of listed tuples must be listed.
fn tuple_orbits(gens: &[crate::Permutation], tuples: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let index: HashMap<&[usize], usize> =
        tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut orbit = vec![usize::MAX; tuples.len()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..tuples.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = count;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for g in gens {
                let image = g.map_tuple(&tuples[i]);
                let j = index[image.as_slice()];
                if orbit[j] == usize::MAX {
                    orbit[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    (orbit, count)
}

fn find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Per-pattern orbit analysis: returns the statistic and, when there is
/// more than one class, representatives of the first two classes.
fn analyse_pattern(
    host: &Graph,
    group: &PermGroup,
    pattern: &Pattern,
    setwise: bool,
) -> (PatternStat, Option<(Vec<usize>, Vec<usize>)>) {
    let embs = embeddings(pattern, host);
    let (orbit, count) = tuple_orbits(group.generators(), &embs);
    let mut reps = vec![usize::MAX; count];
    for (i, &o) in orbit.iter().enumerate() {
        if reps[o] == usize::MAX {
            reps[o] = i;
        }
    }
    let index: HashMap<&[usize], usize> =
        embs.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let class_of: Vec<usize> = if setwise {
        let mut parent: Vec<usize> = (0..count).collect();
        for (o, &r) in reps.iter().enumerate() {
            for sigma in pattern.automorphisms() {
                let t: Vec<usize> = sigma.iter().map(|&s| embs[r][s]).collect();
                let other = orbit[index[t.as_slice()]];
                let (a, b) = (find_root(&mut parent, o), find_root(&mut parent, other));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..count).map(|o| find_root(&mut parent, o)).collect()
    } else {
        (0..count).collect()
    };
    let mut distinct: Vec<usize> = class_of.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let stat = PatternStat {
        pattern: pattern.info(),
        embeddings: embs.len(),
        orbits: distinct.len(),
    };
    let witness = (distinct.len() > 1).then(|| {
        let a = reps[distinct[0]];
        let b = reps[distinct[1]];
        (embs[a].clone(), embs[b].clone())
    });
    (stat, witness)
}

/// Decides `(G, k)`-homogeneity in the given mode.
pub fn check(g: &Graph, group: &PermGroup, k: usize, mode: Mode) -> Result<ChReport> {
    check_k(k)?;
    check_group_on_graph(g, group)?;
    let mut stats = Vec::new();
    let mut witness = None;
    for pattern in patterns_for(mode, k, g.n())? {
        let (stat, w) = analyse_pattern(g, group, pattern, mode.setwise());
        if witness.is_none() {
            if let Some((first, second)) = w {
                witness = Some(Witness {
                    pattern: pattern.info(),
                    first,
                    second,
                });
            }
        }
        stats.push(stat);
    }
    Ok(ChReport {
        mode,
        k,
        verdict: witness.is_none(),
        vertices: g.n(),
        group_order: group.order(),
        patterns: stats,
        witness,
    })
}

#[allow(non_snake_case)]
pub fn is_kCH(g: &Graph, group: &PermGroup, k: usize) -> Result<ChReport> {
    check(g, group, k, Mode::Ch)
}

#[allow(non_snake_case)]
pub fn is_kCSH(g: &Graph, group: &PermGroup, k: usize) -> Result<ChReport> {
    check(g, group, k, Mode::Csh)
}

pub fn is_k_homogeneous(g: &Graph, group: &PermGroup, k: usize) -> Result<ChReport> {
    check(g, group, k, Mode::Homogeneous)
}

pub fn is_k_set_homogeneous(g: &Graph, group: &PermGroup, k: usize) -> Result<ChReport> {
    check(g, group, k, Mode::SetHomogeneous)
}

/// Independent re-check of a witness: both tuples induce the pattern, and
/// no element of `G` carries the first copy onto the second (as tuples, or
/// as sets in the setwise modes). Uses the stabiliser chain, and also the
/// full element list when the group is small enough to enumerate.
pub fn verify_witness(g: &Graph, group: &PermGroup, mode: Mode, w: &Witness) -> Result<bool> {
    let m = w.pattern.order;
    let pattern = Graph::from_edges(m, w.pattern.edges.iter().map(|e| (e[0], e[1])))?;
    for t in [&w.first, &w.second] {
        if t.len() != m || t.iter().any(|&v| v >= g.n()) {
            return Ok(false);
        }
        let mut sorted = t.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != m || g.induced_ordered(t) != pattern {
            return Ok(false);
        }
    }
    let targets: Vec<Vec<usize>> = if mode.setwise() {
        crate::graph::small_isomorphisms(&pattern, &pattern)?
            .into_iter()
            .map(|sigma| sigma.iter().map(|&s| w.second[s]).collect())
            .collect()
    } else {
        vec![w.second.clone()]
    };
    for t in &targets {
        if group.transporter(&w.first, t)?.is_some() {
            return Ok(false);
        }
    }
    if group.order() <= enumeration_bound() as u128 {
        let elements = brute_force_elements(group.degree(), group.generators());
        let hit = elements.iter().any(|x| {
            let img = x.map_tuple(&w.first);
            if mode.setwise() {
                let mut a = img;
                let mut b = w.second.clone();
                a.sort_unstable();
                b.sort_unstable();
                a == b
            } else {
                img == w.second
            }
        });
        if hit {
            return Ok(false);
        }
    }
    Ok(true)
}
