//! Automorphism groups of graphs with at most 64 vertices.
//!
//! Vertices are first coloured by iterated degree refinement. The group is
//! then built level by level: for base point `b` and every candidate image
//! `c` not already reached by known generators, a forward-checking search
//! looks for one automorphism fixing the earlier base points and sending
//! `b` to `c`.

use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest vertex count handled by [`Graph::automorphism_group`].
pub const AUT_MAX_VERTICES: usize = 64;

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    full: u64,
    rows: Vec<u64>,
    colour_mask: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let rows: Vec<u64> = (0..n).map(|v| g.row(v).first().copied().unwrap_or(0)).collect();
        let colours = refine_colours(g);
        let colour_mask = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| colours[w] == colours[v])
                    .fold(0u64, |m, w| m | 1 << w)
            })
            .collect();
        Search {
            g,
            n,
            full,
            rows,
            colour_mask,
        }
    }

    fn initial(&self) -> Vec<u64> {
        self.colour_mask.clone()
    }

    /// Records `x -> y` and narrows every other candidate set. Returns
    /// `false` when some set empties.
    fn assign(&self, cand: &mut [u64], x: usize, y: usize) -> bool {
        if cand[x] & (1 << y) == 0 {
            return false;
        }
        cand[x] = 1 << y;
        let adj = self.rows[y];
        let non = !adj & self.full & !(1 << y);
        for w in 0..self.n {
            if w == x {
                continue;
            }
            let keep = if self.g.has_edge(w, x) { adj } else { non };
            cand[w] &= keep & !(1 << y);
            if cand[w] == 0 {
                return false;
            }
        }
        true
    }

    /// Assigns every singleton candidate until nothing changes.
    fn propagate(&self, cand: &mut [u64], done: &mut [bool]) -> bool {
        loop {
            let mut changed = false;
            for w in 0..self.n {
                if !done[w] && cand[w].count_ones() == 1 {
                    let y = cand[w].trailing_zeros() as usize;
                    done[w] = true;
                    if !self.assign(cand, w, y) {
                        return false;
                    }
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn extend(&self, cand: Vec<u64>, done: Vec<bool>) -> Option<Vec<usize>> {
        let mut cand = cand;
        let mut done = done;
        if !self.propagate(&mut cand, &mut done) {
            return None;
        }
        let next = (0..self.n)
            .filter(|&w| !done[w])
            .min_by_key(|&w| (cand[w].count_ones(), w));
        let Some(w) = next else {
            return Some(cand.iter().map(|c| c.trailing_zeros() as usize).collect());
        };
        let mut bits = cand[w];
        while bits != 0 {
            let y = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mut c = cand.clone();
            let mut d = done.clone();
            d[w] = true;
            if self.assign(&mut c, w, y) {
                if let Some(found) = self.extend(c, d) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// An automorphism with the given forced images, if any.
    fn find(&self, forced: &[(usize, usize)]) -> Option<Vec<usize>> {
        let mut cand = self.initial();
        let mut done = vec![false; self.n];
        for &(x, y) in forced {
            done[x] = true;
            if !self.assign(&mut cand, x, y) {
                return None;
            }
        }
        self.extend(cand, done)
    }
}

/// Iterated refinement of the degree colouring by neighbour-colour
/// multisets, relabelled canonically each round.
pub(crate) fn refine_colours(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colours: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| colours[w]).collect();
                s.sort_unstable();
                (colours[v], s)
            })
            .collect();
        let mut distinct: Vec<(usize, Vec<usize>)> = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let index: BTreeMap<(usize, Vec<usize>), usize> =
            distinct.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let next: Vec<usize> = signatures.drain(..).map(|s| index[&s]).collect();
        let before = colours.iter().collect::<std::collections::BTreeSet<_>>().len();
        let after = next.iter().collect::<std::collections::BTreeSet<_>>().len();
        colours = next;
        if after == before {
            return colours;
        }
    }
}

impl Graph {
    /// Full automorphism group, for graphs with at most 64 vertices.
    pub fn automorphism_group(&self) -> Result<PermGroup> {
        let n = self.n();
        if n > AUT_MAX_VERTICES {
            return Err(Error::capability(format!(
                "automorphism search is limited to {AUT_MAX_VERTICES} vertices, got {n}"
            )));
        }
        if n == 0 {
            return Ok(PermGroup::trivial(0));
        }
        let search = Search::new(self);
        let mut prefix: Vec<usize> = Vec::new();
        let mut gens: Vec<Permutation> = Vec::new();
        loop {
            // Candidate sets once the prefix is fixed pointwise.
            let mut cand = search.initial();
            let mut done = vec![false; n];
            for &b in &prefix {
                done[b] = true;
                let ok = search.assign(&mut cand, b, b);
                debug_assert!(ok);
            }
            let ok = search.propagate(&mut cand, &mut done);
            debug_assert!(ok);
            let Some(b) = (0..n).find(|&w| !done[w] && cand[w].count_ones() > 1) else {
                break;
            };
            let mut level_gens: Vec<Permutation> = Vec::new();
            let mut reached = vec![false; n];
            reached[b] = true;
            let mut bits = cand[b];
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if reached[c] {
                    continue;
                }
                let mut forced: Vec<(usize, usize)> = prefix.iter().map(|&x| (x, x)).collect();
                forced.push((b, c));
                if let Some(images) = search.find(&forced) {
                    let p = Permutation::from_images(images).expect("bijection");
                    debug_assert!(self.is_automorphism(&p));
                    level_gens.push(p);
                    for x in crate::group::orbit_of(n, &level_gens, b) {
                        reached[x] = true;
                    }
                }
            }
            gens.extend(level_gens);
            prefix.push(b);
        }
        PermGroup::new(n, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(cycle(5).automorphism_group().unwrap().order(), 10);
        assert_eq!(complete_bipartite(3, 3).automorphism_group().unwrap().order(), 72);
        assert_eq!(complete(5).automorphism_group().unwrap().order(), 120);
        assert_eq!(path(4).automorphism_group().unwrap().order(), 2);
        assert_eq!(Graph::empty(4).automorphism_group().unwrap().order(), 24);
        assert_eq!(Graph::disjoint_cliques(3, 2).automorphism_group().unwrap().order(), 48);
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = Graph::disjoint_cliques(2, 3).complement();
        let aut = g.automorphism_group().unwrap();
        assert!(aut.generators().iter().all(|p| g.is_automorphism(p)));
        assert_eq!(aut.order(), 72);
    }

    #[test]
    fn too_large() {
        assert!(cycle(65).automorphism_group().is_err());
    }
}
