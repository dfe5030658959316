//! Automorphisms of a finite group, optionally stabilising a subset.
//!
//! An automorphism is determined by the images of a generating sequence
//! `g_0, .., g_{t-1}`. The search walks the sequence level by level: at
//! level `i` the images of `g_0..g_{i-1}` are fixed to themselves and, for
//! each candidate image of `g_i` not yet reached by the level generators,
//! one extension to a full automorphism is sought.

use std::collections::VecDeque;

use super::FiniteGroup;
use crate::group::{orbit_of, PermGroup};
use crate::perm::Permutation;

struct AutSearch<'a> {
    h: &'a FiniteGroup,
    seq: Vec<u32>,
    orders: Vec<usize>,
    /// Sorted subset to stabilise.
    subset: Option<Vec<u32>>,
}

impl<'a> AutSearch<'a> {
    fn new(h: &'a FiniteGroup, subset: Option<&[u32]>) -> Self {
        let subset = subset.map(|s| {
            let mut s = s.to_vec();
            s.sort_unstable();
            s
        });
        let seq = h.generating_sequence(subset.as_deref().unwrap_or(&[]));
        let orders = (0..h.order() as u32).map(|x| h.element_order(x)).collect();
        AutSearch {
            h,
            seq,
            orders,
            subset,
        }
    }

    fn in_subset(&self, x: u32) -> bool {
        self.subset.as_ref().is_none_or(|s| s.binary_search(&x).is_ok())
    }

    /// Extends `images` (of `seq[..images.len()]`) to a map on the generated
    /// subgroup, checking `phi(x g_j) = phi(x) phi(g_j)` on every edge and
    /// injectivity. Returns the partial map (`u32::MAX` = undefined).
    fn closure(&self, images: &[u32]) -> Option<Vec<u32>> {
        let n = self.h.order();
        let gens = &self.seq[..images.len()];
        let mut phi = vec![u32::MAX; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let fx = phi[x as usize];
            for (g, &fg) in gens.iter().zip(images) {
                let y = self.h.mul(x, *g);
                let fy = self.h.mul(fx, fg);
                match phi[y as usize] {
                    u32::MAX => {
                        if std::mem::replace(&mut used[fy as usize], true) {
                            return None;
                        }
                        phi[y as usize] = fy;
                        queue.push_back(y);
                    }
                    prev if prev != fy => return None,
                    _ => {}
                }
            }
        }
        Some(phi)
    }

    fn candidates(&self, level: usize, phi: &[u32]) -> Vec<u32> {
        let g = self.seq[level];
        let want_in = self.in_subset(g);
        let used: Vec<bool> = {
            let mut u = vec![false; self.h.order()];
            for &y in phi.iter().filter(|&&y| y != u32::MAX) {
                u[y as usize] = true;
            }
            u
        };
        (0..self.h.order() as u32)
            .filter(|&y| {
                !used[y as usize]
                    && self.orders[y as usize] == self.orders[g as usize]
                    && (self.subset.is_none() || self.in_subset(y) == want_in)
            })
            .collect()
    }

    fn leaf_ok(&self, phi: &[u32]) -> bool {
        match &self.subset {
            None => true,
            Some(s) => s.iter().all(|&x| self.in_subset(phi[x as usize])),
        }
    }

    /// Completes `images` to an automorphism, if possible.
    fn extend(&self, images: &mut Vec<u32>) -> Option<Vec<u32>> {
        let phi = self.closure(images)?;
        if images.len() == self.seq.len() {
            return self.leaf_ok(&phi).then_some(phi);
        }
        for y in self.candidates(images.len(), &phi) {
            images.push(y);
            let found = self.extend(images);
            images.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Generators of `Aut(H)` or of the stabiliser of `subset` in it.
pub(super) fn automorphisms(h: &FiniteGroup, subset: Option<&[u32]>) -> PermGroup {
    let n = h.order();
    let search = AutSearch::new(h, subset);
    let mut gens: Vec<Permutation> = Vec::new();
    for level in 0..search.seq.len() {
        let fixed: Vec<u32> = search.seq[..level].to_vec();
        let Some(phi) = search.closure(&fixed) else {
            continue;
        };
        let g = search.seq[level] as usize;
        let mut level_gens: Vec<Permutation> = Vec::new();
        let mut reached = vec![false; n];
        reached[g] = true;
        for c in search.candidates(level, &phi) {
            if reached[c as usize] {
                continue;
            }
            let mut images = fixed.clone();
            images.push(c);
            if let Some(full) = search.extend(&mut images) {
                let p = Permutation::from_images_unchecked(full);
                level_gens.push(p);
                for x in orbit_of(n, &level_gens, g) {
                    reached[x] = true;
                }
            }
        }
        gens.extend(level_gens);
    }
    PermGroup::from_gens_unchecked(n, gens)
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn s2_wreath_s2_on_z3_squared() {
        let h = FiniteGroup::elementary_abelian(3, 2).unwrap();
        let s = [[1, 0], [2, 0], [0, 1], [0, 2]].iter().map(|v| h.from_vector(v).unwrap()).collect();
        let spec = CayleySpec::new(h, s).unwrap();
        let a = aut_h_s(&spec).unwrap();
        assert_eq!(a.order(), 8);
        for g in a.generators() {
            assert!(spec.group.is_automorphism(g));
            assert!(spec.connection.iter().all(|&x| spec.contains(g.image(x as usize) as u32)));
        }
    }

    #[test]
    fn subset_not_generating() {
        // S = {±1} in Z_3^2 only generates a line; Aut(H, S) still acts on
        // the complementary direction.
        let h = FiniteGroup::elementary_abelian(3, 2).unwrap();
        let s = vec![h.from_vector(&[1, 0]).unwrap(), h.from_vector(&[2, 0]).unwrap()];
        let spec = CayleySpec::new(h.clone(), s.clone()).unwrap();
        let a = aut_h_s(&spec).unwrap();
        let brute = aut_group(&h)
            .unwrap()
            .elements()
            .unwrap()
            .into_iter()
            .filter(|g| s.iter().all(|&x| s.contains(&(g.image(x as usize) as u32))))
            .count();
        assert_eq!(a.order(), brute as u128);
    }
}
