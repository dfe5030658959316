//! Block systems of transitive groups.

use serde::Serialize;

use super::PermGroup;
use crate::error::{Error, Result};

/// A `G`-invariant partition of the domain into blocks of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    /// Blocks, each sorted, ordered by least element.
    pub blocks: Vec<Vec<usize>>,
    pub block_size: usize,
    pub block_count: usize,
}

impl BlockSystem {
    fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, &r) in labels.iter().enumerate() {
            by_root[r].push(x);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort_by_key(|b| b[0]);
        let block_size = blocks[0].len();
        BlockSystem {
            block_count: blocks.len(),
            block_size,
            blocks,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.block_size == 1 || self.block_count == 1
    }

    /// Every generator maps blocks onto blocks.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        let n = group.degree();
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = block_of[g.image(b[0])];
                b.iter().all(|&x| block_of[g.image(x)] == target)
            })
        })
    }

    pub fn block_of(&self, point: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&point).is_ok())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller root survives. Returns the root that
    /// was absorbed, if any.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[gone] = keep;
        Some(gone)
    }
}

impl PermGroup {
    /// Finest block system in which `a` and `b` share a block (Atkinson).
    pub fn minimal_block(&self, a: usize, b: usize) -> BlockSystem {
        let n = self.degree();
        let mut uf = UnionFind::new(n);
        let mut queue = Vec::new();
        if let Some(gone) = uf.union(a, b) {
            queue.push(gone);
        }
        while let Some(x) = queue.pop() {
            for g in self.generators() {
                let rx = uf.find(x);
                let y = g.image(x);
                let z = g.image(rx);
                if let Some(gone) = uf.union(y, z) {
                    queue.push(gone);
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        BlockSystem::from_labels(&labels)
    }

    /// All minimal nontrivial block systems, ordered by the block of 0.
    pub fn minimal_block_systems(&self) -> Result<Vec<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::Undefined(
                "block systems are computed for transitive actions only".into(),
            ));
        }
        let n = self.degree();
        let mut candidates: Vec<BlockSystem> = Vec::new();
        for b in 1..n {
            let sys = self.minimal_block(0, b);
            if sys.block_count > 1 && !candidates.contains(&sys) {
                candidates.push(sys);
            }
        }
        let block0 = |s: &BlockSystem| s.blocks[0].clone();
        let minimal: Vec<BlockSystem> = candidates
            .iter()
            .filter(|s| {
                let mine = block0(s);
                !candidates.iter().any(|t| {
                    let other = block0(t);
                    other.len() < mine.len() && other.iter().all(|x| mine.binary_search(x).is_ok())
                })
            })
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort_by_key(|a| block0(a));
        Ok(minimal)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.minimal_block_systems()?.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn four_cycle_has_one_system() {
        let c4 = PermGroup::cyclic(4);
        let systems = c4.minimal_block_systems().unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].blocks, vec![vec![0, 2], vec![1, 3]]);
        assert!(systems[0].is_invariant_under(&c4));
    }

    #[test]
    fn symmetric_group_is_primitive() {
        assert!(PermGroup::symmetric(5).is_primitive().unwrap());
        assert!(PermGroup::cyclic(7).is_primitive().unwrap());
    }

    #[test]
    fn wreath_blocks() {
        let g = PermGroup::new(
            4,
            vec![
                Permutation::parse("(0 1)", Some(4)).unwrap(),
                Permutation::parse("(0 2)(1 3)", Some(4)).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 8);
        let systems = g.minimal_block_systems().unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].blocks, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn intransitive_is_an_error() {
        let g = PermGroup::new(4, vec![Permutation::parse("(0 1)", Some(4)).unwrap()]).unwrap();
        assert!(g.minimal_block_systems().is_err());
    }
}
