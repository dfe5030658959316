//! Induced actions of a permutation group on derived domains
//! (invariant point sets, labelled objects, partitions).

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::{BlockSystem, PermGroup};
use crate::perm::Permutation;

/// A group together with the permutations it induces on a domain
/// `{0, .., m-1}`. Generator `i` of [`Action::image`] is induced by
/// generator `i` of [`Action::source`].
#[derive(Clone, Debug)]
pub struct Action {
    source: PermGroup,
    image: PermGroup,
    image_gens: Vec<Permutation>,
    /// Original point for each domain index, for actions on point subsets.
    points: Option<Vec<usize>>,
    kernel: OnceLock<PermGroup>,
}

impl Action {
    /// The natural action of `group` on its own points.
    pub fn natural(group: &PermGroup) -> Self {
        let gens = group.generators().to_vec();
        Action {
            source: group.clone(),
            image: group.clone(),
            image_gens: gens,
            points: Some((0..group.degree()).collect()),
            kernel: OnceLock::new(),
        }
    }

    /// Action on an invariant set of points, relabelled `points[i] -> i`.
    pub fn on_points(group: &PermGroup, points: &[usize]) -> Result<Self> {
        crate::group::check_tuple(group.degree(), points)?;
        let image_gens = group.restrict_generators(points)?;
        Ok(Self::assemble(group, image_gens, points.len(), Some(points.to_vec())))
    }

    /// Action on arbitrary labels: `act(label, g)` must return a label in
    /// `labels` for every generator `g`.
    pub fn on_labels<L, F>(group: &PermGroup, labels: &[L], act: F) -> Result<Self>
    where
        L: Eq + Hash + Clone,
        F: Fn(&L, &Permutation) -> L,
    {
        let index: HashMap<&L, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        if index.len() != labels.len() {
            return Err(Error::input("duplicate labels in action domain"));
        }
        let mut image_gens = Vec::with_capacity(group.generators().len());
        for g in group.generators() {
            let mut images = Vec::with_capacity(labels.len());
            for l in labels {
                let target = act(l, g);
                let Some(&j) = index.get(&target) else {
                    return Err(Error::input(format!("label set is not invariant under {g}")));
                };
                images.push(j);
            }
            image_gens.push(Permutation::from_images(images)?);
        }
        Ok(Self::assemble(group, image_gens, labels.len(), None))
    }

    /// Action on the cells of an invariant partition (blocks, orbits of a
    /// normal subgroup). Cells keep the given order.
    pub fn on_partition(group: &PermGroup, cells: &[Vec<usize>]) -> Result<Self> {
        let n = group.degree();
        let mut cell_of = vec![usize::MAX; n];
        for (i, c) in cells.iter().enumerate() {
            for &x in c {
                if x >= n || cell_of[x] != usize::MAX {
                    return Err(Error::input("cells do not partition the domain"));
                }
                cell_of[x] = i;
            }
        }
        if cell_of.contains(&usize::MAX) {
            return Err(Error::input("cells do not cover the domain"));
        }
        let mut image_gens = Vec::new();
        for g in group.generators() {
            let mut images = Vec::with_capacity(cells.len());
            for c in cells {
                let target = cell_of[g.image(c[0])];
                if c.iter().any(|&x| cell_of[g.image(x)] != target) {
                    return Err(Error::input(format!("partition is not invariant under {g}")));
                }
                images.push(target);
            }
            image_gens.push(Permutation::from_images(images)?);
        }
        Ok(Self::assemble(group, image_gens, cells.len(), None))
    }

    pub fn on_blocks(group: &PermGroup, system: &BlockSystem) -> Result<Self> {
        Self::on_partition(group, &system.blocks)
    }

    fn assemble(
        group: &PermGroup,
        image_gens: Vec<Permutation>,
        m: usize,
        points: Option<Vec<usize>>,
    ) -> Self {
        let image = PermGroup::from_gens_unchecked(m, image_gens.clone());
        Action {
            source: group.clone(),
            image,
            image_gens,
            points,
            kernel: OnceLock::new(),
        }
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    /// The induced permutation group on the domain.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn domain_size(&self) -> usize {
        self.image.degree()
    }

    /// Original points for subset actions.
    pub fn points(&self) -> Option<&[usize]> {
        self.points.as_deref()
    }

    /// Image of an arbitrary source element (which must lie in the source
    /// group), computed through the generator correspondence.
    pub fn induced(&self, g: &Permutation) -> Result<Permutation> {
        let n = self.source.degree();
        let m = self.domain_size();
        let diagonal = self.diagonal();
        // Find the element of the diagonal group whose first component is g.
        let chain = diagonal.chain_with_base(&(0..n).collect::<Vec<_>>());
        let targets: Vec<usize> = (0..n).map(|x| g.image(x)).collect();
        let Some(d) = chain.transport_base(&targets) else {
            return Err(Error::input(format!("{g} is not in the source group")));
        };
        let images: Vec<usize> = (0..m).map(|i| d.image(n + i) - n).collect();
        Permutation::from_images(images)
    }

    /// Direct-product embedding `g -> (g, g^domain)` on `n + m` points.
    fn diagonal(&self) -> PermGroup {
        let n = self.source.degree();
        let m = self.domain_size();
        let gens = self
            .source
            .generators()
            .iter()
            .zip(&self.image_gens)
            .map(|(g, h)| {
                let mut images: Vec<u32> = g.images().map(|x| x as u32).collect();
                images.extend(h.images().map(|x| (x + n) as u32));
                Permutation::from_images_unchecked(images)
            })
            .collect();
        PermGroup::from_gens_unchecked(n + m, gens)
    }

    /// Elements of the source acting trivially on the domain.
    pub fn kernel(&self) -> &PermGroup {
        self.kernel.get_or_init(|| {
            let n = self.source.degree();
            let m = self.domain_size();
            let diagonal = self.diagonal();
            let fixed: Vec<usize> = (n..n + m).collect();
            let stab = diagonal
                .pointwise_stabilizer(&fixed)
                .expect("distinct in-range points");
            let gens = stab
                .generators()
                .iter()
                .map(|d| {
                    Permutation::from_images_unchecked(
                        d.images().take(n).map(|x| x as u32).collect(),
                    )
                })
                .collect();
            PermGroup::from_gens_unchecked(n, gens)
        })
    }

    /// `|source| / |kernel|`, which must equal `|image|`.
    pub fn faithful_order(&self) -> u128 {
        self.image.order()
    }

    pub fn is_transitive(&self) -> bool {
        self.image.is_transitive()
    }

    pub fn is_k_transitive(&self, k: usize) -> Result<bool> {
        self.image.is_k_transitive(k)
    }

    pub fn rank(&self) -> Result<usize> {
        self.image.rank()
    }

    pub fn suborbits(&self, base: usize) -> Result<Vec<Vec<usize>>> {
        self.image.suborbits(base)
    }

    pub fn minimal_block_systems(&self) -> Result<Vec<BlockSystem>> {
        self.image.minimal_block_systems()
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.image.is_primitive()
    }

    pub fn is_quasiprimitive(&self) -> Result<bool> {
        self.image.is_quasiprimitive()
    }

    pub fn is_semiregular(&self) -> bool {
        self.image.is_semiregular()
    }

    pub fn is_regular(&self) -> bool {
        self.image.is_regular()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn s7_on_pairs() {
        let s7 = PermGroup::symmetric(7);
        let pairs: Vec<Vec<usize>> = (0..7).combinations(2).collect();
        let act = Action::on_labels(&s7, &pairs, |pair, g| {
            let mut img: Vec<usize> = pair.iter().map(|&x| g.image(x)).collect();
            img.sort();
            img
        })
        .unwrap();
        assert_eq!(act.domain_size(), 21);
        assert!(act.is_transitive());
        assert_eq!(act.rank().unwrap(), 3);
        let base = pairs.iter().position(|p| p == &vec![0, 1]).unwrap();
        let mut sizes: Vec<usize> = act.suborbits(base).unwrap().iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 10, 10]);
        assert_eq!(act.image().point_stabilizer(base).unwrap().order(), 240);
        assert!(act.is_primitive().unwrap());
        assert_eq!(act.kernel().order(), 1);
    }

    #[test]
    fn kernel_law_on_blocks() {
        // D_8 on the square acting on the two diagonals {0,2},{1,3}.
        let d8 = PermGroup::dihedral(4);
        let act = Action::on_partition(&d8, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(act.faithful_order() * act.kernel().order(), d8.order());
        assert_eq!(act.kernel().order(), 4);
        let r = Permutation::parse("(0 1 2 3)", Some(4)).unwrap();
        assert_eq!(act.induced(&r).unwrap().to_string(), "(0 1)");
    }

    #[test]
    fn restriction_to_an_orbit() {
        let g = PermGroup::new(
            5,
            vec![Permutation::parse("(0 1 2)(3 4)", Some(5)).unwrap()],
        )
        .unwrap();
        let act = Action::on_points(&g, &[3, 4]).unwrap();
        assert_eq!(act.image().order(), 2);
        assert_eq!(act.kernel().order(), 3);
        assert!(Action::on_points(&g, &[0, 3]).is_err());
    }
}
