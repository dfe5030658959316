//! Permutation groups given by generators.

mod blocks;
mod chain;
pub mod search;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use blocks::BlockSystem;
pub(crate) use chain::StabChain;

/// Default bound on `|G|` for operations that enumerate elements.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

static ENUMERATION_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_BOUND);

/// Current bound on `|G|` for element enumeration.
pub fn enumeration_bound() -> u64 {
    ENUMERATION_BOUND.load(Ordering::Relaxed)
}

/// Overrides the enumeration bound process-wide (CLI `--enum-bound`).
pub fn set_enumeration_bound(bound: u64) {
    ENUMERATION_BOUND.store(bound.max(1), Ordering::Relaxed);
}

/// A permutation group on `{0, .., degree-1}`.
///
/// The stabilizer chain (base fixed to `0, 1, 2, ...` order of first moved
/// points) is built on first use and shared afterwards.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Checks that all generators share `degree`. Identity generators are
    /// dropped.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::input(format!(
                "generator {bad} has degree {}, expected {degree}",
                bad.degree()
            )));
        }
        Ok(Self::from_gens_unchecked(degree, generators))
    }

    pub(crate) fn from_gens_unchecked(degree: usize, generators: Vec<Permutation>) -> Self {
        let mut seen = HashSet::new();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        }
    }

    pub(crate) fn from_chain(chain: StabChain) -> Self {
        let generators = chain.stabilizer_gens(0);
        let g = Self::from_gens_unchecked(chain.degree, generators);
        let _ = g.chain.set(chain);
        g
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_gens_unchecked(degree, Vec::new())
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).expect("valid"));
        }
        if degree >= 3 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).expect("valid"));
        }
        Self::from_gens_unchecked(degree, gens)
    }

    pub fn alternating(degree: usize) -> Self {
        let gens = (2..degree)
            .map(|i| Permutation::from_cycles(degree, &[&[0, 1, i]]).expect("valid"))
            .collect();
        Self::from_gens_unchecked(degree, gens)
    }

    pub fn cyclic(degree: usize) -> Self {
        let cycle: Vec<usize> = (0..degree).collect();
        let gens = if degree >= 2 {
            vec![Permutation::from_cycles(degree, &[&cycle]).expect("valid")]
        } else {
            vec![]
        };
        Self::from_gens_unchecked(degree, gens)
    }

    /// Dihedral group of order `2n` on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let mut gens = PermGroup::cyclic(n).generators;
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        gens.push(Permutation::from_images(refl).expect("valid"));
        Self::from_gens_unchecked(n, gens)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    /// Chain whose base begins with `prefix`; built fresh on every call.
    pub(crate) fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        let gens = self.strong_generators();
        StabChain::build(self.degree, &gens, prefix)
    }

    /// Generators plus the strong generators of the default chain.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let chain = self.chain();
        let mut out = self.generators.clone();
        for level in &chain.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::input(format!(
                "permutation of degree {} tested against group of degree {}",
                p.degree(),
                self.degree
            )));
        }
        Ok(self.chain().contains(p))
    }

    /// Membership for callers that already guarantee the degree.
    pub(crate) fn has(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self) && self.order() == other.order()
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::input(format!(
                "point {point} out of range for degree {}",
                self.degree
            )));
        }
        Ok(())
    }

    /// Orbit of `point`, in breadth-first discovery order.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        Ok(orbit_of(self.degree, &self.generators, point))
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit_of(self.degree, &self.generators, 0).len() == self.degree
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        Ok(PermGroup::from_chain(self.chain_with_base(&[point]).tail(1)))
    }

    /// Pointwise stabilizer of a tuple of distinct points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        check_tuple(self.degree, points)?;
        Ok(PermGroup::from_chain(
            self.chain_with_base(points).tail(points.len()),
        ))
    }

    /// Some element mapping `src` to `dst` pointwise, or `None`.
    pub fn transporter(&self, src: &[usize], dst: &[usize]) -> Result<Option<Permutation>> {
        if src.len() != dst.len() {
            return Err(Error::input("transporter tuples differ in length"));
        }
        check_tuple(self.degree, src)?;
        check_tuple(self.degree, dst)?;
        if src == dst {
            return Ok(Some(Permutation::identity(self.degree)));
        }
        Ok(self.chain_with_base(src).transport_base(dst))
    }

    /// Size of the orbit of the tuple under the group.
    pub fn tuple_orbit_size(&self, tuple: &[usize]) -> Result<u128> {
        check_tuple(self.degree, tuple)?;
        let chain = self.chain_with_base(tuple);
        Ok(chain.levels[..tuple.len()]
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product())
    }

    /// Transitive on ordered `k`-tuples of distinct points.
    pub fn is_k_transitive(&self, k: usize) -> Result<bool> {
        if k == 0 || k > self.degree.max(1) {
            return Err(Error::input(format!(
                "k = {k} outside 1..={}",
                self.degree
            )));
        }
        if self.degree <= 1 {
            return Ok(true);
        }
        let prefix: Vec<usize> = (0..k).collect();
        let chain = self.chain_with_base(&prefix);
        Ok(chain.levels[..k]
            .iter()
            .enumerate()
            .all(|(i, l)| l.orbit.len() == self.degree - i))
    }

    /// Number of orbits of a point stabilizer. Requires transitivity.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.suborbits(0)?.len())
    }

    /// Orbits of the stabilizer of `base`, the orbit `{base}` first, then by
    /// least element.
    pub fn suborbits(&self, base: usize) -> Result<Vec<Vec<usize>>> {
        self.check_point(base)?;
        if !self.is_transitive() {
            return Err(Error::Undefined(
                "rank and suborbits need a transitive action".into(),
            ));
        }
        let stab = self.point_stabilizer(base)?;
        let mut orbits = stab.orbits();
        orbits.sort_by_key(|o| (o[0] != base, o[0]));
        Ok(orbits)
    }

    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits().iter().all(|o| o.len() as u128 == order)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree as u128
    }

    /// Enumerates all elements; fails above the enumeration bound.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let order = self.order();
        let bound = enumeration_bound();
        if order > bound as u128 {
            return Err(Error::capability(format!(
                "group of order {order} exceeds the enumeration bound {bound}"
            )));
        }
        let mut out = Vec::with_capacity(order as usize);
        self.chain().for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    pub(crate) fn require_enumerable(&self, what: &str) -> Result<()> {
        let bound = enumeration_bound();
        if self.order() > bound as u128 {
            return Err(Error::capability(format!(
                "{what} needs |G| <= {bound}, got {}",
                self.order()
            )));
        }
        Ok(())
    }

    /// Subgroup generated by the given elements (which must lie in `self`'s
    /// degree).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    /// `N` is normal in `self`: `N <= G` and `g^-1 n g in N` for all
    /// generator pairs.
    pub fn normalizes(&self, n: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|g| n.generators.iter().all(|x| n.has(&g.conjugate(x))))
    }

    pub fn has_normal_subgroup(&self, n: &PermGroup) -> bool {
        n.is_subgroup_of(self) && self.normalizes(n)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermGroup {
        let mut current = PermGroup::from_gens_unchecked(self.degree, gens.to_vec());
        loop {
            let mut added = None;
            'search: for x in current.generators() {
                for g in &self.generators {
                    let c = g.conjugate(x);
                    if !current.has(&c) {
                        added = Some(c);
                        break 'search;
                    }
                }
            }
            match added {
                Some(c) => {
                    let mut gens = current.generators.clone();
                    gens.push(c);
                    current = PermGroup::from_gens_unchecked(self.degree, gens);
                }
                None => return current,
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Induced permutations on an invariant set of points, relabelled
    /// `points[i] -> i`.
    pub(crate) fn restrict_generators(&self, points: &[usize]) -> Result<Vec<Permutation>> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        self.generators
            .iter()
            .map(|g| {
                let images: Result<Vec<usize>> = points
                    .iter()
                    .map(|&p| {
                        let q = index[g.image(p)];
                        if q == usize::MAX {
                            Err(Error::input(format!(
                                "point set is not invariant under {g}"
                            )))
                        } else {
                            Ok(q)
                        }
                    })
                    .collect();
                Ok(Permutation::from_images_unchecked(
                    images?.into_iter().map(|x| x as u32).collect(),
                ))
            })
            .collect()
    }
}

pub(crate) fn check_tuple(degree: usize, tuple: &[usize]) -> Result<()> {
    let mut seen = HashSet::new();
    for &x in tuple {
        if x >= degree {
            return Err(Error::input(format!("point {x} out of range for degree {degree}")));
        }
        if !seen.insert(x) {
            return Err(Error::input(format!("point {x} repeated in tuple")));
        }
    }
    Ok(())
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
                queue.push_back(y);
            }
        }
    }
    orbit
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = orbit_of(degree, gens, start);
        for &x in &orbit {
            seen[x] = true;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Closure of the generators under multiplication, by breadth-first search
/// on the Cayley graph of the group. Independent of the stabilizer chain;
/// used as an oracle.
pub fn brute_force_elements(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn orders() {
        let s5 = PermGroup::new(5, vec![p("(0 1)", 5), p("(0 1 2 3 4)", 5)]).unwrap();
        assert_eq!(s5.order(), 120);
        assert_eq!(PermGroup::trivial(5).order(), 1);
        assert_eq!(PermGroup::alternating(6).order(), 360);
        assert_eq!(PermGroup::symmetric(7).order(), 5040);
        assert_eq!(PermGroup::dihedral(6).order(), 12);
    }

    #[test]
    fn degree_mismatch_is_an_input_error() {
        assert!(matches!(
            PermGroup::new(4, vec![p("(0 1)", 5)]),
            Err(Error::Input(_))
        ));
        let g = PermGroup::symmetric(4);
        assert!(g.contains(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn membership_examples() {
        let c5 = PermGroup::cyclic(5);
        assert!(!c5.contains(&p("(0 1 2)", 5)).unwrap());
        assert!(c5.contains(&Permutation::identity(5)).unwrap());
        let a4 = PermGroup::alternating(4);
        assert!(a4.contains(&p("(0 1)(2 3)", 4)).unwrap());
        assert!(!a4.contains(&p("(0 1)", 4)).unwrap());
    }

    #[test]
    fn orbits_and_stabilizers() {
        let c5 = PermGroup::cyclic(5);
        let mut o = c5.orbit(0).unwrap();
        o.sort();
        assert_eq!(o, vec![0, 1, 2, 3, 4]);
        assert_eq!(PermGroup::trivial(5).orbit(3).unwrap(), vec![3]);
        let g = PermGroup::new(6, vec![p("(0 1)(2 3)", 6)]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3], vec![4], vec![5]]);
        assert_eq!(PermGroup::symmetric(5).point_stabilizer(0).unwrap().order(), 24);
        assert!(c5.point_stabilizer(2).unwrap().is_trivial());
        assert!(c5.orbit(5).is_err());
    }

    #[test]
    fn transporter_examples() {
        let c5 = PermGroup::cyclic(5);
        let x = c5.transporter(&[0, 1], &[2, 3]).unwrap().unwrap();
        assert_eq!(x.map_tuple(&[0, 1]), vec![2, 3]);
        assert!(c5.transporter(&[0, 1], &[0, 2]).unwrap().is_none());
        assert!(c5.transporter(&[3, 4], &[3, 4]).unwrap().unwrap().is_identity());
        assert!(c5.transporter(&[0, 0], &[1, 2]).is_err());
        assert!(c5.transporter(&[0], &[1, 2]).is_err());
    }

    #[test]
    fn transitivity_grades() {
        assert!(PermGroup::symmetric(4).is_k_transitive(4).unwrap());
        assert!(PermGroup::alternating(4).is_k_transitive(2).unwrap());
        assert!(!PermGroup::alternating(4).is_k_transitive(3).unwrap());
        // Symmetries of the square 0-1-2-3.
        assert!(!PermGroup::dihedral(4).is_k_transitive(2).unwrap());
        assert!(PermGroup::dihedral(4).is_k_transitive(1).unwrap());
    }

    #[test]
    fn rank_and_regularity() {
        let c7 = PermGroup::cyclic(7);
        assert_eq!(c7.rank().unwrap(), 7);
        assert!(c7.is_regular());
        let g = PermGroup::new(4, vec![p("(0 1)(2 3)", 4)]).unwrap();
        assert!(g.is_semiregular() && !g.is_regular());
        assert!(matches!(g.rank(), Err(Error::Undefined(_))));
        let s3 = PermGroup::symmetric(3);
        assert!(s3.is_transitive() && !s3.is_semiregular());
    }

    #[test]
    fn elements_match_closure() {
        let g = PermGroup::new(6, vec![p("(0 1 2)(3 4)", 6), p("(1 5)", 6)]).unwrap();
        let mut a = g.elements().unwrap();
        let mut b = brute_force_elements(6, g.generators());
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(a.len() as u128, g.order());
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let s = PermGroup::symmetric(12);
        assert!(matches!(s.elements(), Err(Error::Capability(_))));
    }

    #[test]
    fn normal_closure_of_a_transposition_is_everything() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.normal_closure(&[p("(0 1)", 4)]).order(), 24);
        assert_eq!(s4.normal_closure(&[p("(0 1)(2 3)", 4)]).order(), 4);
    }
}
