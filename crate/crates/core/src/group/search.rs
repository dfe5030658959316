//! Subgroup computations that enumerate elements: centralizers,
//! normalizers, conjugacy classes, normal subgroups and regular subgroups.
//! All of them refuse groups above the enumeration bound, except the
//! centralizer of a single element, which uses a pruned backtrack.

use std::collections::{HashMap, HashSet};

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

impl PermGroup {
    /// `C_G(x)` for a single permutation.
    pub fn centralizer_of_element(&self, x: &Permutation) -> Result<PermGroup> {
        if x.degree() != self.degree() {
            return Err(Error::input("degree mismatch in centralizer"));
        }
        if self.order() <= super::enumeration_bound() as u128 {
            let gens = self
                .elements()?
                .into_iter()
                .filter(|g| g.commutes_with(x))
                .collect();
            return Ok(grow_subgroup(self.degree(), gens));
        }
        Ok(self.centralizer_backtrack(x))
    }

    /// Backtrack over the chain. An element is `t_{k-1} ... t_0`, so once
    /// `t_0..t_i` are chosen the images of `b_0..b_i` are final. Commuting
    /// with `x` means cycles of `x` go to cycles of equal length with the
    /// cyclic offsets between base points preserved.
    pub(crate) fn centralizer_backtrack(&self, x: &Permutation) -> PermGroup {
        let chain = self.chain();
        let n = self.degree();
        let mut cycle_id = vec![usize::MAX; n];
        let mut pos = vec![0usize; n];
        let mut cycle_len = Vec::new();
        for start in 0..n {
            if cycle_id[start] != usize::MAX {
                continue;
            }
            let id = cycle_len.len();
            let mut a = start;
            let mut i = 0;
            loop {
                cycle_id[a] = id;
                pos[a] = i;
                i += 1;
                a = x.image(a);
                if a == start {
                    break;
                }
            }
            cycle_len.push(i);
        }
        let consistent = |g: &Permutation, depth: usize| -> bool {
            let bases = &chain.levels[..depth];
            let last = bases[depth - 1].base;
            let img = g.image(last);
            if cycle_len[cycle_id[last]] != cycle_len[cycle_id[img]] {
                return false;
            }
            bases[..depth - 1].iter().all(|l| {
                let (b, gb) = (l.base, g.image(l.base));
                let same_src = cycle_id[b] == cycle_id[last];
                let same_dst = cycle_id[gb] == cycle_id[img];
                if same_src != same_dst {
                    return false;
                }
                if !same_src {
                    return true;
                }
                let len = cycle_len[cycle_id[b]];
                (pos[last] + len - pos[b]) % len == (pos[img] + len - pos[gb]) % len
            })
        };
        let k = chain.levels.len();
        let mut found = PermGroup::trivial(n);
        let mut stack: Vec<(usize, Permutation)> = vec![(0, Permutation::identity(n))];
        while let Some((depth, partial)) = stack.pop() {
            if depth == k {
                if partial.commutes_with(x) && !found.has(&partial) {
                    let mut gens = found.generators().to_vec();
                    gens.push(partial);
                    found = PermGroup::from_gens_unchecked(n, gens);
                }
                continue;
            }
            let level = &chain.levels[depth];
            for &y in level.orbit.iter().rev() {
                let u = level.transversal[y].as_ref().expect("orbit point");
                let next = u.then(&partial);
                if consistent(&next, depth + 1) {
                    stack.push((depth + 1, next));
                }
            }
        }
        found
    }

    /// `C_G(H)`: elements commuting with every generator of `h`.
    pub fn centralizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if h.degree() != self.degree() {
            return Err(Error::input("degree mismatch in centralizer"));
        }
        match h.generators() {
            [] => Ok(self.clone()),
            [x] => self.centralizer_of_element(x),
            gens => {
                self.require_enumerable("centralizer of a subgroup")?;
                let elems = self
                    .elements()?
                    .into_iter()
                    .filter(|g| gens.iter().all(|y| g.commutes_with(y)))
                    .collect();
                Ok(grow_subgroup(self.degree(), elems))
            }
        }
    }

    /// `N_G(H)` by enumeration of `G`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        self.require_enumerable("normalizer")?;
        let elems = self
            .elements()?
            .into_iter()
            .filter(|g| h.generators().iter().all(|y| h.has(&g.conjugate(y))))
            .collect();
        Ok(grow_subgroup(self.degree(), elems))
    }

    /// Conjugacy class representatives (least element of each class in the
    /// `Ord` order of permutations) with class sizes.
    pub fn conjugacy_classes(&self) -> Result<Vec<(Permutation, usize)>> {
        self.require_enumerable("conjugacy classes")?;
        let mut elems = self.elements()?;
        elems.sort();
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut out = Vec::new();
        for e in elems {
            if seen.contains(&e) {
                continue;
            }
            let mut class = vec![e.clone()];
            seen.insert(e.clone());
            let mut i = 0;
            while i < class.len() {
                for g in self.generators() {
                    let c = g.conjugate(&class[i]);
                    if seen.insert(c.clone()) {
                        class.push(c);
                    }
                }
                i += 1;
            }
            out.push((e, class.len()));
        }
        Ok(out)
    }

    /// Minimal normal subgroups, as inclusion-minimal normal closures of
    /// non-identity conjugacy classes.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<PermGroup>> {
        let classes = self.conjugacy_classes()?;
        let closures: Vec<PermGroup> = classes
            .iter()
            .filter(|(x, _)| !x.is_identity())
            .map(|(x, _)| self.normal_closure(std::slice::from_ref(x)))
            .collect();
        let mut minimal: Vec<PermGroup> = Vec::new();
        for (i, n) in closures.iter().enumerate() {
            let is_min = closures.iter().enumerate().all(|(j, m)| {
                // A strictly smaller closure inside n disqualifies it.
                j == i || !(m.order() < n.order() && m.is_subgroup_of(n))
            });
            if is_min && !minimal.iter().any(|m| m.same_group(n)) {
                minimal.push(n.clone());
            }
        }
        Ok(minimal)
    }

    /// Every normal subgroup, including `1` and `G`, sorted by order.
    pub fn normal_subgroups(&self) -> Result<Vec<PermGroup>> {
        let classes = self.conjugacy_classes()?;
        let mut all: Vec<PermGroup> = vec![PermGroup::trivial(self.degree())];
        let closures: Vec<PermGroup> = classes
            .iter()
            .filter(|(x, _)| !x.is_identity())
            .map(|(x, _)| self.normal_closure(std::slice::from_ref(x)))
            .collect();
        for c in &closures {
            if !all.iter().any(|m| m.same_group(c)) {
                all.push(c.clone());
            }
        }
        // Close under joins.
        let mut i = 0;
        while i < all.len() {
            for c in &closures {
                if c.is_subgroup_of(&all[i]) {
                    continue;
                }
                let mut gens = all[i].generators().to_vec();
                gens.extend(c.generators().iter().cloned());
                let join = PermGroup::from_gens_unchecked(self.degree(), gens);
                if !all.iter().any(|m| m.same_group(&join)) {
                    all.push(join);
                }
            }
            i += 1;
        }
        all.sort_by_key(|g| g.order());
        Ok(all)
    }

    /// Every nontrivial normal subgroup is transitive.
    pub fn is_quasiprimitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Ok(false);
        }
        Ok(self
            .minimal_normal_subgroups()?
            .iter()
            .all(|n| n.is_transitive()))
    }

    /// No proper nontrivial normal subgroup.
    pub fn is_simple(&self) -> Result<bool> {
        if self.is_trivial() {
            return Ok(false);
        }
        let mins = self.minimal_normal_subgroups()?;
        Ok(mins.len() == 1 && mins[0].order() == self.order())
    }

    /// Subgroups acting regularly on the domain, one per conjugacy class.
    pub fn regular_subgroups(&self) -> Result<Vec<PermGroup>> {
        self.require_enumerable("regular subgroup search")?;
        let n = self.degree();
        if n == 0 || !self.is_transitive() || !self.order().is_multiple_of(n as u128) {
            return Ok(Vec::new());
        }
        let elements = self.elements()?;
        let mut fpf_by_image: HashMap<usize, Vec<Permutation>> = HashMap::new();
        for g in &elements {
            if g.is_fixed_point_free() {
                fpf_by_image.entry(g.image(0)).or_default().push(g.clone());
            }
        }
        for v in fpf_by_image.values_mut() {
            v.sort();
        }
        let mut found: Vec<(PermGroup, Vec<Permutation>)> = Vec::new();
        let mut visited: HashSet<Vec<Permutation>> = HashSet::new();
        let start = PermGroup::trivial(n);
        regular_rec(&start, n, &fpf_by_image, &mut visited, &mut |r| {
            let mut elems = r.elements().expect("small");
            elems.sort();
            if found.iter().any(|(_, e)| e == &elems) {
                return;
            }
            found.push((r.clone(), elems));
        });
        // Reduce to conjugacy class representatives.
        let mut reps: Vec<(PermGroup, Vec<Permutation>)> = Vec::new();
        for (r, elems) in found {
            let conj = reps.iter().any(|(_, rep_elems)| {
                let rep_set: HashSet<&Permutation> = rep_elems.iter().collect();
                elements.iter().any(|g| {
                    elems.iter().all(|e| rep_set.contains(&g.conjugate(e)))
                })
            });
            if !conj {
                reps.push((r, elems));
            }
        }
        Ok(reps.into_iter().map(|(r, _)| r).collect())
    }
}

fn regular_rec(
    current: &PermGroup,
    n: usize,
    fpf_by_image: &HashMap<usize, Vec<Permutation>>,
    visited: &mut HashSet<Vec<Permutation>>,
    emit: &mut dyn FnMut(&PermGroup),
) {
    let orbit = current.orbit(0).expect("in range");
    if orbit.len() == n {
        emit(current);
        return;
    }
    let mut in_orbit = vec![false; n];
    for &x in &orbit {
        in_orbit[x] = true;
    }
    let target = (0..n).find(|&x| !in_orbit[x]).expect("not transitive yet");
    let Some(cands) = fpf_by_image.get(&target) else {
        return;
    };
    for g in cands {
        let mut gens = current.generators().to_vec();
        gens.push(g.clone());
        let next = PermGroup::from_gens_unchecked(n, gens);
        if next.order() > n as u128 || !next.is_semiregular() {
            continue;
        }
        let mut key = next.elements().expect("order <= n");
        key.sort();
        if !visited.insert(key) {
            continue;
        }
        regular_rec(&next, n, fpf_by_image, visited, emit);
    }
}

/// Subgroup generated by a set of elements, adding only those not already
/// generated.
pub(crate) fn grow_subgroup(degree: usize, elements: Vec<Permutation>) -> PermGroup {
    let mut group = PermGroup::trivial(degree);
    for e in elements {
        if !group.has(&e) {
            let mut gens = group.generators().to_vec();
            gens.push(e);
            group = PermGroup::from_gens_unchecked(degree, gens);
        }
    }
    group
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn centralizers_in_a5() {
        let a5 = PermGroup::alternating(5);
        let c = a5.centralizer_of_element(&p("(0 1 2)", 5)).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.has(&p("(0 1 2)", 5)));
        let v4 = PermGroup::new(5, vec![p("(0 1)(2 3)", 5), p("(0 2)(1 3)", 5)]).unwrap();
        let cv = a5.centralizer(&v4).unwrap();
        assert!(cv.same_group(&v4));
        assert_eq!(a5.centralizer(&PermGroup::trivial(5)).unwrap().order(), 60);
    }

    #[test]
    fn centralizer_backtrack_matches_enumeration() {
        let s6 = PermGroup::symmetric(6);
        for x in ["(0 1 2)", "(0 1)(2 3)", "(0 1 2 3 4 5)", "(0 1)(2 3 4)"] {
            let x = p(x, 6);
            let a = s6.centralizer_of_element(&x).unwrap();
            let b = s6.centralizer_backtrack(&x);
            assert!(a.same_group(&b), "{x}");
        }
    }

    #[test]
    fn minimal_normal_subgroups_examples() {
        let s4 = PermGroup::symmetric(4);
        let mins = s4.minimal_normal_subgroups().unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        assert!(s4.is_quasiprimitive().unwrap());

        let d8 = PermGroup::dihedral(4);
        let mins = d8.minimal_normal_subgroups().unwrap();
        assert!(mins.iter().any(|m| m.order() == 2 && !m.is_transitive()));
        assert!(!d8.is_quasiprimitive().unwrap());

        let s5 = PermGroup::symmetric(5);
        let mins = s5.minimal_normal_subgroups().unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 60);
        assert!(mins[0].is_simple().unwrap());
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let orders: Vec<u128> = PermGroup::symmetric(4)
            .normal_subgroups()
            .unwrap()
            .iter()
            .map(|g| g.order())
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn regular_subgroups_of_dihedral_pentagon() {
        let d10 = PermGroup::dihedral(5);
        let regs = d10.regular_subgroups().unwrap();
        assert_eq!(regs.len(), 1);
        assert_eq!(regs[0].order(), 5);
    }

    #[test]
    fn regular_subgroups_of_s4() {
        // Z_4 and two classes of V_4 (normal V_4 is regular; the other V_4
        // class has fixed points).
        let regs = PermGroup::symmetric(4).regular_subgroups().unwrap();
        let mut orders: Vec<(u128, bool)> = regs.iter().map(|r| (r.order(), r.is_abelian())).collect();
        orders.sort();
        assert_eq!(orders, vec![(4, true), (4, true)]);
    }
}
