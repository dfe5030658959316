//! Deterministic Schreier-Sims.
//!
//! The chain is built for a caller-chosen base prefix, extended by the
//! smallest moved point whenever a residue survives sifting. Transversals
//! are stored explicitly; degrees in this crate stay in the low hundreds.

use std::collections::VecDeque;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Permutation>,
    /// Orbit of `base` in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[x]` maps `base` to `x`.
    pub transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        // Keep existing representatives so earlier sifts stay meaningful.
        let mut queue: VecDeque<usize> = self.orbit.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.image(x);
                if self.transversal[y].is_none() {
                    let rep = self.transversal[x].as_ref().expect("orbit point").then(g);
                    self.transversal[y] = Some(rep);
                    self.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        debug_assert!(self.orbit.len() <= degree);
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Builds a base and strong generating set for `<gens>` whose base
    /// starts with `prefix` (distinct points).
    pub fn build(degree: usize, gens: &[Permutation], prefix: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.fixes(l.base)) {
                let b = g.moved_points().next().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        // Distribute generators: level i receives every generator fixing
        // the bases of levels 0..i.
        let bases: Vec<usize> = chain.levels.iter().map(|l| l.base).collect();
        for g in &gens {
            for (i, level) in chain.levels.iter_mut().enumerate() {
                if bases[..i].iter().all(|&b| g.fixes(b)) {
                    level.gens.push(g.clone());
                } else {
                    break;
                }
            }
        }
        for level in &mut chain.levels {
            level.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let level = &self.levels[lvl];
            let orbit = level.orbit.clone();
            let gens = level.gens.clone();
            for &x in &orbit {
                let ux = self.levels[lvl].transversal[x].clone().expect("orbit point");
                for s in &gens {
                    let y = s.image(x);
                    let uy_inv = self.levels[lvl].transversal[y]
                        .as_ref()
                        .expect("orbit closed")
                        .inverse();
                    let schreier = ux.then(s).then(&uy_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, drop) = self.sift_from(schreier, lvl + 1);
                    if drop == self.levels.len() && residue.is_identity() {
                        continue;
                    }
                    if drop == self.levels.len() {
                        let b = residue.moved_points().next().expect("non-identity");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in lvl + 1..=drop {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = drop + 1;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` starting at level `start`; returns the residue and the
    /// level at which sifting stopped (`levels.len()` if it went through).
    pub fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (idx, level) in self.levels.iter().enumerate().skip(start) {
            let x = g.image(level.base);
            match &level.transversal[x] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, idx),
            }
        }
        let len = self.levels.len();
        (g, len)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Generators of the pointwise stabilizer of the first `depth` bases.
    pub fn stabilizer_gens(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// The chain of the stabilizer of the first `depth` base points.
    pub fn tail(&self, depth: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[depth.min(self.levels.len())..].to_vec(),
        }
    }

    /// Some `x` with `base[i]^x = targets[i]` for the first
    /// `targets.len()` base points, or `None`.
    pub fn transport_base(&self, targets: &[usize]) -> Option<Permutation> {
        assert!(targets.len() <= self.levels.len());
        let mut targets = targets.to_vec();
        let mut reps: Vec<Permutation> = Vec::with_capacity(targets.len());
        for i in 0..targets.len() {
            let u = self.levels[i].transversal[targets[i]].as_ref()?;
            let u_inv = u.inverse();
            for t in targets.iter_mut().skip(i + 1) {
                *t = u_inv.image(*t);
            }
            reps.push(u.clone());
        }
        let mut x = Permutation::identity(self.degree);
        for u in reps.iter().rev() {
            x = x.then(u);
        }
        Some(x)
    }

    /// Visits every group element exactly once. Elements are written as
    /// `t_{k-1} ... t_1 t_0` with `t_i` from the level-`i` transversal.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(
            levels: &[Level],
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation),
        ) {
            let Some((last, rest)) = levels.split_last() else {
                f(acc);
                return;
            };
            for &x in &last.orbit {
                let u = last.transversal[x].as_ref().expect("orbit point");
                rec(rest, &acc.then(u), f);
            }
        }
        rec(&self.levels, &Permutation::identity(self.degree), &mut f);
    }
}
