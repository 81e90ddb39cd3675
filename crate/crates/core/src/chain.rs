//! Deterministic Schreier–Sims.
//!
//! Levels hold explicit transversals. New base points are always the first
//! point moved by the residue that needed them, so the base of a chain built
//! from a generator list is a function of that list alone.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Indices into `StabilizerChain::strong` of the generators fixing all
    /// earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// `transversal[p] = (u, u^-1)` with `base^u = p`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    /// All Schreier generators for orbit positions `< checked_orbit` and
    /// generator positions `< checked_gens` are known to sift.
    checked_orbit: usize,
    checked_gens: usize,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as u32],
            transversal,
            checked_orbit: 0,
            checked_gens: 0,
        }
    }

    fn rep(&self, point: usize) -> Option<&(Permutation, Permutation)> {
        self.transversal[point].as_ref()
    }
}

/// Base and strong generating set with per-level transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize) -> Self {
        StabilizerChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn from_generators<'a, I>(degree: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut chain = StabilizerChain::new(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Orbit lengths of successive stabilizers along the base.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went through every level).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let q = h.image(level.base);
            match level.rep(q) {
                None => return (h, j),
                Some((_, u_inv)) => h = h.then(u_inv),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Adds a generator; returns `false` when `g` was already in the group.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        let (h, j) = self.strip(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return false;
        }
        self.add_to_levels(h, 0, j);
        self.complete(j);
        true
    }

    /// Records `h` as a strong generator for levels `from..=to`, opening a new
    /// level when `to` is past the current base.
    fn add_to_levels(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h
                .first_moved_point()
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(h);
        for l in from..=to {
            self.levels[l].gens.push(idx);
            self.extend_orbit(l);
        }
    }

    fn extend_orbit(&mut self, l: usize) {
        let level = &mut self.levels[l];
        let mut i = 0;
        while i < level.orbit.len() {
            let p = level.orbit[i] as usize;
            for &gi in &level.gens {
                let s = &self.strong[gi];
                let q = s.image(p);
                if level.transversal[q].is_none() {
                    let u = level.transversal[p].as_ref().unwrap().0.then(s);
                    let u_inv = u.inverse();
                    level.transversal[q] = Some((u, u_inv));
                    level.orbit.push(q as u32);
                }
            }
            i += 1;
        }
    }

    /// Main Schreier–Sims loop, starting at level `start` and walking down.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            match self.check_level(i as usize) {
                None => {
                    let level = &mut self.levels[i as usize];
                    level.checked_orbit = level.orbit.len();
                    level.checked_gens = level.gens.len();
                    i -= 1;
                }
                Some((h, j)) => {
                    self.add_to_levels(h, i as usize + 1, j);
                    i = j as isize;
                }
            }
        }
    }

    /// Sifts the not-yet-checked Schreier generators of level `i`; returns the
    /// first failing residue with the level where it failed.
    fn check_level(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        let (co, cg) = (level.checked_orbit, level.checked_gens);
        for (pi, &p) in level.orbit.iter().enumerate() {
            let u_p = &level.rep(p as usize).unwrap().0;
            let gen_start = if pi < co { cg } else { 0 };
            for &gi in &level.gens[gen_start..] {
                let s = &self.strong[gi];
                let q = s.image(p as usize);
                let y = u_p.then(s).then(&level.rep(q).unwrap().1);
                if y.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(&y, i + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Calls `f` on every group element, in a fixed order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let id = Permutation::identity(self.degree);
        self.walk(self.levels.len(), &id, &mut f);
    }

    // Elements factor as u_{k-1} ... u_1 u_0 with u_l from level l.
    fn walk<F: FnMut(&Permutation)>(&self, depth: usize, acc: &Permutation, f: &mut F) {
        if depth == 0 {
            f(acc);
            return;
        }
        let level = &self.levels[depth - 1];
        for &p in &level.orbit {
            let u = &level.rep(p as usize).unwrap().0;
            self.walk(depth - 1, &acc.then(u), f);
        }
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            acc = acc.then(&level.rep(p as usize).unwrap().0);
        }
        acc
    }

    /// Canonical representative of the right coset `N g`, where `self` is the
    /// chain of `N`: the coset element with lexicographically least images of
    /// the base points of `N`.
    pub fn coset_representative(&self, g: &Permutation) -> Permutation {
        let mut c = g.clone();
        for level in &self.levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&y| c.image(y as usize))
                .unwrap();
            c = level.rep(best as usize).unwrap().0.then(&c);
        }
        c
    }

    /// Orbit of the base point at level `l`.
    pub fn level_orbit(&self, l: usize) -> &[u32] {
        &self.levels[l].orbit
    }
}
