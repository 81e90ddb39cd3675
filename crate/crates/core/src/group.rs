//! Permutation groups given by generators, with a lazily built chain.

use alloc::boxed::Box;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use once_cell::race::OnceBox;
use rand::Rng;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A permutation group of a fixed degree.
///
/// The stabilizer chain is computed on first use and then never changes, so a
/// `Group` can be shared between threads.
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceBox<StabilizerChain>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        let chain = OnceBox::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(Box::new(c.clone()));
        }
        Group {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree {}, <", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">)")
    }
}

impl Group {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        Ok(Group {
            degree,
            generators,
            chain: OnceBox::new(),
        })
    }

    pub(crate) fn with_chain(
        degree: usize,
        generators: Vec<Permutation>,
        chain: StabilizerChain,
    ) -> Self {
        let cell = OnceBox::new();
        let _ = cell.set(Box::new(chain));
        Group {
            degree,
            generators,
            chain: cell,
        }
    }

    /// The subgroup generated by `candidates`, keeping only the candidates
    /// that enlarge the group generated by the earlier ones.
    pub fn generated_reduced<I>(degree: usize, candidates: I) -> Self
    where
        I: IntoIterator<Item = Permutation>,
    {
        let mut chain = StabilizerChain::new(degree);
        let mut kept = Vec::new();
        for g in candidates {
            if chain.add_generator(&g) {
                kept.push(g);
            }
        }
        Group::with_chain(degree, kept, chain)
    }

    pub fn trivial(degree: usize) -> Self {
        Group::with_chain(degree, Vec::new(), StabilizerChain::new(degree))
    }

    /// `Sym(n)`, generated by `(1 2)` and `(1 2 ... n)`.
    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return Group::trivial(n);
        }
        let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        let cycle: Vec<usize> = (0..n).collect();
        let c = Permutation::from_cycles(n, &[&cycle]).unwrap();
        if n == 2 {
            return Group::new(n, vec![t]).unwrap();
        }
        Group::new(n, vec![t, c]).unwrap()
    }

    /// `Alt(n)`, generated by `(1 2 3)` and an odd-length long cycle.
    pub fn alternating(n: usize) -> Self {
        if n < 3 {
            return Group::trivial(n);
        }
        let t = Permutation::from_cycles(n, &[&[0, 1, 2]]).unwrap();
        if n == 3 {
            return Group::new(n, vec![t]).unwrap();
        }
        let cycle: Vec<usize> = if n % 2 == 1 {
            (0..n).collect()
        } else {
            (1..n).collect()
        };
        let c = Permutation::from_cycles(n, &[&cycle]).unwrap();
        Group::new(n, vec![t, c]).unwrap()
    }

    /// Cyclic group generated by `(1 2 ... n)`.
    pub fn cyclic(n: usize) -> Self {
        if n < 2 {
            return Group::trivial(n);
        }
        let cycle: Vec<usize> = (0..n).collect();
        Group::new(n, vec![Permutation::from_cycles(n, &[&cycle]).unwrap()]).unwrap()
    }

    /// Dihedral group of order `2n` on `n >= 3` points.
    pub fn dihedral(n: usize) -> Self {
        if n < 3 {
            return Group::symmetric(n);
        }
        let cycle: Vec<usize> = (0..n).collect();
        let rot = Permutation::from_cycles(n, &[&cycle]).unwrap();
        let refl =
            Permutation::from_images((0..n as u32).map(|x| (n as u32 - x) % n as u32).collect())
                .unwrap();
        Group::new(n, vec![rot, refl]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| {
            Box::new(StabilizerChain::from_generators(
                self.degree,
                self.generators.iter(),
            ))
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Same degree, same order, and each generator of `other` lies in `self`.
    pub fn same_group(&self, other: &Group) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.generators {
                let q = g.image(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orbit = self.orbit(p);
            for &q in &orbit {
                seen[q] = true;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Stabilizer of `point`, generated by reduced Schreier generators.
    pub fn point_stabilizer(&self, point: usize) -> Result<Group> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        let mut reps: Vec<Option<Permutation>> = vec![None; self.degree];
        reps[point] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.generators {
                let q = g.image(p);
                if reps[q].is_none() {
                    reps[q] = Some(reps[p].as_ref().unwrap().then(g));
                    orbit.push(q);
                }
            }
            i += 1;
        }
        let target = self.order() / orbit.len();
        let mut chain = StabilizerChain::new(self.degree);
        let mut kept = Vec::new();
        'outer: for &p in &orbit {
            let u = reps[p].as_ref().unwrap();
            for g in &self.generators {
                let q = g.image(p);
                let s = u.then(g).then(&reps[q].as_ref().unwrap().inverse());
                if chain.add_generator(&s) {
                    kept.push(s);
                    if chain.order() == target {
                        break 'outer;
                    }
                }
            }
        }
        Ok(Group::with_chain(self.degree, kept, chain))
    }

    /// All elements, or an error when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        self.check_cap("group order", cap)?;
        Ok(self.chain().elements())
    }

    pub(crate) fn check_cap(&self, what: &'static str, cap: u64) -> Result<()> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what,
                size: order.to_string(),
                cap,
            });
        }
        Ok(())
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Conjugate group `h^-1 G h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Group {
        Group::new(
            self.degree,
            self.generators.iter().map(|g| g.conjugate_by(h)).collect(),
        )
        .unwrap()
    }

    pub fn all_generators_even(&self) -> bool {
        self.generators.iter().all(|g| g.is_even())
    }

    /// `order == 1`, computed without building the chain when possible.
    pub fn order_is_one(&self) -> bool {
        self.is_trivial() || self.order().is_one()
    }
}
