//! Minimal number of generators `d(G)`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::StabilizerChain;
use crate::error::Result;
use crate::group::Group;
use crate::numeric::factor_small;
use crate::perm::Permutation;
use crate::series::{conjugacy_classes, derived_subgroup};

/// Default bound on `|G|` for the exhaustive search.
pub const DEFAULT_D_CAP: u64 = 20_000;
/// Default number of random tuples tried per tuple size.
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    Exhaustive,
    Randomized { seed: u64, trials: usize },
}

/// Bounds on `d(G)` with a generating tuple of size `upper`.
#[derive(Clone, Debug)]
pub struct GenRankResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub witness: Vec<Permutation>,
    pub method: RankMethod,
}

impl GenRankResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

/// `d(G/G')`: the largest `p`-rank of the abelianization.
///
/// For each prime `p` dividing `|G:G'|`, the subgroup `K = <G', g^p : g a
/// generator>` contains `G'` and `G/K` is the largest elementary abelian
/// `p`-quotient, so its rank is `log_p |G:K|`.
pub fn abelian_rank(group: &Group) -> usize {
    if group.order_is_one() {
        return 0;
    }
    let derived = derived_subgroup(group);
    let order = group.order();
    let index = &order / derived.order();
    if index.is_one() {
        return 0;
    }
    let (primes, _) = factor_small(&index, group.degree().max(2) as u64);
    let mut best = 0;
    for (p, _) in primes {
        let mut chain = derived.chain().clone();
        for g in group.generators() {
            chain.add_generator(&g.pow(p));
        }
        let mut quotient = &order / chain.order();
        let mut rank = 0;
        let pb = BigUint::from(p);
        while quotient > BigUint::one() {
            quotient /= &pb;
            rank += 1;
        }
        best = best.max(rank);
    }
    best
}

struct TupleSearch<'a> {
    elements: &'a [Permutation],
    index: HashMap<&'a Permutation, usize>,
    class_reps: Vec<usize>,
    target: BigUint,
    degree: usize,
}

impl TupleSearch<'_> {
    /// Depth-first search for `remaining` more elements completing `prefix`
    /// to a generating tuple.
    ///
    /// When `<prefix, y>` cannot be completed, no element of that subgroup can
    /// complete `prefix` either, so all of its elements are skipped.
    fn search(&self, prefix: &mut Vec<usize>, chain: &StabilizerChain, remaining: usize) -> bool {
        let mut covered = vec![false; self.elements.len()];
        chain.for_each_element(|e| covered[self.index[e]] = true);
        let all: Vec<usize>;
        let candidates: &[usize] = if prefix.is_empty() {
            &self.class_reps
        } else {
            all = (0..self.elements.len()).collect();
            &all
        };
        for &y in candidates {
            if covered[y] {
                continue;
            }
            let mut q = chain.clone();
            q.add_generator(&self.elements[y]);
            prefix.push(y);
            if q.order() == self.target {
                return true;
            }
            if remaining > 1 && self.search(prefix, &q, remaining - 1) {
                return true;
            }
            prefix.pop();
            q.for_each_element(|e| covered[self.index[e]] = true);
        }
        false
    }
}

/// Exact `d(G)` by exhaustive tuple search; fails when `|G| > element_cap`.
///
/// Tuple sizes below [`rank_lower_bound`] are skipped.
pub fn d_exact(group: &Group, element_cap: u64) -> Result<GenRankResult> {
    if group.order_is_one() {
        return Ok(GenRankResult {
            lower: 0,
            upper: 0,
            exact: true,
            witness: Vec::new(),
            method: RankMethod::Exhaustive,
        });
    }
    let elements = group.elements(element_cap)?;
    let classes = conjugacy_classes(group, element_cap)?;
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let class_reps = classes.iter().map(|(x, _)| index[x]).collect();
    let search = TupleSearch {
        elements: &elements,
        index,
        class_reps,
        target: group.order(),
        degree: group.degree(),
    };
    let start = rank_lower_bound(group);
    let mut k = start;
    loop {
        let mut prefix = Vec::new();
        if search.search(&mut prefix, &StabilizerChain::new(search.degree), k) {
            let witness = prefix.iter().map(|&i| elements[i].clone()).collect();
            return Ok(GenRankResult {
                lower: k,
                upper: k,
                exact: true,
                witness,
                method: RankMethod::Exhaustive,
            });
        }
        k += 1;
    }
}

/// Certified lower bound from [`rank_lower_bound`] and an upper bound from
/// random tuples (seeded), falling back to a reduced generating set.
pub fn d_bounds(group: &Group, trials: usize, seed: u64) -> GenRankResult {
    let method = RankMethod::Randomized { seed, trials };
    if group.order_is_one() {
        return GenRankResult {
            lower: 0,
            upper: 0,
            exact: true,
            witness: Vec::new(),
            method,
        };
    }
    let lower = rank_lower_bound(group);
    let reduced = Group::generated_reduced(group.degree(), group.generators().iter().cloned());
    let target = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness: Vec<Permutation> = reduced.generators().to_vec();
    for k in lower..reduced.generators().len() {
        let found = (0..trials).find_map(|_| {
            let tuple: Vec<Permutation> = (0..k).map(|_| group.random_element(&mut rng)).collect();
            let chain = StabilizerChain::from_generators(group.degree(), tuple.iter());
            (chain.order() == target).then_some(tuple)
        });
        if let Some(tuple) = found {
            witness = tuple;
            break;
        }
    }
    let upper = witness.len();
    GenRankResult {
        lower,
        upper,
        exact: lower == upper,
        witness,
        method,
    }
}

/// Lower bound on `d(G)`: the abelianization rank, and 2 for a non-abelian
/// group (a cyclic group is abelian).
pub fn rank_lower_bound(group: &Group) -> usize {
    if group.order_is_one() {
        return 0;
    }
    let gens = group.generators();
    let abelian = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)));
    let floor = if abelian { 1 } else { 2 };
    abelian_rank(group).max(floor)
}

/// `d_exact` when `|G| <= element_cap`, otherwise `d_bounds`.
pub fn d_auto(group: &Group, element_cap: u64, trials: usize, seed: u64) -> Result<GenRankResult> {
    let small = group.order().to_u64().is_some_and(|o| o <= element_cap);
    if small {
        d_exact(group, element_cap)
    } else {
        Ok(d_bounds(group, trials, seed))
    }
}

/// Whether `tuple` generates `group`.
pub fn generates(group: &Group, tuple: &[Permutation]) -> bool {
    StabilizerChain::from_generators(group.degree(), tuple.iter()).order() == group.order()
        && tuple.iter().all(|g| group.contains(g))
}
