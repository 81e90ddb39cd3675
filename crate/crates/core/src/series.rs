//! Normal closures, derived series, coset-action quotients and composition
//! length.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::numeric::big_omega;
use crate::perm::Permutation;

/// Default bound on `|G|` for element-enumerating algorithms.
pub const DEFAULT_ELEMENT_CAP: u64 = 100_000;
/// Default bound on the index of a realized quotient.
pub const DEFAULT_QUOTIENT_CAP: u64 = 100_000;

/// A subgroup of some parent group, with a verified normality flag.
#[derive(Clone, Debug)]
pub struct SubgroupWitness {
    pub subgroup: Group,
    pub normal: bool,
}

impl SubgroupWitness {
    /// Checks that the subgroup is normalized by every generator of `parent`.
    pub fn verify_normal_in(&self, parent: &Group) -> bool {
        is_normalized_by(&self.subgroup, parent)
    }
}

fn is_normalized_by(sub: &Group, parent: &Group) -> bool {
    parent.generators().iter().all(|g| {
        sub.generators()
            .iter()
            .all(|x| sub.contains(&x.conjugate_by(g)))
    })
}

/// Smallest normal subgroup of `group` containing `seeds` and `extra`,
/// without checking that the seeds lie in `group`.
fn closure_unchecked(group: &Group, seeds: &[Permutation]) -> Group {
    let n = group.degree();
    let mut chain = StabilizerChain::new(n);
    let mut gens = Vec::new();
    let mut queue: Vec<Permutation> = Vec::new();
    for s in seeds {
        if chain.add_generator(s) {
            gens.push(s.clone());
            queue.push(s.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for g in group.generators() {
            let c = x.conjugate_by(g);
            if chain.add_generator(&c) {
                gens.push(c.clone());
                queue.push(c);
            }
        }
    }
    Group::with_chain(n, gens, chain)
}

/// Smallest normal subgroup of `group` containing every seed.
pub fn normal_closure(group: &Group, seeds: &[Permutation]) -> Result<SubgroupWitness> {
    for s in seeds {
        if s.degree() != group.degree() {
            return Err(Error::DegreeMismatch(group.degree(), s.degree()));
        }
        if !group.contains(s) {
            return Err(Error::NotInGroup);
        }
    }
    let subgroup = closure_unchecked(group, seeds);
    let normal = is_normalized_by(&subgroup, group);
    debug_assert!(normal);
    Ok(SubgroupWitness { subgroup, normal })
}

/// Derived subgroup: normal closure of the commutators of generator pairs.
pub fn derived_subgroup(group: &Group) -> Group {
    let gens = group.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = Permutation::commutator(&gens[i], &gens[j]);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    closure_unchecked(group, &comms)
}

pub fn derived_series(group: &Group) -> Vec<Group> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().unwrap();
        if last.order_is_one() {
            break;
        }
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            break;
        }
        series.push(next);
    }
    series
}

/// True iff the derived series reaches the trivial group.
pub fn is_soluble(group: &Group) -> bool {
    derived_series(group).last().unwrap().order_is_one()
}

/// `G/N` as the action of `G` on the right cosets of `N` (degree = index).
pub fn quotient(group: &Group, normal: &SubgroupWitness, cap: u64) -> Result<Group> {
    let sub = &normal.subgroup;
    if sub.degree() != group.degree() {
        return Err(Error::DegreeMismatch(group.degree(), sub.degree()));
    }
    if !sub.is_subgroup_of(group) || !is_normalized_by(sub, group) {
        return Err(Error::NotNormal);
    }
    let index = group.order() / sub.order();
    if index > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "quotient index",
            size: index.to_string(),
            cap,
        });
    }
    let index = index.to_usize().unwrap();
    let n_chain = sub.chain();
    let mut reps = vec![n_chain.coset_representative(&Permutation::identity(group.degree()))];
    let mut lookup: HashMap<Permutation, usize> = HashMap::new();
    lookup.insert(reps[0].clone(), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::with_capacity(index); group.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (gi, g) in group.generators().iter().enumerate() {
            let c = n_chain.coset_representative(&reps[i].then(g));
            let next = reps.len();
            let j = *lookup.entry(c.clone()).or_insert(next);
            if j == next {
                reps.push(c);
            }
            images[gi].push(j as u32);
        }
        i += 1;
    }
    debug_assert_eq!(reps.len(), index);
    let gens = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    Group::new(index, gens)
}

/// Conjugacy class representatives with class sizes, in order of first
/// appearance in the element enumeration.
pub fn conjugacy_classes(group: &Group, cap: u64) -> Result<Vec<(Permutation, usize)>> {
    let elements = group.elements(cap)?;
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seen = vec![false; elements.len()];
    let mut out = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut class = vec![start];
        let mut i = 0;
        while i < class.len() {
            let x = &elements[class[i]];
            for g in group.generators() {
                let y = index[&x.conjugate_by(g)];
                if !seen[y] {
                    seen[y] = true;
                    class.push(y);
                }
            }
            i += 1;
        }
        out.push((elements[start].clone(), class.len()));
    }
    Ok(out)
}

/// Which proper normal subgroup the composition-length recursion splits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitChoice {
    /// Smallest proper normal closure (first found on ties).
    Smallest,
    /// Largest proper normal closure (first found on ties).
    Largest,
    /// A pseudo-random proper normal closure, reproducible from the seed.
    Seeded(u64),
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Orders of the composition factors of `G`, found by splitting on normal
/// closures of conjugacy-class representatives.
///
/// A quotient `X/Y` is never materialized: its normal subgroups are the
/// normal closures in `X` of `Y` together with one more element, so the whole
/// recursion stays in the original degree.
pub fn composition_factors(group: &Group, cap: u64, choice: SplitChoice) -> Result<Vec<BigUint>> {
    group.check_cap("group order", cap)?;
    let mut out = Vec::new();
    let trivial = Group::trivial(group.degree());
    relative_factors(group, &trivial, cap, choice, &mut out)?;
    Ok(out)
}

fn relative_factors(
    top: &Group,
    bottom: &Group,
    cap: u64,
    choice: SplitChoice,
    out: &mut Vec<BigUint>,
) -> Result<()> {
    let top_order = top.order();
    let bottom_order = bottom.order();
    if top_order == bottom_order {
        return Ok(());
    }
    let mut best: Option<Group> = None;
    let mut candidates = Vec::new();
    for (x, _) in conjugacy_classes(top, cap)? {
        if bottom.contains(&x) {
            continue;
        }
        let mut seeds: Vec<Permutation> = bottom.generators().to_vec();
        seeds.push(x);
        let m = closure_unchecked(top, &seeds);
        let m_order = m.order();
        if m_order == top_order {
            continue;
        }
        let better = match (&best, choice) {
            (_, SplitChoice::Seeded(_)) => {
                candidates.push(m);
                continue;
            }
            (None, _) => true,
            (Some(b), SplitChoice::Smallest) => m_order < b.order(),
            (Some(b), SplitChoice::Largest) => m_order > b.order(),
        };
        if better {
            best = Some(m);
        }
    }
    let (lower, upper) = match choice {
        SplitChoice::Seeded(seed) => {
            let state = splitmix(seed);
            if !candidates.is_empty() {
                let i = (state % candidates.len() as u64) as usize;
                best = Some(candidates.swap_remove(i));
            }
            (
                SplitChoice::Seeded(state),
                SplitChoice::Seeded(splitmix(state ^ 1)),
            )
        }
        c => (c, c),
    };
    match best {
        None => {
            out.push(top_order / bottom_order);
            Ok(())
        }
        Some(middle) => {
            relative_factors(&middle, bottom, cap, lower, out)?;
            relative_factors(top, &middle, cap, upper, out)
        }
    }
}

/// Composition length `a(G)`.
pub fn composition_length(group: &Group, cap: u64) -> Result<usize> {
    composition_factors(group, cap, SplitChoice::Smallest).map(|f| f.len())
}

/// `a(G)`, read off `|G|` when `G` is soluble (every composition factor then
/// has prime order), otherwise computed by [`composition_length`].
pub fn composition_length_auto(group: &Group, cap: u64) -> Result<usize> {
    if is_soluble(group) {
        return Ok(big_omega(&group.order(), group.degree()));
    }
    composition_length(group, cap)
}

/// Product of a list of factor orders.
pub fn product(factors: &[BigUint]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, f| acc * f)
}
