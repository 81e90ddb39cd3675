//! Wreath products, even parts and small soluble witness subgroups.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::series::is_soluble;

/// `R ≀ S` in imprimitive action on `r·s` points, block `j` being
/// `j·r .. (j+1)·r`.
///
/// The generators are those of `R` on the first block of every `S`-orbit,
/// followed by the generators of `S` permuting blocks rigidly. For transitive
/// `S` that is one copy of `R` on block 0.
pub fn wreath_imprimitive(bottom: &Group, top: &Group) -> Group {
    let r = bottom.degree();
    let s = top.degree();
    let n = r * s;
    let mut gens = Vec::new();
    for orbit in top.orbits() {
        let block = orbit[0];
        for g in bottom.generators() {
            gens.push(g.shifted(block * r, n));
        }
    }
    for h in top.generators() {
        let images: Vec<u32> = (0..n)
            .map(|x| (h.image(x / r) * r + x % r) as u32)
            .collect();
        gens.push(Permutation::from_images(images).expect("block lift is a permutation"));
    }
    Group::new(n, gens).expect("degrees agree")
}

/// `R_1 ≀ R_2 ≀ ... ≀ R_t` with `R_1` innermost (acting on the smallest
/// blocks).
pub fn iterated_wreath(components: &[Group]) -> Result<Group> {
    let (first, rest) = components
        .split_first()
        .ok_or_else(|| Error::InvalidArgument(String::from("empty component list")))?;
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, next| wreath_imprimitive(&acc, next)))
}

/// `A × B` acting on `deg A + deg B` points, `A` on the first points.
pub fn direct_product(a: &Group, b: &Group) -> Group {
    let n = a.degree() + b.degree();
    let gens = a
        .generators()
        .iter()
        .map(|g| g.shifted(0, n))
        .chain(b.generators().iter().map(|g| g.shifted(a.degree(), n)))
        .collect();
    Group::new(n, gens).expect("degrees agree")
}

/// The subgroup of even permutations.
///
/// With an odd generator `o` as coset representative, the Schreier generators
/// are `g` and `o g o^-1` for even `g`, and `g o^-1` and `o g` for odd `g`.
pub fn even_part(group: &Group) -> Group {
    let Some(o) = group.generators().iter().find(|g| !g.is_even()) else {
        return group.clone();
    };
    let oi = o.inverse();
    let mut candidates = Vec::new();
    for g in group.generators() {
        if g.is_even() {
            candidates.push(g.clone());
            candidates.push(o.then(g).then(&oi));
        } else {
            candidates.push(g.then(&oi));
            candidates.push(o.then(g));
        }
    }
    Group::generated_reduced(
        group.degree(),
        candidates.into_iter().filter(|g| !g.is_identity()),
    )
}

/// A Sylow 2-subgroup of `Alt(2^k)`: the even part of `C_2 ≀ ... ≀ C_2`.
pub fn sylow2_alt_tower(k: u32) -> Result<Group> {
    if k <= 1 {
        return Err(Error::NoSuchSubgroup(
            "Alt(2) is trivial, so a tower needs k >= 2",
        ));
    }
    let parts = vec![Group::cyclic(2); k as usize];
    Ok(even_part(&iterated_wreath(&parts)?))
}

/// How a witness group was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// The textbook recipe applied literally.
    Paper,
    /// A replacement used where the recipe does not apply.
    Fallback,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Paper => "paper",
            Strategy::Fallback => "fallback",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub group: Group,
    pub strategy: Strategy,
    /// Some part of degree `2 mod 4` (at least 6) needed the even part of
    /// `C_2 ≀ C_m`, because the Sylow tower recipe is intransitive there.
    pub uses_two_mod_four_gap: bool,
}

/// A soluble transitive subgroup of `Alt(n)`.
///
/// Odd `n`: an `n`-cycle. `n = 2^k·r` with `k >= 2`: the Sylow tower of
/// `Alt(2^k)` wreathed with an `r`-cycle. `n = 2m`, `m >= 3` odd: the even
/// part of `C_2 ≀ C_m`.
pub fn soluble_transitive_alt(n: usize) -> Result<Construction> {
    if n == 2 {
        return Err(Error::NoSuchSubgroup(
            "Alt(2) is trivial and has no transitive subgroup",
        ));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(String::from("degree 0")));
    }
    if n % 2 == 1 {
        return Ok(Construction {
            group: Group::cyclic(n),
            strategy: Strategy::Paper,
            uses_two_mod_four_gap: false,
        });
    }
    let k = n.trailing_zeros();
    let r = n >> k;
    if k == 1 {
        let w = wreath_imprimitive(&Group::cyclic(2), &Group::cyclic(r));
        return Ok(Construction {
            group: even_part(&w),
            strategy: Strategy::Fallback,
            uses_two_mod_four_gap: true,
        });
    }
    let tower = sylow2_alt_tower(k)?;
    let group = if r == 1 {
        tower
    } else {
        wreath_imprimitive(&tower, &Group::cyclic(r))
    };
    Ok(Construction {
        group,
        strategy: Strategy::Paper,
        uses_two_mod_four_gap: false,
    })
}

/// Why a candidate orbit split `(l1, l2)` admits no witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectedSplit {
    pub lengths: (usize, usize),
    pub reason: &'static str,
}

/// Exhaustive record that no witness exists in the fallback search space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasibility {
    pub n: usize,
    pub p: u64,
    pub in_alt: bool,
    pub rejected: Vec<RejectedSplit>,
}

#[derive(Clone, Debug)]
pub enum TwoOrbitOutcome {
    Witness(Construction),
    Infeasible(Infeasibility),
}

fn cycle_pair(n: usize, l1: usize, l2: usize) -> Permutation {
    let a: Vec<usize> = (0..l1).collect();
    let b: Vec<usize> = (l1..l1 + l2).collect();
    let mut cycles: Vec<&[usize]> = Vec::new();
    if l1 > 1 {
        cycles.push(&a);
    }
    if l2 > 1 {
        cycles.push(&b);
    }
    Permutation::from_cycles(n, &cycles).expect("disjoint cycles")
}

fn cyclic_witness(n: usize, l1: usize, l2: usize) -> Group {
    let x = cycle_pair(n, l1, l2);
    let gens = if x.is_identity() { Vec::new() } else { vec![x] };
    Group::new(n, gens).expect("degree n")
}

/// A soluble subgroup of `Sym(n)` (of `Alt(n)` when `in_alt`) with at most two
/// orbits, each of length prime to `p`.
///
/// The recipe: for `p = 2`, one odd cycle or two odd cycles. For odd `p`,
/// write `n = tp + k` and take soluble transitive subgroups of `Alt(tp - 1)`
/// and `Alt(k + 1)`, or of `Alt(tp + 1)` and `Alt(k - 1)` when `k = p - 1`.
/// When a part is empty or has two points, a fallback searches orbit splits
/// `l1 + l2 = n` for a single permutation with those cycle lengths, then for a
/// direct product of soluble transitive even groups.
pub fn two_orbit_pprime(n: usize, p: u64, in_alt: bool) -> Result<TwoOrbitOutcome> {
    if n == 0 {
        return Err(Error::InvalidArgument(String::from("degree 0")));
    }
    if !crate::numeric::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if let Some(c) = two_orbit_recipe(n, p)? {
        return Ok(TwoOrbitOutcome::Witness(c));
    }
    two_orbit_fallback(n, p, in_alt)
}

fn two_orbit_recipe(n: usize, p: u64) -> Result<Option<Construction>> {
    if p == 2 {
        let (l1, l2) = if n % 2 == 1 {
            (n, 0)
        } else {
            (3.min(n - 1), n - 3.min(n - 1))
        };
        return Ok(Some(Construction {
            group: cyclic_witness(n, l1, l2),
            strategy: Strategy::Paper,
            uses_two_mod_four_gap: false,
        }));
    }
    let p = p as usize;
    let (t, k) = (n / p, n % p);
    let (a, b) = if k != p - 1 {
        if t == 0 {
            return Ok(None);
        }
        (t * p - 1, k + 1)
    } else {
        (t * p + 1, k - 1)
    };
    if a == 2 || b == 2 || a == 0 || b == 0 {
        return Ok(None);
    }
    let t1 = soluble_transitive_alt(a)?;
    let t2 = soluble_transitive_alt(b)?;
    Ok(Some(Construction {
        group: direct_product(&t1.group, &t2.group),
        strategy: Strategy::Paper,
        uses_two_mod_four_gap: t1.uses_two_mod_four_gap || t2.uses_two_mod_four_gap,
    }))
}

fn two_orbit_fallback(n: usize, p: u64, in_alt: bool) -> Result<TwoOrbitOutcome> {
    let coprime = |l: usize| !l.is_multiple_of(p as usize);
    let splits: Vec<(usize, usize)> = (n.div_ceil(2)..=n).rev().map(|l1| (l1, n - l1)).collect();
    let mut rejected = Vec::new();
    let mut open = Vec::new();
    for &(l1, l2) in &splits {
        if !coprime(l1) || (l2 > 0 && !coprime(l2)) {
            rejected.push(RejectedSplit {
                lengths: (l1, l2),
                reason: "an orbit length is divisible by p",
            });
            continue;
        }
        let parity = (l1 - 1) + l2.saturating_sub(1);
        if !in_alt || parity % 2 == 0 {
            return Ok(TwoOrbitOutcome::Witness(Construction {
                group: cyclic_witness(n, l1, l2),
                strategy: Strategy::Fallback,
                uses_two_mod_four_gap: false,
            }));
        }
        open.push((l1, l2));
    }
    for (l1, l2) in open {
        if l1 == 2 || l2 == 2 {
            rejected.push(RejectedSplit {
                lengths: (l1, l2),
                reason: "odd cycle product, and Alt(2) has no transitive subgroup",
            });
            continue;
        }
        let t1 = soluble_transitive_alt(l1)?;
        let (group, gap) = if l2 == 0 {
            (t1.group, t1.uses_two_mod_four_gap)
        } else {
            let t2 = soluble_transitive_alt(l2)?;
            (
                direct_product(&t1.group, &t2.group),
                t1.uses_two_mod_four_gap || t2.uses_two_mod_four_gap,
            )
        };
        return Ok(TwoOrbitOutcome::Witness(Construction {
            group,
            strategy: Strategy::Fallback,
            uses_two_mod_four_gap: gap,
        }));
    }
    rejected.sort_by_key(|r| core::cmp::Reverse(r.lengths));
    Ok(TwoOrbitOutcome::Infeasible(Infeasibility {
        n,
        p,
        in_alt,
        rejected,
    }))
}

/// Properties of a constructed group, recomputed from its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCertificate {
    pub degree: usize,
    pub order: BigUint,
    pub orbit_lengths: Vec<usize>,
    pub transitive: bool,
    pub soluble: bool,
    /// Sign of each generator.
    pub generator_signs: Vec<i8>,
    pub strategy: Strategy,
    pub uses_two_mod_four_gap: bool,
}

impl PropertyCertificate {
    pub fn of(c: &Construction) -> Self {
        let g = &c.group;
        PropertyCertificate {
            degree: g.degree(),
            order: g.order(),
            orbit_lengths: g.orbits().iter().map(Vec::len).collect(),
            transitive: g.is_transitive(),
            soluble: is_soluble(g),
            generator_signs: g.generators().iter().map(Permutation::sign).collect(),
            strategy: c.strategy,
            uses_two_mod_four_gap: c.uses_two_mod_four_gap,
        }
    }

    pub fn all_even(&self) -> bool {
        self.generator_signs.iter().all(|&s| s == 1)
    }

    /// Degree `n`, transitive, soluble, inside `Alt(n)`.
    pub fn is_soluble_transitive_alt(&self, n: usize) -> bool {
        self.degree == n && self.transitive && self.soluble && self.all_even()
    }

    /// Degree `n`, at most two orbits each of length prime to `p`, soluble,
    /// and inside `Alt(n)` when `in_alt`.
    pub fn is_two_orbit_pprime(&self, n: usize, p: u64, in_alt: bool) -> bool {
        self.degree == n
            && self.orbit_lengths.len() <= 2
            && self
                .orbit_lengths
                .iter()
                .all(|&l| !(l as u64).is_multiple_of(p))
            && self.soluble
            && (!in_alt || self.all_even())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_large_subgroup, BlockSystem};

    fn order(g: &Group) -> u64 {
        g.order_u64().unwrap()
    }

    #[test]
    fn wreath_orders() {
        let s2 = Group::symmetric(2);
        let s3 = Group::symmetric(3);
        assert_eq!(order(&wreath_imprimitive(&s2, &s2)), 8);
        assert_eq!(order(&wreath_imprimitive(&s2, &s3)), 48);
        assert_eq!(
            order(&wreath_imprimitive(&Group::cyclic(3), &Group::cyclic(2))),
            18
        );
        let w = iterated_wreath(&[s2.clone(), s2.clone(), s2.clone()]).unwrap();
        assert_eq!((w.degree(), order(&w)), (8, 128));
        assert_eq!(
            order(&iterated_wreath(&[s3.clone(), s2.clone()]).unwrap()),
            72
        );
        assert!(iterated_wreath(&[Group::cyclic(2)])
            .unwrap()
            .same_group(&Group::cyclic(2)));
        assert!(iterated_wreath(&[]).is_err());
    }

    #[test]
    fn wreath_is_large() {
        let r = Group::alternating(4);
        let s = Group::cyclic(3);
        let w = wreath_imprimitive(&r, &s);
        let b = BlockSystem::contiguous(12, 4).unwrap();
        assert!(b.is_invariant_under(&w));
        assert!(is_large_subgroup(&w, &r, &s, &b).unwrap());
    }

    #[test]
    fn intransitive_top_copies_bottom_per_orbit() {
        let top = Group::trivial(2);
        let w = wreath_imprimitive(&Group::cyclic(3), &top);
        assert_eq!(order(&w), 9);
    }

    #[test]
    fn towers() {
        let v4 = sylow2_alt_tower(2).unwrap();
        assert_eq!(order(&v4), 4);
        assert!(v4.is_transitive() && v4.all_generators_even());
        let p8 = sylow2_alt_tower(3).unwrap();
        // 2-part of 8!/2 = 20160 is 64
        assert_eq!(order(&p8), 64);
        assert!(p8.is_transitive());
        assert!(sylow2_alt_tower(1).is_err());
    }

    #[test]
    fn soluble_alt_examples() {
        let c5 = soluble_transitive_alt(5).unwrap();
        assert!(c5.group.same_group(&Group::cyclic(5)));
        let v4 = soluble_transitive_alt(4).unwrap();
        assert_eq!(order(&v4.group), 4);
        let six = soluble_transitive_alt(6).unwrap();
        assert_eq!(six.strategy, Strategy::Fallback);
        assert!(six.uses_two_mod_four_gap);
        let cert = PropertyCertificate::of(&six);
        assert!(cert.is_soluble_transitive_alt(6));
        assert_eq!(cert.order, BigUint::from(12u32));
        assert_eq!(
            soluble_transitive_alt(12).unwrap().strategy,
            Strategy::Paper
        );
        assert!(matches!(
            soluble_transitive_alt(2),
            Err(Error::NoSuchSubgroup(_))
        ));
    }

    #[test]
    fn two_orbit_examples() {
        let TwoOrbitOutcome::Witness(c) = two_orbit_pprime(10, 2, true).unwrap() else {
            panic!()
        };
        let cert = PropertyCertificate::of(&c);
        assert_eq!(cert.orbit_lengths, vec![3, 7]);
        assert!(cert.is_two_orbit_pprime(10, 2, true));

        let TwoOrbitOutcome::Witness(c) = two_orbit_pprime(6, 5, true).unwrap() else {
            panic!()
        };
        assert_eq!(c.strategy, Strategy::Fallback);
        let x = Permutation::parse("(1 2 3 4)(5 6)", 6).unwrap();
        assert!(c.group.same_group(&Group::new(6, vec![x]).unwrap()));

        let TwoOrbitOutcome::Witness(c) = two_orbit_pprime(7, 2, false).unwrap() else {
            panic!()
        };
        assert!(c.group.same_group(&Group::cyclic(7)));
    }

    #[test]
    fn two_orbit_edge_cases() {
        let TwoOrbitOutcome::Witness(c) = two_orbit_pprime(2, 3, true).unwrap() else {
            panic!()
        };
        assert!(c.group.is_trivial());
        assert!(PropertyCertificate::of(&c).is_two_orbit_pprime(2, 3, true));
        // the subgroups of Alt(3) are 1 (three orbits) and Alt(3) (orbit length 3)
        match two_orbit_pprime(3, 3, true).unwrap() {
            TwoOrbitOutcome::Infeasible(inf) => assert_eq!(inf.rejected.len(), 2),
            TwoOrbitOutcome::Witness(_) => panic!("no witness exists"),
        }
        assert!(matches!(
            two_orbit_pprime(3, 3, false).unwrap(),
            TwoOrbitOutcome::Witness(_)
        ));
    }
}
