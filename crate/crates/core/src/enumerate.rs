//! Transitive subgroups of `Sym(n)` up to conjugacy, and the table of
//! `f(n) = max d(G) log|G|`.
//!
//! Exhaustive mode walks the subgroup conjugacy classes of `Sym(n)`: every
//! subgroup `K > 1` equals `<H, g>` for a maximal subgroup `H` of `K` and any
//! `g` in `K \ H`, so extending one representative `H` of each class by one
//! element from each `N(H)`-conjugation orbit reaches every class. Subgroups
//! are identified by their sorted list of Lehmer ranks; when a class is found
//! all its conjugates are recorded, so later hits are plain lookups.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigUint;

use crate::construct::{iterated_wreath, soluble_transitive_alt, wreath_imprimitive};
use crate::error::{Error, Result};
use crate::genrank::d_exact;
use crate::group::Group;
use crate::numeric::{is_prime, log2_big};
use crate::perm::Permutation;

/// Largest degree enumerated exhaustively by default.
pub const EXHAUSTIVE_CAP: usize = 7;
/// Largest degree enumerated exhaustively with `allow_degree_8`.
pub const LONG_RUNNING_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Curated,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Curated => "curated",
        }
    }
}

/// Order in which extension candidates are tried. The resulting catalog is
/// the same either way; running both is a consistency check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtensionOrder {
    #[default]
    Forward,
    Reverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub mode: Mode,
    pub order: ExtensionOrder,
    pub allow_degree_8: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            mode: Mode::Exhaustive,
            order: ExtensionOrder::Forward,
            allow_degree_8: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub degree: usize,
    /// 1-based position in the catalog.
    pub index: usize,
    pub group: Group,
    pub order: BigUint,
}

impl CatalogEntry {
    pub fn id(&self) -> String {
        format!("{}.{}", self.degree, self.index)
    }
}

#[derive(Clone, Debug)]
pub struct TransitiveCatalog {
    pub degree: usize,
    pub mode: Mode,
    pub entries: Vec<CatalogEntry>,
}

/// Lehmer rank of a permutation of degree `<= 8`.
pub fn lehmer_rank(p: &Permutation) -> usize {
    let im = p.images();
    let n = im.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = im[i + 1..].iter().filter(|&&y| y < im[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`lehmer_rank`].
pub fn lehmer_unrank(n: usize, mut rank: usize) -> Permutation {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let images = digits.iter().map(|&d| pool.remove(d)).collect();
    Permutation::from_images_unchecked(images)
}

type RankSet = Vec<u16>;

/// `Sym(n)` listed by Lehmer rank, with conjugation by `(1 2)` and
/// `(1 2 ... n)` tabulated.
struct SymTable {
    n: usize,
    elements: Vec<Permutation>,
    conj_maps: Vec<Vec<u16>>,
}

impl SymTable {
    fn new(n: usize) -> Self {
        let total: usize = (1..=n).product();
        let elements: Vec<Permutation> = (0..total).map(|r| lehmer_unrank(n, r)).collect();
        let conj_maps = Group::symmetric(n)
            .generators()
            .iter()
            .map(|t| {
                elements
                    .iter()
                    .map(|e| lehmer_rank(&e.conjugate_by(t)) as u16)
                    .collect()
            })
            .collect();
        SymTable {
            n,
            elements,
            conj_maps,
        }
    }

    fn ranks_of(&self, group: &Group) -> RankSet {
        let mut out = Vec::new();
        group
            .chain()
            .for_each_element(|e| out.push(lehmer_rank(e) as u16));
        out.sort_unstable();
        out
    }

    fn conjugate_set(&self, set: &RankSet, map: &[u16]) -> RankSet {
        let mut out: RankSet = set.iter().map(|&r| map[r as usize]).collect();
        out.sort_unstable();
        out
    }
}

struct ClassRecord {
    group: Group,
    canonical: RankSet,
}

/// All subgroup conjugacy classes of `Sym(n)`, as canonical representatives
/// in discovery order.
struct ClassWalk {
    table: SymTable,
    classes: Vec<ClassRecord>,
    /// Every subgroup found so far (all conjugates of every class).
    known: HashSet<RankSet>,
}

impl ClassWalk {
    fn new(n: usize) -> Self {
        ClassWalk {
            table: SymTable::new(n),
            classes: Vec::new(),
            known: HashSet::new(),
        }
    }

    /// Records all conjugates of `set` and returns the least one.
    fn add_class(&mut self, set: RankSet) -> RankSet {
        let mut least = set.clone();
        let mut queue = VecDeque::from([set.clone()]);
        self.known.insert(set);
        while let Some(s) = queue.pop_front() {
            for map in &self.table.conj_maps {
                let t = self.table.conjugate_set(&s, map);
                if !self.known.contains(&t) {
                    if t < least {
                        least = t.clone();
                    }
                    self.known.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        least
    }

    fn group_from_ranks(&self, set: &RankSet) -> Group {
        Group::generated_reduced(
            self.table.n,
            set.iter()
                .skip(1)
                .map(|&r| self.table.elements[r as usize].clone()),
        )
    }

    fn push(&mut self, set: RankSet) {
        let canonical = self.add_class(set);
        let group = self.group_from_ranks(&canonical);
        self.classes.push(ClassRecord { group, canonical });
    }

    /// Generators of the normalizer of `h` in `Sym(n)`.
    fn normalizer(&self, h: &Group, members: &HashSet<u16>) -> Vec<Permutation> {
        let mut chain = crate::chain::StabilizerChain::new(self.table.n);
        let mut gens = Vec::new();
        for x in &self.table.elements {
            if chain.contains(x) {
                continue;
            }
            let normalizes = h
                .generators()
                .iter()
                .all(|g| members.contains(&(lehmer_rank(&g.conjugate_by(x)) as u16)));
            if normalizes && chain.add_generator(x) {
                gens.push(x.clone());
            }
        }
        gens
    }

    fn run(&mut self, order: ExtensionOrder) {
        let n = self.table.n;
        let identity = vec![0u16];
        self.push(identity);
        let total = self.table.elements.len();
        let mut next = 0;
        while next < self.classes.len() {
            let h = self.classes[next].group.clone();
            let members: HashSet<u16> = self.classes[next].canonical.iter().copied().collect();
            next += 1;
            let norm = self.normalizer(&h, &members);
            let mut visited = vec![false; total];
            let ranks: Vec<usize> = match order {
                ExtensionOrder::Forward => (0..total).collect(),
                ExtensionOrder::Reverse => (0..total).rev().collect(),
            };
            for r in ranks {
                if visited[r] {
                    continue;
                }
                // mark the N(H)-conjugation orbit of r
                let mut stack = vec![r];
                visited[r] = true;
                while let Some(e) = stack.pop() {
                    for x in &norm {
                        let c = lehmer_rank(&self.table.elements[e].conjugate_by(x));
                        if !visited[c] {
                            visited[c] = true;
                            stack.push(c);
                        }
                    }
                }
                if members.contains(&(r as u16)) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.push(self.table.elements[r].clone());
                let k = Group::new(n, gens).expect("degree n");
                let set = self.table.ranks_of(&k);
                if !self.known.contains(&set) {
                    self.push(set);
                }
            }
        }
    }
}

/// Representatives of all conjugacy classes of subgroups of `Sym(n)`,
/// `n <= 8`, each the least conjugate under the rank ordering.
pub fn subgroup_classes(n: usize, order: ExtensionOrder) -> Result<Vec<Group>> {
    if n > LONG_RUNNING_CAP {
        return Err(Error::DegreeAboveCap {
            degree: n,
            cap: LONG_RUNNING_CAP,
        });
    }
    let mut walk = ClassWalk::new(n);
    walk.run(order);
    Ok(walk.classes.into_iter().map(|c| c.group).collect())
}

fn sort_key(g: &Group) -> (BigUint, Vec<Vec<u32>>) {
    (
        g.order(),
        g.generators().iter().map(|p| p.images().to_vec()).collect(),
    )
}

fn into_catalog(degree: usize, mode: Mode, mut groups: Vec<Group>) -> TransitiveCatalog {
    groups.sort_by_cached_key(sort_key);
    let entries = groups
        .into_iter()
        .enumerate()
        .map(|(i, group)| CatalogEntry {
            degree,
            index: i + 1,
            order: group.order(),
            group,
        })
        .collect();
    TransitiveCatalog {
        degree,
        mode,
        entries,
    }
}

/// Transitive subgroups of `Sym(n)`.
///
/// Exhaustive mode returns one canonical representative per conjugacy class
/// and needs `n <= 7` (or `n <= 8` with `allow_degree_8`). Curated mode lists
/// constructed families without any completeness claim.
pub fn enumerate_transitive(n: usize, opts: &EnumerateOptions) -> Result<TransitiveCatalog> {
    if n == 0 {
        return Err(Error::InvalidArgument(String::from("degree 0")));
    }
    match opts.mode {
        Mode::Exhaustive => {
            let cap = if opts.allow_degree_8 {
                LONG_RUNNING_CAP
            } else {
                EXHAUSTIVE_CAP
            };
            if n > cap {
                return Err(Error::DegreeAboveCap { degree: n, cap });
            }
            let groups = subgroup_classes(n, opts.order)?
                .into_iter()
                .filter(Group::is_transitive)
                .collect();
            Ok(into_catalog(n, Mode::Exhaustive, groups))
        }
        Mode::Curated => Ok(into_catalog(n, Mode::Curated, curated_groups(n))),
    }
}

/// `x -> a x + b` on `Z/p` with `a` in the subgroup of units of order `k`.
pub fn affine_group(p: usize, k: usize) -> Result<Group> {
    if !is_prime(p as u64) || !(p - 1).is_multiple_of(k) {
        return Err(Error::InvalidArgument(format!(
            "need p prime and k | p-1, got p={p}, k={k}"
        )));
    }
    let translation = Group::cyclic(p).generators().to_vec();
    // a primitive root raised to (p-1)/k generates the units of order k
    let root = (2..p.max(3))
        .find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1))
        .unwrap_or(1);
    let a = pow_mod(root, (p - 1) / k, p);
    let mut gens = translation;
    if k > 1 {
        let images = (0..p).map(|x| (a * x % p) as u32).collect();
        gens.push(Permutation::from_images(images)?);
    }
    Group::new(p, gens)
}

fn pow_mod(b: usize, e: usize, m: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * b % m)
}

/// Cyclic, dihedral, affine, alternating and symmetric groups, soluble
/// transitive subgroups of the alternating group, and wreath products of
/// cyclic and symmetric groups over each factorization `n = r s`.
pub fn curated_groups(n: usize) -> Vec<Group> {
    let mut found: Vec<Group> = Vec::new();
    let mut add = |g: Group| {
        if g.is_transitive() && !found.iter().any(|h| h.same_group(&g)) {
            found.push(g);
        }
    };
    add(Group::cyclic(n));
    if n >= 3 {
        add(Group::dihedral(n));
        add(Group::alternating(n));
    }
    add(Group::symmetric(n));
    if is_prime(n as u64) && n > 2 {
        for k in (1..n).filter(|k| (n - 1).is_multiple_of(*k)) {
            add(affine_group(n, k).expect("p prime, k | p-1"));
        }
    }
    if let Ok(c) = soluble_transitive_alt(n) {
        add(c.group);
    }
    if n.is_power_of_two() && n >= 4 {
        let k = n.trailing_zeros() as usize;
        add(iterated_wreath(&vec![Group::cyclic(2); k]).expect("nonempty"));
    }
    for r in (2..n).filter(|r| n.is_multiple_of(*r)) {
        let s = n / r;
        for bottom in [Group::cyclic(r), Group::symmetric(r)] {
            for top in [Group::cyclic(s), Group::symmetric(s)] {
                add(wreath_imprimitive(&bottom, &top));
            }
        }
    }
    found
}

/// Some `x` with `a^x = b`, for degree `<= 8`, by scanning `Sym(n)`.
pub fn are_conjugate(a: &Group, b: &Group) -> Result<Option<Permutation>> {
    let n = a.degree();
    if n > LONG_RUNNING_CAP {
        return Err(Error::DegreeAboveCap {
            degree: n,
            cap: LONG_RUNNING_CAP,
        });
    }
    if b.degree() != n || a.order() != b.order() {
        return Ok(None);
    }
    let profile = |g: &Group| {
        let mut v: Vec<usize> = g.orbits().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    };
    if profile(a) != profile(b) {
        return Ok(None);
    }
    let total: usize = (1..=n).product();
    for r in 0..total {
        let x = lehmer_unrank(n, r);
        if a.generators()
            .iter()
            .all(|g| b.contains(&g.conjugate_by(&x)))
        {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Index of the catalog entry conjugate to `group`.
pub fn locate(catalog: &TransitiveCatalog, group: &Group) -> Result<Option<usize>> {
    for (i, e) in catalog.entries.iter().enumerate() {
        if are_conjugate(group, &e.group)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// One row of the `f(n)` table.
#[derive(Clone, Debug, PartialEq)]
pub struct FTableRow {
    pub n: usize,
    pub f: f64,
    pub f_over_n2: f64,
    pub witness: String,
    pub witness_d: usize,
    pub witness_order: BigUint,
}

impl FTableRow {
    /// Maximum of `d log|G|` over `(id, d, order)` triples; the first entry
    /// wins ties.
    pub fn best<'a, I>(n: usize, values: I) -> Option<Self>
    where
        I: IntoIterator<Item = (String, usize, &'a BigUint)>,
    {
        let mut best: Option<FTableRow> = None;
        for (id, d, order) in values {
            let f = d as f64 * log2_big(order);
            if best.as_ref().is_none_or(|b| f > b.f) {
                best = Some(FTableRow {
                    n,
                    f,
                    f_over_n2: f / (n * n) as f64,
                    witness: id,
                    witness_d: d,
                    witness_order: order.clone(),
                });
            }
        }
        best
    }
}

/// `f(n)` over a complete catalog, with every `d` computed exactly.
pub fn f_table_row(catalog: &TransitiveCatalog, d_cap: u64) -> Result<FTableRow> {
    let mut values = Vec::new();
    for e in &catalog.entries {
        let cap = d_cap.max(e.group.order_u64().unwrap_or(u64::MAX));
        let d = d_exact(&e.group, cap)?;
        values.push((e.id(), d.upper, &e.order));
    }
    FTableRow::best(catalog.degree, values)
        .ok_or_else(|| Error::InvalidArgument(String::from("empty catalog")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::factorial;
    use num_traits::ToPrimitive;

    #[test]
    fn lehmer_roundtrip() {
        for n in 1..=5 {
            let total = factorial(n).to_usize().unwrap();
            for r in 0..total {
                assert_eq!(lehmer_rank(&lehmer_unrank(n, r)), r);
            }
        }
        assert!(lehmer_unrank(4, 0).is_identity());
    }

    #[test]
    fn subgroup_class_counts() {
        // classes of subgroups of Sym(n): 1, 2, 4, 11, 19
        let counts: Vec<usize> = (1..=5)
            .map(|n| subgroup_classes(n, ExtensionOrder::Forward).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 19]);
    }

    #[test]
    fn degree_four_catalog() {
        let cat = enumerate_transitive(4, &EnumerateOptions::default()).unwrap();
        let orders: Vec<u64> = cat
            .entries
            .iter()
            .map(|e| e.order.to_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![4, 4, 8, 12, 24]);
        let rev = enumerate_transitive(
            4,
            &EnumerateOptions {
                order: ExtensionOrder::Reverse,
                ..Default::default()
            },
        )
        .unwrap();
        for (a, b) in cat.entries.iter().zip(&rev.entries) {
            assert_eq!(a.group.generators(), b.group.generators());
        }
    }

    #[test]
    fn small_counts() {
        let c: Vec<usize> = (2..=5)
            .map(|n| {
                enumerate_transitive(n, &EnumerateOptions::default())
                    .unwrap()
                    .entries
                    .len()
            })
            .collect();
        assert_eq!(c, vec![1, 2, 5, 5]);
    }

    #[test]
    fn caps() {
        assert_eq!(
            enumerate_transitive(9, &EnumerateOptions::default()).unwrap_err(),
            Error::DegreeAboveCap { degree: 9, cap: 7 }
        );
        assert!(matches!(
            enumerate_transitive(8, &EnumerateOptions::default()),
            Err(Error::DegreeAboveCap { .. })
        ));
    }

    #[test]
    fn conjugacy_lookup() {
        let cat = enumerate_transitive(4, &EnumerateOptions::default()).unwrap();
        let x = Permutation::parse("(1 3 2 4)", 4).unwrap();
        for (i, e) in cat.entries.iter().enumerate() {
            assert_eq!(locate(&cat, &e.group.conjugate_by(&x)).unwrap(), Some(i));
        }
    }

    #[test]
    fn f_table_small() {
        let cat3 = enumerate_transitive(3, &EnumerateOptions::default()).unwrap();
        let row = f_table_row(&cat3, 20_000).unwrap();
        assert!((row.f - 2.0 * libm::log2(6.0)).abs() < 1e-12);
        assert_eq!(row.witness_d, 2);
    }

    #[test]
    fn curated_families() {
        let g5 = curated_groups(5);
        // C5, D5, A5, S5 and AGL(1,5) (order 20)
        let mut orders: Vec<u64> = g5.iter().map(|g| g.order_u64().unwrap()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![5, 10, 20, 60, 120]);
        assert!(curated_groups(12).iter().all(Group::is_transitive));
    }
}
