//! Block systems, primitivity, primitive decompositions and largeness.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::numeric::factorial;
use crate::perm::Permutation;

/// A partition of `0..degree` into blocks of equal size.
///
/// Blocks are sorted internally and ordered by least point, so block 0 is the
/// block containing point 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    degree: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(degree: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; degree];
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        let size = blocks.first().map_or(0, Vec::len);
        if size == 0 {
            return Err(Error::BadBlocks(String::from("empty block")));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != size {
                return Err(Error::BadBlocks(String::from("blocks of unequal size")));
            }
            for &x in b {
                if x >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::RepeatedPoint(x + 1));
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::BadBlocks(String::from(
                "blocks do not cover every point",
            )));
        }
        Ok(BlockSystem {
            degree,
            blocks,
            block_of,
        })
    }

    /// Contiguous blocks `{0..r}, {r..2r}, ...`.
    pub fn contiguous(degree: usize, block_size: usize) -> Result<Self> {
        if block_size == 0 || !degree.is_multiple_of(block_size) {
            return Err(Error::BadBlocks(format!(
                "block size {block_size} does not divide {degree}"
            )));
        }
        let blocks = (0..degree / block_size)
            .map(|j| (j * block_size..(j + 1) * block_size).collect())
            .collect();
        BlockSystem::new(degree, blocks)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn is_trivial(&self) -> bool {
        self.block_size() == 1 || self.num_blocks() == 1
    }

    /// Image of `g` on blocks, or `None` when `g` breaks a block.
    pub fn act(&self, g: &Permutation) -> Option<Permutation> {
        let mut images = vec![0u32; self.num_blocks()];
        for (i, b) in self.blocks.iter().enumerate() {
            let target = self.block_of[g.image(b[0])];
            if b.iter().any(|&x| self.block_of[g.image(x)] != target) {
                return None;
            }
            images[i] = target as u32;
        }
        Permutation::from_images(images).ok()
    }

    pub fn is_invariant_under(&self, group: &Group) -> bool {
        group.degree() == self.degree && group.generators().iter().all(|g| self.act(g).is_some())
    }
}

/// Result of a minimal block search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalBlocks {
    Primitive,
    System(BlockSystem),
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        Some((big, small))
    }
}

/// Finest block system in which `0` and `omega` share a block.
fn minimal_block_with(group: &Group, omega: usize) -> Vec<usize> {
    let n = group.degree();
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if let Some(pair) = uf.union(0, omega) {
        queue.push(pair);
    }
    while let Some((a, b)) = queue.pop() {
        for g in group.generators() {
            let (x, y) = (g.image(a), g.image(b));
            if let Some(pair) = uf.union(x, y) {
                queue.push(pair);
            }
        }
    }
    (0..n).map(|x| uf.find(x)).collect()
}

fn classes_to_blocks(labels: &[usize]) -> Vec<Vec<usize>> {
    let n = labels.len();
    let mut index = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (x, &l) in labels.iter().enumerate() {
        if index[l] == usize::MAX {
            index[l] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[l]].push(x);
    }
    blocks
}

/// Block system of least nontrivial block size.
///
/// For each `omega != 0` the finest system joining `0` and `omega` is found by
/// union-find refinement; the smallest block size wins, ties going to the
/// smallest `omega`.
pub fn minimal_block_system(group: &Group) -> Result<MinimalBlocks> {
    let n = group.degree();
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("degree {n} < 2")));
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for omega in 1..n {
        let labels = minimal_block_with(group, omega);
        let root = labels[0];
        let size = labels.iter().filter(|&&l| l == root).count();
        if size < n && best.as_ref().is_none_or(|(s, _)| size < *s) {
            best = Some((size, labels));
            if size == 2 {
                break;
            }
        }
    }
    match best {
        None => Ok(MinimalBlocks::Primitive),
        Some((_, labels)) => Ok(MinimalBlocks::System(BlockSystem::new(
            n,
            classes_to_blocks(&labels),
        )?)),
    }
}

pub fn is_primitive(group: &Group) -> Result<bool> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if group.degree() < 2 {
        return Ok(true);
    }
    Ok(minimal_block_system(group)? == MinimalBlocks::Primitive)
}

/// Action of `group` on the blocks of `system`.
pub fn block_action(group: &Group, system: &BlockSystem) -> Result<Group> {
    if group.degree() != system.degree() {
        return Err(Error::DegreeMismatch(group.degree(), system.degree()));
    }
    let mut gens = Vec::new();
    for g in group.generators() {
        let img = system.act(g).ok_or(Error::NotInvariant)?;
        if !img.is_identity() {
            gens.push(img);
        }
    }
    Group::new(system.num_blocks(), gens)
}

/// Image on block `index` (points identified in sorted order) of the setwise
/// stabilizer of that block.
pub fn block_stabilizer_image(group: &Group, system: &BlockSystem, index: usize) -> Result<Group> {
    if !system.is_invariant_under(group) {
        return Err(Error::NotInvariant);
    }
    let b = system.num_blocks();
    let block = &system.blocks()[index];
    let r = block.len();
    let mut local = vec![usize::MAX; system.degree()];
    for (k, &x) in block.iter().enumerate() {
        local[x] = k;
    }
    let acts: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| system.act(g).unwrap())
        .collect();
    // Transversal for the orbit of block `index` under the block action.
    let mut reps: Vec<Option<Permutation>> = vec![None; b];
    reps[index] = Some(Permutation::identity(group.degree()));
    let mut orbit = vec![index];
    let mut i = 0;
    while i < orbit.len() {
        let j = orbit[i];
        for (g, a) in group.generators().iter().zip(&acts) {
            let k = a.image(j);
            if reps[k].is_none() {
                reps[k] = Some(reps[j].as_ref().unwrap().then(g));
                orbit.push(k);
            }
        }
        i += 1;
    }
    let mut chain = StabilizerChain::new(r);
    let mut kept = Vec::new();
    for &j in &orbit {
        let u = reps[j].as_ref().unwrap();
        for (g, a) in group.generators().iter().zip(&acts) {
            let k = a.image(j);
            let s = u.then(g).then(&reps[k].as_ref().unwrap().inverse());
            let images: Vec<u32> = block.iter().map(|&x| local[s.image(x)] as u32).collect();
            let restricted = Permutation::from_images(images)?;
            if chain.add_generator(&restricted) {
                kept.push(restricted);
            }
        }
    }
    Ok(Group::generated_reduced(r, kept))
}

/// Action of the stabilizer of the first block on that block.
pub fn block_component(group: &Group, system: &BlockSystem) -> Result<Group> {
    block_stabilizer_image(group, system, 0)
}

/// One primitive component `R_i` with its degree `r_i`.
#[derive(Clone, Debug)]
pub struct Component {
    pub group: Group,
    pub degree: usize,
}

/// Iterated decomposition of a transitive group through minimal block
/// systems. Component 0 is the innermost (acts on a minimal block of the
/// original group); the last component is the primitive top action.
#[derive(Clone, Debug)]
pub struct PrimitiveDecomposition {
    pub components: Vec<Component>,
    /// Block system used at each imprimitive step, on the current top group.
    pub systems: Vec<BlockSystem>,
    /// `top_projections[i]` is the action on the blocks of `systems[i]`.
    pub top_projections: Vec<Group>,
}

impl PrimitiveDecomposition {
    pub fn degrees(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.degree).collect()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn primitive_decomposition(group: &Group) -> Result<PrimitiveDecomposition> {
    if group.degree() < 2 {
        return Err(Error::InvalidArgument(format!(
            "degree {} < 2",
            group.degree()
        )));
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut components = Vec::new();
    let mut systems = Vec::new();
    let mut tops = Vec::new();
    let mut current = group.clone();
    loop {
        match minimal_block_system(&current)? {
            MinimalBlocks::Primitive => {
                let degree = current.degree();
                components.push(Component {
                    group: current,
                    degree,
                });
                break;
            }
            MinimalBlocks::System(system) => {
                let component = block_component(&current, &system)?;
                debug_assert!(is_primitive(&component).unwrap_or(false));
                let top = block_action(&current, &system)?;
                components.push(Component {
                    degree: system.block_size(),
                    group: component,
                });
                current = top.clone();
                systems.push(system);
                tops.push(top);
                if current.degree() == 1 {
                    break;
                }
            }
        }
    }
    Ok(PrimitiveDecomposition {
        components,
        systems,
        top_projections: tops,
    })
}

/// Largeness of `group` in `bottom ≀ top` with respect to `system`:
/// the block action equals `top`, and for every block the stabilizer of that
/// block induces exactly `bottom` on it.
pub fn is_large_subgroup(
    group: &Group,
    bottom: &Group,
    top: &Group,
    system: &BlockSystem,
) -> Result<bool> {
    if group.degree() != system.degree() {
        return Err(Error::DegreeMismatch(group.degree(), system.degree()));
    }
    if bottom.degree() != system.block_size() {
        return Err(Error::DegreeMismatch(bottom.degree(), system.block_size()));
    }
    if top.degree() != system.num_blocks() {
        return Err(Error::DegreeMismatch(top.degree(), system.num_blocks()));
    }
    let action = block_action(group, system)?;
    if !action.same_group(top) {
        return Ok(false);
    }
    for i in 0..system.num_blocks() {
        if !block_stabilizer_image(group, system, i)?.same_group(bottom) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Alt(n) <= G`, decided by `|G| >= n!/2`.
pub fn contains_alternating(group: &Group) -> bool {
    group.order() * BigUint::from(2u32) >= factorial(group.degree())
}
