//! Greedy packing followed by 1-to-2 swaps.
//!
//! A swap takes a chosen block `B` and two of its vertices `x != y`, and
//! replaces `B` by two new blocks `{x} ∪ T1` and `{y} ∪ T2` where `T1`, `T2` are
//! disjoint subsets of the uncovered set. The packing grows by one each time,
//! so the loop terminates. Extensions are found by exhaustive scan.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{Matching, Tiling};
use crate::error::{Error, Result};
use crate::hypergraph::{copy_vertex_sets, Hypergraph, PatternGraph};
use crate::rng;

/// One applicable 1-to-2 swap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swap {
    pub removed: Vec<usize>,
    pub added: [Vec<usize>; 2],
}

struct Packer<'a> {
    blocks: &'a [Vec<usize>],
    by_vertex: Vec<Vec<usize>>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
}

impl<'a> Packer<'a> {
    fn new(n: usize, blocks: &'a [Vec<usize>]) -> Self {
        let mut by_vertex = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                by_vertex[v].push(i);
            }
        }
        Self {
            blocks,
            by_vertex,
            covered: vec![false; n],
            chosen: Vec::new(),
        }
    }

    fn fits(&self, b: usize) -> bool {
        self.blocks[b].iter().all(|&v| !self.covered[v])
    }

    fn set(&mut self, b: usize, value: bool) {
        for &v in &self.blocks[b] {
            self.covered[v] = value;
        }
    }

    fn greedy(&mut self, order: &[usize]) {
        for &b in order {
            if self.fits(b) {
                self.set(b, true);
                self.chosen.push(b);
            }
        }
    }

    /// Blocks through `v` whose other vertices are all uncovered.
    fn extensions(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.by_vertex[v].iter().copied().filter(move |&b| {
            self.blocks[b].iter().all(|&x| x == v || !self.covered[x])
        })
    }

    /// First applicable swap as `(position in chosen, block for x, block for y)`.
    fn find_swap(&self) -> Option<(usize, usize, usize)> {
        for (pos, &b) in self.chosen.iter().enumerate() {
            let members = &self.blocks[b];
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    for bx in self.extensions(x) {
                        for by in self.extensions(y) {
                            let disjoint = self.blocks[bx]
                                .iter()
                                .all(|v| !self.blocks[by].contains(v));
                            if disjoint {
                                return Some((pos, bx, by));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn run(&mut self, order: &[usize]) {
        self.greedy(order);
        while let Some((pos, bx, by)) = self.find_swap() {
            let old = self.chosen.swap_remove(pos);
            self.set(old, false);
            self.set(bx, true);
            self.set(by, true);
            self.chosen.push(bx);
            self.chosen.push(by);
            // the freed vertex may complete a new block inside the uncovered set
            self.greedy(order);
        }
    }
}

fn scan_order(len: usize, seed: Option<u64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    if let Some(seed) = seed {
        order.shuffle(&mut rng::seeded(seed));
    }
    order
}

fn swap_in(n: usize, blocks: &[Vec<usize>], chosen: &[Vec<usize>]) -> Option<Swap> {
    let mut packer = Packer::new(n, blocks);
    for c in chosen {
        let b = blocks.binary_search(c).ok()?;
        packer.set(b, true);
        packer.chosen.push(b);
    }
    packer.find_swap().map(|(pos, bx, by)| Swap {
        removed: blocks[packer.chosen[pos]].clone(),
        added: [blocks[bx].clone(), blocks[by].clone()],
    })
}

/// Maximal matching that admits no 1-to-2 swap.
///
/// The greedy phase scans edges in canonical order, or in an order shuffled by
/// `seed` when one is given.
pub fn local_search_matching(h: &Hypergraph, seed: Option<u64>) -> Matching {
    let blocks = h.edges();
    let mut packer = Packer::new(h.n(), blocks);
    packer.run(&scan_order(blocks.len(), seed));
    Matching::new(packer.chosen.iter().map(|&b| blocks[b].clone()))
}

/// An applicable 1-to-2 swap for `m` in `h`, if any.
pub fn find_matching_swap(h: &Hypergraph, m: &Matching) -> Option<Swap> {
    swap_in(h.n(), h.edges(), m.edges())
}

/// Maximal `pattern`-tiling that admits no 1-to-2 swap.
pub fn local_search_tiling(h: &Hypergraph, pattern: &PatternGraph, seed: Option<u64>) -> Result<Tiling> {
    if pattern.edges().is_empty() {
        return Err(Error::InvalidPattern("tiling with an edgeless pattern".into()));
    }
    let copies = copy_vertex_sets(h, pattern)?;
    let blocks: Vec<Vec<usize>> = copies.iter().map(|c| c.vertices.clone()).collect();
    let mut packer = Packer::new(h.n(), &blocks);
    packer.run(&scan_order(blocks.len(), seed));
    Ok(Tiling::new(packer.chosen.iter().map(|&b| copies[b].clone())))
}

/// An applicable 1-to-2 swap for the vertex sets of `t`, if any.
pub fn find_tiling_swap(h: &Hypergraph, pattern: &PatternGraph, t: &Tiling) -> Result<Option<Swap>> {
    let blocks: Vec<Vec<usize>> = copy_vertex_sets(h, pattern)?
        .into_iter()
        .map(|c| c.vertices)
        .collect();
    let chosen: Vec<Vec<usize>> = t.copies().iter().map(|c| c.vertices.clone()).collect();
    Ok(swap_in(h.n(), &blocks, &chosen))
}
