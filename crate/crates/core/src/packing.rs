//! Exact cover and maximum packing over a family of equal-size vertex blocks.
//!
//! Matchings pack edges, tilings pack the vertex sets of pattern copies; both
//! searches run here on `u128` masks. Branching is always on the least
//! uncovered vertex, trying blocks in the order they were supplied.
//!
//! Pruning uses a greedy hitting set: any vertex set meeting every available
//! block bounds the number of pairwise disjoint blocks from above. Exact cover
//! also memoises vertex sets already shown to be uncoverable.

use std::collections::HashSet;

use crate::budget::NodeCounter;
use crate::error::Result;

pub(crate) struct Blocks {
    size: usize,
    masks: Vec<u128>,
}

fn popcount(m: u128) -> usize {
    m.count_ones() as usize
}

impl Blocks {
    pub(crate) fn new(size: usize, masks: Vec<u128>) -> Self {
        debug_assert!(size > 0);
        debug_assert!(masks.iter().all(|&m| popcount(m) == size));
        Self { size, masks }
    }

    fn available(&self, parent: &[u32], free: u128) -> Vec<u32> {
        parent
            .iter()
            .copied()
            .filter(|&b| self.masks[b as usize] & !free == 0)
            .collect()
    }

    /// Greedily picks vertices hitting every block in `avail`, stopping as soon
    /// as `enough` vertices are picked. Returns the number picked.
    fn greedy_hitting(&self, avail: &[u32], enough: usize) -> usize {
        let mut counts = [0u32; 128];
        for &b in avail {
            let mut m = self.masks[b as usize];
            while m != 0 {
                counts[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        let mut alive = vec![true; avail.len()];
        let mut remaining = avail.len();
        let mut picked = 0;
        while remaining > 0 && picked < enough {
            let v = (0..128)
                .max_by_key(|&v| (counts[v], std::cmp::Reverse(v)))
                .expect("non-empty range");
            let bit = 1u128 << v;
            for (i, &b) in avail.iter().enumerate() {
                let mask = self.masks[b as usize];
                if alive[i] && mask & bit != 0 {
                    alive[i] = false;
                    remaining -= 1;
                    let mut m = mask;
                    while m != 0 {
                        counts[m.trailing_zeros() as usize] -= 1;
                        m &= m - 1;
                    }
                }
            }
            picked += 1;
        }
        picked
    }

    /// Blocks partitioning `target` exactly, or `None` if there are none.
    pub(crate) fn exact_cover(&self, target: u128, counter: &mut NodeCounter) -> Result<Option<Vec<usize>>> {
        if popcount(target) % self.size != 0 {
            return Ok(None);
        }
        let all: Vec<u32> = (0..self.masks.len() as u32).collect();
        let avail = self.available(&all, target);
        let mut chosen = Vec::new();
        let mut dead = HashSet::new();
        let found = self.cover(target, &avail, &mut chosen, &mut dead, counter)?;
        Ok(found.then(|| chosen.into_iter().map(|b| b as usize).collect()))
    }

    fn cover(
        &self,
        free: u128,
        parent: &[u32],
        chosen: &mut Vec<u32>,
        dead: &mut HashSet<u128>,
        counter: &mut NodeCounter,
    ) -> Result<bool> {
        if free == 0 {
            return Ok(true);
        }
        counter.tick()?;
        if dead.contains(&free) {
            return Ok(false);
        }
        let avail = self.available(parent, free);
        let covered = avail.iter().fold(0u128, |acc, &b| acc | self.masks[b as usize]);
        let need = popcount(free) / self.size;
        if covered != free || self.greedy_hitting(&avail, need) < need {
            dead.insert(free);
            return Ok(false);
        }
        let v = free.trailing_zeros();
        for &b in &avail {
            let mask = self.masks[b as usize];
            if mask >> v & 1 == 0 {
                continue;
            }
            chosen.push(b);
            if self.cover(free & !mask, &avail, chosen, dead, counter)? {
                return Ok(true);
            }
            chosen.pop();
        }
        dead.insert(free);
        Ok(false)
    }

    /// A maximum set of pairwise disjoint blocks inside `target`.
    pub(crate) fn max_packing(&self, target: u128, counter: &mut NodeCounter) -> Result<Vec<usize>> {
        let all: Vec<u32> = (0..self.masks.len() as u32).collect();
        let avail = self.available(&all, target);
        let mut best = Vec::new();
        let mut used = 0u128;
        for &b in &avail {
            let mask = self.masks[b as usize];
            if mask & used == 0 {
                used |= mask;
                best.push(b);
            }
        }
        let mut current = Vec::new();
        self.pack(target, &avail, &mut current, &mut best, counter)?;
        Ok(best.into_iter().map(|b| b as usize).collect())
    }

    fn pack(
        &self,
        free: u128,
        parent: &[u32],
        current: &mut Vec<u32>,
        best: &mut Vec<u32>,
        counter: &mut NodeCounter,
    ) -> Result<()> {
        counter.tick()?;
        if current.len() > best.len() {
            best.clone_from(current);
        }
        let avail = self.available(parent, free);
        if avail.is_empty() {
            return Ok(());
        }
        let free = free & avail.iter().fold(0u128, |acc, &b| acc | self.masks[b as usize]);
        let need = best.len() + 1 - current.len();
        if popcount(free) / self.size < need || self.greedy_hitting(&avail, need) < need {
            return Ok(());
        }
        let v = free.trailing_zeros();
        for &b in &avail {
            let mask = self.masks[b as usize];
            if mask >> v & 1 == 0 {
                continue;
            }
            current.push(b);
            self.pack(free & !mask, &avail, current, best, counter)?;
            current.pop();
        }
        self.pack(free & !(1u128 << v), &avail, current, best, counter)
    }
}
