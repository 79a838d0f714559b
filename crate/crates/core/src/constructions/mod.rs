//! Extremal constructions that show the degree thresholds are sharp.
//!
//! Each generator is deterministic given its parameters and seed. The
//! [`report`] submodule pairs every construction with a checklist of the
//! properties it is meant to have, each computed by the exact searches.

mod claim;
pub mod report;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lattice::{IndexVector, IntegerLattice, OrderedPartition};
use crate::rng;

pub use claim::{verify_claim_41, ClaimReport};
pub use report::{CheckEntry, CheckStatus, ConstructionReport};

pub fn smallest_prime_factor(k: usize) -> Option<usize> {
    (k >= 2).then(|| (2..=k).find(|p| k % p == 0).expect("k divides itself"))
}

pub fn is_prime(p: usize) -> bool {
    smallest_prime_factor(p) == Some(p)
}

/// Generators `v_i = u_i + (i − 1)u_p` for `i < p`, as 0-based rows.
pub(crate) fn mycroft_generators(p: usize) -> Vec<Vec<i64>> {
    (0..p.saturating_sub(1))
        .map(|j| {
            let mut v = vec![0; p];
            v[j] += 1;
            v[p - 1] += j as i64;
            v
        })
        .collect()
}

/// The lattice `span{v_1, ..., v_{p−1}}` taken modulo `p`.
pub fn mycroft_lattice(p: usize) -> Result<IntegerLattice> {
    IntegerLattice::span(&mycroft_generators(p), p, Some(p as u64))
}

/// `H_k` with its partition and the mod-`p` lattice defining it.
#[derive(Clone, Debug)]
pub struct Mycroft {
    pub p: usize,
    pub graph: Hypergraph,
    pub partition: OrderedPartition,
    pub lattice: IntegerLattice,
}

/// The divisibility barrier `H_k`: `p` near-equal parts chosen so that
/// `i_P(V)` lies outside `L`, and every `k`-set whose index vector lies in `L`
/// as an edge.
pub fn gen_mycroft(k: usize, n: usize) -> Result<Mycroft> {
    if k < 3 {
        return Err(Error::InvalidArity(format!("construction needs k ≥ 3, got {k}")));
    }
    let p = smallest_prime_factor(k).expect("k ≥ 3");
    if n < p * k || n % p != 0 {
        return Err(Error::invalid(format!(
            "n must be a multiple of {p} and at least {}, got {n}",
            p * k
        )));
    }
    let lattice = mycroft_lattice(p)?;
    let q = n / p;
    let even = vec![q; p];
    let mut shifted = even.clone();
    shifted[0] -= 1;
    shifted[1] += 1;
    let sizes = [even, shifted]
        .into_iter()
        .find(|s| {
            let v: Vec<i64> = s.iter().map(|&x| x as i64).collect();
            !lattice.contains(&v).expect("dimension p")
        })
        .expect("transferral-freeness leaves one size pattern outside L");
    let partition = OrderedPartition::from_sizes(&sizes)?;
    let mut verdict: HashMap<IndexVector, bool> = HashMap::new();
    let mut edges = Vec::new();
    for e in (0..n).combinations(k) {
        let iv = partition.index_vector(&e)?;
        let keep = match verdict.get(&iv) {
            Some(&b) => b,
            None => {
                let b = lattice.contains_vector(&iv)?;
                verdict.insert(iv, b);
                b
            }
        };
        if keep {
            edges.push(e);
        }
    }
    Ok(Mycroft {
        p,
        graph: Hypergraph::from_valid_edges(n, k, edges),
        partition,
        lattice,
    })
}

/// `H(m, n)` together with the sets used to build it.
#[derive(Clone, Debug, Serialize)]
pub struct SpaceBarrier {
    pub graph: Hypergraph,
    pub a: Vec<usize>,
    /// For each `a` in `A`, the bipartition `(B_1, B_2)` of `B` it uses.
    pub bipartitions: Vec<(Vec<usize>, Vec<usize>)>,
}

/// The space barrier `H(m, n)` on `A = 0..m` and `B = m..n`.
///
/// Every `a ∈ A` gets its own balanced bipartition of `B` (a seeded shuffle
/// split at `⌈|B|/2⌉`) and is joined to every pair crossing it; all triples
/// inside `A` are edges too.
pub fn gen_space_barrier(m: usize, n: usize, seed: u64) -> Result<SpaceBarrier> {
    if m == 0 || 2 * m > n {
        return Err(Error::invalid(format!("need 1 ≤ m ≤ n/2, got m = {m}, n = {n}")));
    }
    let mut rng = rng::seeded(seed);
    let a: Vec<usize> = (0..m).collect();
    let mut edges: Vec<Vec<usize>> = a.iter().copied().combinations(3).collect();
    let mut bipartitions = Vec::with_capacity(m);
    for &x in &a {
        let mut b: Vec<usize> = (m..n).collect();
        rand::seq::SliceRandom::shuffle(b.as_mut_slice(), &mut rng);
        let b2 = b.split_off(b.len().div_ceil(2));
        let mut b1 = b;
        b1.sort_unstable();
        let mut b2 = b2;
        b2.sort_unstable();
        for &y in &b1 {
            for &z in &b2 {
                let mut e = vec![x, y, z];
                e.sort_unstable();
                edges.push(e);
            }
        }
        bipartitions.push((b1, b2));
    }
    Ok(SpaceBarrier {
        graph: Hypergraph::from_valid_edges(n, 3, edges),
        a,
        bipartitions,
    })
}

/// A tournament on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tournament {
    n: usize,
    /// Row-major over pairs `x < y`; `true` means `x → y`.
    forward: Vec<bool>,
}

impl Tournament {
    fn pair_index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < y && y < self.n);
        x * (2 * self.n - x - 1) / 2 + (y - x - 1)
    }

    /// Orientation of every pair flipped by a fair seeded coin, pairs taken
    /// in lexicographic order.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = rng::seeded(seed);
        let forward = (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen::<bool>()).collect();
        Self { n, forward }
    }

    /// `x → y` whenever `x < y`.
    pub fn transitive(n: usize) -> Self {
        Self {
            n,
            forward: vec![true; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the arc between distinct `x` and `y` points from `x` to `y`.
    pub fn beats(&self, x: usize, y: usize) -> bool {
        assert!(x != y, "a vertex has no arc to itself");
        if x < y {
            self.forward[self.pair_index(x, y)]
        } else {
            !self.forward[self.pair_index(y, x)]
        }
    }

    fn triples(&self) -> impl Iterator<Item = Vec<usize>> {
        (0..self.n).combinations(3)
    }
}

pub fn gen_tournament(n: usize, seed: u64) -> Tournament {
    Tournament::random(n, seed)
}

/// Triples `x < y < z` where exactly one of `y`, `z` beats `x`.
pub fn h1_from_tournament(t: &Tournament) -> Hypergraph {
    let edges = t
        .triples()
        .filter(|e| t.beats(e[1], e[0]) != t.beats(e[2], e[0]))
        .collect();
    Hypergraph::from_valid_edges(t.n(), 3, edges)
}

/// Triples spanning a directed 3-cycle.
pub fn h2_from_tournament(t: &Tournament) -> Hypergraph {
    let edges = t
        .triples()
        .filter(|e| {
            let (x, y, z) = (e[0], e[1], e[2]);
            t.beats(x, y) == t.beats(y, z) && t.beats(y, z) == t.beats(z, x)
        })
        .collect();
    Hypergraph::from_valid_edges(t.n(), 3, edges)
}

fn check_tournament_order(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::invalid(format!("tournament constructions need n ≥ 4, got {n}")));
    }
    Ok(())
}

/// `H_1(n)` from a seeded random tournament; `K_4^3`-free.
pub fn gen_h1(n: usize, seed: u64) -> Result<Hypergraph> {
    check_tournament_order(n)?;
    Ok(h1_from_tournament(&Tournament::random(n, seed)))
}

/// `H_2(n)` from a seeded random tournament; `K_4^-`-free.
pub fn gen_h2(n: usize, seed: u64) -> Result<Hypergraph> {
    check_tournament_order(n)?;
    Ok(h2_from_tournament(&Tournament::random(n, seed)))
}

/// Which pattern a tiling barrier blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TilingTarget {
    K43,
    K4Minus,
}

impl FromStr for TilingTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k43" | "k4full" | "k4" => Ok(Self::K43),
            "k4minus" | "k4-" => Ok(Self::K4Minus),
            _ => Err(Error::invalid(format!("unknown tiling target {s:?}; use K43 or K4minus"))),
        }
    }
}

impl fmt::Display for TilingTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::K43 => "K43",
            Self::K4Minus => "K4minus",
        })
    }
}

fn shifted(h: &Hypergraph, offset: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    h.edges()
        .iter()
        .map(move |e| e.iter().map(|&v| v + offset).collect())
}

/// `H_1'` or `H_2'`: every triple meeting `A = 0..n/4−1`, plus `H_1` or `H_2`
/// on the remaining vertices.
pub fn gen_tiling_barrier(n: usize, which: TilingTarget, seed: u64) -> Result<Hypergraph> {
    if n % 4 != 0 || n < 16 {
        return Err(Error::invalid(format!("n must be a multiple of 4 and at least 16, got {n}")));
    }
    let a = n / 4 - 1;
    let t = Tournament::random(n - a, seed);
    let inner = match which {
        TilingTarget::K43 => h1_from_tournament(&t),
        TilingTarget::K4Minus => h2_from_tournament(&t),
    };
    let mut edges: Vec<Vec<usize>> = (0..n).combinations(3).filter(|e| e[0] < a).collect();
    edges.extend(shifted(&inner, a));
    Ok(Hypergraph::from_valid_edges(n, 3, edges))
}

/// `H'` with its parts `V_1`, `V_2`.
#[derive(Clone, Debug)]
pub struct ParityBarrier {
    pub graph: Hypergraph,
    pub partition: OrderedPartition,
}

/// `H'`: `V_2` of odd size `n/3` or `n/3 + 1` placed last; edges take one
/// vertex of `V_1` and two of `V_2`, plus a copy of `H_1` on `V_1`.
pub fn gen_parity_barrier(n: usize, seed: u64) -> Result<ParityBarrier> {
    if n % 3 != 0 || n < 6 {
        return Err(Error::invalid(format!("n must be a multiple of 3 and at least 6, got {n}")));
    }
    let v2 = if (n / 3) % 2 == 1 { n / 3 } else { n / 3 + 1 };
    let v1 = n - v2;
    let partition = OrderedPartition::from_sizes(&[v1, v2])?;
    let mut edges = Vec::new();
    for x in 0..v1 {
        for pair in (v1..n).combinations(2) {
            edges.push(vec![x, pair[0], pair[1]]);
        }
    }
    edges.extend(h1_from_tournament(&Tournament::random(v1, seed)).edges().iter().cloned());
    Ok(ParityBarrier {
        graph: Hypergraph::from_valid_edges(n, 3, edges),
        partition,
    })
}

/// `H''` on three parts of size `m`, with its natural partition.
#[derive(Clone, Debug)]
pub struct CyclicBarrier {
    pub graph: Hypergraph,
    pub partition: OrderedPartition,
}

/// `H''`: two vertices from `V_i` and one from `V_{i+1}`, indices mod 3.
pub fn gen_cyclic_barrier(m: usize) -> Result<CyclicBarrier> {
    if m < 4 || m % 3 == 0 {
        return Err(Error::invalid(format!("m must be at least 4 and not divisible by 3, got {m}")));
    }
    let part = |i: usize| (i * m)..((i + 1) * m);
    let mut edges = Vec::new();
    for i in 0..3 {
        for pair in part(i).combinations(2) {
            for z in part((i + 1) % 3) {
                let mut e = vec![pair[0], pair[1], z];
                e.sort_unstable();
                edges.push(e);
            }
        }
    }
    Ok(CyclicBarrier {
        graph: Hypergraph::from_valid_edges(3 * m, 3, edges),
        partition: OrderedPartition::from_sizes(&[m, m, m])?,
    })
}

/// Nonnegative `(a_0, a_1, a_2)` with `2a_0 + a_2 = 2a_1 + a_0 = 2a_2 + a_1 = m`:
/// the edge-type counts a perfect matching of `H''` would need.
pub fn cyclic_system_solutions(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a0 in 0..=m / 2 {
        let a2 = m - 2 * a0;
        if 2 * a2 > m {
            continue;
        }
        let a1 = m - 2 * a2;
        if 2 * a1 + a0 == m {
            out.push([a0, a1, a2]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_factors() {
        assert_eq!(smallest_prime_factor(1), None);
        assert_eq!(smallest_prime_factor(9), Some(3));
        assert_eq!(smallest_prime_factor(10), Some(2));
        assert!(is_prime(5) && !is_prime(4));
    }

    #[test]
    fn mycroft_three_edge_types() {
        let c = gen_mycroft(3, 12).unwrap();
        assert_eq!(c.partition.part_sizes(), vec![3, 5, 4]);
        let mut types: Vec<IndexVector> = c
            .graph
            .edges()
            .iter()
            .map(|e| c.partition.index_vector(e).unwrap())
            .collect();
        types.sort();
        types.dedup();
        let expected: Vec<IndexVector> = [[0, 0, 3], [0, 3, 0], [1, 1, 1], [3, 0, 0]]
            .iter()
            .map(|v| IndexVector(v.to_vec()))
            .collect();
        assert_eq!(types, expected);
        assert!(gen_mycroft(3, 10).is_err());
        assert!(gen_mycroft(2, 12).is_err());
    }

    #[test]
    fn space_barrier_shape() {
        let s = gen_space_barrier(6, 24, 7).unwrap();
        for (b1, b2) in &s.bipartitions {
            assert_eq!(b1.len(), 9);
            assert_eq!(b2.len(), 9);
        }
        assert!(s.graph.edges().iter().all(|e| e[0] < 6));
        assert_eq!(s.graph.edge_count(), 20 + 6 * 81);
        assert!(gen_space_barrier(13, 24, 0).is_err());
    }

    #[test]
    fn tournament_orientation() {
        let t = Tournament::random(7, 3);
        for x in 0..7 {
            for y in 0..7 {
                if x != y {
                    assert_ne!(t.beats(x, y), t.beats(y, x));
                }
            }
        }
        assert_eq!(h2_from_tournament(&Tournament::transitive(8)).edge_count(), 0);
    }

    #[test]
    fn cyclic_system() {
        assert_eq!(cyclic_system_solutions(6), vec![[2, 2, 2]]);
        assert!(cyclic_system_solutions(4).is_empty());
        assert!(gen_cyclic_barrier(6).is_err());
    }

    #[test]
    fn parity_sizes() {
        let b = gen_parity_barrier(15, 1).unwrap();
        assert_eq!(b.partition.part_sizes(), vec![10, 5]);
        let b = gen_parity_barrier(12, 1).unwrap();
        assert_eq!(b.partition.part_sizes(), vec![7, 5]);
    }
}
