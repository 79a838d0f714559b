//! Index vectors, robust edge-vectors and their lattices.
//!
//! Given an ordered partition `P = (V_1, ..., V_d)` of the vertex set, the
//! index vector of a set `S` records `|S ∩ V_i|` for each part. Edge index
//! vectors that occur often enough generate an integer lattice whose
//! arithmetic (transferrals, fullness, coset group, solubility) decides whether
//! a divisibility barrier blocks perfect matchings.

mod integer;
mod solubility;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub use integer::{
    coset_group, coset_group_order, is_full, is_transferral_free, lattice_span, max_lattice,
    missing_completion, transferral_violation, CosetGroup, CosetOrder, IntegerLattice,
};
pub use solubility::{
    barrier_diagnostics, is_gamma_extremal, is_soluble, reachable_count, BarrierReport,
};

/// Default robustness threshold for desk-scale instances.
pub const DEFAULT_MU: f64 = 1e-3;

/// An integer vector indexed by the parts of a partition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexVector(pub Vec<i64>);

impl IndexVector {
    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// The `j`-th unit vector (0-based).
    pub fn unit(d: usize, j: usize) -> Self {
        let mut v = vec![0; d];
        v[j] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &IndexVector) -> IndexVector {
        IndexVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IndexVector) -> IndexVector {
        IndexVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> IndexVector {
        IndexVector(self.0.iter().map(|a| a * c).collect())
    }
}

impl From<Vec<i64>> for IndexVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl AsRef<[i64]> for IndexVector {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All nonnegative integer vectors of dimension `d` with coordinate sum `s`,
/// in lexicographically decreasing order.
pub fn s_vectors(d: usize, s: usize) -> Vec<IndexVector> {
    fn rec(d: usize, s: usize, prefix: &mut Vec<i64>, out: &mut Vec<IndexVector>) {
        if d == 1 {
            prefix.push(s as i64);
            out.push(IndexVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=s).rev() {
            prefix.push(first as i64);
            rec(d - 1, s - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, s, &mut Vec::new(), &mut out);
    }
    out
}

/// An ordered partition of `0..n` into nonempty parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct OrderedPartition {
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    parts: Vec<Vec<usize>>,
}

impl TryFrom<RawPartition> for OrderedPartition {
    type Error = Error;
    fn try_from(raw: RawPartition) -> Result<Self> {
        OrderedPartition::new(raw.parts)
    }
}

impl From<OrderedPartition> for RawPartition {
    fn from(p: OrderedPartition) -> Self {
        RawPartition { parts: p.parts }
    }
}

impl OrderedPartition {
    /// Parts must be nonempty, disjoint and together cover `0..n` for some `n`.
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = parts.iter().map(Vec::len).sum();
        let mut part_of = vec![usize::MAX; n];
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            if part.is_empty() {
                return Err(Error::invalid(format!("part {i} is empty")));
            }
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n || part_of[v] != usize::MAX {
                    return Err(Error::invalid(format!(
                        "parts must partition 0..{n}; vertex {v} is out of range or repeated"
                    )));
                }
                part_of[v] = i;
            }
        }
        Ok(Self { parts, part_of })
    }

    /// Consecutive blocks of the given sizes: `0..s_1`, `s_1..s_1+s_2`, ...
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let parts = sizes
            .iter()
            .map(|&s| {
                let part: Vec<usize> = (start..start + s).collect();
                start += s;
                part
            })
            .collect();
        Self::new(parts)
    }

    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(vec![(0..n).collect()])
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// `i_P(S)`: the number of members of `set` in each part.
    pub fn index_vector(&self, set: &[usize]) -> Result<IndexVector> {
        let mut v = vec![0i64; self.d()];
        for &x in set {
            let p = *self
                .part_of
                .get(x)
                .ok_or_else(|| Error::invalid(format!("vertex {x} outside the partition")))?;
            v[p] += 1;
        }
        Ok(IndexVector(v))
    }

    /// `i_P(V)`.
    pub fn total(&self) -> IndexVector {
        IndexVector(self.parts.iter().map(|p| p.len() as i64).collect())
    }

    pub(crate) fn check_covers(&self, h: &Hypergraph) -> Result<()> {
        if self.n() != h.n() {
            return Err(Error::invalid(format!(
                "partition covers {} vertices, hypergraph has {}",
                self.n(),
                h.n()
            )));
        }
        Ok(())
    }
}

/// Free-function form of [`OrderedPartition::index_vector`].
pub fn index_vector(p: &OrderedPartition, set: &[usize]) -> Result<IndexVector> {
    p.index_vector(set)
}

/// The `mu`-robust edge-vectors of `h` with respect to `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobustVectorSet {
    pub mu: f64,
    /// `mu * n^k`; a vector is robust when its edge count reaches this.
    pub threshold: f64,
    /// Robust vectors with their edge counts, sorted.
    pub vectors: Vec<(IndexVector, usize)>,
    /// Every edge index vector that occurs, with its count.
    pub all_counts: Vec<(IndexVector, usize)>,
}

impl RobustVectorSet {
    pub fn members(&self) -> impl Iterator<Item = &IndexVector> {
        self.vectors.iter().map(|(v, _)| v)
    }

    pub fn contains(&self, v: &IndexVector) -> bool {
        self.vectors.iter().any(|(w, _)| w == v)
    }

    /// Set when edges exist but no class reaches the threshold, which happens
    /// when `n` is too small for the chosen `mu`.
    pub fn starved(&self) -> bool {
        self.vectors.is_empty() && !self.all_counts.is_empty()
    }
}

pub fn robust_edge_vectors(h: &Hypergraph, p: &OrderedPartition, mu: f64) -> Result<RobustVectorSet> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::invalid(format!("mu must lie in (0, 1], got {mu}")));
    }
    p.check_covers(h)?;
    let mut tally: BTreeMap<IndexVector, usize> = BTreeMap::new();
    for e in h.edges() {
        *tally.entry(p.index_vector(e)?).or_default() += 1;
    }
    let threshold = mu * (h.n() as f64).powi(h.k() as i32);
    let vectors = tally
        .iter()
        .filter(|(_, &c)| c as f64 >= threshold)
        .map(|(v, &c)| (v.clone(), c))
        .collect();
    Ok(RobustVectorSet {
        mu,
        threshold,
        vectors,
        all_counts: tally.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_vectors() {
        let p = OrderedPartition::from_sizes(&[3, 5, 4]).unwrap();
        assert_eq!(p.index_vector(&[]).unwrap(), IndexVector::zero(3));
        assert_eq!(p.index_vector(&[3, 4, 5]).unwrap(), IndexVector(vec![0, 3, 0]));
        let all: Vec<usize> = (0..12).collect();
        assert_eq!(p.index_vector(&all).unwrap(), IndexVector(vec![3, 5, 4]));
        assert!(p.index_vector(&[12]).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(OrderedPartition::new(vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(OrderedPartition::new(vec![vec![0, 3], vec![1]]).is_err());
        assert!(OrderedPartition::new(vec![vec![0], vec![]]).is_err());
        let p: OrderedPartition = serde_json::from_str(r#"{"parts":[[2,0],[1]]}"#).unwrap();
        assert_eq!(p.parts(), &[vec![0, 2], vec![1]]);
        assert_eq!(p.part_of(1), 1);
    }

    #[test]
    fn s_vectors_enumerates_compositions() {
        let v = s_vectors(3, 2);
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|x| x.sum() == 2 && x.coords().iter().all(|&c| c >= 0)));
        assert_eq!(s_vectors(1, 4), vec![IndexVector(vec![4])]);
    }

    #[test]
    fn robust_threshold_extremes() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let p = OrderedPartition::trivial(6).unwrap();
        let r = robust_edge_vectors(&h, &p, 1.0).unwrap();
        assert!(r.vectors.is_empty());
        assert!(r.starved());
        let r = robust_edge_vectors(&h, &p, 20.0 / 216.0).unwrap();
        assert_eq!(r.vectors, vec![(IndexVector(vec![3]), 20)]);
        assert!(robust_edge_vectors(&h, &p, 0.0).is_err());
    }
}
