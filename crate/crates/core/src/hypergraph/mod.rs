//! Canonical `k`-uniform hypergraphs and the queries every other module builds on.

mod independence;
pub mod io;
mod link;
mod pattern;

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MAX_SEARCH_VERTICES;

pub use independence::{independence_number, is_independent, IndependentSet};
pub use link::{count_triangles, goodman_bound, link_graph, LinkGraph};
pub use pattern::{
    copy_vertex_sets, find_copy, find_induced_copy, is_induced_pattern_free, is_pattern_free,
    verify_copy, PatternGraph, PatternMatch,
};

/// A `k`-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted and duplicate-free, in lexicographic order, so two
/// hypergraphs with the same edge set compare equal regardless of how they
/// were built. The value is immutable once constructed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

/// Wire form of [`Hypergraph`]: `{"n": .., "k": .., "edges": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.k, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            n: h.n,
            k: h.k,
            edges: h.edges,
        }
    }
}

/// Sorts `edge` and checks it is a valid `k`-set on `0..n`.
pub(crate) fn canonical_edge(n: usize, k: usize, edge: &[usize]) -> Result<Vec<usize>> {
    if edge.len() != k {
        return Err(Error::InvalidArity(format!(
            "edge {edge:?} has {} vertices, expected {k}",
            edge.len()
        )));
    }
    let mut e = edge.to_vec();
    e.sort_unstable();
    if let Some(&v) = e.iter().find(|&&v| v >= n) {
        return Err(Error::invalid(format!("vertex {v} out of range for n = {n}")));
    }
    if e.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!("edge {edge:?} repeats a vertex")));
    }
    Ok(e)
}

/// Sorts a vertex set and checks its members are distinct and `< n`.
pub(crate) fn canonical_set(n: usize, set: &[usize]) -> Result<Vec<usize>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(Error::invalid(format!("vertex {v} out of range for n = {n}")));
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!("vertex set {set:?} repeats a vertex")));
    }
    Ok(s)
}

pub(crate) fn mask_of(vertices: &[usize]) -> u128 {
    vertices.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

pub(crate) fn vertices_of(mut mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalising every edge.
    ///
    /// Fails on `k < 2`, an edge of the wrong size, a vertex `>= n`, a repeated
    /// vertex inside an edge, or a repeated edge.
    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if k < 2 {
            return Err(Error::InvalidArity(format!("uniformity must be at least 2, got {k}")));
        }
        let mut out = edges
            .into_iter()
            .map(|e| canonical_edge(n, k, e.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self { n, k, edges: out })
    }

    /// Builds a hypergraph from edges already known to be valid `k`-sets,
    /// silently merging duplicates.
    pub(crate) fn from_valid_edges(n: usize, k: usize, mut edges: Vec<Vec<usize>>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
            debug_assert_eq!(e.len(), k);
            debug_assert!(e.iter().all(|&v| v < n));
        }
        edges.sort_unstable();
        edges.dedup();
        Self { n, k, edges }
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Vec::<Vec<usize>>::new())
    }

    /// The complete `k`-graph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArity(format!("uniformity must be at least 2, got {k}")));
        }
        Ok(Self {
            n,
            k,
            edges: (0..n).combinations(k).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Membership test; `edge` may be given in any order.
    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        if edge.len() != self.k {
            return false;
        }
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.contains_sorted(&e)
    }

    pub(crate) fn contains_sorted(&self, edge: &[usize]) -> bool {
        self.edges
            .binary_search_by(|probe| probe.as_slice().cmp(edge))
            .is_ok()
    }

    /// Edges containing `v`, in canonical order.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = &[usize]> + '_ {
        self.edges
            .iter()
            .filter(move |e| e.contains(&v))
            .map(Vec::as_slice)
    }

    /// The subgraph induced on `vertices`, relabelled to `0..vertices.len()` in
    /// increasing order of the original labels.
    pub fn induced(&self, vertices: &[usize]) -> Result<Hypergraph> {
        let set = canonical_set(self.n, vertices)?;
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in set.iter().enumerate() {
            relabel[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| relabel[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| relabel[v]).collect())
            .collect();
        Ok(Self::from_valid_edges(set.len(), self.k, edges))
    }

    pub(crate) fn check_searchable(&self) -> Result<()> {
        if self.n > MAX_SEARCH_VERTICES {
            Err(Error::TooLarge {
                n: self.n,
                max: MAX_SEARCH_VERTICES,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn edge_masks(&self) -> Result<Vec<u128>> {
        self.check_searchable()?;
        Ok(self.edges.iter().map(|e| mask_of(e)).collect())
    }

    /// Number of `(k - |S|)`-sets `T` disjoint from `S` with `S ∪ T` an edge.
    pub fn degree(&self, set: &[usize]) -> Result<usize> {
        if set.is_empty() || set.len() >= self.k {
            return Err(Error::InvalidArity(format!(
                "degree needs 1 <= |S| <= {}, got |S| = {}",
                self.k - 1,
                set.len()
            )));
        }
        let s = canonical_set(self.n, set)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| s.iter().all(|v| e.binary_search(v).is_ok()))
            .count())
    }

    /// Minimum `d`-degree over all `d`-subsets of the vertex set.
    pub fn min_degree(&self, d: usize) -> Result<usize> {
        if d == 0 || d >= self.k {
            return Err(Error::InvalidArity(format!(
                "minimum degree needs 1 <= d <= {}, got d = {d}",
                self.k - 1
            )));
        }
        if self.n < d {
            return Err(Error::invalid(format!("no {d}-subsets on {} vertices", self.n)));
        }
        let mut tally: HashMap<Vec<usize>, usize> = HashMap::new();
        for e in &self.edges {
            for s in e.iter().copied().combinations(d) {
                *tally.entry(s).or_default() += 1;
            }
        }
        Ok((0..self.n)
            .combinations(d)
            .map(|s| tally.get(&s).copied().unwrap_or(0))
            .min()
            .unwrap_or(0))
    }

    /// Shorthand for the minimum `(k-1)`-degree.
    pub fn min_codegree(&self) -> Result<usize> {
        self.min_degree(self.k - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_canonicalised() {
        let h = Hypergraph::new(5, 3, [[2, 1, 0], [4, 3, 0]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![0, 3, 4]]);
        assert!(h.contains_edge(&[1, 2, 0]));
        assert!(!h.contains_edge(&[1, 2, 3]));
    }

    #[test]
    fn invalid_edges_are_rejected() {
        assert!(matches!(
            Hypergraph::new(3, 3, [[0, 1]]),
            Err(Error::InvalidArity(_))
        ));
        assert!(Hypergraph::new(3, 3, [[0, 1, 3]]).is_err());
        assert!(Hypergraph::new(3, 3, [[0, 1, 1]]).is_err());
        assert!(Hypergraph::new(4, 3, [[0, 1, 2], [2, 1, 0]]).is_err());
        assert!(Hypergraph::new(4, 1, Vec::<Vec<usize>>::new()).is_err());
    }

    #[test]
    fn complete_graph_degrees() {
        let h = Hypergraph::complete(5, 3).unwrap();
        for pair in (0..5).combinations(2) {
            assert_eq!(h.degree(&pair).unwrap(), 3);
        }
        assert_eq!(h.degree(&[0]).unwrap(), 6);
        assert_eq!(Hypergraph::complete(6, 3).unwrap().min_degree(2).unwrap(), 4);
    }

    #[test]
    fn edgeless_degree_is_zero() {
        let h = Hypergraph::empty(6, 3).unwrap();
        assert_eq!(h.degree(&[0, 1]).unwrap(), 0);
        assert_eq!(h.min_degree(1).unwrap(), 0);
    }

    #[test]
    fn degree_arity_errors() {
        let h = Hypergraph::complete(5, 3).unwrap();
        assert!(matches!(h.degree(&[]), Err(Error::InvalidArity(_))));
        assert!(matches!(h.degree(&[0, 1, 2]), Err(Error::InvalidArity(_))));
        assert!(matches!(h.min_degree(0), Err(Error::InvalidArity(_))));
        assert!(matches!(h.min_degree(3), Err(Error::InvalidArity(_))));
        assert!(h.degree(&[0, 0]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let sub = h.induced(&[5, 1, 3]).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edges(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn json_round_trip_validates() {
        let h = Hypergraph::new(4, 3, [[0, 1, 2]]).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"n":4,"k":3,"edges":[[0,1,2]]}"#);
        let back: Hypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":2,"k":3,"edges":[[0,1,2]]}"#).is_err());
    }
}
