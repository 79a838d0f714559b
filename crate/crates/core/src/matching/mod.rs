//! Matchings, tilings and the exact searches that produce them.

mod local_search;

use serde::{Deserialize, Serialize};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::hypergraph::{copy_vertex_sets, mask_of, verify_copy, Hypergraph, PatternGraph, PatternMatch};
use crate::packing::Blocks;

pub use local_search::{
    find_matching_swap, find_tiling_swap, local_search_matching, local_search_tiling, Swap,
};

/// Pairwise disjoint edges, each stored sorted; the list is kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<Vec<usize>>,
}

impl Matching {
    /// Wraps a list of edges without checking them against any host; see
    /// [`validate_matching`].
    pub fn new(edges: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut edges: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        edges.sort_unstable();
        Self { edges }
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Covered vertices, sorted.
    pub fn covered(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Vertices of `0..n` not covered, sorted.
    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        let mut hit = vec![false; n];
        for &v in self.edges.iter().flatten() {
            if v < n {
                hit[v] = true;
            }
        }
        (0..n).filter(|&v| !hit[v]).collect()
    }

    pub fn union(&self, other: &Matching) -> Matching {
        Matching::new(self.edges.iter().chain(&other.edges).cloned())
    }
}

/// Vertex-disjoint pattern copies, sorted by vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tiling {
    copies: Vec<PatternMatch>,
}

impl Tiling {
    pub fn new(copies: impl IntoIterator<Item = PatternMatch>) -> Self {
        let mut copies: Vec<PatternMatch> = copies.into_iter().collect();
        copies.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        Self { copies }
    }

    pub fn copies(&self) -> &[PatternMatch] {
        &self.copies
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        let mut hit = vec![false; n];
        for c in &self.copies {
            for &v in &c.vertices {
                if v < n {
                    hit[v] = true;
                }
            }
        }
        (0..n).filter(|&v| !hit[v]).collect()
    }
}

/// Checks a matching certificate: every member is an edge of `h` and no vertex
/// is used twice.
pub fn validate_matching(h: &Hypergraph, m: &Matching) -> Result<()> {
    let mut seen = vec![false; h.n()];
    for e in m.edges() {
        if !h.contains_edge(e) {
            return Err(Error::invalid(format!("{e:?} is not an edge")));
        }
        for &v in e {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("vertex {v} covered twice")));
            }
        }
    }
    Ok(())
}

/// Checks a tiling certificate: every embedding is a copy of `pattern` in `h`
/// and the copies are vertex-disjoint.
pub fn validate_tiling(h: &Hypergraph, pattern: &PatternGraph, t: &Tiling) -> Result<()> {
    let mut seen = vec![false; h.n()];
    for c in t.copies() {
        if !verify_copy(h, pattern, c, false) {
            return Err(Error::invalid(format!("{:?} is not a copy of the pattern", c.embedding)));
        }
        for &v in &c.vertices {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("vertex {v} covered twice")));
            }
        }
    }
    Ok(())
}

fn all_vertices(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn edge_blocks(h: &Hypergraph) -> Result<Blocks> {
    Ok(Blocks::new(h.k(), h.edge_masks()?))
}

/// Perfect matching by exact backtracking, or `None` if none exists.
///
/// Returns `None` immediately when `k` does not divide `n`.
pub fn perfect_matching(h: &Hypergraph, budget: SearchBudget) -> Result<Option<Matching>> {
    h.check_searchable()?;
    if h.n() % h.k() != 0 {
        return Ok(None);
    }
    let blocks = edge_blocks(h)?;
    let mut counter = budget.counter();
    let found = blocks.exact_cover(all_vertices(h.n()), &mut counter)?;
    Ok(found.map(|idx| Matching::new(idx.into_iter().map(|i| h.edges()[i].clone()))))
}

pub fn has_perfect_matching(h: &Hypergraph, budget: SearchBudget) -> Result<bool> {
    Ok(perfect_matching(h, budget)?.is_some())
}

/// A matching of maximum size.
pub fn max_matching(h: &Hypergraph, budget: SearchBudget) -> Result<Matching> {
    let blocks = edge_blocks(h)?;
    let mut counter = budget.counter();
    let idx = blocks.max_packing(all_vertices(h.n()), &mut counter)?;
    Ok(Matching::new(idx.into_iter().map(|i| h.edges()[i].clone())))
}

fn check_pattern(h: &Hypergraph, pattern: &PatternGraph) -> Result<()> {
    if pattern.k() != h.k() {
        return Err(Error::InvalidPattern(format!(
            "pattern is {}-uniform but host is {}-uniform",
            pattern.k(),
            h.k()
        )));
    }
    if pattern.edges().is_empty() {
        return Err(Error::InvalidPattern("tiling with an edgeless pattern".into()));
    }
    Ok(())
}

/// Perfect `pattern`-tiling by exact backtracking, or `None`.
///
/// Copies are enumerated by vertex set: two embeddings onto the same vertices
/// cover the same vertices, so only one per set is searched. Returns `None`
/// immediately when the pattern order does not divide `n`.
pub fn perfect_tiling(h: &Hypergraph, pattern: &PatternGraph, budget: SearchBudget) -> Result<Option<Tiling>> {
    check_pattern(h, pattern)?;
    h.check_searchable()?;
    if h.n() % pattern.f() != 0 {
        return Ok(None);
    }
    let copies = copy_vertex_sets(h, pattern)?;
    let blocks = Blocks::new(pattern.f(), copies.iter().map(|c| mask_of(&c.vertices)).collect());
    let mut counter = budget.counter();
    let found = blocks.exact_cover(all_vertices(h.n()), &mut counter)?;
    Ok(found.map(|idx| Tiling::new(idx.into_iter().map(|i| copies[i].clone()))))
}

pub fn has_perfect_tiling(h: &Hypergraph, pattern: &PatternGraph, budget: SearchBudget) -> Result<bool> {
    Ok(perfect_tiling(h, pattern, budget)?.is_some())
}

/// A tiling with the maximum number of copies.
pub fn max_tiling(h: &Hypergraph, pattern: &PatternGraph, budget: SearchBudget) -> Result<Tiling> {
    check_pattern(h, pattern)?;
    h.check_searchable()?;
    let copies = copy_vertex_sets(h, pattern)?;
    let blocks = Blocks::new(pattern.f(), copies.iter().map(|c| mask_of(&c.vertices)).collect());
    let mut counter = budget.counter();
    let idx = blocks.max_packing(all_vertices(h.n()), &mut counter)?;
    Ok(Tiling::new(idx.into_iter().map(|i| copies[i].clone())))
}

/// Number of edges `{v} ∪ T` with `T ⊆ U` (for 3-graphs: pairs of `U` in the link of `v`).
pub fn count_uncovered_degree(h: &Hypergraph, v: usize, uncovered: &[usize]) -> Result<usize> {
    if v >= h.n() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let mut in_u = vec![false; h.n()];
    for &u in uncovered {
        if u >= h.n() {
            return Err(Error::invalid(format!("vertex {u} out of range")));
        }
        in_u[u] = true;
    }
    if in_u[v] {
        return Err(Error::invalid(format!("vertex {v} lies in U")));
    }
    Ok(h
        .incident_edges(v)
        .filter(|e| e.iter().all(|&x| x == v || in_u[x]))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_six_has_perfect_matching() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let m = perfect_matching(&h, SearchBudget::default()).unwrap().unwrap();
        assert_eq!(m.len(), 2);
        validate_matching(&h, &m).unwrap();
        assert!(m.uncovered(6).is_empty());
    }

    #[test]
    fn indivisible_order_has_no_perfect_matching() {
        let h = Hypergraph::complete(7, 3).unwrap();
        assert!(!has_perfect_matching(&h, SearchBudget::new(1).unwrap()).unwrap());
    }

    #[test]
    fn edgeless_max_matching_is_empty() {
        let h = Hypergraph::empty(9, 3).unwrap();
        assert!(max_matching(&h, SearchBudget::default()).unwrap().is_empty());
    }

    #[test]
    fn two_disjoint_ys_tile() {
        let h = Hypergraph::new(8, 3, [[0, 1, 2], [0, 1, 3], [4, 5, 6], [4, 5, 7]]).unwrap();
        let t = perfect_tiling(&h, &PatternGraph::y(), SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(t.len(), 2);
        validate_tiling(&h, &PatternGraph::y(), &t).unwrap();
    }

    #[test]
    fn tiling_divisibility_short_circuits() {
        let h = Hypergraph::complete(9, 3).unwrap();
        assert!(!has_perfect_tiling(&h, &PatternGraph::y(), SearchBudget::new(1).unwrap()).unwrap());
    }

    #[test]
    fn validator_rejects_bad_certificates() {
        let h = Hypergraph::new(6, 3, [[0, 1, 2], [2, 3, 4]]).unwrap();
        assert!(validate_matching(&h, &Matching::new([vec![0, 1, 2], vec![2, 3, 4]])).is_err());
        assert!(validate_matching(&h, &Matching::new([vec![3, 4, 5]])).is_err());
        assert!(validate_matching(&h, &Matching::new([vec![4, 3, 2]])).is_ok());
    }

    #[test]
    fn uncovered_degree_in_complete_graph() {
        let h = Hypergraph::complete(9, 3).unwrap();
        let u: Vec<usize> = (1..7).collect();
        assert_eq!(count_uncovered_degree(&h, 0, &u).unwrap(), 15);
        assert!(count_uncovered_degree(&h, 1, &u).is_err());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let h = Hypergraph::complete(12, 3).unwrap();
        assert!(matches!(
            has_perfect_matching(&h, SearchBudget::new(1).unwrap()),
            Err(Error::BudgetExhausted { max_nodes: 1 })
        ));
    }
}
