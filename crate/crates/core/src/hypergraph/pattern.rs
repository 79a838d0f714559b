//! Small pattern graphs (at most six vertices) and copy detection.
//!
//! Isomorphism is decided by trying every relabelling of the pattern, which is
//! at most `6! = 720` maps. Each pattern is compiled once into the set of
//! bitmasks its relabellings produce over the `C(f, k)` local `k`-subsets.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{canonical_edge, Hypergraph};
use crate::error::{Error, Result};

pub const MAX_PATTERN_VERTICES: usize = 6;

/// A small `k`-graph used as a tiling unit or a forbidden configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternGraph {
    f: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    name: Option<String>,
}

impl PatternGraph {
    pub fn new<I, E>(f: usize, k: usize, edges: I, name: Option<&str>) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if f > MAX_PATTERN_VERTICES {
            return Err(Error::InvalidPattern(format!(
                "patterns have at most {MAX_PATTERN_VERTICES} vertices, got {f}"
            )));
        }
        if k < 2 || k > f {
            return Err(Error::InvalidPattern(format!(
                "uniformity {k} invalid for a {f}-vertex pattern"
            )));
        }
        let mut out = edges
            .into_iter()
            .map(|e| canonical_edge(f, k, e.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidPattern(e.to_string()))?;
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPattern("duplicate pattern edge".into()));
        }
        Ok(Self {
            f,
            k,
            edges: out,
            name: name.map(str::to_owned),
        })
    }

    /// The 3-graph on 4 vertices with 2 edges.
    pub fn y() -> Self {
        Self::new(4, 3, [[0, 1, 2], [0, 1, 3]], Some("Y")).expect("valid builtin")
    }

    /// The 3-graph on 4 vertices with 3 edges.
    pub fn k4_minus() -> Self {
        Self::new(4, 3, [[0, 1, 2], [0, 1, 3], [0, 2, 3]], Some("K4minus")).expect("valid builtin")
    }

    /// The complete 3-graph on 4 vertices.
    pub fn k4_full() -> Self {
        Self::new(4, 3, (0..4).combinations(3), Some("K4full")).expect("valid builtin")
    }

    /// Looks up a builtin by name (`Y`, `K4minus`, `K4full`; `K43` is accepted
    /// for the latter).
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "Y" | "y" => Ok(Self::y()),
            "K4minus" | "k4minus" | "K4-" => Ok(Self::k4_minus()),
            "K4full" | "k4full" | "K43" | "k43" => Ok(Self::k4_full()),
            other => Err(Error::InvalidPattern(format!("unknown pattern {other:?}"))),
        }
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_valid_edges(self.f, self.k, self.edges.clone())
    }
}

/// One occurrence of a pattern in a host graph.
///
/// `vertices` is the sorted host vertex set; `embedding[i]` is the host vertex
/// playing pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternMatch {
    pub vertices: Vec<usize>,
    pub embedding: Vec<usize>,
}

/// Precomputed relabellings of a pattern.
pub(crate) struct Matcher {
    f: usize,
    /// Local `k`-subsets of `0..f`, lexicographic; bit `i` of a mask refers to `local[i]`.
    local: Vec<Vec<usize>>,
    /// Image mask of every relabelling, mapped to the first permutation producing it.
    images: HashMap<u32, Vec<usize>>,
    /// Distinct image masks in order of first appearance.
    image_list: Vec<u32>,
}

impl Matcher {
    pub(crate) fn new(pattern: &PatternGraph) -> Self {
        let f = pattern.f;
        let local: Vec<Vec<usize>> = (0..f).combinations(pattern.k).collect();
        let index: HashMap<&[usize], usize> = local
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut images = HashMap::new();
        let mut image_list = Vec::new();
        for perm in (0..f).permutations(f) {
            let mut mask = 0u32;
            for e in &pattern.edges {
                let mut img: Vec<usize> = e.iter().map(|&x| perm[x]).collect();
                img.sort_unstable();
                mask |= 1 << index[img.as_slice()];
            }
            images.entry(mask).or_insert_with(|| {
                image_list.push(mask);
                perm
            });
        }
        Self {
            f,
            local,
            images,
            image_list,
        }
    }

    /// Mask of host edges among the local `k`-subsets of `w` (sorted).
    pub(crate) fn host_mask(&self, host: &Hypergraph, w: &[usize]) -> u32 {
        let mut buf = Vec::with_capacity(host.k());
        let mut mask = 0u32;
        for (i, s) in self.local.iter().enumerate() {
            buf.clear();
            buf.extend(s.iter().map(|&x| w[x]));
            if host.contains_sorted(&buf) {
                mask |= 1 << i;
            }
        }
        mask
    }

    fn embed(&self, w: &[usize], perm: &[usize]) -> PatternMatch {
        // perm sends pattern vertex x to local position perm[x].
        PatternMatch {
            vertices: w.to_vec(),
            embedding: perm.iter().map(|&p| w[p]).collect(),
        }
    }

    pub(crate) fn induced_at(&self, host: &Hypergraph, w: &[usize]) -> Option<PatternMatch> {
        let mask = self.host_mask(host, w);
        self.images.get(&mask).map(|perm| self.embed(w, perm))
    }

    pub(crate) fn subgraph_at(&self, host: &Hypergraph, w: &[usize]) -> Option<PatternMatch> {
        let mask = self.host_mask(host, w);
        self.image_list
            .iter()
            .find(|&&img| img & mask == img)
            .map(|img| self.embed(w, &self.images[img]))
    }

    pub(crate) fn f(&self) -> usize {
        self.f
    }
}

fn check_compatible(host: &Hypergraph, pattern: &PatternGraph) -> Result<()> {
    if host.k() != pattern.k {
        return Err(Error::InvalidPattern(format!(
            "pattern is {}-uniform but host is {}-uniform",
            pattern.k,
            host.k()
        )));
    }
    Ok(())
}

/// First `f`-set (lexicographic) inducing a copy of `pattern`, if any.
pub fn find_induced_copy(host: &Hypergraph, pattern: &PatternGraph) -> Result<Option<PatternMatch>> {
    check_compatible(host, pattern)?;
    let m = Matcher::new(pattern);
    Ok((0..host.n())
        .combinations(m.f())
        .find_map(|w| m.induced_at(host, &w)))
}

/// First `f`-set (lexicographic) containing a copy of `pattern` as a subgraph.
pub fn find_copy(host: &Hypergraph, pattern: &PatternGraph) -> Result<Option<PatternMatch>> {
    check_compatible(host, pattern)?;
    let m = Matcher::new(pattern);
    Ok((0..host.n())
        .combinations(m.f())
        .find_map(|w| m.subgraph_at(host, &w)))
}

pub fn is_induced_pattern_free(host: &Hypergraph, pattern: &PatternGraph) -> Result<bool> {
    Ok(find_induced_copy(host, pattern)?.is_none())
}

pub fn is_pattern_free(host: &Hypergraph, pattern: &PatternGraph) -> Result<bool> {
    Ok(find_copy(host, pattern)?.is_none())
}

/// Every `f`-set of the host that carries at least one copy of `pattern`, with
/// one embedding each, in lexicographic order of the vertex sets.
pub fn copy_vertex_sets(host: &Hypergraph, pattern: &PatternGraph) -> Result<Vec<PatternMatch>> {
    check_compatible(host, pattern)?;
    let m = Matcher::new(pattern);
    Ok((0..host.n())
        .combinations(m.f())
        .filter_map(|w| m.subgraph_at(host, &w))
        .collect())
}

/// Re-checks a claimed occurrence edge by edge. With `induced`, pattern
/// non-edges must map to host non-edges as well.
pub fn verify_copy(host: &Hypergraph, pattern: &PatternGraph, found: &PatternMatch, induced: bool) -> bool {
    let emb = &found.embedding;
    if emb.len() != pattern.f || host.k() != pattern.k {
        return false;
    }
    let mut sorted_emb = emb.clone();
    sorted_emb.sort_unstable();
    if sorted_emb != found.vertices
        || sorted_emb.windows(2).any(|w| w[0] == w[1])
        || sorted_emb.iter().any(|&v| v >= host.n())
    {
        return false;
    }
    (0..pattern.f).combinations(pattern.k).all(|s| {
        let in_pattern = pattern.edges.binary_search(&s).is_ok();
        let image: Vec<usize> = s.iter().map(|&x| emb[x]).collect();
        let in_host = host.contains_edge(&image);
        if in_pattern {
            in_host
        } else {
            !induced || !in_host
        }
    })
}
