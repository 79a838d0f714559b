//! Link graphs of 3-graphs and triangle counting.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{canonical_set, Hypergraph};
use crate::error::{Error, Result};

/// A simple graph on an explicit ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkGraph {
    ground: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl LinkGraph {
    /// Pairs are normalised to `(a, b)` with `a < b` and sorted.
    pub fn new(ground: Vec<usize>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut ground = ground;
        ground.sort_unstable();
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("ground set repeats a vertex"));
        }
        let mut out = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::invalid(format!("loop at {a}")));
            }
            if ground.binary_search(&a).is_err() || ground.binary_search(&b).is_err() {
                return Err(Error::invalid(format!("pair ({a}, {b}) leaves the ground set")));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate pair"));
        }
        Ok(Self { ground, pairs: out })
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn vertex_count(&self) -> usize {
        self.ground.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }
}

/// The graph on `ground` whose edges are the pairs `{a, b}` with `{v, a, b}`
/// an edge of the 3-graph `h`.
pub fn link_graph(h: &Hypergraph, v: usize, ground: &[usize]) -> Result<LinkGraph> {
    if h.k() != 3 {
        return Err(Error::InvalidArity(format!(
            "link graphs are defined for 3-graphs, got k = {}",
            h.k()
        )));
    }
    if v >= h.n() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let ground = canonical_set(h.n(), ground)?;
    if ground.binary_search(&v).is_ok() {
        return Err(Error::invalid(format!("vertex {v} lies in the link ground set")));
    }
    let mut pairs = Vec::new();
    for (i, &a) in ground.iter().enumerate() {
        for &b in &ground[i + 1..] {
            if h.contains_edge(&[v, a, b]) {
                pairs.push((a, b));
            }
        }
    }
    Ok(LinkGraph { ground, pairs })
}

/// Number of triangles of `g`.
pub fn count_triangles(g: &LinkGraph) -> u64 {
    let size = g.ground.len();
    let pos = |x: usize| g.ground.binary_search(&x).expect("pair inside ground set");
    let mut adj = vec![false; size * size];
    for &(a, b) in &g.pairs {
        let (i, j) = (pos(a), pos(b));
        adj[i * size + j] = true;
        adj[j * size + i] = true;
    }
    let mut count = 0;
    for &(a, b) in &g.pairs {
        let (i, j) = (pos(a), pos(b));
        // each triangle counted once, from its two smallest vertices
        count += (j + 1..size)
            .filter(|&c| adj[i * size + c] && adj[j * size + c])
            .count() as u64;
    }
    count
}

/// Lower bound `m(4m - n^2) / (3n)` on the triangles of any graph with `n`
/// vertices and `m` edges, as an exact rational.
pub fn goodman_bound(n: u64, m: u64) -> Result<Ratio<i128>> {
    if n == 0 {
        return Err(Error::invalid("goodman bound needs n >= 1"));
    }
    let (n, m) = (n as i128, m as i128);
    Ok(Ratio::new(m * (4 * m - n * n), 3 * n))
}
