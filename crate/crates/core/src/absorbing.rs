//! Absorbing edges and the absorption loop.
//!
//! For a `(k+1)`-set `S`, an edge `e` disjoint from `S` is `S`-absorbing when
//! there are disjoint edges `e1`, `e2` with `|e1 ∩ S| = k-1`, `|e1 ∩ e| = 1`,
//! `|e2 ∩ S| = 2` and `|e2 ∩ e| = k-2`. A matching holding `e` can then swap it
//! for `e1, e2`: all of `S` becomes covered and exactly one vertex of `e` is
//! released.

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{canonical_edge, canonical_set, Hypergraph};
use crate::matching::{validate_matching, Matching};
use crate::rng;

/// The edges that let `edge` absorb `set`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorbingWitness {
    pub edge: Vec<usize>,
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub set: Vec<usize>,
}

fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

impl AbsorbingWitness {
    /// Re-checks the intersection pattern for uniformity `k` (edge membership
    /// in the host is not checked here).
    pub fn has_valid_shape(&self, k: usize) -> bool {
        self.set.len() == k + 1
            && self.edge.len() == k
            && self.e1.len() == k
            && self.e2.len() == k
            && meet(&self.edge, &self.set) == 0
            && meet(&self.e1, &self.e2) == 0
            && meet(&self.e1, &self.set) == k - 1
            && meet(&self.e1, &self.edge) == 1
            && meet(&self.e2, &self.set) == 2
            && meet(&self.e2, &self.edge) == k - 2
    }

    /// The vertex of `edge` left uncovered after the swap.
    pub fn released(&self) -> usize {
        *self
            .edge
            .iter()
            .find(|v| !self.e1.contains(v) && !self.e2.contains(v))
            .expect("a valid witness releases one vertex")
    }
}

fn check_set(h: &Hypergraph, set: &[usize]) -> Result<Vec<usize>> {
    let s = canonical_set(h.n(), set)?;
    if s.len() != h.k() + 1 {
        return Err(Error::invalid(format!(
            "absorbed sets have {} vertices, got {}",
            h.k() + 1,
            s.len()
        )));
    }
    Ok(s)
}

/// Witness search assuming `edge` and `set` are canonical and disjoint.
fn witness(h: &Hypergraph, edge: &[usize], set: &[usize]) -> Option<AbsorbingWitness> {
    let k = h.k();
    for s1 in set.iter().copied().combinations(k - 1) {
        // e2 must take the two vertices of S outside e1
        let s2: Vec<usize> = set.iter().copied().filter(|v| !s1.contains(v)).collect();
        for &x in edge {
            let mut e1 = s1.clone();
            e1.push(x);
            e1.sort_unstable();
            if !h.contains_sorted(&e1) {
                continue;
            }
            let rest = edge.iter().copied().filter(|&v| v != x);
            for t in rest.combinations(k - 2) {
                let mut e2 = s2.clone();
                e2.extend(t);
                e2.sort_unstable();
                if h.contains_sorted(&e2) {
                    return Some(AbsorbingWitness {
                        edge: edge.to_vec(),
                        e1,
                        e2,
                        set: set.to_vec(),
                    });
                }
            }
        }
    }
    None
}

/// Whether `edge` is `set`-absorbing, with the first witness in canonical order.
pub fn is_absorbing(h: &Hypergraph, edge: &[usize], set: &[usize]) -> Result<Option<AbsorbingWitness>> {
    let e = canonical_edge(h.n(), h.k(), edge)?;
    if !h.contains_sorted(&e) {
        return Err(Error::invalid(format!("{e:?} is not an edge")));
    }
    let s = check_set(h, set)?;
    if meet(&e, &s) != 0 {
        return Err(Error::invalid("edge meets the absorbed set"));
    }
    Ok(witness(h, &e, &s))
}

/// Number of `set`-absorbing edges of `h`.
pub fn count_absorbing(h: &Hypergraph, set: &[usize]) -> Result<usize> {
    let s = check_set(h, set)?;
    Ok(h
        .edges()
        .iter()
        .filter(|e| meet(e, &s) == 0 && witness(h, e, &s).is_some())
        .count())
}

/// Number of edges of `m` that are `set`-absorbing in `h`.
pub fn count_absorbing_in(h: &Hypergraph, m: &Matching, set: &[usize]) -> Result<usize> {
    let s = check_set(h, set)?;
    Ok(m.edges()
        .iter()
        .filter(|e| meet(e, &s) == 0 && witness(h, e, &s).is_some())
        .count())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbsorbingFamily {
    pub family: Matching,
    /// Absorbing count inside `family` for each sampled set.
    pub per_set_counts: Vec<(Vec<usize>, usize)>,
}

/// Measured statistics of one family draw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub probability: f64,
    pub sampled_edges: usize,
    pub intersecting_pairs: usize,
    pub family_size: usize,
    #[serde(rename = "sampled_S_count")]
    pub sampled_set_count: usize,
    pub min_absorbing: Option<usize>,
    pub median_absorbing: Option<usize>,
    /// Sampled sets with no absorbing edge in the family.
    pub failures: Vec<Vec<usize>>,
}

/// Random absorbing family: keep each edge with probability `beta * n^(1-k)`,
/// then drop conflicts so the rest is a matching.
///
/// Sampled edges are visited in canonical order and an edge is dropped when it
/// meets an edge already kept, so each dropped edge is charged to a distinct
/// intersecting pair. `sample_sets` are the `(k+1)`-sets whose absorbing counts
/// are reported.
pub fn build_absorbing_family(
    h: &Hypergraph,
    beta: f64,
    seed: u64,
    sample_sets: &[Vec<usize>],
) -> Result<(AbsorbingFamily, FamilyReport)> {
    if !(beta > 0.0) {
        return Err(Error::invalid(format!("beta must be positive, got {beta}")));
    }
    let p = beta * (h.n() as f64).powi(1 - h.k() as i32);
    if !(p <= 1.0) {
        return Err(Error::invalid(format!("selection probability {p} exceeds 1")));
    }
    let sets = sample_sets
        .iter()
        .map(|s| check_set(h, s))
        .collect::<Result<Vec<_>>>()?;

    let mut rng = rng::seeded(seed);
    let sampled: Vec<&Vec<usize>> = h.edges().iter().filter(|_| rng.gen::<f64>() < p).collect();
    let intersecting_pairs = sampled
        .iter()
        .tuple_combinations()
        .filter(|(a, b)| meet(a, b) > 0)
        .count();
    let mut used = vec![false; h.n()];
    let mut kept = Vec::new();
    for e in &sampled {
        if e.iter().all(|&v| !used[v]) {
            e.iter().for_each(|&v| used[v] = true);
            kept.push((*e).clone());
        }
    }
    let family = Matching::new(kept);
    debug_assert!(validate_matching(h, &family).is_ok());

    let per_set_counts: Vec<(Vec<usize>, usize)> = sets
        .into_iter()
        .map(|s| {
            let c = count_absorbing_in(h, &family, &s).expect("validated set");
            (s, c)
        })
        .collect();
    let mut counts: Vec<usize> = per_set_counts.iter().map(|(_, c)| *c).collect();
    counts.sort_unstable();
    let report = FamilyReport {
        probability: p,
        sampled_edges: sampled.len(),
        intersecting_pairs,
        family_size: family.len(),
        sampled_set_count: per_set_counts.len(),
        min_absorbing: counts.first().copied(),
        median_absorbing: counts.get(counts.len() / 2).copied(),
        failures: per_set_counts
            .iter()
            .filter(|(_, c)| *c == 0)
            .map(|(s, _)| s.clone())
            .collect(),
    };
    Ok((
        AbsorbingFamily {
            family,
            per_set_counts,
        },
        report,
    ))
}

/// Replaces the first `set`-absorbing edge of `m` by its witness pair.
///
/// The result covers `V(m) ∪ set` except one vertex of the replaced edge.
pub fn absorb_once(h: &Hypergraph, m: &Matching, set: &[usize]) -> Result<(Matching, AbsorbingWitness)> {
    let s = check_set(h, set)?;
    if m.edges().iter().any(|e| meet(e, &s) > 0) {
        return Err(Error::invalid("absorbed set meets the matching"));
    }
    for e in m.edges() {
        if let Some(w) = witness(h, e, &s) {
            let edges = m
                .edges()
                .iter()
                .filter(|&f| f != e)
                .cloned()
                .chain([w.e1.clone(), w.e2.clone()]);
            return Ok((Matching::new(edges), w));
        }
    }
    Err(Error::NoAbsorber { set: s })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorptionOutcome {
    /// Absorbing part and remainder combined.
    pub matching: Matching,
    pub absorbing_part: Matching,
    pub uncovered: Vec<usize>,
    pub rounds: usize,
    /// The set no edge could absorb, when the loop stopped early.
    pub failed_set: Option<Vec<usize>>,
}

impl AbsorptionOutcome {
    pub fn completed(&self) -> bool {
        self.failed_set.is_none()
    }
}

/// Absorbs leftover vertices `k+1` at a time into `absorbing` until at most `k`
/// remain uncovered, always taking the smallest uncovered labels first.
///
/// `leftover` must be exactly the vertices outside both matchings.
pub fn absorb_all(
    h: &Hypergraph,
    absorbing: &Matching,
    rest: &Matching,
    leftover: &[usize],
) -> Result<AbsorptionOutcome> {
    let combined = absorbing.union(rest);
    validate_matching(h, &combined)?;
    let mut uncovered = canonical_set(h.n(), leftover)?;
    if uncovered != combined.uncovered(h.n()) {
        return Err(Error::invalid(
            "leftover set must be exactly the vertices outside both matchings",
        ));
    }
    let k = h.k();
    let mut current = absorbing.clone();
    let mut rounds = 0;
    let mut failed_set = None;
    while uncovered.len() > k {
        let s: Vec<usize> = uncovered[..=k].to_vec();
        match absorb_once(h, &current, &s) {
            Ok((next, w)) => {
                current = next;
                uncovered.drain(..=k);
                uncovered.push(w.released());
                uncovered.sort_unstable();
                rounds += 1;
            }
            Err(Error::NoAbsorber { set }) => {
                failed_set = Some(set);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(AbsorptionOutcome {
        matching: current.union(rest),
        absorbing_part: current,
        uncovered,
        rounds,
        failed_set,
    })
}
