use serde::{Deserialize, Serialize};

use super::{mask_of, vertices_of, Hypergraph};
use crate::budget::{NodeCounter, SearchBudget};
use crate::error::Result;

/// A maximum edge-free vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub size: usize,
    pub vertices: Vec<usize>,
}

pub fn is_independent(h: &Hypergraph, set: &[usize]) -> bool {
    let mut in_set = vec![false; h.n()];
    for &v in set {
        if v >= h.n() {
            return false;
        }
        in_set[v] = true;
    }
    !h.edges().iter().any(|e| e.iter().all(|&v| in_set[v]))
}

struct Search<'a> {
    /// Edges through each vertex, as masks.
    incident: Vec<Vec<u128>>,
    order: &'a [usize],
    best: u128,
    counter: NodeCounter,
}

impl Search<'_> {
    /// `chosen` is independent; `cand` holds the undecided vertices that can
    /// still be added one at a time without completing an edge.
    fn run(&mut self, chosen: u128, cand: u128) -> Result<()> {
        self.counter.tick()?;
        let bound = (chosen.count_ones() + cand.count_ones()) as usize;
        if bound <= self.best.count_ones() as usize {
            return Ok(());
        }
        let Some(&v) = self.order.iter().find(|&&v| cand >> v & 1 == 1) else {
            self.best = chosen;
            return Ok(());
        };
        let bit = 1u128 << v;
        let with_v = chosen | bit;
        // A candidate w is blocked once some edge through v has all its other vertices chosen but w.
        let mut blocked = 0u128;
        for &e in &self.incident[v] {
            let rest = e & !with_v;
            if rest.count_ones() == 1 {
                blocked |= rest;
            }
        }
        self.run(with_v, cand & !bit & !blocked)?;
        self.run(chosen, cand & !bit)
    }
}

/// Exact independence number by branch and bound.
///
/// Vertices are branched on in increasing order of vertex degree (ties by
/// label), include-branch first. The returned set is the first maximum set the
/// search meets, so the result is deterministic.
pub fn independence_number(h: &Hypergraph, budget: SearchBudget) -> Result<IndependentSet> {
    let masks = h.edge_masks()?;
    let n = h.n();
    let mut incident = vec![Vec::new(); n];
    for &m in &masks {
        for v in vertices_of(m) {
            incident[v].push(m);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (incident[v].len(), v));

    // Greedy start in the same order gives the bound something to work with.
    let mut greedy = 0u128;
    for &v in &order {
        let trial = greedy | 1u128 << v;
        if !incident[v].iter().any(|&e| e & trial == e) {
            greedy = trial;
        }
    }

    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut search = Search {
        incident,
        order: &order,
        best: greedy,
        counter: budget.counter(),
    };
    search.run(0, all)?;
    let vertices = vertices_of(search.best);
    debug_assert!(is_independent(h, &vertices));
    debug_assert_eq!(mask_of(&vertices), search.best);
    Ok(IndependentSet {
        size: vertices.len(),
        vertices,
    })
}
