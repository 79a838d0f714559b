//! Solubility, extremality, barrier reports and reachability counts.

use itertools::Itertools;
use serde::Serialize;

use super::integer::{coset_group, transferral_violation, missing_completion, CosetGroup, IntegerLattice};
use super::{robust_edge_vectors, IndexVector, OrderedPartition, RobustVectorSet};
use crate::budget::{NodeCounter, SearchBudget};
use crate::error::{Error, Result};
use crate::hypergraph::{independence_number, mask_of, Hypergraph};
use crate::matching::Matching;
use crate::packing::Blocks;

struct SolubilitySearch<'a> {
    h: &'a Hypergraph,
    l: &'a IntegerLattice,
    vectors: Vec<IndexVector>,
    masks: Vec<u128>,
    counter: NodeCounter,
}

impl SolubilitySearch<'_> {
    /// Extends `chosen` to exactly `size` disjoint edges, in increasing index
    /// order, until the residual index vector lies in the lattice.
    fn extend(
        &mut self,
        size: usize,
        from: usize,
        used: u128,
        residual: &IndexVector,
        chosen: &mut Vec<usize>,
    ) -> Result<bool> {
        self.counter.tick()?;
        if chosen.len() == size {
            return self.l.contains_vector(residual);
        }
        for e in from..self.masks.len() {
            if self.masks[e] & used != 0 {
                continue;
            }
            chosen.push(e);
            let next = residual.sub(&self.vectors[e]);
            if self.extend(size, e + 1, used | self.masks[e], &next, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    fn matching(&self, chosen: &[usize]) -> Matching {
        Matching::new(chosen.iter().map(|&e| self.h.edges()[e].clone()))
    }
}

/// A matching `M` with fewer than `d` edges and `i_P(V \ V(M)) ∈ L`, if any.
///
/// Sizes are tried in increasing order and edges in canonical order, so the
/// returned matching is the first in that enumeration.
pub fn is_soluble(
    h: &Hypergraph,
    p: &OrderedPartition,
    l: &IntegerLattice,
    budget: SearchBudget,
) -> Result<Option<Matching>> {
    p.check_covers(h)?;
    if l.dim() != p.d() {
        return Err(Error::DimensionMismatch {
            expected: p.d(),
            found: l.dim(),
        });
    }
    let vectors = h
        .edges()
        .iter()
        .map(|e| p.index_vector(e))
        .collect::<Result<Vec<_>>>()?;
    let mut search = SolubilitySearch {
        h,
        l,
        vectors,
        masks: h.edge_masks()?,
        counter: budget.counter(),
    };
    let total = p.total();
    for size in 0..p.d() {
        let mut chosen = Vec::new();
        if search.extend(size, 0, 0, &total, &mut chosen)? {
            return Ok(Some(search.matching(&chosen)));
        }
    }
    Ok(None)
}

/// Whether `h` has an independent set of size at least `(1 − γ)(k − 1)n / k`.
pub fn is_gamma_extremal(h: &Hypergraph, gamma: f64, budget: SearchBudget) -> Result<bool> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::invalid(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    let alpha = independence_number(h, budget)?.size;
    let k = h.k() as f64;
    Ok(alpha as f64 * k >= (1.0 - gamma) * (k - 1.0) * h.n() as f64)
}

/// Observable lattice facts about a partitioned hypergraph.
#[derive(Clone, Debug, Serialize)]
pub struct BarrierReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub part_sizes: Vec<usize>,
    pub robust: RobustVectorSet,
    /// Set when no edge class reaches the robustness threshold.
    pub robust_starved: bool,
    pub lattice: IntegerLattice,
    pub total_vector: IndexVector,
    pub total_in_lattice: bool,
    pub transferral_free: bool,
    pub transferral_violation: Option<(usize, usize)>,
    pub full: bool,
    pub missing_completion: Option<IndexVector>,
    pub coset_group: CosetGroup,
    pub soluble: bool,
    pub solution: Option<Matching>,
}

/// Computes the robust lattice of `(h, p)` at threshold `mu` and reports each
/// lattice predicate together with solubility.
pub fn barrier_diagnostics(
    h: &Hypergraph,
    p: &OrderedPartition,
    mu: f64,
    budget: SearchBudget,
) -> Result<BarrierReport> {
    let robust = robust_edge_vectors(h, p, mu)?;
    let gens: Vec<IndexVector> = robust.members().cloned().collect();
    let lattice = IntegerLattice::span(&gens, p.d(), None)?;
    let total_vector = p.total();
    let violation = transferral_violation(&lattice);
    let missing = missing_completion(&lattice, h.k())?;
    let solution = is_soluble(h, p, &lattice, budget)?;
    Ok(BarrierReport {
        n: h.n(),
        k: h.k(),
        d: p.d(),
        part_sizes: p.part_sizes(),
        robust_starved: robust.starved(),
        robust,
        total_in_lattice: lattice.contains_vector(&total_vector)?,
        total_vector,
        transferral_free: violation.is_none(),
        transferral_violation: violation,
        full: violation.is_none() && missing.is_none(),
        missing_completion: missing,
        coset_group: coset_group(&lattice, h.k())?,
        soluble: solution.is_some(),
        solution,
        lattice,
    })
}

/// Number of `(ik − 1)`-sets `S` avoiding `u, v` such that both `H[S ∪ {u}]`
/// and `H[S ∪ {v}]` have perfect matchings. Only `i ∈ {1, 2}` is supported.
pub fn reachable_count(h: &Hypergraph, u: usize, v: usize, i: usize, budget: SearchBudget) -> Result<u64> {
    if !(1..=2).contains(&i) {
        return Err(Error::UnsupportedParameter(format!(
            "reachability is only computed for i in {{1, 2}}, got {i}"
        )));
    }
    if u == v || u >= h.n() || v >= h.n() {
        return Err(Error::invalid(format!("need distinct vertices in 0..{}, got {u} and {v}", h.n())));
    }
    let s = i * h.k() - 1;
    if s + 2 > h.n() {
        return Err(Error::invalid(format!(
            "sets of size {s} do not fit beside u and v in {} vertices",
            h.n()
        )));
    }
    h.check_searchable()?;
    let blocks = Blocks::new(h.k(), h.edge_masks()?);
    let mut counter = budget.counter();
    let rest: Vec<usize> = (0..h.n()).filter(|&x| x != u && x != v).collect();
    let mut count = 0;
    for set in rest.into_iter().combinations(s) {
        let base = mask_of(&set);
        if blocks.exact_cover(base | 1 << u, &mut counter)?.is_some()
            && blocks.exact_cover(base | 1 << v, &mut counter)?.is_some()
        {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_partition_is_soluble_with_empty_matching() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let p = OrderedPartition::trivial(6).unwrap();
        let l = IntegerLattice::span(&[[3]], 1, None).unwrap();
        assert_eq!(is_soluble(&h, &p, &l, SearchBudget::default()).unwrap(), Some(Matching::default()));
    }

    #[test]
    fn one_edge_fixes_the_residue() {
        // i_P(V) = (3, 3) is outside span{(0,3),(2,1)}; removing an edge of type (1,2) leaves (2,1)
        let h = Hypergraph::new(6, 3, [[0, 3, 4]]).unwrap();
        let p = OrderedPartition::from_sizes(&[3, 3]).unwrap();
        let l = IntegerLattice::span(&[[0, 3], [2, 1]], 2, None).unwrap();
        let m = is_soluble(&h, &p, &l, SearchBudget::default()).unwrap().unwrap();
        assert_eq!(m.edges(), &[vec![0, 3, 4]]);
    }

    #[test]
    fn gamma_extremality() {
        let h = Hypergraph::empty(9, 3).unwrap();
        assert!(is_gamma_extremal(&h, 0.5, SearchBudget::default()).unwrap());
        let h = Hypergraph::complete(12, 3).unwrap();
        assert!(!is_gamma_extremal(&h, 0.1, SearchBudget::default()).unwrap());
        assert!(is_gamma_extremal(&h, 1.0, SearchBudget::default()).is_err());
    }

    #[test]
    fn reachable_in_complete_graph() {
        let h = Hypergraph::complete(6, 3).unwrap();
        assert_eq!(reachable_count(&h, 0, 1, 1, SearchBudget::default()).unwrap(), 6);
        assert!(matches!(
            reachable_count(&h, 0, 1, 3, SearchBudget::default()),
            Err(Error::UnsupportedParameter(_))
        ));
        let e = Hypergraph::empty(6, 3).unwrap();
        assert_eq!(reachable_count(&e, 0, 1, 1, SearchBudget::default()).unwrap(), 0);
    }
}
