//! Perfect matchings, tilings and divisibility barriers in uniform hypergraphs.
//!
//! The crate is organised around a single immutable [`Hypergraph`] type:
//!
//! - [`hypergraph`]: degrees, independence number, induced/non-induced pattern
//!   containment, link graphs, triangle counts and the `.hg` file format.
//! - [`matching`]: exact perfect-matching, maximum-matching and perfect-tiling
//!   search plus the 1-to-2 swap local search.
//! - [`absorbing`]: `S`-absorbing edges, random absorbing families and the
//!   absorption loop.
//! - [`lattice`]: index vectors, robust edge-vectors, integer lattices in
//!   Hermite normal form, fullness, coset groups and solubility.
//! - [`constructions`]: generators for the extremal constructions together with
//!   their property checklists.
//!
//! Every exact search takes a [`SearchBudget`] and fails with
//! [`Error::BudgetExhausted`] instead of returning an approximate answer.

pub mod absorbing;
pub mod budget;
pub mod constructions;
pub mod error;
pub mod hypergraph;
pub mod lattice;
pub mod matching;
mod packing;
pub mod rng;

pub use budget::SearchBudget;
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, LinkGraph, PatternGraph};
pub use lattice::{IndexVector, IntegerLattice, OrderedPartition};
pub use matching::{Matching, Tiling};

/// Largest vertex count accepted by the bitmask-based exact searches.
pub const MAX_SEARCH_VERTICES: usize = 128;
