//! Exact maximal-independent-set counting and the invariants around it.
//!
//! The crate computes `m(G)`, the number of maximal independent sets of a
//! simple graph, together with the matching number `ν`, the induced matching
//! number `ν₀` and the covering number `β`. On top of those it recognizes
//! Cameron-Walker graphs (`ν₀ = ν`) both by definition and by structure, and
//! checks the bounds `2^ν₀ ≤ m ≤ 2^β`, `m ≤ 3^ν` and their equality cases on
//! single graphs or whole catalogs.

pub mod cameron_walker;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod mis;
pub mod serde_big;
pub mod set;
pub mod verifier;

pub use cameron_walker::{classify_structure, is_cw_bipartite, is_cw_definitional, CwCertificate};
pub use generators::{cw_example, enumerate_labeled_graphs, Family};
pub use graph::{Bipartition, Graph, GraphError, OddCycle, VertexMap};
pub use graph6::{parse_graph6, to_graph6, Graph6Error};
pub use invariants::{full_bundle, EdgeSet, InvariantBundle};
pub use mis::{count_mis, enumerate_mis, MisConfig, MisError, MisReport};
pub use set::VertexSet;
