//! Clique-cover index codes for broadcast with side information.
//!
//! A receiver that wants symbol `i` and knows symbols `N(i)` is a vertex of
//! the side-information digraph with edges `i → j` for `j ∈ N(i)`. Every
//! clique (edges both ways) can be served by a single XOR, so a partition of
//! the vertices into few cliques is a short linear index code. The covers
//! here are found by repeatedly extracting a clique or an acyclic set with a
//! Ramsey-type recursion, which gives provable approximation guarantees
//! against the maximum acyclic induced subgraph lower bound.
//!
//! - [`graph`]: digraphs, vertex sets, clique covers.
//! - [`ramsey`]: bound functions `Q(s, t)`, `f_Q`, and the extraction recursions.
//! - [`cover`]: the iterative cover engine and its three instantiations.
//! - [`coding`]: index codes, generalized instances, expanding sequences.
//! - [`oracle`]: exact small-instance solvers used as ground truth.
//! - [`instances`]: seeded generators and text formats.

pub mod coding;
pub mod cover;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod ramsey;

pub use coding::{GenInstance, IndexCode};
pub use cover::{cover_bound, cover_digraph, cover_graph, cover_quasiline, CoverResult};
pub use graph::{CliqueCover, Digraph, VertexSet};
pub use ramsey::QFunction;
