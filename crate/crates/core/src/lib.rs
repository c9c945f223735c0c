//! Bounds on sums of event probabilities over an exclusivity graph.
//!
//! For a graph `G` whose edges join mutually exclusive events, the classical
//! (noncontextual) maximum of `S = Σ P_i` is the independence number α(G),
//! the quantum maximum is the Lovász number ϑ(G), and the pairwise-exclusivity
//! relaxation gives the fractional packing number α*(G). This crate computes
//! all three and certifies that the bound obtained by pairing `G` with
//! quantum behaviours on its complement coincides with ϑ(G).

pub mod batch;
pub mod catalog;
pub mod combinatorics;
pub mod error;
pub mod exclusivity;
pub mod graph;
pub mod io;
pub mod limits;
pub mod par;
pub mod probability;
pub mod report;
pub mod sdp;

pub use error::{Error, Result};
pub use graph::{Graph, VertexMap};
pub use par::Execution;
pub use probability::ProbabilityAssignment;
