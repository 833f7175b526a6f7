//! Exact solvers for subset feedback vertex set and node multiway cut on
//! graphs whose independence number is bounded.
//!
//! - [`graph`]: graphs, induced subgraphs, S-cycle detection, independence queries
//! - [`flow`]: max-flow, bipartite vertex cover, vertex separators
//! - [`oracle`]: exhaustive reference solvers and problem/solution types
//! - [`sfvs`]: weighted solver for `α ≤ 3`, unweighted solver for `α ≤ d`
//! - [`multiway`]: node multiway cut variants
//! - [`reductions`]: hardness-reduction instance generators with verifiers
//! - [`format`], [`generate`], [`cli`]: instance files, random instances, command line

pub mod cli;
pub mod error;
pub mod flow;
pub mod format;
pub mod generate;
pub mod graph;
pub mod multiway;
pub mod oracle;
pub mod reductions;
pub mod sfvs;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use oracle::{ProblemInstance, ProblemKind, Solution};
