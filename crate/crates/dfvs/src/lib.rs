//! Exact solvers for directed feedback vertex and arc sets, built around
//! important-cut enumeration.
//!
//! The layers, bottom up:
//!
//! - [`graph`]: compact digraphs with stable vertex/arc ids, plus cheap
//!   remove/restore overlays for search.
//! - [`cuts`]: minimum (X,Y)-arc-cuts with extremal variants, and lazy
//!   enumeration of all important cuts within a budget.
//! - [`expand`]: vertex splitting, turning vertex-deletion questions into
//!   arc-deletion questions.
//! - [`dfasv`]: bounded search for a feedback arc set guided by a feedback
//!   vertex set hint, with search-tree telemetry.
//! - [`compression`]: one compression step, shrinking a size-(k+1) witness
//!   to size k or refuting it.
//! - [`driver`]: feedback vertex set by iterative compression over vertex
//!   prefixes, plus an optimum finder.
//! - [`oracle`]: brute-force references and instance generators used by the
//!   test suites.

pub mod compression;
pub mod cuts;
pub mod dfasv;
pub mod driver;
pub mod expand;
pub mod graph;
pub mod oracle;
pub mod set;

/// Ceiling on every budget parameter accepted by the solvers. Keeps the
/// superexponential leaf bound and the histogram sizes within sane limits;
/// instances anywhere near it are far beyond practical reach anyway.
pub const MAX_K: usize = 64;

pub use compression::{
    lift_solution, solve_compression, to_dfasv, CompressionError, CompressionInstance,
    ExpandedDfasv,
};
pub use cuts::{CutProblem, CutProblemError, ImportantCut, MinCutResult};
pub use dfasv::{
    gamma_epsilon, leaf_bound, reduce_hint, solve_dfasv, DfasvError, DfasvInstance,
    GammaRangeError, LeafBound, LeafTrace, SearchStats,
};
pub use driver::{
    minimize_dfvs, minimize_dfvs_full, solve_dfvs, solve_dfvs_full, solve_query, DfvsQuery,
    DriverOptions, QueryError, QueryOutcome, SolveMode,
};
pub use expand::{expand_all, expand_vertex, ArcOrigin, ExpansionMap, VertexSplit};
pub use graph::{ArcId, ArcSet, DiGraph, GraphError, GraphView, VertexId, VertexSet};
