//! Fully dynamic maximum (weight) independent set maintenance.
//!
//! The crate keeps a maximal independent set up to date under edge
//! insertions and deletions. Cheap greedy repairs handle most updates;
//! when the greedy cannot add a vertex, a bounded induced subproblem is
//! carved out around the touched edge and solved exactly with an
//! in-crate branch-and-reduce MWIS solver. Improvements are spliced
//! back into the global solution.
//!
//! Module map:
//! - [`graph`]: mutable undirected weighted graph
//! - [`solution`]: independent set with per-vertex solution-neighbor counts
//! - [`greedy`]: O(Δ) greedy update rules
//! - [`explore`]: bounded subproblem construction (BFS, pinching, tight completion)
//! - [`solver`]: exact anytime branch-and-reduce MWIS solver
//! - [`dynamic`]: the update orchestrator and presets
//! - [`oracle`]: independent brute-force reference used by tests and the CLI
//! - [`io`]: METIS / edit-sequence parsing, weight assignment, CSV reporting

pub mod dynamic;
pub mod explore;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod oracle;
pub mod solution;
pub mod solver;

pub use dynamic::{run_sequence, Config, DynamicError, DynamicState, Mode, RunResult, UpdateStats};
pub use explore::{build_subproblem, pinch, BuildOutcome, ExploreParams, Subproblem};
pub use graph::{DynamicGraph, GraphError, Vertex, Weight};
pub use greedy::{GreedyOutcome, GreedyVariant};
pub use io::{EditEvent, EditSequence, EventKind, StaticGraph};
pub use solution::{Solution, SolutionError};
pub use solver::{improves, solve_graph, solve_mwis, SolverResult};
