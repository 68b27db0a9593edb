//! The update orchestrator.
//!
//! Every edge update first runs the configured greedy repair. If the
//! greedy added nothing (or pruning is disabled) and the rare-update
//! gate is open, a bounded subproblem around the touched endpoints is
//! built and solved exactly; a strictly better local solution replaces
//! the region, followed by a maximality sweep over the region and its
//! boundary. Node insertion/deletion maps onto edge updates plus a
//! single subproblem as described in the module functions.

use crate::explore::{build_subproblem, BuildOutcome, ExploreError, ExploreParams};
use crate::graph::{DynamicGraph, GraphError, Vertex, Weight};
use crate::greedy::{greedy_delete, variant_insert, GreedyVariant};
use crate::io::{EditSequence, EventKind};
use crate::solution::Solution;
use crate::solver::{improves, solve_mwis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Explore(#[from] ExploreError),
    #[error("node {0} is already active")]
    NodeActive(Vertex),
    #[error("node {0} is not active")]
    NodeInactive(Vertex),
    #[error("event {index} failed: {source}")]
    BadEvent { index: usize, source: GraphError },
}

/// Objective flavor. Algorithms read weights off the graph either way;
/// in cardinality mode the harness assigns unit weights so every
/// weighted formula degrades to its cardinality counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Cardinality,
    Weighted,
}

/// All tuning parameters of one run.
#[derive(Debug, Clone)]
pub struct Config {
    pub mode: Mode,
    /// BFS depth `d`.
    pub depth: u32,
    /// Subproblem cap `ν_max`.
    pub max_subproblem: usize,
    /// Pinch factor `δ`.
    pub pinch_factor: f64,
    pub pinch_enabled: bool,
    /// Skip the expensive path whenever the greedy added a vertex.
    pub prune_enabled: bool,
    pub rare_enabled: bool,
    /// Rare-update period `x`: solve only every x-th eligible update.
    pub rare_period: u64,
    /// Per-call budget for the local solver.
    pub solver_time_limit: Duration,
    pub seed: u64,
    pub greedy_variant: GreedyVariant,
    /// When false the expensive path never runs (pure greedy baselines).
    pub solve_enabled: bool,
}

impl Config {
    fn base() -> Self {
        Self {
            mode: Mode::Cardinality,
            depth: 10,
            max_subproblem: 2500,
            pinch_factor: 1.25,
            pinch_enabled: true,
            prune_enabled: true,
            rare_enabled: false,
            rare_period: 3,
            solver_time_limit: Duration::from_secs(10),
            seed: 1,
            greedy_variant: GreedyVariant::DegGreedy,
            solve_enabled: true,
        }
    }

    /// DynamicOneStrong: d=10, ν_max=2500, pinching and pruning on.
    pub fn strong() -> Self {
        Self::base()
    }

    /// DynamicOneFast: d=10, ν_max=200, pinching, pruning and rare
    /// updates (x=3) on.
    pub fn fast() -> Self {
        Self {
            max_subproblem: 200,
            rare_enabled: true,
            ..Self::base()
        }
    }

    /// Pure greedy baseline with the given eviction rule.
    pub fn greedy_only(variant: GreedyVariant) -> Self {
        Self {
            greedy_variant: variant,
            solve_enabled: false,
            ..Self::base()
        }
    }

    /// Whole-graph exploration with an untimed solver: every touched
    /// component is solved to optimality on every update.
    pub fn exhaustive(n: usize) -> Self {
        Self {
            depth: n as u32,
            max_subproblem: n.max(1),
            pinch_enabled: false,
            prune_enabled: false,
            rare_enabled: false,
            solver_time_limit: Duration::from_secs(365 * 86400),
            ..Self::base()
        }
    }

    fn explore_params(&self) -> ExploreParams {
        ExploreParams {
            depth: self.depth,
            max_size: self.max_subproblem,
            pinch_factor: self.pinch_factor,
            pinch_enabled: self.pinch_enabled,
        }
    }
}

/// One row of the per-update trace.
#[derive(Debug, Clone)]
pub struct UpdateStats {
    /// 1-based index over applied (non-obsolete) updates.
    pub update_index: u64,
    pub kind: EventKind,
    pub greedy_added: bool,
    /// Whether the expensive path actually solved a subproblem.
    pub solved: bool,
    pub solver_optimal: bool,
    pub solution_weight: Weight,
    pub solution_cardinality: usize,
    pub elapsed: Duration,
}

/// Mutable run state: graph, solution, RNG and the update counters.
#[derive(Debug)]
pub struct DynamicState {
    cfg: Config,
    graph: DynamicGraph,
    solution: Solution,
    rng: ChaCha8Rng,
    applied: u64,
    rare_counter: u64,
    obsolete: u64,
}

/// Output of a full sequence replay.
#[derive(Debug)]
pub struct RunResult {
    pub state: DynamicState,
    pub stats: Vec<UpdateStats>,
}

impl DynamicState {
    pub fn new(graph: DynamicGraph, cfg: Config) -> Self {
        let solution = Solution::greedy_maximal(&graph);
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Self {
            cfg,
            graph,
            solution,
            rng,
            applied: 0,
            rare_counter: 0,
            obsolete: 0,
        }
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn solution(&self) -> &Solution {
        &self.solution
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn obsolete_count(&self) -> u64 {
        self.obsolete
    }

    /// Greedily adds any addable vertex in the region or on its
    /// boundary, ascending id order. Restores maximality after a region
    /// replacement whose tight completion was budget-truncated.
    fn sweep(&mut self, region: &[Vertex]) {
        let mut candidates: BTreeSet<Vertex> = region.iter().copied().collect();
        for &v in region {
            candidates.extend(self.graph.neighbors(v));
        }
        for v in candidates {
            if self.solution.can_be_independent(v) {
                self.solution
                    .add_vertex(&self.graph, v)
                    .expect("eligibility just checked");
            }
        }
    }

    /// Builds, solves and (on strict improvement) splices one
    /// subproblem. Returns (solved, proven_optimal).
    fn explore_and_solve(&mut self, seeds: &[Vertex]) -> (bool, bool) {
        let params = self.cfg.explore_params();
        match build_subproblem(&self.graph, &self.solution, seeds, &params)
            .expect("seeds are valid and the cap covers them")
        {
            BuildOutcome::Skipped => (false, false),
            BuildOutcome::Built(sub) => {
                let res = solve_mwis(&sub, self.cfg.solver_time_limit);
                if improves(&res, &sub) {
                    let new_set = sub.to_global_set(&res.set);
                    self.solution
                        .replace_region(&self.graph, &sub.vertices, &new_set)
                        .expect("region construction guarantees replaceability");
                    self.sweep(&sub.vertices);
                }
                (true, res.proven_optimal)
            }
        }
    }

    /// Expensive-path gate: pruning skips it after a successful greedy,
    /// rare updates open it only every x-th eligible attempt.
    fn gated_explore(&mut self, greedy_added: bool, seeds: &[Vertex]) -> (bool, bool) {
        if !self.cfg.solve_enabled || (self.cfg.prune_enabled && greedy_added) {
            return (false, false);
        }
        self.rare_counter += 1;
        if self.cfg.rare_enabled && !self.rare_counter.is_multiple_of(self.cfg.rare_period) {
            return (false, false);
        }
        self.explore_and_solve(seeds)
    }

    fn stats(
        &mut self,
        kind: EventKind,
        greedy_added: bool,
        solved: bool,
        solver_optimal: bool,
        start: Instant,
    ) -> UpdateStats {
        self.applied += 1;
        UpdateStats {
            update_index: self.applied,
            kind,
            greedy_added,
            solved,
            solver_optimal,
            solution_weight: self.solution.weight(),
            solution_cardinality: self.solution.cardinality(),
            elapsed: start.elapsed(),
        }
    }

    /// Handles one edge insertion. A duplicate edge or self-loop is an
    /// obsolete update: counted and skipped, `None` returned.
    pub fn handle_insertion(
        &mut self,
        u: Vertex,
        v: Vertex,
    ) -> Result<Option<UpdateStats>, GraphError> {
        let start = Instant::now();
        if !self.graph.insert_edge(u, v)? {
            self.obsolete += 1;
            return Ok(None);
        }
        self.solution.note_edge_inserted(u, v);
        let outcome = variant_insert(
            self.cfg.greedy_variant,
            &self.graph,
            &mut self.solution,
            u,
            v,
            &mut self.rng,
        );
        let greedy_added = outcome.added_any();
        let (solved, optimal) = self.gated_explore(greedy_added, &[u, v]);
        Ok(Some(self.stats(EventKind::Insert, greedy_added, solved, optimal, start)))
    }

    /// Handles one edge deletion; a missing edge is obsolete.
    pub fn handle_deletion(
        &mut self,
        u: Vertex,
        v: Vertex,
    ) -> Result<Option<UpdateStats>, GraphError> {
        let start = Instant::now();
        if !self.graph.delete_edge(u, v)? {
            self.obsolete += 1;
            return Ok(None);
        }
        self.solution.note_edge_deleted(u, v);
        let outcome = greedy_delete(&self.graph, &mut self.solution, u, v);
        let greedy_added = outcome.added_any();
        let (solved, optimal) = self.gated_explore(greedy_added, &[u, v]);
        Ok(Some(self.stats(EventKind::Delete, greedy_added, solved, optimal, start)))
    }

    /// Activates a pre-allocated isolated node: sets its weight, inserts
    /// its incident edges with greedy conflict resolution per edge, then
    /// solves a single subproblem seeded at the node.
    pub fn handle_node_insertion(
        &mut self,
        u: Vertex,
        edges: &[Vertex],
        weight: Weight,
    ) -> Result<UpdateStats, DynamicError> {
        let start = Instant::now();
        if self.graph.degree(u) > 0 {
            return Err(DynamicError::NodeActive(u));
        }
        // Weight update while the node is (possibly) in the solution.
        if self.solution.contains(u) {
            self.solution
                .remove_vertex(&self.graph, u)
                .expect("membership just checked");
        }
        self.graph.set_weight(u, weight)?;
        let mut any_added = false;
        for &v in edges {
            if self.graph.insert_edge(u, v)? {
                self.solution.note_edge_inserted(u, v);
                let out = variant_insert(
                    self.cfg.greedy_variant,
                    &self.graph,
                    &mut self.solution,
                    u,
                    v,
                    &mut self.rng,
                );
                any_added |= out.added_any();
            }
        }
        if self.solution.can_be_independent(u) {
            self.solution
                .add_vertex(&self.graph, u)
                .expect("eligibility just checked");
            any_added = true;
        }
        let (solved, optimal) = if self.cfg.solve_enabled {
            self.explore_and_solve(&[u])
        } else {
            (false, false)
        };
        self.sweep(&[u]);
        Ok(self.stats(EventKind::Insert, any_added, solved, optimal, start))
    }

    /// Deactivates a node: drops it from the solution, deletes its
    /// incident edges, then solves one subproblem seeded at the former
    /// neighbors. The node itself stays in the vertex universe as an
    /// isolated vertex and may rejoin the solution as such.
    pub fn handle_node_deletion(&mut self, u: Vertex) -> Result<UpdateStats, DynamicError> {
        let start = Instant::now();
        if self.graph.degree(u) == 0 && !self.solution.contains(u) {
            return Err(DynamicError::NodeInactive(u));
        }
        if self.solution.contains(u) {
            self.solution
                .remove_vertex(&self.graph, u)
                .expect("membership just checked");
        }
        let former: Vec<Vertex> = self.graph.sorted_neighbors(u);
        for &v in &former {
            self.graph.delete_edge(u, v)?;
            self.solution.note_edge_deleted(u, v);
        }
        let mut any_added = false;
        for &v in &former {
            if self.solution.can_be_independent(v) {
                self.solution
                    .add_vertex(&self.graph, v)
                    .expect("eligibility just checked");
                any_added = true;
            }
        }
        let (solved, optimal) = if self.cfg.solve_enabled && !former.is_empty() {
            self.explore_and_solve(&former)
        } else {
            (false, false)
        };
        // the now-isolated node rejoins if nothing else claimed its spot
        self.sweep(&[u]);
        Ok(self.stats(EventKind::Delete, any_added, solved, optimal, start))
    }
}

/// Replays a full edit sequence. Obsolete events are skipped (and
/// counted on the state); malformed events abort with their index.
pub fn run_sequence(
    graph: DynamicGraph,
    seq: &EditSequence,
    cfg: Config,
) -> Result<RunResult, DynamicError> {
    let mut state = DynamicState::new(graph, cfg);
    let mut stats = Vec::new();
    for (index, ev) in seq.events.iter().enumerate() {
        let row = match ev.kind {
            EventKind::Insert => state.handle_insertion(ev.u, ev.v),
            EventKind::Delete => state.handle_deletion(ev.u, ev.v),
        }
        .map_err(|source| DynamicError::BadEvent { index, source })?;
        if let Some(row) = row {
            stats.push(row);
        }
    }
    state.obsolete += seq.obsolete_count;
    Ok(RunResult { state, stats })
}
