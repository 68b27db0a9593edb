//! Exact anytime branch-and-reduce solver for small MWIS subproblems.
//!
//! The search interleaves a small portfolio of sound weighted data
//! reductions with branch-and-bound:
//! - neighborhood removal: `w(v) ≥ w(N(v))` forces `v` into the
//!   solution and deletes `N[v]` (covers isolated vertices),
//! - weighted degree-1 folding: a pendant `v` with heavier neighbor `u`
//!   folds onto `u` with offset `w(v)`,
//! - neighborhood domination (optional): an adjacent, at-least-as-heavy
//!   vertex whose closed neighborhood is contained in `v`'s excludes `v`.
//!
//! Branching picks the vertex maximizing `w(N(v)) − w(v)`, exploring
//! the exclude branch first. The upper bound is the remaining active
//! weight, tightened by a greedy weighted clique cover on small
//! residual graphs. The incumbent passed in is the anytime lower bound;
//! the solver never returns anything worse, and a hit time limit is a
//! normal result with `proven_optimal = false`.

use crate::explore::Subproblem;
use crate::graph::{DynamicGraph, Vertex, Weight};
use std::collections::HashSet;
use std::time::{Duration, Instant};

/// Residual-graph size up to which the clique cover bound is computed.
const CLIQUE_COVER_LIMIT: usize = 512;
/// Search-tree nodes between time-limit polls.
const TIME_POLL_INTERVAL: u64 = 1024;

#[derive(Debug, Clone)]
pub struct SolverResult {
    /// Independent set in the solved graph's (local) ids, sorted.
    pub set: Vec<Vertex>,
    pub weight: Weight,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Which reductions run; used directly by the rule soundness tests.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RuleSet {
    pub neighborhood_removal: bool,
    pub degree_one_fold: bool,
    pub domination: bool,
}

impl Default for RuleSet {
    fn default() -> Self {
        Self {
            neighborhood_removal: true,
            degree_one_fold: true,
            domination: false,
        }
    }
}

enum Choice {
    Included(Vertex),
    Folded { child: Vertex, parent: Vertex },
}

enum Undo {
    Reactivate(Vertex),
    RestoreWeight(Vertex, Weight),
    SubOffset(Weight),
    PopChoice,
}

struct Search<'a> {
    g: &'a DynamicGraph,
    adj: Vec<Vec<Vertex>>,
    weight: Vec<Weight>,
    active: Vec<bool>,
    active_count: usize,
    offset: Weight,
    choices: Vec<Choice>,
    undo: Vec<Undo>,
    best_weight: Weight,
    best_set: Vec<Vertex>,
    rules: RuleSet,
    nodes: u64,
    start: Instant,
    limit: Duration,
    timed_out: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a DynamicGraph, incumbent: &[Vertex], limit: Duration, rules: RuleSet) -> Self {
        let n = g.num_vertices();
        let mut best_set: Vec<Vertex> = incumbent.to_vec();
        best_set.sort_unstable();
        let best_weight = best_set.iter().map(|&v| g.weight(v)).sum();
        Self {
            g,
            adj: (0..n as Vertex).map(|v| g.sorted_neighbors(v)).collect(),
            weight: g.weights().to_vec(),
            active: vec![true; n],
            active_count: n,
            offset: 0.0,
            choices: Vec::new(),
            undo: Vec::new(),
            best_weight,
            best_set,
            rules,
            nodes: 0,
            start: Instant::now(),
            limit,
            timed_out: false,
        }
    }

    fn deactivate(&mut self, v: Vertex) {
        debug_assert!(self.active[v as usize]);
        self.active[v as usize] = false;
        self.active_count -= 1;
        self.undo.push(Undo::Reactivate(v));
    }

    fn include(&mut self, v: Vertex) {
        let w = self.weight[v as usize];
        self.offset += w;
        self.undo.push(Undo::SubOffset(w));
        self.choices.push(Choice::Included(v));
        self.undo.push(Undo::PopChoice);
        self.deactivate(v);
        let nbrs: Vec<Vertex> = self.active_neighbors(v);
        for x in nbrs {
            self.deactivate(x);
        }
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            match self.undo.pop().unwrap() {
                Undo::Reactivate(v) => {
                    self.active[v as usize] = true;
                    self.active_count += 1;
                }
                Undo::RestoreWeight(v, w) => self.weight[v as usize] = w,
                Undo::SubOffset(w) => self.offset -= w,
                Undo::PopChoice => {
                    self.choices.pop();
                }
            }
        }
    }

    fn active_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.adj[v as usize]
            .iter()
            .copied()
            .filter(|&x| self.active[x as usize])
            .collect()
    }

    fn active_neighborhood_weight(&self, v: Vertex) -> Weight {
        self.adj[v as usize]
            .iter()
            .filter(|&&x| self.active[x as usize])
            .map(|&x| self.weight[x as usize])
            .sum()
    }

    fn reduce(&mut self) {
        let n = self.active.len();
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n as Vertex {
                if !self.active[v as usize] {
                    continue;
                }
                let nbrs = self.active_neighbors(v);
                let nw: Weight = nbrs.iter().map(|&x| self.weight[x as usize]).sum();
                if self.rules.neighborhood_removal && self.weight[v as usize] >= nw {
                    self.include(v);
                    changed = true;
                    continue;
                }
                if self.rules.degree_one_fold && nbrs.len() == 1 {
                    // pendant with w(v) < w(u); take v unless u is taken
                    let u = nbrs[0];
                    if self.weight[v as usize] < self.weight[u as usize] {
                        let wv = self.weight[v as usize];
                        self.offset += wv;
                        self.undo.push(Undo::SubOffset(wv));
                        self.undo
                            .push(Undo::RestoreWeight(u, self.weight[u as usize]));
                        self.weight[u as usize] -= wv;
                        self.choices.push(Choice::Folded { child: v, parent: u });
                        self.undo.push(Undo::PopChoice);
                        self.deactivate(v);
                        changed = true;
                        continue;
                    }
                }
                if self.rules.domination {
                    let dominated = nbrs.iter().any(|&u| {
                        self.weight[u as usize] >= self.weight[v as usize]
                            && self
                                .active_neighbors(u)
                                .iter()
                                .all(|&x| x == v || self.adj[v as usize].binary_search(&x).is_ok())
                    });
                    if dominated {
                        self.deactivate(v);
                        changed = true;
                    }
                }
            }
        }
    }

    fn upper_bound(&self) -> Weight {
        let actives: Vec<Vertex> = (0..self.active.len() as Vertex)
            .filter(|&v| self.active[v as usize])
            .collect();
        if actives.len() > CLIQUE_COVER_LIMIT {
            return actives.iter().map(|&v| self.weight[v as usize]).sum();
        }
        // Greedy weighted clique cover: an independent set takes at most
        // one vertex per clique, so the heaviest member of each clique
        // bounds its contribution.
        let mut order = actives;
        order.sort_by(|&a, &b| {
            self.weight[b as usize]
                .partial_cmp(&self.weight[a as usize])
                .unwrap()
                .then(a.cmp(&b))
        });
        let mut cliques: Vec<Vec<Vertex>> = Vec::new();
        let mut bound = 0.0;
        for v in order {
            let slot = cliques
                .iter_mut()
                .find(|q| q.iter().all(|&x| self.g.has_edge(v, x)));
            match slot {
                Some(q) => q.push(v),
                None => {
                    bound += self.weight[v as usize];
                    cliques.push(vec![v]);
                }
            }
        }
        bound
    }

    fn record_if_better(&mut self) {
        if self.offset <= self.best_weight {
            return;
        }
        let mut set: HashSet<Vertex> = HashSet::new();
        for choice in self.choices.iter().rev() {
            match *choice {
                Choice::Included(v) => {
                    set.insert(v);
                }
                Choice::Folded { child, parent } => {
                    if !set.contains(&parent) {
                        set.insert(child);
                    }
                }
            }
        }
        let mut set: Vec<Vertex> = set.into_iter().collect();
        set.sort_unstable();
        self.best_weight = self.offset;
        self.best_set = set;
    }

    fn branch(&mut self) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(TIME_POLL_INTERVAL) && self.start.elapsed() > self.limit {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let mark = self.undo.len();
        self.reduce();
        if self.active_count == 0 {
            self.record_if_better();
        } else if self.offset + self.upper_bound() > self.best_weight {
            // most constraining vertex first
            let v = (0..self.active.len() as Vertex)
                .filter(|&v| self.active[v as usize])
                .max_by(|&a, &b| {
                    let ka = self.active_neighborhood_weight(a) - self.weight[a as usize];
                    let kb = self.active_neighborhood_weight(b) - self.weight[b as usize];
                    ka.partial_cmp(&kb).unwrap().then(b.cmp(&a))
                })
                .expect("some vertex is active");
            let inner = self.undo.len();
            self.deactivate(v);
            self.branch();
            self.rollback(inner);
            if !self.timed_out && self.offset + self.upper_bound() > self.best_weight {
                self.include(v);
                self.branch();
                self.rollback(inner);
            }
        }
        self.rollback(mark);
    }

    fn run(mut self) -> SolverResult {
        self.branch();
        debug_assert!(crate::oracle::verify_independent(self.g, &self.best_set));
        SolverResult {
            set: self.best_set,
            weight: self.best_weight,
            proven_optimal: !self.timed_out,
            nodes_explored: self.nodes,
            elapsed: self.start.elapsed(),
        }
    }
}

pub(crate) fn solve_with_rules(
    g: &DynamicGraph,
    incumbent: &[Vertex],
    t_limit: Duration,
    rules: RuleSet,
) -> SolverResult {
    Search::new(g, incumbent, t_limit, rules).run()
}

/// Solves MWIS on `g` starting from `incumbent` as the anytime lower
/// bound, with the default reduction portfolio.
pub fn solve_graph(g: &DynamicGraph, incumbent: &[Vertex], t_limit: Duration) -> SolverResult {
    solve_with_rules(g, incumbent, t_limit, RuleSet::default())
}

/// Solves a built subproblem; the result's ids are local to
/// `sub.local_graph`.
pub fn solve_mwis(sub: &Subproblem, t_limit: Duration) -> SolverResult {
    solve_graph(&sub.local_graph, &sub.incumbent, t_limit)
}

/// Strict improvement test against the subproblem's incumbent.
pub fn improves(result: &SolverResult, sub: &Subproblem) -> bool {
    result.weight > sub.incumbent_weight
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_mwis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const UNTIMED: Duration = Duration::from_secs(3600);

    fn graph(n: usize, weights: &[f64], edges: &[(u32, u32)]) -> DynamicGraph {
        let w = if weights.is_empty() {
            vec![1.0; n]
        } else {
            weights.to_vec()
        };
        let mut g = DynamicGraph::new(w).unwrap();
        for &(u, v) in edges {
            g.insert_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn triangle_takes_heaviest_vertex() {
        let g = graph(3, &[3.0, 2.0, 2.0], &[(0, 1), (1, 2), (0, 2)]);
        let res = solve_graph(&g, &[], UNTIMED);
        assert_eq!(res.weight, 3.0);
        assert!(res.proven_optimal);
    }

    #[test]
    fn path_takes_outer_pair() {
        let g = graph(3, &[2.0, 3.0, 2.0], &[(0, 1), (1, 2)]);
        let res = solve_graph(&g, &[], UNTIMED);
        assert_eq!(res.set, vec![0, 2]);
        assert_eq!(res.weight, 4.0);
    }

    #[test]
    fn four_cycle_takes_opposite_pair() {
        let g = graph(4, &[1.0, 2.0, 1.0, 2.0], &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let res = solve_graph(&g, &[], UNTIMED);
        assert_eq!(res.set, vec![1, 3]);
        assert_eq!(res.weight, 4.0);
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, weighted: bool) -> DynamicGraph {
        let weights = if weighted {
            (0..n).map(|_| rng.random_range(1..=100) as f64).collect()
        } else {
            vec![1.0; n]
        };
        let mut g = DynamicGraph::new(weights).unwrap();
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                if rng.random::<f64>() < p {
                    g.insert_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..200 {
            let n = rng.random_range(1..=14usize);
            let p = rng.random_range(0.05..0.6);
            let g = random_graph(&mut rng, n, p, case % 2 == 0);
            let (_, opt) = brute_force_mwis(&g).unwrap();
            let res = solve_graph(&g, &[], UNTIMED);
            assert_eq!(res.weight, opt, "case {case}");
            assert!(res.proven_optimal);
            assert!(crate::oracle::verify_independent(&g, &res.set));
        }
    }

    #[test]
    fn each_rule_alone_is_sound() {
        let configs = [
            ("none", RuleSet { neighborhood_removal: false, degree_one_fold: false, domination: false }),
            ("nr", RuleSet { neighborhood_removal: true, degree_one_fold: false, domination: false }),
            ("fold", RuleSet { neighborhood_removal: false, degree_one_fold: true, domination: false }),
            ("dom", RuleSet { neighborhood_removal: false, degree_one_fold: false, domination: true }),
            ("all", RuleSet { neighborhood_removal: true, degree_one_fold: true, domination: true }),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for case in 0..60 {
            let n = rng.random_range(1..=16usize);
            let p = rng.random_range(0.05..0.5);
            let g = random_graph(&mut rng, n, p, true);
            let (_, opt) = brute_force_mwis(&g).unwrap();
            for (name, rules) in configs {
                let res = solve_with_rules(&g, &[], UNTIMED, rules);
                assert_eq!(res.weight, opt, "rule set {name}, case {case}");
                assert!(crate::oracle::verify_independent(&g, &res.set));
            }
        }
    }

    #[test]
    fn incumbent_is_a_floor() {
        // Incumbent already optimal: result equals it, still proven.
        let g = graph(3, &[2.0, 3.0, 2.0], &[(0, 1), (1, 2)]);
        let res = solve_graph(&g, &[0, 2], UNTIMED);
        assert_eq!(res.weight, 4.0);
        assert_eq!(res.set, vec![0, 2]);
        assert!(res.proven_optimal);
    }

    #[test]
    fn zero_time_budget_returns_incumbent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_graph(&mut rng, 40, 0.2, true);
        let incumbent: Vec<Vertex> = {
            let sol = crate::solution::Solution::greedy_maximal(&g);
            sol.vertices()
        };
        let inc_weight: f64 = incumbent.iter().map(|&v| g.weight(v)).sum();
        let res = solve_graph(&g, &incumbent, Duration::ZERO);
        assert!(res.weight >= inc_weight);
    }

    #[test]
    fn improves_is_strict() {
        use crate::explore::{build_subproblem, BuildOutcome, ExploreParams};
        use crate::solution::Solution;
        let g = graph(3, &[2.0, 3.0, 2.0], &[(0, 1), (1, 2)]);
        let mut sol = Solution::empty(3);
        sol.add_vertex(&g, 1).unwrap();
        let p = ExploreParams {
            depth: 2,
            max_size: 3,
            pinch_factor: 1.25,
            pinch_enabled: false,
        };
        let BuildOutcome::Built(sub) = build_subproblem(&g, &sol, &[0], &p).unwrap() else {
            panic!("expected subproblem");
        };
        let res = solve_mwis(&sub, UNTIMED);
        assert_eq!(res.weight, 4.0);
        assert!(improves(&res, &sub));
        // equal weight does not improve
        let same = SolverResult {
            set: sub.incumbent.clone(),
            weight: sub.incumbent_weight,
            proven_optimal: true,
            nodes_explored: 0,
            elapsed: Duration::ZERO,
        };
        assert!(!improves(&same, &sub));
    }
}
