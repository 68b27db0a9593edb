//! Brute-force reference implementations.
//!
//! These are deliberately independent of the branch-and-reduce solver
//! (no reductions, different traversal) so equivalence tests between
//! the two are meaningful. Exponential; guarded to small graphs.

use crate::graph::{DynamicGraph, Vertex, Weight};
use thiserror::Error;

const MAX_ORACLE_VERTICES: usize = 30;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("graph with {0} vertices is too large for the oracle (limit {MAX_ORACLE_VERTICES})")]
    TooLarge(usize),
}

struct Enumerator<'a> {
    g: &'a DynamicGraph,
    active: Vec<bool>,
    current: Vec<Vertex>,
    current_weight: Weight,
    remaining_weight: Weight,
    best: Vec<Vertex>,
    best_weight: Weight,
}

impl Enumerator<'_> {
    fn recurse(&mut self) {
        // Pruning only when strictly hopeless, so equal-weight sets are
        // still enumerated and the lexicographic tie-break stays exact.
        if self.current_weight + self.remaining_weight < self.best_weight {
            return;
        }
        // highest active degree, smallest id on ties
        let pick = (0..self.g.num_vertices() as Vertex)
            .filter(|&v| self.active[v as usize])
            .max_by_key(|&v| {
                let deg = self
                    .g
                    .neighbors(v)
                    .filter(|&x| self.active[x as usize])
                    .count();
                (deg, std::cmp::Reverse(v))
            });
        let Some(v) = pick else {
            let mut set = self.current.clone();
            set.sort_unstable();
            if self.current_weight > self.best_weight
                || (self.current_weight == self.best_weight && set < self.best)
            {
                self.best_weight = self.current_weight;
                self.best = set;
            }
            return;
        };

        // include v
        let removed: Vec<Vertex> = std::iter::once(v)
            .chain(self.g.neighbors(v).filter(|&x| self.active[x as usize]))
            .collect();
        for &x in &removed {
            self.active[x as usize] = false;
            self.remaining_weight -= self.g.weight(x);
        }
        self.current.push(v);
        self.current_weight += self.g.weight(v);
        self.recurse();
        self.current.pop();
        self.current_weight -= self.g.weight(v);
        for &x in &removed {
            self.active[x as usize] = true;
            self.remaining_weight += self.g.weight(x);
        }

        // exclude v
        self.active[v as usize] = false;
        self.remaining_weight -= self.g.weight(v);
        self.recurse();
        self.active[v as usize] = true;
        self.remaining_weight += self.g.weight(v);
    }
}

/// Exact maximum weight independent set by exhaustive branching.
/// Ties resolve to the lexicographically smallest optimal set.
pub fn brute_force_mwis(g: &DynamicGraph) -> Result<(Vec<Vertex>, Weight), OracleError> {
    let n = g.num_vertices();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge(n));
    }
    let remaining_weight = (0..n as Vertex).map(|v| g.weight(v)).sum();
    let mut e = Enumerator {
        g,
        active: vec![true; n],
        current: Vec::new(),
        current_weight: 0.0,
        remaining_weight,
        best: Vec::new(),
        best_weight: -1.0,
    };
    e.recurse();
    debug_assert!(verify_independent(g, &e.best));
    Ok((e.best, e.best_weight))
}

/// True iff `set` induces no edge.
pub fn verify_independent(g: &DynamicGraph, set: &[Vertex]) -> bool {
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// True iff `set` is independent and no outside vertex can join.
pub fn verify_maximal(g: &DynamicGraph, set: &[Vertex]) -> bool {
    if !verify_independent(g, set) {
        return false;
    }
    let member = {
        let mut m = vec![false; g.num_vertices()];
        for &v in set {
            m[v as usize] = true;
        }
        m
    };
    (0..g.num_vertices() as Vertex)
        .all(|v| member[v as usize] || g.neighbors(v).any(|x| member[x as usize]))
}
