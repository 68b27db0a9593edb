//! Fast greedy update rules.
//!
//! Two variants repair the solution after an edge flip:
//! - `DegGreedy` resolves an insertion conflict by evicting the endpoint
//!   minimizing `w(v)/w(N(v))`, the vertex blocking the most weight;
//! - `Greedy` simply evicts the lighter endpoint.
//!
//! Both test the evicted vertex's neighbors for re-insertion, and both
//! handle deletions identically by probing the freed endpoints. Ties are
//! broken with the run's seeded RNG; re-insertion scans ascending ids so
//! repeated runs are reproducible.

use crate::graph::{DynamicGraph, Vertex, Weight};
use crate::solution::Solution;
use rand::Rng;
use std::cmp::Ordering;

/// Which eviction rule an insertion conflict uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreedyVariant {
    DegGreedy,
    Greedy,
}

/// What one greedy repair did to the solution.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GreedyOutcome {
    pub removed: Option<Vertex>,
    pub added: Vec<Vertex>,
}

impl GreedyOutcome {
    pub fn added_any(&self) -> bool {
        !self.added.is_empty()
    }
}

/// `φ(v) = w(v) / w(N(v))`; an isolated vertex gets +∞ so it is never
/// the eviction choice.
pub fn phi(g: &DynamicGraph, v: Vertex) -> Weight {
    let nw = g.neighborhood_weight(v);
    if nw == 0.0 {
        f64::INFINITY
    } else {
        g.weight(v) / nw
    }
}

// Exact comparison of φ(a) and φ(b) via cross multiplication, so integer
// weights never produce spurious float ties. w(N) = 0 means φ = +∞.
fn phi_cmp(g: &DynamicGraph, a: Vertex, b: Vertex) -> Ordering {
    let (na, nb) = (g.neighborhood_weight(a), g.neighborhood_weight(b));
    match (na == 0.0, nb == 0.0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let lhs = g.weight(a) * nb;
            let rhs = g.weight(b) * na;
            lhs.partial_cmp(&rhs).expect("weights are finite")
        }
    }
}

fn resolve_conflict<R: Rng>(
    g: &DynamicGraph,
    sol: &mut Solution,
    u: Vertex,
    v: Vertex,
    victim_cmp: Ordering,
    rng: &mut R,
) -> GreedyOutcome {
    // victim_cmp compares u against v; Less means u is evicted.
    let victim = match victim_cmp {
        Ordering::Less => u,
        Ordering::Greater => v,
        Ordering::Equal => {
            if rng.random::<bool>() {
                u
            } else {
                v
            }
        }
    };
    sol.remove_vertex(g, victim)
        .expect("conflict endpoint is a member");
    let mut added = Vec::new();
    for x in g.sorted_neighbors(victim) {
        if sol.can_be_independent(x) {
            sol.add_vertex(g, x).expect("eligibility just checked");
            added.push(x);
        }
    }
    GreedyOutcome {
        removed: Some(victim),
        added,
    }
}

/// Repair after inserting edge `{u, v}` (the edge is already in `g` and
/// the solution's tight counts reflect it). Evicts the endpoint with the
/// smaller `φ` when both are members.
pub fn deg_greedy_insert<R: Rng>(
    g: &DynamicGraph,
    sol: &mut Solution,
    u: Vertex,
    v: Vertex,
    rng: &mut R,
) -> GreedyOutcome {
    if !(sol.contains(u) && sol.contains(v)) {
        return GreedyOutcome::default();
    }
    resolve_conflict(g, sol, u, v, phi_cmp(g, u, v), rng)
}

/// Repair after inserting edge `{u, v}`: evicts the lighter endpoint.
pub fn greedy_insert<R: Rng>(
    g: &DynamicGraph,
    sol: &mut Solution,
    u: Vertex,
    v: Vertex,
    rng: &mut R,
) -> GreedyOutcome {
    if !(sol.contains(u) && sol.contains(v)) {
        return GreedyOutcome::default();
    }
    let cmp = g
        .weight(u)
        .partial_cmp(&g.weight(v))
        .expect("weights are finite");
    resolve_conflict(g, sol, u, v, cmp, rng)
}

/// Repair after deleting edge `{u, v}` (already removed from `g`): each
/// freed endpoint joins the solution if nothing blocks it. Shared by
/// both variants.
pub fn greedy_delete(g: &DynamicGraph, sol: &mut Solution, u: Vertex, v: Vertex) -> GreedyOutcome {
    let mut added = Vec::new();
    for x in [u.min(v), u.max(v)] {
        if sol.can_be_independent(x) {
            sol.add_vertex(g, x).expect("eligibility just checked");
            added.push(x);
        }
    }
    GreedyOutcome {
        removed: None,
        added,
    }
}

/// Dispatches an insertion repair to the configured variant.
pub fn variant_insert<R: Rng>(
    variant: GreedyVariant,
    g: &DynamicGraph,
    sol: &mut Solution,
    u: Vertex,
    v: Vertex,
    rng: &mut R,
) -> GreedyOutcome {
    match variant {
        GreedyVariant::DegGreedy => deg_greedy_insert(g, sol, u, v, rng),
        GreedyVariant::Greedy => greedy_insert(g, sol, u, v, rng),
    }
}
