//! Shared generators for the criterion benchmarks.

use dynis_core::io::{EditEvent, EditSequence, EventKind};
use dynis_core::{DynamicGraph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Random mixed insert/delete sequence over `n` vertices. Roughly
/// `insert_bias` of the events are insertions; all events are valid
/// (no duplicates, no missing deletes) so none are obsolete.
pub fn random_sequence(n: usize, updates: usize, insert_bias: f64, seed: u64) -> EditSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: Vec<(Vertex, Vertex)> = Vec::new();
    let mut present_set: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut events = Vec::with_capacity(updates);
    while events.len() < updates {
        let insert = present.is_empty() || rng.random::<f64>() < insert_bias;
        if insert {
            let u = rng.random_range(0..n as Vertex);
            let v = rng.random_range(0..n as Vertex);
            let key = (u.min(v), u.max(v));
            if u == v || present_set.contains(&key) {
                continue;
            }
            present_set.insert(key);
            present.push(key);
            events.push(EditEvent {
                kind: EventKind::Insert,
                u,
                v,
            });
        } else {
            let idx = rng.random_range(0..present.len());
            let (u, v) = present.swap_remove(idx);
            present_set.remove(&(u, v));
            events.push(EditEvent {
                kind: EventKind::Delete,
                u,
                v,
            });
        }
    }
    EditSequence {
        n,
        events,
        obsolete_count: 0,
    }
}

/// Random weighted graph for solver benchmarks.
pub fn random_graph(n: usize, density: f64, seed: u64) -> DynamicGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..n).map(|_| rng.random_range(1..=100) as f64).collect();
    let mut g = DynamicGraph::new(weights).expect("positive weights");
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.random::<f64>() < density {
                g.insert_edge(u, v).expect("valid ids");
            }
        }
    }
    g
}
