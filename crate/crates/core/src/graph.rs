//! Mutable undirected simple graph with non-negative vertex weights.
//!
//! Adjacency is stored as one hash set per vertex, giving O(1) expected
//! edge existence tests and O(deg) neighborhood iteration. Iteration
//! order over a hash set is unspecified; callers that need a fixed
//! order use [`DynamicGraph::sorted_neighbors`].

use std::collections::HashSet;
use thiserror::Error;

/// Vertex identifier. The vertex set is fixed at construction; node
/// insertion/deletion is modeled by pre-allocating vertices and
/// toggling their incident edges.
pub type Vertex = u32;

/// Vertex weight. The benchmark harness only produces non-negative
/// integers, but any non-negative real is accepted.
pub type Weight = f64;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertex {vertex} has negative weight {weight}")]
    NegativeWeight { vertex: Vertex, weight: Weight },
}

/// Undirected simple graph `G = (V, E, w)` under edge updates.
///
/// Invariants maintained by every operation:
/// - adjacency is symmetric,
/// - no self-loops, no parallel edges,
/// - `edge_count` equals half the sum of adjacency sizes.
#[derive(Debug, Clone)]
pub struct DynamicGraph {
    weights: Vec<Weight>,
    adj: Vec<HashSet<Vertex>>,
    m: usize,
}

impl DynamicGraph {
    /// Creates an edgeless graph with the given vertex weights.
    pub fn new(weights: Vec<Weight>) -> Result<Self, GraphError> {
        for (v, &w) in weights.iter().enumerate() {
            if w < 0.0 || w.is_nan() {
                return Err(GraphError::NegativeWeight {
                    vertex: v as Vertex,
                    weight: w,
                });
            }
        }
        let n = weights.len();
        Ok(Self {
            weights,
            adj: vec![HashSet::new(); n],
            m: 0,
        })
    }

    /// Edgeless unit-weight graph on `n` vertices.
    pub fn unweighted(n: usize) -> Self {
        Self::new(vec![1.0; n]).expect("unit weights are valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if (v as usize) < self.weights.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.weights.len(),
            })
        }
    }

    /// Inserts edge `{u, v}`. Returns `false` without changing the graph
    /// if `u == v` or the edge already exists.
    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v || self.adj[u as usize].contains(&v) {
            return Ok(false);
        }
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        self.m += 1;
        Ok(true)
    }

    /// Deletes edge `{u, v}`. Returns `false` if the edge did not exist.
    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if !self.adj[u as usize].remove(&v) {
            return Ok(false);
        }
        self.adj[v as usize].remove(&u);
        self.m -= 1;
        Ok(true)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj
            .get(u as usize)
            .is_some_and(|s| s.contains(&v))
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u as usize].len()
    }

    /// Neighborhood iteration in unspecified order.
    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[u as usize].iter().copied()
    }

    /// Neighborhood as a vector sorted by vertex id, for code that must
    /// be deterministic.
    pub fn sorted_neighbors(&self, u: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.adj[u as usize].iter().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn weight(&self, u: Vertex) -> Weight {
        self.weights[u as usize]
    }

    /// `w(N(u))`, the total weight of the neighborhood.
    pub fn neighborhood_weight(&self, u: Vertex) -> Weight {
        self.adj[u as usize]
            .iter()
            .map(|&x| self.weights[x as usize])
            .sum()
    }

    /// Replaces the weight of `u`; used by the node-reinsertion mapping
    /// where a node update doubles as a weight update.
    pub fn set_weight(&mut self, u: Vertex, w: Weight) -> Result<(), GraphError> {
        self.check(u)?;
        if w < 0.0 || w.is_nan() {
            return Err(GraphError::NegativeWeight { vertex: u, weight: w });
        }
        self.weights[u as usize] = w;
        Ok(())
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Full adjacency audit: symmetry, no self-loops, edge count.
    pub fn audit(&self) -> bool {
        let mut half_sum = 0usize;
        for (u, nbrs) in self.adj.iter().enumerate() {
            half_sum += nbrs.len();
            for &v in nbrs {
                if v as usize == u || !self.adj[v as usize].contains(&(u as Vertex)) {
                    return false;
                }
            }
        }
        half_sum == 2 * self.m
    }
}
