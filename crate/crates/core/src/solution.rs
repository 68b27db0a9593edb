//! Independent set state with per-vertex counts of solution neighbors.
//!
//! Storing `tight_count(v) = |N(v) ∩ I|` lets the greedy update rules
//! test membership eligibility in O(1) and repair conflicts in O(Δ).

use crate::graph::{DynamicGraph, Vertex, Weight};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SolutionError {
    #[error("vertex {0} cannot join the solution (member or blocked)")]
    NotAddable(Vertex),
    #[error("vertex {0} is not a solution member")]
    NotMember(Vertex),
    #[error("replacement vertex {0} conflicts with the solution outside the region")]
    ConflictOutsideRegion(Vertex),
}

/// Current independent set `I` bound to one graph instance.
#[derive(Debug, Clone)]
pub struct Solution {
    in_set: Vec<bool>,
    tight: Vec<u32>,
    total_weight: Weight,
    cardinality: usize,
}

impl Solution {
    /// Empty solution on an `n`-vertex graph.
    pub fn empty(n: usize) -> Self {
        Self {
            in_set: vec![false; n],
            tight: vec![0; n],
            total_weight: 0.0,
            cardinality: 0,
        }
    }

    /// Maximal solution built by scanning vertices in ascending id order.
    /// On an edgeless graph this is `I = V`, the unique maximal set.
    pub fn greedy_maximal(g: &DynamicGraph) -> Self {
        let mut sol = Self::empty(g.num_vertices());
        for v in 0..g.num_vertices() as Vertex {
            if sol.can_be_independent(v) {
                sol.add_vertex(g, v).expect("eligibility just checked");
            }
        }
        sol
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.in_set[v as usize]
    }

    pub fn tight_count(&self, v: Vertex) -> u32 {
        self.tight[v as usize]
    }

    pub fn weight(&self) -> Weight {
        self.total_weight
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    /// Members in ascending id order.
    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.in_set.len() as Vertex)
            .filter(|&v| self.in_set[v as usize])
            .collect()
    }

    /// True iff `v` is outside `I` and has no solution neighbor.
    pub fn can_be_independent(&self, v: Vertex) -> bool {
        !self.in_set[v as usize] && self.tight[v as usize] == 0
    }

    pub fn add_vertex(&mut self, g: &DynamicGraph, v: Vertex) -> Result<(), SolutionError> {
        if !self.can_be_independent(v) {
            return Err(SolutionError::NotAddable(v));
        }
        self.in_set[v as usize] = true;
        for x in g.neighbors(v) {
            self.tight[x as usize] += 1;
        }
        self.total_weight += g.weight(v);
        self.cardinality += 1;
        Ok(())
    }

    pub fn remove_vertex(&mut self, g: &DynamicGraph, v: Vertex) -> Result<(), SolutionError> {
        if !self.in_set[v as usize] {
            return Err(SolutionError::NotMember(v));
        }
        self.in_set[v as usize] = false;
        for x in g.neighbors(v) {
            self.tight[x as usize] -= 1;
        }
        self.total_weight -= g.weight(v);
        self.cardinality -= 1;
        Ok(())
    }

    /// Keeps tight counts consistent after the graph gained edge `{u, v}`.
    /// Must be called right after `insert_edge` succeeded. If both
    /// endpoints are members the set is transiently non-independent until
    /// the greedy repair removes one of them.
    pub fn note_edge_inserted(&mut self, u: Vertex, v: Vertex) {
        if self.in_set[u as usize] {
            self.tight[v as usize] += 1;
        }
        if self.in_set[v as usize] {
            self.tight[u as usize] += 1;
        }
    }

    /// Counterpart of [`Self::note_edge_inserted`] for a deleted edge.
    pub fn note_edge_deleted(&mut self, u: Vertex, v: Vertex) {
        if self.in_set[u as usize] {
            self.tight[v as usize] -= 1;
        }
        if self.in_set[v as usize] {
            self.tight[u as usize] -= 1;
        }
    }

    /// Replaces `I ∩ region` with `new_set`. The caller guarantees the
    /// construction property `(N(region) \ region) ∩ I = ∅` and that
    /// `new_set ⊆ region` is independent in `G[region]`; a conflict with
    /// the solution outside the region is reported as an error.
    /// Removals run before additions so intermediate states stay independent.
    pub fn replace_region(
        &mut self,
        g: &DynamicGraph,
        region: &[Vertex],
        new_set: &[Vertex],
    ) -> Result<(), SolutionError> {
        let keep: HashSet<Vertex> = new_set.iter().copied().collect();
        for &v in region {
            if self.in_set[v as usize] && !keep.contains(&v) {
                self.remove_vertex(g, v)?;
            }
        }
        for &v in new_set {
            if !self.in_set[v as usize] {
                if !self.can_be_independent(v) {
                    return Err(SolutionError::ConflictOutsideRegion(v));
                }
                self.add_vertex(g, v)?;
            }
        }
        Ok(())
    }

    /// Full recount audit: tight counts, caches, and independence.
    pub fn audit(&self, g: &DynamicGraph) -> bool {
        let n = g.num_vertices();
        if self.in_set.len() != n {
            return false;
        }
        let mut weight = 0.0;
        let mut card = 0usize;
        for v in 0..n as Vertex {
            let recount = g.neighbors(v).filter(|&x| self.in_set[x as usize]).count() as u32;
            if recount != self.tight[v as usize] {
                return false;
            }
            if self.in_set[v as usize] {
                if recount != 0 {
                    return false; // member adjacent to a member
                }
                weight += g.weight(v);
                card += 1;
            }
        }
        weight == self.total_weight && card == self.cardinality
    }

    /// True iff no non-member can still join (requires a consistent state).
    pub fn is_maximal(&self, g: &DynamicGraph) -> bool {
        (0..g.num_vertices() as Vertex).all(|v| !self.can_be_independent(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> DynamicGraph {
        let mut g = DynamicGraph::new(vec![2.0, 3.0, 2.0]).unwrap();
        g.insert_edge(0, 1).unwrap();
        g.insert_edge(1, 2).unwrap();
        g
    }

    #[test]
    fn can_be_independent_cases() {
        let g = path3();
        let mut sol = Solution::empty(3);
        assert!(sol.can_be_independent(0));
        sol.add_vertex(&g, 1).unwrap();
        assert!(!sol.can_be_independent(1)); // member
        assert!(!sol.can_be_independent(0)); // tight to 1
    }

    #[test]
    fn add_and_remove_are_inverse() {
        let mut g = DynamicGraph::new(vec![7.0, 1.0, 1.0, 1.0]).unwrap();
        for v in 1..4 {
            g.insert_edge(0, v).unwrap();
        }
        let mut sol = Solution::empty(4);
        sol.add_vertex(&g, 0).unwrap();
        assert_eq!(sol.weight(), 7.0);
        for v in 1..4 {
            assert_eq!(sol.tight_count(v), 1);
        }
        sol.remove_vertex(&g, 0).unwrap();
        assert_eq!(sol.weight(), 0.0);
        assert_eq!(sol.cardinality(), 0);
        assert!(sol.audit(&g));
    }

    #[test]
    fn precondition_violations_error() {
        let g = path3();
        let mut sol = Solution::empty(3);
        sol.add_vertex(&g, 1).unwrap();
        assert_eq!(sol.add_vertex(&g, 0), Err(SolutionError::NotAddable(0)));
        assert_eq!(sol.remove_vertex(&g, 2), Err(SolutionError::NotMember(2)));
    }

    #[test]
    fn replace_region_whole_graph() {
        let g = path3();
        let mut sol = Solution::empty(3);
        sol.add_vertex(&g, 1).unwrap();
        sol.replace_region(&g, &[0, 1, 2], &[0, 2]).unwrap();
        assert_eq!(sol.weight(), 4.0);
        assert!(sol.audit(&g));
    }

    #[test]
    fn replace_region_identity_is_noop() {
        let g = path3();
        let mut sol = Solution::empty(3);
        sol.add_vertex(&g, 1).unwrap();
        sol.replace_region(&g, &[1], &[1]).unwrap();
        assert_eq!(sol.vertices(), vec![1]);
        assert!(sol.audit(&g));
    }

    #[test]
    fn replace_region_detects_outside_conflict() {
        // 0-1, 1-2: I = {0}; replacing region {1} with {1} conflicts with 0.
        let mut g = DynamicGraph::unweighted(3);
        g.insert_edge(0, 1).unwrap();
        g.insert_edge(1, 2).unwrap();
        let mut sol = Solution::empty(3);
        sol.add_vertex(&g, 0).unwrap();
        assert_eq!(
            sol.replace_region(&g, &[1, 2], &[1]),
            Err(SolutionError::ConflictOutsideRegion(1))
        );
    }

    #[test]
    fn fig2_style_region_swap_improves_weight() {
        // Path a-b-c-d-e with weights 3,2,1,2,3: swapping the two inner
        // weight-2 members for the three alternating vertices lifts the
        // region weight from 4 to 7.
        let mut g = DynamicGraph::new(vec![3.0, 2.0, 1.0, 2.0, 3.0]).unwrap();
        for i in 0..4 {
            g.insert_edge(i, i + 1).unwrap();
        }
        let mut sol = Solution::empty(5);
        sol.add_vertex(&g, 1).unwrap();
        sol.add_vertex(&g, 3).unwrap();
        assert_eq!(sol.weight(), 4.0);
        sol.replace_region(&g, &[0, 1, 2, 3, 4], &[0, 2, 4]).unwrap();
        assert_eq!(sol.weight(), 7.0);
        assert!(sol.audit(&g));
    }

    proptest! {
        #[test]
        fn random_ops_keep_audit_green(
            edges in prop::collection::vec((0u32..40, 0u32..40), 0..150),
            toggles in prop::collection::vec(0u32..40, 0..200)
        ) {
            let mut g = DynamicGraph::unweighted(40);
            for (u, v) in edges {
                g.insert_edge(u, v).unwrap();
            }
            let mut sol = Solution::empty(40);
            for v in toggles {
                if sol.contains(v) {
                    sol.remove_vertex(&g, v).unwrap();
                } else if sol.can_be_independent(v) {
                    sol.add_vertex(&g, v).unwrap();
                }
                prop_assert!(sol.audit(&g));
            }
        }
    }
}
