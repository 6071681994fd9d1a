use std::collections::VecDeque;

use crate::graph::{OrientedState, RedComponents, VertexId};

/// The part of the graph reachable from a root red component by following
/// blue arcs forward and red edges in either direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploredSubgraph {
    /// Index of the root in the state's [`RedComponents`].
    pub root: usize,
    /// Sorted vertex set.
    pub vertices: Vec<VertexId>,
    /// Indices of the red components inside, sorted.
    pub components: Vec<usize>,
    member: Vec<bool>,
}

impl ExploredSubgraph {
    pub fn contains(&self, v: VertexId) -> bool {
        self.member[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// Closure of the root component's vertices under blue out-arcs and red
/// adjacency.
pub fn explore(state: &OrientedState<'_>, comps: &RedComponents, root: usize) -> ExploredSubgraph {
    let g = state.graph();
    let mut member = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &v in &comps.get(root).vertices {
        member[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let next = state
            .blue_out_arcs(v)
            .chain(state.red_incident(v))
            .map(|e| g.opposite(e, v));
        for w in next.collect::<Vec<_>>() {
            if !member[w] {
                member[w] = true;
                queue.push_back(w);
            }
        }
    }
    let vertices: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| member[v]).collect();
    let mut components: Vec<usize> = vertices.iter().map(|&v| comps.index_of(v)).collect();
    components.dedup();
    ExploredSubgraph {
        root,
        vertices,
        components,
        member,
    }
}
