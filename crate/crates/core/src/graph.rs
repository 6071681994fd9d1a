//! Loop-free multigraphs and their red/blue orientations.
//!
//! A [`Multigraph`] owns the vertex count and a list of edges, each with a
//! dense id `0..m`. Parallel edges are ordinary edges with distinct ids, so
//! everything downstream refers to edges by id rather than by endpoint pair.
//!
//! An [`OrientedState`] directs every edge and colours it red or blue. The
//! colouring follows a per-vertex rule with parameter `k`: a vertex of
//! out-degree `d⁺` has `min(d⁺, k)` blue out-arcs and the rest red, and at most
//! one red out-arc. The red arcs therefore form a pseudoforest, and so does
//! each "slot" of blue arcs.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: VertexId },
    #[error("edge {edge} has endpoint {vertex} outside 0..{n}")]
    VertexOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        n: usize,
    },
}

/// A finite loop-free multigraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    ends: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Builds a graph from endpoint pairs; edge `i` is the `i`-th pair.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut ends = Vec::new();
        let mut incidence = vec![Vec::new(); n];
        for (edge, (u, v)) in edges.into_iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { edge, vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge, vertex: u });
            }
            incidence[u].push(edge);
            incidence[v].push(edge);
            ends.push((u, v));
        }
        Ok(Multigraph { n, ends, incidence })
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Multigraph {
            n,
            ends: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn endpoints(&self, edge: EdgeId) -> (VertexId, VertexId) {
        self.ends[edge]
    }

    /// The endpoint of `edge` that is not `vertex`.
    pub fn opposite(&self, edge: EdgeId, vertex: VertexId) -> VertexId {
        let (u, v) = self.ends[edge];
        if u == vertex {
            v
        } else {
            u
        }
    }

    /// Edge ids incident to `vertex`, in increasing order.
    pub fn incident(&self, vertex: VertexId) -> &[EdgeId] {
        &self.incidence[vertex]
    }

    pub fn degree(&self, vertex: VertexId) -> usize {
        self.incidence[vertex].len()
    }

    /// `(id, u, v)` for every edge.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.ends.iter().enumerate().map(|(e, &(u, v))| (e, u, v))
    }

    /// A copy of this graph with one more edge `u v` (id `m`).
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Self, GraphError> {
        Multigraph::new(self.n, self.ends.iter().copied().chain([(u, v)]))
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[VertexId]) -> usize {
        let mut member = vec![false; self.n];
        for &v in vertices {
            member[v] = true;
        }
        self.ends
            .iter()
            .filter(|&&(u, v)| member[u] && member[v])
            .count()
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multigraph")
            .field("n", &self.n)
            .field("edges", &self.ends)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Red,
    Blue,
}

/// A violated [`OrientedState`] invariant, as reported by
/// [`OrientedState::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {vertex} has {red} red out-arcs")]
    TooManyRedArcs { vertex: VertexId, red: usize },
    #[error(
        "vertex {vertex} has out-degree {out_degree} but {blue} blue and {red} red out-arcs (k = {k})"
    )]
    ColourSplit {
        vertex: VertexId,
        out_degree: usize,
        blue: usize,
        red: usize,
        k: usize,
    },
    #[error("edge {edge} is directed out of {tail}, which is not one of its endpoints")]
    BadTail { edge: EdgeId, tail: VertexId },
    #[error("state has {got} entries for a graph with {expected} edges")]
    WrongLength { expected: usize, got: usize },
}

/// An orientation plus a red/blue colouring of every edge of a graph.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedState<'g> {
    graph: &'g Multigraph,
    tail: Vec<VertexId>,
    colour: Vec<Colour>,
}

impl<'g> OrientedState<'g> {
    /// Every edge `u v` directed `u → v` and coloured blue.
    pub fn along_input(graph: &'g Multigraph) -> Self {
        OrientedState {
            graph,
            tail: graph.ends.iter().map(|&(u, _)| u).collect(),
            colour: vec![Colour::Blue; graph.edge_count()],
        }
    }

    /// Builds a state from explicit tails and colours. Only the shape is
    /// checked here; call [`validate`](Self::validate) for the colouring rule.
    pub fn from_parts(
        graph: &'g Multigraph,
        tail: Vec<VertexId>,
        colour: Vec<Colour>,
    ) -> Result<Self, Violation> {
        let m = graph.edge_count();
        if tail.len() != m || colour.len() != m {
            return Err(Violation::WrongLength {
                expected: m,
                got: tail.len().min(colour.len()),
            });
        }
        for (edge, &t) in tail.iter().enumerate() {
            let (u, v) = graph.endpoints(edge);
            if t != u && t != v {
                return Err(Violation::BadTail { edge, tail: t });
            }
        }
        Ok(OrientedState {
            graph,
            tail,
            colour,
        })
    }

    /// Convenience constructor from `(tail, head, colour)` triples, one per
    /// edge in id order. The graph must already contain matching edges.
    pub fn from_arcs(
        graph: &'g Multigraph,
        arcs: &[(VertexId, VertexId, Colour)],
    ) -> Result<Self, Violation> {
        let tail = arcs.iter().map(|&(t, _, _)| t).collect();
        let colour = arcs.iter().map(|&(_, _, c)| c).collect();
        Self::from_parts(graph, tail, colour)
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.graph
    }

    pub fn tail(&self, edge: EdgeId) -> VertexId {
        self.tail[edge]
    }

    pub fn head(&self, edge: EdgeId) -> VertexId {
        self.graph.opposite(edge, self.tail[edge])
    }

    pub fn colour(&self, edge: EdgeId) -> Colour {
        self.colour[edge]
    }

    pub fn is_red(&self, edge: EdgeId) -> bool {
        self.colour[edge] == Colour::Red
    }

    pub fn is_blue(&self, edge: EdgeId) -> bool {
        self.colour[edge] == Colour::Blue
    }

    /// Tail vertex of every edge, indexed by edge id.
    pub fn tails(&self) -> &[VertexId] {
        &self.tail
    }

    pub(crate) fn set_tail(&mut self, edge: EdgeId, tail: VertexId) {
        debug_assert!({
            let (u, v) = self.graph.endpoints(edge);
            tail == u || tail == v
        });
        self.tail[edge] = tail;
    }

    pub(crate) fn reverse(&mut self, edge: EdgeId) {
        self.tail[edge] = self.head(edge);
    }

    pub(crate) fn set_colour(&mut self, edge: EdgeId, colour: Colour) {
        self.colour[edge] = colour;
    }

    /// Out-arcs of `vertex` in increasing edge id order.
    pub fn out_arcs(&self, vertex: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.graph
            .incident(vertex)
            .iter()
            .copied()
            .filter(move |&e| self.tail[e] == vertex)
    }

    /// In-arcs of `vertex` in increasing edge id order.
    pub fn in_arcs(&self, vertex: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.graph
            .incident(vertex)
            .iter()
            .copied()
            .filter(move |&e| self.tail[e] != vertex)
    }

    pub fn out_degree(&self, vertex: VertexId) -> usize {
        self.out_arcs(vertex).count()
    }

    pub fn blue_out_degree(&self, vertex: VertexId) -> usize {
        self.out_arcs(vertex).filter(|&e| self.is_blue(e)).count()
    }

    pub fn red_out_degree(&self, vertex: VertexId) -> usize {
        self.out_arcs(vertex).filter(|&e| self.is_red(e)).count()
    }

    /// The red out-arc of `vertex`, if it has one.
    pub fn red_out_arc(&self, vertex: VertexId) -> Option<EdgeId> {
        self.out_arcs(vertex).find(|&e| self.is_red(e))
    }

    /// Number of red edges incident to `vertex`, in either direction.
    pub fn red_degree(&self, vertex: VertexId) -> usize {
        self.graph
            .incident(vertex)
            .iter()
            .filter(|&&e| self.is_red(e))
            .count()
    }

    /// Red edges incident to `vertex` in increasing id order.
    pub fn red_incident(&self, vertex: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.graph
            .incident(vertex)
            .iter()
            .copied()
            .filter(move |&e| self.is_red(e))
    }

    /// Blue out-arcs of `vertex` in increasing id order.
    pub fn blue_out_arcs(&self, vertex: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.out_arcs(vertex).filter(move |&e| self.is_blue(e))
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.graph.vertex_count())
            .map(|v| self.out_degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn red_arc_count(&self) -> usize {
        self.colour.iter().filter(|&&c| c == Colour::Red).count()
    }

    /// Checks the colouring rule for parameter `k` and reports the first
    /// offending vertex, scanning vertices in id order.
    pub fn validate(&self, k: usize) -> Result<(), Violation> {
        let m = self.graph.edge_count();
        if self.tail.len() != m || self.colour.len() != m {
            return Err(Violation::WrongLength {
                expected: m,
                got: self.tail.len().min(self.colour.len()),
            });
        }
        for vertex in 0..self.graph.vertex_count() {
            let out_degree = self.out_degree(vertex);
            let red = self.red_out_degree(vertex);
            let blue = out_degree - red;
            if red > 1 {
                return Err(Violation::TooManyRedArcs { vertex, red });
            }
            if blue != out_degree.min(k) {
                return Err(Violation::ColourSplit {
                    vertex,
                    out_degree,
                    blue,
                    red,
                    k,
                });
            }
        }
        Ok(())
    }

    /// Connected components of the red subgraph, ignoring direction.
    pub fn red_components(&self) -> RedComponents {
        RedComponents::of(self)
    }
}

impl fmt::Debug for OrientedState<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = (0..self.tail.len())
            .map(|e| {
                let c = if self.is_red(e) { 'r' } else { 'b' };
                format!("{}:{}->{}{}", e, self.tail[e], self.head(e), c)
            })
            .collect();
        f.debug_struct("OrientedState")
            .field("arcs", &arcs)
            .finish()
    }
}

/// One connected component of the red subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedComponent {
    /// Smallest vertex in the component; stable across unrelated changes.
    pub id: VertexId,
    /// Sorted vertex list.
    pub vertices: Vec<VertexId>,
    /// Sorted red edge ids.
    pub edges: Vec<EdgeId>,
}

impl RedComponent {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// A component of a pseudoforest holds a cycle iff `e == v`.
    pub fn has_cycle(&self) -> bool {
        self.edges.len() >= self.vertices.len()
    }
}

/// The red components of a state, sorted by id, with a vertex lookup table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedComponents {
    components: Vec<RedComponent>,
    index_of: Vec<usize>,
}

impl RedComponents {
    fn of(state: &OrientedState<'_>) -> Self {
        let g = state.graph();
        let n = g.vertex_count();
        let mut index_of = vec![usize::MAX; n];
        let mut edge_seen = vec![false; g.edge_count()];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if index_of[start] != usize::MAX {
                continue;
            }
            let index = components.len();
            index_of[start] = index;
            queue.push_back(start);
            let mut vertices = Vec::new();
            let mut edges = Vec::new();
            while let Some(v) = queue.pop_front() {
                vertices.push(v);
                for e in state.red_incident(v) {
                    if !edge_seen[e] {
                        edge_seen[e] = true;
                        edges.push(e);
                    }
                    let w = g.opposite(e, v);
                    if index_of[w] == usize::MAX {
                        index_of[w] = index;
                        queue.push_back(w);
                    }
                }
            }
            vertices.sort_unstable();
            edges.sort_unstable();
            components.push(RedComponent {
                id: start,
                vertices,
                edges,
            });
        }
        RedComponents {
            components,
            index_of,
        }
    }

    /// Components in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = &RedComponent> {
        self.components.iter()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, index: usize) -> &RedComponent {
        &self.components[index]
    }

    /// Index of the component containing `vertex`.
    pub fn index_of(&self, vertex: VertexId) -> usize {
        self.index_of[vertex]
    }

    pub fn component_of(&self, vertex: VertexId) -> &RedComponent {
        &self.components[self.index_of[vertex]]
    }

    /// Index of the component with exactly this vertex and edge set, if any.
    pub fn find(&self, component: &RedComponent) -> Option<usize> {
        let index = *self.index_of.get(component.id)?;
        (self.components[index] == *component).then_some(index)
    }

    pub fn cycle_count(&self) -> usize {
        self.components.iter().filter(|c| c.has_cycle()).count()
    }
}
