//! Legal orders of the red components of an explored subgraph.
//!
//! Components are referred to by their index in [`RedComponents`]. The order
//! starts at the root and every later component receives a blue arc from an
//! earlier one. The designated parent of a component is the earliest earlier
//! component with such an arc, and its determiner is the head of the
//! smallest-id arc from that parent.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{EdgeId, OrientedState, RedComponents, VertexId};

/// How a non-root component is attached to the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Link {
    /// Component index of the designated parent.
    pub parent: usize,
    /// The blue arc from the parent into the component.
    pub arc: EdgeId,
    /// Head of `arc`.
    pub determiner: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LegalOrder {
    components: Vec<usize>,
    links: Vec<Option<Link>>,
    position: Vec<Option<usize>>,
}

impl LegalOrder {
    /// Greedy order from scratch: after the root, repeatedly append a
    /// component reachable by one blue arc with the fewest edges, ties by
    /// smallest id.
    pub fn canonical(state: &OrientedState<'_>, comps: &RedComponents, root: usize) -> Self {
        Self::extend(state, comps, &[root])
    }

    /// Completes a legal `prefix` (starting at the root) greedily.
    pub fn extend(state: &OrientedState<'_>, comps: &RedComponents, prefix: &[usize]) -> Self {
        debug_assert!(!prefix.is_empty());
        let mut placed = vec![false; comps.len()];
        let mut queued = vec![false; comps.len()];
        let mut heap = BinaryHeap::new();
        let mut components = Vec::with_capacity(comps.len());
        let push_reachable =
            |c: usize,
             queued: &mut Vec<bool>,
             placed: &Vec<bool>,
             heap: &mut BinaryHeap<Reverse<(usize, VertexId, usize)>>| {
                for &v in &comps.get(c).vertices {
                    for a in state.blue_out_arcs(v) {
                        let h = comps.index_of(state.head(a));
                        if !placed[h] && !queued[h] {
                            queued[h] = true;
                            let comp = comps.get(h);
                            heap.push(Reverse((comp.edge_count(), comp.id, h)));
                        }
                    }
                }
            };
        for &c in prefix {
            placed[c] = true;
            components.push(c);
        }
        for &c in prefix {
            push_reachable(c, &mut queued, &placed, &mut heap);
        }
        while let Some(Reverse((_, _, c))) = heap.pop() {
            if placed[c] {
                continue;
            }
            placed[c] = true;
            components.push(c);
            push_reachable(c, &mut queued, &placed, &mut heap);
        }
        Self::with_links(state, comps, components)
    }

    /// Builds an order from an explicit sequence, computing parents and
    /// determiners. Returns `None` if the sequence is not legal.
    pub fn from_sequence(
        state: &OrientedState<'_>,
        comps: &RedComponents,
        components: Vec<usize>,
    ) -> Option<Self> {
        let order = Self::with_links(state, comps, components);
        order
            .links
            .iter()
            .skip(1)
            .all(Option::is_some)
            .then_some(order)
    }

    fn with_links(
        state: &OrientedState<'_>,
        comps: &RedComponents,
        components: Vec<usize>,
    ) -> Self {
        let mut position = vec![None; comps.len()];
        for (i, &c) in components.iter().enumerate() {
            position[c] = Some(i);
        }
        let links = components
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                if j == 0 {
                    return None;
                }
                let mut best: Option<(usize, EdgeId)> = None;
                for &v in &comps.get(c).vertices {
                    for a in state.in_arcs(v).filter(|&a| state.is_blue(a)) {
                        if let Some(p) = position[comps.index_of(state.tail(a))] {
                            if p < j && best.is_none_or(|b| (p, a) < b) {
                                best = Some((p, a));
                            }
                        }
                    }
                }
                best.map(|(p, arc)| Link {
                    parent: components[p],
                    arc,
                    determiner: state.head(arc),
                })
            })
            .collect();
        LegalOrder {
            components,
            links,
            position,
        }
    }

    /// Component indices in order.
    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn position(&self, comp: usize) -> Option<usize> {
        self.position.get(comp).copied().flatten()
    }

    pub fn link(&self, comp: usize) -> Option<&Link> {
        self.links[self.position(comp)?].as_ref()
    }

    pub fn parent(&self, comp: usize) -> Option<usize> {
        self.link(comp).map(|l| l.parent)
    }

    /// Components whose designated parent is `comp`, in order.
    pub fn children(&self, comp: usize) -> Vec<usize> {
        self.components
            .iter()
            .zip(&self.links)
            .filter(|(_, l)| l.is_some_and(|l| l.parent == comp))
            .map(|(&c, _)| c)
            .collect()
    }

    /// Edge counts along the order.
    pub fn edge_vector(&self, comps: &RedComponents) -> Vec<usize> {
        self.components
            .iter()
            .map(|&c| comps.get(c).edge_count())
            .collect()
    }

    /// Every vertex of `comp` that is the head of a blue arc from an earlier
    /// component, the designated determiner first, the rest ascending.
    pub fn determiners(
        &self,
        state: &OrientedState<'_>,
        comps: &RedComponents,
        comp: usize,
    ) -> Vec<VertexId> {
        let (Some(j), Some(link)) = (self.position(comp), self.link(comp)) else {
            return Vec::new();
        };
        let mut out = vec![link.determiner];
        for &v in &comps.get(comp).vertices {
            if v == link.determiner {
                continue;
            }
            let determines = state.in_arcs(v).any(|a| {
                state.is_blue(a)
                    && self
                        .position(comps.index_of(state.tail(a)))
                        .is_some_and(|p| p < j)
            });
            if determines {
                out.push(v);
            }
        }
        out
    }
}
