use serde::Serialize;

use super::explore::{explore, ExploredSubgraph};
use super::order::LegalOrder;
use super::Params;
use crate::graph::{OrientedState, RedComponents};

/// Lexicographic progress measure; every applied move makes it strictly
/// smaller.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Potential {
    pub red_arcs: usize,
    pub cycles: usize,
    pub residue: usize,
    pub order_vector: Vec<usize>,
}

/// A state together with its red components and, when some component is
/// too large, the root, explored subgraph and legal order built on it.
#[derive(Debug, Clone)]
pub struct Configuration<'g> {
    pub state: OrientedState<'g>,
    pub comps: RedComponents,
    pub search: Option<Search>,
    pub potential: Potential,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Search {
    pub explored: ExploredSubgraph,
    pub order: LegalOrder,
}

impl Search {
    pub fn root(&self) -> usize {
        self.explored.root
    }
}

/// Sum over red components of the edges beyond `d`.
pub(crate) fn residue_of(comps: &RedComponents, d: usize) -> usize {
    comps.iter().map(|c| c.edge_count().saturating_sub(d)).sum()
}

impl<'g> Configuration<'g> {
    /// Builds the search structures for `state`.
    ///
    /// With a previous configuration, its root is kept if it is still a red
    /// component with more than `d` edges, and so is the longest prefix of its
    /// legal order whose components are unchanged and still legally placed.
    /// The rest of the order is completed greedily. Otherwise the root is the
    /// largest component with more than `d` edges, ties by smallest id, and the
    /// order is greedy from scratch.
    pub fn build(
        state: OrientedState<'g>,
        prev: Option<&Configuration<'_>>,
        params: &Params,
    ) -> Self {
        let comps = state.red_components();
        let d = params.d;
        let kept = prev.and_then(|p| kept_prefix(&state, &comps, p, d));
        let search = match kept {
            Some(prefix) => {
                let explored = explore(&state, &comps, prefix[0]);
                let order = LegalOrder::extend(&state, &comps, &prefix);
                Some(Search { explored, order })
            }
            None => largest_over(&comps, d).map(|root| Search {
                explored: explore(&state, &comps, root),
                order: LegalOrder::canonical(&state, &comps, root),
            }),
        };
        let potential = Potential {
            red_arcs: state.red_arc_count(),
            cycles: comps.cycle_count(),
            residue: residue_of(&comps, d),
            order_vector: search
                .as_ref()
                .map(|s| s.order.edge_vector(&comps))
                .unwrap_or_default(),
        };
        Configuration {
            state,
            comps,
            search,
            potential,
        }
    }
}

fn largest_over(comps: &RedComponents, d: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in comps.iter().enumerate() {
        if c.edge_count() > d && best.is_none_or(|b| c.edge_count() > comps.get(b).edge_count()) {
            best = Some(i);
        }
    }
    best
}

fn kept_prefix(
    state: &OrientedState<'_>,
    comps: &RedComponents,
    prev: &Configuration<'_>,
    d: usize,
) -> Option<Vec<usize>> {
    let search = prev.search.as_ref()?;
    let mut prefix = Vec::new();
    let mut placed = vec![false; comps.len()];
    for (j, &old) in search.order.components().iter().enumerate() {
        let Some(c) = comps.find(prev.comps.get(old)) else {
            break;
        };
        if j == 0 {
            if comps.get(c).edge_count() <= d {
                return None;
            }
        } else {
            let reached = comps.get(c).vertices.iter().any(|&v| {
                state
                    .in_arcs(v)
                    .any(|a| state.is_blue(a) && placed[comps.index_of(state.tail(a))])
            });
            if !reached {
                break;
            }
        }
        placed[c] = true;
        prefix.push(c);
    }
    (!prefix.is_empty()).then_some(prefix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Colour::*, Multigraph};

    #[test]
    fn potential_compares_lexicographically() {
        let p = |r, c, s, v: &[usize]| Potential {
            red_arcs: r,
            cycles: c,
            residue: s,
            order_vector: v.to_vec(),
        };
        assert!(p(1, 5, 5, &[9]) < p(2, 0, 0, &[]));
        assert!(p(1, 0, 3, &[4, 1, 0]) < p(1, 0, 3, &[4, 1, 1]));
        assert!(p(1, 0, 3, &[4, 0, 7]) < p(1, 0, 3, &[4, 1, 0]));
        assert!(p(1, 0, 2, &[9, 9]) < p(1, 0, 3, &[4]));
    }

    #[test]
    fn root_is_largest_then_smallest_id() {
        // red paths {0, 1, 2} and {3, 4, 5} of 2 edges, {6, 7, 8, 9} of 3
        let g =
            Multigraph::new(10, [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (8, 9)]).unwrap();
        let s = OrientedState::from_arcs(
            &g,
            &[
                (0, 1, Red),
                (1, 2, Red),
                (3, 4, Red),
                (4, 5, Red),
                (6, 7, Red),
                (7, 8, Red),
                (8, 9, Red),
            ],
        )
        .unwrap();
        let params = Params::new(1, 1).unwrap();
        let c = Configuration::build(s.clone(), None, &params);
        let root = c.search.as_ref().unwrap().root();
        assert_eq!(c.comps.get(root).id, 6);
        assert_eq!(c.potential.residue, 1 + 1 + 2);

        let params = Params::new(1, 2).unwrap();
        let c = Configuration::build(s, None, &params);
        assert_eq!(c.comps.get(c.search.unwrap().root()).id, 6);
    }

    #[test]
    fn no_search_when_all_small() {
        let g = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let s = OrientedState::from_arcs(&g, &[(0, 1, Red), (1, 2, Red)]).unwrap();
        let c = Configuration::build(s, None, &Params::new(1, 2).unwrap());
        assert!(c.search.is_none());
        assert!(c.potential.order_vector.is_empty());
    }
}
