use super::*;
use crate::graph::Colour::{self, Blue, Red};
use crate::rational::Rational;

type Arc = (VertexId, VertexId, Colour);

fn graph_of(n: usize, arcs: &[Arc]) -> Multigraph {
    Multigraph::new(n, arcs.iter().map(|&(u, v, _)| (u, v))).unwrap()
}

fn configure<'g>(g: &'g Multigraph, arcs: &[Arc], params: &Params) -> Configuration<'g> {
    let state = OrientedState::from_arcs(g, arcs).unwrap();
    assert_eq!(state.validate(params.k), Ok(()));
    Configuration::build(state, None, params)
}

fn assert_improves(
    before: &Configuration<'_>,
    found: Option<Improvement<'_>>,
    params: &Params,
) -> Move {
    let Improvement { mv, next } = found.expect("a move applies");
    assert_eq!(next.state.validate(params.k), Ok(()));
    assert!(
        next.potential < before.potential,
        "{:?} -> {:?}",
        before.potential,
        next.potential
    );
    let rebuilt = Configuration::build(next.state.clone(), Some(before), params);
    assert_eq!(rebuilt.potential, next.potential);
    mv
}

fn cycle_arcs() -> Vec<Arc> {
    vec![
        (0, 1, Red),
        (1, 2, Red),
        (2, 0, Red),
        (0, 3, Blue),
        (1, 0, Blue),
        (2, 1, Blue),
        (3, 1, Blue),
    ]
}

#[test]
fn red_cycle_is_broken() {
    let params = Params::new(1, 2).unwrap();
    let arcs = cycle_arcs();
    let g = graph_of(4, &arcs);
    let config = configure(&g, &arcs, &params);
    assert_eq!(config.potential.cycles, 1);
    let found = find_cycle_break(&config, &params);
    let next_cycles = found.as_ref().map(|i| i.next.potential.cycles);
    assert_improves(&config, found, &params);
    assert_eq!(next_cycles, Some(0));
}

// 0..=4 root path, 5 = a, 6 = b, 7 = y
fn small_pair_arcs() -> Vec<Arc> {
    vec![
        (0, 1, Red),
        (1, 2, Red),
        (2, 3, Red),
        (3, 4, Red),
        (5, 6, Red),
        (0, 6, Blue),
        (5, 7, Blue),
        (6, 1, Blue),
        (7, 2, Blue),
        (1, 2, Blue),
        (2, 3, Blue),
        (3, 4, Blue),
        (4, 0, Blue),
    ]
}

#[test]
fn small_parent_and_child_are_merged() {
    let params = Params::new(1, 3).unwrap();
    let arcs = small_pair_arcs();
    let g = graph_of(8, &arcs);
    let config = configure(&g, &arcs, &params);
    let search = config.search.as_ref().unwrap();
    assert_eq!(config.comps.get(search.root()).edge_count(), 4);
    assert_eq!(config.potential.order_vector, vec![4, 1, 0]);
    assert_eq!(small_pair_violations(&config, &params), vec![6]);
    assert!(find_cycle_break(&config, &params).is_none());
    let mv = assert_improves(&config, find_small_pair_move(&config, &params), &params);
    assert!(mv.is_flip());
}

// 0..=3 root path, 4 = a, 5 = b, 6 = c, 7 = p, 8 = q
fn children_arcs() -> Vec<Arc> {
    vec![
        (0, 1, Red),
        (1, 2, Red),
        (2, 3, Red),
        (4, 5, Red),
        (5, 6, Red),
        (0, 4, Blue),
        (4, 1, Blue),
        (5, 7, Blue),
        (6, 8, Blue),
        (7, 2, Blue),
        (8, 3, Blue),
        (1, 3, Blue),
        (2, 0, Blue),
        (3, 0, Blue),
    ]
}

#[test]
fn troublesome_children_are_reduced() {
    let params = Params::new(1, 2).unwrap();
    let arcs = children_arcs();
    let g = graph_of(9, &arcs);
    let config = configure(&g, &arcs, &params);
    let order = &config.search.as_ref().unwrap().order;
    let t = config.comps.index_of(4);
    assert_eq!(order.children(t).len(), 2);
    assert_eq!(
        certificate::troublesome_children(&config, &params, t).len(),
        2
    );
    // the bound needs three edges when d / (d + k + 1) = 1/2
    assert!(!children_bound_applies(2, &params));
    assert!(children_violations(&config, &params).is_empty());
    assert!(small_pair_violations(&config, &params).is_empty());
    assert_improves(
        &config,
        find_children_reduction_move(&config, &params),
        &params,
    );
}

#[test]
fn children_bound_thresholds() {
    let loose = Params::new(2, 2).unwrap();
    assert_eq!(loose.troublesome_threshold, Rational::new(2, 5));
    assert!(children_bound_applies(2, &loose));
    assert!(!children_bound_applies(1, &loose));
    let tight = Params::new(1, 4).unwrap();
    assert!(!children_bound_applies(2, &tight));
    assert!(children_bound_applies(3, &tight));
}

fn certificate_arcs() -> Vec<Arc> {
    vec![
        (0, 1, Red),
        (1, 2, Red),
        (2, 3, Red),
        (0, 2, Blue),
        (1, 3, Blue),
        (2, 0, Blue),
        (3, 1, Blue),
    ]
}

#[test]
fn stuck_dense_configuration_yields_certificate() {
    let params = Params::new(1, 2).unwrap();
    let arcs = certificate_arcs();
    let g = graph_of(4, &arcs);
    let config = configure(&g, &arcs, &params);
    let cert = extract_certificate(&config, &params).unwrap();
    assert_eq!(cert.vertices, vec![0, 1, 2, 3]);
    assert_eq!(cert.edge_count, 7);
    assert_eq!(cert.density, Rational::new(7, 2));
    assert_eq!(
        crate::verify::verify_certificate(&g, &cert, &params),
        Ok(())
    );

    let report = decompose(&g, &params, &DecomposeOptions::default()).unwrap();
    assert!(matches!(report.outcome, Outcome::Certificate(_)));
}

#[test]
fn deficient_vertex_blocks_certificate() {
    let params = Params::new(1, 2).unwrap();
    let mut arcs = certificate_arcs();
    arcs.pop();
    let g = graph_of(4, &arcs);
    let config = configure(&g, &arcs, &params);
    assert_eq!(
        extract_certificate(&config, &params),
        Err(CertificateError::Deficient(3))
    );
}

#[test]
fn no_root_no_certificate() {
    let params = Params::new(1, 2).unwrap();
    let arcs = [(0, 1, Blue)];
    let g = graph_of(2, &arcs);
    let config = configure(&g, &arcs, &params);
    assert!(config.search.is_none());
    assert_eq!(
        extract_certificate(&config, &params),
        Err(CertificateError::NoRoot)
    );
}

// 0 = x, 1 = v2, 2 = y, 3 = v4, 4 = v5, 5 = v6, 6 = v7, 7 = v8
fn rewire_arcs() -> Vec<Arc> {
    vec![
        (4, 5, Red),
        (5, 6, Red),
        (6, 7, Red),
        (0, 1, Red),
        (4, 3, Blue),
        (3, 0, Blue),
        (0, 2, Blue),
        (1, 7, Blue),
        (2, 7, Blue),
        (5, 7, Blue),
        (6, 4, Blue),
        (7, 4, Blue),
    ]
}

#[test]
fn rewire_lowers_residue() {
    let params = Params::new(1, 2).unwrap();
    let arcs = rewire_arcs();
    let g = graph_of(8, &arcs);
    let config = configure(&g, &arcs, &params);
    assert_eq!(config.potential.order_vector, vec![3, 0, 1, 0]);
    assert_eq!(config.potential.residue, 1);

    let mut state = config.state.clone();
    let mv = Move::Rewire {
        arc: 6,
        path: vec![4, 5],
        red_edge: 0,
    };
    mv.apply(&mut state, 1).unwrap();
    let next = Configuration::build(state, Some(&config), &params);
    assert_eq!(next.potential.residue, 0);
    assert!(next.search.is_none());
    assert!(next.potential < config.potential);

    assert_improves(&config, find_small_pair_move(&config, &params), &params);
}

#[test]
fn complete_graph_on_four_vertices() {
    let g = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let params = Params::new(1, 2).unwrap();
    for seed in 0..10 {
        let options = DecomposeOptions {
            seed,
            assert_potential: true,
            ..DecomposeOptions::default()
        };
        let report = decompose(&g, &params, &options).unwrap();
        let Outcome::Decomposition(dec) = report.outcome else {
            panic!("expected a decomposition");
        };
        assert_eq!(
            crate::verify::verify_decomposition(&g, &dec, &params),
            Ok(())
        );
    }
}

#[test]
fn single_vertex_gives_empty_parts() {
    let g = Multigraph::empty(1);
    let params = Params::new(2, 3).unwrap();
    let report = decompose(&g, &params, &DecomposeOptions::default()).unwrap();
    assert_eq!(
        report.outcome,
        Outcome::Decomposition(Decomposition {
            parts: vec![vec![], vec![], vec![]],
            special_index: 2,
        })
    );
}

#[test]
fn parallel_bundle_is_certified() {
    let g = Multigraph::new(2, std::iter::repeat_n((0, 1), 5)).unwrap();
    let params = Params::new(1, 2).unwrap();
    let report = decompose(&g, &params, &DecomposeOptions::default()).unwrap();
    let Outcome::Certificate(cert) = report.outcome else {
        panic!("expected a certificate");
    };
    assert_eq!(cert.density, Rational::from_integer(5));
    assert_eq!(cert.claimed_bound, Rational::from_integer(3));
}

#[test]
fn residue_counts_excess_edges() {
    let arcs = [
        (0, 1, Red),
        (1, 2, Red),
        (2, 3, Red),
        (3, 0, Blue),
        (4, 5, Red),
        (5, 3, Blue),
    ];
    let g = graph_of(6, &arcs);
    let state = OrientedState::from_arcs(&g, &arcs).unwrap();
    assert_eq!(residue(&state, 1), 2);
    assert_eq!(residue(&state, 2), 1);
    assert_eq!(residue(&state, 3), 0);
}

#[test]
fn troublesome_means_sparse() {
    let p = Params::new(1, 2).unwrap();
    assert!(p.is_troublesome(0, 1));
    assert!(!p.is_troublesome(1, 2));
    assert!(!p.is_troublesome(2, 3));
    let p = Params::new(3, 2).unwrap();
    // 1 / 2 < 2 / 6 is false, 0 / 1 < 1 / 3 is true
    assert!(p.is_troublesome(0, 1));
    assert!(!p.is_troublesome(1, 2));
    let p = Params::new(1, 8).unwrap();
    assert!(p.is_troublesome(1, 2));
}

#[test]
fn parameters() {
    assert!(matches!(
        Params::new(0, 2),
        Err(DecomposeError::BadParameters { k: 0, d: 2 })
    ));
    let p = Params::new(2, 4).unwrap();
    assert_eq!(p.density_bound, Rational::new(36, 7));
    assert!(p.guaranteed());
    assert!(!Params::new(1, 1).unwrap().guaranteed());
    assert!(!Params::new(1, 5).unwrap().guaranteed());
}
