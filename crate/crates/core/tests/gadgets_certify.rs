mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempocc::gadgets::{
    certify_no_nontrivial_tcc, check_tc_edge_bound, connector_path, default_connector_path, extend_connector_path,
    find_tc_graph_of_girth, girth_five_fallback, sample_double_hamiltonian, tc_labeling_from_disjoint_spanning,
    ConnectorPath, EdgeBound, Extension, GadgetError, BLUE_PATH,
};
use tempocc::graph::{Orientation, StaticGraph, TemporalGraph, TimeEdge, Vertex};
use tempocc::reach::{self, ReachMode};

fn red_blue_pairs() -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let red = (1..20).map(|i| (i, i + 1)).collect();
    let blue = BLUE_PATH.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    (red, blue)
}

/// A random spanning tree on `0..n` avoiding the edges in `avoid`, grown by
/// attaching vertices in random order to random earlier ones.
fn random_tree(n: usize, avoid: &[(Vertex, Vertex)], rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut tree = Vec::new();
    for i in 1..n {
        let v = order[i];
        let options: Vec<Vertex> = order[..i]
            .iter()
            .copied()
            .filter(|&u| !avoid.contains(&(u.min(v), u.max(v))))
            .collect();
        let &u = options.choose(rng)?;
        tree.push((u.min(v), u.max(v)));
    }
    Some(tree)
}

#[test]
fn red_and_blue_paths_are_edge_disjoint_hamiltonian() {
    let (red, blue) = red_blue_pairs();
    assert!(red.iter().all(|e| !blue.contains(e)));
    let mut visited = BLUE_PATH.to_vec();
    visited.sort_unstable();
    assert_eq!(visited, (1..=20).collect::<Vec<_>>());
    assert_eq!((BLUE_PATH[0], BLUE_PATH[19]), (1, 20));
    let p = default_connector_path();
    assert_eq!(p.graph.time_edge_count(), 38);
    assert!(p.graph.classify().happy);
    assert_eq!(p.graph.girth(), Some(5));
}

#[test]
fn default_label_windows() {
    let p = default_connector_path();
    assert_eq!(p.max_red(), 19);
    let labels = p.graph.distinct_labels();
    assert_eq!(labels.iter().filter(|&&t| t > 19).min(), Some(&41));
    assert_eq!(labels.iter().max(), Some(&59));
    assert_eq!(
        connector_path(5, 23).unwrap_err(),
        GadgetError::LabelWindowsOverlap { red_start: 5, blue_start: 23 }
    );
}

#[test]
fn red_label_is_the_smaller_endpoint() {
    let g = default_connector_path().graph;
    for e in g.edges() {
        let (a, b) = (e.u.min(e.v) + 1, e.u.max(e.v) + 1);
        if b == a + 1 && e.t < 20 {
            assert_eq!(e.t, a as i64);
        }
    }
}

#[test]
fn late_vertices_never_reach_early_ones() {
    let g = default_connector_path().graph;
    for mode in ReachMode::ALL {
        let m = reach::reachability_matrix(&g, mode);
        for s in [17, 18, 19, 20] {
            for t in [1, 2, 5, 7] {
                assert!(!m.get(ConnectorPath::vertex(s), ConnectorPath::vertex(t)), "{s} -> {t}");
            }
        }
    }
}

#[test]
fn connector_path_is_certified() {
    let c = certify_no_nontrivial_tcc(&default_connector_path().graph, ReachMode::Strict, 3, 26, 1).unwrap();
    assert!(c.certified && c.witness.is_none());
    assert_eq!(c.subsets_examined, (1 << 20) - 1 - 20 - 190);
    assert!(c.pruned_examined < c.subsets_examined);
}

#[test]
fn extensions_are_certified() {
    for ext in Extension::ALL {
        let g = extend_connector_path(ext, &ext.default_labels()).unwrap();
        let c = certify_no_nontrivial_tcc(&g, ReachMode::Strict, 3, 26, 1).unwrap();
        assert!(c.certified, "{}", ext.name());
    }
}

#[test]
fn extension_shapes() {
    assert_eq!(Extension::G1.default_labels(), vec![30, 31]);
    assert_eq!(Extension::G4.default_labels(), vec![30, 31, 32]);
    let sizes: Vec<usize> = Extension::ALL
        .iter()
        .map(|&e| extend_connector_path(e, &e.default_labels()).unwrap().n())
        .collect();
    assert_eq!(sizes, vec![21, 22, 21, 22]);
    let g1 = extend_connector_path(Extension::G1, &[30, 31]).unwrap();
    let alpha = 20;
    assert!(g1.edges().contains(&TimeEdge::new(19, alpha, 30)) || g1.edges().contains(&TimeEdge::new(alpha, 19, 30)));
    assert!(extend_connector_path(Extension::G4, &[30, 32, 31]).is_err());
    assert!(extend_connector_path(Extension::G3, &[10, 11]).is_err());
    assert!(extend_connector_path(Extension::G2, &[30, 31]).is_err());
}

#[test]
fn triangle_is_not_certified() {
    let c = certify_no_nontrivial_tcc(&rotating_triangle(), ReachMode::Strict, 3, 26, 1).unwrap();
    assert!(!c.certified);
    assert_eq!(c.witness, Some(vec![0, 1, 2]));
}

#[test]
fn certification_respects_the_budget() {
    let g = TemporalGraph::empty(Orientation::Undirected, 27);
    assert!(matches!(
        certify_no_nontrivial_tcc(&g, ReachMode::Strict, 3, 26, 1),
        Err(GadgetError::Search(_))
    ));
}

#[test]
fn fallback_is_happy_tc_with_girth_five() {
    let start = std::time::Instant::now();
    let g = girth_five_fallback();
    assert_eq!(g.n(), 20);
    assert!(g.classify().happy);
    assert!(reach::is_temporally_connected(&g, ReachMode::Strict));
    assert_eq!(g.girth(), Some(5));
    assert!(start.elapsed().as_secs_f64() < 1.0);
    let (red, _) = red_blue_pairs();
    for (a, b) in red {
        let t = g
            .edges()
            .iter()
            .find(|e| (e.u.min(e.v), e.u.max(e.v)) == (a - 1, b - 1))
            .unwrap()
            .t;
        assert_eq!(t, 20 - a as i64, "red edge {a}-{b} gathers towards 1");
    }
}

#[test]
fn same_tree_twice_is_rejected() {
    let g = StaticGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
    let t = [(0, 1), (1, 2)];
    assert_eq!(
        tc_labeling_from_disjoint_spanning(&g, &t, &t, 0),
        Err(GadgetError::NotEdgeDisjoint(0, 1))
    );
    assert!(matches!(
        tc_labeling_from_disjoint_spanning(&g, &[(0, 1)], &[(1, 2)], 0),
        Err(GadgetError::NotSpanning { .. })
    ));
}

#[test]
fn two_hundred_random_spanning_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut done = 0;
    while done < 200 {
        let n = rng.gen_range(2..=12);
        let Some(t1) = random_tree(n, &[], &mut rng) else { continue };
        let Some(t2) = random_tree(n, &t1, &mut rng) else { continue };
        let mut g = StaticGraph::from_edges(n, t1.iter().chain(&t2).copied());
        for _ in 0..rng.gen_range(0..n) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                g.add_edge(u, v);
            }
        }
        let root = rng.gen_range(0..n);
        let tg = tc_labeling_from_disjoint_spanning(&g, &t1, &t2, root).unwrap();
        assert!(tg.classify().happy);
        assert!(reach::is_temporally_connected(&tg, ReachMode::Strict));
        assert_eq!(tg.time_edge_count(), g.edge_count());
        done += 1;
    }
}

#[test]
fn five_vertices_give_k5() {
    for seed in 0..5 {
        let d = sample_double_hamiltonian(5, seed, 1000).unwrap();
        assert_eq!(d.graph.edge_count(), 10);
        assert!([vec![0, 2, 4, 1, 3], vec![0, 3, 1, 4, 2]].contains(&d.cycle_b));
        let tg = d.tc_labeling();
        assert!(tg.classify().happy && reach::is_temporally_connected(&tg, ReachMode::Strict));
    }
    assert!(matches!(sample_double_hamiltonian(4, 0, 10), Err(GadgetError::TooSmall { n: 4, min: 5 })));
}

#[test]
fn girth_four_search_on_twenty_vertices() {
    let one = find_tc_graph_of_girth(4, 20, 1, 10_000, 1).unwrap();
    assert_eq!(one.attempts, 149);
    let g = one.graph.as_ref().unwrap();
    assert!(g.classify().happy);
    assert!(reach::is_temporally_connected(g, ReachMode::Strict));
    assert!(g.girth().unwrap() >= 4);
    let three = find_tc_graph_of_girth(4, 20, 1, 10_000, 3).unwrap();
    assert_eq!(three.attempts, one.attempts);
    assert_eq!(three.structure, one.structure);
}

#[test]
fn exhausted_search_reports_the_budget() {
    let r = find_tc_graph_of_girth(5, 20, 1, 50, 1).unwrap();
    assert!(r.graph.is_none());
    assert_eq!(r.attempts, 50);
    assert!(find_tc_graph_of_girth(3, 20, 1, 10, 1).is_err());
}

#[test]
fn edge_bound_on_generated_graphs() {
    let g = girth_five_fallback();
    let EdgeBound::Checked { n, time_edges, holds, size_holds } = check_tc_edge_bound(&g).unwrap() else {
        panic!("fallback is TC and C4-free");
    };
    assert_eq!((n, time_edges), (20, 38));
    assert!(holds && size_holds);
    assert!(matches!(
        check_tc_edge_bound(&default_connector_path().graph).unwrap(),
        EdgeBound::NotApplicable { .. }
    ));
    let directed = TemporalGraph::new(Orientation::Directed, 2, vec![TimeEdge::new(0, 1, 1)]).unwrap();
    assert!(check_tc_edge_bound(&directed).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_hamiltonian_is_four_regular(n in 5usize..40, seed in any::<u64>()) {
        let d = sample_double_hamiltonian(n, seed, 100_000).unwrap();
        prop_assert!((0..n).all(|v| d.graph.degree(v) == 4));
        prop_assert_eq!(d.graph.edge_count(), 2 * n);
        let mut b = d.cycle_b.clone();
        b.sort_unstable();
        prop_assert_eq!(b, (0..n).collect::<Vec<_>>());
        let tg = d.tc_labeling();
        prop_assert!(tg.classify().happy);
        prop_assert!(reach::is_temporally_connected(&tg, ReachMode::Strict));
        if let EdgeBound::Checked { holds, size_holds, .. } = check_tc_edge_bound(&tg).unwrap() {
            prop_assert!(holds && size_holds);
        }
    }

    #[test]
    fn shifted_connector_paths_stay_certifiable(red in -30i64..30, gap in 0i64..10) {
        let p = connector_path(red, red + 19 + gap).unwrap();
        prop_assert!(p.graph.classify().happy);
        let m = reach::reachability_matrix(&p.graph, ReachMode::Strict);
        prop_assert_eq!(m, reach::reachability_matrix(&default_connector_path().graph, ReachMode::Strict));
    }
}
