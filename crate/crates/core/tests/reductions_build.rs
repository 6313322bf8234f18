use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempocc::components::{find_closed_tcc, minimal_witness, ComponentQuery, Prune, DEFAULT_BUDGET};
use tempocc::graph::{TemporalGraph, TimeEdge, Vertex};
use tempocc::mcc::{
    generate, normalize_directed, normalize_happy_undirected, normalize_strict_undirected, random_instance, GenKind,
    GenParams, MccInstance, Normalized, DEFAULT_SOLVE_BUDGET,
};
use tempocc::reach::{self, ReachMode};
use tempocc::reductions::{
    expected_witness_size, extract_clique_from_tcc, pad_count, pad_for_inapproximability, parse_roles,
    reduce_directed_happy, reduce_undirected_happy, reduce_undirected_strict, witness_from_clique, write_roles,
    Epsilon, ReductionArtifact, ReductionError, Variant, VertexRole,
};

fn planted(sizes: &[usize], seed: u64) -> (MccInstance, Vec<usize>) {
    let params = GenParams {
        class_sizes: sizes.to_vec(),
        edge_prob: 0.5,
        max_resamples: 100,
    };
    let g = generate(GenKind::PlantedYes, &params, seed).unwrap();
    (g.instance, g.planted.unwrap())
}

fn build(variant: Variant, src: &MccInstance) -> (Normalized, ReductionArtifact) {
    let nz = match variant {
        Variant::DirectedHappy => normalize_directed(src),
        Variant::UndirectedHappy => normalize_happy_undirected(src),
        Variant::UndirectedStrict => normalize_strict_undirected(src),
    };
    let a = match variant {
        Variant::DirectedHappy => reduce_directed_happy(&nz.instance),
        Variant::UndirectedHappy => reduce_undirected_happy(&nz.instance),
        Variant::UndirectedStrict => reduce_undirected_strict(&nz.instance),
    }
    .unwrap();
    (nz, a)
}

fn is_acyclic(n: usize, arcs: &[(Vertex, Vertex)]) -> bool {
    let mut indeg = vec![0; n];
    for &(_, v) in arcs {
        indeg[v] += 1;
    }
    let mut stack: Vec<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &(a, b) in arcs {
            if a == u {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == n
}

fn assert_intervals_ordered(a: &ReductionArtifact) {
    let mut last = i64::MIN;
    for i in a.intervals.iter().filter(|i| !i.is_empty()) {
        assert!(i.first > last, "{} starts at {} after {}", i.name, i.first, last);
        last = i.last;
    }
    let labels = a.graph.distinct_labels();
    assert!(labels
        .iter()
        .all(|&t| a.intervals.iter().any(|i| i.contains(t))));
}

#[test]
fn directed_four_source_vertices_give_eighteen() {
    let (src, _) = planted(&[2, 1, 1], 1);
    let (_, a) = build(Variant::DirectedHappy, &src);
    assert_eq!(a.graph.n(), 18);
    let c = a.graph.classify();
    assert!(c.happy);
    assert_eq!(c.lifetime, 11);
    assert!(a.graph.distinct_labels().iter().all(|t| (1..=11).contains(t)));
    assert_intervals_ordered(&a);
}

#[test]
fn directed_connector_gadget_is_a_dag() {
    for seed in 0..10 {
        let (src, _) = planted(&[2, 2, 1], seed);
        let (_, a) = build(Variant::DirectedHappy, &src);
        let con = a.vertices_with_role(|r| !matches!(r, VertexRole::Mcc { .. }));
        assert_eq!(con.len(), 2 * src.n() + 6);
        let sub = a.graph.induced(&con).unwrap().graph;
        let arcs: Vec<(Vertex, Vertex)> = sub.edges().iter().map(|e| (e.u, e.v)).collect();
        assert!(is_acyclic(sub.n(), &arcs));
    }
}

#[test]
fn directed_vout_vin_arcs_follow_source_edges() {
    let (src, _) = planted(&[2, 2, 2], 3);
    let (_, a) = build(Variant::DirectedHappy, &src);
    for x in 0..src.n() {
        for y in 0..src.n() {
            let arc = TimeEdge::new(a.vout[&x], a.vin[&y], 4);
            assert_eq!(a.graph.edges().contains(&arc), src.has_edge(x, y), "{x} {y}");
        }
    }
}

#[test]
fn directed_negative_pairs_do_not_reach() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let src = random_instance(&[2, 2, 2], 0.5, &mut rng);
        let a = reduce_directed_happy(&src).unwrap();
        let direct: BTreeSet<(Vertex, Vertex)> = a.graph.edges().iter().map(|e| (e.u, e.v)).collect();
        let m = reach::reachability_matrix(&a.graph, ReachMode::Strict);
        for x in 0..src.n() {
            for y in 0..src.n() {
                if x == y || direct.contains(&(x, y)) {
                    continue;
                }
                if src.has_edge(x, y) {
                    assert!(m.get(x, y));
                    let cut = a.graph.without_edge(TimeEdge::new(a.vout[&x], a.vin[&y], 4));
                    assert!(!reach::reaches(&cut, ReachMode::Strict, x, y), "{x} -> {y} survives the cut");
                } else {
                    assert!(!m.get(x, y), "{x} -> {y} without an edge");
                }
            }
        }
    }
}

#[test]
fn directed_round_trip_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut answers = [0; 2];
    for sizes in [[1, 1, 1], [2, 1, 1], [1, 2, 2], [2, 2, 1], [1, 1, 2]].iter().cycle().take(20) {
        let src = random_instance(sizes, 0.6, &mut rng);
        let a = reduce_directed_happy(&src).unwrap();
        let q = ComponentQuery::new(ReachMode::Strict, 2).with_prune(Prune::ConnectedUnderlying);
        let r = find_closed_tcc(&a.graph, &q).unwrap();
        let yes = src.solve_bruteforce(DEFAULT_SOLVE_BUDGET).unwrap().is_some();
        assert_eq!(r.witness.is_some(), yes, "{src:?}");
        answers[yes as usize] += 1;
        if let Some(w) = r.witness {
            assert!(w.contains(&a.alpha) && w.contains(&a.omega));
            let clique = extract_clique_from_tcc(&a, &w).unwrap();
            assert!(src.is_multicolored_clique(&clique));
        }
    }
    assert!(answers[0] > 0 && answers[1] > 0, "{answers:?}");
}

#[test]
fn directed_minimal_witness_yields_a_clique() {
    let (src, _) = planted(&[2, 1, 2], 8);
    let a = reduce_directed_happy(&src).unwrap();
    let w = minimal_witness(&a.graph, ReachMode::Strict, 2, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    assert!(src.is_multicolored_clique(&extract_clique_from_tcc(&a, &w).unwrap()));
}

#[test]
fn witness_sizes_match_the_formulas() {
    assert_eq!(expected_witness_size(Variant::DirectedHappy, 3, 4), 17);
    assert_eq!(expected_witness_size(Variant::UndirectedHappy, 6, 0), 366);
    assert_eq!(expected_witness_size(Variant::UndirectedStrict, 22, 0), 822);
}

#[test]
fn forward_witnesses_are_closed_components() {
    for variant in Variant::ALL {
        let (src, plant) = planted(&[2, 2, 2], 5);
        let (nz, a) = build(variant, &src);
        let clique = nz.lift_clique(&plant).unwrap();
        let w = witness_from_clique(&a, &clique).unwrap();
        let k = a.source.k();
        assert_eq!(w.len(), expected_witness_size(variant, k, a.source.n()), "{variant}");
        assert!(reach::is_tc(&a.graph, variant.mode(), &w), "{variant}");
        let back = extract_clique_from_tcc(&a, &w).unwrap();
        assert_eq!(nz.project_clique(&back), {
            let mut p = plant.clone();
            p.sort_unstable();
            p
        });
    }
}

#[test]
fn single_class_sources_hit_the_quoted_sizes() {
    let src = MccInstance::new(1, vec![1, 1], []).unwrap();
    let (nz, a) = build(Variant::UndirectedHappy, &src);
    assert_eq!(a.source.k(), 6);
    let w = witness_from_clique(&a, &nz.lift_clique(&[0]).unwrap()).unwrap();
    assert_eq!(w.len(), 366);

    let src = MccInstance::new(2, vec![1, 1, 2, 2], [(0, 2)]).unwrap();
    let (nz, a) = build(Variant::UndirectedStrict, &src);
    assert_eq!(a.source.k(), 22);
    let w = witness_from_clique(&a, &nz.lift_clique(&[0, 2]).unwrap()).unwrap();
    assert_eq!(w.len(), 822);
    assert!(reach::is_tc(&a.graph, ReachMode::Strict, &w));
}

#[test]
fn happy_undirected_structure() {
    let (src, _) = planted(&[2, 2, 2], 2);
    let (_, a) = build(Variant::UndirectedHappy, &src);
    let c = a.graph.classify();
    assert!(c.happy);
    assert_eq!(a.graph.girth(), Some(5));
    assert_intervals_ordered(&a);
    let out2edge = a.interval("out2edge-times").unwrap().clone();
    let edge2in = a.interval("edge2in-times").unwrap().clone();
    for p in a.paths.iter().filter(|p| p.dock.is_some()) {
        let dock = p.dock.unwrap();
        let VertexRole::Con { from, to } = a.roles[dock] else {
            continue;
        };
        let own: BTreeSet<Vertex> = p.vertices.iter().copied().collect();
        let mut outside: Vec<(Vertex, i64)> = a
            .graph
            .edges()
            .iter()
            .filter_map(|e| match (e.u == dock, e.v == dock) {
                (true, _) if !own.contains(&e.v) => Some((e.v, e.t)),
                (_, true) if !own.contains(&e.u) => Some((e.u, e.t)),
                _ => None,
            })
            .collect();
        outside.sort_by_key(|&(_, t)| t);
        assert_eq!(outside.len(), 2);
        assert_eq!(outside[0].0, a.vout[&from]);
        assert!(out2edge.contains(outside[0].1));
        assert_eq!(outside[1].0, a.vin[&to]);
        assert!(edge2in.contains(outside[1].1));
    }
    assert_eq!(a.paths.iter().filter(|p| p.dock.is_some()).count(), a.vin.len() + a.vout.len() + a.vcon.len());
}

#[test]
fn happy_vcon_only_for_distant_classes() {
    let (src, _) = planted(&[2, 2, 2], 4);
    let (_, a) = build(Variant::UndirectedHappy, &src);
    let s = &a.source;
    let expected = s
        .edges()
        .filter(|&(x, y)| s.color(x).abs_diff(s.color(y)) >= 2)
        .count();
    assert_eq!(a.vcon.len(), expected);
    for &(hi, lo) in a.vcon.keys() {
        assert!(s.color(hi) >= s.color(lo) + 2 && s.has_edge(hi, lo));
    }
}

#[test]
fn strict_structure() {
    let (src, _) = planted(&[2, 2, 2], 6);
    let (_, a) = build(Variant::UndirectedStrict, &src);
    let c = a.graph.classify();
    assert!(c.simple);
    assert_eq!(c.label_count, 55);
    assert_eq!(a.graph.min_label(), Some(1));
    assert!(a.graph.girth().unwrap() >= 4);
    assert!(!a.graph.underlying().has_triangle());
    assert_intervals_ordered(&a);
    let (al, al2) = (a.alpha, a.alpha_prime.unwrap());
    let (om, om2) = (a.omega, a.omega_prime.unwrap());
    assert!(!a.vout.contains_key(&al) && !a.vout.contains_key(&al2));
    assert!(!a.vin.contains_key(&om) && !a.vin.contains_key(&om2));
    let out2in = a.interval("out2in-time").unwrap().first;
    let outs: BTreeSet<Vertex> = a.vout.values().copied().collect();
    for e in a.graph.edges().iter().filter(|e| e.t == out2in) {
        let (o, i) = if outs.contains(&e.u) { (e.u, e.v) } else { (e.v, e.u) };
        let VertexRole::Out(x) = a.roles[o] else { panic!("{e:?}") };
        let VertexRole::In(y) = a.roles[i] else { panic!("{e:?}") };
        assert!(a.source.has_edge(x, y));
    }
}

#[test]
fn strict_single_label_intervals() {
    let (src, _) = planted(&[1, 2], 0);
    let (_, a) = build(Variant::UndirectedStrict, &src);
    let lens: Vec<(String, usize)> = a.intervals.iter().map(|i| (i.name.clone(), i.len())).collect();
    let expected = [
        ("red-times", 19),
        ("alpha-time", 1),
        ("out-time", 1),
        ("out2in-time", 1),
        ("selection-times", 12),
        ("in-time", 1),
        ("omega-time", 1),
        ("blue-times", 19),
    ];
    assert_eq!(lens, expected.map(|(n, l)| (n.to_string(), l)));
}

#[test]
fn invalid_sources_are_rejected() {
    let even = MccInstance::new(2, vec![1, 2], [(0, 1)]).unwrap();
    assert!(matches!(reduce_directed_happy(&even), Err(ReductionError::InvalidInstance(_))));
    let raw = MccInstance::new(3, vec![1, 2, 3], [(0, 1)]).unwrap();
    assert!(reduce_undirected_happy(&raw).is_err());
    assert!(reduce_undirected_strict(&raw).is_err());
}

#[test]
fn extraction_rejects_bad_sets() {
    let (src, plant) = planted(&[2, 1, 2], 2);
    let a = reduce_directed_happy(&src).unwrap();
    let cut = [a.alpha, a.vin[&0], a.vout[&0]];
    assert_eq!(extract_clique_from_tcc(&a, &cut), Err(ReductionError::NotTc));
    assert!(matches!(
        extract_clique_from_tcc(&a, &[a.alpha]),
        Err(ReductionError::TooSmall { size: 1, threshold: 2 })
    ));
    assert_eq!(extract_clique_from_tcc(&a, &[999, 0]), Err(ReductionError::UnknownVertex(999)));
    let mut not_clique = plant.clone();
    not_clique.pop();
    assert_eq!(witness_from_clique(&a, &not_clique), Err(ReductionError::NotAClique));
}

#[test]
fn role_file_round_trip() {
    for variant in Variant::ALL {
        let (src, _) = planted(&[2, 1, 2], 9);
        let (_, a) = build(variant, &src);
        let text = write_roles(&a);
        let table = parse_roles(&text).unwrap();
        assert_eq!(table.variant, variant);
        assert_eq!(table.roles, a.roles);
        assert_eq!(table.intervals, a.intervals);
    }
    assert!(parse_roles("variant directed\nrole 0 alpha\nrole 0 omega\n").is_err());
    assert!(parse_roles("role 0 alpha\n").is_err());
}

#[test]
fn pad_counts_for_four_source_vertices() {
    let half = Epsilon::new(1, 2).unwrap();
    let tenth = Epsilon::new(1, 10).unwrap();
    assert_eq!(pad_count(14, 18, 1, half), 0);
    assert_eq!(pad_count(14, 18, 1, tenth), 22);
    let (src, _) = planted(&[2, 1, 1], 1);
    let a = reduce_directed_happy(&src).unwrap();
    assert_eq!(pad_for_inapproximability(&a, half).unwrap().pads, 0);
    let padded = pad_for_inapproximability(&a, tenth).unwrap();
    assert_eq!(padded.pads, 22);
    assert_eq!(padded.graph.n(), 40);
    assert!(padded.graph.classify().happy);
}

#[test]
fn epsilon_parsing() {
    assert_eq!("0.15".parse::<Epsilon>().unwrap(), Epsilon::new(3, 20).unwrap());
    assert_eq!("1/4".parse::<Epsilon>().unwrap(), Epsilon::new(1, 4).unwrap());
    assert!("1".parse::<Epsilon>().is_err());
    assert!("0".parse::<Epsilon>().is_err());
    assert!("x".parse::<Epsilon>().is_err());
}

#[test]
fn padding_keeps_the_answer_on_small_directed_instances() {
    let eps = Epsilon::new(3, 20).unwrap();
    for seed in 0..4 {
        let no = generate(GenKind::RandomNo, &GenParams::uniform(3, 1, 0.5), seed).unwrap().instance;
        let yes = planted(&[1, 1, 1], seed).0;
        for (src, expect) in [(no, false), (yes, true)] {
            let a = pad_for_inapproximability(&reduce_directed_happy(&src).unwrap(), eps).unwrap();
            assert_eq!(a.pads, 5);
            let q = ComponentQuery::new(ReachMode::Strict, 2).with_prune(Prune::ConnectedUnderlying);
            assert_eq!(find_closed_tcc(&a.graph, &q).unwrap().witness.is_some(), expect);
        }
    }
}

#[test]
fn undirected_padding_adds_whole_paths() {
    let (src, plant) = planted(&[2, 2], 3);
    let (nz, a) = build(Variant::UndirectedStrict, &src);
    let padded = pad_for_inapproximability(&a, Epsilon::new(1, 100).unwrap()).unwrap();
    assert!(padded.pads > 0);
    assert_eq!(padded.graph.n(), a.graph.n() + 20 * padded.pads);
    let gadget = padded.connector_gadget().len();
    assert!(100 * gadget >= 99 * padded.graph.n());
    assert!(100 * a.connector_gadget().len() < 99 * a.graph.n());
    let w = witness_from_clique(&padded, &nz.lift_clique(&plant).unwrap()).unwrap();
    assert!(reach::is_tc(&padded.graph, ReachMode::Strict, &w));
    let g: &TemporalGraph = &padded.graph;
    assert!(g.classify().simple);
}
