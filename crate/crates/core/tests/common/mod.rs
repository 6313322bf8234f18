#![allow(dead_code)]

use proptest::prelude::*;
use tempocc::graph::{Label, Orientation, TemporalGraph, TimeEdge, Vertex};
use tempocc::reach::ReachMode;

/// Random temporal graph with up to `max_n` vertices and `max_m` time-edges,
/// labels drawn from `1..=max_label`.
pub fn arb_graph(max_n: usize, max_m: usize, max_label: Label) -> impl Strategy<Value = TemporalGraph> {
    (1..=max_n, any::<bool>()).prop_flat_map(move |(n, directed)| {
        let edge = (0..n, 0..n, 1..=max_label);
        proptest::collection::vec(edge, 0..=max_m).prop_map(move |raw| {
            let orientation = if directed {
                Orientation::Directed
            } else {
                Orientation::Undirected
            };
            let edges: Vec<TimeEdge> = raw
                .into_iter()
                .filter(|&(u, v, _)| u != v)
                .map(|(u, v, t)| TimeEdge::new(u, v, t))
                .collect();
            TemporalGraph::new(orientation, n, edges).expect("endpoints in range")
        })
    })
}

/// Arcs `(from, to, label)` with undirected edges in both directions.
pub fn arcs(g: &TemporalGraph) -> Vec<(Vertex, Vertex, Label)> {
    let mut out = Vec::new();
    for e in g.edges() {
        out.push((e.u, e.v, e.t));
        if !g.is_directed() {
            out.push((e.v, e.u, e.t));
        }
    }
    out
}

/// Depth-first enumeration of every label-monotone path from `u`; returns the
/// set of vertices some path ends at.
pub fn oracle_reachable(g: &TemporalGraph, mode: ReachMode, u: Vertex) -> Vec<bool> {
    let arcs = arcs(g);
    let mut seen = vec![false; g.n()];
    let mut on_path = vec![false; g.n()];
    fn walk(
        arcs: &[(Vertex, Vertex, Label)],
        mode: ReachMode,
        at: Vertex,
        last: Option<Label>,
        seen: &mut [bool],
        on_path: &mut [bool],
    ) {
        seen[at] = true;
        on_path[at] = true;
        for &(a, b, t) in arcs {
            if a != at || on_path[b] {
                continue;
            }
            let ok = match (last, mode) {
                (None, _) => true,
                (Some(l), ReachMode::Strict) => t > l,
                (Some(l), ReachMode::NonStrict) => t >= l,
            };
            if ok {
                walk(arcs, mode, b, Some(t), seen, on_path);
            }
        }
        on_path[at] = false;
    }
    walk(&arcs, mode, u, None, &mut seen, &mut on_path);
    seen
}

pub fn oracle_matrix(g: &TemporalGraph, mode: ReachMode) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| oracle_reachable(g, mode, u)).collect()
}

/// Closed temporal connectivity of `s` by path enumeration inside `s`.
pub fn oracle_is_tc(g: &TemporalGraph, mode: ReachMode, s: &[Vertex]) -> bool {
    let sub = g.induced(s).expect("vertices in range").graph;
    oracle_matrix(&sub, mode).iter().all(|row| row.iter().all(|&b| b))
}

/// Girth of the underlying simple graph by deleting each edge in turn and
/// measuring the BFS distance between its endpoints.
pub fn oracle_girth(n: usize, edges: &[(Vertex, Vertex)]) -> Option<usize> {
    let mut simple: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    simple.sort_unstable();
    simple.dedup();
    let mut best: Option<usize> = None;
    for (i, &(s, t)) in simple.iter().enumerate() {
        let mut adj = vec![Vec::new(); n];
        for (j, &(a, b)) in simple.iter().enumerate() {
            if j != i {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[t] != usize::MAX {
            let len = dist[t] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}

/// Every vertex subset of `0..n` as a sorted list, smallest first.
pub fn all_subsets(n: usize) -> Vec<Vec<Vertex>> {
    let mut out: Vec<Vec<Vertex>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a: &Vec<Vertex>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// The three-vertex strict example: `{c,a}@1, {a,b}@2, {b,c}@3` with
/// `a, b, c = 0, 1, 2`.
pub fn rotating_triangle() -> TemporalGraph {
    TemporalGraph::new(
        Orientation::Undirected,
        3,
        vec![TimeEdge::new(2, 0, 1), TimeEdge::new(0, 1, 2), TimeEdge::new(1, 2, 3)],
    )
    .unwrap()
}
