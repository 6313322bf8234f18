//! Connector paths, their extensions, exhaustive certification, and the
//! search for happy temporally connected graphs of large girth.

use std::collections::{BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::components::{self, ComponentQuery, Prune, SearchError};
use crate::graph::{GraphBuilder, Label, Orientation, StaticGraph, TemporalGraph, TimeEdge, Vertex};
use crate::reach::{self, ReachMode};

/// Visiting order of the blue Hamiltonian path, 1-based.
pub const BLUE_PATH: [usize; 20] = [1, 5, 9, 13, 2, 7, 11, 19, 14, 6, 17, 10, 3, 15, 8, 18, 4, 12, 16, 20];
pub const PATH_LEN: usize = 20;
/// The path vertex identified with the vertex a path is attached to.
pub const DOCK: usize = 8;
pub const DEFAULT_RED_START: Label = 1;
pub const DEFAULT_BLUE_START: Label = 41;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("blue labels starting at {blue_start} overlap red labels starting at {red_start}")]
    LabelWindowsOverlap { red_start: Label, blue_start: Label },
    #[error("labels {labels:?} must increase strictly between {above} and {below}")]
    LabelOrder { labels: Vec<Label>, above: Label, below: Label },
    #[error("{which} is not a spanning tree: {reason}")]
    NotSpanning { which: &'static str, reason: String },
    #[error("the two spanning structures share the edge {0}-{1}")]
    NotEdgeDisjoint(Vertex, Vertex),
    #[error("need at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("no edge-disjoint second cycle after {0} resamples")]
    ResampleLimit(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pruned and unpruned searches disagree")]
    PruneMismatch,
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Two edge-disjoint Hamiltonian paths from 1 to 20, the red one labelled
/// before the blue one.
#[derive(Clone, Debug)]
pub struct ConnectorPath {
    pub graph: TemporalGraph,
    pub red_start: Label,
    pub blue_start: Label,
}

impl ConnectorPath {
    /// Graph id of path vertex `i` (1-based).
    pub fn vertex(i: usize) -> Vertex {
        i - 1
    }

    pub fn max_red(&self) -> Label {
        self.red_start + 18
    }
}

fn check_windows(red_start: Label, blue_start: Label) -> Result<(), GadgetError> {
    match red_start.checked_add(19) {
        Some(end) if blue_start >= end => Ok(()),
        _ => Err(GadgetError::LabelWindowsOverlap { red_start, blue_start }),
    }
}

/// Appends a connector path to `b` and returns its vertices in path order
/// `1..=20`. With `dock`, that vertex plays the role of path vertex 8.
pub fn add_connector_path(
    b: &mut GraphBuilder,
    dock: Option<Vertex>,
    red_start: Label,
    blue_start: Label,
    prefix: &str,
) -> [Vertex; PATH_LEN] {
    let mut ids = [0; PATH_LEN];
    for (i, id) in ids.iter_mut().enumerate() {
        *id = match dock {
            Some(d) if i + 1 == DOCK => d,
            _ => b.add_vertex(format!("{prefix}{}", i + 1)),
        };
    }
    for i in 0..PATH_LEN - 1 {
        b.add_edge(ids[i], ids[i + 1], red_start + i as Label);
    }
    for (j, w) in BLUE_PATH.windows(2).enumerate() {
        b.add_edge(ids[w[0] - 1], ids[w[1] - 1], blue_start + j as Label);
    }
    ids
}

pub fn connector_path(red_start: Label, blue_start: Label) -> Result<ConnectorPath, GadgetError> {
    check_windows(red_start, blue_start)?;
    let mut b = GraphBuilder::new(Orientation::Undirected);
    add_connector_path(&mut b, None, red_start, blue_start, "");
    Ok(ConnectorPath {
        graph: b.build().expect("valid connector path"),
        red_start,
        blue_start,
    })
}

pub fn default_connector_path() -> ConnectorPath {
    connector_path(DEFAULT_RED_START, DEFAULT_BLUE_START).expect("default windows are disjoint")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    /// Sink edge `{20, α}` then `{8, α}`.
    G1,
    /// Path `20, α, α', 8`.
    G2,
    /// `{ω, 8}` then `{ω, 1}`.
    G3,
    /// Path `8, ω', ω, 1`.
    G4,
}

impl Extension {
    pub const ALL: [Extension; 4] = [Extension::G1, Extension::G2, Extension::G3, Extension::G4];

    pub fn default_labels(self) -> Vec<Label> {
        match self {
            Extension::G1 | Extension::G3 => vec![30, 31],
            Extension::G2 | Extension::G4 => vec![30, 31, 32],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Extension::G1 => "g1",
            Extension::G2 => "g2",
            Extension::G3 => "g3",
            Extension::G4 => "g4",
        }
    }
}

/// The default connector path plus the extension's vertices; `labels` are
/// listed in their required increasing order.
pub fn extend_connector_path(ext: Extension, labels: &[Label]) -> Result<TemporalGraph, GadgetError> {
    let above = DEFAULT_RED_START + 18;
    let below = DEFAULT_BLUE_START;
    let expected = ext.default_labels().len();
    let ordered = labels.len() == expected
        && labels.first().is_some_and(|&l| l > above)
        && labels.last().is_some_and(|&l| l < below)
        && labels.windows(2).all(|w| w[0] < w[1]);
    if !ordered {
        return Err(GadgetError::LabelOrder {
            labels: labels.to_vec(),
            above,
            below,
        });
    }
    let mut b = GraphBuilder::new(Orientation::Undirected);
    let p = add_connector_path(&mut b, None, DEFAULT_RED_START, DEFAULT_BLUE_START, "");
    let (first, sink, dock) = (p[0], p[PATH_LEN - 1], p[DOCK - 1]);
    match ext {
        Extension::G1 => {
            let a = b.add_vertex("alpha");
            b.add_edge(sink, a, labels[0]);
            b.add_edge(dock, a, labels[1]);
        }
        Extension::G2 => {
            let a = b.add_vertex("alpha");
            let a2 = b.add_vertex("alpha'");
            b.add_edge(sink, a, labels[0]);
            b.add_edge(a, a2, labels[1]);
            b.add_edge(a2, dock, labels[2]);
        }
        Extension::G3 => {
            let w = b.add_vertex("omega");
            b.add_edge(w, dock, labels[0]);
            b.add_edge(w, first, labels[1]);
        }
        Extension::G4 => {
            let w = b.add_vertex("omega");
            let w2 = b.add_vertex("omega'");
            b.add_edge(w2, dock, labels[0]);
            b.add_edge(w2, w, labels[1]);
            b.add_edge(w, first, labels[2]);
        }
    }
    Ok(b.build().expect("valid extension"))
}

#[derive(Clone, Debug)]
pub struct Certificate {
    /// No closed component of size at least `min_size` exists.
    pub certified: bool,
    pub witness: Option<Vec<Vertex>>,
    pub min_size: usize,
    pub subsets_examined: u64,
    pub pruned_examined: u64,
    pub pruned_count: u64,
    pub elapsed: Duration,
}

/// Exhaustive search for a closed component of size at least `min_size`,
/// run with and without connectivity pruning; the two runs must agree.
pub fn certify_no_nontrivial_tcc(
    g: &TemporalGraph,
    mode: ReachMode,
    min_size: usize,
    budget: usize,
    workers: usize,
) -> Result<Certificate, GadgetError> {
    let start = Instant::now();
    let q = ComponentQuery::new(mode, min_size)
        .with_budget(budget)
        .with_workers(workers);
    let full = components::find_closed_tcc(g, &q)?;
    let pruned = components::find_closed_tcc(g, &q.clone().with_prune(Prune::ConnectedUnderlying))?;
    if full.witness != pruned.witness {
        return Err(GadgetError::PruneMismatch);
    }
    Ok(Certificate {
        certified: full.exhaustive,
        witness: full.witness,
        min_size,
        subsets_examined: full.subsets_examined,
        pruned_examined: pruned.subsets_examined,
        pruned_count: pruned.pruned_count,
        elapsed: start.elapsed(),
    })
}

/// BFS order of a spanning tree from `root`, with each vertex's parent.
fn tree_order(
    n: usize,
    edges: &[(Vertex, Vertex)],
    root: Vertex,
    which: &'static str,
) -> Result<Vec<(Vertex, Vertex)>, GadgetError> {
    let fail = |reason: String| GadgetError::NotSpanning { which, reason };
    if edges.len() + 1 != n {
        return Err(fail(format!("{} edges for {n} vertices", edges.len())));
    }
    let t = StaticGraph::from_edges(n, edges.iter().copied());
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut order = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push((w, u));
                queue.push_back(w);
            }
        }
    }
    if order.len() + 1 != n {
        return Err(fail("not connected".into()));
    }
    Ok(order)
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// Labels `t1` so that everything gathers at `root`, then `t2` with larger
/// labels so that `root` broadcasts to everything. Remaining edges of `g`
/// get fresh labels after both.
pub fn tc_labeling_from_disjoint_spanning(
    g: &StaticGraph,
    t1: &[(Vertex, Vertex)],
    t2: &[(Vertex, Vertex)],
    root: Vertex,
) -> Result<TemporalGraph, GadgetError> {
    let n = g.n();
    if root >= n {
        return Err(GadgetError::Precondition(format!("root {root} outside the graph")));
    }
    for (which, t) in [("first structure", t1), ("second structure", t2)] {
        if let Some(&(u, v)) = t.iter().find(|&&(u, v)| u >= n || v >= n || !g.has_edge(u, v)) {
            return Err(GadgetError::NotSpanning {
                which,
                reason: format!("{u}-{v} is not an edge of the graph"),
            });
        }
    }
    let first: BTreeSet<_> = t1.iter().map(|&(u, v)| key(u, v)).collect();
    if let Some(&(u, v)) = t2.iter().find(|&&(u, v)| first.contains(&key(u, v))) {
        return Err(GadgetError::NotEdgeDisjoint(u.min(v), u.max(v)));
    }
    let gather = tree_order(n, t1, root, "first structure")?;
    let broadcast = tree_order(n, t2, root, "second structure")?;
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut used = BTreeSet::new();
    for (i, &(child, parent)) in gather.iter().enumerate() {
        edges.push(TimeEdge::new(child, parent, (n - 1 - i) as Label));
        used.insert(key(child, parent));
    }
    for (i, &(child, parent)) in broadcast.iter().enumerate() {
        edges.push(TimeEdge::new(parent, child, (n + i) as Label));
        used.insert(key(child, parent));
    }
    let mut next = (2 * n - 1) as Label;
    for (u, v) in g.edges() {
        if !used.contains(&(u, v)) {
            edges.push(TimeEdge::new(u, v, next));
            next += 1;
        }
    }
    Ok(TemporalGraph::new(Orientation::Undirected, n, edges).expect("edges of g"))
}

/// The connector-path structure relabelled to gather into vertex 1 along
/// the red path and broadcast along the blue path: happy, temporally
/// connected, girth 5.
pub fn girth_five_fallback() -> TemporalGraph {
    let red: Vec<_> = (0..PATH_LEN - 1).map(|i| (i, i + 1)).collect();
    let blue: Vec<_> = BLUE_PATH.windows(2).map(|w| (w[0] - 1, w[1] - 1)).collect();
    let g = StaticGraph::from_edges(PATH_LEN, red.iter().chain(&blue).copied());
    let names = (0..PATH_LEN).map(|i| (i, (i + 1).to_string()));
    tc_labeling_from_disjoint_spanning(&g, &red, &blue, 0)
        .expect("red and blue paths are disjoint spanning paths")
        .with_names(names)
        .expect("names in range")
}

/// A 4-regular graph formed by two edge-disjoint Hamiltonian cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleHamiltonian {
    pub graph: StaticGraph,
    /// The cycle `0, 1, ..., n-1`.
    pub cycle_a: Vec<Vertex>,
    /// A random cyclic order starting at vertex 0.
    pub cycle_b: Vec<Vertex>,
}

impl DoubleHamiltonian {
    fn from_cycles(n: usize, cycle_b: Vec<Vertex>) -> Self {
        let cycle_a: Vec<Vertex> = (0..n).collect();
        let mut graph = StaticGraph::new(n);
        for c in [&cycle_a, &cycle_b] {
            for i in 0..n {
                graph.add_edge(c[i], c[(i + 1) % n]);
            }
        }
        DoubleHamiltonian {
            graph,
            cycle_a,
            cycle_b,
        }
    }

    /// Happy temporally connected labelling through vertex 0, with each
    /// cycle opened at 0.
    pub fn tc_labeling(&self) -> TemporalGraph {
        let path = |c: &[Vertex]| c.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>();
        tc_labeling_from_disjoint_spanning(&self.graph, &path(&self.cycle_a), &path(&self.cycle_b), 0)
            .expect("disjoint Hamiltonian paths")
    }
}

fn attempt_rng(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}

/// A random cyclic order starting at 0 that avoids every edge `{i, i+1}`.
/// The order is drawn front to back and restarted as soon as a step lands
/// on such an edge.
fn sample_second_cycle(n: usize, rng: &mut ChaCha8Rng, max_resamples: usize) -> Option<Vec<Vertex>> {
    let adjacent = |a: Vertex, b: Vertex| {
        let d = a.abs_diff(b);
        d == 1 || d == n - 1
    };
    let mut order: Vec<Vertex> = (0..n).collect();
    'retry: for _ in 0..max_resamples {
        for i in 1..n {
            let j = rng.gen_range(i..n);
            order.swap(i, j);
            if adjacent(order[i - 1], order[i]) {
                continue 'retry;
            }
        }
        if !adjacent(order[n - 1], order[0]) {
            return Some(order);
        }
    }
    None
}

pub fn sample_double_hamiltonian(n: usize, seed: u64, max_resamples: usize) -> Result<DoubleHamiltonian, GadgetError> {
    if n < 5 {
        return Err(GadgetError::TooSmall { n, min: 5 });
    }
    let mut rng = attempt_rng(seed, 0);
    let cycle = sample_second_cycle(n, &mut rng, max_resamples).ok_or(GadgetError::ResampleLimit(max_resamples))?;
    Ok(DoubleHamiltonian::from_cycles(n, cycle))
}

/// Whether the union of the two cycles has girth at least `g`. Triangles
/// and 4-cycles are found locally from each vertex's four neighbours.
fn union_girth_at_least(n: usize, cycle: &[Vertex], g: usize) -> bool {
    if g >= 6 {
        let graph = DoubleHamiltonian::from_cycles(n, cycle.to_vec()).graph;
        return graph.girth_below(g).map_or(true, |x| x >= g);
    }
    let mut pos = vec![0; n];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let nbrs = |v: Vertex| {
        let p = pos[v];
        [(v + n - 1) % n, (v + 1) % n, cycle[(p + n - 1) % n], cycle[(p + 1) % n]]
    };
    for u in 0..n {
        let around = nbrs(u);
        let mut ends = [usize::MAX; 12];
        let mut len = 0;
        for a in around {
            for w in nbrs(a) {
                if w == u {
                    continue;
                }
                if around.contains(&w) || (g >= 5 && ends[..len].contains(&w)) {
                    return false;
                }
                ends[len] = w;
                len += 1;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct GirthSearchOutcome {
    /// Happy, temporally connected, girth at least the target.
    pub graph: Option<TemporalGraph>,
    pub structure: Option<DoubleHamiltonian>,
    /// Index of the successful attempt plus one, or the whole budget.
    pub attempts: u64,
}

const RESAMPLES_PER_ATTEMPT: usize = 100_000;
const CHUNK: u64 = 256;

/// Samples unions of two Hamiltonian cycles until one has girth at least
/// `g`. Attempt `i` depends only on `seed` and `i`, so the outcome does not
/// depend on `workers`.
pub fn find_tc_graph_of_girth(
    g: usize,
    n: usize,
    seed: u64,
    attempt_budget: u64,
    workers: usize,
) -> Result<GirthSearchOutcome, GadgetError> {
    if g < 4 {
        return Err(GadgetError::Precondition(format!("target girth {g} below 4")));
    }
    if n < 5 {
        return Err(GadgetError::TooSmall { n, min: 5 });
    }
    let best = AtomicU64::new(u64::MAX);
    let next = AtomicU64::new(0);
    let failed = AtomicUsize::new(0);
    let run = || loop {
        let lo = next.fetch_add(CHUNK, Ordering::Relaxed);
        if lo >= attempt_budget || lo > best.load(Ordering::Relaxed) {
            return;
        }
        for i in lo..(lo + CHUNK).min(attempt_budget) {
            if i > best.load(Ordering::Relaxed) {
                return;
            }
            let mut rng = attempt_rng(seed, i);
            match sample_second_cycle(n, &mut rng, RESAMPLES_PER_ATTEMPT) {
                Some(cycle) if union_girth_at_least(n, &cycle, g) => {
                    best.fetch_min(i, Ordering::Relaxed);
                    return;
                }
                Some(_) => {}
                None => {
                    failed.fetch_add(1, Ordering::Relaxed);
                }
            }
        }
    };
    let workers = workers.max(1);
    if workers == 1 {
        run();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(run);
            }
        });
    }
    if failed.load(Ordering::Relaxed) > 0 {
        return Err(GadgetError::ResampleLimit(RESAMPLES_PER_ATTEMPT));
    }
    let found = best.load(Ordering::Relaxed);
    if found == u64::MAX {
        return Ok(GirthSearchOutcome {
            graph: None,
            structure: None,
            attempts: attempt_budget,
        });
    }
    let mut rng = attempt_rng(seed, found);
    let cycle = sample_second_cycle(n, &mut rng, RESAMPLES_PER_ATTEMPT).expect("replayed attempt");
    let structure = DoubleHamiltonian::from_cycles(n, cycle);
    Ok(GirthSearchOutcome {
        graph: Some(structure.tc_labeling()),
        structure: Some(structure),
        attempts: found + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeBound {
    NotApplicable { reason: &'static str },
    Checked {
        n: usize,
        time_edges: usize,
        /// At least `2n - 3` time-edges.
        holds: bool,
        /// Girth at least 5 and more than two vertices imply `n >= 17`.
        size_holds: bool,
    },
}

impl EdgeBound {
    pub fn is_violation(&self) -> bool {
        matches!(self, EdgeBound::Checked { holds, size_holds, .. } if !holds || !size_holds)
    }
}

/// Checks the edge lower bound for temporally connected happy graphs
/// without 4-cycles.
pub fn check_tc_edge_bound(g: &TemporalGraph) -> Result<EdgeBound, GadgetError> {
    if g.is_directed() {
        return Err(GadgetError::Precondition("graph is directed".into()));
    }
    if !g.classify().happy {
        return Err(GadgetError::Precondition("graph is not happy".into()));
    }
    if !reach::is_temporally_connected(g, ReachMode::Strict) {
        return Ok(EdgeBound::NotApplicable {
            reason: "not temporally connected",
        });
    }
    let under = g.underlying();
    if under.has_four_cycle() {
        return Ok(EdgeBound::NotApplicable {
            reason: "underlying graph has a 4-cycle",
        });
    }
    let n = g.n();
    let m = g.time_edge_count();
    let girth_five = under.girth().map_or(true, |x| x >= 5);
    Ok(EdgeBound::Checked {
        n,
        time_edges: m,
        holds: m as i64 >= 2 * n as i64 - 3,
        size_holds: !(girth_five && n > 2) || n >= 17,
    })
}
