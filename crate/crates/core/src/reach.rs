//! Earliest arrivals and reachability under strict and nonstrict semantics.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::graph::{Label, StaticGraph, TemporalGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReachMode {
    /// Labels strictly increase along a path.
    Strict,
    /// Labels never decrease along a path.
    NonStrict,
}

impl ReachMode {
    pub const ALL: [ReachMode; 2] = [ReachMode::Strict, ReachMode::NonStrict];

    pub fn as_str(self) -> &'static str {
        match self {
            ReachMode::Strict => "strict",
            ReachMode::NonStrict => "nonstrict",
        }
    }
}

impl fmt::Display for ReachMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReachMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(ReachMode::Strict),
            "nonstrict" | "non-strict" => Ok(ReachMode::NonStrict),
            other => Err(format!("unknown reachability mode `{other}`")),
        }
    }
}

/// Arrival time at a vertex, ordered `Start < At(_) < Never`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arrival {
    /// The source itself, present before every label.
    Start,
    At(Label),
    Never,
}

impl Arrival {
    pub fn is_reached(self) -> bool {
        self != Arrival::Never
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalTable {
    pub source: Vertex,
    pub mode: ReachMode,
    pub arrival: Vec<Arrival>,
}

impl ArrivalTable {
    pub fn reaches(&self, v: Vertex) -> bool {
        self.arrival[v].is_reached()
    }
}

/// The arcs of a temporal graph grouped by label in increasing order.
///
/// Undirected time-edges contribute one arc per direction.
#[derive(Clone, Debug)]
pub struct LabelScan {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    groups: Vec<(Label, usize, usize)>,
}

impl LabelScan {
    pub fn new(g: &TemporalGraph) -> Self {
        let mut labelled: Vec<(Label, Vertex, Vertex)> = Vec::with_capacity(2 * g.time_edge_count());
        for e in g.edges() {
            labelled.push((e.t, e.u, e.v));
            if !g.is_directed() {
                labelled.push((e.t, e.v, e.u));
            }
        }
        labelled.sort_unstable();
        labelled.dedup();
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=labelled.len() {
            if i == labelled.len() || labelled[i].0 != labelled[start].0 {
                groups.push((labelled[start].0, start, i));
                start = i;
            }
        }
        LabelScan {
            n: g.n(),
            arcs: labelled.iter().map(|&(_, u, v)| (u, v)).collect(),
            groups,
        }
    }

    pub fn earliest_arrival(&self, mode: ReachMode, source: Vertex) -> ArrivalTable {
        let mut arrival = vec![Arrival::Never; self.n];
        arrival[source] = Arrival::Start;
        let mut pending = Vec::new();
        for &(t, lo, hi) in &self.groups {
            let here = Arrival::At(t);
            let group = &self.arcs[lo..hi];
            match mode {
                ReachMode::Strict => {
                    pending.clear();
                    pending.extend(
                        group
                            .iter()
                            .filter(|&&(u, v)| arrival[u] < here && arrival[v] == Arrival::Never)
                            .map(|&(_, v)| v),
                    );
                    for &v in &pending {
                        arrival[v] = here;
                    }
                }
                ReachMode::NonStrict => loop {
                    let mut changed = false;
                    for &(u, v) in group {
                        if arrival[u] <= here && arrival[v] == Arrival::Never {
                            arrival[v] = here;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                },
            }
        }
        ArrivalTable {
            source,
            mode,
            arrival,
        }
    }

    /// For every vertex, the set of vertices that reach it.
    pub fn reached_by(&self, mode: ReachMode) -> Vec<FixedBitSet> {
        let mut into: Vec<FixedBitSet> = (0..self.n)
            .map(|v| {
                let mut b = FixedBitSet::with_capacity(self.n);
                b.insert(v);
                b
            })
            .collect();
        let mut snapshot: Vec<(Vertex, FixedBitSet)> = Vec::new();
        for &(_, lo, hi) in &self.groups {
            let group = &self.arcs[lo..hi];
            match mode {
                ReachMode::Strict => {
                    snapshot.clear();
                    for &(u, v) in group {
                        snapshot.push((v, into[u].clone()));
                    }
                    for (v, bits) in &snapshot {
                        into[*v].union_with(bits);
                    }
                }
                ReachMode::NonStrict => loop {
                    let mut changed = false;
                    for &(u, v) in group {
                        if !into[u].is_subset(&into[v]) {
                            let bits = into[u].clone();
                            into[v].union_with(&bits);
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                },
            }
        }
        into
    }
}

pub fn earliest_arrival(g: &TemporalGraph, mode: ReachMode, source: Vertex) -> ArrivalTable {
    LabelScan::new(g).earliest_arrival(mode, source)
}

pub fn reaches(g: &TemporalGraph, mode: ReachMode, u: Vertex, v: Vertex) -> bool {
    earliest_arrival(g, mode, u).reaches(v)
}

/// Row `u` holds the vertices reachable from `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityMatrix {
    rows: Vec<FixedBitSet>,
}

impl ReachabilityMatrix {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, u: Vertex) -> &FixedBitSet {
        &self.rows[u]
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.rows.iter().all(|r| r.count_ones(..) == n)
    }

    pub fn reachable_pairs(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }
}

pub fn reachability_matrix(g: &TemporalGraph, mode: ReachMode) -> ReachabilityMatrix {
    let scan = LabelScan::new(g);
    let rows = (0..g.n())
        .map(|u| {
            let table = scan.earliest_arrival(mode, u);
            let mut row = FixedBitSet::with_capacity(g.n());
            for (v, a) in table.arrival.iter().enumerate() {
                if a.is_reached() {
                    row.insert(v);
                }
            }
            row
        })
        .collect();
    ReachabilityMatrix { rows }
}

/// Whether the whole graph is temporally connected.
pub fn is_temporally_connected(g: &TemporalGraph, mode: ReachMode) -> bool {
    let n = g.n();
    LabelScan::new(g)
        .reached_by(mode)
        .iter()
        .all(|b| b.count_ones(..) == n)
}

/// Whether the subgraph induced by `s` is temporally connected.
///
/// # Panics
///
/// Panics if `s` names a vertex outside `g`.
pub fn is_tc(g: &TemporalGraph, mode: ReachMode, s: &[Vertex]) -> bool {
    let induced = g.induced(s).expect("vertex set inside the graph");
    is_temporally_connected(&induced.graph, mode)
}

/// The graph joining every pair of vertices that reach each other in `g`.
pub fn mutual_reachability_graph(g: &TemporalGraph, mode: ReachMode) -> StaticGraph {
    let m = reachability_matrix(g, mode);
    let mut out = StaticGraph::new(g.n());
    for u in 0..g.n() {
        for v in m.row(u).ones().filter(|&v| v > u) {
            if m.get(v, u) {
                out.add_edge(u, v);
            }
        }
    }
    out
}
