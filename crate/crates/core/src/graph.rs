//! Temporal graphs, their classification, and the underlying static graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;
pub type Label = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("label overflow while shifting by {delta}")]
    LabelOverflow { delta: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Directed,
    Undirected,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Directed => "directed",
            Orientation::Undirected => "undirected",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An edge (or arc) present at time `t`.
///
/// Undirected time-edges are stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub t: Label,
}

impl TimeEdge {
    pub fn new(u: Vertex, v: Vertex, t: Label) -> Self {
        TimeEdge { u, v, t }
    }
}

/// An immutable temporal graph on the vertices `0..n`.
///
/// Edges are kept sorted by `(u, v, t)`. A pair carrying several labels is
/// represented by repeated time-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    orientation: Orientation,
    n: usize,
    edges: Vec<TimeEdge>,
    names: BTreeMap<Vertex, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub simple: bool,
    pub proper: bool,
    pub happy: bool,
    /// Zero for a graph without time-edges.
    pub lifetime: i64,
    pub label_count: usize,
}

impl TemporalGraph {
    pub fn new(
        orientation: Orientation,
        n: usize,
        edges: impl IntoIterator<Item = TimeEdge>,
    ) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for e in edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            out.push(match orientation {
                Orientation::Undirected if e.u > e.v => TimeEdge::new(e.v, e.u, e.t),
                _ => e,
            });
        }
        out.sort_unstable();
        Ok(TemporalGraph {
            orientation,
            n,
            edges: out,
            names: BTreeMap::new(),
        })
    }

    pub fn empty(orientation: Orientation, n: usize) -> Self {
        TemporalGraph {
            orientation,
            n,
            edges: Vec::new(),
            names: BTreeMap::new(),
        }
    }

    /// Attaches vertex names; ids outside the graph are rejected.
    pub fn with_names(
        mut self,
        names: impl IntoIterator<Item = (Vertex, String)>,
    ) -> Result<Self, GraphError> {
        for (v, name) in names {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            self.names.insert(v, name);
        }
        Ok(self)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_directed(&self) -> bool {
        self.orientation == Orientation::Directed
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[TimeEdge] {
        &self.edges
    }

    pub fn time_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: Vertex) -> Option<&str> {
        self.names.get(&v).map(String::as_str)
    }

    pub fn names(&self) -> &BTreeMap<Vertex, String> {
        &self.names
    }

    /// Looks a vertex up by its name.
    pub fn vertex_named(&self, name: &str) -> Option<Vertex> {
        self.names
            .iter()
            .find_map(|(&v, s)| (s == name).then_some(v))
    }

    pub fn min_label(&self) -> Option<Label> {
        self.edges.iter().map(|e| e.t).min()
    }

    pub fn max_label(&self) -> Option<Label> {
        self.edges.iter().map(|e| e.t).max()
    }

    pub fn distinct_labels(&self) -> BTreeSet<Label> {
        self.edges.iter().map(|e| e.t).collect()
    }

    pub fn classify(&self) -> ClassificationReport {
        let simple = self
            .edges
            .windows(2)
            .all(|w| (w[0].u, w[0].v) != (w[1].u, w[1].v));
        let proper = match self.orientation {
            Orientation::Undirected => self.proper_undirected(),
            Orientation::Directed => self.proper_directed(),
        };
        let lifetime = match (self.min_label(), self.max_label()) {
            (Some(lo), Some(hi)) => hi - lo + 1,
            _ => 0,
        };
        ClassificationReport {
            simple,
            proper,
            happy: simple && proper,
            lifetime,
            label_count: self.distinct_labels().len(),
        }
    }

    fn proper_undirected(&self) -> bool {
        let mut seen: BTreeMap<(Vertex, Label), Vertex> = BTreeMap::new();
        for e in &self.edges {
            for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                match seen.insert((x, e.t), y) {
                    Some(prev) if prev != y => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn proper_directed(&self) -> bool {
        let ins: BTreeSet<(Vertex, Label)> = self.edges.iter().map(|e| (e.v, e.t)).collect();
        self.edges.iter().all(|e| !ins.contains(&(e.u, e.t)))
    }

    /// The underlying undirected simple graph.
    pub fn underlying(&self) -> StaticGraph {
        let mut g = StaticGraph::new(self.n);
        for e in &self.edges {
            g.add_edge(e.u, e.v);
        }
        g
    }

    pub fn girth(&self) -> Option<usize> {
        self.underlying().girth()
    }

    /// The subgraph induced by `s`, with vertices renumbered in increasing
    /// order of their original ids.
    pub fn induced(&self, s: &[Vertex]) -> Result<Induced, GraphError> {
        let mut original: Vec<Vertex> = s.to_vec();
        original.sort_unstable();
        original.dedup();
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in original.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.u] != usize::MAX && map[e.v] != usize::MAX)
            .map(|e| TimeEdge::new(map[e.u], map[e.v], e.t));
        let mut graph = TemporalGraph::new(self.orientation, original.len(), edges)?;
        for (i, &v) in original.iter().enumerate() {
            if let Some(name) = self.names.get(&v) {
                graph.names.insert(i, name.clone());
            }
        }
        Ok(Induced { graph, original })
    }

    pub fn shift_labels(&self, delta: i64) -> Result<TemporalGraph, GraphError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let t = e.t.checked_add(delta).ok_or(GraphError::LabelOverflow { delta })?;
            edges.push(TimeEdge::new(e.u, e.v, t));
        }
        Ok(TemporalGraph {
            orientation: self.orientation,
            n: self.n,
            edges,
            names: self.names.clone(),
        })
    }

    /// Shifts labels so the smallest one becomes 1.
    pub fn normalize_labels(&self) -> Result<TemporalGraph, GraphError> {
        match self.min_label() {
            None => Ok(self.clone()),
            Some(lo) => {
                let delta = 1i64
                    .checked_sub(lo)
                    .ok_or(GraphError::LabelOverflow { delta: i64::MIN })?;
                self.shift_labels(delta)
            }
        }
    }

    /// Applies `perm` to vertex ids: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<TemporalGraph, GraphError> {
        let edges = self
            .edges
            .iter()
            .map(|e| TimeEdge::new(perm[e.u], perm[e.v], e.t));
        let g = TemporalGraph::new(self.orientation, self.n, edges)?;
        g.with_names(self.names.iter().map(|(&v, s)| (perm[v], s.clone())))
    }

    /// Returns a copy with one more time-edge.
    pub fn with_edge(&self, e: TimeEdge) -> Result<TemporalGraph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push(e);
        let g = TemporalGraph::new(self.orientation, self.n, edges)?;
        g.with_names(self.names.clone())
    }

    /// Returns a copy without every time-edge equal to `e` (after
    /// canonicalisation).
    pub fn without_edge(&self, e: TimeEdge) -> TemporalGraph {
        let e = match self.orientation {
            Orientation::Undirected if e.u > e.v => TimeEdge::new(e.v, e.u, e.t),
            _ => e,
        };
        let mut out = self.clone();
        out.edges.retain(|x| *x != e);
        out
    }
}

/// An induced subgraph together with the original id of each new vertex.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: TemporalGraph,
    pub original: Vec<Vertex>,
}

/// Incremental construction of a temporal graph with named vertices.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    orientation: Orientation,
    names: Vec<String>,
    edges: Vec<TimeEdge>,
}

impl GraphBuilder {
    pub fn new(orientation: Orientation) -> Self {
        GraphBuilder {
            orientation,
            names: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Vertex {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, t: Label) {
        self.edges.push(TimeEdge::new(u, v, t));
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn build(self) -> Result<TemporalGraph, GraphError> {
        let n = self.names.len();
        TemporalGraph::new(self.orientation, n, self.edges)?
            .with_names(self.names.into_iter().enumerate())
    }
}

/// An undirected simple graph stored as sorted adjacency sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticGraph {
    adj: Vec<BTreeSet<Vertex>>,
}

impl StaticGraph {
    pub fn new(n: usize) -> Self {
        StaticGraph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = StaticGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds `{u, v}`; loops are ignored.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        self.girth_below(0)
    }

    /// Like [`StaticGraph::girth`], but stops as soon as a cycle shorter
    /// than `bound` is seen; any answer `>= bound` means "no shorter cycle".
    pub fn girth_below(&self, bound: usize) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
            if best.is_some_and(|b| b < bound) {
                return best;
            }
        }
        best
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        self.component_size(0, usize::MAX) == n
    }

    fn component_size(&self, start: Vertex, skip: Vertex) -> usize {
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if w != skip && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    }

    /// Connected with at least three vertices and no cut vertex; `K2` also
    /// counts.
    pub fn is_biconnected(&self) -> bool {
        let n = self.n();
        if n <= 1 || !self.is_connected() {
            return false;
        }
        if n == 2 {
            return true;
        }
        (0..n).all(|cut| {
            let start = if cut == 0 { 1 } else { 0 };
            self.component_size(start, cut) == n - 1
        })
    }

    /// True if some two vertices have two common neighbours.
    pub fn has_four_cycle(&self) -> bool {
        let n = self.n();
        for u in 0..n {
            let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
            for &w in &self.adj[u] {
                for &x in self.adj[w].range(u + 1..) {
                    let c = count.entry(x).or_default();
                    *c += 1;
                    if *c >= 2 {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn has_triangle(&self) -> bool {
        self.edges()
            .into_iter()
            .any(|(u, v)| self.adj[u].intersection(&self.adj[v]).next().is_some())
    }
}
