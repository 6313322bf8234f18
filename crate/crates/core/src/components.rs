//! Closed temporally connected components by exhaustive subset search, and
//! maximum open components.

use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{StaticGraph, TemporalGraph, Vertex};
use crate::reach::{self, ReachMode};

/// Largest vertex count searched exhaustively unless overridden.
pub const DEFAULT_BUDGET: usize = 26;

/// Hard limit of the 64-bit subset representation.
pub const MAX_SEARCH_VERTICES: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("graph has {n} vertices, above the search budget of {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("vertex set is not temporally connected")]
    NotTc,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    UnknownVertex { vertex: Vertex, n: usize },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// Smallest size of a nontrivial closed component.
pub fn nontrivial_threshold(g: &TemporalGraph) -> usize {
    if g.is_directed() {
        2
    } else {
        3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Prune {
    #[default]
    None,
    /// Skips subsets whose underlying induced graph is disconnected.
    ConnectedUnderlying,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentQuery {
    pub mode: ReachMode,
    pub min_size: usize,
    pub exact_size: Option<usize>,
    pub max_vertex_budget: usize,
    pub prune: Prune,
    pub workers: usize,
}

impl ComponentQuery {
    pub fn new(mode: ReachMode, min_size: usize) -> Self {
        ComponentQuery {
            mode,
            min_size,
            exact_size: None,
            max_vertex_budget: DEFAULT_BUDGET,
            prune: Prune::None,
            workers: 1,
        }
    }

    pub fn nontrivial(g: &TemporalGraph, mode: ReachMode) -> Self {
        Self::new(mode, nontrivial_threshold(g))
    }

    pub fn exact(mode: ReachMode, size: usize) -> Self {
        ComponentQuery {
            exact_size: Some(size),
            ..Self::new(mode, size)
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.max_vertex_budget = budget;
        self
    }

    pub fn with_prune(mut self, prune: Prune) -> Self {
        self.prune = prune;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub witness: Option<Vec<Vertex>>,
    /// Set when the whole size range was searched without a hit.
    pub exhaustive: bool,
    pub subsets_examined: u64,
    pub pruned_count: u64,
}

/// A graph on at most 63 vertices prepared for mask queries.
#[derive(Clone, Debug)]
pub struct MaskGraph {
    n: usize,
    arcs: Vec<(u32, u32)>,
    groups: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

#[derive(Default)]
struct Scratch {
    into: Vec<u64>,
    pending: Vec<(u32, u64)>,
}

impl MaskGraph {
    pub fn new(g: &TemporalGraph) -> Result<Self, SearchError> {
        let n = g.n();
        if n > MAX_SEARCH_VERTICES {
            return Err(SearchError::BudgetExceeded {
                n,
                budget: MAX_SEARCH_VERTICES,
            });
        }
        let mut labelled = Vec::with_capacity(2 * g.time_edge_count());
        let mut adj = vec![0u64; n];
        for e in g.edges() {
            labelled.push((e.t, e.u as u32, e.v as u32));
            if !g.is_directed() {
                labelled.push((e.t, e.v as u32, e.u as u32));
            }
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
        labelled.sort_unstable();
        labelled.dedup();
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=labelled.len() {
            if i == labelled.len() || labelled[i].0 != labelled[start].0 {
                groups.push((start, i));
                start = i;
            }
        }
        Ok(MaskGraph {
            n,
            arcs: labelled.iter().map(|&(_, u, v)| (u, v)).collect(),
            groups,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_tc(&self, mask: u64, mode: ReachMode) -> bool {
        self.is_tc_with(mask, mode, &mut Scratch::default())
    }

    fn is_tc_with(&self, mask: u64, mode: ReachMode, s: &mut Scratch) -> bool {
        s.into.clear();
        s.into.extend((0..self.n).map(|v| 1u64 << v));
        let inside = |u: u32, v: u32| (mask >> u) & (mask >> v) & 1 == 1;
        for &(lo, hi) in &self.groups {
            let group = &self.arcs[lo..hi];
            match mode {
                ReachMode::Strict => {
                    s.pending.clear();
                    for &(u, v) in group {
                        if inside(u, v) {
                            s.pending.push((v, s.into[u as usize]));
                        }
                    }
                    for &(v, bits) in &s.pending {
                        s.into[v as usize] |= bits;
                    }
                }
                ReachMode::NonStrict => loop {
                    let mut changed = false;
                    for &(u, v) in group {
                        if inside(u, v) {
                            let add = s.into[u as usize] & !s.into[v as usize];
                            if add != 0 {
                                s.into[v as usize] |= add;
                                changed = true;
                            }
                        }
                    }
                    if !changed {
                        break;
                    }
                },
            }
        }
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            if s.into[v] & mask != mask {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    /// Whether the underlying graph induced by `mask` is connected.
    pub fn is_connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == mask
    }
}

pub fn mask_of(s: &[Vertex]) -> u64 {
    s.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn vertices_of(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// For equal-size sets: whether `a` is lexicographically smaller than `b`
/// as sorted vertex lists.
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}

fn better(candidate: Option<u64>, best: Option<u64>) -> Option<u64> {
    match (candidate, best) {
        (Some(c), Some(b)) => Some(if lex_less(c, b) { c } else { b }),
        (c, b) => c.or(b),
    }
}

/// Calls `f` on every `r`-subset of the low `bits` bits (`bits <= 63`), in
/// increasing order.
fn for_each_combination(bits: usize, r: usize, mut f: impl FnMut(u64)) {
    if r > bits {
        return;
    }
    if r == 0 {
        f(0);
        return;
    }
    let end = 1u64 << bits;
    let mut c: u64 = (1u64 << r) - 1;
    while c < end {
        f(c);
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
}

#[derive(Default)]
struct LayerResult {
    best: Option<u64>,
    examined: u64,
    pruned: u64,
}

fn search_layer(mg: &MaskGraph, size: usize, mode: ReachMode, prune: Prune, workers: usize) -> LayerResult {
    let n = mg.n;
    let high = n.min(8);
    let low = n - high;
    let tasks = 1usize << high;
    let next = AtomicUsize::new(0);
    let run = || {
        let mut scratch = Scratch::default();
        let mut out = LayerResult::default();
        loop {
            let task = next.fetch_add(1, Ordering::Relaxed);
            if task >= tasks {
                return out;
            }
            let prefix = (task as u64) << low;
            let ones = prefix.count_ones() as usize;
            if ones > size {
                continue;
            }
            for_each_combination(low, size - ones, |lowbits| {
                let mask = prefix | lowbits;
                if prune == Prune::ConnectedUnderlying && !mg.is_connected(mask) {
                    out.pruned += 1;
                    return;
                }
                out.examined += 1;
                if mg.is_tc_with(mask, mode, &mut scratch) {
                    out.best = better(Some(mask), out.best);
                }
            });
        }
    };
    let parts: Vec<LayerResult> = if workers <= 1 {
        vec![run()]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|_| scope.spawn(run)).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };
    parts.into_iter().fold(LayerResult::default(), |acc, p| LayerResult {
        best: better(p.best, acc.best),
        examined: acc.examined + p.examined,
        pruned: acc.pruned + p.pruned,
    })
}

fn check_budget(g: &TemporalGraph, budget: usize) -> Result<(), SearchError> {
    let budget = budget.min(MAX_SEARCH_VERTICES);
    if g.n() > budget {
        return Err(SearchError::BudgetExceeded { n: g.n(), budget });
    }
    Ok(())
}

/// Searches sizes in increasing order and returns the lexicographically
/// least witness of the smallest admissible size.
pub fn find_closed_tcc(g: &TemporalGraph, q: &ComponentQuery) -> Result<ComponentReport, SearchError> {
    check_budget(g, q.max_vertex_budget)?;
    let n = g.n();
    let (lo, hi) = match q.exact_size {
        Some(s) => (s, s),
        None => (q.min_size.max(1), n),
    };
    if lo == 0 {
        return Err(SearchError::InvalidQuery("sizes start at 1".into()));
    }
    let mg = MaskGraph::new(g)?;
    let mut report = ComponentReport {
        witness: None,
        exhaustive: false,
        subsets_examined: 0,
        pruned_count: 0,
    };
    for size in lo..=hi.min(n) {
        let layer = search_layer(&mg, size, q.mode, q.prune, q.workers);
        report.subsets_examined += layer.examined;
        report.pruned_count += layer.pruned;
        if let Some(mask) = layer.best {
            report.witness = Some(vertices_of(mask));
            return Ok(report);
        }
    }
    report.exhaustive = true;
    Ok(report)
}

/// Whether no strict superset of `s` is a closed component.
pub fn is_maximal_closed_tcc(
    g: &TemporalGraph,
    mode: ReachMode,
    s: &[Vertex],
    budget: usize,
) -> Result<bool, SearchError> {
    check_budget(g, budget)?;
    if let Some(&vertex) = s.iter().find(|&&v| v >= g.n()) {
        return Err(SearchError::UnknownVertex { vertex, n: g.n() });
    }
    let mg = MaskGraph::new(g)?;
    let base = mask_of(s);
    if base == 0 || !mg.is_tc(base, mode) {
        return Err(SearchError::NotTc);
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let rest = all & !base;
    let mut scratch = Scratch::default();
    let mut sub = rest;
    while sub != 0 {
        if mg.is_tc_with(base | sub, mode, &mut scratch) {
            return Ok(false);
        }
        sub = (sub - 1) & rest;
    }
    Ok(true)
}

/// A nontrivial-size closed component none of whose proper subsets of size
/// at least `min_size` is one.
pub fn minimal_witness(
    g: &TemporalGraph,
    mode: ReachMode,
    min_size: usize,
    budget: usize,
) -> Result<Option<Vec<Vertex>>, SearchError> {
    let q = ComponentQuery::new(mode, min_size).with_budget(budget);
    Ok(find_closed_tcc(g, &q)?.witness)
}

/// Whether every two vertices of `s` reach each other in the whole graph.
pub fn is_open_component(g: &TemporalGraph, mode: ReachMode, s: &[Vertex]) -> bool {
    let m = reach::reachability_matrix(g, mode);
    s.iter().all(|&u| s.iter().all(|&v| m.get(u, v)))
}

/// A maximum set of pairwise mutually reachable vertices.
pub fn max_open_component(g: &TemporalGraph, mode: ReachMode, budget: usize) -> Result<Vec<Vertex>, SearchError> {
    if g.n() > budget {
        return Err(SearchError::BudgetExceeded { n: g.n(), budget });
    }
    Ok(max_clique(&reach::mutual_reachability_graph(g, mode)))
}

/// Maximum clique by branch and bound with a greedy colouring bound.
pub fn max_clique(g: &StaticGraph) -> Vec<Vertex> {
    let n = g.n();
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(n);
            g.neighbors(v).for_each(|w| b.insert(w));
            b
        })
        .collect();
    let mut cand = FixedBitSet::with_capacity(n);
    cand.insert_range(..);
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(&adj, &mut current, cand, &mut best);
    best.sort_unstable();
    best
}

fn expand(adj: &[FixedBitSet], current: &mut Vec<Vertex>, mut cand: FixedBitSet, best: &mut Vec<Vertex>) {
    if cand.is_clear() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let order = colour_order(adj, &cand);
    for &(v, colour) in order.iter().rev() {
        if current.len() + colour <= best.len() {
            return;
        }
        current.push(v);
        let mut next = cand.clone();
        next.intersect_with(&adj[v]);
        expand(adj, current, next, best);
        current.pop();
        cand.set(v, false);
    }
}

/// Vertices of `cand` with greedy colour numbers, sorted by colour.
fn colour_order(adj: &[FixedBitSet], cand: &FixedBitSet) -> Vec<(Vertex, usize)> {
    let mut order = Vec::with_capacity(cand.count_ones(..));
    let mut uncoloured = cand.clone();
    let mut colour = 0;
    while !uncoloured.is_clear() {
        colour += 1;
        let mut available = uncoloured.clone();
        while let Some(v) = available.ones().next() {
            order.push((v, colour));
            uncoloured.set(v, false);
            available.set(v, false);
            available.difference_with(&adj[v]);
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Orientation, TimeEdge};

    fn combos(bits: usize, r: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for_each_combination(bits, r, |m| out.push(m));
        out
    }

    #[test]
    fn combinations_are_complete_and_ordered() {
        assert_eq!(combos(4, 2), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(combos(3, 0), vec![0]);
        assert_eq!(combos(3, 4), Vec::<u64>::new());
        assert_eq!(combos(5, 5), vec![0b11111]);
        assert_eq!(combos(20, 10).len(), 184_756);
    }

    #[test]
    fn lexicographic_order_on_masks() {
        assert!(lex_less(mask_of(&[0, 5]), mask_of(&[1, 2])));
        assert!(lex_less(mask_of(&[1, 2, 9]), mask_of(&[1, 3, 4])));
        assert!(!lex_less(mask_of(&[1, 3]), mask_of(&[1, 3])));
    }

    #[test]
    fn rotating_triangle_witness() {
        let g = TemporalGraph::new(
            Orientation::Undirected,
            3,
            [TimeEdge::new(2, 0, 1), TimeEdge::new(0, 1, 2), TimeEdge::new(1, 2, 3)],
        )
        .unwrap();
        let r = find_closed_tcc(&g, &ComponentQuery::new(ReachMode::Strict, 3)).unwrap();
        assert_eq!(r.witness, Some(vec![0, 1, 2]));
        assert!(!r.exhaustive);
        assert_eq!(minimal_witness(&g, ReachMode::Strict, 3, DEFAULT_BUDGET).unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn budget_is_refused() {
        let g = TemporalGraph::empty(Orientation::Undirected, 30);
        let q = ComponentQuery::new(ReachMode::Strict, 3);
        assert_eq!(
            find_closed_tcc(&g, &q),
            Err(SearchError::BudgetExceeded { n: 30, budget: 26 })
        );
    }

    #[test]
    fn clique_of_a_five_cycle_plus_chord() {
        let g = StaticGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        assert_eq!(max_clique(&g), vec![0, 1, 2]);
    }

    #[test]
    fn thresholds() {
        assert_eq!(nontrivial_threshold(&TemporalGraph::empty(Orientation::Directed, 1)), 2);
        assert_eq!(nontrivial_threshold(&TemporalGraph::empty(Orientation::Undirected, 1)), 3);
    }
}
