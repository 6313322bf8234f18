//! Multicolored Clique instances, a brute-force solver, generators, and the
//! normalisations expected by the reductions.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const DEFAULT_SOLVE_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MccError {
    #[error("vertex {vertex} has color {color}, expected 1..={k}")]
    BadColor { vertex: usize, color: usize, k: usize },
    #[error("edge {u}-{v} is out of range for {n} vertices")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("search space of {space} combinations exceeds the budget of {budget}")]
    BudgetExceeded { space: u128, budget: u128 },
    #[error("no no-instance found after {0} resamples")]
    ResampleLimit(usize),
    #[error("invalid generator parameters: {0}")]
    BadParams(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyClass(usize),
    NotIndependent { class: usize, u: usize, v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyClass(c) => write!(f, "class {c} is empty"),
            Violation::NotIndependent { class, u, v } => {
                write!(f, "class {class} is not independent: edge {u}-{v}")
            }
        }
    }
}

/// A graph with a partition of its vertices into `k` color classes `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MccInstance {
    k: usize,
    color: Vec<usize>,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<FixedBitSet>,
}

impl MccInstance {
    pub fn new(
        k: usize,
        color: Vec<usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MccError> {
        let n = color.len();
        for (vertex, &c) in color.iter().enumerate() {
            if c == 0 || c > k {
                return Err(MccError::BadColor { vertex, color: c, k });
            }
        }
        let mut set = BTreeSet::new();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(MccError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(MccError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(MccInstance {
            k,
            color,
            edges: set,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.color.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Vertices of class `c` in increasing order.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.color[v] == c).collect()
    }

    /// All classes; entry `i` holds class `i + 1`.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.color.iter().enumerate() {
            out[c - 1].push(v);
        }
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, class) in self.classes().iter().enumerate() {
            if class.is_empty() {
                out.push(Violation::EmptyClass(i + 1));
            }
        }
        for &(u, v) in &self.edges {
            if self.color[u] == self.color[v] {
                out.push(Violation::NotIndependent {
                    class: self.color[u],
                    u,
                    v,
                });
            }
        }
        out
    }

    /// One vertex per class, pairwise adjacent.
    pub fn is_multicolored_clique(&self, clique: &[usize]) -> bool {
        if clique.len() != self.k || clique.iter().any(|&v| v >= self.n()) {
            return false;
        }
        let colors: BTreeSet<usize> = clique.iter().map(|&v| self.color[v]).collect();
        colors.len() == self.k
            && clique
                .iter()
                .enumerate()
                .all(|(i, &u)| clique[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// The lexicographically least multicolored clique, listed by class.
    pub fn solve_bruteforce(&self, budget: u128) -> Result<Option<Vec<usize>>, MccError> {
        self.solve_among(self.classes(), budget)
    }

    /// Like [`MccInstance::solve_bruteforce`], restricted to `candidates`.
    pub fn solve_within(&self, candidates: &[usize]) -> Option<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k];
        let mut sorted = candidates.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for v in sorted {
            classes[self.color[v] - 1].push(v);
        }
        self.solve_among(classes, u128::MAX).unwrap_or(None)
    }

    fn solve_among(&self, classes: Vec<Vec<usize>>, budget: u128) -> Result<Option<Vec<usize>>, MccError> {
        let space = classes
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
        if space > budget {
            return Err(MccError::BudgetExceeded { space, budget });
        }
        let mut chosen = Vec::with_capacity(self.k);
        let mut allowed = FixedBitSet::with_capacity(self.n());
        allowed.insert_range(..);
        Ok(self.extend(&classes, &mut chosen, &allowed).then_some(chosen))
    }

    fn extend(&self, classes: &[Vec<usize>], chosen: &mut Vec<usize>, allowed: &FixedBitSet) -> bool {
        let Some(class) = classes.get(chosen.len()) else {
            return true;
        };
        for &v in class {
            if allowed.contains(v) {
                chosen.push(v);
                let mut next = allowed.clone();
                next.intersect_with(&self.adj[v]);
                if self.extend(classes, chosen, &next) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// A transformed instance plus the original vertex behind each new vertex.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub instance: MccInstance,
    /// `None` for added universal vertices.
    pub origin: Vec<Option<usize>>,
}

impl Normalized {
    /// Carries a clique of the original instance over to the transformed one,
    /// taking in every class the least vertex that stems from the clique or
    /// is an added vertex.
    pub fn lift_clique(&self, clique: &[usize]) -> Option<Vec<usize>> {
        let lifted: Option<Vec<usize>> = self
            .instance
            .classes()
            .iter()
            .map(|class| {
                class
                    .iter()
                    .copied()
                    .find(|&v| self.origin[v].map_or(true, |o| clique.contains(&o)))
            })
            .collect();
        lifted.filter(|c| self.instance.is_multicolored_clique(c))
    }

    /// Original vertices behind a clique of the transformed instance.
    pub fn project_clique(&self, clique: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = clique.iter().filter_map(|&v| self.origin[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Makes `k` odd by appending a universal singleton class if needed.
pub fn normalize_directed(i: &MccInstance) -> Normalized {
    let mut origin: Vec<Option<usize>> = (0..i.n()).map(Some).collect();
    if i.k() % 2 == 1 {
        return Normalized {
            instance: i.clone(),
            origin,
        };
    }
    let extra = i.n();
    let mut color = i.colors().to_vec();
    color.push(i.k() + 1);
    origin.push(None);
    let edges = i.edges().chain((0..extra).map(|v| (v, extra)));
    Normalized {
        instance: MccInstance::new(i.k() + 1, color, edges).expect("well-formed extension"),
        origin,
    }
}

/// Gives every singleton class a twin with the same neighbourhood.
fn twin_pad(i: &MccInstance) -> Normalized {
    let mut color = i.colors().to_vec();
    let mut origin: Vec<Option<usize>> = (0..i.n()).map(Some).collect();
    let mut edges: Vec<(usize, usize)> = i.edges().collect();
    for class in i.classes() {
        if let [x] = class[..] {
            let twin = color.len();
            color.push(i.color(x));
            origin.push(Some(x));
            edges.extend(
                i.edges()
                    .filter_map(|(a, b)| match (a == x, b == x) {
                        (true, _) => Some(b),
                        (_, true) => Some(a),
                        _ => None,
                    })
                    .map(|y| (twin, y)),
            );
        }
    }
    Normalized {
        instance: MccInstance::new(i.k(), color, edges).expect("well-formed padding"),
        origin,
    }
}

struct Layout {
    color: Vec<usize>,
    origin: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
    universal: Vec<usize>,
}

impl Layout {
    fn new() -> Self {
        Layout {
            color: Vec::new(),
            origin: Vec::new(),
            edges: Vec::new(),
            universal: Vec::new(),
        }
    }

    fn add(&mut self, class: usize, origin: Option<usize>) -> usize {
        self.color.push(class);
        self.origin.push(origin);
        self.color.len() - 1
    }

    fn add_universal(&mut self, class: usize) {
        let v = self.add(class, None);
        self.universal.push(v);
    }

    fn finish(mut self, k: usize) -> Normalized {
        let n = self.color.len();
        for &u in &self.universal {
            self.edges.extend((0..n).filter(|&v| v != u).map(|v| (u, v)));
        }
        Normalized {
            instance: MccInstance::new(k, self.color, self.edges).expect("well-formed layout"),
            origin: self.origin,
        }
    }
}

/// Layout for the happy undirected reduction: universal singletons at
/// classes 1 and 2, then per original class two copies joined by a
/// matching followed by a universal singleton, and a final universal
/// singleton at class `3k + 3`.
pub fn normalize_happy_undirected(i: &MccInstance) -> Normalized {
    let padded = twin_pad(i);
    let p = &padded.instance;
    let k = 3 * p.k() + 3;
    let mut layout = Layout::new();
    layout.add_universal(1);
    layout.add_universal(2);
    let mut copies = vec![(0, 0); p.n()];
    for (j, class) in p.classes().iter().enumerate() {
        let base = 3 * (j + 1);
        for &x in class {
            copies[x].0 = layout.add(base, padded.origin[x]);
        }
        for &x in class {
            copies[x].1 = layout.add(base + 1, padded.origin[x]);
            layout.edges.push(copies[x]);
        }
        layout.add_universal(base + 2);
    }
    layout.add_universal(k);
    for (x, y) in p.edges() {
        let (xa, xb) = copies[x];
        let (ya, yb) = copies[y];
        layout
            .edges
            .extend([(xa, ya), (xa, yb), (xb, ya), (xb, yb)]);
    }
    layout.finish(k)
}

/// Layout for the strict undirected reduction: original classes at
/// indices 11, 17, 23, ..., every other class a universal singleton, and
/// `k' = 6 max(m, 2) + 10` for `m` original classes.
pub fn normalize_strict_undirected(i: &MccInstance) -> Normalized {
    let padded = twin_pad(i);
    let p = &padded.instance;
    let k = 6 * p.k().max(2) + 10;
    let mut layout = Layout::new();
    let mut new_id = vec![0; p.n()];
    let classes = p.classes();
    for c in 1..=k {
        let slot = (c >= 11 && c % 6 == 5).then(|| (c - 11) / 6);
        match slot.and_then(|s| classes.get(s)) {
            Some(class) => {
                for &x in class {
                    new_id[x] = layout.add(c, padded.origin[x]);
                }
            }
            None => layout.add_universal(c),
        }
    }
    layout
        .edges
        .extend(p.edges().map(|(x, y)| (new_id[x], new_id[y])));
    layout.finish(k)
}

fn is_universal(i: &MccInstance, v: usize) -> bool {
    (0..i.n()).all(|w| w == v || i.has_edge(v, w))
}

fn cross_edges(i: &MccInstance, a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &x in a {
        for &y in b {
            if i.has_edge(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Structural assumptions of the happy undirected reduction.
pub fn check_happy_layout(i: &MccInstance) -> Vec<String> {
    let mut out: Vec<String> = i.validate().iter().map(ToString::to_string).collect();
    let k = i.k();
    if k % 3 != 0 || k < 6 {
        out.push(format!("k = {k} must be a multiple of 3 and at least 6"));
        return out;
    }
    let classes = i.classes();
    for c in 1..=k {
        let singleton = c == 1 || c == k || c % 3 == 2;
        let size = classes[c - 1].len();
        if singleton && size != 1 {
            out.push(format!("class {c} must be a singleton, has size {size}"));
        }
        if !singleton && size < 2 {
            out.push(format!("class {c} must have size > 1, has size {size}"));
        }
    }
    for c in 1..k {
        let edges = cross_edges(i, &classes[c - 1], &classes[c]);
        let matching = {
            let mut seen = BTreeSet::new();
            edges.iter().all(|&(x, y)| seen.insert(x) && seen.insert(y))
        };
        let star = edges.iter().map(|e| e.0).collect::<BTreeSet<_>>().len() <= 1
            || edges.iter().map(|e| e.1).collect::<BTreeSet<_>>().len() <= 1;
        if !matching && !star {
            out.push(format!("classes {c} and {} form neither a star nor a matching", c + 1));
        }
    }
    for c in [1, 2, k - 1, k] {
        if let [v] = classes[c - 1][..] {
            if !is_universal(i, v) {
                out.push(format!("vertex {v} of class {c} is not universal"));
            }
        }
    }
    out
}

/// Structural assumptions of the strict undirected reduction.
pub fn check_strict_layout(i: &MccInstance) -> Vec<String> {
    let mut out: Vec<String> = i.validate().iter().map(ToString::to_string).collect();
    let k = i.k();
    if k <= 20 || k % 6 != 4 {
        out.push(format!("k = {k} must exceed 20 and be 4 mod 6"));
        return out;
    }
    let classes = i.classes();
    for c in 1..=k {
        let size = classes[c - 1].len();
        if (c < 11 || c % 6 != 5) && size != 1 {
            out.push(format!("class {c} must be a singleton, has size {size}"));
        }
        if let [v] = classes[c - 1][..] {
            if !is_universal(i, v) {
                out.push(format!("singleton {v} of class {c} is not universal"));
            }
        }
    }
    for c in 1..k {
        let (a, b) = (&classes[c - 1], &classes[c]);
        if cross_edges(i, a, b).len() != a.len() * b.len() {
            out.push(format!("classes {c} and {} do not form a complete biclique", c + 1));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Independent cross-class edges, no answer guaranteed.
    Random,
    PlantedYes,
    RandomNo,
    FigureK7,
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub class_sizes: Vec<usize>,
    pub edge_prob: f64,
    pub max_resamples: usize,
}

impl GenParams {
    pub fn uniform(k: usize, class_size: usize, edge_prob: f64) -> Self {
        GenParams {
            class_sizes: vec![class_size; k],
            edge_prob,
            max_resamples: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: MccInstance,
    pub planted: Option<Vec<usize>>,
}

fn random_edges(color: &[usize], p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..color.len() {
        for v in u + 1..color.len() {
            if color[u] != color[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn layout_colors(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat(i + 1).take(s))
        .collect()
}

/// A random instance with the given class sizes; cross-class edges appear
/// independently with probability `edge_prob`.
pub fn random_instance(class_sizes: &[usize], edge_prob: f64, rng: &mut ChaCha8Rng) -> MccInstance {
    let color = layout_colors(class_sizes);
    let edges = random_edges(&color, edge_prob, rng);
    MccInstance::new(class_sizes.len(), color, edges).expect("well-formed random instance")
}

pub fn generate(kind: GenKind, params: &GenParams, seed: u64) -> Result<Generated, MccError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = match kind {
        GenKind::FigureK7 => {
            let s = params.class_sizes.first().copied().unwrap_or(1);
            vec![s; 7]
        }
        _ => params.class_sizes.clone(),
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(MccError::BadParams("every class needs at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&params.edge_prob) {
        return Err(MccError::BadParams(format!("edge probability {} outside [0, 1]", params.edge_prob)));
    }
    let color = layout_colors(&sizes);
    let k = sizes.len();
    match kind {
        GenKind::PlantedYes | GenKind::FigureK7 => {
            let classes: Vec<Vec<usize>> = (1..=k)
                .map(|c| (0..color.len()).filter(|&v| color[v] == c).collect())
                .collect();
            let plant: Vec<usize> = classes
                .iter()
                .map(|c| *c.choose(&mut rng).expect("nonempty class"))
                .collect();
            let mut edges = random_edges(&color, params.edge_prob, &mut rng);
            for (i, &u) in plant.iter().enumerate() {
                edges.extend(plant[i + 1..].iter().map(|&v| (u, v)));
            }
            Ok(Generated {
                instance: MccInstance::new(k, color, edges)?,
                planted: Some(plant),
            })
        }
        GenKind::Random => Ok(Generated {
            instance: MccInstance::new(k, color.clone(), random_edges(&color, params.edge_prob, &mut rng))?,
            planted: None,
        }),
        GenKind::RandomNo => {
            for _ in 0..params.max_resamples {
                let edges = random_edges(&color, params.edge_prob, &mut rng);
                let instance = MccInstance::new(k, color.clone(), edges)?;
                if instance.solve_bruteforce(DEFAULT_SOLVE_BUDGET)?.is_none() {
                    return Ok(Generated {
                        instance,
                        planted: None,
                    });
                }
            }
            Err(MccError::ResampleLimit(params.max_resamples))
        }
    }
}
