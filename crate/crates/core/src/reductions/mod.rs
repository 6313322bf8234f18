//! Generators for the three hardness constructions, their forward witnesses,
//! clique extraction from closed components, and padding.

mod directed;
mod happy;
mod strict;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::components::nontrivial_threshold;
use crate::graph::{GraphBuilder, Label, TemporalGraph, Vertex};
use crate::io::ParseError;
use crate::mcc::MccInstance;
use crate::reach::{self, ReachMode};

pub use directed::reduce_directed_happy;
pub use happy::reduce_undirected_happy;
pub use strict::reduce_undirected_strict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("instance does not meet the construction's assumptions: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),
    #[error("not a multicolored clique of the source instance")]
    NotAClique,
    #[error("vertex set is not temporally connected")]
    NotTc,
    #[error("vertex set of size {size} is below the nontrivial threshold {threshold}")]
    TooSmall { size: usize, threshold: usize },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("closed component contains no multicolored clique")]
    ExtractionFailed,
    #[error("invalid epsilon: {0}")]
    BadEpsilon(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    DirectedHappy,
    UndirectedHappy,
    UndirectedStrict,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::DirectedHappy, Variant::UndirectedHappy, Variant::UndirectedStrict];

    /// The reachability semantics the construction is stated for.
    pub fn mode(self) -> ReachMode {
        match self {
            Variant::UndirectedHappy => ReachMode::NonStrict,
            _ => ReachMode::Strict,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::DirectedHappy => "directed",
            Variant::UndirectedHappy => "happy",
            Variant::UndirectedStrict => "strict",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "directed" => Ok(Variant::DirectedHappy),
            "happy" => Ok(Variant::UndirectedHappy),
            "strict" => Ok(Variant::UndirectedStrict),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// What a vertex of a constructed graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRole {
    /// A vertex of the source instance.
    Mcc { vertex: usize, class: usize },
    /// Gathering anchor of the directed construction.
    Alpha,
    /// Broadcasting anchor of the directed construction.
    Omega,
    In(Vertex),
    Out(Vertex),
    /// Sits between `Out(from)` and `In(to)`.
    Con { from: Vertex, to: Vertex },
    PreOutOmega,
    PostInAlpha,
    /// Vertex `index` (1-based, never the dock) of connector path `path`.
    PathVertex { path: usize, index: usize },
    Pad,
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexRole::Mcc { vertex, class } => write!(f, "mcc {vertex} {class}"),
            VertexRole::Alpha => f.write_str("alpha"),
            VertexRole::Omega => f.write_str("omega"),
            VertexRole::In(x) => write!(f, "in {x}"),
            VertexRole::Out(x) => write!(f, "out {x}"),
            VertexRole::Con { from, to } => write!(f, "con {from} {to}"),
            VertexRole::PreOutOmega => f.write_str("preout-omega"),
            VertexRole::PostInAlpha => f.write_str("postin-alpha"),
            VertexRole::PathVertex { path, index } => write!(f, "path {path} {index}"),
            VertexRole::Pad => f.write_str("pad"),
        }
    }
}

impl FromStr for VertexRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<usize, String> {
            toks.get(i)
                .ok_or_else(|| format!("role `{s}` is missing a field"))?
                .parse()
                .map_err(|_| format!("role `{s}` has a non-numeric field"))
        };
        let role = match toks.first().copied() {
            Some("mcc") => VertexRole::Mcc {
                vertex: num(1)?,
                class: num(2)?,
            },
            Some("alpha") => VertexRole::Alpha,
            Some("omega") => VertexRole::Omega,
            Some("in") => VertexRole::In(num(1)?),
            Some("out") => VertexRole::Out(num(1)?),
            Some("con") => VertexRole::Con {
                from: num(1)?,
                to: num(2)?,
            },
            Some("preout-omega") => VertexRole::PreOutOmega,
            Some("postin-alpha") => VertexRole::PostInAlpha,
            Some("path") => VertexRole::PathVertex {
                path: num(1)?,
                index: num(2)?,
            },
            Some("pad") => VertexRole::Pad,
            _ => return Err(format!("unknown role `{s}`")),
        };
        Ok(role)
    }
}

/// A run of labels reserved for one family of edges. Empty when
/// `last < first`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub name: String,
    pub first: Label,
    pub last: Label,
}

impl Interval {
    pub fn len(&self) -> usize {
        (self.last - self.first + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, t: Label) -> bool {
        self.first <= t && t <= self.last
    }
}

/// A connector path inside a constructed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathInfo {
    /// The vertex identified with path vertex 8; `None` for padding paths.
    pub dock: Option<Vertex>,
    /// Graph ids of path vertices `1..=20`.
    pub vertices: [Vertex; 20],
}

/// A constructed temporal graph with everything needed to interpret it.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub graph: TemporalGraph,
    pub roles: Vec<VertexRole>,
    pub variant: Variant,
    /// Source vertex `x` is graph vertex `x`.
    pub source: MccInstance,
    pub intervals: Vec<Interval>,
    pub alpha: Vertex,
    pub omega: Vertex,
    /// Only in the undirected constructions.
    pub alpha_prime: Option<Vertex>,
    pub omega_prime: Option<Vertex>,
    pub vin: BTreeMap<Vertex, Vertex>,
    pub vout: BTreeMap<Vertex, Vertex>,
    /// Keyed by `(from, to)`.
    pub vcon: BTreeMap<(Vertex, Vertex), Vertex>,
    pub paths: Vec<PathInfo>,
    /// Pad vertices (directed) or dockless paths (undirected).
    pub pads: usize,
}

impl ReductionArtifact {
    pub fn mode(&self) -> ReachMode {
        self.variant.mode()
    }

    pub fn interval(&self, name: &str) -> Option<&Interval> {
        self.intervals.iter().find(|i| i.name == name)
    }

    pub fn vertices_with_role(&self, pred: impl Fn(&VertexRole) -> bool) -> Vec<Vertex> {
        (0..self.roles.len()).filter(|&v| pred(&self.roles[v])).collect()
    }

    /// Vertices of connector paths, docks included.
    pub fn connector_path_vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.paths.iter().flat_map(|p| p.vertices).collect();
        out.sort_unstable();
        out
    }

    /// Vertices making up the connector gadget, the part padding inflates.
    pub fn connector_gadget(&self) -> Vec<Vertex> {
        match self.variant {
            Variant::DirectedHappy => self.vertices_with_role(|r| !matches!(r, VertexRole::Mcc { .. })),
            _ => self.connector_path_vertices(),
        }
    }
}

/// Shared vertex and path bookkeeping for the constructions.
pub(crate) struct Assembly {
    pub b: GraphBuilder,
    pub roles: Vec<VertexRole>,
    pub paths: Vec<PathInfo>,
}

impl Assembly {
    pub fn new(b: GraphBuilder) -> Self {
        Assembly {
            b,
            roles: Vec::new(),
            paths: Vec::new(),
        }
    }

    pub fn vertex(&mut self, name: String, role: VertexRole) -> Vertex {
        self.roles.push(role);
        self.b.add_vertex(name)
    }

    pub fn source_vertices(&mut self, src: &MccInstance) {
        for x in 0..src.n() {
            self.vertex(
                format!("v{x}"),
                VertexRole::Mcc {
                    vertex: x,
                    class: src.color(x),
                },
            );
        }
    }

    /// Adds a connector path docked at `dock` (or dockless) with shared
    /// red and blue windows.
    pub fn path(&mut self, dock: Option<Vertex>, red: Label, blue: Label) -> [Vertex; 20] {
        let index = self.paths.len();
        let prefix = match dock {
            Some(d) => format!("P[{}]:", self.b_name(d)),
            None => format!("P[pad{index}]:"),
        };
        let before = self.b.n();
        let ids = crate::gadgets::add_connector_path(&mut self.b, dock, red, blue, &prefix);
        for (i, &v) in ids.iter().enumerate() {
            if v >= before {
                self.roles.push(VertexRole::PathVertex { path: index, index: i + 1 });
            }
        }
        self.paths.push(PathInfo { dock, vertices: ids });
        ids
    }

    fn b_name(&self, v: Vertex) -> String {
        self.b.name(v).to_string()
    }
}

/// Hands out consecutive label runs and records them as intervals.
pub(crate) struct Cursor {
    next: Label,
    pub intervals: Vec<Interval>,
}

impl Cursor {
    pub fn new(start: Label) -> Self {
        Cursor {
            next: start,
            intervals: Vec::new(),
        }
    }

    /// Reserves `count` labels under `name` and returns the first one.
    pub fn reserve(&mut self, name: &str, count: usize) -> Label {
        let first = self.next;
        self.next += count as Label;
        self.intervals.push(Interval {
            name: name.to_string(),
            first,
            last: self.next - 1,
        });
        first
    }
}

fn rebuild(variant: Variant, src: &MccInstance, pads: usize) -> Result<ReductionArtifact, ReductionError> {
    match variant {
        Variant::DirectedHappy => directed::build(src, pads),
        Variant::UndirectedHappy => happy::build(src, pads),
        Variant::UndirectedStrict => strict::build(src, pads),
    }
}

/// Witness size on an unpadded artifact for `k` classes and `n_v` source
/// vertices.
pub fn expected_witness_size(variant: Variant, k: usize, n_v: usize) -> usize {
    match variant {
        Variant::DirectedHappy => 2 * n_v + 6 + k,
        Variant::UndirectedHappy => k + 20 * (2 * (k - 2) + k * (k - 1) / 2 - (k - 1)),
        Variant::UndirectedStrict => 41 * k - 80,
    }
}

/// Source clique ordered by class.
fn by_class(a: &ReductionArtifact, clique: &[usize]) -> Result<Vec<usize>, ReductionError> {
    if !a.source.is_multicolored_clique(clique) {
        return Err(ReductionError::NotAClique);
    }
    let mut x = clique.to_vec();
    x.sort_by_key(|&v| a.source.color(v));
    Ok(x)
}

fn pad_path_vertices(a: &ReductionArtifact) -> impl Iterator<Item = Vertex> + '_ {
    a.paths
        .iter()
        .filter(|p| p.dock.is_none())
        .flat_map(|p| p.vertices)
}

fn path_of(a: &ReductionArtifact, dock: Vertex) -> [Vertex; 20] {
    a.paths
        .iter()
        .find(|p| p.dock == Some(dock))
        .map(|p| p.vertices)
        .expect("every dock carries a path")
}

/// The closed component built from a multicolored clique of the source.
pub fn witness_from_clique(a: &ReductionArtifact, clique: &[usize]) -> Result<Vec<Vertex>, ReductionError> {
    let x = by_class(a, clique)?;
    let k = x.len();
    let mut s: Vec<Vertex> = x.clone();
    match a.variant {
        Variant::DirectedHappy => {
            s.extend(a.vertices_with_role(|r| !matches!(r, VertexRole::Mcc { .. })));
        }
        Variant::UndirectedHappy | Variant::UndirectedStrict => {
            let mut docks = Vec::new();
            for i in 1..=k {
                if i <= k - 2 {
                    docks.push(a.vin[&x[i - 1]]);
                }
                if i >= 3 {
                    docks.push(a.vout[&x[i - 1]]);
                }
            }
            if a.variant == Variant::UndirectedHappy {
                for i in 1..=k {
                    for j in i + 2..=k {
                        docks.push(a.vcon[&(x[j - 1], x[i - 1])]);
                    }
                }
            }
            for d in docks {
                s.extend(path_of(a, d));
            }
            s.extend(pad_path_vertices(a));
        }
    }
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// The clique together with the entire connector gadget.
pub fn covering_witness_from_clique(a: &ReductionArtifact, clique: &[usize]) -> Result<Vec<Vertex>, ReductionError> {
    let x = by_class(a, clique)?;
    let mut s = a.connector_gadget();
    s.extend(x);
    if a.variant != Variant::DirectedHappy {
        s.extend([a.alpha, a.omega]);
        s.extend(a.alpha_prime);
        s.extend(a.omega_prime);
    }
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Recovers a multicolored clique of the source from a nontrivial closed
/// component of the constructed graph.
pub fn extract_clique_from_tcc(a: &ReductionArtifact, s: &[Vertex]) -> Result<Vec<usize>, ReductionError> {
    if let Some(&v) = s.iter().find(|&&v| v >= a.graph.n()) {
        return Err(ReductionError::UnknownVertex(v));
    }
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    let threshold = nontrivial_threshold(&a.graph);
    if set.len() < threshold {
        return Err(ReductionError::TooSmall {
            size: set.len(),
            threshold,
        });
    }
    if !reach::is_tc(&a.graph, a.mode(), &set) {
        return Err(ReductionError::NotTc);
    }
    let candidates: Vec<usize> = set.iter().copied().filter(|&v| v < a.source.n()).collect();
    a.source
        .solve_within(&candidates)
        .ok_or(ReductionError::ExtractionFailed)
}

/// A rational in `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self, ReductionError> {
        if den == 0 || num == 0 || num >= den {
            return Err(ReductionError::BadEpsilon(format!("{num}/{den} is not strictly between 0 and 1")));
        }
        let g = gcd(num, den);
        Ok(Epsilon {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FromStr for Epsilon {
    type Err = ReductionError;

    /// Accepts `p/q` or a decimal such as `0.15`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ReductionError::BadEpsilon(format!("cannot parse `{s}`"));
        if let Some((p, q)) = s.split_once('/') {
            return Epsilon::new(p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac))
            .ok_or_else(bad)?;
        Epsilon::new(num, den)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Smallest number of extra units of `unit` vertices each, all joining the
/// connector gadget, after which the gadget holds at least a `1 - eps`
/// fraction of all vertices.
pub fn pad_count(gadget: usize, n: usize, unit: usize, eps: Epsilon) -> usize {
    let need = (eps.den - eps.num) as u128 * n as u128;
    let have = eps.den as u128 * gadget as u128;
    if have >= need {
        return 0;
    }
    let step = unit as u128 * eps.num as u128;
    ((need - have).div_ceil(step)) as usize
}

/// Rebuilds the construction with enough padding that the connector gadget
/// covers at least a `1 - eps` fraction of the vertices.
pub fn pad_for_inapproximability(a: &ReductionArtifact, eps: Epsilon) -> Result<ReductionArtifact, ReductionError> {
    let unit = match a.variant {
        Variant::DirectedHappy => 1,
        _ => 20,
    };
    let extra = pad_count(a.connector_gadget().len(), a.graph.n(), unit, eps);
    rebuild(a.variant, &a.source, a.pads + extra)
}

/// Sidecar text: the variant, one `role` line per vertex, then the
/// interval table.
pub fn write_roles(a: &ReductionArtifact) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "variant {}", a.variant);
    for (v, r) in a.roles.iter().enumerate() {
        let _ = writeln!(out, "role {v} {r}");
    }
    for i in &a.intervals {
        let _ = writeln!(out, "interval {} {} {}", i.name, i.first, i.last);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleTable {
    pub variant: Variant,
    pub roles: Vec<VertexRole>,
    pub intervals: Vec<Interval>,
}

pub fn parse_roles(text: &str) -> Result<RoleTable, ParseError> {
    let err = |line: usize, message: String| ParseError { line, message };
    let mut variant = None;
    let mut roles = BTreeMap::new();
    let mut intervals = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let ln = i + 1;
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (head, rest) = l.split_once(' ').unwrap_or((l, ""));
        match head {
            "variant" => variant = Some(rest.trim().parse::<Variant>().map_err(|m| err(ln, m))?),
            "role" => {
                let (id, role) = rest.split_once(' ').ok_or_else(|| err(ln, "missing role".into()))?;
                let id: Vertex = id.parse().map_err(|_| err(ln, format!("invalid vertex id `{id}`")))?;
                let role: VertexRole = role.parse().map_err(|m| err(ln, m))?;
                if roles.insert(id, role).is_some() {
                    return Err(err(ln, format!("vertex {id} has two roles")));
                }
            }
            "interval" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [name, first, last] = toks[..] else {
                    return Err(err(ln, "expected `interval <name> <first> <last>`".into()));
                };
                let num = |t: &str| t.parse::<Label>().map_err(|_| err(ln, format!("invalid label `{t}`")));
                intervals.push(Interval {
                    name: name.to_string(),
                    first: num(first)?,
                    last: num(last)?,
                });
            }
            other => return Err(err(ln, format!("unknown record `{other}`"))),
        }
    }
    let variant = variant.ok_or_else(|| err(0, "missing `variant` line".into()))?;
    let n = roles.len();
    if roles.keys().copied().ne(0..n) {
        return Err(err(0, "role ids are not 0..n".into()));
    }
    Ok(RoleTable {
        variant,
        roles: roles.into_values().collect(),
        intervals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_parsing() {
        let e: Epsilon = "0.15".parse().unwrap();
        assert_eq!((e.num(), e.den()), (3, 20));
        assert_eq!("1/4".parse::<Epsilon>().unwrap(), Epsilon::new(1, 4).unwrap());
        assert!("1.5".parse::<Epsilon>().is_err());
        assert!("0".parse::<Epsilon>().is_err());
        assert!("abc".parse::<Epsilon>().is_err());
    }

    #[test]
    fn pad_arithmetic() {
        let half = Epsilon::new(1, 2).unwrap();
        let tenth = Epsilon::new(1, 10).unwrap();
        assert_eq!(pad_count(14, 18, 1, half), 0);
        assert_eq!(pad_count(14, 18, 1, tenth), 22);
        assert_eq!(pad_count(12, 15, 1, "0.15".parse().unwrap()), 5);
        assert_eq!(pad_count(14, 18, 1, "0.2".parse().unwrap()), 2);
    }

    #[test]
    fn witness_size_formulas() {
        assert_eq!(expected_witness_size(Variant::DirectedHappy, 3, 4), 17);
        assert_eq!(expected_witness_size(Variant::UndirectedHappy, 6, 0), 366);
        assert_eq!(expected_witness_size(Variant::UndirectedStrict, 22, 0), 822);
    }

    #[test]
    fn role_strings_round_trip() {
        let roles = [
            VertexRole::Mcc { vertex: 3, class: 2 },
            VertexRole::Alpha,
            VertexRole::Omega,
            VertexRole::In(4),
            VertexRole::Out(5),
            VertexRole::Con { from: 7, to: 1 },
            VertexRole::PreOutOmega,
            VertexRole::PostInAlpha,
            VertexRole::PathVertex { path: 2, index: 19 },
            VertexRole::Pad,
        ];
        for r in roles {
            assert_eq!(r.to_string().parse::<VertexRole>().unwrap(), r);
        }
    }
}
