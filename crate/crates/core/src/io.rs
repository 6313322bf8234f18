//! Text formats: `.tg` temporal graphs, `.mcc` instances, and DOT export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, Orientation, TemporalGraph, TimeEdge, Vertex};
use crate::mcc::MccInstance;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_tg(text: &str) -> Result<TemporalGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let (orientation, simple) = match head.as_slice() {
        ["tg", o, s] => {
            let o = match *o {
                "directed" => Orientation::Directed,
                "undirected" => Orientation::Undirected,
                other => return Err(err(hl, format!("unknown orientation `{other}`"))),
            };
            let s = match *s {
                "simple" => true,
                "multi" => false,
                other => return Err(err(hl, format!("unknown multiplicity `{other}`"))),
            };
            (o, s)
        }
        _ => return Err(err(hl, "expected `tg <directed|undirected> <simple|multi>`")),
    };
    let (vl, vline) = lines.next().ok_or_else(|| err(hl + 1, "missing `v <n>` line"))?;
    let mut toks = vline.split_whitespace();
    if toks.next() != Some("v") {
        return Err(err(vl, "expected `v <n>`"));
    }
    let n: usize = number(vl, toks.next(), "vertex count")?;
    if toks.next().is_some() {
        return Err(err(vl, "trailing tokens after vertex count"));
    }

    let mut names = BTreeMap::new();
    let mut edges = Vec::new();
    let mut pairs = BTreeSet::new();
    let check = |line: usize, x: Vertex| {
        if x < n {
            Ok(x)
        } else {
            Err(err(line, format!("vertex {x} out of range (n = {n})")))
        }
    };
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("name") => {
                let v = check(ln, number(ln, toks.next(), "vertex id")?)?;
                let name = toks.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(err(ln, "missing name"));
                }
                names.insert(v, name);
            }
            Some("e") => {
                let u = check(ln, number(ln, toks.next(), "endpoint")?)?;
                let v = check(ln, number(ln, toks.next(), "endpoint")?)?;
                if u == v {
                    return Err(err(ln, format!("self-loop at vertex {u}")));
                }
                let labels = toks
                    .map(|t| number::<i64>(ln, Some(t), "label"))
                    .collect::<Result<Vec<_>, _>>()?;
                if labels.is_empty() {
                    return Err(err(ln, "missing label"));
                }
                if simple {
                    if labels.len() > 1 {
                        return Err(err(ln, "simple graph edge with several labels"));
                    }
                    let key = match orientation {
                        Orientation::Undirected => (u.min(v), u.max(v)),
                        Orientation::Directed => (u, v),
                    };
                    if !pairs.insert(key) {
                        return Err(err(ln, format!("duplicate edge {u} {v} in simple graph")));
                    }
                }
                edges.extend(labels.into_iter().map(|t| TimeEdge::new(u, v, t)));
            }
            Some(other) => return Err(err(ln, format!("unknown record `{other}`"))),
            None => unreachable!("content lines are non-empty"),
        }
    }
    let g = TemporalGraph::new(orientation, n, edges).map_err(|e: GraphError| err(0, e.to_string()))?;
    g.with_names(names).map_err(|e| err(0, e.to_string()))
}

pub fn write_tg(g: &TemporalGraph) -> String {
    let mut out = String::new();
    let mult = if g.classify().simple { "simple" } else { "multi" };
    let _ = writeln!(out, "tg {} {}", g.orientation(), mult);
    let _ = writeln!(out, "v {}", g.n());
    for (v, name) in g.names() {
        let _ = writeln!(out, "name {v} {name}");
    }
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.t);
    }
    out
}

pub fn parse_mcc(text: &str) -> Result<MccInstance, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("mcc") {
        return Err(err(hl, "expected `mcc <n> <k>`"));
    }
    let n: usize = number(hl, toks.next(), "vertex count")?;
    let k: usize = number(hl, toks.next(), "class count")?;
    let mut color = vec![0usize; n];
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("c") => {
                let v: usize = number(ln, toks.next(), "vertex id")?;
                let c: usize = number(ln, toks.next(), "color")?;
                if v >= n {
                    return Err(err(ln, format!("vertex {v} out of range (n = {n})")));
                }
                if c == 0 || c > k {
                    return Err(err(ln, format!("color {c} outside 1..={k}")));
                }
                if color[v] != 0 {
                    return Err(err(ln, format!("vertex {v} colored twice")));
                }
                color[v] = c;
            }
            Some("e") => {
                let u: usize = number(ln, toks.next(), "endpoint")?;
                let v: usize = number(ln, toks.next(), "endpoint")?;
                if u >= n || v >= n {
                    return Err(err(ln, format!("edge {u} {v} out of range (n = {n})")));
                }
                if u == v {
                    return Err(err(ln, format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
            Some(other) => return Err(err(ln, format!("unknown record `{other}`"))),
            None => unreachable!("content lines are non-empty"),
        }
    }
    if let Some(v) = color.iter().position(|&c| c == 0) {
        return Err(err(0, format!("vertex {v} has no color")));
    }
    MccInstance::new(k, color, edges).map_err(|e| err(0, e.to_string()))
}

pub fn write_mcc(i: &MccInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mcc {} {}", i.n(), i.k());
    for v in 0..i.n() {
        let _ = writeln!(out, "c {v} {}", i.color(v));
    }
    for (u, v) in i.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Graphviz rendering with one edge per time-edge.
pub fn export_dot(g: &TemporalGraph) -> String {
    let (kw, arrow) = match g.orientation() {
        Orientation::Directed => ("digraph", "->"),
        Orientation::Undirected => ("graph", "--"),
    };
    let mut out = String::new();
    let _ = writeln!(out, "{kw} G {{");
    for v in 0..g.n() {
        match g.name(v) {
            Some(name) => {
                let _ = writeln!(out, "  {v} [label=\"{}\"];", name.replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} {arrow} {} [label=\"{}\"];", e.u, e.v, e.t);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_labels_rejected_in_simple_mode() {
        let e = parse_tg("tg undirected simple\nv 6\ne 0 5 3 7\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn duplicate_pair_rejected_in_simple_mode() {
        let e = parse_tg("tg undirected simple\nv 3\ne 0 1 3\ne 1 0 4\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_tg("tg undirected multi\nv 3\ne 0 1 3\ne 1 0 4\n").is_ok());
    }

    #[test]
    fn directed_reverse_arcs_are_distinct_slots() {
        assert!(parse_tg("tg directed simple\nv 2\ne 0 1 3\ne 1 0 3\n").is_ok());
    }

    #[test]
    fn malformed_lines_report_their_number() {
        assert_eq!(parse_tg("tg directed simple\nv 2\n\ne 0 x 1\n").unwrap_err().line, 4);
        assert_eq!(parse_tg("tg sideways simple\n").unwrap_err().line, 1);
        assert_eq!(parse_tg("tg directed simple\nv 2\ne 0 2 1\n").unwrap_err().line, 3);
    }

    #[test]
    fn triangle_dot() {
        let g = parse_tg("tg undirected simple\nv 3\ne 0 1 1\ne 1 2 2\ne 0 2 3\n").unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("label=").count(), 3);
        assert!(dot.starts_with("graph G {"));
    }

    #[test]
    fn mcc_round_trip() {
        let text = "mcc 3 3\nc 0 1\nc 1 2\nc 2 3\ne 0 1\ne 0 2\ne 1 2\n";
        let i = parse_mcc(text).unwrap();
        assert_eq!(write_mcc(&i), text);
        let shuffled = parse_mcc("mcc 3 3\nc 2 3\nc 0 1\nc 1 2\ne 2 1\ne 0 2\ne 1 0\n").unwrap();
        assert_eq!(write_mcc(&shuffled), text);
    }
}
