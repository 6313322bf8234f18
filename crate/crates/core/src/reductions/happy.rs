//! Happy undirected construction built from connector paths.

use std::collections::BTreeMap;

use super::{Assembly, Cursor, ReductionArtifact, ReductionError, Variant, VertexRole};
use crate::graph::{GraphBuilder, Label, Orientation};
use crate::mcc::{check_happy_layout, MccInstance};

/// Requires an instance in the layout produced by
/// [`crate::mcc::normalize_happy_undirected`].
pub fn reduce_undirected_happy(src: &MccInstance) -> Result<ReductionArtifact, ReductionError> {
    build(src, 0)
}

pub(super) fn build(src: &MccInstance, pads: usize) -> Result<ReductionArtifact, ReductionError> {
    let problems = check_happy_layout(src);
    if !problems.is_empty() {
        return Err(ReductionError::InvalidInstance(problems));
    }
    let n = src.n();
    let k = src.k();
    let classes = src.classes();
    let single = |c: usize| classes[c - 1][0];
    let (alpha, alpha2, omega2, omega) = (single(1), single(2), single(k - 1), single(k));

    let mut a = Assembly::new(GraphBuilder::new(Orientation::Undirected));
    a.source_vertices(src);
    let vin: BTreeMap<usize, usize> = (0..n)
        .filter(|&v| v != omega && v != omega2)
        .map(|v| (v, a.vertex(format!("vin[v{v}]"), VertexRole::In(v))))
        .collect();
    let vout: BTreeMap<usize, usize> = (0..n)
        .filter(|&v| v != alpha && v != alpha2)
        .map(|v| (v, a.vertex(format!("vout[v{v}]"), VertexRole::Out(v))))
        .collect();
    let mut vcon = BTreeMap::new();
    for (x, y) in src.edges() {
        let (lo, hi) = if src.color(x) < src.color(y) { (x, y) } else { (y, x) };
        if src.color(hi) >= src.color(lo) + 2 {
            let c = a.vertex(format!("vcon[v{hi},v{lo}]"), VertexRole::Con { from: hi, to: lo });
            vcon.insert((hi, lo), c);
        }
    }
    let mut selection = Vec::new();
    for c in 1..k {
        for &x in &classes[c - 1] {
            for &y in &classes[c] {
                if src.has_edge(x, y) {
                    selection.push((x, y));
                }
            }
        }
    }

    let docks: Vec<Option<usize>> = vin
        .values()
        .chain(vout.values())
        .chain(vcon.values())
        .copied()
        .map(Some)
        .chain(std::iter::repeat(None).take(pads))
        .collect();
    let p = docks.len();

    let mut cur = Cursor::new(1);
    let red = cur.reserve("red-times", 19);
    let alpha_t = cur.reserve("alpha-times", p);
    let out_t = cur.reserve("out-time", 1);
    let out2edge = cur.reserve("out2edge-times", vcon.len());
    let edge2in = cur.reserve("edge2in-times", vcon.len());
    let sel = cur.reserve("selection-times", selection.len());
    let in_t = cur.reserve("in-time", 1);
    let omega_t = cur.reserve("omega-times", p);
    let blue = cur.reserve("blue-times", 19);

    for (i, &dock) in docks.iter().enumerate() {
        let ids = a.path(dock, red, blue);
        a.b.add_edge(ids[19], alpha, alpha_t + i as Label);
        a.b.add_edge(omega, ids[0], omega_t + i as Label);
    }
    for (&v, &c) in &vout {
        a.b.add_edge(v, c, out_t);
    }
    for (i, (&(hi, lo), &c)) in vcon.iter().enumerate() {
        a.b.add_edge(vout[&hi], c, out2edge + i as Label);
        a.b.add_edge(c, vin[&lo], edge2in + i as Label);
    }
    for (i, &(x, y)) in selection.iter().enumerate() {
        a.b.add_edge(x, y, sel + i as Label);
    }
    for (&v, &c) in &vin {
        a.b.add_edge(c, v, in_t);
    }

    Ok(ReductionArtifact {
        graph: a.b.build().expect("construction stays in range"),
        roles: a.roles,
        variant: Variant::UndirectedHappy,
        source: src.clone(),
        intervals: cur.intervals,
        alpha,
        omega,
        alpha_prime: Some(alpha2),
        omega_prime: Some(omega2),
        vin,
        vout,
        vcon,
        paths: a.paths,
        pads,
    })
}
