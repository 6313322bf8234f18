//! Simple undirected construction for strict paths. Labels are laid out
//! around selection labels 1 to 12 and normalised at the end.

use std::collections::{BTreeMap, BTreeSet};

use super::{Assembly, Cursor, Interval, ReductionArtifact, ReductionError, Variant, VertexRole};
use crate::graph::{GraphBuilder, Label, Orientation};
use crate::mcc::{check_strict_layout, MccInstance};

/// Requires an instance in the layout produced by
/// [`crate::mcc::normalize_strict_undirected`].
pub fn reduce_undirected_strict(src: &MccInstance) -> Result<ReductionArtifact, ReductionError> {
    build(src, 0)
}

/// Starting indices `i` of the repeated selection blocks.
fn blocks(k: usize) -> impl Iterator<Item = usize> {
    (8..=k - 8).step_by(6)
}

/// Selection edges with their labels in `1..=12`.
fn selection_edges(src: &MccInstance) -> Vec<(usize, usize, Label)> {
    let k = src.k();
    let classes = src.classes();
    let v = |i: usize| classes[i - 1][0];
    let mut out = vec![
        (v(1), v(2), 1),
        (v(2), v(3), 2),
        (v(3), v(4), 3),
        (v(4), v(5), 4),
        (v(5), v(6), 5),
        (v(6), v(7), 9),
        (v(7), v(8), 10),
        (v(3), v(8), 11),
        (v(8), v(k - 1), 11),
        (v(k - 1), v(k), 12),
    ];
    for i in blocks(k) {
        out.push((v(i), v(i + 1), 5));
        out.push((v(i + 1), v(i + 2), 6));
        for &x in &classes[i + 2] {
            out.push((v(i + 2), x, 7));
            out.push((x, v(i + 4), 8));
        }
        out.push((v(i + 4), v(i + 5), 9));
        out.push((v(i + 5), v(i + 6), 10));
        out.push((v(i + 6), v(k - 1), 11));
        out.push((v(i - 2), v(i + 6), 11));
        out.push((v(5), v(i + 1), 5));
    }
    out
}

pub(super) fn build(src: &MccInstance, pads: usize) -> Result<ReductionArtifact, ReductionError> {
    let problems = check_strict_layout(src);
    if !problems.is_empty() {
        return Err(ReductionError::InvalidInstance(problems));
    }
    let n = src.n();
    let k = src.k();
    let classes = src.classes();
    let v = |i: usize| classes[i - 1][0];
    let (alpha, alpha2, omega2, omega) = (v(1), v(2), v(k - 1), v(k));

    let mut excluded: BTreeSet<(usize, usize)> = BTreeSet::from([(v(5), v(3))]);
    excluded.extend(blocks(k).map(|i| (v(i), v(i - 2))));
    let mut a_con = Vec::new();
    for (x, y) in src.edges() {
        for (p, q) in [(x, y), (y, x)] {
            let dropped = p == alpha || p == alpha2 || q == omega2 || q == omega || excluded.contains(&(p, q));
            if !dropped {
                a_con.push((p, q));
            }
        }
    }
    a_con.sort_unstable();

    let mut a = Assembly::new(GraphBuilder::new(Orientation::Undirected));
    a.source_vertices(src);
    let vin: BTreeMap<usize, usize> = (0..n)
        .filter(|&x| x != omega && x != omega2)
        .map(|x| (x, a.vertex(format!("vin[v{x}]"), VertexRole::In(x))))
        .collect();
    let vout: BTreeMap<usize, usize> = (0..n)
        .filter(|&x| x != alpha && x != alpha2)
        .map(|x| (x, a.vertex(format!("vout[v{x}]"), VertexRole::Out(x))))
        .collect();

    let mut cur = Cursor::new(-21);
    let red = cur.reserve("red-times", 19);
    let alpha_t = cur.reserve("alpha-time", 1);
    let out_t = cur.reserve("out-time", 1);
    let out2in = cur.reserve("out2in-time", 1);
    let sel = cur.reserve("selection-times", 12);
    let in_t = cur.reserve("in-time", 1);
    let omega_t = cur.reserve("omega-time", 1);
    let blue = cur.reserve("blue-times", 19);
    debug_assert_eq!(sel, 1);

    let docks: Vec<Option<usize>> = vin
        .values()
        .chain(vout.values())
        .copied()
        .map(Some)
        .chain(std::iter::repeat(None).take(pads))
        .collect();
    for dock in docks {
        let ids = a.path(dock, red, blue);
        a.b.add_edge(ids[19], alpha, alpha_t);
        a.b.add_edge(omega, ids[0], omega_t);
    }
    for (&x, &c) in &vout {
        a.b.add_edge(x, c, out_t);
    }
    for &(x, y) in &a_con {
        a.b.add_edge(vout[&x], vin[&y], out2in);
    }
    for (x, y, t) in selection_edges(src) {
        a.b.add_edge(x, y, t);
    }
    for (&x, &c) in &vin {
        a.b.add_edge(c, x, in_t);
    }

    let raw = a.b.build().expect("construction stays in range");
    let delta = 1 - raw.min_label().expect("construction has edges");
    let graph = raw.shift_labels(delta).expect("labels stay small");
    let intervals = cur
        .intervals
        .into_iter()
        .map(|i| Interval {
            name: i.name,
            first: i.first + delta,
            last: i.last + delta,
        })
        .collect();
    Ok(ReductionArtifact {
        graph,
        roles: a.roles,
        variant: Variant::UndirectedStrict,
        source: src.clone(),
        intervals,
        alpha,
        omega,
        alpha_prime: Some(alpha2),
        omega_prime: Some(omega2),
        vin,
        vout,
        vcon: BTreeMap::new(),
        paths: a.paths,
        pads,
    })
}
