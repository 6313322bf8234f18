//! Happy directed construction with labels 1 to 11.

use std::collections::BTreeMap;

use super::{Assembly, Interval, ReductionArtifact, ReductionError, Variant, VertexRole};
use crate::graph::{GraphBuilder, Orientation};
use crate::mcc::MccInstance;

const LABEL_NAMES: [&str; 11] = [
    "postin",
    "gather",
    "out",
    "forward",
    "omega-even",
    "odd-omega",
    "backward",
    "alpha-late",
    "in",
    "scatter",
    "preout",
];

/// Requires a valid instance with an odd number of classes.
pub fn reduce_directed_happy(src: &MccInstance) -> Result<ReductionArtifact, ReductionError> {
    build(src, 0)
}

pub(super) fn build(src: &MccInstance, pads: usize) -> Result<ReductionArtifact, ReductionError> {
    let mut problems: Vec<String> = src.validate().iter().map(ToString::to_string).collect();
    if src.k() % 2 == 0 {
        problems.push(format!("k = {} is even", src.k()));
    }
    if !problems.is_empty() {
        return Err(ReductionError::InvalidInstance(problems));
    }
    let n = src.n();
    let k = src.k();
    let class = |x: usize| src.color(x);

    let mut a = Assembly::new(GraphBuilder::new(Orientation::Directed));
    a.source_vertices(src);
    let alpha = a.vertex("alpha".into(), VertexRole::Alpha);
    let omega = a.vertex("omega".into(), VertexRole::Omega);
    let vout: BTreeMap<usize, usize> = (0..n)
        .map(|x| (x, a.vertex(format!("vout[v{x}]"), VertexRole::Out(x))))
        .collect();
    let vin: BTreeMap<usize, usize> = (0..n)
        .map(|x| (x, a.vertex(format!("vin[v{x}]"), VertexRole::In(x))))
        .collect();
    let preout = a.vertex("preout[omega]".into(), VertexRole::PreOutOmega);
    let vout_omega = a.vertex("vout[omega]".into(), VertexRole::Out(omega));
    let vin_alpha = a.vertex("vin[alpha]".into(), VertexRole::In(alpha));
    let postin = a.vertex("postin[alpha]".into(), VertexRole::PostInAlpha);
    let pad: Vec<usize> = (0..pads)
        .map(|i| a.vertex(format!("pad{i}"), VertexRole::Pad))
        .collect();

    let b = &mut a.b;
    b.add_edge(vin_alpha, postin, 1);

    for x in 0..n {
        b.add_edge(vout[&x], alpha, 2);
        b.add_edge(vin[&x], alpha, 2);
    }
    for &c in [preout, vout_omega, postin].iter().chain(&pad) {
        b.add_edge(c, alpha, 2);
    }

    for x in 0..n {
        b.add_edge(x, vout[&x], 3);
    }
    b.add_edge(omega, vout_omega, 3);

    for x in 0..n {
        let i = class(x);
        if i == 1 {
            b.add_edge(alpha, x, 4);
        }
        if i % 2 == 0 {
            for y in (0..n).filter(|&y| class(y) == i + 1) {
                b.add_edge(x, y, 4);
            }
        }
        b.add_edge(vout[&x], vin_alpha, 4);
        if i == k {
            b.add_edge(vout_omega, vin[&x], 4);
        }
    }
    b.add_edge(vout_omega, vin_alpha, 4);
    for (x, y) in src.edges() {
        b.add_edge(vout[&y], vin[&x], 4);
        b.add_edge(vout[&x], vin[&y], 4);
    }

    for x in 0..n {
        let i = class(x);
        if i % 2 == 0 {
            b.add_edge(omega, x, 5);
            for y in (0..n).filter(|&y| class(y) == i - 1) {
                b.add_edge(x, y, 7);
            }
        } else {
            b.add_edge(x, omega, 6);
        }
        if i >= 2 {
            b.add_edge(alpha, x, 8);
        }
    }

    for x in 0..n {
        b.add_edge(vin[&x], x, 9);
    }
    b.add_edge(vin_alpha, alpha, 9);

    for x in 0..n {
        b.add_edge(omega, vout[&x], 10);
        b.add_edge(omega, vin[&x], 10);
    }
    for &c in [preout, vin_alpha, postin].iter().chain(&pad) {
        b.add_edge(omega, c, 10);
    }

    b.add_edge(preout, vout_omega, 11);

    let intervals = LABEL_NAMES
        .iter()
        .zip(1..)
        .map(|(name, t)| Interval {
            name: name.to_string(),
            first: t,
            last: t,
        })
        .collect();
    let mut vin = vin;
    vin.insert(alpha, vin_alpha);
    let mut vout = vout;
    vout.insert(omega, vout_omega);
    Ok(ReductionArtifact {
        graph: a.b.build().expect("construction stays in range"),
        roles: a.roles,
        variant: Variant::DirectedHappy,
        source: src.clone(),
        intervals,
        alpha,
        omega,
        alpha_prime: None,
        omega_prime: None,
        vin,
        vout,
        vcon: BTreeMap::new(),
        paths: Vec::new(),
        pads,
    })
}
