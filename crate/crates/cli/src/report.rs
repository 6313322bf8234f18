//! Output records. Field order is the key order on stdout.

use anyhow::Result;
use serde::Serialize;

use tempocc::graph::{Label, Vertex};

pub fn emit<T: Serialize>(record: &T) -> Result<u8> {
    println!("{}", serde_json::to_string(record)?);
    Ok(0)
}

#[derive(Serialize)]
pub struct ClassifyRecord {
    pub command: &'static str,
    pub orientation: &'static str,
    pub n: usize,
    pub time_edges: usize,
    pub simple: bool,
    pub proper: bool,
    pub happy: bool,
    pub lifetime: i64,
    pub label_count: usize,
    pub girth: Option<usize>,
}

#[derive(Serialize)]
pub struct ReachPairRecord {
    pub command: &'static str,
    pub mode: &'static str,
    pub from: Vertex,
    pub to: Vertex,
    pub reaches: bool,
}

#[derive(Serialize)]
pub struct ArrivalRecord {
    pub vertex: Vertex,
    pub label: Label,
}

#[derive(Serialize)]
pub struct ReachSourceRecord {
    pub command: &'static str,
    pub mode: &'static str,
    pub from: Vertex,
    pub reachable: Vec<Vertex>,
    pub arrivals: Vec<ArrivalRecord>,
}

#[derive(Serialize)]
pub struct ReachAllRecord {
    pub command: &'static str,
    pub mode: &'static str,
    pub n: usize,
    pub reachable_pairs: usize,
    pub temporally_connected: bool,
}

#[derive(Serialize)]
pub struct TccRecord {
    pub command: &'static str,
    pub query: &'static str,
    pub mode: &'static str,
    pub min_size: usize,
    pub exact_size: Option<usize>,
    pub found: bool,
    pub size: Option<usize>,
    pub witness: Option<Vec<Vertex>>,
    pub exhaustive: bool,
    pub subsets_examined: u64,
    pub pruned_count: u64,
}

#[derive(Serialize)]
pub struct MaximalRecord {
    pub command: &'static str,
    pub query: &'static str,
    pub mode: &'static str,
    pub set: Vec<Vertex>,
    pub maximal: bool,
}

#[derive(Serialize)]
pub struct OpenRecord {
    pub command: &'static str,
    pub query: &'static str,
    pub mode: &'static str,
    pub size: usize,
    pub witness: Vec<Vertex>,
}

#[derive(Serialize)]
pub struct SolveRecord {
    pub command: &'static str,
    pub action: &'static str,
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub satisfiable: bool,
    pub clique: Option<Vec<usize>>,
}

#[derive(Serialize)]
pub struct GenerateRecord {
    pub command: &'static str,
    pub action: &'static str,
    pub kind: &'static str,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub planted: Option<Vec<usize>>,
}

#[derive(Serialize)]
pub struct NormalizeRecord {
    pub command: &'static str,
    pub action: &'static str,
    pub variant: &'static str,
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub layout_ok: bool,
}

#[derive(Serialize)]
pub struct IntervalRecord {
    pub name: String,
    pub first: Label,
    pub last: Label,
}

#[derive(Serialize)]
pub struct ArtifactRecord {
    pub command: &'static str,
    pub variant: &'static str,
    pub k: usize,
    pub source_n: usize,
    pub n: usize,
    pub time_edges: usize,
    pub label_count: usize,
    pub lifetime: i64,
    pub simple: bool,
    pub happy: bool,
    pub girth: Option<usize>,
    pub pads: usize,
    pub connector_gadget: usize,
    pub intervals: Vec<IntervalRecord>,
}

#[derive(Serialize)]
pub struct WitnessRecord {
    pub command: &'static str,
    pub variant: &'static str,
    pub clique: Option<Vec<usize>>,
    pub size: Option<usize>,
    pub expected_size: Option<usize>,
    pub temporally_connected: Option<bool>,
}

#[derive(Serialize)]
pub struct PadRecord {
    pub command: &'static str,
    pub variant: &'static str,
    pub epsilon: String,
    pub pads: usize,
    pub n: usize,
    pub connector_gadget: usize,
    pub covered: bool,
}

#[derive(Serialize)]
pub struct GadgetRecord {
    pub command: &'static str,
    pub action: &'static str,
    pub variant: &'static str,
    pub n: usize,
    pub time_edges: usize,
    pub happy: bool,
    pub girth: Option<usize>,
    pub temporally_connected: bool,
}

#[derive(Serialize)]
pub struct CertifyRecord {
    pub command: &'static str,
    pub action: &'static str,
    pub variant: &'static str,
    pub mode: &'static str,
    pub min_size: usize,
    pub certified: bool,
    pub statement: &'static str,
    pub witness: Option<Vec<Vertex>>,
    pub subsets_examined: u64,
    pub pruned_examined: u64,
    pub pruned_count: u64,
}

#[derive(Serialize)]
pub struct GirthRecord {
    pub command: &'static str,
    pub girth: usize,
    pub n: usize,
    pub seed: u64,
    pub found: bool,
    pub attempts: u64,
    pub actual_girth: Option<usize>,
    pub time_edges: Option<usize>,
    pub happy: Option<bool>,
    pub temporally_connected: Option<bool>,
}

#[derive(Serialize)]
pub struct RoundtripRecord {
    pub command: &'static str,
    pub variant: &'static str,
    pub k: usize,
    pub class_sizes: Vec<usize>,
    pub edge_prob: f64,
    pub seed: u64,
    pub n: usize,
    pub mcc_answer: bool,
    pub reduction_answer: bool,
    pub witness_size: Option<usize>,
    pub extracted: Option<Vec<usize>>,
    pub subsets_examined: u64,
    pub agree: bool,
}
