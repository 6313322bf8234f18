//! `tempocc` command-line front end. Every command prints one JSON record on
//! stdout; artifacts go to the files named by `--out`.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tempocc::components::{self, ComponentQuery, Prune, SearchError, DEFAULT_BUDGET};
use tempocc::gadgets::{self, Extension, GadgetError};
use tempocc::graph::{TemporalGraph, Vertex};
use tempocc::io;
use tempocc::mcc::{self, GenKind, GenParams, MccError, MccInstance, Normalized, DEFAULT_SOLVE_BUDGET};
use tempocc::reach::{self, ReachMode};
use tempocc::reductions::{self, Epsilon, ReductionArtifact, Variant};

use report::*;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "tempocc", version, about = "Closed temporally connected components and reduction generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simple/proper/happy classification, lifetime, label count and girth.
    Classify { graph: PathBuf },
    /// Temporal reachability from one vertex, between two, or for all pairs.
    Reach(ReachArgs),
    /// Search for closed temporally connected components.
    #[command(subcommand)]
    Tcc(TccCommand),
    /// Multicolored clique instances.
    #[command(subcommand)]
    Mcc(MccCommand),
    /// Build one of the reductions from an instance.
    Reduce(ReduceArgs),
    /// Build and check the forward witness of a reduction.
    Witness(WitnessArgs),
    /// Pad a reduction so the connector gadget dominates the vertex count.
    Pad(PadArgs),
    /// Connector paths and their extensions.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Search for a happy temporally connected graph of a given girth.
    GirthSearch(GirthArgs),
    /// Compare the reduction's answer with the brute-force answer on a random
    /// instance; exits 1 on disagreement.
    Roundtrip(RoundtripArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Nonstrict,
}

impl From<ModeArg> for ReachMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => ReachMode::Strict,
            ModeArg::Nonstrict => ReachMode::NonStrict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Directed,
    Happy,
    Strict,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Directed => Variant::DirectedHappy,
            VariantArg::Happy => Variant::UndirectedHappy,
            VariantArg::Strict => Variant::UndirectedStrict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PruneArg {
    None,
    Connected,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    PlantedYes,
    RandomNo,
    FigureK7,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    Connector,
    G1,
    G2,
    G3,
    G4,
    /// The relabelled connector-path structure, temporally connected.
    Fallback,
}

#[derive(Args)]
struct SearchOpts {
    #[arg(long, value_enum, default_value = "strict")]
    mode: ModeArg,
    /// Largest vertex count searched exhaustively.
    #[arg(long = "max-n", env = "TEMPOCC_BUDGET", default_value_t = DEFAULT_BUDGET)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "none")]
    prune: PruneArg,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl SearchOpts {
    fn query(&self, q: ComponentQuery) -> ComponentQuery {
        let prune = match self.prune {
            PruneArg::None => Prune::None,
            PruneArg::Connected => Prune::ConnectedUnderlying,
        };
        q.with_budget(self.max_n).with_prune(prune).with_workers(self.workers)
    }
}

#[derive(Args)]
struct ReachArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "strict")]
    mode: ModeArg,
    #[arg(long)]
    from: Option<Vertex>,
    #[arg(long, requires = "from")]
    to: Option<Vertex>,
}

#[derive(Subcommand)]
enum TccCommand {
    /// Least witness of size at least `--min-size`.
    Find {
        graph: PathBuf,
        /// Defaults to 2 for directed and 3 for undirected graphs.
        #[arg(long)]
        min_size: Option<usize>,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Least witness of exactly `--size` vertices.
    Exact {
        graph: PathBuf,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Whether a closed component has no closed proper superset.
    Maximal {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<Vertex>,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// A largest open component.
    Open {
        graph: PathBuf,
        #[command(flatten)]
        search: SearchOpts,
    },
}

#[derive(Subcommand)]
enum MccCommand {
    Solve {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SOLVE_BUDGET)]
        budget: u128,
    },
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_delimiter = ',', required = true)]
        class_sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rewrite an instance into the layout a reduction expects.
    Normalize {
        instance: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(value_enum)]
    variant: VariantArg,
    instance: PathBuf,
    /// Apply the matching normalisation first.
    #[arg(long)]
    normalize: bool,
    /// Graph output; the role table goes next to it with a `.roles` suffix.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(value_enum)]
    variant: VariantArg,
    instance: PathBuf,
    #[arg(long)]
    normalize: bool,
    /// Clique of the instance as given; solved by brute force if omitted.
    #[arg(long, value_delimiter = ',')]
    clique: Option<Vec<usize>>,
}

#[derive(Args)]
struct PadArgs {
    #[arg(value_enum)]
    variant: VariantArg,
    instance: PathBuf,
    /// A fraction such as `0.1` or `1/10`.
    #[arg(long)]
    epsilon: String,
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GadgetCommand {
    Build {
        #[arg(long, value_enum, default_value = "connector")]
        variant: GadgetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively confirm there is no nontrivial closed component.
    Certify {
        #[arg(long, value_enum, default_value = "connector")]
        variant: GadgetArg,
        #[arg(long)]
        min_size: Option<usize>,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        #[arg(long = "max-n", env = "TEMPOCC_BUDGET", default_value_t = DEFAULT_BUDGET)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Args)]
struct GirthArgs {
    #[arg(long)]
    girth: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    attempts: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RoundtripArgs {
    #[arg(long, value_enum, default_value = "directed")]
    variant: VariantArg,
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    class_sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long = "max-n", env = "TEMPOCC_BUDGET", default_value_t = DEFAULT_BUDGET)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_budget(&e) { EXIT_BUDGET } else { EXIT_USAGE })
        }
    }
}

fn is_budget(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(c.downcast_ref::<SearchError>(), Some(SearchError::BudgetExceeded { .. }))
            || matches!(
                c.downcast_ref::<GadgetError>(),
                Some(GadgetError::Search(SearchError::BudgetExceeded { .. }))
            )
            || matches!(c.downcast_ref::<MccError>(), Some(MccError::BudgetExceeded { .. }))
    })
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Classify { graph } => classify(&read_graph(&graph)?),
        Command::Reach(a) => reach_cmd(a),
        Command::Tcc(c) => tcc(c),
        Command::Mcc(c) => mcc_cmd(c),
        Command::Reduce(a) => reduce(a),
        Command::Witness(a) => witness(a),
        Command::Pad(a) => pad(a),
        Command::Gadget(c) => gadget(c),
        Command::GirthSearch(a) => girth_search(a),
        Command::Roundtrip(a) => roundtrip(a),
    }
}

fn read_graph(path: &Path) -> Result<TemporalGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_tg(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_instance(path: &Path) -> Result<MccInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_mcc(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn normalize(variant: Variant, i: &MccInstance) -> Normalized {
    match variant {
        Variant::DirectedHappy => mcc::normalize_directed(i),
        Variant::UndirectedHappy => mcc::normalize_happy_undirected(i),
        Variant::UndirectedStrict => mcc::normalize_strict_undirected(i),
    }
}

fn build(variant: Variant, i: &MccInstance) -> Result<ReductionArtifact> {
    let a = match variant {
        Variant::DirectedHappy => reductions::reduce_directed_happy(i),
        Variant::UndirectedHappy => reductions::reduce_undirected_happy(i),
        Variant::UndirectedStrict => reductions::reduce_undirected_strict(i),
    };
    Ok(a?)
}

/// The instance handed to the reduction, with the map back to the input.
fn prepare(variant: Variant, path: &Path, normalize_first: bool) -> Result<(MccInstance, Normalized)> {
    let input = read_instance(path)?;
    let normalized = if normalize_first {
        normalize(variant, &input)
    } else {
        Normalized {
            origin: (0..input.n()).map(Some).collect(),
            instance: input.clone(),
        }
    };
    Ok((input, normalized))
}

fn roles_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".roles");
    PathBuf::from(p)
}

fn save_artifact(a: &ReductionArtifact, out: Option<&Path>) -> Result<()> {
    if let Some(out) = out {
        write_file(out, &io::write_tg(&a.graph))?;
        write_file(&roles_path(out), &reductions::write_roles(a))?;
    }
    Ok(())
}

fn classify(g: &TemporalGraph) -> Result<u8> {
    let c = g.classify();
    emit(&ClassifyRecord {
        command: "classify",
        orientation: g.orientation().as_str(),
        n: g.n(),
        time_edges: g.time_edge_count(),
        simple: c.simple,
        proper: c.proper,
        happy: c.happy,
        lifetime: c.lifetime,
        label_count: c.label_count,
        girth: g.girth(),
    })
}

fn check_vertex(g: &TemporalGraph, v: Vertex) -> Result<()> {
    if v >= g.n() {
        bail!("vertex {v} out of range for {} vertices", g.n());
    }
    Ok(())
}

fn reach_cmd(a: ReachArgs) -> Result<u8> {
    let g = read_graph(&a.graph)?;
    let mode = ReachMode::from(a.mode);
    match (a.from, a.to) {
        (Some(u), Some(v)) => {
            check_vertex(&g, u)?;
            check_vertex(&g, v)?;
            emit(&ReachPairRecord {
                command: "reach",
                mode: mode.as_str(),
                from: u,
                to: v,
                reaches: reach::reaches(&g, mode, u, v),
            })
        }
        (Some(u), None) => {
            check_vertex(&g, u)?;
            let t = reach::earliest_arrival(&g, mode, u);
            let arrivals = t
                .arrival
                .iter()
                .enumerate()
                .filter_map(|(v, &a)| match a {
                    reach::Arrival::At(l) => Some(ArrivalRecord { vertex: v, label: l }),
                    _ => None,
                })
                .collect();
            emit(&ReachSourceRecord {
                command: "reach",
                mode: mode.as_str(),
                from: u,
                reachable: (0..g.n()).filter(|&v| t.reaches(v)).collect(),
                arrivals,
            })
        }
        _ => {
            let m = reach::reachability_matrix(&g, mode);
            emit(&ReachAllRecord {
                command: "reach",
                mode: mode.as_str(),
                n: g.n(),
                reachable_pairs: m.reachable_pairs(),
                temporally_connected: m.is_complete(),
            })
        }
    }
}

fn tcc(c: TccCommand) -> Result<u8> {
    match c {
        TccCommand::Find {
            graph,
            min_size,
            search,
        } => {
            let g = read_graph(&graph)?;
            let min = min_size.unwrap_or_else(|| components::nontrivial_threshold(&g));
            let q = search.query(ComponentQuery::new(search.mode.into(), min));
            tcc_report("find", &g, &q)
        }
        TccCommand::Exact { graph, size, search } => {
            let g = read_graph(&graph)?;
            let q = search.query(ComponentQuery::exact(search.mode.into(), size));
            tcc_report("exact", &g, &q)
        }
        TccCommand::Maximal { graph, set, search } => {
            let g = read_graph(&graph)?;
            let mode = ReachMode::from(search.mode);
            let maximal = components::is_maximal_closed_tcc(&g, mode, &set, search.max_n)?;
            let mut set = set;
            set.sort_unstable();
            set.dedup();
            emit(&MaximalRecord {
                command: "tcc",
                query: "maximal",
                mode: mode.as_str(),
                set,
                maximal,
            })
        }
        TccCommand::Open { graph, search } => {
            let g = read_graph(&graph)?;
            let mode = ReachMode::from(search.mode);
            let witness = components::max_open_component(&g, mode, search.max_n)?;
            emit(&OpenRecord {
                command: "tcc",
                query: "open",
                mode: mode.as_str(),
                size: witness.len(),
                witness,
            })
        }
    }
}

fn tcc_report(query: &'static str, g: &TemporalGraph, q: &ComponentQuery) -> Result<u8> {
    let r = components::find_closed_tcc(g, q)?;
    emit(&TccRecord {
        command: "tcc",
        query,
        mode: q.mode.as_str(),
        min_size: q.min_size,
        exact_size: q.exact_size,
        found: r.witness.is_some(),
        size: r.witness.as_ref().map(Vec::len),
        witness: r.witness,
        exhaustive: r.exhaustive,
        subsets_examined: r.subsets_examined,
        pruned_count: r.pruned_count,
    })
}

fn mcc_cmd(c: MccCommand) -> Result<u8> {
    match c {
        MccCommand::Solve { instance, budget } => {
            let i = read_instance(&instance)?;
            let problems: Vec<String> = i.validate().iter().map(ToString::to_string).collect();
            if !problems.is_empty() {
                bail!("invalid instance: {}", problems.join("; "));
            }
            let clique = i.solve_bruteforce(budget)?;
            emit(&SolveRecord {
                command: "mcc",
                action: "solve",
                n: i.n(),
                k: i.k(),
                edges: i.edge_count(),
                satisfiable: clique.is_some(),
                clique,
            })
        }
        MccCommand::Generate {
            kind,
            class_sizes,
            edge_prob,
            seed,
            out,
        } => {
            let (kind, name) = match kind {
                KindArg::Random => (GenKind::Random, "random"),
                KindArg::PlantedYes => (GenKind::PlantedYes, "planted-yes"),
                KindArg::RandomNo => (GenKind::RandomNo, "random-no"),
                KindArg::FigureK7 => (GenKind::FigureK7, "figure-k7"),
            };
            let params = GenParams {
                class_sizes,
                edge_prob,
                max_resamples: 10_000,
            };
            let g = mcc::generate(kind, &params, seed)?;
            write_file(&out, &io::write_mcc(&g.instance))?;
            emit(&GenerateRecord {
                command: "mcc",
                action: "generate",
                kind: name,
                seed,
                n: g.instance.n(),
                k: g.instance.k(),
                edges: g.instance.edge_count(),
                planted: g.planted,
            })
        }
        MccCommand::Normalize {
            instance,
            variant,
            out,
        } => {
            let variant = Variant::from(variant);
            let i = read_instance(&instance)?;
            let nz = normalize(variant, &i);
            write_file(&out, &io::write_mcc(&nz.instance))?;
            let problems = match variant {
                Variant::DirectedHappy => Vec::new(),
                Variant::UndirectedHappy => mcc::check_happy_layout(&nz.instance),
                Variant::UndirectedStrict => mcc::check_strict_layout(&nz.instance),
            };
            emit(&NormalizeRecord {
                command: "mcc",
                action: "normalize",
                variant: variant.as_str(),
                n: nz.instance.n(),
                k: nz.instance.k(),
                edges: nz.instance.edge_count(),
                layout_ok: problems.is_empty(),
            })
        }
    }
}

fn reduce(a: ReduceArgs) -> Result<u8> {
    let variant = Variant::from(a.variant);
    let (_, nz) = prepare(variant, &a.instance, a.normalize)?;
    let art = build(variant, &nz.instance)?;
    save_artifact(&art, a.out.as_deref())?;
    emit(&artifact_record("reduce", &art))
}

fn artifact_record(command: &'static str, a: &ReductionArtifact) -> ArtifactRecord {
    let c = a.graph.classify();
    ArtifactRecord {
        command,
        variant: a.variant.as_str(),
        k: a.source.k(),
        source_n: a.source.n(),
        n: a.graph.n(),
        time_edges: a.graph.time_edge_count(),
        label_count: c.label_count,
        lifetime: c.lifetime,
        simple: c.simple,
        happy: c.happy,
        girth: a.graph.girth(),
        pads: a.pads,
        connector_gadget: a.connector_gadget().len(),
        intervals: a
            .intervals
            .iter()
            .map(|i| IntervalRecord {
                name: i.name.clone(),
                first: i.first,
                last: i.last,
            })
            .collect(),
    }
}

fn witness(a: WitnessArgs) -> Result<u8> {
    let variant = Variant::from(a.variant);
    let (input, nz) = prepare(variant, &a.instance, a.normalize)?;
    let art = build(variant, &nz.instance)?;
    let clique = match a.clique {
        Some(c) => Some(c),
        None => input.solve_bruteforce(DEFAULT_SOLVE_BUDGET)?,
    };
    let Some(clique) = clique else {
        return emit(&WitnessRecord {
            command: "witness",
            variant: variant.as_str(),
            clique: None,
            size: None,
            expected_size: None,
            temporally_connected: None,
        });
    };
    let lifted = nz
        .lift_clique(&clique)
        .context("the given vertices are not a multicolored clique of the instance")?;
    let s = reductions::witness_from_clique(&art, &lifted)?;
    let expected = reductions::expected_witness_size(variant, nz.instance.k(), nz.instance.n());
    emit(&WitnessRecord {
        command: "witness",
        variant: variant.as_str(),
        clique: Some(clique),
        size: Some(s.len()),
        expected_size: Some(expected),
        temporally_connected: Some(reach::is_tc(&art.graph, art.mode(), &s)),
    })
}

fn pad(a: PadArgs) -> Result<u8> {
    let variant = Variant::from(a.variant);
    let eps: Epsilon = a.epsilon.parse()?;
    let (_, nz) = prepare(variant, &a.instance, a.normalize)?;
    let base = build(variant, &nz.instance)?;
    let padded = reductions::pad_for_inapproximability(&base, eps)?;
    save_artifact(&padded, a.out.as_deref())?;
    let gadget = padded.connector_gadget().len();
    let n = padded.graph.n();
    emit(&PadRecord {
        command: "pad",
        variant: variant.as_str(),
        epsilon: eps.to_string(),
        pads: padded.pads,
        n,
        connector_gadget: gadget,
        covered: (eps.den() as u128) * gadget as u128 >= (eps.den() - eps.num()) as u128 * n as u128,
    })
}

fn gadget_graph(v: GadgetArg) -> Result<(TemporalGraph, &'static str)> {
    let ext = |e: Extension| -> Result<(TemporalGraph, &'static str)> {
        Ok((gadgets::extend_connector_path(e, &e.default_labels())?, e.name()))
    };
    match v {
        GadgetArg::Connector => Ok((gadgets::default_connector_path().graph, "connector")),
        GadgetArg::G1 => ext(Extension::G1),
        GadgetArg::G2 => ext(Extension::G2),
        GadgetArg::G3 => ext(Extension::G3),
        GadgetArg::G4 => ext(Extension::G4),
        GadgetArg::Fallback => Ok((gadgets::girth_five_fallback(), "fallback")),
    }
}

fn gadget(c: GadgetCommand) -> Result<u8> {
    match c {
        GadgetCommand::Build { variant, out } => {
            let (g, name) = gadget_graph(variant)?;
            if let Some(out) = out {
                write_file(&out, &io::write_tg(&g))?;
            }
            let cl = g.classify();
            emit(&GadgetRecord {
                command: "gadget",
                action: "build",
                variant: name,
                n: g.n(),
                time_edges: g.time_edge_count(),
                happy: cl.happy,
                girth: g.girth(),
                temporally_connected: reach::is_temporally_connected(&g, ReachMode::Strict),
            })
        }
        GadgetCommand::Certify {
            variant,
            min_size,
            mode,
            max_n,
            workers,
        } => {
            let (g, name) = gadget_graph(variant)?;
            let min = min_size.unwrap_or_else(|| components::nontrivial_threshold(&g));
            let mode = ReachMode::from(mode);
            let cert = gadgets::certify_no_nontrivial_tcc(&g, mode, min, max_n, workers)?;
            eprintln!("certify {name}: {:.3}s", cert.elapsed.as_secs_f64());
            emit(&CertifyRecord {
                command: "gadget",
                action: "certify",
                variant: name,
                mode: mode.as_str(),
                min_size: min,
                certified: cert.certified,
                statement: if cert.certified {
                    "no nontrivial closed tcc"
                } else {
                    "closed tcc found"
                },
                witness: cert.witness,
                subsets_examined: cert.subsets_examined,
                pruned_examined: cert.pruned_examined,
                pruned_count: cert.pruned_count,
            })
        }
    }
}

fn girth_search(a: GirthArgs) -> Result<u8> {
    let o = gadgets::find_tc_graph_of_girth(a.girth, a.n, a.seed, a.attempts, a.workers)?;
    if let (Some(out), Some(g)) = (&a.out, &o.graph) {
        write_file(out, &io::write_tg(g))?;
    }
    emit(&GirthRecord {
        command: "girth-search",
        girth: a.girth,
        n: a.n,
        seed: a.seed,
        found: o.graph.is_some(),
        attempts: o.attempts,
        actual_girth: o.graph.as_ref().and_then(TemporalGraph::girth),
        time_edges: o.graph.as_ref().map(TemporalGraph::time_edge_count),
        happy: o.graph.as_ref().map(|g| g.classify().happy),
        temporally_connected: o
            .graph
            .as_ref()
            .map(|g| reach::is_temporally_connected(g, ReachMode::Strict)),
    })
}

fn roundtrip(a: RoundtripArgs) -> Result<u8> {
    if a.class_sizes.len() != a.k {
        bail!("{} class sizes given for k = {}", a.class_sizes.len(), a.k);
    }
    let variant = Variant::from(a.variant);
    let params = GenParams {
        class_sizes: a.class_sizes.clone(),
        edge_prob: a.edge_prob,
        max_resamples: 0,
    };
    let input = mcc::generate(GenKind::Random, &params, a.seed)?.instance;
    let mcc_answer = input.solve_bruteforce(DEFAULT_SOLVE_BUDGET)?;
    let nz = normalize(variant, &input);
    let art = build(variant, &nz.instance)?;
    let q = ComponentQuery::nontrivial(&art.graph, art.mode())
        .with_budget(a.max_n)
        .with_prune(Prune::ConnectedUnderlying)
        .with_workers(a.workers);
    let r = components::find_closed_tcc(&art.graph, &q)?;
    let extracted = match &r.witness {
        Some(s) => reductions::extract_clique_from_tcc(&art, s)
            .ok()
            .map(|c| nz.project_clique(&c))
            .filter(|c| input.is_multicolored_clique(c)),
        None => None,
    };
    let agree = mcc_answer.is_some() == r.witness.is_some() && (r.witness.is_none() || extracted.is_some());
    emit(&RoundtripRecord {
        command: "roundtrip",
        variant: variant.as_str(),
        k: a.k,
        class_sizes: a.class_sizes,
        edge_prob: a.edge_prob,
        seed: a.seed,
        n: art.graph.n(),
        mcc_answer: mcc_answer.is_some(),
        reduction_answer: r.witness.is_some(),
        witness_size: r.witness.as_ref().map(Vec::len),
        extracted,
        subsets_examined: r.subsets_examined,
        agree,
    })?;
    Ok(if agree { 0 } else { EXIT_MISMATCH })
}
