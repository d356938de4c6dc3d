//! `hiercons`: hierarchical consensus clustering from the command line.
//!
//! Exit codes: 0 success, 2 usage, 3 input/parse failure, 4 numerical or
//! iteration failure.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hiercons::ensemble::{matrix_to_bytes, matrix_to_csv, NullKind, ThresholdMethod};
use hiercons::resolution::{exponential_floor, EventProfile};
use hiercons::{
    all_cuts, coclassification, compare, consensus_partition_with, estimate_gamma_min, gamma_max, generate_network,
    generate_ensemble, hierarchical_consensus_with, lf_consensus, load_edge_list, mean_coclassification,
    sample_gammas, sample_hierarchy, ConsensusOptions, DirectedPolicy, Error, GammaMinOptions, GammaStrategy, Graph,
    HierBenchmarkSpec, IdMap, ModularityClusterer, Partition, PartitionEnsemble, Seed,
};
use output::Outputs;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hiercons", version, about = "Hierarchical consensus clustering of networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Root seed for all randomness.
    #[arg(long, global = true, env = "HIERCONS_SEED")]
    seed: Option<u64>,

    /// Worker threads (0 = one per logical CPU). Does not affect results.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Directory for output files.
    #[arg(short, long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample an ensemble of modularity partitions over the resolution range.
    Sample(SampleArgs),
    /// Build the hierarchical consensus tree of an ensemble.
    Hierarchy(HierarchyArgs),
    /// Flat consensus partition of an ensemble.
    Consensus(ConsensusArgs),
    /// Thresholded (LF) consensus baseline.
    Lf(LfArgs),
    /// Generate a two-level hierarchical benchmark network.
    Benchmark(BenchmarkArgs),
    /// Compare two partitions (MI, NMI, AMI).
    Compare(CompareArgs),
    /// Estimate the resolution range of a graph.
    Gammarange(GraphArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Directed {
    /// Sum weights of the two orientations.
    Symmetrize,
    /// Require both orientations to carry equal weights.
    Reject,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Strategy {
    Event,
    Linear,
    Exponential,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Null {
    Local,
    Permutation,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum MatrixFormat {
    Csv,
    Bin,
}

#[derive(Args, Debug, Serialize)]
struct GraphArgs {
    /// Edge list: `src dst [weight]` per line.
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Directed::Symmetrize)]
    directed: Directed,
}

#[derive(Args, Debug, Serialize)]
struct SampleArgs {
    #[command(flatten)]
    input: GraphArgs,
    #[arg(long, value_enum, default_value_t = Strategy::Event)]
    strategy: Strategy,
    /// Number of partitions (at least 2).
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(2..))]
    count: u64,
    /// Override the estimated lower end of the resolution range.
    #[arg(long)]
    gamma_min: Option<f64>,
    /// Override the upper end of the resolution range.
    #[arg(long)]
    gamma_max: Option<f64>,
    /// Under exponential sampling, replace γ_min = 0 by the smallest event / 1000.
    #[arg(long)]
    clamp_exponential: bool,
}

#[derive(Args, Debug, Serialize)]
struct EnsembleArgs {
    /// Ensemble CSV (one row per node, one column per partition).
    ensemble: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct HierarchyArgs {
    #[command(flatten)]
    input: EnsembleArgs,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Null::Local)]
    null: Null,
    #[arg(long, default_value_t = 50)]
    max_iter: usize,
    /// Also export the co-classification matrix.
    #[arg(long, value_enum)]
    coclassification: Option<MatrixFormat>,
}

#[derive(Args, Debug, Serialize)]
struct ConsensusArgs {
    #[command(flatten)]
    input: EnsembleArgs,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Null::Local)]
    null: Null,
    #[arg(long, default_value_t = 50)]
    max_iter: usize,
}

#[derive(Args, Debug, Serialize)]
struct LfArgs {
    #[command(flatten)]
    input: EnsembleArgs,
    #[arg(long)]
    tau: f64,
    /// Resolution used when clustering the thresholded matrix.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 50)]
    max_iter: usize,
}

#[derive(Args, Debug, Serialize)]
struct BenchmarkArgs {
    /// Benchmark specification (JSON); missing fields take their defaults.
    spec: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct CompareArgs {
    first: PathBuf,
    second: PathBuf,
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
    partial: Option<Partition>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            partial: None,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
            partial: None,
        }
    }

    pub fn compute(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
            partial: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Parse { .. } | Error::Json(_) => Failure::input(e.to_string()),
            Error::IterationCap { ref last, .. } => Failure {
                code: 4,
                partial: last.as_deref().cloned(),
                message: e.to_string(),
            },
            other => Failure::compute(other.to_string()),
        }
    }
}

fn read_input<T>(path: &Path, parse: impl FnOnce(&str) -> hiercons::Result<T>) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_graph(args: &GraphArgs) -> Result<(Graph, IdMap), Failure> {
    let policy = match args.directed {
        Directed::Symmetrize => DirectedPolicy::Symmetrize,
        Directed::Reject => DirectedPolicy::Reject,
    };
    load_edge_list(&args.graph, policy).map_err(|e| Failure::input(format!("{}: {e}", args.graph.display())))
}

fn load_ensemble(path: &Path) -> Result<PartitionEnsemble, Failure> {
    read_input(path, PartitionEnsemble::from_csv)
}

fn null_kind(n: Null) -> NullKind {
    match n {
        Null::Local => NullKind::LocalPermutation,
        Null::Permutation => NullKind::Permutation,
    }
}

fn consensus_options(alpha: f64, null: Null, max_iter: usize) -> Result<ConsensusOptions, Failure> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Failure::usage(format!("--alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(ConsensusOptions {
        null: null_kind(null),
        method: ThresholdMethod::Normal,
        max_iter,
        ..ConsensusOptions::new(alpha)
    })
}

fn gamma_bounds(g: &Graph, args: &SampleArgs, seed: Seed) -> Result<(f64, f64), Failure> {
    let hi = match args.gamma_max {
        Some(x) => x,
        None => gamma_max(g)?,
    };
    let mut lo = match args.gamma_min {
        Some(x) => x,
        None => estimate_gamma_min(g, GammaMinOptions::default(), seed.domain(b"gamma_min"))?,
    };
    if matches!(args.strategy, Strategy::Exponential) && lo <= 0.0 {
        if !args.clamp_exponential {
            return Err(Failure::usage(format!(
                "exponential sampling needs gamma_min > 0 (estimated {lo}); \
                 pass --clamp-exponential to use the smallest event / 1000, or --gamma-min"
            )));
        }
        lo = exponential_floor(g)?;
    }
    Ok((lo, hi))
}

fn cmd_sample(args: &SampleArgs, seed: Seed, out: &Outputs) -> Result<(), Failure> {
    let (g, ids) = load_graph(&args.input)?;
    let (lo, hi) = gamma_bounds(&g, args, seed)?;
    let strategy = match args.strategy {
        Strategy::Event => GammaStrategy::Event,
        Strategy::Linear => GammaStrategy::Linear,
        Strategy::Exponential => GammaStrategy::Exponential,
    };
    let gammas = sample_gammas(&g, strategy, args.count as usize, (lo, hi))?;
    let e = generate_ensemble(&g, &gammas, seed.domain(b"ensemble"), 0)?;
    out.write("ensemble.csv", e.to_csv())?;
    out.write("events.csv", EventProfile::build(&g)?.to_csv())?;
    out.write("node_ids.csv", ids.to_csv())?;
    println!("gamma_min={lo:?} gamma_max={hi:?} partitions={}", e.len());
    Ok(())
}

fn cuts_csv(n: usize, cuts: &[(f64, Partition)]) -> (String, String) {
    let mut table = String::from("node_id");
    for k in 0..cuts.len() {
        let _ = write!(table, ",cut_{k}");
    }
    table.push('\n');
    for i in 0..n {
        let _ = write!(table, "{i}");
        for (_, p) in cuts {
            let _ = write!(table, ",{}", p.label(i));
        }
        table.push('\n');
    }
    let mut levels = String::from("cut,threshold,clusters\n");
    for (k, (th, p)) in cuts.iter().enumerate() {
        let _ = writeln!(levels, "cut_{k},{th:?},{}", p.n_clusters());
    }
    (table, levels)
}

fn cmd_hierarchy(args: &HierarchyArgs, seed: Seed, out: &Outputs) -> Result<(), Failure> {
    let e = load_ensemble(&args.input.ensemble)?;
    let opts = consensus_options(args.alpha, args.null, args.max_iter)?;
    let tree = hierarchical_consensus_with(&e, &opts, seed.domain(b"hierarchy"), &mean_coclassification)?;
    out.write("tree.json", tree.to_json()? + "\n")?;
    out.write("tree_flat.csv", tree.to_flat_csv())?;
    let cuts = all_cuts(&tree);
    let (table, levels) = cuts_csv(e.n(), &cuts);
    out.write("cuts.csv", table)?;
    out.write("cut_levels.csv", levels)?;
    match args.coclassification {
        Some(MatrixFormat::Csv) => {
            out.write("coclassification.csv", matrix_to_csv(&coclassification(&e)))?;
        }
        Some(MatrixFormat::Bin) => {
            out.write("coclassification.bin", matrix_to_bytes(&coclassification(&e)))?;
        }
        None => {}
    }
    println!(
        "tree_nodes={} leaves={} depth={} cuts={}",
        tree.nodes.len(),
        tree.leaves().len(),
        tree.depth(),
        cuts.len()
    );
    Ok(())
}

fn cmd_consensus(args: &ConsensusArgs, seed: Seed, out: &Outputs) -> Result<(), Failure> {
    let e = load_ensemble(&args.input.ensemble)?;
    let opts = consensus_options(args.alpha, args.null, args.max_iter)?;
    let p = consensus_partition_with(&e, &opts, seed.domain(b"consensus"), None)?;
    out.write("consensus.csv", p.to_csv())?;
    println!("clusters={}", p.n_clusters());
    Ok(())
}

fn cmd_lf(args: &LfArgs, seed: Seed, out: &Outputs) -> Result<(), Failure> {
    if !(0.0..=1.0).contains(&args.tau) {
        return Err(Failure::usage(format!("--tau must lie in [0, 1], got {}", args.tau)));
    }
    let e = load_ensemble(&args.input.ensemble)?;
    let clusterer = ModularityClusterer { gamma: args.gamma };
    let p = lf_consensus(&e, args.tau, &clusterer, args.max_iter, seed.domain(b"lf"))?;
    out.write("lf.csv", p.to_csv())?;
    println!("clusters={}", p.n_clusters());
    Ok(())
}

// The spec file carries its own seed; an explicit --seed overrides it.
fn cmd_benchmark(args: &BenchmarkArgs, seed: Option<u64>, dir: &Path) -> Result<(), Failure> {
    let mut spec: HierBenchmarkSpec = read_input(&args.spec, |t| Ok(serde_json::from_str(t)?))?;
    if let Some(s) = seed {
        spec.seed = Seed::new(s);
    }
    spec.validate().map_err(|e| Failure::input(e.to_string()))?;
    let out = Outputs::new(dir, "benchmark", spec.seed.0, args)?;
    let h = sample_hierarchy(&spec)?;
    let g = generate_network(&spec, &h)?;
    out.write("graph.edges", g.to_edge_list())?;
    out.write("level1.csv", h.level1.to_csv())?;
    out.write("level2.csv", h.level2.to_csv())?;
    let spec_json = serde_json::to_string_pretty(&spec).map_err(|e| Failure::compute(e.to_string()))? + "\n";
    out.write("spec.json", spec_json)?;
    println!(
        "nodes={} edges={} level1_clusters={} level2_clusters={}",
        g.n(),
        g.edges().len(),
        h.level1.n_clusters(),
        h.level2.n_clusters()
    );
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<(), Failure> {
    let a = read_input(&args.first, Partition::from_csv)?;
    let b = read_input(&args.second, Partition::from_csv)?;
    if a.n() != b.n() {
        return Err(Failure::input(format!("partitions cover {} and {} nodes", a.n(), b.n())));
    }
    let c = compare(&a, &b)?;
    println!("{}", serde_json::to_string_pretty(&c).map_err(|e| Failure::compute(e.to_string()))?);
    Ok(())
}

fn cmd_gammarange(args: &GraphArgs, seed: Seed) -> Result<(), Failure> {
    let (g, _) = load_graph(args)?;
    let lo = estimate_gamma_min(&g, GammaMinOptions::default(), seed.domain(b"gamma_min"))?;
    let hi = gamma_max(&g)?;
    println!("{}", serde_json::json!({ "gamma_min": lo, "gamma_max": hi }));
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .map_err(|e| Failure::compute(format!("cannot start worker pool: {e}")))?;
    }
    let raw_seed = cli.seed.unwrap_or(0);
    let seed = Seed::new(raw_seed);
    let dir = cli.out_dir.as_path();
    // workers stay out of the sidecars so outputs do not depend on them
    match &cli.command {
        Command::Sample(a) => cmd_sample(a, seed, &Outputs::new(dir, "sample", raw_seed, a)?),
        Command::Hierarchy(a) => cmd_hierarchy(a, seed, &Outputs::new(dir, "hierarchy", raw_seed, a)?),
        Command::Consensus(a) => cmd_consensus(a, seed, &Outputs::new(dir, "consensus", raw_seed, a)?),
        Command::Lf(a) => cmd_lf(a, seed, &Outputs::new(dir, "lf", raw_seed, a)?),
        Command::Benchmark(a) => cmd_benchmark(a, cli.seed, dir),
        Command::Compare(a) => cmd_compare(a),
        Command::Gammarange(a) => cmd_gammarange(a, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            if let Some(p) = &f.partial {
                let path = cli.out_dir.join("partial.csv");
                if std::fs::write(&path, p.to_csv()).is_ok() {
                    eprintln!("last iterate written to {}", path.display());
                }
            }
            ExitCode::from(f.code)
        }
    }
}
