use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use frci::alarm::alarm_dag;
use frci::bayesnet::{forward_sample, load_network, random_parameters_with_states, save_network};
use frci::graph::{dag_from_dot, dag_to_dot, mixed_to_dot, Dag};
use frci::independence::{Dataset, GSquaredTest, IndependenceOracle, PerfectOracle};
use frci::ipg::{ipg_skeleton, rk_skeleton};
use frci::random::random_dag;
use frci::verify::{compare_skeletons, independencies_agree_up_to_k, soundness_unrestricted, Disagreement, SkeletonDiff};
use frci::{fr_k_ci, Error, FrkciConfig, FrkciResult};

#[derive(Parser)]
#[command(name = "frci", version, about = "Causal discovery with bounded conditioning sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Random latent DAG with random parameters, as a network document.
    Gen(GenArgs),
    /// Forward-sample a network into CSV (visible columns only).
    Sample(SampleArgs),
    /// Run Fr(k)CI against a perfect oracle or a dataset.
    Run(RunArgs),
    /// Compare the independence models of two structures.
    Compare(CompareArgs),
    /// Fr(k)CI on the bundled ALARM structure with a perfect oracle.
    BenchAlarm(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Visible node count.
    #[arg(long)]
    nodes: usize,
    /// Hidden node count.
    #[arg(long, default_value_t = 0)]
    latents: usize,
    #[arg(long, default_value_t = 0.25)]
    edge_prob: f64,
    #[arg(long, env = "FRCI_SEED", default_value_t = 0)]
    seed: u64,
    /// States per node.
    #[arg(long, default_value_t = 2)]
    states: usize,
    /// Dirichlet concentration for CPT rows.
    #[arg(long, default_value_t = 1.0)]
    concentration: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    net: PathBuf,
    #[arg(long)]
    rows: usize,
    #[arg(long, env = "FRCI_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OracleKind {
    Perfect,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["oracle", "data"])))]
struct RunArgs {
    #[arg(long)]
    k: usize,
    /// Network document; the ground truth, and with `--oracle perfect` the oracle.
    #[arg(long)]
    net: Option<PathBuf>,
    #[arg(long, value_enum, requires = "net", conflicts_with = "data")]
    oracle: Option<OracleKind>,
    /// CSV dataset tested with G².
    #[arg(long, requires = "alpha")]
    data: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Output DAG in DOT.
    #[arg(long)]
    out_dot: PathBuf,
    /// Partially oriented graph after the rule closure, in DOT.
    #[arg(long)]
    out_pipg: Option<PathBuf>,
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Worker threads for speculative querying.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Apply the discriminating-path rule without requiring a triangle at M.
    #[arg(long)]
    no_triangle: bool,
    /// Record wall time in the stats file (makes it run-dependent).
    #[arg(long)]
    wall_time: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Network document or DAG in DOT.
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    k: usize,
    /// Also list separations of `a` that fail in `b`, for sets of any size.
    #[arg(long)]
    unrestricted: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Serialize)]
struct Queries {
    total: u64,
    by_size: BTreeMap<usize, u64>,
}

#[derive(Serialize)]
struct RunStats {
    schema: u32,
    k: usize,
    variables: usize,
    queries: Queries,
    edges: usize,
    directed: usize,
    bidirected: usize,
    hidden_nodes: usize,
    constraints: usize,
    trace_events: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    low_power_verdicts: Option<u64>,
    /// Against the including path graph skeleton of the ground truth.
    #[serde(skip_serializing_if = "Option::is_none")]
    skeleton: Option<SkeletonDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

fn stats_for(res: &FrkciResult, k: usize, variables: usize) -> RunStats {
    let edges = res.oriented.edges();
    let bidirected = edges.iter().filter(|e| e.is_bidirected()).count();
    RunStats {
        schema: 1,
        k,
        variables,
        queries: Queries {
            total: res.stats.total,
            by_size: res.stats.by_size.clone(),
        },
        edges: edges.len(),
        directed: edges.len() - bidirected,
        bidirected,
        hidden_nodes: res.dag.hidden_nodes().len(),
        constraints: res.pipg.constraint_count(),
        trace_events: res.trace.len(),
        low_power_verdicts: None,
        skeleton: None,
        wall_time_ms: None,
    }
}

fn read(path: &Path) -> frci::Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidData(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> frci::Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidData(format!("cannot write {}: {e}", path.display())))
}

/// A network document or a DOT file, recognised by its first character.
fn load_structure(path: &Path) -> frci::Result<Dag> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        Ok(load_network(&text)?.dag().clone())
    } else {
        dag_from_dot(&text)
    }
}

fn gen(args: GenArgs) -> frci::Result<()> {
    if !(0.0..=1.0).contains(&args.edge_prob) {
        return Err(Error::InvalidParameter(format!("edge probability {} outside [0, 1]", args.edge_prob)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let dag = random_dag(args.nodes, args.latents, args.edge_prob, &mut rng);
    let cards = vec![args.states; dag.node_count()];
    let bn = random_parameters_with_states(&dag, &cards, rng.random(), args.concentration)?;
    write(&args.out, &save_network(&bn)?)
}

fn sample(args: SampleArgs) -> frci::Result<()> {
    let bn = load_network(&read(&args.net)?)?;
    let data = forward_sample(&bn, args.rows, args.seed)?;
    let mut buf = Vec::new();
    data.to_csv(&mut buf)?;
    fs::write(&args.out, buf)?;
    Ok(())
}

fn run(args: RunArgs) -> frci::Result<()> {
    let truth = args.net.as_deref().map(|p| -> frci::Result<_> { load_network(&read(p)?) }).transpose()?;
    let mut config = FrkciConfig::new(args.k).with_threads(args.threads);
    config.require_triangle = !args.no_triangle;

    let start = Instant::now();
    let (res, variables, low_power) = match (&args.data, args.oracle) {
        (Some(path), _) => {
            let file = fs::File::open(path)
                .map_err(|e| Error::InvalidData(format!("cannot read {}: {e}", path.display())))?;
            let data = match &truth {
                Some(bn) => {
                    let dag = bn.dag();
                    let states = dag
                        .visible_nodes()
                        .into_iter()
                        .map(|v| (dag.name(v).to_string(), bn.states(v).to_vec()))
                        .collect();
                    Dataset::from_csv_with_states(file, &states)?
                }
                None => Dataset::from_csv(file)?,
            };
            let alpha = args.alpha.expect("clap requires alpha with data");
            let test = GSquaredTest::new(data, alpha)?;
            let res = fr_k_ci(&test, &config)?;
            (res, test.variables().len(), Some(test.low_power_verdicts()))
        }
        (None, Some(OracleKind::Perfect)) => {
            let bn = truth.as_ref().expect("clap requires net with oracle");
            let oracle = PerfectOracle::new(bn.dag().clone());
            (fr_k_ci(&oracle, &config)?, oracle.variables().len(), None)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let elapsed = start.elapsed();

    let mut stats = stats_for(&res, args.k, variables);
    stats.low_power_verdicts = low_power;
    if let Some(bn) = &truth {
        stats.skeleton = Some(compare_skeletons(&res.dag, &ipg_skeleton(bn.dag()))?);
    }
    if args.wall_time {
        stats.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
    }

    write(&args.out_dot, &dag_to_dot(&res.dag))?;
    if let Some(p) = &args.out_pipg {
        write(p, &mixed_to_dot(&res.pipg))?;
    }
    if let Some(p) = &args.stats {
        let mut text = serde_json::to_string_pretty(&stats)?;
        text.push('\n');
        write(p, &text)?;
    }
    if let Some(p) = &args.trace {
        write(p, &res.trace_text())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CompareReport {
    skeleton: SkeletonDiff,
    up_to_k: Vec<Disagreement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unrestricted: Option<Vec<Disagreement>>,
}

fn compare(args: CompareArgs) -> frci::Result<()> {
    let a = load_structure(&args.a)?;
    let b = load_structure(&args.b)?;
    let names: Vec<String> = a.visible_nodes().into_iter().map(|v| a.name(v).to_string()).collect();
    let visibles: Vec<&str> = names.iter().map(String::as_str).collect();
    let report = CompareReport {
        skeleton: compare_skeletons(&a, &b)?,
        up_to_k: independencies_agree_up_to_k(&a, &b, &visibles, args.k)?,
        unrestricted: if args.unrestricted {
            Some(soundness_unrestricted(&a, &b, &visibles)?)
        } else {
            None
        },
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn bench_alarm(args: BenchArgs) -> frci::Result<()> {
    let truth = alarm_dag();
    let start = Instant::now();
    let res = fr_k_ci(
        &PerfectOracle::new(truth.clone()),
        &FrkciConfig::new(args.k).with_threads(args.threads),
    )?;
    let elapsed = start.elapsed();
    let vs_truth = compare_skeletons(&res.dag, &ipg_skeleton(&truth))?;
    let vs_rk = compare_skeletons(&res.dag, &rk_skeleton(&truth, args.k))?;
    println!("network: ALARM ({} nodes, {} edges)", truth.node_count(), truth.edge_count());
    println!("k: {}", args.k);
    println!("recovered edges: {}", res.oriented.edge_count());
    println!("superfluous: {}", vs_truth.superfluous.len());
    println!("missing: {}", vs_truth.missing.len());
    println!("missing vs r(k) skeleton: {}", vs_rk.missing.len());
    println!("queries: {}", res.stats.total);
    for (size, count) in &res.stats.by_size {
        println!("  |S|={size}: {count}");
    }
    println!("bidirected: {}", res.dag.hidden_nodes().len());
    println!("time: {:.1} ms", elapsed.as_secs_f64() * 1e3);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Sample(a) => sample(a),
        Command::Run(a) => run(a),
        Command::Compare(a) => compare(a),
        Command::BenchAlarm(a) => bench_alarm(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_data_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
