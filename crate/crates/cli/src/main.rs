use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use selkow_core::bounds::selkow_bound;
use selkow_core::generate::{BaseFamily, CounterexampleSpec, GeneratorSpec};
use selkow_core::graph::Graph;
use selkow_core::io::{parse_dimacs, parse_edge_list};
use selkow_core::oracle::{
    bound_sandwich, enumerate_exact, refutation_check, stats_checks, verify_proof_chain,
    DEFAULT_ALPHA_LIMIT, DEFAULT_ENUMERATION_LIMIT,
};
use selkow_core::rational::{Rational, DEFAULT_DIGITS};
use selkow_core::sampler::{las_vegas_search, monte_carlo, Estimand, DEFAULT_MAX_TRIALS};
use selkow_core::{with_threads, DEFAULT_SEED};

mod render;

use render::Renderer;

#[derive(Parser)]
#[command(name = "selkow", version, about = "Independence-number lower bounds from random vertex orderings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Caro-Wei and Selkow bounds with every per-vertex term
    Bounds(CommonArgs),
    /// Monte Carlo estimates and/or a Las Vegas search over random orderings
    Sample(SampleArgs),
    /// Exact expectations over all n! orderings
    Oracle(CommonArgs),
    /// Exact checks of the weighted-residual argument and the bound sandwich
    Verify(VerifyArgs),
    /// The three-vertex extension and the refuted per-vertex estimate
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Graph file ("-" for stdin)
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    input: Option<PathBuf>,

    /// Generated graph: empty:N, path:N, cycle:N, complete:N, star:K,
    /// hypercube:D, petersen, gnp:N:P:SEED
    #[arg(long, value_name = "KIND:PARAMS")]
    gen: Option<GeneratorSpec>,

    /// Format of --input
    #[arg(long, value_enum, default_value_t = Format::Dimacs)]
    format: Format,

    /// Edge-list ids start at 1
    #[arg(long)]
    one_based: bool,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Output::Human)]
    output: Output,

    /// Fractional digits in decimal renderings
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
}

#[derive(Args)]
struct CommonArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    out: OutputArgs,

    /// Largest n enumerated exactly (n! orderings)
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,

    /// Worker threads (0 = all cores); results do not depend on it
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    common: CommonArgs,

    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,

    /// Monte Carlo trials per estimand
    #[arg(long, default_value_t = 100_000)]
    trials: u64,

    /// Estimands: i1 (E|I1|), i2 (E|I2|), p-i2 (P(v in I2)), p-h (P(v in V(H)));
    /// defaults to i1,i2 unless only --las-vegas is given
    #[arg(long, value_delimiter = ',')]
    estimand: Vec<String>,

    /// Target vertex for p-i2 and p-h
    #[arg(long)]
    vertex: Option<usize>,

    /// Search for an independent set of size >= ceil(target)
    #[arg(long)]
    las_vegas: bool,

    /// Las Vegas target as an integer or fraction P/Q (default: Selkow's bound)
    #[arg(long, value_parser = parse_rational)]
    target: Option<Rational>,

    #[arg(long, default_value_t = DEFAULT_MAX_TRIALS)]
    max_trials: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Largest n for the exact independence number
    #[arg(long, default_value_t = DEFAULT_ALPHA_LIMIT)]
    alpha_limit: usize,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Total vertex count (at least 4)
    #[arg(long)]
    n: usize,

    /// Base graph on n-3 vertices: empty, complete, path or gnp:P:SEED
    #[arg(long = "f", value_name = "FAMILY", default_value = "empty")]
    family: BaseFamily,

    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,

    #[arg(long, default_value_t = 0)]
    threads: usize,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Human,
    Json,
    Csv,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    }
    .map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>()
        .map_err(|e| format!("invalid rational `{s}`: {e}"))
}

fn load_graph(args: &InputArgs) -> Result<Graph> {
    if let Some(spec) = &args.gen {
        return Ok(spec.build()?);
    }
    let path = args.input.as_ref().expect("clap requires --input or --gen");
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let graph = match args.format {
        Format::Dimacs => parse_dimacs(&text),
        Format::Edges => parse_edge_list(&text, args.one_based),
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    Ok(graph)
}

/// Runs a command and reports whether every requested check passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Bounds(args) => {
            let graph = load_graph(&args.input)?;
            let report = selkow_bound(&graph);
            Renderer::new(&args.out).bounds(&graph, &report)?;
            Ok(true)
        }
        Command::Sample(args) => cmd_sample(args),
        Command::Oracle(args) => {
            let graph = load_graph(&args.input)?;
            let stats = with_threads(args.threads, || enumerate_exact(&graph, args.limit))?;
            let checks = stats_checks(&graph, &stats);
            Renderer::new(&args.out).oracle(&stats, &checks)?;
            Ok(checks.iter().all(|c| c.passed))
        }
        Command::Verify(args) => {
            let c = &args.common;
            let graph = load_graph(&c.input)?;
            let chain = with_threads(c.threads, || verify_proof_chain(&graph, c.limit))?;
            let sandwich = bound_sandwich(&graph, args.alpha_limit)?;
            Renderer::new(&c.out).verify(&chain, &sandwich)?;
            Ok(chain.passed() && sandwich.passed())
        }
        Command::Counterexample(args) => {
            if args.n < 4 {
                bail!("--n must be at least 4, got {}", args.n);
            }
            let base = args.family.build(args.n - 3)?;
            let spec = CounterexampleSpec::new(base);
            let report = with_threads(args.threads, || refutation_check(&spec, args.limit))?;
            Renderer::new(&args.out).counterexample(&args.family, &report)?;
            Ok(report.consistent())
        }
    }
}

fn cmd_sample(args: SampleArgs) -> Result<bool> {
    let c = &args.common;
    let graph = load_graph(&c.input)?;
    let names: Vec<String> = if args.estimand.is_empty() && !args.las_vegas {
        vec!["i1".into(), "i2".into()]
    } else {
        args.estimand.clone()
    };
    let estimands = names
        .iter()
        .map(|name| Estimand::parse(name, args.vertex))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(v) = args.vertex {
        if v >= graph.n() {
            bail!("vertex {v} is not in a graph on {} vertices", graph.n());
        }
    }
    let renderer = Renderer::new(&c.out);
    if !estimands.is_empty() {
        let reports = with_threads(c.threads, || monte_carlo(&graph, &estimands, args.trials, args.seed))?;
        renderer.estimates(&reports)?;
    }
    if args.las_vegas {
        let outcome = las_vegas_search(&graph, args.target.as_ref(), args.max_trials, args.seed)?;
        renderer.las_vegas(&outcome)?;
        return Ok(outcome.reached);
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
