use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use sbmcd::bench::{
    run_experiment, Algorithm, EdgeListSection, ExperimentConfig, ProbabilitySource, SbmSection,
    SolverSection,
};
use sbmcd::{
    accuracy, active_loop, approx_ratio_certificate, brute_force_ml, emit_csv, estimate_params,
    random_baseline_loop, read_edge_list, sbm_sample, write_edge_list, Error, Graph, GroundTruth,
    ModifiedAdjacency, QueryOutcome,
};

#[derive(Parser)]
#[command(name = "sbmcd", version, about = "Semi-supervised and active community detection on SBMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an SBM graph and write it as an edge list plus a label file.
    Gen(GenArgs),
    /// Run one query loop on one graph and report the query log.
    Run(RunArgs),
    /// Run a replicated experiment and write accuracy curves as CSV.
    Bench(BenchArgs),
}

#[derive(Args, Clone, Default)]
struct ModelArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Within-community degree parameter, p = a/n.
    #[arg(long)]
    a: Option<f64>,
    /// Between-community degree parameter, q = b/n.
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
}

#[derive(Args, Clone, Default)]
struct SolverArgs {
    /// Factor rank of the relaxation.
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Riemannian gradient tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Expected-model-change evaluation: rank1 or exact.
    #[arg(long)]
    mode: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge list.
    #[arg(long)]
    edges: PathBuf,
    /// Output label file.
    #[arg(long)]
    labels: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Query budget.
    #[arg(long, default_value_t = 0)]
    queries: usize,
    /// active or random.
    #[arg(long, default_value = "active")]
    algorithm: String,
    /// Read the graph from an edge list instead of sampling one.
    #[arg(long, requires = "labels")]
    edges: Option<PathBuf>,
    #[arg(long, requires = "edges")]
    labels: Option<PathBuf>,
    /// Also compute the exact maximum-likelihood labeling by enumeration.
    #[arg(long)]
    brute_force: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// TOML experiment file.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in experiment: fig3a or fig3b.
    #[arg(long)]
    preset: Option<String>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Comma-separated replicate seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    /// Comma-separated fractions of nodes queried.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Comma-separated subset of active,random.
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<String>>,
    #[arg(long, requires = "labels")]
    edges: Option<PathBuf>,
    #[arg(long, requires = "edges")]
    labels: Option<PathBuf>,
    /// Estimate p and q from the labels instead of using the given values.
    #[arg(long)]
    estimate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::Parameter(_) => 2,
            Error::SizeCap { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn sbm_section(model: &ModelArgs) -> Result<SbmSection, Failure> {
    let n = model.n.ok_or_else(|| config_error("--n is required"))?;
    let r = model.r.ok_or_else(|| config_error("--r is required"))?;
    Ok(SbmSection {
        n,
        r,
        a: model.a,
        b: model.b,
        p: model.p,
        q: model.q,
    })
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let params = sbm_section(&args.model)?.params()?;
    let (graph, truth) = sbm_sample(&params, args.seed)?;
    write_edge_list(&graph, &truth, &args.edges, &args.labels)?;
    println!(
        "wrote {} nodes, {} edges to {}",
        graph.n(),
        graph.edge_count(),
        args.edges.display()
    );
    Ok(())
}

fn solver_section(args: &SolverArgs, base: SolverSection) -> SolverSection {
    SolverSection {
        rank: args.rank.or(base.rank),
        restarts: args.restarts.unwrap_or(base.restarts),
        tol: args.tol.or(base.tol),
        mode: args.mode.clone().unwrap_or(base.mode),
        ..base
    }
}

fn load_run_instance(args: &RunArgs) -> Result<(Graph, GroundTruth, f64, f64), Failure> {
    if let (Some(edges), Some(labels)) = (&args.edges, &args.labels) {
        let ingested = read_edge_list(edges, labels, args.model.r)?;
        if ingested.cleanup.self_loops + ingested.cleanup.duplicates > 0 {
            eprintln!(
                "dropped {} self-loops and {} duplicate edges",
                ingested.cleanup.self_loops, ingested.cleanup.duplicates
            );
        }
        let (p, q) = match (args.model.p, args.model.q) {
            (Some(p), Some(q)) => (p, q),
            _ => {
                let labeled: Vec<_> = ingested.truth.labels().iter().copied().enumerate().collect();
                estimate_params(&ingested.graph, &labeled, None)?
            }
        };
        return Ok((ingested.graph, ingested.truth, p, q));
    }
    let params = sbm_section(&args.model)?.params()?;
    let (graph, truth) = sbm_sample(&params, args.seed)?;
    Ok((graph, truth, params.p, params.q))
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let algorithm: Algorithm = args.algorithm.parse()?;
    let (graph, truth, p, q) = load_run_instance(&args)?;
    info!("graph: {} nodes, {} edges, p = {p}, q = {q}", graph.n(), graph.edge_count());
    let m = ModifiedAdjacency::new(graph, p, q);
    let cfg = solver_section(&args.solver, SolverSection::default()).active_config(args.seed)?;

    let outcome: QueryOutcome = match algorithm {
        Algorithm::Active => active_loop(&m, &truth, args.queries, &cfg, &[])?,
        Algorithm::Random => random_baseline_loop(&m, &truth, args.queries, args.seed, &cfg.solver)?,
    };

    println!("step\tnode\tlabel\trule\tscore");
    for rec in outcome.log.records() {
        println!(
            "{}\t{}\t{}\t{}\t{:.6e}",
            rec.step,
            rec.node,
            rec.label,
            rec.rule.as_str(),
            rec.score
        );
    }
    let mut queried = vec![false; m.n()];
    for rec in outcome.log.records() {
        queried[rec.node] = true;
    }
    let acc = accuracy(&outcome.labeling, &truth, &queried)?;
    let cert = approx_ratio_certificate(&m, &outcome.labeling, &outcome.solve.x, &outcome.basis)?;
    println!("accuracy\t{acc:.6}");
    println!("relaxed_objective\t{:.6}", cert.relax_score);
    println!("rounded_objective\t{:.6}", cert.disc_score);
    println!("certificate\t{:.6e}", cert.value);

    if args.brute_force {
        let exact = brute_force_ml(&m, &outcome.log.pins(), truth.r())?;
        let agree = exact
            .assignments()
            .iter()
            .zip(outcome.labeling.assignments())
            .filter(|(a, b)| a == b)
            .count();
        println!("brute_force_agreement\t{agree}/{}", m.n());
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(name)) => ExperimentConfig::preset(name)?,
        (None, None) => ExperimentConfig::preset("fig3a")?,
    };

    let model = &args.model;
    if args.edges.is_some() || args.labels.is_some() {
        let base = cfg.edges.take().unwrap_or_default();
        cfg.sbm = None;
        cfg.edges = Some(EdgeListSection {
            path: args.edges.clone().unwrap_or(base.path),
            labels: args.labels.clone().unwrap_or(base.labels),
            r: model.r.or(base.r),
            p: model.p.or(base.p),
            q: model.q.or(base.q),
        });
    } else if let Some(sbm) = cfg.sbm.as_mut() {
        sbm.n = model.n.unwrap_or(sbm.n);
        sbm.r = model.r.unwrap_or(sbm.r);
        if model.a.is_some() || model.b.is_some() {
            sbm.a = model.a.or(sbm.a);
            sbm.b = model.b.or(sbm.b);
            sbm.p = None;
            sbm.q = None;
        }
        if model.p.is_some() || model.q.is_some() {
            sbm.p = model.p.or(sbm.p);
            sbm.q = model.q.or(sbm.q);
            sbm.a = None;
            sbm.b = None;
        }
    } else if let Some(edges) = cfg.edges.as_mut() {
        edges.r = model.r.or(edges.r);
        edges.p = model.p.or(edges.p);
        edges.q = model.q.or(edges.q);
    }
    if let Some(seeds) = &args.seeds {
        cfg.seeds = seeds.clone();
    }
    if let Some(grid) = &args.grid {
        cfg.grid = grid.clone();
    }
    if let Some(algorithms) = &args.algorithms {
        cfg.algorithms = algorithms
            .iter()
            .map(|a| a.parse())
            .collect::<sbmcd::Result<_>>()?;
    }
    if args.estimate {
        cfg.probabilities = ProbabilitySource::Estimated;
    }
    cfg.solver = solver_section(&args.solver, cfg.solver.clone());
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;

    let curves = run_experiment(&cfg)?;
    match &cfg.out {
        Some(path) => {
            emit_csv(&curves, path)?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", sbmcd::bench::format_csv(&curves)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => gen(args),
        Command::Run(args) => run(args),
        Command::Bench(args) => bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
