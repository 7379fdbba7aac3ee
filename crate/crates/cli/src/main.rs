use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sepgamma::contraction::{lutz_nevo_trace, LUTZ_NEVO_MAX_N};
use sepgamma::gamma::{classify_gamma2_zero, gamma2, gamma_auto, polytope_dim, GammaReport, Method};
use sepgamma::graph::io::{parse_edge_list, parse_graph6};
use sepgamma::graph::Family;
use sepgamma::random::{run_experiment, summarize, to_csv, ExperimentConfig, SampleRecord};
use sepgamma::sweep::run_sweep;
use sepgamma::triangulation::{is_simple_polytope, polytope_vertex_degrees, Caps, EdgeOrder};
use sepgamma::{Error, Graph};

/// γ-vectors of symmetric edge polytopes.
#[derive(Parser)]
#[command(name = "sepgamma", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// γ-vector of one graph, as a JSON report.
    Gamma(GammaArgs),
    /// γ₂ = 0 classification, simplicity and polytope edge count.
    Classify(ClassifyArgs),
    /// Runs the contraction chain on Δ(G_n).
    Contract(ContractArgs),
    /// Erdős–Rényi experiment; CSV on stdout.
    Experiment(ExperimentArgs),
    /// Checks the γ invariants on every graph with at most NMAX vertices.
    Sweep(SweepArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Named family: K5, K2,4, C4, P3, E3, G6, G6,2, Petersen, DC5, DP3, BC6.
    #[arg(long)]
    family: Option<String>,
    /// graph6 string.
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file with 1-based labels.
    #[arg(long, value_name = "PATH")]
    edges: Option<String>,
}

impl Input {
    fn graph(&self) -> Result<Graph, Error> {
        if let Some(f) = &self.family {
            Family::parse(f)?.build()
        } else if let Some(s) = &self.graph6 {
            parse_graph6(s)
        } else if let Some(path) = &self.edges {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            parse_edge_list(&text)
        } else {
            unreachable!("clap enforces one input")
        }
    }
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    /// Maximum number of cycles enumerated.
    #[arg(long)]
    cap_cycles: Option<u64>,
    /// Maximum face-search work.
    #[arg(long)]
    cap_faces: Option<u64>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            cycles: self.cap_cycles.unwrap_or(d.cycles),
            work: self.cap_faces.unwrap_or(d.work),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    input: Input,
    /// Only γ_0..γ_k.
    #[arg(long)]
    k: Option<usize>,
    /// full | truncated | blocks | closed (default: automatic).
    #[arg(long)]
    method: Option<String>,
    /// Shuffles the edge order with this seed.
    #[arg(long)]
    order_seed: Option<u64>,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ContractArgs {
    n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ExperimentArgs {
    /// key=value settings: beta, n, trials, k, seed, cap_cycles, cap_faces, timing.
    settings: Vec<String>,
    /// Config file, key=value text or JSON.
    #[arg(long, value_name = "PATH")]
    config: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// Comma-separated sizes.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    caps: CapArgs,
    /// Record wall-clock milliseconds per sample.
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    nmax: usize,
    /// Shuffled edge orders per graph for the order-invariance check.
    #[arg(long, default_value_t = 3)]
    orders: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::CapRefused { .. } => EXIT_CAP,
        Error::CheckFailed { .. } | Error::NotPalindromic(_) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_gamma(a: &GammaArgs) -> Result<u8, Error> {
    let g = a.input.graph()?;
    let method = a.method.as_deref().map(Method::parse).transpose()?;
    let rep: GammaReport = gamma_auto(&g, a.k, a.order_seed, method, a.caps.caps())?;
    match a.format {
        Format::Text => println!(
            "n {} m {} dim {} method {}\ngamma {}",
            rep.n,
            rep.m,
            rep.dim,
            rep.method.as_str(),
            join(&rep.gamma)
        ),
        _ => println!("{}", rep.to_json()),
    }
    Ok(0)
}

fn cmd_classify(a: &ClassifyArgs) -> Result<u8, Error> {
    let g = a.input.graph()?;
    let verdict = classify_gamma2_zero(&g);
    let g2 = gamma2(&g, &EdgeOrder::identity(g.m()))?;
    let simple = if g.m() == 0 { None } else { Some(is_simple_polytope(&g)?) };
    let polytope_edges: usize = polytope_vertex_degrees(&g).iter().sum::<usize>() / 2;
    let out = json!({
        "n": g.n(),
        "m": g.m(),
        "dim": polytope_dim(&g),
        "gamma2": g2.to_string(),
        "gamma2_zero": verdict.zero,
        "witness": verdict.witness,
        "simple": simple,
        "polytope_edges": polytope_edges,
    });
    match a.format {
        Format::Text => {
            println!("gamma2 {g2}");
            println!("gamma2_zero: {}", verdict.zero);
            println!("witness: {}", serde_json::to_string(&verdict.witness).expect("serializes"));
            match simple {
                Some(s) => println!("simple: {s}"),
                None => println!("simple: n/a"),
            }
            println!("polytope edges: {polytope_edges}");
        }
        _ => println!("{out}"),
    }
    Ok(0)
}

fn cmd_contract(a: &ContractArgs) -> Result<u8, Error> {
    if !(5..=LUTZ_NEVO_MAX_N).contains(&a.n) {
        return Err(Error::Precondition(format!("n must lie in 5..={LUTZ_NEVO_MAX_N}")));
    }
    let report = lutz_nevo_trace(a.n)?;
    match a.format {
        Format::Json => println!("{}", report.to_json()),
        _ => print!("{}", report.to_text()),
    }
    if report.passed() {
        Ok(0)
    } else {
        eprintln!("contraction chain failed a check");
        Ok(EXIT_INVARIANT)
    }
}

fn experiment_config(a: &ExperimentArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    for s in &a.settings {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {s:?}")))?;
        cfg.set(k, v)?;
    }
    let flags = [
        ("beta", a.beta.clone()),
        ("n", a.n.clone()),
        ("trials", a.trials.map(|x| x.to_string())),
        ("k", a.k.map(|x| x.to_string())),
        ("seed", a.seed.map(|x| x.to_string())),
        ("cap_cycles", a.caps.cap_cycles.map(|x| x.to_string())),
        ("cap_faces", a.caps.cap_faces.map(|x| x.to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    if a.timing {
        cfg.record_timing = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn summary_json(records: &[SampleRecord]) -> serde_json::Value {
    json!(summarize(records)
        .iter()
        .map(|s| json!({
            "n": s.n,
            "trials": s.trials,
            "acyclic_fraction": s.acyclic_fraction,
            "connected_fraction": s.connected_fraction,
            "mean_edges": s.mean_edges,
            "mean_gamma": s.mean_gamma,
            "mean_cycles": s.cycles.iter().map(|c| c.0).collect::<Vec<_>>(),
            "cycles_stderr": s.cycles.iter().map(|c| c.1).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}

fn cmd_experiment(a: &ExperimentArgs) -> Result<u8, Error> {
    let cfg = experiment_config(a)?;
    let records = run_experiment(&cfg)?;
    match a.format {
        Format::Csv => {
            print!("{}", to_csv(&records, cfg.k));
            for s in summarize(&records) {
                eprintln!(
                    "n={} trials={} acyclic={:.3} mean_gamma=[{}]",
                    s.n,
                    s.trials,
                    s.acyclic_fraction,
                    s.mean_gamma.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ")
                );
            }
        }
        Format::Json => {
            let recs: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "trial": r.trial,
                        "seed": r.seed,
                        "edges": r.edges,
                        "connected": r.connected,
                        "cycles": r.cycles,
                        "nonfaces": r.nonfaces.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "faces": r.faces.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "gamma": r.gamma.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "millis": r.millis,
                    })
                })
                .collect();
            let cfg_json: serde_json::Value = serde_json::from_str(&cfg.to_json()).expect("valid JSON");
            println!(
                "{}",
                json!({ "config": cfg_json, "records": recs, "summary": summary_json(&records) })
            );
        }
        Format::Text => {
            for s in summarize(&records) {
                println!(
                    "n={} trials={} acyclic={:.3} connected={:.3} mean_edges={:.2} mean_gamma=[{}]",
                    s.n,
                    s.trials,
                    s.acyclic_fraction,
                    s.connected_fraction,
                    s.mean_edges,
                    s.mean_gamma.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ")
                );
            }
        }
    }
    Ok(0)
}

fn cmd_sweep(a: &SweepArgs) -> Result<u8, Error> {
    let report = run_sweep(a.nmax, a.orders, a.seed, a.caps.caps())?;
    match a.format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("serializes")),
        _ => {
            println!(
                "{} graphs on at most {} vertices ({} classes per n), {} orders each",
                report.graphs,
                report.max_n,
                join(&report.classes),
                report.orders_per_graph
            );
            for v in &report.violations {
                println!("VIOLATION {} {}: {}", v.graph6, v.check, v.detail);
            }
            println!("{} violations", report.violations.len());
        }
    }
    Ok(if report.violations.is_empty() { 0 } else { EXIT_INVARIANT })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    let result = match &cli.command {
        Command::Gamma(a) => cmd_gamma(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Contract(a) => cmd_contract(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
