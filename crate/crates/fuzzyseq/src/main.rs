use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fuzzyseq::analyze::{self, AnalyzeConfig};
use fuzzyseq::core::Thresholds;
use fuzzyseq::harness::{self, Experiment, Status};
use fuzzyseq::props::{self, SuiteOutcome};
use fuzzyseq::report;
use fuzzyseq::spec::{Estimator, ExperimentSpec, LimitSource, SequenceSpec, ThetaSpec};

const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Parser)]
#[command(
    name = "fuzzyseq",
    version,
    about = "Lacunary summability experiments on fuzzy-number sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Statistic series for one sequence, limit and order, as CSV.
    Analyze(AnalyzeArgs),
    /// Run a named experiment (or `all`) and write JSON and CSV reports.
    Reproduce(ReproduceArgs),
    /// Run a seeded property suite.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Density,
    Strong,
    Cesaro,
    Modulus,
    Prefix,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Example id or JSON rule list.
    #[arg(long)]
    sequence: String,
    /// Fuzzy literal, `auto`, `oracle:<k>` or `at:<k>`.
    #[arg(long, default_value = "auto")]
    limit: String,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// `powers2`, `powers3`, `triangular`, `squares` or `explicit:k0,k1,...`.
    #[arg(long, default_value = "powers2")]
    theta: String,
    #[arg(long)]
    rmax: u32,
    #[arg(long, value_enum, default_value = "density")]
    kind: Kind,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Modulus name for `--kind modulus`.
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long = "allow-beta-gt-1")]
    allow_beta_gt_one: bool,
    #[arg(long)]
    zero: Option<f64>,
    #[arg(long)]
    growth: Option<f64>,
    #[arg(long)]
    flat_slope: Option<f64>,
    #[arg(long)]
    no_meta: bool,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ReproduceArgs {
    /// Experiment id, or `all`. Optional with `--spec`.
    id: Option<String>,
    #[arg(long, default_value = "reports")]
    out: PathBuf,
    #[arg(long)]
    no_meta: bool,
    /// Run an experiment definition from a JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Metric,
    Modulus,
    FuzzyAxioms,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Modulus to check; all sound built-ins when absent.
    #[arg(long)]
    name: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    fuzzyseq::init_threads();
    let outcome = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Reproduce(a) => cmd_reproduce(a),
        Command::Check(a) => cmd_check(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<ExitCode> {
    let estimator = match (a.kind, &a.modulus) {
        (Kind::Modulus, name) => format!("modulus:{}", name.as_deref().unwrap_or("identity")),
        (_, Some(_)) => bail!("--modulus requires --kind modulus"),
        (Kind::Density, None) => "density".into(),
        (Kind::Strong, None) => "strong".into(),
        (Kind::Cesaro, None) => "cesaro".into(),
        (Kind::Prefix, None) => "prefix".into(),
    };
    let defaults = Thresholds::default();
    let cfg = AnalyzeConfig {
        sequence: SequenceSpec::parse_arg(&a.sequence)?,
        limit: a.limit.parse::<LimitSource>()?,
        m: a.m,
        beta: a.beta,
        epsilon: a.epsilon,
        theta: ThetaSpec::parse_arg(&a.theta)?,
        r_max: a.rmax,
        estimator: estimator.parse::<Estimator>()?,
        p: a.p,
        allow_beta_gt_one: a.allow_beta_gt_one,
        thresholds: Thresholds {
            zero: a.zero.unwrap_or(defaults.zero),
            growth: a.growth.unwrap_or(defaults.growth),
            flat_slope: a.flat_slope.unwrap_or(defaults.flat_slope),
        },
    };
    let started = Instant::now();
    let analysis = analyze::analyze(&cfg)?;
    let mut text = String::new();
    if !a.no_meta {
        let m = report::meta(started.elapsed().as_millis());
        text.push_str(&format!(
            "# tool={} version={} threads={} generated_unix_ms={} elapsed_ms={}\n",
            m.tool, m.version, m.threads, m.generated_unix_ms, m.elapsed_ms
        ));
    }
    text.push_str(&analyze::to_csv(&analysis));
    match &a.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reproduce(a: ReproduceArgs) -> Result<ExitCode> {
    let experiments = match (&a.spec, a.id.as_deref()) {
        (Some(path), _) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            vec![Experiment::Spec(Box::new(ExperimentSpec::from_json(
                &text,
            )?))]
        }
        (None, Some("all")) => harness::catalog(),
        (None, Some(id)) => {
            vec![harness::find(id).with_context(|| format!("unknown experiment `{id}`"))?]
        }
        (None, None) => bail!("give an experiment id, `all`, or --spec"),
    };
    let mut failed = false;
    for e in experiments {
        let started = Instant::now();
        let mut r = e.run().with_context(|| format!("running {}", e.id()))?;
        if !a.no_meta {
            r.meta = Some(report::meta(started.elapsed().as_millis()));
        }
        let (json, csv) = report::write(&a.out, &r)
            .with_context(|| format!("writing reports to {}", a.out.display()))?;
        let (pass, fail, indeterminate) = r.counts();
        println!(
            "{}: {} (pass {pass}, fail {fail}, indeterminate {indeterminate}) -> {}, {}",
            r.experiment,
            r.status.name(),
            json.display(),
            csv.display()
        );
        failed |= r.status == Status::Fail;
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_check(a: CheckArgs) -> Result<ExitCode> {
    println!("seed {}", a.seed);
    let outcomes: Vec<SuiteOutcome> = match a.target {
        Target::Metric => vec![props::metric(a.seed, a.count)],
        Target::FuzzyAxioms => vec![props::fuzzy_axioms(a.seed, a.count)],
        Target::Modulus => {
            let names: Vec<&str> = match &a.name {
                Some(n) => vec![n.as_str()],
                None => props::DEFAULT_MODULI.to_vec(),
            };
            names
                .into_iter()
                .map(|n| {
                    props::modulus(n, a.seed, a.count)
                        .with_context(|| format!("unknown modulus `{n}`"))
                })
                .collect::<Result<_>>()?
        }
    };
    let mut failed = false;
    for o in &outcomes {
        match &o.witness {
            None => println!("{}: pass ({} cases)", o.suite, o.cases),
            Some(w) => {
                failed = true;
                println!("{}: fail, {w}", o.suite);
            }
        }
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
