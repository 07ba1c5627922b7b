//! `sector-det`: check single instances, generate instances, and run
//! randomized verification campaigns.
//!
//! Exit codes: 0 when everything holds, 2 when an inequality is violated,
//! 1 on any input or I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sector_det::campaign::{self, CampaignConfig, KSelection, OutputFormat};
use sector_det::generate::{
    generate_trial, FloorPolicy, GeneratorKind, GeneratorSpec, KChoice, TrialInput,
};
use sector_det::{
    check_minkowski_complement, compare_instance, evaluate, InequalityId, InequalityInstance,
    ScalarGrid,
};

const EXIT_VIOLATED: u8 = 2;
const EXIT_INPUT: u8 = 1;

#[derive(Parser)]
#[command(
    name = "sector-det",
    version,
    about = "Determinantal inequalities for PD and sector matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one inequality on an instance file and print the report.
    Check {
        /// Inequality id or alias, e.g. `ky_fan`, `thm29`.
        inequality: String,
        /// Instance JSON (a grid `{"x": [[..]], "p": ..}` for minkowski_complement).
        file: PathBuf,
        #[command(flatten)]
        over: InstanceOverrides,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Write a random instance satisfying a hypothesis class.
    Gen(GenArgs),
    /// Run a campaign described by a JSON config.
    Campaign(CampaignArgs),
    /// Compare the two-matrix sector bound with Liu's bound on a pair.
    Compare {
        file: PathBuf,
        #[command(flatten)]
        over: InstanceOverrides,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Args)]
struct InstanceOverrides {
    /// Leading block order, replacing the file's `k`.
    #[arg(long)]
    k: Option<usize>,
    /// Sector half-angle, replacing the file's `alpha`.
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pd,
    Sector,
    Ad,
    Diagonal,
    Proportional,
}

impl From<KindArg> for GeneratorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Pd => GeneratorKind::PdWithFloor,
            KindArg::Sector => GeneratorKind::Sector,
            KindArg::Ad => GeneratorKind::AccretiveDissipative,
            KindArg::Diagonal => GeneratorKind::Diagonal,
            KindArg::Proportional => GeneratorKind::Proportional,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FloorArg {
    Zero,
    Random,
    Saturating,
}

impl From<FloorArg> for FloorPolicy {
    fn from(f: FloorArg) -> Self {
        match f {
            FloorArg::Zero => FloorPolicy::Zero,
            FloorArg::Random => FloorPolicy::RandomFractionOfLambdaMin,
            FloorArg::Saturating => FloorPolicy::Saturating,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "sector")]
    kind: KindArg,
    /// Target inequality; decides which floors and weights are drawn.
    #[arg(long = "for")]
    target: Option<String>,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Leading block order; drawn at random when omitted.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    alpha: f64,
    #[arg(long, env = "SECTOR_DET_SEED", default_value_t = 0)]
    seed: u64,
    /// Stream index under the seed.
    #[arg(long, default_value_t = 0)]
    index: u64,
    #[arg(long, value_enum, default_value = "random")]
    floors: FloorArg,
    #[arg(long, default_value_t = 1e3)]
    cap: f64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CampaignArgs {
    config: PathBuf,
    #[arg(long, env = "SECTOR_DET_SEED")]
    seed: Option<u64>,
    /// Replaces `dims` with a single order.
    #[arg(long)]
    n: Option<usize>,
    /// Replaces `ks` with a single k.
    #[arg(long)]
    k: Option<usize>,
    /// Replaces `ms` with a single family size.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Check {
            inequality,
            file,
            over,
            tol,
        } => cmd_check(&inequality, &file, &over, tol),
        Command::Gen(args) => cmd_gen(args),
        Command::Campaign(args) => cmd_campaign(args),
        Command::Compare { file, over, tol } => cmd_compare(&file, &over, tol),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path, over: &InstanceOverrides) -> Result<InequalityInstance> {
    let mut inst: InequalityInstance = serde_json::from_str(&read(path)?)
        .with_context(|| format!("malformed instance {}", path.display()))?;
    if let Some(k) = over.k {
        inst = inst.with_k(k)?;
    }
    if let Some(alpha) = over.alpha {
        inst = inst.with_alpha(alpha)?;
    }
    Ok(inst)
}

fn verdict(holds: bool) -> u8 {
    if holds {
        0
    } else {
        EXIT_VIOLATED
    }
}

fn cmd_check(
    inequality: &str,
    file: &Path,
    over: &InstanceOverrides,
    tol: Option<f64>,
) -> Result<u8> {
    let id: InequalityId = inequality.parse()?;
    let report = if id == InequalityId::MinkowskiComplement {
        let grid: ScalarGrid = serde_json::from_str(&read(file)?)
            .with_context(|| format!("malformed grid {}", file.display()))?;
        check_minkowski_complement(&grid)?
    } else {
        evaluate(id, &load_instance(file, over)?)?
    };
    let report = match tol {
        Some(t) => report.with_tolerance(positive_tol(t)?),
        None => report,
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(verdict(report.holds))
}

fn cmd_compare(file: &Path, over: &InstanceOverrides, tol: Option<f64>) -> Result<u8> {
    let cmp = compare_instance(&load_instance(file, over)?)?;
    let report = cmp.to_report();
    let report = match tol {
        Some(t) => report.with_tolerance(positive_tol(t)?),
        None => report,
    };
    println!("{}", serde_json::to_string_pretty(&cmp)?);
    Ok(verdict(report.holds))
}

fn positive_tol(t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        bail!("--tol must be a positive number, got {t}");
    }
    Ok(t)
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    let kind = GeneratorKind::from(args.kind);
    let id = match &args.target {
        Some(s) => s.parse()?,
        None => match kind {
            GeneratorKind::PdWithFloor => InequalityId::MultiYuanLeng,
            GeneratorKind::AccretiveDissipative => InequalityId::AccretiveDissipative,
            _ => InequalityId::MultiSector,
        },
    };
    let spec = GeneratorSpec {
        n: args.n,
        m: args.m,
        kind,
        alpha_target: args.alpha,
        floor_policy: args.floors.into(),
        seed: args.seed,
        condition_cap: args.cap,
    };
    let k = args.k.map_or(KChoice::Random, KChoice::Fixed);
    let trial = generate_trial(id, &spec, k, args.index)?;
    let text = match &trial.input {
        TrialInput::Matrices(inst) => serde_json::to_string_pretty(inst)?,
        TrialInput::Grid(grid) => serde_json::to_string_pretty(grid)?,
    };
    match &args.out {
        Some(path) => fs::write(path, text + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(0)
}

/// Applies command-line flags on top of the config file.
fn apply_flags(cfg: &mut CampaignConfig, args: &CampaignArgs) {
    if let Some(seed) = args.seed {
        cfg.generator.seed = seed;
    }
    if let Some(n) = args.n {
        cfg.dims = vec![n];
    }
    if let Some(k) = args.k {
        cfg.ks = KSelection::List(vec![k]);
    }
    if let Some(m) = args.m {
        cfg.ms = Some(vec![m]);
    }
    if let Some(alpha) = args.alpha {
        cfg.generator.alpha_target = alpha;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if let Some(tol) = args.tol {
        cfg.tol_verdict = tol;
    }
    if let Some(f) = args.format {
        cfg.output_format = match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        };
    }
    if args.jobs.is_some() {
        cfg.jobs = args.jobs;
    }
    if args.out.is_some() {
        cfg.output_path = args.out.clone();
    }
}

fn cmd_campaign(args: CampaignArgs) -> Result<u8> {
    let text = read(&args.config)?;
    let mut cfg: CampaignConfig = serde_json::from_str(&text)
        .with_context(|| format!("malformed config {}", args.config.display()))?;
    apply_flags(&mut cfg, &args);
    cfg.validate()?;

    let report = campaign::run(&cfg)?;
    match &cfg.output_path {
        Some(path) => {
            for p in report.write(path, cfg.output_format)? {
                eprintln!("wrote {}", p.display());
            }
        }
        None => match cfg.output_format {
            OutputFormat::Json => println!("{}", report.to_json()?),
            OutputFormat::Csv => print!("{}", report.to_csv()?),
        },
    }

    for a in &report.aggregates {
        eprintln!(
            "{:<28} trials {:>7}  violations {:>4}  worst rel_gap {:>12.4e}  equality {:>5}  clamped {:>5}",
            a.inequality_id.as_str(),
            a.trials,
            a.violations,
            a.worst_rel_gap.unwrap_or(f64::NAN),
            a.equality_cases,
            a.clamped_trials,
        );
    }
    for e in report.errors.iter().take(10) {
        eprintln!(
            "trial error [{} n={} seed_index={}]: {}",
            e.inequality_id, e.n, e.seed_index, e.message
        );
    }

    if report.total_errors() > 0 {
        return Ok(EXIT_INPUT);
    }
    Ok(verdict(report.total_violations() == 0))
}
