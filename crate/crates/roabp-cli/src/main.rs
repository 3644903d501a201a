//! Batch interface: zero tests, equivalence, sums, hitting sets and
//! concentration reports over program files.
//!
//! Exit codes are the machine contract: 0 for a zero/equivalent verdict (or
//! a successfully produced listing/report), 1 for nonzero/inequivalent, 2
//! for any error. `--porcelain` switches reports to stable `key=value`
//! lines.

use anyhow::{bail, Context};
use roabp_cli::format;
use clap::{Args, Parser, Subcommand};
use roabp::concentration::{
    self, FindConfig, ShiftTuple, SumPitParams, WeightAssignment,
};
use roabp::pit::{self, EquivalenceOutcome, PitConfig, SumInstance, SumWitness};
use roabp::{nisan, Field, Fp, Roabp, DEFAULT_MODULUS};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "roabp",
    about = "Exact identity testing for read-once oblivious branching programs",
    version
)]
struct Cli {
    /// Emit stable key=value lines instead of prose.
    #[arg(long, global = true)]
    porcelain: bool,

    /// Seed for randomized subroutines (weight search).
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether the program in FILE computes the zero polynomial.
    Zero { file: PathBuf },
    /// Test whether two programs compute the same polynomial.
    Equiv { file_a: PathBuf, file_b: PathBuf },
    /// Test whether the sum of the given programs is zero.
    SumZero {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the blackbox evaluation grid for sums of programs.
    HittingSet(HittingSetArgs),
    /// Report isolation and concentration levels for the program in FILE.
    ReportConcentration(ReportArgs),
}

#[derive(Args)]
struct HittingSetArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    w: usize,
    #[arg(long)]
    c: usize,
    /// Force the support bound of the grid instead of the derived value.
    #[arg(long)]
    ell: Option<u32>,
    /// JSON file with the shift tuple; omitted means the zero shift.
    #[arg(long)]
    shift_file: Option<PathBuf>,
    /// Number of t values (1, 2, ...) the shift is instantiated at.
    #[arg(long, default_value_t = 1)]
    t_count: usize,
    /// Field modulus; defaults to ROABP_MODULUS or the built-in prime.
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Args)]
struct ReportArgs {
    file: PathBuf,
    /// Comma-separated per-variable weights; omitted means search.
    #[arg(long)]
    weights: Option<String>,
    /// Weight bound for the search when --weights is omitted.
    #[arg(long, default_value_t = 64)]
    bound: u64,
}

fn default_modulus() -> u64 {
    std::env::var("ROABP_MODULUS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MODULUS)
}

fn load_program(path: &Path) -> anyhow::Result<Roabp<Fp>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file = format::parse(&text).with_context(|| format!("in {}", path.display()))?;
    format::from_file(&file).with_context(|| format!("in {}", path.display()))
}

fn instance_line(r: &Roabp<Fp>) -> String {
    let order: Vec<String> = r.order().iter().map(|&v| (v + 1).to_string()).collect();
    format!(
        "instance: n={} d={} w={} shape={} modulus={} order=[{}]",
        r.n(),
        r.degree_bound(),
        r.width(),
        format::shape_string(r),
        r.field().modulus(),
        order.join(",")
    )
}

fn exponent_csv(e: &roabp::Exponent) -> String {
    e.0.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_zero(file: &Path, porcelain: bool) -> anyhow::Result<u8> {
    let r = load_program(file)?;
    if !r.is_scalar_output() {
        bail!("zero test requires a scalar-output program");
    }
    let profile = nisan::build_profile(&r);
    let zero = profile.all_final_scalars_zero();
    if porcelain {
        println!("verdict={}", if zero { "zero" } else { "nonzero" });
        if let Some(w) = profile.nonzero_witness() {
            println!("witness={}", exponent_csv(&w));
        }
    } else {
        println!("{}", instance_line(&r));
        println!("verdict: {}", if zero { "zero" } else { "nonzero" });
        if let Some(w) = profile.nonzero_witness() {
            println!("witness: {} (exponent {})", w.monomial_string(), w);
        }
    }
    Ok(if zero { 0 } else { 1 })
}

fn cmd_equiv(file_a: &Path, file_b: &Path, porcelain: bool) -> anyhow::Result<u8> {
    let a = load_program(file_a)?;
    let b = load_program(file_b)?;
    if !a.is_scalar_output() || !b.is_scalar_output() {
        bail!("equivalence requires scalar-output programs");
    }
    let outcome = pit::equivalence_report(&a, &b, &PitConfig::default())?;
    let equivalent = outcome.is_equivalent();
    if porcelain {
        println!(
            "verdict={}",
            if equivalent { "equivalent" } else { "inequivalent" }
        );
        match &outcome {
            EquivalenceOutcome::Equivalent => {}
            EquivalenceOutcome::DependencyFailed { layer, prefix } => {
                println!("failing_layer={layer}");
                println!("failing_prefix={}", exponent_csv(prefix));
            }
            EquivalenceOutcome::CoefficientMismatch { exponent, lhs, rhs } => {
                println!("mismatch_exponent={}", exponent_csv(exponent));
                println!("lhs={lhs}");
                println!("rhs={rhs}");
            }
        }
    } else {
        println!(
            "verdict: {}",
            if equivalent { "equivalent" } else { "inequivalent" }
        );
        match &outcome {
            EquivalenceOutcome::Equivalent => {}
            EquivalenceOutcome::DependencyFailed { layer, prefix } => {
                println!("reason: dependency failed at layer {layer} for prefix {prefix}");
            }
            EquivalenceOutcome::CoefficientMismatch { exponent, lhs, rhs } => {
                println!("reason: coefficient mismatch at {exponent}: lhs={lhs} rhs={rhs}");
            }
        }
    }
    Ok(if equivalent { 0 } else { 1 })
}

fn cmd_sum_zero(files: &[PathBuf], porcelain: bool) -> anyhow::Result<u8> {
    let summands: Vec<Roabp<Fp>> = files
        .iter()
        .map(|f| load_program(f))
        .collect::<anyhow::Result<_>>()?;
    let instance = SumInstance::new(summands)?;
    let (witness, stats) = pit::sum_zero_report(&instance, &PitConfig::default())?;
    let zero = witness.is_none();
    let deps: usize = stats.records.iter().map(|r| r.deps_verified).sum();
    if porcelain {
        println!("summands={}", instance.c());
        println!("verdict={}", if zero { "zero" } else { "nonzero" });
        println!("deps_verified={deps}");
        match &witness {
            None => {}
            Some(SumWitness::Monomial { exponent }) => {
                println!("witness={}", exponent_csv(exponent));
            }
            Some(SumWitness::DependencyFailed { layer, prefix }) => {
                println!("failing_layer={layer}");
                println!("failing_prefix={}", exponent_csv(prefix));
            }
            Some(SumWitness::CoefficientMismatch { exponent, total }) => {
                println!("mismatch_exponent={}", exponent_csv(exponent));
                println!("total={total}");
            }
        }
    } else {
        println!("summands: {}", instance.c());
        println!("verdict: {}", if zero { "zero" } else { "nonzero" });
        println!("dependency checks: {deps}");
        match &witness {
            None => {}
            Some(SumWitness::Monomial { exponent }) => {
                println!(
                    "reason: nonzero coefficient at {} (exponent {})",
                    exponent.monomial_string(),
                    exponent
                );
            }
            Some(SumWitness::DependencyFailed { layer, prefix }) => {
                println!("reason: dependency failed at layer {layer} for prefix {prefix}");
            }
            Some(SumWitness::CoefficientMismatch { exponent, total }) => {
                println!("reason: coefficients at {exponent} sum to {total}");
            }
        }
    }
    Ok(if zero { 0 } else { 1 })
}

fn cmd_hitting_set(args: &HittingSetArgs) -> anyhow::Result<u8> {
    let modulus = args.modulus.unwrap_or_else(default_modulus);
    let field = Field::new(modulus)?;
    let params = SumPitParams {
        n: args.n,
        d: args.d,
        w: args.w,
        c: args.c,
    };
    let effective = match args.ell {
        Some(forced) => forced.min(args.n as u32 + 1),
        None => params.effective_support()?,
    };
    let shift = match &args.shift_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            ShiftTuple::new(format::parse_shift(&text, modulus, args.n)?)?
        }
        None => ShiftTuple::zero(field, args.n),
    };
    if args.t_count == 0 {
        bail!("need at least one t value");
    }
    let t_values: Vec<Fp> = (1..=args.t_count as u64).map(|v| field.el(v)).collect();
    let points = concentration::hitting_set(
        field,
        args.n,
        args.d,
        effective as usize,
        &shift,
        &t_values,
    )?;
    let header = concentration::hitting_set_header(
        &params,
        modulus,
        effective,
        args.t_count,
        points.len() as u128,
    )?;
    println!("{header}");
    for p in points {
        let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        println!("{}", row.join(","));
    }
    Ok(0)
}

fn cmd_report(args: &ReportArgs, porcelain: bool, seed: u64) -> anyhow::Result<u8> {
    let r = load_program(&args.file)?;
    let weights = match &args.weights {
        Some(text) => {
            let parsed: Vec<u64> = text
                .split(',')
                .map(|t| t.trim().parse().context("weights must be integers"))
                .collect::<anyhow::Result<_>>()?;
            Some(WeightAssignment::new(parsed))
        }
        None => None,
    };
    let search = FindConfig {
        seed,
        ..FindConfig::default()
    };
    let report = concentration::concentration_report(
        &r,
        weights,
        args.bound,
        &search,
        roabp::roabp_core::dense::DEFAULT_DENSE_BUDGET,
        porcelain,
    )?;
    print!("{report}");
    Ok(0)
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Zero { file } => cmd_zero(file, cli.porcelain),
        Command::Equiv { file_a, file_b } => cmd_equiv(file_a, file_b, cli.porcelain),
        Command::SumZero { files } => cmd_sum_zero(files, cli.porcelain),
        Command::HittingSet(args) => cmd_hitting_set(args),
        Command::ReportConcentration(args) => cmd_report(args, cli.porcelain, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
