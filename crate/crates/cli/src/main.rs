use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use ftkcenter_core::generate::random_points_instance;
use ftkcenter_core::oracle::{exact_opt_conservative, exact_opt_ft, gap_instance, verify_conservative, verify_ft, OracleLimits};
use ftkcenter_core::report::{solve_instance, Algorithm, InfeasibilityCertificate, SolveOptions, SolveResult, DEFAULT_ALPHA_BOUND};
use ftkcenter_core::{Length, MetricInstance, Variant};

/// Exit status for a certified infeasible instance.
const EXIT_INFEASIBLE: u8 = 2;

#[derive(Parser)]
#[command(name = "ftkc", version, about = "Capacitated fault-tolerant k-center solvers and verifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and re-verify the result.
    Solve(SolveArgs),
    /// Check a solution at a given radius.
    Verify(VerifyArgs),
    /// Compute the exact optimum by enumeration.
    Oracle(OracleArgs),
    /// Emit the integrality gap instance for parameter s.
    Gap(GapArgs),
    /// Solve random instances and record observed factors.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Output {
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_algorithm)]
    alg: Algorithm,
    #[arg(long)]
    input: PathBuf,
    /// Also run the exact oracle and report opt and the observed factor.
    #[arg(long)]
    with_oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ALPHA_BOUND)]
    alpha_bound: usize,
    /// Solve the residual instance of cons-general exactly.
    #[arg(long)]
    exact_inner: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// JSON with "centers" and, for conservative instances, "initial_assignment".
    #[arg(long)]
    solution: PathBuf,
    /// Radius such as 7, 3/2, 0.5 or sqrt(2).
    #[arg(long)]
    radius: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    /// Raise the vertex limit of the enumeration.
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct GapArgs {
    #[arg(long)]
    s: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_algorithm)]
    alg: Algorithm,
    /// Number of instances.
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    /// Capacities are drawn uniformly from this list.
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    capacities: Vec<u64>,
    /// Lattice resolution of the unit square (a product of 2s and 5s).
    #[arg(long, default_value_t = 10)]
    grid: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    with_oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ALPHA_BOUND)]
    alpha_bound: usize,
    /// JSON-lines file receiving one record per instance.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: ftkcenter_core::Error| e.to_string())
}

#[derive(Deserialize)]
struct SolutionFile {
    centers: Vec<usize>,
    #[serde(default)]
    initial_assignment: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct OracleReport {
    variant: Variant,
    #[serde(serialize_with = "ftkcenter_core::numeric::serialize_length")]
    opt: Length,
    centers: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    initial_assignment: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct BenchRecord {
    instance: String,
    seed: u64,
    algorithm: String,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ftkcenter_core::report::SolveReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<InfeasibilityCertificate>,
}

fn read_instance(path: &Path) -> anyhow::Result<MetricInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    MetricInstance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to a sibling temporary file and renames it into place.
fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))
}

fn emit(out: &Output, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => write_atomic(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn solve(args: SolveArgs) -> anyhow::Result<ExitCode> {
    let inst = read_instance(&args.input)?;
    let opts = SolveOptions { alpha_bound: args.alpha_bound, with_oracle: args.with_oracle, exact_inner: args.exact_inner };
    match solve_instance(&inst, args.alg, &opts)? {
        SolveResult::Solved(report) => {
            emit(&args.out, &pretty(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        SolveResult::Infeasible(cert) => {
            emit(&args.out, &pretty(&cert)?)?;
            Ok(ExitCode::from(EXIT_INFEASIBLE))
        }
    }
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let inst = read_instance(&args.input)?;
    let text = fs::read_to_string(&args.solution).with_context(|| format!("reading {}", args.solution.display()))?;
    let sol: SolutionFile = serde_json::from_str(&text).context("parsing solution")?;
    let radius = Length::parse(&args.radius)?;
    if let Some(&bad) = sol.centers.iter().find(|&&c| c >= inst.n()) {
        bail!("center {bad} is not a vertex");
    }
    let report = match (inst.variant, &sol.initial_assignment) {
        (Variant::Conservative, Some(phi0)) => {
            if let Some(&bad) = phi0.iter().find(|&&c| c >= inst.n()) {
                bail!("initial assignment uses {bad}, which is not a vertex");
            }
            verify_conservative(&inst, &sol.centers, phi0, &radius)
        }
        (Variant::Conservative, None) => bail!("conservative instances need an initial_assignment"),
        (Variant::FaultTolerant, _) => verify_ft(&inst, &sol.centers, &radius),
    };
    emit(&args.out, &pretty(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn oracle(args: OracleArgs) -> anyhow::Result<ExitCode> {
    let inst = read_instance(&args.input)?;
    let found = match inst.variant {
        Variant::FaultTolerant => {
            let limits = args.max_n.map_or(OracleLimits::FAULT_TOLERANT, |m| OracleLimits::FAULT_TOLERANT.with_max_n(m));
            exact_opt_ft(&inst, limits)?.map(|e| (e.opt, e.centers, None))
        }
        Variant::Conservative => {
            let limits = args.max_n.map_or(OracleLimits::CONSERVATIVE, |m| OracleLimits::CONSERVATIVE.with_max_n(m));
            exact_opt_conservative(&inst, limits)?.map(|e| (e.opt, e.centers, Some(e.phi0)))
        }
    };
    match found {
        Some((opt, centers, initial_assignment)) => {
            let report = OracleReport { variant: inst.variant, opt, centers, initial_assignment };
            emit(&args.out, &pretty(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            let largest = inst.distinct_distances().pop().unwrap_or_else(Length::zero);
            let cert = InfeasibilityCertificate { infeasible_at: largest, reason: "no center set works at any radius".into() };
            emit(&args.out, &pretty(&cert)?)?;
            Ok(ExitCode::from(EXIT_INFEASIBLE))
        }
    }
}

fn gap(args: GapArgs) -> anyhow::Result<ExitCode> {
    emit(&args.out, &gap_instance(args.s)?.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs) -> anyhow::Result<ExitCode> {
    let variant = if args.alg.is_conservative() { Variant::Conservative } else { Variant::FaultTolerant };
    let opts = SolveOptions { alpha_bound: args.alpha_bound, with_oracle: args.with_oracle, exact_inner: false };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut lines = String::new();
    println!("{:<16} {:>12} {:>14} {:>12} {:>8}", "instance", "tau_star", "verified", "opt", "factor");
    for i in 0..args.count {
        let name = format!("bench-{}-{i}", args.seed);
        let inst = random_points_instance(&mut rng, &name, args.n, args.k, args.alpha, &args.capacities, variant, args.grid)?;
        let record = match solve_instance(&inst, args.alg, &opts)? {
            SolveResult::Solved(report) => {
                let show = |l: &Option<Length>| l.as_ref().map_or("-".to_string(), |l| format!("{:.4}", l.to_f64()));
                println!(
                    "{:<16} {:>12.4} {:>14} {:>12} {:>8}",
                    name,
                    report.tau_star.to_f64(),
                    show(&report.verified_radius),
                    show(&report.opt),
                    report.factor_observed.map_or("-".to_string(), |f| format!("{f:.3}")),
                );
                BenchRecord { instance: name, seed: args.seed, algorithm: args.alg.name().into(), outcome: "solved", report: Some(report), certificate: None }
            }
            SolveResult::Infeasible(cert) => {
                println!("{:<16} {:>12} {:>14} {:>12} {:>8}", name, "infeasible", "-", "-", "-");
                BenchRecord { instance: name, seed: args.seed, algorithm: args.alg.name().into(), outcome: "infeasible", report: None, certificate: Some(cert) }
            }
        };
        lines.push_str(&serde_json::to_string(&record)?);
        lines.push('\n');
    }
    if let Some(path) = &args.output {
        write_atomic(path, &lines)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::Gap(a) => gap(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
