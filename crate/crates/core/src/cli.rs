//! Command-line surface: `eval`, `verify`, `enumerate` and `bench`.
//!
//! Everything runs through [`run`], which returns the exit code and the
//! captured output so the binary stays a one-line wrapper.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size
//! guard. Structured output is one JSON object per line; exact values are
//! always `"p/q"` strings.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::{
    apply_b, enumerate_with_summary, projected_wavefunction, transfer_guard, ParticleConfig, SectorState,
};
use crate::model::{ModelParams, Site};
use crate::numeric::Scalar;
use crate::sampling::generic_params;
use crate::schur::{config_to_partition, generalized_schur_sum_traced, theorem_rhs_traced, Traced};
use crate::verify::{run_suite, tally, PropertyId, SuiteBounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// B-operator transfer on particle-number sectors
    Lattice,
    /// Enumeration of every lattice configuration
    Bruteforce,
    /// Product formula with the determinant form
    Determinant,
    /// Product formula with the N!-term symmetrized sum
    Symsum,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Lattice, Method::Bruteforce, Method::Determinant, Method::Symsum];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Lattice => "lattice",
            Method::Bruteforce => "bruteforce",
            Method::Determinant => "determinant",
            Method::Symsum => "symsum",
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "ffwave", about = "Exact projected wavefunctions of the generalized free-fermion model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one wavefunction by one method
    Eval(EvalArgs),
    /// Run the seeded verification suite
    Verify(VerifyArgs),
    /// List every configuration on M sites with N particles and its value
    Enumerate(EnumerateArgs),
    /// Time every method at one size
    Bench(BenchArgs),
}

/// Model parameters as comma-separated exact values.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Spectral parameters z_1..z_N
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Option<Vec<String>>,
    /// Site weights w_1..w_M
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub w: Option<Vec<String>>,
    /// Site parameters α_1..α_M (default 0)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<String>>,
    /// Site parameters γ_1..γ_M (default 0)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<String>>,
    /// Deformation parameter t
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Draw a full random parameter set; explicit lists override it
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Particle positions x_1 < ... < x_N
    #[arg(long, value_delimiter = ',', required = true)]
    pub x: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Method::Lattice)]
    pub method: Method,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "max-m", default_value_t = 6)]
    pub max_m: usize,
    #[arg(long = "max-n", default_value_t = 3)]
    pub max_n: usize,
    /// Comma-separated property ids, or `all`
    #[arg(long, value_delimiter = ',')]
    pub suite: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long = "N")]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long = "M", default_value_t = 8)]
    pub m: usize,
    #[arg(long = "N", default_value_t = 4)]
    pub n: usize,
    /// Configuration to evaluate (default: particles spread evenly)
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Timing is the best of this many runs
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn failure(err: &Error) -> Self {
        let code = if err.is_size_guard() { EXIT_SIZE_GUARD } else { EXIT_USAGE };
        CliOutput { code, stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = err.render().to_string();
            return if code == EXIT_OK {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Bench(args) => cmd_bench(args),
    };
    outcome.unwrap_or_else(|err| CliOutput::failure(&err))
}

fn parse_list(name: &str, values: &[String], expected: usize) -> Result<Vec<Scalar>> {
    if values.len() != expected {
        return Err(Error::Input(format!("--{name} needs {expected} values, got {}", values.len())));
    }
    values.iter().map(|v| v.parse()).collect()
}

/// Builds parameters for `M` sites and `N` rows from explicit flags, a seed,
/// or both.
pub fn resolve_params(args: &ParamArgs, m: usize, n: usize) -> Result<ModelParams> {
    let base = args.seed.map(|seed| generic_params(seed, m, n));
    let missing = |flag: &str| Error::Input(format!("--{flag} is required without --seed"));

    let z = match (&args.z, &base) {
        (Some(values), _) => parse_list("z", values, n)?,
        (None, Some(base)) => base.z.clone(),
        (None, None) if n == 0 => Vec::new(),
        (None, None) => return Err(missing("z")),
    };
    let t = match (&args.t, &base) {
        (Some(value), _) => value.parse()?,
        (None, Some(base)) => base.t.clone(),
        (None, None) => return Err(missing("t")),
    };
    let site_list =
        |name: &str, values: &Option<Vec<String>>, pick: fn(&Site) -> Scalar, default: Option<Scalar>| match (
            values, &base,
        ) {
            (Some(values), _) => parse_list(name, values, m),
            (None, Some(base)) => Ok(base.sites.iter().map(pick).collect()),
            (None, None) => default.map(|d| vec![d; m]).ok_or_else(|| missing(name)),
        };
    let w = site_list("w", &args.w, |s| s.w.clone(), None)?;
    let alpha = site_list("alpha", &args.alpha, |s| s.alpha.clone(), Some(Scalar::zero()))?;
    let gamma = site_list("gamma", &args.gamma, |s| s.gamma.clone(), Some(Scalar::zero()))?;
    let sites = w.into_iter().zip(alpha).zip(gamma).map(|((w, alpha), gamma)| Site::new(w, alpha, gamma)).collect();
    ModelParams::new(t, z, sites)
}

/// Evaluates `W` by one method, reporting the largest intermediate.
pub fn evaluate(method: Method, params: &ModelParams, config: &ParticleConfig) -> Result<Traced> {
    match method {
        Method::Lattice => {
            transfer_guard(params.m(), params.n())?;
            if config.m() != params.m() || config.n() != params.n() {
                // reuse the shape error from the public entry point
                projected_wavefunction(params, config)?;
            }
            let mut state = SectorState::vacuum(params.m());
            let mut peak = 1;
            for z in params.z.iter().rev() {
                state = apply_b(&state, z, params)?;
                peak = peak.max(state.peak_digits());
            }
            Ok(Traced { value: state.coefficient(config), peak_digits: peak })
        }
        Method::Bruteforce => {
            let summary = enumerate_with_summary(params, config)?;
            Ok(Traced { value: summary.value, peak_digits: summary.peak_digits })
        }
        Method::Determinant => theorem_rhs_traced(params, config),
        Method::Symsum => {
            let sum = generalized_schur_sum_traced(params, config)?;
            let value = crate::schur::exchange_prefactor(params) * sum.value;
            Ok(Traced { peak_digits: sum.peak_digits.max(value.digits()), value })
        }
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn emit(out: &mut String, line: impl AsRef<str>) {
    out.push_str(line.as_ref());
    out.push('\n');
}

pub fn cmd_eval(args: &EvalArgs) -> Result<CliOutput> {
    let n = args.n.unwrap_or(args.x.len());
    if n != args.x.len() {
        return Err(Error::Input(format!("--N {n} but --x lists {} positions", args.x.len())));
    }
    let config = ParticleConfig::new(args.x.clone(), args.m)?;
    let params = resolve_params(&args.params, args.m, n)?;
    let start = Instant::now();
    let traced = evaluate(args.method, &params, &config)?;
    let elapsed = start.elapsed();

    let mut stdout = String::new();
    match args.format {
        OutputFormat::Structured => {
            let record = json!({
                "command": "eval",
                "method": args.method,
                "M": args.m,
                "N": n,
                "x": args.x,
                "seed": args.params.seed,
                "params": params,
                "value": traced.value.to_string(),
                "peak_digits": traced.peak_digits,
                "wall_time_ms": millis(elapsed),
            });
            emit(&mut stdout, record.to_string());
        }
        OutputFormat::Human => {
            emit(&mut stdout, format!("W = {}", traced.value));
            emit(
                &mut stdout,
                format!(
                    "method {} | M={} N={} x={:?} | t={} z={:?} | {:.3} ms",
                    args.method.as_str(),
                    args.m,
                    n,
                    args.x,
                    params.t,
                    params.z,
                    millis(elapsed)
                ),
            );
        }
    }
    Ok(CliOutput { code: EXIT_OK, stdout, stderr: String::new() })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<CliOutput> {
    let mut bounds = SuiteBounds::with_size(args.max_m, args.max_n);
    if let Some(names) = &args.suite {
        if !names.iter().any(|n| n == "all") {
            bounds.only = Some(names.iter().map(|n| n.parse()).collect::<Result<Vec<PropertyId>>>()?);
        }
    }
    let reports = run_suite(args.seed, &bounds);
    let (passed, failed) = tally(&reports);
    let mut stdout = String::new();
    match args.format {
        OutputFormat::Structured => {
            for report in &reports {
                emit(&mut stdout, report.to_json_line());
            }
            emit(
                &mut stdout,
                json!({ "summary": { "seed": args.seed, "max_m": args.max_m, "max_n": args.max_n, "passed": passed, "failed": failed } })
                    .to_string(),
            );
        }
        OutputFormat::Human => {
            for report in &reports {
                emit(&mut stdout, report.human_line());
            }
            emit(&mut stdout, format!("{passed} passed, {failed} failed (seed {})", args.seed));
        }
    }
    let code = if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(CliOutput { code, stdout, stderr: String::new() })
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> Result<CliOutput> {
    if args.n > args.m {
        return Err(Error::InvalidConfig(format!("N = {} exceeds M = {}", args.n, args.m)));
    }
    let params = resolve_params(&args.params, args.m, args.n)?;
    let brute = enumerate_with_summary(&params, &ParticleConfig::all(args.m, args.n)[0]);
    let use_lattice = matches!(&brute, Err(err) if err.is_size_guard());
    let mut stdout = String::new();
    if args.format == OutputFormat::Human {
        emit(&mut stdout, format!("{:<20} {:<16} {:>8}  value", "x", "lambda", "configs"));
    }
    for config in ParticleConfig::all(args.m, args.n) {
        let (value, count) = if use_lattice {
            (projected_wavefunction(&params, &config)?, None)
        } else {
            let summary = enumerate_with_summary(&params, &config)?;
            (summary.value, Some(summary.configurations))
        };
        let lambda = config_to_partition(&config);
        match args.format {
            OutputFormat::Structured => emit(
                &mut stdout,
                json!({
                    "command": "enumerate",
                    "x": config.positions(),
                    "lambda": lambda.parts(),
                    "configurations": count,
                    "method": if use_lattice { "lattice" } else { "bruteforce" },
                    "value": value.to_string(),
                })
                .to_string(),
            ),
            OutputFormat::Human => emit(
                &mut stdout,
                format!(
                    "{:<20} {:<16} {:>8}  {}",
                    format!("{:?}", config.positions()),
                    format!("{:?}", lambda.parts()),
                    count.map_or("-".to_string(), |c| c.to_string()),
                    value
                ),
            ),
        }
    }
    Ok(CliOutput { code: EXIT_OK, stdout, stderr: String::new() })
}

/// One measured method at one size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: Method,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub value: Option<String>,
    pub wall_time_ms: Option<f64>,
    pub peak_digits: Option<usize>,
    pub status: String,
}

fn spread_config(m: usize, n: usize) -> Result<ParticleConfig> {
    let positions = (1..=n).map(|i| (i * m).div_ceil(n)).collect();
    ParticleConfig::new(positions, m)
}

/// Times every method on the same seeded point.
pub fn bench_rows(m: usize, n: usize, x: Option<Vec<usize>>, seed: u64, repeat: usize) -> Result<Vec<BenchRow>> {
    if n > m {
        return Err(Error::InvalidConfig(format!("N = {n} exceeds M = {m}")));
    }
    let config = match x {
        Some(x) => ParticleConfig::new(x, m)?,
        None => spread_config(m, n)?,
    };
    if config.n() != n {
        return Err(Error::Input(format!("--x lists {} positions but N = {n}", config.n())));
    }
    let params = generic_params(seed, m, n);
    let mut rows = Vec::new();
    for method in Method::ALL {
        let mut best: Option<Duration> = None;
        let mut result = None;
        for _ in 0..repeat.max(1) {
            let start = Instant::now();
            let outcome = evaluate(method, &params, &config);
            let elapsed = start.elapsed();
            let stop = outcome.is_err();
            best = Some(best.map_or(elapsed, |b| b.min(elapsed)));
            result = Some(outcome);
            if stop {
                break;
            }
        }
        let row = match result.expect("at least one run") {
            Ok(traced) => BenchRow {
                method,
                m,
                n,
                value: Some(traced.value.to_string()),
                wall_time_ms: best.map(millis),
                peak_digits: Some(traced.peak_digits),
                status: "ok".into(),
            },
            Err(err) => BenchRow {
                method,
                m,
                n,
                value: None,
                wall_time_ms: None,
                peak_digits: None,
                status: if err.is_size_guard() { format!("skipped: {err}") } else { format!("error: {err}") },
            },
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<CliOutput> {
    let rows = bench_rows(args.m, args.n, args.x.clone(), args.seed, args.repeat)?;
    let mut stdout = String::new();
    match args.format {
        OutputFormat::Structured => {
            for row in &rows {
                emit(&mut stdout, serde_json::to_string(row).expect("row serializes"));
            }
        }
        OutputFormat::Human => {
            emit(
                &mut stdout,
                format!("{:<12} {:>4} {:>4} {:>12} {:>8}  value", "method", "M", "N", "time (ms)", "digits"),
            );
            for row in &rows {
                let mut line = format!(
                    "{:<12} {:>4} {:>4} {:>12} {:>8}  ",
                    row.method.as_str(),
                    row.m,
                    row.n,
                    row.wall_time_ms.map_or("-".into(), |t| format!("{t:.3}")),
                    row.peak_digits.map_or("-".into(), |d| d.to_string()),
                );
                let _ = write!(line, "{}", row.value.as_deref().unwrap_or(&row.status));
                emit(&mut stdout, line);
            }
        }
    }
    let agree = rows.iter().filter_map(|r| r.value.as_ref()).collect::<Vec<_>>().windows(2).all(|w| w[0] == w[1]);
    let stderr = if agree { String::new() } else { "warning: methods disagree on the value\n".to_string() };
    Ok(CliOutput { code: EXIT_OK, stdout, stderr })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutput {
        run(std::iter::once("ffwave").chain(args.iter().copied()))
    }

    #[test]
    fn resolve_requires_values_without_seed() {
        let args = ParamArgs { w: Some(vec!["1".into()]), t: Some("1".into()), ..Default::default() };
        assert!(resolve_params(&args, 1, 1).is_err());
        let args = ParamArgs { z: Some(vec!["2".into()]), ..args };
        let p = resolve_params(&args, 1, 1).unwrap();
        assert_eq!(p.sites[0].alpha, Scalar::zero());
        let wrong = ParamArgs { w: Some(vec!["1".into(), "2".into()]), ..args };
        assert!(resolve_params(&wrong, 1, 1).is_err());
    }

    #[test]
    fn seed_with_override() {
        let args = ParamArgs { seed: Some(3), t: Some("5/2".into()), ..Default::default() };
        let p = resolve_params(&args, 4, 2).unwrap();
        let base = generic_params(3, 4, 2);
        assert_eq!(p.t, "5/2".parse().unwrap());
        assert_eq!(p.z, base.z);
        assert_eq!(p.sites, base.sites);
    }

    #[test]
    fn spread_configs() {
        assert_eq!(spread_config(8, 4).unwrap().positions(), &[2, 4, 6, 8]);
        assert_eq!(spread_config(5, 0).unwrap().positions(), &[] as &[usize]);
        assert_eq!(spread_config(40, 10).unwrap().n(), 10);
    }

    #[test]
    fn bad_number_is_usage_error() {
        let out = run_args(&["eval", "--M", "1", "--x", "1", "--w", "seven", "--z", "1", "--t", "1"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("seven"));
        let out = run_args(&["eval", "--M", "1"]);
        assert_eq!(out.code, EXIT_USAGE);
    }
}
