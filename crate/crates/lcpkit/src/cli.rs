//! Command-line benchmark harness.
//!
//! Subcommands: `solve` (one method, one problem, one report row),
//! `table` (method x size sweep shaped like the benchmark tables),
//! `certify` (JSON certification report, exit 4 when not certified) and
//! `gen` (write a generated problem as Matrix Market files).
//!
//! Exit codes are a stable contract: 0 converged / certified, 1 bad
//! configuration or file error, 2 iteration limit, 3 divergence, 4 not
//! certified.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::certify::{certify, CertifyLimits};
use crate::error::{Error, Result};
use crate::market;
use crate::problem::{gen_example1, gen_example2, LcpProblem};
use crate::solver::{solve, SolveReport, SolveStatus, SolverConfig};
use crate::sparse::DiagonalMatrix;
use crate::splitting::{build_spec, SplittingSpec, Variant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_MAX_ITERS: i32 = 2;
pub const EXIT_DIVERGED: i32 = 3;
pub const EXIT_NOT_CERTIFIED: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "lcpkit",
    version,
    about = "Modulus-based matrix-splitting solvers for linear complementarity problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one method on one problem and print a report row.
    Solve(SolveArgs),
    /// Sweep methods over problem sizes and print a benchmark table.
    Table(TableArgs),
    /// Print a convergence certification report as JSON.
    Certify(CertifyArgs),
    /// Generate a benchmark problem and write it as Matrix Market files.
    Gen(GenArgs),
}

#[derive(Args, Debug, Default, Clone)]
struct ProblemFlags {
    /// Benchmark family: 1 (symmetric) or 2 (nonsymmetric).
    #[arg(long)]
    example: Option<u8>,
    /// System matrix file (Matrix Market) when not using --example.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Offset vector file, paired with --matrix.
    #[arg(long)]
    q: Option<PathBuf>,
    /// Block count; the generated problem has n = m^2 unknowns.
    #[arg(short, long)]
    m: Option<usize>,
    /// Problem size; must be a perfect square for generated problems.
    #[arg(short, long)]
    n: Option<usize>,
    /// Diagonal shift of the generated matrix.
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemFlags,
    /// Method tag: mgs, msor, maor, nam-mod, nam-modmod, nam-jacobi,
    /// namgs, namsor, namaor.
    #[arg(long)]
    method: Option<String>,
    /// Relaxation parameter (SOR/AOR families and nam-modmod).
    #[arg(long)]
    alpha: Option<f64>,
    /// Second relaxation parameter (AOR family).
    #[arg(long)]
    beta: Option<f64>,
    /// Relaxation diagonal: diag, identity, scalar:VALUE or file:PATH.
    #[arg(long)]
    omega: Option<String>,
    /// Override the modulus scaling r.
    #[arg(long)]
    r: Option<f64>,
    /// Stopping tolerance on the natural residual [default: 1e-5].
    #[arg(long)]
    eps: Option<f64>,
    /// Iteration cap [default: 10000].
    #[arg(long)]
    max_iters: Option<usize>,
    /// Timing repeats; the reported CPU time is the median [default: 3].
    #[arg(long)]
    repeats: Option<usize>,
    /// Output format: md, csv or json [default: md].
    #[arg(long)]
    format: Option<String>,
    /// Include the residual trajectory (json output).
    #[arg(long)]
    history: bool,
    /// Reserved for randomized tests.
    #[arg(long)]
    seed: Option<u64>,
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Benchmark family: 1 or 2.
    #[arg(long)]
    example: Option<u8>,
    /// Diagonal shift [default: 4].
    #[arg(long)]
    delta: Option<f64>,
    /// Comma-separated sizes, each a perfect square, e.g. 100,900,2500.
    #[arg(long)]
    ns: String,
    /// Comma-separated methods, each `name[:alpha[:beta]]`,
    /// e.g. mgs,namgs,msor:0.85,namaor:0.9:0.5.
    #[arg(long)]
    methods: String,
    #[arg(long)]
    omega: Option<String>,
    /// Fallback alpha for methods listed without one.
    #[arg(long)]
    alpha: Option<f64>,
    /// Fallback beta for methods listed without one.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    repeats: Option<usize>,
    /// Output format: md or csv [default: md].
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    problem: ProblemFlags,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    omega: Option<String>,
    /// Principal-minor enumeration cap [default: 12].
    #[arg(long)]
    p_limit: Option<usize>,
    /// Dense-path size cap for the spectral bound [default: 400].
    #[arg(long)]
    dense_limit: Option<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Benchmark family: 1 or 2.
    #[arg(long)]
    example: u8,
    #[arg(short, long)]
    m: Option<usize>,
    #[arg(short, long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 4.0)]
    delta: f64,
    /// Output path for the system matrix.
    #[arg(long)]
    out_a: PathBuf,
    /// Output path for the offset vector.
    #[arg(long)]
    out_q: PathBuf,
}

/// Relaxation diagonal policy.
#[derive(Debug, Clone, PartialEq)]
pub enum OmegaPolicy {
    DiagOfA,
    Identity,
    Scalar(f64),
    File(PathBuf),
}

impl OmegaPolicy {
    pub fn parse(text: &str) -> Result<Self> {
        if text == "diag" {
            Ok(OmegaPolicy::DiagOfA)
        } else if text == "identity" {
            Ok(OmegaPolicy::Identity)
        } else if let Some(v) = text.strip_prefix("scalar:") {
            let value: f64 = v
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("cannot parse omega scalar '{v}'")))?;
            if value <= 0.0 {
                return Err(Error::InvalidParameter("omega scalar must be > 0".into()));
            }
            Ok(OmegaPolicy::Scalar(value))
        } else if let Some(p) = text.strip_prefix("file:") {
            Ok(OmegaPolicy::File(PathBuf::from(p)))
        } else {
            Err(Error::InvalidParameter(format!(
                "unknown omega policy '{text}' (expected diag, identity, scalar:VALUE or file:PATH)"
            )))
        }
    }

    pub fn build(&self, problem: &LcpProblem) -> Result<DiagonalMatrix> {
        let om = match self {
            OmegaPolicy::DiagOfA => DiagonalMatrix::new(problem.a().diagonal()),
            OmegaPolicy::Identity => DiagonalMatrix::identity(problem.n()),
            OmegaPolicy::Scalar(v) => DiagonalMatrix::scalar(problem.n(), *v),
            OmegaPolicy::File(path) => DiagonalMatrix::new(market::read_vector(path)?),
        };
        om.require_positive()?;
        Ok(om)
    }
}

/// Problem source: a generated family or a pair of files.
#[derive(Debug, Clone)]
pub enum ProblemSource {
    Example { which: u8, m: usize, delta: f64 },
    Files { matrix: PathBuf, q: PathBuf },
}

impl ProblemSource {
    pub fn build(&self) -> Result<LcpProblem> {
        match self {
            ProblemSource::Example { which, m, delta } => match which {
                1 => gen_example1(*m, *delta),
                2 => gen_example2(*m, *delta),
                other => Err(Error::InvalidParameter(format!(
                    "example must be 1 or 2, got {other}"
                ))),
            },
            ProblemSource::Files { matrix, q } => LcpProblem::load(matrix, q),
        }
    }
}

/// Fully resolved configuration for one solve.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: ProblemSource,
    pub method: Variant,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub omega: Option<OmegaPolicy>,
    pub r_override: Option<f64>,
    pub epsilon: f64,
    pub max_iters: usize,
    pub repeats: usize,
    pub history: bool,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn build_spec(&self, problem: &LcpProblem) -> Result<SplittingSpec> {
        if self.method.omega_is_fixed() && self.omega.is_some() {
            return Err(Error::InvalidParameter(format!(
                "method '{}' fixes its relaxation diagonal; --omega is not accepted",
                self.method.tag()
            )));
        }
        let policy = self.omega.clone().unwrap_or(OmegaPolicy::DiagOfA);
        let omega = policy.build(problem)?;
        let mut spec = build_spec(problem.a(), self.method, &omega, self.alpha, self.beta)?;
        if let Some(r) = self.r_override {
            spec = spec.with_r(r)?;
        }
        Ok(spec)
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            epsilon: self.epsilon,
            max_iters: self.max_iters,
            record_history: self.history,
            ..Default::default()
        }
    }
}

/// Optional TOML config file; every key mirrors a flag and flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    example: Option<u8>,
    matrix: Option<PathBuf>,
    q: Option<PathBuf>,
    m: Option<usize>,
    n: Option<usize>,
    delta: Option<f64>,
    method: Option<String>,
    alpha: Option<f64>,
    beta: Option<f64>,
    omega: Option<String>,
    r: Option<f64>,
    eps: Option<f64>,
    max_iters: Option<usize>,
    repeats: Option<usize>,
    format: Option<String>,
    history: Option<bool>,
    seed: Option<u64>,
}

impl FileConfig {
    fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::InvalidParameter(format!("config file: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

impl OutputFormat {
    fn parse(text: &str) -> Result<Self> {
        match text {
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidParameter(format!(
                "unknown format '{other}' (expected md, csv or json)"
            ))),
        }
    }
}

fn resolve_source(flags: &ProblemFlags, file: &FileConfig) -> Result<ProblemSource> {
    let example = flags.example.or(file.example);
    let matrix = flags.matrix.clone().or_else(|| file.matrix.clone());
    let qpath = flags.q.clone().or_else(|| file.q.clone());
    match (example, matrix, qpath) {
        (Some(which), None, None) => {
            let m = resolve_m(flags.m.or(file.m), flags.n.or(file.n))?;
            let delta = flags.delta.or(file.delta).unwrap_or(4.0);
            Ok(ProblemSource::Example { which, m, delta })
        }
        (None, Some(matrix), Some(q)) => Ok(ProblemSource::Files { matrix, q }),
        (None, None, _) | (None, _, None) => Err(Error::InvalidParameter(
            "specify either --example or both --matrix and --q".into(),
        )),
        _ => Err(Error::InvalidParameter(
            "--example conflicts with --matrix/--q; pick one problem source".into(),
        )),
    }
}

fn resolve_m(m: Option<usize>, n: Option<usize>) -> Result<usize> {
    match (m, n) {
        (Some(m), None) => Ok(m),
        (None, Some(n)) => {
            let m = (n as f64).sqrt().round() as usize;
            if m * m != n || m < 2 {
                return Err(Error::InvalidParameter(format!(
                    "generated problems need n = m^2 with m >= 2; {n} is not such a square"
                )));
            }
            Ok(m)
        }
        (Some(_), Some(_)) => Err(Error::InvalidParameter("give --m or --n, not both".into())),
        (None, None) => Err(Error::InvalidParameter(
            "generated problems need --m or --n".into(),
        )),
    }
}

/// One table / report cell.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub method: Variant,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub n: usize,
    pub status: SolveStatus,
    pub iterations: usize,
    pub cpu_seconds: f64,
    pub residual: f64,
    pub report: SolveReport,
}

/// Run one configured solve `repeats` times; iteration counts and residuals
/// are deterministic across repeats, the timing is the median.
pub fn run_solve(cfg: &RunConfig) -> Result<ReportRow> {
    let problem = cfg.source.build()?;
    let spec = cfg.build_spec(&problem)?;
    let solver_cfg = cfg.solver_config();
    let mut reports = Vec::with_capacity(cfg.repeats.max(1));
    for _ in 0..cfg.repeats.max(1) {
        reports.push(solve(&problem, &spec, &solver_cfg)?);
    }
    let mut times: Vec<Duration> = reports.iter().map(|r| r.wall_time).collect();
    times.sort();
    let median = times[times.len() / 2];
    let first = &reports[0];
    debug_assert!(reports.iter().all(|r| r.iterations == first.iterations));
    let row = ReportRow {
        method: cfg.method,
        alpha: cfg.alpha,
        beta: cfg.beta,
        n: problem.n(),
        status: first.status,
        iterations: first.iterations,
        cpu_seconds: median.as_secs_f64(),
        residual: first.final_residual,
        report: reports.into_iter().next().expect("at least one run"),
    };
    Ok(row)
}

/// Format a residual the way benchmark tables print it: two significant
/// digits in e-notation, e.g. `9.7e-06`.
pub fn format_residual(v: f64) -> String {
    if v == 0.0 {
        return "0.0e+00".into();
    }
    let exp = v.abs().log10().floor() as i32;
    let mut mantissa = v / 10f64.powi(exp);
    let mut exp = exp;
    mantissa = (mantissa * 10.0).round() / 10.0;
    if mantissa.abs() >= 10.0 {
        mantissa /= 10.0;
        exp += 1;
    }
    format!(
        "{mantissa:.1}e{}{:02}",
        if exp < 0 { "-" } else { "+" },
        exp.abs()
    )
}

fn status_label(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Converged => "CONVERGED",
        SolveStatus::MaxIters => "MAX_ITERS",
        SolveStatus::Diverged => "DIVERGED",
    }
}

fn method_label(v: Variant, alpha: Option<f64>, beta: Option<f64>) -> String {
    match (alpha, beta) {
        (Some(a), Some(b)) => format!("{} (alpha={a}, beta={b})", v.display()),
        (Some(a), None) => format!("{} (alpha={a})", v.display()),
        _ => v.display().to_string(),
    }
}

const CSV_HEADER: &str = "method,alpha,beta,n,status,iterations,cpu_seconds,residual";

fn csv_row(row: &ReportRow) -> String {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{}",
        row.method.tag(),
        opt(row.alpha),
        opt(row.beta),
        row.n,
        status_label(row.status),
        row.iterations,
        row.cpu_seconds,
        row.residual
    )
}

fn print_solve_row(row: &ReportRow, format: OutputFormat, history: bool) {
    match format {
        OutputFormat::Markdown => {
            println!("| method | n | alpha | IT | CPU | Res | status |");
            println!("|---|---|---|---|---|---|---|");
            let alpha = row
                .alpha
                .map(|a| a.to_string())
                .unwrap_or_else(|| "-".into());
            println!(
                "| {} | {} | {} | {} | {:.4} | {} | {} |",
                row.method.display(),
                row.n,
                alpha,
                row.iterations,
                row.cpu_seconds,
                format_residual(row.residual),
                status_label(row.status),
            );
        }
        OutputFormat::Csv => {
            println!("{CSV_HEADER}");
            println!("{}", csv_row(row));
        }
        OutputFormat::Json => {
            let mut doc = serde_json::json!({
                "method": row.method.tag(),
                "n": row.n,
                "alpha": row.alpha,
                "beta": row.beta,
                "status": status_label(row.status),
                "iterations": row.iterations,
                "cpu_seconds": row.cpu_seconds,
                "residual": row.residual,
            });
            if history {
                doc["residual_history"] =
                    serde_json::json!(row.report.residual_history.clone().unwrap_or_default());
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
}

fn solve_exit(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Converged => EXIT_OK,
        SolveStatus::MaxIters => EXIT_MAX_ITERS,
        SolveStatus::Diverged => EXIT_DIVERGED,
    }
}

fn cmd_solve(args: SolveArgs) -> Result<i32> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let source = resolve_source(&args.problem, &file)?;
    let method_tag = args
        .method
        .or(file.method)
        .ok_or_else(|| Error::InvalidParameter("--method is required".into()))?;
    let method = Variant::parse_tag(&method_tag)?;
    let omega = match args.omega.or(file.omega) {
        Some(text) => Some(OmegaPolicy::parse(&text)?),
        None => None,
    };
    let format = match args.format.or(file.format) {
        Some(text) => OutputFormat::parse(&text)?,
        None => OutputFormat::Markdown,
    };
    let history = args.history || file.history.unwrap_or(false);
    let cfg = RunConfig {
        source,
        method,
        alpha: args.alpha.or(file.alpha),
        beta: args.beta.or(file.beta),
        omega,
        r_override: args.r.or(file.r),
        epsilon: args.eps.or(file.eps).unwrap_or(1e-5),
        max_iters: args.max_iters.or(file.max_iters).unwrap_or(10_000),
        repeats: args.repeats.or(file.repeats).unwrap_or(3),
        history,
        seed: args.seed.or(file.seed),
    };
    let row = run_solve(&cfg)?;
    print_solve_row(&row, format, history);
    Ok(solve_exit(row.status))
}

/// A method entry in a sweep: `name[:alpha[:beta]]`.
fn parse_method_entry(
    entry: &str,
    fallback_alpha: Option<f64>,
    fallback_beta: Option<f64>,
) -> Result<(Variant, Option<f64>, Option<f64>)> {
    let mut parts = entry.split(':');
    let name = parts.next().unwrap_or_default();
    let variant = Variant::parse_tag(name)?;
    let alpha = match parts.next() {
        Some(text) => Some(text.parse::<f64>().map_err(|_| {
            Error::InvalidParameter(format!("cannot parse alpha in method entry '{entry}'"))
        })?),
        None => fallback_alpha,
    };
    let beta = match parts.next() {
        Some(text) => Some(text.parse::<f64>().map_err(|_| {
            Error::InvalidParameter(format!("cannot parse beta in method entry '{entry}'"))
        })?),
        None => fallback_beta,
    };
    if parts.next().is_some() {
        return Err(Error::InvalidParameter(format!(
            "too many ':' parts in method entry '{entry}'"
        )));
    }
    Ok((variant, alpha, beta))
}

fn cmd_table(args: TableArgs) -> Result<i32> {
    let example = args.example.unwrap_or(1);
    let delta = args.delta.unwrap_or(4.0);
    let format = match args.format.as_deref() {
        Some(text) => OutputFormat::parse(text)?,
        None => OutputFormat::Markdown,
    };
    if format == OutputFormat::Json {
        return Err(Error::InvalidParameter(
            "table output supports md or csv".into(),
        ));
    }
    let ns: Vec<usize> = args
        .ns
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("cannot parse size '{s}' in --ns")))
        })
        .collect::<Result<_>>()?;
    let methods: Vec<(Variant, Option<f64>, Option<f64>)> = args
        .methods
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| parse_method_entry(s.trim(), args.alpha, args.beta))
        .collect::<Result<_>>()?;
    if ns.is_empty() || methods.is_empty() {
        return Err(Error::InvalidParameter(
            "the sweep needs at least one size and one method".into(),
        ));
    }
    let omega = match args.omega.as_deref() {
        Some(text) => Some(OmegaPolicy::parse(text)?),
        None => None,
    };

    let mut grid: Vec<Vec<Result<ReportRow>>> = Vec::new();
    for &(variant, alpha, beta) in &methods {
        let mut row_cells = Vec::new();
        for &n in &ns {
            let cell = resolve_m(None, Some(n)).and_then(|m| {
                let cfg = RunConfig {
                    source: ProblemSource::Example {
                        which: example,
                        m,
                        delta,
                    },
                    method: variant,
                    alpha,
                    beta,
                    omega: omega.clone(),
                    r_override: None,
                    epsilon: args.eps.unwrap_or(1e-5),
                    max_iters: args.max_iters.unwrap_or(10_000),
                    repeats: args.repeats.unwrap_or(3),
                    history: false,
                    seed: None,
                };
                run_solve(&cfg)
            });
            row_cells.push(cell);
        }
        grid.push(row_cells);
    }

    match format {
        OutputFormat::Markdown => print_table_markdown(&methods, &ns, &grid),
        OutputFormat::Csv => print_table_csv(&grid),
        OutputFormat::Json => unreachable!("rejected above"),
    }
    Ok(EXIT_OK)
}

fn print_table_markdown(
    methods: &[(Variant, Option<f64>, Option<f64>)],
    ns: &[usize],
    grid: &[Vec<Result<ReportRow>>],
) {
    print!("| method | metric |");
    for n in ns {
        print!(" n={n} |");
    }
    println!();
    print!("|---|---|");
    for _ in ns {
        print!("---|");
    }
    println!();
    for (row_idx, &(variant, alpha, beta)) in methods.iter().enumerate() {
        let cells = &grid[row_idx];
        let label = method_label(variant, alpha, beta);
        for metric in ["IT", "CPU", "Res"] {
            let name = if metric == "IT" { label.as_str() } else { "" };
            print!("| {name} | {metric} |");
            for cell in cells {
                let text = match cell {
                    Ok(row) if row.status == SolveStatus::Converged => match metric {
                        "IT" => row.iterations.to_string(),
                        "CPU" => format!("{:.4}", row.cpu_seconds),
                        _ => format_residual(row.residual),
                    },
                    Ok(row) => format!("—({})", status_label(row.status)),
                    Err(e) => format!("—(ERROR: {e})"),
                };
                print!(" {text} |");
            }
            println!();
        }
    }
}

fn print_table_csv(grid: &[Vec<Result<ReportRow>>]) {
    println!("{CSV_HEADER}");
    for cells in grid {
        for cell in cells {
            match cell {
                Ok(row) => println!("{}", csv_row(row)),
                Err(e) => eprintln!("error: {e}"),
            }
        }
    }
}

fn cmd_certify(args: CertifyArgs) -> Result<i32> {
    let file = FileConfig::default();
    let source = resolve_source(&args.problem, &file)?;
    let method_tag = args
        .method
        .ok_or_else(|| Error::InvalidParameter("--method is required".into()))?;
    let method = Variant::parse_tag(&method_tag)?;
    let omega = match args.omega {
        Some(text) => Some(OmegaPolicy::parse(&text)?),
        None => None,
    };
    let cfg = RunConfig {
        source,
        method,
        alpha: args.alpha,
        beta: args.beta,
        omega,
        r_override: None,
        epsilon: 1e-5,
        max_iters: 10_000,
        repeats: 1,
        history: false,
        seed: None,
    };
    let problem = cfg.source.build()?;
    let spec = cfg.build_spec(&problem)?;
    let mut limits = CertifyLimits::default();
    if let Some(p) = args.p_limit {
        limits.p_limit = p;
    }
    if let Some(d) = args.dense_limit {
        limits.dense_limit = d;
    }
    let report = certify(&spec, &limits)?;
    println!("{}", report.to_json());
    Ok(if report.certified {
        EXIT_OK
    } else {
        EXIT_NOT_CERTIFIED
    })
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let m = resolve_m(args.m, args.n)?;
    let problem = match args.example {
        1 => gen_example1(m, args.delta)?,
        2 => gen_example2(m, args.delta)?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "example must be 1 or 2, got {other}"
            )))
        }
    };
    problem.export(&args.out_a, &args.out_q)?;
    println!(
        "wrote {} (n={}) and {}",
        args.out_a.display(),
        problem.n(),
        args.out_q.display()
    );
    Ok(EXIT_OK)
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path with code 0
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Table(args) => cmd_table(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_formatting_matches_table_style() {
        assert_eq!(format_residual(9.673e-6), "9.7e-06");
        assert_eq!(format_residual(6.3e-6), "6.3e-06");
        assert_eq!(format_residual(9.96e-6), "1.0e-05");
        assert_eq!(format_residual(1.0), "1.0e+00");
        assert_eq!(format_residual(0.0), "0.0e+00");
    }

    #[test]
    fn omega_policy_parsing() {
        assert_eq!(OmegaPolicy::parse("diag").unwrap(), OmegaPolicy::DiagOfA);
        assert_eq!(
            OmegaPolicy::parse("identity").unwrap(),
            OmegaPolicy::Identity
        );
        assert_eq!(
            OmegaPolicy::parse("scalar:4.0").unwrap(),
            OmegaPolicy::Scalar(4.0)
        );
        assert!(OmegaPolicy::parse("scalar:-1").is_err());
        assert!(OmegaPolicy::parse("bogus").is_err());
    }

    #[test]
    fn method_entry_parsing() {
        let (v, a, b) = parse_method_entry("msor:0.85", None, None).unwrap();
        assert_eq!(v, Variant::Msor);
        assert_eq!(a, Some(0.85));
        assert_eq!(b, None);

        let (v, a, b) = parse_method_entry("namaor:0.9:0.5", None, None).unwrap();
        assert_eq!(v, Variant::Namaor);
        assert_eq!(a, Some(0.9));
        assert_eq!(b, Some(0.5));

        let (_, a, _) = parse_method_entry("namsor", Some(0.91), None).unwrap();
        assert_eq!(a, Some(0.91));

        assert!(parse_method_entry("namsor:x", None, None).is_err());
        assert!(parse_method_entry("nope", None, None).is_err());
    }

    #[test]
    fn resolve_m_accepts_squares_only() {
        assert_eq!(resolve_m(Some(10), None).unwrap(), 10);
        assert_eq!(resolve_m(None, Some(900)).unwrap(), 30);
        assert!(resolve_m(None, Some(10)).is_err());
        assert!(resolve_m(None, None).is_err());
        assert!(resolve_m(Some(3), Some(9)).is_err());
    }
}
