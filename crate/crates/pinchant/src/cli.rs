//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a `verify` check failed, or an output could not be written |
//! | 2 | invalid arguments or scenario file |
//! | 3 | solver anomaly |

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pinchant_core::{
    avg_snr, ccdf_inst_snr, fixed_antenna_baseline, fixed_antenna_outage_baseline,
    solve_maxmin, solve_outage, two_user_closed_form, Error as CoreError, OutageSpec, Scenario,
    Solution, SolverTolerances,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::oracle::{
    estimate_avg_snr, estimate_ccdf, estimate_ccdf_many, grid_search_maxmin, grid_search_outage,
    log_grid, outage_grid_slack, outage_threshold_bracket, McConfig,
};
use crate::records::{
    relative_gap, write_csv, CcdfRow, Metric, ResultRecord, SolutionDoc, SolveReport,
    ToleranceDoc, CCDF_COLUMNS, RESULT_COLUMNS,
};
use crate::scenario_file::{Loaded, OutageEntry, ScenarioFile};

#[derive(Debug, Parser)]
#[command(name = "pinchant", version, about = "Pinching-antenna placement solver")]
pub struct Cli {
    /// Seed for Monte-Carlo runs and random user drops.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Solver tolerance override, e.g. `eps_t=1e-4`. Repeatable.
    #[arg(long = "tolerance", global = true, value_name = "KEY=VALUE")]
    pub tolerance: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize the antenna position for one scenario.
    Solve(SolveArgs),
    /// Solve over a grid of one or two swept parameters.
    Sweep(SweepArgs),
    /// Tabulate the analytic and simulated SNR CCDF for one user.
    Ccdf(CcdfArgs),
    /// Check formulas and solvers against Monte-Carlo and brute force.
    Verify(VerifyArgs),
    /// Two-user closed-form optimum.
    ClosedForm(ClosedFormArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub scenario: PathBuf,
    #[arg(long, value_enum, default_value = "avg-snr")]
    pub metric: Metric,
    /// Output file (stdout when omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub scenario: PathBuf,
    #[arg(long, value_enum, default_value = "avg-snr")]
    pub metric: Metric,
    /// `NAME=v1,v2,...` or `NAME=lo:hi:n[:log]` with NAME one of dx, beta,
    /// m, epsilon. At most two.
    #[arg(long = "axis", value_name = "NAME=GRID", required = true)]
    pub axes: Vec<String>,
    /// Random user drops per grid point when dx or m is swept.
    #[arg(long, default_value_t = 100)]
    pub drops: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CcdfArgs {
    pub scenario: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub user: usize,
    #[arg(long)]
    pub x_pin: f64,
    /// `t1,t2,...` or `lo:hi:n[:log]`.
    #[arg(long)]
    pub t_grid: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub scenario: PathBuf,
    #[arg(long, default_value_t = 200_000)]
    pub samples: u64,
    /// Multiply η in the analytic formulas by this factor (negative control).
    #[arg(long)]
    pub corrupt_eta: Option<f64>,
    /// Also write the report as JSON to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClosedFormArgs {
    pub scenario: PathBuf,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Solver(String),
    Io(String),
    ChecksFailed(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) | CliError::ChecksFailed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Solver(m) => write!(f, "solver anomaly: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::ChecksFailed(names) => write!(f, "failed checks: {}", names.join(", ")),
        }
    }
}

fn solver_error(e: CoreError) -> CliError {
    match e {
        CoreError::InvalidParameter { .. }
        | CoreError::InvalidScenario(_)
        | CoreError::UserOutsideRegion { .. }
        | CoreError::IndexOutOfRange { .. }
        | CoreError::UnsupportedAssumption(_) => CliError::Invalid(e.to_string()),
        CoreError::Domain { .. }
        | CoreError::BoundaryRegime { .. }
        | CoreError::NoConvergence { .. }
        | CoreError::Anomaly(_) => CliError::Solver(e.to_string()),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CliError::Invalid("--workers must be at least 1".into()));
        }
        // Fails only if a pool already exists, e.g. in a test harness.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Solve(a) => cmd_solve(cli, a),
        Command::Sweep(a) => cmd_sweep(cli, a),
        Command::Ccdf(a) => cmd_ccdf(cli, a),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::ClosedForm(a) => cmd_closed_form(cli, a),
    }
}

fn read_scenario(path: &Path) -> Result<ScenarioFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    ScenarioFile::from_json(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn load(file: &ScenarioFile, path: &Path) -> Result<Loaded, CliError> {
    file.load()
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

/// Applies `--tolerance key=value` overrides on top of the file's values.
pub fn apply_overrides(tol: &mut SolverTolerances, overrides: &[String]) -> Result<(), CliError> {
    for item in overrides {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("--tolerance {item}: expected KEY=VALUE")))?;
        let bad = || CliError::Invalid(format!("--tolerance {item}: bad value"));
        match key.trim() {
            "eps_t" => tol.eps_t = value.trim().parse().map_err(|_| bad())?,
            "eps_y" => tol.eps_y = value.trim().parse().map_err(|_| bad())?,
            "eps_u" => tol.eps_u = value.trim().parse().map_err(|_| bad())?,
            "max_iter" => tol.max_iter = value.trim().parse().map_err(|_| bad())?,
            other => {
                return Err(CliError::Invalid(format!(
                    "--tolerance: unknown key {other:?} (eps_t, eps_y, eps_u, max_iter)"
                )))
            }
        }
    }
    tol.validate().map_err(|e| CliError::Invalid(e.to_string()))
}

fn tolerances(cli: &Cli, loaded: &Loaded) -> Result<SolverTolerances, CliError> {
    let mut tol = loaded.tolerances;
    apply_overrides(&mut tol, &cli.tolerance)?;
    Ok(tol)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require_outage(loaded: &Loaded) -> Result<&OutageSpec, CliError> {
    loaded.outage.as_ref().ok_or_else(|| {
        CliError::Invalid("the outage metric needs outage.epsilon or outage.epsilons".into())
    })
}

/// Pinching and fixed-antenna solutions for one metric.
fn solve_pair(
    metric: Metric,
    loaded: &Loaded,
    tol: &SolverTolerances,
) -> Result<(Solution, Solution), CliError> {
    let s = &loaded.scenario;
    match metric {
        Metric::AvgSnr => Ok((
            solve_maxmin(s, tol).map_err(solver_error)?,
            fixed_antenna_baseline(s),
        )),
        Metric::Outage => {
            let spec = require_outage(loaded)?;
            Ok((
                solve_outage(s, spec, tol).map_err(solver_error)?,
                fixed_antenna_outage_baseline(s, spec, tol).map_err(solver_error)?,
            ))
        }
    }
}

fn cmd_solve(cli: &Cli, args: &SolveArgs) -> Result<(), CliError> {
    let file = read_scenario(&args.scenario)?;
    let loaded = load(&file, &args.scenario)?;
    let tol = tolerances(cli, &loaded)?;
    let (pin, fixed) = solve_pair(args.metric, &loaded, &tol)?;
    let report = SolveReport {
        schema: 1,
        scenario: file.label().to_string(),
        metric: args.metric,
        method: "bisection".into(),
        users: loaded.scenario.len(),
        epsilons: match args.metric {
            Metric::Outage => loaded.outage.as_ref().map(|o| o.epsilons().to_vec()),
            Metric::AvgSnr => None,
        },
        tolerances: ToleranceDoc::from(&tol),
        pinching: SolutionDoc::from(&pin),
        fixed: Some(SolutionDoc::from(&fixed)),
        gap: Some(relative_gap(pin.t_star, fixed.t_star)),
    };
    emit(args.out.as_deref(), &report.to_json())
}

fn cmd_closed_form(cli: &Cli, args: &ClosedFormArgs) -> Result<(), CliError> {
    let file = read_scenario(&args.scenario)?;
    let loaded = load(&file, &args.scenario)?;
    let tol = tolerances(cli, &loaded)?;
    let pin = two_user_closed_form(&loaded.scenario).map_err(solver_error)?;
    let fixed = fixed_antenna_baseline(&loaded.scenario);
    let report = SolveReport {
        schema: 1,
        scenario: file.label().to_string(),
        metric: Metric::AvgSnr,
        method: "closed-form".into(),
        users: 2,
        epsilons: None,
        tolerances: ToleranceDoc::from(&tol),
        pinching: SolutionDoc::from(&pin),
        fixed: Some(SolutionDoc::from(&fixed)),
        gap: Some(relative_gap(pin.t_star, fixed.t_star)),
    };
    emit(args.out.as_deref(), &report.to_json())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Dx,
    Beta,
    M,
    Epsilon,
}

impl Axis {
    fn name(&self) -> &'static str {
        match self {
            Axis::Dx => "dx",
            Axis::Beta => "beta",
            Axis::M => "m",
            Axis::Epsilon => "epsilon",
        }
    }
}

/// Parses `v1,v2,...` or `lo:hi:n[:log|:lin]`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("{s:?} is not a number"))
    };
    let values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("{spec:?}: expected lo:hi:n[:log|:lin]"));
        }
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("{:?} is not a count", parts[2]))?;
        if n == 0 {
            return Err(format!("{spec:?}: need at least one point"));
        }
        let log = match parts.get(3).map(|s| s.trim()) {
            None | Some("lin") => false,
            Some("log") => true,
            Some(other) => return Err(format!("{other:?}: expected log or lin")),
        };
        if n == 1 {
            vec![lo]
        } else if log {
            if !(lo > 0.0 && hi > 0.0) {
                return Err(format!("{spec:?}: log grids need positive ends"));
            }
            log_grid(lo, hi, n)
        } else {
            let mut v: Vec<f64> = (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect();
            v[n - 1] = hi;
            v
        }
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(format!("{spec:?}: values must be finite"));
    }
    Ok(values)
}

pub fn parse_axis(item: &str) -> Result<(Axis, Vec<f64>), String> {
    let (name, grid) = item
        .split_once('=')
        .ok_or_else(|| format!("--axis {item}: expected NAME=GRID"))?;
    let axis = match name.trim() {
        "dx" => Axis::Dx,
        "beta" => Axis::Beta,
        "m" => Axis::M,
        "epsilon" => Axis::Epsilon,
        other => return Err(format!("unknown axis {other:?} (dx, beta, m, epsilon)")),
    };
    let values = parse_grid(grid).map_err(|e| format!("--axis {item}: {e}"))?;
    if axis == Axis::M && values.iter().any(|&v| v < 1.0 || v.fract() != 0.0) {
        return Err(format!("--axis {item}: user counts must be positive integers"));
    }
    Ok((axis, values))
}

struct DropResult {
    t_pin: f64,
    x_pin: f64,
    t_fix: f64,
    iterations: usize,
    seconds: f64,
}

fn configure(
    file: &ScenarioFile,
    point: &[(Axis, f64)],
    random: bool,
    seed: u64,
    drop: usize,
) -> ScenarioFile {
    let mut f = file.clone();
    let mut count = file.users.len();
    for &(axis, v) in point {
        match axis {
            Axis::Dx => f.region.dx = v,
            Axis::Beta => {
                f.defaults.beta = v;
                f.users.iter_mut().for_each(|u| u.beta = None);
            }
            Axis::M => count = v as usize,
            Axis::Epsilon => {
                f.outage = Some(OutageEntry {
                    epsilon: Some(v),
                    epsilons: None,
                })
            }
        }
    }
    if random {
        f = f.with_random_users(count, seed, drop as u64);
    }
    f
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs) -> Result<(), CliError> {
    let file = read_scenario(&args.scenario)?;
    // Validate the unswept file first so its diagnostics come out as-is.
    let base = load(&file, &args.scenario)?;
    let tol = tolerances(cli, &base)?;
    if args.axes.len() > 2 {
        return Err(CliError::Invalid(format!(
            "at most two sweep axes, got {}",
            args.axes.len()
        )));
    }
    let axes = args
        .axes
        .iter()
        .map(|a| parse_axis(a))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Invalid)?;
    if axes.len() == 2 && axes[0].0 == axes[1].0 {
        return Err(CliError::Invalid(format!(
            "axis {} given twice",
            axes[0].0.name()
        )));
    }
    if args.metric == Metric::Outage
        && file.outage.is_none()
        && !axes.iter().any(|(a, _)| *a == Axis::Epsilon)
    {
        return Err(CliError::Invalid(
            "the outage metric needs outage.epsilon in the scenario or an epsilon axis".into(),
        ));
    }
    let random = axes.iter().any(|(a, _)| matches!(a, Axis::Dx | Axis::M));
    let drops = if random { args.drops } else { 1 };
    if drops == 0 {
        return Err(CliError::Invalid("--drops must be at least 1".into()));
    }

    let mut points: Vec<Vec<(Axis, f64)>> = Vec::new();
    for &v1 in &axes[0].1 {
        match axes.get(1) {
            Some((a2, vals)) => {
                points.extend(vals.iter().map(|&v2| vec![(axes[0].0, v1), (*a2, v2)]))
            }
            None => points.push(vec![(axes[0].0, v1)]),
        }
    }
    let scenarios = points
        .iter()
        .flat_map(|p| (0..drops).map(move |d| (p, d)))
        .map(|(p, d)| {
            let f = configure(&file, p, random, cli.seed, d);
            load(&f, &args.scenario)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let results = scenarios
        .par_iter()
        .map(|loaded| {
            let start = Instant::now();
            let (pin, fixed) = solve_pair(args.metric, loaded, &tol)?;
            Ok(DropResult {
                t_pin: pin.t_star,
                x_pin: pin.x_star,
                t_fix: fixed.t_star,
                iterations: pin.outer_iterations,
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let rows: Vec<ResultRecord> = points
        .iter()
        .zip(results.chunks(drops))
        .map(|(p, chunk)| {
            let n = chunk.len() as f64;
            let mean = |g: fn(&DropResult) -> f64| chunk.iter().map(g).sum::<f64>() / n;
            let t_star = mean(|r| r.t_pin);
            let baseline = mean(|r| r.t_fix);
            ResultRecord {
                scenario_id: file.label().to_string(),
                metric: args.metric,
                axis1: p[0].0.name().to_string(),
                value1: p[0].1,
                axis2: p.get(1).map(|a| a.0.name().to_string()),
                value2: p.get(1).map(|a| a.1),
                drops,
                t_star,
                x_star: mean(|r| r.x_pin),
                baseline_t_star: baseline,
                gap: relative_gap(t_star, baseline),
                iterations: mean(|r| r.iterations as f64),
                wall_time_s: chunk.iter().map(|r| r.seconds).sum(),
            }
        })
        .collect();
    let text = write_csv(&rows, &RESULT_COLUMNS).map_err(|e| CliError::Io(e.to_string()))?;
    emit(args.out.as_deref(), &text)
}

fn cmd_ccdf(cli: &Cli, args: &CcdfArgs) -> Result<(), CliError> {
    let file = read_scenario(&args.scenario)?;
    let loaded = load(&file, &args.scenario)?;
    let s = &loaded.scenario;
    if args.user >= s.len() {
        return Err(CliError::Invalid(format!(
            "--user {} but the scenario has {} users",
            args.user,
            s.len()
        )));
    }
    if !(0.0..=s.dx()).contains(&args.x_pin) {
        return Err(CliError::Invalid(format!(
            "--x-pin {} lies outside [0, {}]",
            args.x_pin,
            s.dx()
        )));
    }
    let ts = parse_grid(&args.t_grid).map_err(|e| CliError::Invalid(format!("--t-grid: {e}")))?;
    if ts.iter().any(|&t| t < 0.0) {
        return Err(CliError::Invalid("--t-grid: thresholds must be non-negative".into()));
    }
    let cfg = McConfig::new(args.samples, cli.seed);
    cfg.validate().map_err(CliError::Invalid)?;
    let params = &s.channels()[args.user];
    let r_sq = s.distance_sq(args.user, args.x_pin);
    let mc = estimate_ccdf_many(params, r_sq, args.x_pin, &ts, &cfg);
    let rows = ts
        .iter()
        .zip(mc)
        .map(|(&t, est)| {
            Ok(CcdfRow {
                t,
                analytic: ccdf_inst_snr(params, r_sq, t).map_err(solver_error)?,
                mc: est.mean,
                mc_std_error: est.std_error,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let text = write_csv(&rows, &CCDF_COLUMNS).map_err(|e| CliError::Io(e.to_string()))?;
    emit(args.out.as_deref(), &text)
}

/// Standard errors allowed between an analytic value and its MC estimate.
pub const VERIFY_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub scenario: String,
    pub seed: u64,
    pub samples: u64,
    pub corrupt_eta: Option<f64>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "{passed}/{} checks passed (seed {}, {} samples)\n",
            self.checks.len(),
            self.seed,
            self.samples
        ));
        out
    }
}

fn check(name: impl Into<String>, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

/// Runs the oracle comparisons for one scenario.
pub fn verify_scenario(
    label: &str,
    loaded: &Loaded,
    tol: &SolverTolerances,
    samples: u64,
    seed: u64,
    corrupt_eta: Option<f64>,
) -> Result<VerifyReport, CliError> {
    let s = &loaded.scenario;
    let mut checks = Vec::new();
    let mut stream = 0u64;
    let mut next_cfg = || {
        stream += 1;
        McConfig::new(samples, seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
    };
    let maxmin = solve_maxmin(s, tol).map_err(solver_error)?;
    let x = maxmin.x_star;

    for m in 0..s.len() {
        let truth = s.channels()[m];
        let mut model = truth;
        if let Some(k) = corrupt_eta {
            model.eta *= k;
        }
        let r_sq = s.distance_sq(m, x);
        let analytic = avg_snr(&model, r_sq);
        let est = estimate_avg_snr(&truth, r_sq, x, &next_cfg());
        let z = est.z_score(analytic);
        checks.push(check(
            format!("avg_snr[{m}]"),
            z <= VERIFY_SIGMAS,
            format!(
                "analytic={analytic:.6e} mc={:.6e} se={:.3e} z={z:.2}",
                est.mean, est.std_error
            ),
        ));

        let nlos = truth.rho * truth.mu_sq / r_sq;
        let los = truth.rho * truth.eta / r_sq;
        let ts = [0.5 * nlos, 3.0 * nlos, 0.3 * los, 0.8 * los, 1.05 * los];
        let ests = estimate_ccdf_many(&truth, r_sq, x, &ts, &next_cfg());
        let mut worst = 0.0f64;
        for (&t, e) in ts.iter().zip(&ests) {
            let a = ccdf_inst_snr(&model, r_sq, t).map_err(solver_error)?;
            worst = worst.max(e.probability_z(a));
        }
        checks.push(check(
            format!("ccdf[{m}]"),
            worst <= VERIFY_SIGMAS,
            format!("{} thresholds, max z={worst:.2}", ts.len()),
        ));
    }

    let grid = grid_search_maxmin(s, 100_001);
    let rel = (maxmin.t_star - grid.t_star).abs() / grid.t_star;
    checks.push(check(
        "maxmin_vs_grid",
        rel <= 2.0 * tol.eps_t,
        format!(
            "bisection={:.6e} grid={:.6e} rel={rel:.2e} limit={:.2e}",
            maxmin.t_star,
            grid.t_star,
            2.0 * tol.eps_t
        ),
    ));

    if s.len() >= 2 {
        let pair = Scenario::with_shared_channel(
            s.dx(),
            s.dy(),
            s.dv(),
            s.users()[..2].to_vec(),
            s.channels()[0],
        )
        .map_err(solver_error)?;
        let bis = solve_maxmin(&pair, tol).map_err(solver_error)?;
        checks.push(match two_user_closed_form(&pair) {
            Ok(cf) => {
                let rel = (cf.t_star - bis.t_star).abs() / cf.t_star;
                let dx = (cf.x_star - bis.x_star).abs();
                let width = bis.feasible.width();
                check(
                    "closed_form_vs_bisection",
                    rel <= 10.0 * tol.eps_t && dx <= width,
                    format!("rel={rel:.2e} |dx|={dx:.3e} width={width:.3e}"),
                )
            }
            Err(CoreError::BoundaryRegime { x }) => check(
                "closed_form_vs_bisection",
                true,
                format!("closed form outside region (x={x:.4}), bisection only"),
            ),
            Err(e) => return Err(solver_error(e)),
        });
    }

    if let Some(spec) = &loaded.outage {
        let sol = solve_outage(s, spec, tol).map_err(solver_error)?;
        let (lo, hi) = outage_threshold_bracket(s, spec);
        let t_grid = log_grid(lo, hi, 1000);
        let ratio = t_grid[1] / t_grid[0];
        let points = 2001;
        let grid = grid_search_outage(s, spec, points, &t_grid);
        let step = s.dx() / (points - 1) as f64;
        let slack = outage_grid_slack(s, spec, sol.x_star, step, ratio, tol.eps_t);
        let rel = (sol.t_star - grid.t_star).abs() / grid.t_star;
        checks.push(check(
            "outage_vs_grid",
            rel <= slack,
            format!(
                "bisection={:.6e} grid={:.6e} rel={rel:.2e} limit={slack:.2e}",
                sol.t_star, grid.t_star
            ),
        ));
        for m in 0..s.len() {
            let r_sq = s.distance_sq(m, sol.x_star);
            let est = estimate_ccdf(&s.channels()[m], r_sq, sol.x_star, sol.t_star, &next_cfg());
            let outage = 1.0 - est.mean;
            let eps = spec.epsilons()[m];
            checks.push(check(
                format!("outage_mc[{m}]"),
                outage <= eps + VERIFY_SIGMAS * est.std_error,
                format!("outage={outage:.5} epsilon={eps} se={:.2e}", est.std_error),
            ));
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        schema: 1,
        scenario: label.to_string(),
        seed,
        samples,
        corrupt_eta,
        checks,
        passed,
    })
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<(), CliError> {
    let file = read_scenario(&args.scenario)?;
    let loaded = load(&file, &args.scenario)?;
    let tol = tolerances(cli, &loaded)?;
    McConfig::new(args.samples, cli.seed)
        .validate()
        .map_err(CliError::Invalid)?;
    if let Some(k) = args.corrupt_eta {
        if !(k > 0.0 && k.is_finite()) {
            return Err(CliError::Invalid("--corrupt-eta must be positive".into()));
        }
    }
    let report = verify_scenario(
        file.label(),
        &loaded,
        &tol,
        args.samples,
        cli.seed,
        args.corrupt_eta,
    )?;
    print!("{}", report.to_text());
    if let Some(path) = &args.report {
        let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
        json.push('\n');
        emit(Some(path), &json)?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(
            report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.clone())
                .collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_parse() {
        assert_eq!(parse_grid("1,2.5,3").unwrap(), vec![1.0, 2.5, 3.0]);
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = parse_grid("1:100:3:log").unwrap();
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert!(parse_grid("0:1:3:log").is_err());
        assert!(parse_grid("a,b").is_err());
        assert!(parse_grid("1:2").is_err());
    }

    #[test]
    fn axes_parse() {
        assert_eq!(parse_axis("m=2,4").unwrap(), (Axis::M, vec![2.0, 4.0]));
        assert!(parse_axis("m=2.5").is_err());
        assert!(parse_axis("dz=1").is_err());
        assert!(parse_axis("beta").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let mut t = SolverTolerances::default();
        apply_overrides(&mut t, &["eps_t=1e-4".into(), "max_iter=50".into()]).unwrap();
        assert_eq!((t.eps_t, t.max_iter), (1e-4, 50));
        assert!(apply_overrides(&mut t, &["eps_q=1".into()]).is_err());
        assert!(apply_overrides(&mut t, &["eps_t=-1".into()]).is_err());
        assert!(apply_overrides(&mut t, &["eps_t".into()]).is_err());
    }
}
