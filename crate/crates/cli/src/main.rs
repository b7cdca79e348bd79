//! `ncphase`: single-point analysis, separability sweeps, time-dependent runs and the self-test.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use ncphase::hamiltonian::isotropic_commutative;
use ncphase::selftest::{self, SelfTestOptions};
use ncphase::separability::simon_ps;
use ncphase::td::td_ground_state;
use ncphase::{
    analyze, covariance, integrate_ep, sep1_residual, Analysis, Error, IsotropicTdParams, NcParams,
    ParameterTable, TimeFn,
};

use config::{ConfigError, Range, RunConfig};

const EXIT_SELFTEST: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_ANALYSIS: u8 = 3;
const EXIT_INTEGRATION: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "ncphase", version, about = "Entanglement of Gaussian ground states in noncommutative phase space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one oscillator and print a JSON report.
    Analyze(Common),
    /// Sweep one or two parameters and write a CSV phase diagram.
    Sweep(Common),
    /// Integrate the time-dependent isotropic oscillator and write a CSV trajectory.
    Td(Common),
    /// Run the built-in invariant checks.
    Selftest(Common),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Flat key=value configuration file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Sweep axis name; repeat for a second axis.
    #[arg(long = "param", value_name = "NAME")]
    params: Vec<String>,
    /// Sweep range START:STOP:COUNT, paired with --param in order.
    #[arg(long = "range", value_name = "START:STOP:COUNT", allow_hyphen_values = true)]
    ranges: Vec<String>,
    /// Time step for `td`.
    #[arg(long)]
    dt: Option<f64>,
    /// End time for `td`.
    #[arg(long)]
    t_end: Option<f64>,
    /// Worker threads for sweeps.
    #[arg(long, env = "NCPHASE_THREADS")]
    threads: Option<usize>,
    /// Sampler seed for `selftest`.
    #[arg(long)]
    seed: Option<u64>,
    /// Corrupt the covariance closed form (self-test negative control).
    #[arg(long)]
    mutate: bool,
}

/// 17 significant digits; `-0` is written as `0`.
fn fmt17(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), ConfigError> {
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| ConfigError(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(body.as_bytes())
                .and_then(|_| so.flush())
                .map_err(|e| ConfigError(format!("stdout: {e}")))
        }
    }
}

fn resolve(c: &Common) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &c.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    let ranges = c
        .ranges
        .iter()
        .map(|r| r.parse::<Range>())
        .collect::<Result<Vec<_>, _>>()?;
    cfg.set_axes(&c.params, &ranges)?;
    if let Some(v) = c.dt {
        cfg.dt = v;
    }
    if let Some(v) = c.t_end {
        cfg.t_end = v;
    }
    if c.threads.is_some() {
        cfg.threads = c.threads;
    }
    if c.seed.is_some() {
        cfg.seed = c.seed;
    }
    if c.out.is_some() {
        cfg.out = c.out.clone();
    }
    Ok(cfg)
}

#[derive(Serialize)]
struct LambdaReport {
    #[serde(rename = "Lambda11")]
    lambda11: f64,
    #[serde(rename = "Lambda22")]
    lambda22: f64,
    #[serde(rename = "Lambda12c")]
    lambda12c: f64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    lambda1: f64,
    lambda2: f64,
    #[serde(rename = "Lambda")]
    lambda: LambdaReport,
    #[serde(rename = "V")]
    v: [f64; 16],
    #[serde(rename = "Delta1")]
    delta1: f64,
    #[serde(rename = "Delta2")]
    delta2: f64,
    #[serde(rename = "Delta12")]
    delta12: f64,
    tau_v: f64,
    #[serde(rename = "Ps")]
    ps: f64,
    verdict: String,
    rsup_min: f64,
    sep1_residual: f64,
}

impl From<&Analysis> for AnalyzeReport {
    fn from(a: &Analysis) -> Self {
        let inv = a.report.invariants;
        Self {
            lambda1: a.spectrum.lambda1,
            lambda2: a.spectrum.lambda2,
            lambda: LambdaReport {
                lambda11: a.state.lambda11.re,
                lambda22: a.state.lambda22.re,
                lambda12c: a.state.lambda12c(),
            },
            v: a.covariance.entries(),
            delta1: inv.delta1,
            delta2: inv.delta2,
            delta12: inv.delta12,
            tau_v: inv.tau_v,
            ps: a.report.ps,
            verdict: a.report.verdict.to_string(),
            rsup_min: a.rsup_min,
            sep1_residual: a.sep1_residual,
        }
    }
}

#[derive(Serialize)]
struct ErrorReport {
    error: &'static str,
    message: String,
}

fn config_failure(e: ConfigError) -> ExitCode {
    eprintln!("config error: {e}");
    ExitCode::from(EXIT_CONFIG)
}

fn cmd_analyze(c: &Common) -> ExitCode {
    let cfg = match resolve(c) {
        Ok(cfg) => cfg,
        Err(e) => return config_failure(e),
    };
    let spec = match cfg.spec() {
        Ok(s) => s,
        Err(e) => return config_failure(e.into()),
    };
    let (body, code) = match analyze(&spec) {
        Ok(a) => (
            serde_json::to_string_pretty(&AnalyzeReport::from(&a)).expect("finite report serializes"),
            ExitCode::SUCCESS,
        ),
        Err(e) => {
            eprintln!("analysis error: {e}");
            let r = ErrorReport {
                error: e.kind(),
                message: e.to_string(),
            };
            (
                serde_json::to_string_pretty(&r).expect("error report serializes"),
                ExitCode::from(EXIT_ANALYSIS),
            )
        }
    };
    match emit(cfg.out.as_deref(), &(body + "\n")) {
        Ok(()) => code,
        Err(e) => config_failure(e),
    }
}

pub const SWEEP_HEADER: &str = "axis1,axis2,lambda1,lambda2,lambda12c,Ps,verdict,sep1_residual";

fn sweep_row(cfg: &RunConfig, point: &[f64]) -> String {
    let mut c = cfg.clone();
    for (ax, v) in cfg.axes.iter().zip(point) {
        c = c.with(&ax.name, *v);
    }
    let a1 = fmt17(point[0]);
    let a2 = point.get(1).map(|v| fmt17(*v)).unwrap_or_default();
    let spec = c.spec();
    let sep = spec
        .as_ref()
        .map(|s| fmt17(sep1_residual(s)))
        .unwrap_or_default();
    match spec.and_then(|s| analyze(&s)) {
        Ok(a) => format!(
            "{a1},{a2},{},{},{},{},{},{sep}",
            fmt17(a.spectrum.lambda1),
            fmt17(a.spectrum.lambda2),
            fmt17(a.state.lambda12c()),
            fmt17(a.report.ps),
            a.report.verdict
        ),
        Err(_) => format!("{a1},{a2},,,,,error,{sep}"),
    }
}

fn cmd_sweep(c: &Common) -> ExitCode {
    let cfg = match resolve(c).and_then(|cfg| cfg.validate_axes().map(|_| cfg)) {
        Ok(cfg) => cfg,
        Err(e) => return config_failure(e),
    };
    let first = cfg.axes[0].range.values();
    let second = cfg.axes.get(1).map(|a| a.range.values());
    let points: Vec<Vec<f64>> = match &second {
        Some(s) => first
            .iter()
            .flat_map(|a| s.iter().map(move |b| vec![*a, *b]))
            .collect(),
        None => first.iter().map(|a| vec![*a]).collect(),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        if n == 0 {
            return config_failure(ConfigError("threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return config_failure(ConfigError(format!("thread pool: {e}"))),
    };
    // par_iter().collect() keeps index order, so output does not depend on scheduling
    let rows: Vec<String> = pool.install(|| points.par_iter().map(|p| sweep_row(&cfg, p)).collect());
    let mut body = String::with_capacity(rows.len() * 160);
    body.push_str(SWEEP_HEADER);
    body.push('\n');
    for r in rows {
        body.push_str(&r);
        body.push('\n');
    }
    match emit(cfg.out.as_deref(), &body) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => config_failure(e),
    }
}

fn td_params(cfg: &RunConfig) -> Result<IsotropicTdParams, ConfigError> {
    if let Some(path) = &cfg.table {
        let table = ParameterTable::read(path)?;
        return Ok(IsotropicTdParams::from_table(&table, cfg.kappa, cfg.l, cfg.hbar)?);
    }
    let nc = NcParams::new(cfg.theta, cfg.eta, cfg.hbar)?;
    let reduced = isotropic_commutative(cfg.m1, cfg.m1 * cfg.omega1t * cfg.omega1t, &nc)?;
    let mu0 = cfg.mu0.unwrap_or(reduced.mu0);
    let alpha = cfg.alpha.unwrap_or(reduced.alpha);
    let nu = cfg.nu.unwrap_or(reduced.nu);
    if !(mu0 > 0.0 && alpha > 0.0) {
        return Err(ConfigError("mu0 and alpha must be positive".into()));
    }
    let (eps, freq) = (cfg.drive_eps, cfg.drive_freq);
    let alpha_t = if eps == 0.0 {
        TimeFn::constant(alpha)
    } else {
        TimeFn::new(move |t: f64| alpha * (1.0 + eps * (freq * t).sin()))
    };
    Ok(IsotropicTdParams::new(
        TimeFn::constant(mu0),
        alpha_t,
        TimeFn::constant(nu),
        cfg.kappa,
        cfg.l,
        cfg.hbar,
    )?)
}

pub const TD_HEADER: &str = "t,sigma,sigmadot,a11,b11,c11,kappa_drift,Lambda11_re,Lambda11_im,Ps";

fn cmd_td(c: &Common) -> ExitCode {
    let cfg = match resolve(c) {
        Ok(cfg) => cfg,
        Err(e) => return config_failure(e),
    };
    let params = match td_params(&cfg) {
        Ok(p) => p,
        Err(e) => return config_failure(e),
    };
    let sigma0 = cfg.sigma0.unwrap_or_else(|| params.equilibrium_sigma(0.0));
    let traj = match integrate_ep(&params, sigma0, cfg.sigmadot0, cfg.t_end, cfg.dt) {
        Ok(t) => t,
        Err(e @ (Error::SigmaCollapse { .. } | Error::StepRejection { .. })) => {
            let t = match e {
                Error::SigmaCollapse { t } | Error::StepRejection { t, .. } => t,
                _ => unreachable!(),
            };
            eprintln!("integration failure ({}): {e}; last good time t = {}", e.kind(), fmt17(t));
            return ExitCode::from(EXIT_INTEGRATION);
        }
        Err(e) => return config_failure(e.into()),
    };
    let mut body = String::with_capacity(traj.len() * 200);
    body.push_str(TD_HEADER);
    body.push('\n');
    for (k, n) in traj.nodes.iter().enumerate() {
        let state = match td_ground_state(n, params.kappa, params.hbar) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("integration failure ({}): {e}", e.kind());
                return ExitCode::from(EXIT_INTEGRATION);
            }
        };
        let ps = covariance(&state).map(|v| simon_ps(&v)).unwrap_or(f64::NAN);
        let cols = [
            n.t,
            n.sigma,
            n.sigmadot,
            n.a11(),
            traj.b11_integrated[k],
            n.c11(),
            traj.kappa_drift(k),
            state.lambda11.re,
            state.lambda11.im,
            ps,
        ];
        let line: Vec<String> = cols.iter().map(|v| fmt17(*v)).collect();
        body.push_str(&line.join(","));
        body.push('\n');
    }
    match emit(cfg.out.as_deref(), &body) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => config_failure(e),
    }
}

fn cmd_selftest(c: &Common) -> ExitCode {
    let cfg = match resolve(c) {
        Ok(cfg) => cfg,
        Err(e) => return config_failure(e),
    };
    let opts = SelfTestOptions {
        seed: cfg.seed.unwrap_or(SelfTestOptions::default().seed),
        mutate: c.mutate,
    };
    let outcomes = selftest::run(&opts);
    let table = selftest::render_table(&outcomes, &opts);
    if let Err(e) = emit(cfg.out.as_deref(), &table) {
        return config_failure(e);
    }
    if selftest::all_passed(&outcomes) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_SELFTEST)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze(c) => cmd_analyze(c),
        Command::Sweep(c) => cmd_sweep(c),
        Command::Td(c) => cmd_td(c),
        Command::Selftest(c) => cmd_selftest(c),
    }
}
