//! The `rggkit` binary: `constants`, `predict`, `experiment`, `search`.
//!
//! Every command is a pure function of (flags, config file, seed) to bytes on
//! disk; no environment variables are consulted. `--workers` only sizes the
//! rayon pool and never changes any output byte. Exit codes: 0 success,
//! 1 a verification check failed, 2 usage/config/file errors.
//!
//! Structured outputs are JSON with every float at 17 significant digits
//! (`{:.16e}`), matching the CSV and graph dump formats, so records
//! round-trip exactly. Each command also writes a small manifest recording
//! the invocation, config echo, seed, and produced files — enough to
//! regenerate every output bit-for-bit.

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::experiments::{
    correlation_check, cov_scaling_check, fixed_plane, lln_check, plane_search, run_experiment,
    variance_sandwich_check, CheckError, ExperimentConfig, ExperimentResult, PlaneMode,
    ProcessKind, RepSample, write_raw_csv,
};
use crate::geometry::{BodyKind, ConvexBody, Plane2, Vector};
use crate::pointprocess::{fmt_f64, read_graph, write_graph, GeometricGraph, RegimeSchedule};
use crate::stress::WeightKind;
use crate::theory::{kappa, predict_moments, Constants};

#[derive(Parser, Debug)]
#[command(
    name = "rggkit",
    version,
    about = "Random geometric graphs in convex bodies: projections, crossing numbers, stress, and the limit theory behind them"
)]
pub struct Cli {
    /// Worker threads for the rayon pool (default: machine parallelism).
    /// Outputs are invariant to this value.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Estimate the limit constants and integrals by Monte Carlo and write a
    /// constants record.
    Constants(ConstantsArgs),
    /// Predict the moments of crossing number and stress from a constants
    /// record.
    Predict(PredictArgs),
    /// Run a replicated experiment from a config file and verify the limit
    /// laws against it.
    Experiment(ExperimentArgs),
    /// Project a dumped graph onto random planes and report per-plane
    /// crossings and stress.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    /// Ambient dimension (at least 2).
    #[arg(long)]
    pub d: usize,
    /// Convex body: `ball` or `cube` (unit volume either way).
    #[arg(long, default_value = "ball", value_parser = parse_body)]
    pub body: BodyKind,
    /// Plane the section integrals are taken against: `axis` (first two
    /// coordinates) or `haar` (seeded draw). Irrelevant for the ball.
    #[arg(long, default_value = "axis", value_parser = parse_plane_source)]
    pub plane: PlaneSource,
    /// Stress weight: `inverse-square` or `unit`.
    #[arg(long, default_value = "inverse-square", value_parser = parse_weight)]
    pub weight: WeightKind,
    /// Monte Carlo samples per constant; scientific notation accepted (1e7).
    #[arg(long = "n-samples", default_value = "1e6", value_parser = parse_count)]
    pub n_samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Output record path (JSON).
    #[arg(long, default_value = "constants.json")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct PredictArgs {
    /// Intensity of the Poisson process; scientific notation accepted.
    #[arg(long)]
    pub t: f64,
    /// Connection threshold delta.
    #[arg(long)]
    pub delta: f64,
    /// Constants record written by `rggkit constants`. Without it the
    /// constants are estimated in-process from the flags below.
    #[arg(long)]
    pub constants: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value = "ball", value_parser = parse_body)]
    pub body: BodyKind,
    #[arg(long, default_value = "inverse-square", value_parser = parse_weight)]
    pub weight: WeightKind,
    #[arg(long = "n-samples", default_value = "2e5", value_parser = parse_count)]
    pub n_samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Optional JSON output path (stdout table is always printed).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// Flat `key = value` config file; `[section]` headers run several
    /// experiments (keys above the first header are shared defaults).
    #[arg(long)]
    pub config: PathBuf,
    /// Directory receiving raw CSV, summaries, checks, and the manifest.
    #[arg(long = "out-dir")]
    pub out_dir: PathBuf,
    /// Constants record to verify against; otherwise estimated in-process
    /// with `--n-samples` draws at the experiment seed.
    #[arg(long)]
    pub constants: Option<PathBuf>,
    #[arg(long = "n-samples", default_value = "2e5", value_parser = parse_count)]
    pub n_samples: u64,
    /// Relative tolerance for the final LLN deviation.
    #[arg(long = "lln-tol", default_value_t = 0.2)]
    pub lln_tol: f64,
    /// Slack factor on the variance sandwich band.
    #[arg(long, default_value_t = 0.25)]
    pub tau: f64,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Graph dump (`d n delta`, coordinates, `m`, edges).
    #[arg(long)]
    pub graph: PathBuf,
    /// Number of Haar planes to try (ignored for d = 2).
    #[arg(long, default_value_t = 50)]
    pub k: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value = "inverse-square", value_parser = parse_weight)]
    pub weight: WeightKind,
    /// Output directory (per-plane table, best drawing, report, manifest).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneSource {
    Axis,
    Haar,
}

fn parse_body(s: &str) -> Result<BodyKind, String> {
    match s {
        "ball" => Ok(BodyKind::UnitVolumeBall),
        "cube" => Ok(BodyKind::UnitCube),
        other => Err(format!("unknown body kind `{other}` (want ball|cube)")),
    }
}

fn parse_weight(s: &str) -> Result<WeightKind, String> {
    match s {
        "inverse-square" => Ok(WeightKind::InverseSquare),
        "unit" => Ok(WeightKind::Unit),
        other => Err(format!(
            "unknown weight `{other}` (want inverse-square|unit)"
        )),
    }
}

fn parse_plane_source(s: &str) -> Result<PlaneSource, String> {
    match s {
        "axis" => Ok(PlaneSource::Axis),
        "haar" => Ok(PlaneSource::Haar),
        other => Err(format!("unknown plane source `{other}` (want axis|haar)")),
    }
}

/// Positive integer count, scientific notation welcome (`1e7`, `2.5e6`).
fn parse_count(s: &str) -> Result<u64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !x.is_finite() || x < 1.0 || x > 2f64.powi(53) || x.fract() != 0.0 {
        return Err(format!("`{s}` is not a positive integer count"));
    }
    Ok(x as u64)
}

/// A usage/config/file failure: printed to stderr, exit code 2.
#[derive(Debug)]
struct Failure(String);

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn fail(msg: impl Into<String>) -> Failure {
    Failure(msg.into())
}

/// Parses argv and runs one command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let invocation: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(w) = cli.workers {
        // Ignore the error: a pool may already exist in-process (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
    let started = Instant::now();
    let outcome = match &cli.cmd {
        Cmd::Constants(a) => cmd_constants(a, &invocation, started),
        Cmd::Predict(a) => cmd_predict(a, &invocation, started),
        Cmd::Experiment(a) => cmd_experiment(a, &invocation, started),
        Cmd::Search(a) => cmd_search(a, &invocation, started),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Everything needed to regenerate the command's outputs bit-for-bit.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub invocation: Vec<String>,
    pub config_echo: Option<String>,
    pub seed: Option<u64>,
    pub version: String,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<String>,
}

impl RunManifest {
    fn new(command: &str, invocation: &[String], started: Instant) -> Self {
        RunManifest {
            command: command.to_string(),
            invocation: invocation.to_vec(),
            config_echo: None,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock_seconds: started.elapsed().as_secs_f64(),
            outputs: Vec::new(),
        }
    }
}

/// JSON with floats at 17 significant digits; non-finite floats become null.
pub fn to_json17<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut out = String::new();
    render_json(&v, 0, &mut out);
    out.push('\n');
    out
}

fn render_json(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value::*;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Null => out.push_str("null"),
        Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&fmt_f64(n.as_f64().expect("numeric")));
            }
        }
        String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                render_json(item, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                render_json(item, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
    }
}

fn write_file(path: &Path, bytes: &str, outputs: &mut Vec<String>) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| fail(format!("writing {}: {e}", path.display())))?;
    outputs.push(path.display().to_string());
    Ok(())
}

fn manifest_path_for(out: &Path) -> PathBuf {
    PathBuf::from(format!("{}.manifest.json", out.display()))
}

fn substream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(id);
    r
}

fn constants_plane(d: usize, source: PlaneSource, seed: u64) -> Plane2 {
    match source {
        PlaneSource::Axis => Plane2::coordinate(d),
        // Substream 8: the estimators themselves use substreams 1..=7.
        PlaneSource::Haar => Plane2::sample_haar(d, &mut substream(seed, 8)),
    }
}

fn cmd_constants(
    a: &ConstantsArgs,
    invocation: &[String],
    started: Instant,
) -> Result<i32, Failure> {
    if a.d < 2 {
        return Err(fail(format!("--d must be at least 2 (got {})", a.d)));
    }
    let body = ConvexBody::of_kind(a.body, a.d);
    let plane = constants_plane(a.d, a.plane, a.seed);
    let k = Constants::estimate(&body, &plane, a.weight, a.n_samples, a.seed);

    let kd = kappa(a.d);
    let cap_c = 2.0 * std::f64::consts::PI * kd * kd;
    let cap_cp = 2.0 * std::f64::consts::PI * kd * k.c_d;
    let c_ok = k.c_d <= cap_c + 4.0 * k.c_d_se;
    let cp_slack = 4.0 * (k.c_prime_d_se + 2.0 * std::f64::consts::PI * kd * k.c_d_se);
    let cp_ok = k.c_prime_d <= cap_cp + cp_slack;

    println!(
        "constants  d={} body={:?} weight={:?} N={} seed={}",
        k.d, k.body, k.weight, k.n_samples, k.seed
    );
    let row = |name: &str, v: f64, se: f64| println!("  {name:<8} = {:>13.8} +- {:.3e}", v, se);
    row("c_d", k.c_d, k.c_d_se);
    row("c'_d", k.c_prime_d, k.c_prime_d_se);
    row("I2", k.i2, k.i2_se);
    row("I3", k.i3, k.i3_se);
    row("S1", k.s1, k.s1_se);
    row("S2", k.s2, k.s2_se);
    row("SW", k.sw, k.sw_se);
    println!(
        "check c_d <= 2*pi*kappa_d^2: {} ({:.6} vs {:.6})",
        if c_ok { "PASS" } else { "FAIL" },
        k.c_d,
        cap_c
    );
    println!(
        "check c'_d <= 2*pi*kappa_d*c_d: {} ({:.6} vs {:.6})",
        if cp_ok { "PASS" } else { "FAIL" },
        k.c_prime_d,
        cap_cp
    );

    let mut manifest = RunManifest::new("constants", invocation, started);
    manifest.seed = Some(a.seed);
    write_file(&a.out, &to_json17(&k), &mut manifest.outputs)?;
    manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
    let mp = manifest_path_for(&a.out);
    fs::write(&mp, to_json17(&manifest)).map_err(|e| fail(format!("writing manifest: {e}")))?;
    println!("wrote {} and {}", a.out.display(), mp.display());
    Ok(if c_ok && cp_ok { 0 } else { 1 })
}

fn load_constants(path: &Path) -> Result<Constants, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| fail(format!("parsing constants record {}: {e}", path.display())))
}

fn cmd_predict(a: &PredictArgs, invocation: &[String], started: Instant) -> Result<i32, Failure> {
    if !(a.t > 0.0) || !(a.delta > 0.0) {
        return Err(fail("--t and --delta must be positive"));
    }
    let k = match &a.constants {
        Some(path) => load_constants(path)?,
        None => {
            let d = a
                .d
                .ok_or_else(|| fail("give either --constants FILE or --d (plus --seed)"))?;
            if d < 2 {
                return Err(fail(format!("--d must be at least 2 (got {d})")));
            }
            let body = ConvexBody::of_kind(a.body, d);
            let plane = constants_plane(d, PlaneSource::Axis, a.seed);
            Constants::estimate(&body, &plane, a.weight, a.n_samples, a.seed)
        }
    };
    let p = predict_moments(a.t, a.delta, &k);
    println!(
        "predict  d={} body={:?} t={} delta={}",
        k.d,
        k.body,
        fmt_f64(a.t),
        fmt_f64(a.delta)
    );
    let row = |name: &str, v: f64| println!("  {name:<12} {}", fmt_f64(v));
    row("E[m]", p.e_m);
    row("E[cr]", p.e_cr);
    row("Var[cr] lb", p.var_cr_lb);
    row("Var[cr] ub", p.var_cr_ub);
    row("E[stress]", p.e_stress);
    row("Var[stress]", p.var_stress);
    row("Cov lb", p.cov_lb);
    row("Corr lb", p.corr_lb);
    if let Some(out) = &a.out {
        let record = json!({
            "t": a.t,
            "delta": a.delta,
            "constants": serde_json::to_value(&k).expect("constants"),
            "predictions": serde_json::to_value(&p).expect("predictions"),
        });
        let mut manifest = RunManifest::new("predict", invocation, started);
        manifest.seed = Some(k.seed);
        write_file(out, &to_json17(&record), &mut manifest.outputs)?;
        manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
        fs::write(manifest_path_for(out), to_json17(&manifest))
            .map_err(|e| fail(format!("writing manifest: {e}")))?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// Experiment config files
// ---------------------------------------------------------------------------

const CONFIG_KEYS: [&str; 12] = [
    "body",
    "d",
    "schedule",
    "c",
    "beta",
    "delta",
    "t_grid",
    "reps",
    "plane_mode",
    "weight",
    "seed",
    "process",
];

type RawSection = BTreeMap<String, (usize, String)>;

/// Parses the flat `key = value` format (with optional `[section]` headers)
/// into named experiment configs. Error messages always name the offending
/// key or section.
pub fn parse_experiment_configs(text: &str) -> Result<Vec<(String, ExperimentConfig)>, String> {
    let mut defaults: RawSection = BTreeMap::new();
    // Each section holds only its own keys; defaults are merged in at build
    // time, so a section may override an inherited key but not repeat its own.
    let mut sections: Vec<(String, RawSection)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            if name.is_empty() {
                return Err(format!("line {lno}: empty section name"));
            }
            sections.push((name.to_string(), BTreeMap::new()));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {lno}: expected `key = value`, got `{line}`"))?;
        let (key, value) = (key.trim(), value.trim());
        if !CONFIG_KEYS.contains(&key) {
            return Err(format!("line {lno}: unknown key `{key}`"));
        }
        if value.is_empty() {
            return Err(format!("line {lno}: key `{key}` has no value"));
        }
        let target = sections.last_mut().map_or(&mut defaults, |(_, s)| s);
        if target.insert(key.to_string(), (lno, value.to_string())).is_some() {
            return Err(format!("line {lno}: duplicate key `{key}`"));
        }
    }
    if sections.is_empty() {
        sections.push(("experiment".to_string(), BTreeMap::new()));
    }
    sections
        .into_iter()
        .map(|(name, own)| {
            let mut merged = defaults.clone();
            merged.extend(own);
            build_config(&name, merged).map(|cfg| (name, cfg))
        })
        .collect()
}

fn take_key(raw: &mut RawSection, section: &str, key: &str) -> Result<String, String> {
    raw.remove(key)
        .map(|(_, v)| v)
        .ok_or_else(|| format!("section `{section}`: missing required key `{key}`"))
}

fn take_optional(raw: &mut RawSection, key: &str, default: &str) -> String {
    raw.remove(key).map_or_else(|| default.to_string(), |(_, v)| v)
}

fn build_config(section: &str, mut raw: RawSection) -> Result<ExperimentConfig, String> {
    let bad = |key: &str, msg: String| format!("section `{section}`: key `{key}`: {msg}");

    let body_kind = match take_key(&mut raw, section, "body")?.as_str() {
        "ball" => BodyKind::UnitVolumeBall,
        "cube" => BodyKind::UnitCube,
        other => return Err(bad("body", format!("unknown body kind `{other}` (want ball|cube)"))),
    };
    let d: usize = take_key(&mut raw, section, "d")?
        .parse()
        .map_err(|_| bad("d", "not an integer".into()))?;
    if d < 2 {
        return Err(bad("d", format!("must be at least 2 (got {d})")));
    }

    let sched_name = take_key(&mut raw, section, "schedule")?;
    let param = |raw: &mut RawSection, key: &str| -> Result<f64, String> {
        raw.remove(key)
            .ok_or_else(|| {
                format!("section `{section}`: schedule `{sched_name}` needs key `{key}`")
            })?
            .1
            .parse::<f64>()
            .map_err(|_| bad(key, "not a number".into()))
    };
    let schedule = match sched_name.as_str() {
        "thermodynamic" => RegimeSchedule::Thermodynamic {
            c: param(&mut raw, "c")?,
        },
        "dense" => RegimeSchedule::Dense {
            c: param(&mut raw, "c")?,
            beta: param(&mut raw, "beta")?,
        },
        "fixed" => RegimeSchedule::Fixed {
            delta: param(&mut raw, "delta")?,
        },
        other => {
            return Err(bad(
                "schedule",
                format!("unknown schedule `{other}` (want thermodynamic|dense|fixed)"),
            ))
        }
    };
    for leftover in ["c", "beta", "delta"] {
        if raw.contains_key(leftover) {
            return Err(bad(
                leftover,
                format!("not valid for schedule `{sched_name}`"),
            ));
        }
    }

    let grid_text = take_key(&mut raw, section, "t_grid")?;
    let t_grid: Vec<f64> = grid_text
        .split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| bad("t_grid", format!("bad entry `{s}`"))))
        .collect::<Result<_, _>>()?;
    let reps: u32 = take_key(&mut raw, section, "reps")?
        .parse()
        .map_err(|_| bad("reps", "not an integer".into()))?;
    let seed: u64 = take_key(&mut raw, section, "seed")?
        .parse()
        .map_err(|_| bad("seed", "not an integer".into()))?;

    let plane_mode = match take_optional(&mut raw, "plane_mode", "fixed").as_str() {
        "fixed" => PlaneMode::FixedSeeded,
        "random" => PlaneMode::RandomPerRep,
        other => return Err(bad("plane_mode", format!("unknown mode `{other}` (want fixed|random)"))),
    };
    let weight = match take_optional(&mut raw, "weight", "inverse-square").as_str() {
        "inverse-square" => WeightKind::InverseSquare,
        "unit" => WeightKind::Unit,
        other => return Err(bad("weight", format!("unknown weight `{other}` (want inverse-square|unit)"))),
    };
    let process = match take_optional(&mut raw, "process", "poisson").as_str() {
        "poisson" => ProcessKind::Poisson,
        "binomial" => ProcessKind::Binomial,
        other => return Err(bad("process", format!("unknown process `{other}` (want poisson|binomial)"))),
    };

    let cfg = ExperimentConfig {
        body: ConvexBody::of_kind(body_kind, d),
        schedule,
        t_grid,
        reps,
        plane_mode,
        weight,
        seed,
        process,
    };
    cfg.validate()
        .map_err(|e| format!("section `{section}`: {e}"))?;
    Ok(cfg)
}

// ---------------------------------------------------------------------------
// Experiment command
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
struct CheckOutcome {
    name: String,
    status: String,
    note: String,
    detail: serde_json::Value,
}

fn outcome(name: &str, pass: bool, note: String, detail: serde_json::Value) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        status: if pass { "PASS" } else { "FAIL" }.to_string(),
        note,
        detail,
    }
}

fn skipped(name: &str, why: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        status: "SKIP".to_string(),
        note: why,
        detail: serde_json::Value::Null,
    }
}

fn largest_t_slice<'a>(result: &'a ExperimentResult, cfg: &ExperimentConfig) -> &'a [RepSample] {
    let reps = cfg.reps as usize;
    let start = (cfg.t_grid.len() - 1) * reps;
    &result.samples[start..]
}

fn run_checks(
    result: &ExperimentResult,
    cfg: &ExperimentConfig,
    k: &Constants,
    a: &ExperimentArgs,
) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    let lln = lln_check(result, k, a.lln_tol);
    out.push(outcome(
        "lln",
        lln.pass,
        format!(
            "final relative deviation {:.4} (tol {}), inversions soft={} hard={}",
            lln.final_rel_dev, a.lln_tol, lln.soft_inversions, lln.hard_inversions
        ),
        serde_json::to_value(&lln).expect("lln report"),
    ));

    match variance_sandwich_check(result, k, a.tau) {
        Ok(s) => out.push(outcome(
            "variance_sandwich",
            s.pass,
            format!(
                "normalized Var(cr) CI [{:.4e}, {:.4e}] vs band [{:.4e}, {:.4e}]",
                s.normalized_ci.lo,
                s.normalized_ci.hi,
                s.lb * (1.0 - s.tau),
                s.ub * (1.0 + s.tau)
            ),
            serde_json::to_value(&s).expect("sandwich report"),
        )),
        Err(e @ CheckError::DimensionTooLow(_)) => {
            out.push(skipped("variance_sandwich", e.to_string()))
        }
        Err(e) => out.push(skipped("variance_sandwich", e.to_string())),
    }

    let slice = largest_t_slice(result, cfg);
    let (t_max, delta_max) = (slice[0].t, slice[0].delta);
    let corr_lb = predict_moments(t_max, delta_max, k).corr_lb;
    let corr = correlation_check(slice, corr_lb);
    if corr.inconclusive {
        out.push(skipped(
            "correlation",
            "inconclusive: needs 4+ replications and nonconstant cr and stress".to_string(),
        ));
    } else {
        let tier = if corr.meets_half_bound {
            "meets half the predicted bound"
        } else {
            "below half the predicted bound"
        };
        out.push(outcome(
            "correlation",
            corr.pass_positive,
            format!(
                "r = {:.4}, one-sided p = {:.3e}, bound {:.4} ({tier})",
                corr.r, corr.p_one_sided, corr.corr_lb
            ),
            serde_json::to_value(&corr).expect("correlation report"),
        ));
    }

    match cov_scaling_check(result, -0.6, -0.4) {
        Ok(s) => out.push(outcome(
            "cov_scaling",
            s.pass,
            format!(
                "CoV slopes: cr {:.4}, stress {:.4} (band [{}, {}])",
                s.slope_cr, s.slope_stress, s.band_lo, s.band_hi
            ),
            serde_json::to_value(&s).expect("scaling report"),
        )),
        Err(e) => out.push(skipped("cov_scaling", e.to_string())),
    }

    out
}

fn cmd_experiment(
    a: &ExperimentArgs,
    invocation: &[String],
    started: Instant,
) -> Result<i32, Failure> {
    let text = fs::read_to_string(&a.config)
        .map_err(|e| fail(format!("reading {}: {e}", a.config.display())))?;
    let sections = parse_experiment_configs(&text).map_err(Failure)?;
    fs::create_dir_all(&a.out_dir)
        .map_err(|e| fail(format!("creating {}: {e}", a.out_dir.display())))?;
    let loaded = a.constants.as_deref().map(load_constants).transpose()?;

    let mut manifest = RunManifest::new("experiment", invocation, started);
    manifest.config_echo = Some(text.clone());
    let mut any_fail = false;

    for (name, cfg) in &sections {
        let result = run_experiment(cfg).map_err(|e| fail(format!("section `{name}`: {e}")))?;

        let k = match &loaded {
            Some(k) => {
                if k.d != cfg.d() || k.body != cfg.body.kind() || k.weight != cfg.weight {
                    return Err(fail(format!(
                        "constants record (d={}, body={:?}, weight={:?}) does not match section `{name}` (d={}, body={:?}, weight={:?})",
                        k.d, k.body, k.weight, cfg.d(), cfg.body.kind(), cfg.weight
                    )));
                }
                k.clone()
            }
            None => {
                let plane = match cfg.plane_mode {
                    PlaneMode::FixedSeeded => fixed_plane(cfg),
                    PlaneMode::RandomPerRep => {
                        Plane2::sample_haar(cfg.d(), &mut substream(cfg.seed, 8))
                    }
                };
                Constants::estimate(&cfg.body, &plane, cfg.weight, a.n_samples, cfg.seed)
            }
        };

        let mut csv = Vec::new();
        write_raw_csv(&result.samples, &mut csv).expect("in-memory write");
        let csv = String::from_utf8(csv).expect("ascii csv");
        write_file(&a.out_dir.join(format!("{name}.raw.csv")), &csv, &mut manifest.outputs)?;
        write_file(
            &a.out_dir.join(format!("{name}.summary.json")),
            &to_json17(&result.summaries),
            &mut manifest.outputs,
        )?;

        println!("[{name}] d={} reps={} t_grid={:?}", cfg.d(), cfg.reps, cfg.t_grid);
        for s in &result.summaries {
            println!(
                "[{name}] t={} delta={} mean n={} m={} cr={} stress={}",
                fmt_f64(s.t),
                fmt_f64(s.delta),
                fmt_f64(s.n.mean),
                fmt_f64(s.m.mean),
                fmt_f64(s.cr.mean),
                fmt_f64(s.stress.mean)
            );
        }

        let checks = run_checks(&result, cfg, &k, a);
        for c in &checks {
            println!("[{name}] check {}: {} ({})", c.name, c.status, c.note);
            any_fail |= c.status == "FAIL";
        }
        write_file(
            &a.out_dir.join(format!("{name}.checks.json")),
            &to_json17(&json!({ "experiment": name, "constants": serde_json::to_value(&k).expect("constants"), "checks": checks })),
            &mut manifest.outputs,
        )?;
    }

    manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
    fs::write(a.out_dir.join("manifest.json"), to_json17(&manifest))
        .map_err(|e| fail(format!("writing manifest: {e}")))?;
    println!("wrote outputs to {}", a.out_dir.display());
    Ok(if any_fail { 1 } else { 0 })
}

// ---------------------------------------------------------------------------
// Search command
// ---------------------------------------------------------------------------

fn cmd_search(a: &SearchArgs, invocation: &[String], started: Instant) -> Result<i32, Failure> {
    if a.k < 1 {
        return Err(fail("--k must be at least 1"));
    }
    let file = fs::File::open(&a.graph)
        .map_err(|e| fail(format!("opening {}: {e}", a.graph.display())))?;
    let g = read_graph(BufReader::new(file))
        .map_err(|e| fail(format!("{}: {e}", a.graph.display())))?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let report = plane_search(&g, a.k, a.weight, &mut rng);

    fs::create_dir_all(&a.out)
        .map_err(|e| fail(format!("creating {}: {e}", a.out.display())))?;
    let mut manifest = RunManifest::new("search", invocation, started);
    manifest.seed = Some(a.seed);

    let mut table = String::from("plane,cr,stress,degenerate\n");
    for (i, o) in report.outcomes.iter().enumerate() {
        table.push_str(&format!(
            "{i},{},{},{}\n",
            o.cr,
            fmt_f64(o.stress),
            u8::from(o.degenerate)
        ));
    }
    print!("{table}");
    write_file(&a.out.join("planes.csv"), &table, &mut manifest.outputs)?;

    let best = &report.outcomes[report.best_cr];
    let projected = GeometricGraph {
        dim: 2,
        delta: g.delta,
        points: g
            .points
            .iter()
            .map(|p| {
                let q = report.planes[report.best_cr].project(p);
                Vector::new(vec![q.x, q.y])
            })
            .collect(),
        edges: g.edges.clone(),
    };
    let mut drawing = Vec::new();
    write_graph(&projected, &mut drawing).expect("in-memory write");
    write_file(
        &a.out.join("best_drawing.txt"),
        &String::from_utf8(drawing).expect("ascii dump"),
        &mut manifest.outputs,
    )?;

    println!(
        "n={} m={} planes={} best cr={} (plane {}), best stress={} (plane {})",
        g.n(),
        g.m(),
        report.outcomes.len(),
        best.cr,
        report.best_cr,
        fmt_f64(report.outcomes[report.best_stress].stress),
        report.best_stress
    );
    println!("crossing lemma floor = {}", fmt_f64(report.lemma_floor));
    match report.ratio_vs_floor {
        Some(r) => println!("approximation ratio bound cr/floor = {}", fmt_f64(r)),
        None => println!("crossing lemma floor not applicable (m < 7n)"),
    }

    let record = json!({
        "n": g.n(),
        "m": g.m(),
        "k_planes": report.outcomes.len(),
        "best_cr_plane": report.best_cr,
        "best_cr": best.cr,
        "best_stress_plane": report.best_stress,
        "best_stress": report.outcomes[report.best_stress].stress,
        "lemma_floor": report.lemma_floor,
        "ratio_vs_floor": report.ratio_vs_floor,
        "pearson_across_planes": report.pearson_across_planes,
        "frac_below_half_mean": report.frac_below_half_mean,
    });
    write_file(&a.out.join("search.json"), &to_json17(&record), &mut manifest.outputs)?;
    manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
    fs::write(a.out.join("manifest.json"), to_json17(&manifest))
        .map_err(|e| fail(format!("writing manifest: {e}")))?;
    Ok(0)
}
