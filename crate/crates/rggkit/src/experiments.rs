//! Replicated-simulation harness: draw a point process, build the geometric
//! graph, project it, measure (n, m, cr, stress) per replication, and
//! aggregate into per-intensity summaries with batch-means confidence
//! intervals. On top of the raw machinery sit the verification checks
//! (law of large numbers for crossings, the variance sandwich, correlation
//! positivity, coefficient-of-variation scaling) and the random-plane search.
//!
//! Reproducibility: replication (t-slot, rep) always runs on the ChaCha
//! substream `((slot+1) << 32) | rep` of the experiment seed, and the fixed
//! plane on substream 0, so results are independent of scheduling and worker
//! count. Aggregation folds per-t sample slices in replication order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};
use std::io::{self, Write};

use crate::crossings::{crossing_lemma_floor, crossing_number_of_projection};
use crate::geometry::{ConvexBody, Plane2, Vector};
use crate::pointprocess::{
    build_rgg, fmt_f64, sample_binomial, sample_poisson, GeometricGraph, RegimeSchedule,
};
use crate::stress::{stress_of_projection, WeightKind};
use crate::theory::{kappa, Constants};

/// Whether every replication shares one seeded plane (variance with respect
/// to the point process only) or each replication draws a fresh Haar plane
/// (joint variance over points and plane).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneMode {
    FixedSeeded,
    RandomPerRep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProcessKind {
    Poisson,
    /// Exactly round(t) i.i.d. uniform points (de-Poissonized).
    Binomial,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub body: ConvexBody,
    pub schedule: RegimeSchedule,
    pub t_grid: Vec<f64>,
    pub reps: u32,
    pub plane_mode: PlaneMode,
    pub weight: WeightKind,
    pub seed: u64,
    pub process: ProcessKind,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("reps must be at least 2 (got {0})")]
    TooFewReps(u32),
    #[error("t_grid must be nonempty, positive, and strictly increasing")]
    BadGrid,
    #[error("thermodynamic schedule needs c > 0 (got {0})")]
    BadC(f64),
    #[error("dense schedule needs c > 0 and 0 < beta < 1 (got c={0}, beta={1})")]
    BadDense(f64, f64),
    #[error("fixed schedule needs delta > 0 (got {0})")]
    BadDelta(f64),
}

impl ExperimentConfig {
    pub fn d(&self) -> usize {
        self.body.dim()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.reps < 2 {
            return Err(ConfigError::TooFewReps(self.reps));
        }
        if self.t_grid.is_empty()
            || self.t_grid.iter().any(|&t| !(t > 0.0) || !t.is_finite())
            || self.t_grid.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(ConfigError::BadGrid);
        }
        match self.schedule {
            RegimeSchedule::Thermodynamic { c } if !(c > 0.0) => Err(ConfigError::BadC(c)),
            RegimeSchedule::Dense { c, beta } if !(c > 0.0 && 0.0 < beta && beta < 1.0) => {
                Err(ConfigError::BadDense(c, beta))
            }
            RegimeSchedule::Fixed { delta } if !(delta > 0.0) => Err(ConfigError::BadDelta(delta)),
            _ => Ok(()),
        }
    }
}

/// One replication's observables.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepSample {
    pub t: f64,
    pub delta: f64,
    pub rep: u32,
    pub plane_id: u64,
    pub n: u64,
    pub m: u64,
    pub cr: u64,
    pub stress: f64,
}

fn substream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(id);
    r
}

/// The experiment-wide plane used in [`PlaneMode::FixedSeeded`] mode
/// (substream 0 of the experiment seed).
pub fn fixed_plane(cfg: &ExperimentConfig) -> Plane2 {
    Plane2::sample_haar(cfg.d(), &mut substream(cfg.seed, 0))
}

/// Runs replication `rep` of grid slot `t_slot`. Deterministic in
/// (seed, t_slot, rep): the replication substream id is
/// `((t_slot + 1) << 32) | rep`, so no ordering or thread assignment can
/// change any draw.
pub fn run_replication(cfg: &ExperimentConfig, t_slot: usize, rep: u32) -> RepSample {
    let t = cfg.t_grid[t_slot];
    let d = cfg.d();
    let delta = cfg.schedule.delta(t, d);
    let id = ((t_slot as u64 + 1) << 32) | rep as u64;
    let mut rng = substream(cfg.seed, id);
    let (plane, plane_id) = match cfg.plane_mode {
        PlaneMode::FixedSeeded => (fixed_plane(cfg), 0),
        PlaneMode::RandomPerRep => (Plane2::sample_haar(d, &mut rng), id),
    };
    let points = match cfg.process {
        ProcessKind::Poisson => {
            sample_poisson(&cfg.body, t, &mut rng).expect("validated intensity")
        }
        ProcessKind::Binomial => sample_binomial(&cfg.body, t.round() as usize, &mut rng),
    };
    let mut g = build_rgg(points, delta);
    // An empty draw carries no dimension of its own; pin the ambient one.
    g.dim = d;
    let cr = crossing_number_of_projection(&g, &plane);
    let stress = stress_of_projection(&g, &plane, cfg.weight)
        .expect("coincident sample points (probability-zero event)");
    let (n, m) = (g.n() as u64, g.m() as u64);
    debug_assert!(m <= n.saturating_mul(n.saturating_sub(1)) / 2);
    debug_assert!(cr.count <= m.saturating_mul(m.saturating_sub(1)) / 2);
    RepSample {
        t,
        delta,
        rep,
        plane_id,
        n,
        m,
        cr: cr.count,
        stress,
    }
}

/// A two-sided 95% confidence interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ci {
    pub lo: f64,
    pub hi: f64,
}

impl Ci {
    fn point(x: f64) -> Self {
        Ci { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersects_range(&self, lo: f64, hi: f64) -> bool {
        self.lo <= hi && lo <= self.hi
    }

    /// Rescale by a positive factor (normalizations like t^4 delta^{2d+2}).
    pub fn scaled(&self, s: f64) -> Ci {
        assert!(s > 0.0);
        Ci {
            lo: self.lo * s,
            hi: self.hi * s,
        }
    }
}

/// Mean and variance of one observable with batch-means CIs for both.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub var: f64,
    pub mean_ci: Ci,
    pub var_ci: Ci,
}

/// Per-intensity aggregate over all replications.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TSummary {
    pub t: f64,
    pub delta: f64,
    pub reps: u32,
    pub n: MomentSummary,
    pub m: MomentSummary,
    pub cr: MomentSummary,
    pub stress: MomentSummary,
    pub cov_cr_stress: f64,
    pub pearson_cr_stress: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub samples: Vec<RepSample>,
    pub summaries: Vec<TSummary>,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_var(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        None
    } else {
        Some(sxy / (sxx * syy).sqrt())
    }
}

fn t_quantile_975(df: f64) -> f64 {
    StudentsT::new(0.0, 1.0, df)
        .expect("valid Student t dof")
        .inverse_cdf(0.975)
}

fn batches(xs: &[f64], b: usize) -> Vec<&[f64]> {
    let n = xs.len();
    let mut out = Vec::with_capacity(b);
    let mut start = 0;
    for i in 0..b {
        let size = n / b + usize::from(i < n % b);
        out.push(&xs[start..start + size]);
        start += size;
    }
    out
}

/// 95% CI for the mean, batch means over up to 20 consecutive batches.
fn mean_ci(xs: &[f64]) -> Ci {
    let grand = mean(xs);
    let b = xs.len().min(20);
    if b < 2 {
        return Ci::point(grand);
    }
    let ms: Vec<f64> = batches(xs, b).into_iter().map(mean).collect();
    let h = t_quantile_975(b as f64 - 1.0) * (sample_var(&ms) / b as f64).sqrt();
    Ci {
        lo: grand - h,
        hi: grand + h,
    }
}

/// 95% CI for the variance, from per-batch sample variances (each batch at
/// least two samples).
fn var_ci(xs: &[f64]) -> Ci {
    let overall = sample_var(xs);
    let b = (xs.len() / 2).min(20);
    if b < 2 {
        return Ci::point(overall);
    }
    let vs: Vec<f64> = batches(xs, b).into_iter().map(sample_var).collect();
    let h = t_quantile_975(b as f64 - 1.0) * (sample_var(&vs) / b as f64).sqrt();
    Ci {
        lo: overall - h,
        hi: overall + h,
    }
}

fn moment_summary(xs: &[f64]) -> MomentSummary {
    MomentSummary {
        mean: mean(xs),
        var: sample_var(xs),
        mean_ci: mean_ci(xs),
        var_ci: var_ci(xs),
    }
}

/// Aggregates one t-slot's replication slice (in replication order).
pub fn summarize(samples: &[RepSample]) -> TSummary {
    assert!(!samples.is_empty());
    let grab = |f: &dyn Fn(&RepSample) -> f64| samples.iter().map(f).collect::<Vec<f64>>();
    let ns = grab(&|s| s.n as f64);
    let ms = grab(&|s| s.m as f64);
    let crs = grab(&|s| s.cr as f64);
    let sts = grab(&|s| s.stress);
    let (mc, ms_) = (mean(&crs), mean(&sts));
    let cov = crs
        .iter()
        .zip(&sts)
        .map(|(c, s)| (c - mc) * (s - ms_))
        .sum::<f64>()
        / (samples.len() as f64 - 1.0).max(1.0);
    TSummary {
        t: samples[0].t,
        delta: samples[0].delta,
        reps: samples.len() as u32,
        n: moment_summary(&ns),
        m: moment_summary(&ms),
        cr: moment_summary(&crs),
        stress: moment_summary(&sts),
        cov_cr_stress: cov,
        pearson_cr_stress: pearson(&crs, &sts),
    }
}

/// Runs `reps` replications for every grid intensity, in parallel, and
/// aggregates. Output is bit-identical for any worker count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult, ConfigError> {
    cfg.validate()?;
    let jobs: Vec<(usize, u32)> = (0..cfg.t_grid.len())
        .flat_map(|slot| (0..cfg.reps).map(move |rep| (slot, rep)))
        .collect();
    let samples: Vec<RepSample> = jobs
        .par_iter()
        .map(|&(slot, rep)| run_replication(cfg, slot, rep))
        .collect();
    let summaries = samples
        .chunks(cfg.reps as usize)
        .map(summarize)
        .collect();
    Ok(ExperimentResult { samples, summaries })
}

/// Raw replication table; floats at 17 significant digits.
pub fn write_raw_csv<W: Write>(samples: &[RepSample], mut out: W) -> io::Result<()> {
    writeln!(out, "t,delta,rep,plane_id,n,m,cr,stress")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(s.t),
            fmt_f64(s.delta),
            s.rep,
            s.plane_id,
            s.n,
            s.m,
            s.cr,
            fmt_f64(s.stress)
        )?;
    }
    Ok(())
}

/// The graph plus one extra vertex, rebuilt at the same threshold. Both cr
/// and stress are increasing under point insertion, which this helper makes
/// easy to spot-check.
pub fn add_point(g: &GeometricGraph, v: Vector) -> GeometricGraph {
    assert_eq!(v.dim(), g.dim);
    let mut points = g.points.clone();
    points.push(v);
    build_rgg(points, g.delta)
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CheckError {
    #[error("variance sandwich requires d >= 3 (got {0})")]
    DimensionTooLow(usize),
    #[error("scaling check needs at least 4 intensities spanning close to a decade (span {0:.2}x)")]
    GridTooNarrow(f64),
    #[error("coefficient of variation undefined: nonpositive mean at t={0}")]
    DegenerateCov(f64),
}

/// One row of the LLN report: the normalized crossing mean at one t.
#[derive(Clone, Debug, Serialize)]
pub struct LlnRow {
    pub t: f64,
    pub ratio: f64,
    pub ratio_ci: Ci,
    pub rel_dev: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LlnReport {
    /// (1/8) c_d I2: the limit of mean(cr) / (t^4 delta^{2d+2}).
    pub limit: f64,
    pub rows: Vec<LlnRow>,
    pub final_rel_dev: f64,
    pub soft_inversions: u32,
    pub hard_inversions: u32,
    pub pass: bool,
}

/// Normalized crossing means against the limit `(1/8) c_d I2`, with the
/// deviation sequence required to shrink along the grid (one CI-consistent
/// inversion tolerated) and the final deviation within `tol`.
pub fn lln_check(result: &ExperimentResult, k: &Constants, tol: f64) -> LlnReport {
    let limit = k.c_d * k.i2 / 8.0;
    let e = 2 * k.d as i32 + 2;
    let rows: Vec<LlnRow> = result
        .summaries
        .iter()
        .map(|s| {
            let scale = 1.0 / (s.t.powi(4) * s.delta.powi(e));
            let ratio = s.cr.mean * scale;
            let ratio_ci = s.cr.mean_ci.scaled(scale);
            LlnRow {
                t: s.t,
                ratio,
                ratio_ci,
                rel_dev: (ratio - limit).abs() / limit,
            }
        })
        .collect();
    let mut soft = 0;
    let mut hard = 0;
    for w in rows.windows(2) {
        if w[1].rel_dev > w[0].rel_dev {
            let slack = (w[0].ratio_ci.width() + w[1].ratio_ci.width()) / 2.0 / limit;
            if w[1].rel_dev - w[0].rel_dev <= slack {
                soft += 1;
            } else {
                hard += 1;
            }
        }
    }
    let final_rel_dev = rows.last().map_or(f64::INFINITY, |r| r.rel_dev);
    LlnReport {
        limit,
        rows,
        final_rel_dev,
        soft_inversions: soft,
        hard_inversions: hard,
        pass: final_rel_dev <= tol && hard == 0 && soft <= 1,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub t: f64,
    pub lb: f64,
    pub ub: f64,
    pub normalized_var: f64,
    pub normalized_ci: Ci,
    pub tau: f64,
    pub pass: bool,
}

/// Variance sandwich at the largest grid intensity: the CI of
/// `Var(cr) / (t^7 delta^{4d+4})` must meet `[lb (1-tau), ub (1+tau)]` with
/// `lb = c_d^2 I3 / 64` and `ub = lb (1 + 2 pi kappa_d / (c_d t delta^d))`.
pub fn variance_sandwich_check(
    result: &ExperimentResult,
    k: &Constants,
    tau: f64,
) -> Result<SandwichReport, CheckError> {
    if k.d < 3 {
        return Err(CheckError::DimensionTooLow(k.d));
    }
    let s = result.summaries.last().expect("nonempty experiment");
    let lb = k.c_d * k.c_d * k.i3 / 64.0;
    let ub = lb * (1.0 + 2.0 * std::f64::consts::PI * kappa(k.d) / (k.c_d * s.t * s.delta.powi(k.d as i32)));
    let scale = 1.0 / (s.t.powi(7) * s.delta.powi(4 * k.d as i32 + 4));
    let normalized_var = s.cr.var * scale;
    let normalized_ci = s.cr.var_ci.scaled(scale);
    let pass = normalized_ci.intersects_range(lb * (1.0 - tau), ub * (1.0 + tau));
    Ok(SandwichReport {
        t: s.t,
        lb,
        ub,
        normalized_var,
        normalized_ci,
        tau,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrelationReport {
    pub reps: usize,
    pub r: f64,
    pub p_one_sided: f64,
    /// Theorem-style lower-bound estimate the empirical r is compared to.
    pub corr_lb: f64,
    pub inconclusive: bool,
    /// r > 0 at the 1% one-sided level.
    pub pass_positive: bool,
    /// Qualitative tier: r at least half the (asymptotic) bound.
    pub meets_half_bound: bool,
}

/// Pearson correlation of (cr, stress) over one t-slot's replications, with
/// a one-sided Fisher-z test for positivity. Inconclusive (rather than
/// failing) when either coordinate is constant or there are too few
/// replications for the z-transform (reps < 4).
pub fn correlation_check(samples: &[RepSample], corr_lb: f64) -> CorrelationReport {
    let crs: Vec<f64> = samples.iter().map(|s| s.cr as f64).collect();
    let sts: Vec<f64> = samples.iter().map(|s| s.stress).collect();
    let reps = samples.len();
    match pearson(&crs, &sts) {
        Some(r) if reps >= 4 => {
            let z = r.clamp(-1.0 + 1e-15, 1.0 - 1e-15).atanh() * ((reps - 3) as f64).sqrt();
            let p = 1.0 - Normal::new(0.0, 1.0).unwrap().cdf(z);
            CorrelationReport {
                reps,
                r,
                p_one_sided: p,
                corr_lb,
                inconclusive: false,
                pass_positive: r > 0.0 && p < 0.01,
                meets_half_bound: r >= 0.5 * corr_lb,
            }
        }
        maybe_r => CorrelationReport {
            reps,
            r: maybe_r.unwrap_or(f64::NAN),
            p_one_sided: f64::NAN,
            corr_lb,
            inconclusive: true,
            pass_positive: false,
            meets_half_bound: false,
        },
    }
}

fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    sxy / sxx
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub slope_cr: f64,
    pub slope_stress: f64,
    pub band_lo: f64,
    pub band_hi: f64,
    pub pass: bool,
}

/// Log-log OLS slope of the coefficient of variation against t, for both cr
/// and stress; the theory gives exponent -1/2 for each. The grid must have
/// at least 4 intensities spanning (close to) a decade — a factor of 8 is
/// accepted so a 250..2000 doubling grid qualifies.
pub fn cov_scaling_check(
    result: &ExperimentResult,
    band_lo: f64,
    band_hi: f64,
) -> Result<ScalingReport, CheckError> {
    let sums = &result.summaries;
    let span = if sums.is_empty() {
        0.0
    } else {
        sums.last().unwrap().t / sums[0].t
    };
    if sums.len() < 4 || span < 8.0 {
        return Err(CheckError::GridTooNarrow(span));
    }
    let log_t: Vec<f64> = sums.iter().map(|s| s.t.ln()).collect();
    let cov_of = |pick: &dyn Fn(&TSummary) -> MomentSummary| -> Result<Vec<f64>, CheckError> {
        sums.iter()
            .map(|s| {
                let ms = pick(s);
                if ms.mean <= 0.0 {
                    Err(CheckError::DegenerateCov(s.t))
                } else {
                    Ok((ms.var.sqrt() / ms.mean).ln())
                }
            })
            .collect()
    };
    let slope_cr = ols_slope(&log_t, &cov_of(&|s| s.cr)?);
    let slope_stress = ols_slope(&log_t, &cov_of(&|s| s.stress)?);
    let in_band = |x: f64| band_lo <= x && x <= band_hi;
    Ok(ScalingReport {
        slope_cr,
        slope_stress,
        band_lo,
        band_hi,
        pass: in_band(slope_cr) && in_band(slope_stress),
    })
}

/// Per-plane outcome of a random-plane search.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PlaneOutcome {
    pub cr: u64,
    pub stress: f64,
    pub degenerate: bool,
}

#[derive(Clone, Debug)]
pub struct PlaneSearchReport {
    pub outcomes: Vec<PlaneOutcome>,
    pub planes: Vec<Plane2>,
    pub best_cr: usize,
    pub best_stress: usize,
    pub lemma_floor: f64,
    /// cr_found / floor when the crossing lemma applies (m >= 7n).
    pub ratio_vs_floor: Option<f64>,
    pub pearson_across_planes: Option<f64>,
    /// Fraction of planes with cr at most half the cross-plane mean — the
    /// "easy win" fraction, which concentration makes small.
    pub frac_below_half_mean: f64,
}

/// Projects `g` onto `k` Haar planes (d = 2 needs no projection, so a single
/// identity plane is used) and reports per-plane crossing and stress
/// outcomes, the argmin planes, and the crossing-lemma floor.
pub fn plane_search<R: Rng + ?Sized>(
    g: &GeometricGraph,
    k: usize,
    weight: WeightKind,
    rng: &mut R,
) -> PlaneSearchReport {
    assert!(k >= 1);
    let k = if g.dim == 2 { 1 } else { k };
    let planes: Vec<Plane2> = (0..k).map(|_| Plane2::sample_haar(g.dim, rng)).collect();
    let outcomes: Vec<PlaneOutcome> = planes
        .iter()
        .map(|l| {
            let c = crossing_number_of_projection(g, l);
            let stress = stress_of_projection(g, l, weight)
                .expect("coincident points in plane search input");
            PlaneOutcome {
                cr: c.count,
                stress,
                degenerate: c.degenerate,
            }
        })
        .collect();
    let best_cr = outcomes
        .iter()
        .enumerate()
        .min_by_key(|(_, o)| o.cr)
        .map(|(i, _)| i)
        .unwrap();
    let best_stress = outcomes
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.stress.total_cmp(&b.stress))
        .map(|(i, _)| i)
        .unwrap();
    let (n, m) = (g.n() as u64, g.m() as u64);
    let lemma_floor = if n >= 1 { crossing_lemma_floor(n, m) } else { 0.0 };
    let ratio_vs_floor = (lemma_floor > 0.0)
        .then(|| outcomes[best_cr].cr as f64 / lemma_floor);
    let crs: Vec<f64> = outcomes.iter().map(|o| o.cr as f64).collect();
    let sts: Vec<f64> = outcomes.iter().map(|o| o.stress).collect();
    let half_mean = 0.5 * mean(&crs);
    let frac_below_half_mean =
        crs.iter().filter(|&&c| c <= half_mean).count() as f64 / k as f64;
    PlaneSearchReport {
        outcomes,
        planes,
        best_cr,
        best_stress,
        lemma_floor,
        ratio_vs_floor,
        pearson_across_planes: pearson(&crs, &sts),
        frac_below_half_mean,
    }
}
