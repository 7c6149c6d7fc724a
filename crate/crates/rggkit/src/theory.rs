//! Monte Carlo estimators for the geometric constants that drive the moment
//! formulas: the segment-pair crossing constant `c_d` and its second-order
//! companion `c'_d`, the squared/cubed section integrals `I2`/`I3` of a body
//! over a plane, the stress integrals `S1`/`S2`, the local crossing
//! intensity `IW`, and the section-weighted stress integral `SW` that feeds
//! the covariance lower bound. [`predict_moments`] assembles the moment
//! formulas from an estimated [`Constants`] bundle.
//!
//! Reproducibility contract: every estimator consumes its input stream only
//! to seed fixed-size sample blocks; blocks are evaluated independently (in
//! parallel where a pool exists) and reduced in block order, so results are
//! bit-identical for a given stream regardless of thread count. Indicator
//! estimators accumulate exact integer hit counts.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::crossings::{segments_intersect_closed, Segment2};
use crate::geometry::{section_volume, BodyKind, ConvexBody, Plane2, Point2, Vector};
use crate::pointprocess::expected_edges;
use crate::stress::WeightKind;

/// Volume of the d-dimensional unit ball.
pub fn kappa(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / d as f64 * kappa(d - 2),
    }
}

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
}

impl McEstimate {
    /// An estimate that happens to be exact (degenerate or closed-form path).
    pub fn exact(value: f64, n_samples: u64) -> Self {
        McEstimate {
            value,
            std_error: 0.0,
            n_samples,
        }
    }

    /// Binomial estimate `factor * hits/n` with the matching standard error.
    pub fn from_hits(hits: u64, n: u64, factor: f64) -> Self {
        assert!(n >= 1 && hits <= n);
        let p = hits as f64 / n as f64;
        McEstimate {
            value: factor * p,
            std_error: factor * (p * (1.0 - p) / n as f64).sqrt(),
            n_samples: n,
        }
    }
}

const BLOCK: u64 = 1 << 16;

fn block_seeds(n: u64, rng: &mut impl Rng) -> Vec<u64> {
    assert!(n >= 1, "estimators need at least one sample");
    (0..n.div_ceil(BLOCK)).map(|_| rng.random()).collect()
}

/// Mean of `f` over `n` samples, blockwise parallel, order-stable reduce.
fn mc_mean<F>(n: u64, rng: &mut impl Rng, f: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let seeds = block_seeds(n, rng);
    let parts: Vec<(f64, f64)> = seeds
        .par_iter()
        .enumerate()
        .map(|(bi, &seed)| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let lo = bi as u64 * BLOCK;
            let hi = n.min(lo + BLOCK);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in lo..hi {
                let v = f(&mut r);
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for (s, q) in parts {
        sum += s;
        sum_sq += q;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = ((sum_sq / nf - mean * mean) * nf / (nf - 1.0).max(1.0)).max(0.0);
    McEstimate {
        value: mean,
        std_error: (var / nf).sqrt(),
        n_samples: n,
    }
}

/// Indicator-mean estimator scaled by `factor`; hits are counted exactly.
fn mc_fraction<F>(n: u64, rng: &mut impl Rng, factor: f64, f: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let seeds = block_seeds(n, rng);
    let parts: Vec<u64> = seeds
        .par_iter()
        .enumerate()
        .map(|(bi, &seed)| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let lo = bi as u64 * BLOCK;
            let hi = n.min(lo + BLOCK);
            let mut hits = 0u64;
            for _ in lo..hi {
                if f(&mut r) {
                    hits += 1;
                }
            }
            hits
        })
        .collect();
    McEstimate::from_hits(parts.iter().sum(), n, factor)
}

/// Uniform sample from the radius-1 ball in dimension d.
fn sample_unit_ball<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vector {
    loop {
        let mut v = Vector::zeros(d);
        let mut norm_sq = 0.0;
        for c in v.coords.iter_mut() {
            let g: f64 = rng.sample(StandardNormal);
            *c = g;
            norm_sq += g * g;
        }
        if norm_sq < 1e-24 {
            continue;
        }
        let scale = rng.random::<f64>().powf(1.0 / d as f64) / norm_sq.sqrt();
        for c in v.coords.iter_mut() {
            *c *= scale;
        }
        return v;
    }
}

fn sample_disk<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> Point2 {
    let r = radius * rng.random::<f64>().sqrt();
    let th = std::f64::consts::TAU * rng.random::<f64>();
    Point2::new(r * th.cos(), r * th.sin())
}

/// Closed-segment intersection indicator that tolerates the measure-zero
/// event of a degenerate (zero-length) draw by reporting a miss.
fn closed_hit(a0: Point2, a1: Point2, b0: Point2, b1: Point2) -> bool {
    if a0 == a1 || b0 == b1 {
        return false;
    }
    segments_intersect_closed(&Segment2::new(a0, a1), &Segment2::new(b0, b1))
}

/// The crossing constant: the measure of pairs of unit-ball-directed
/// segments through a disk of translations whose planar projections meet.
/// Estimated as `kappa_d * 4pi * kappa_d` times the hit fraction over
/// triples (x, y, z) with x, z uniform in the unit ball and y uniform in the
/// radius-2 disk; the indicator asks whether `[0, x|_L]` meets
/// `y + [0, z|_L]`. The integrand is rotation invariant, so the coordinate
/// plane is used. Touching counts (measure zero, fixed for determinism).
pub fn estimate_c_d(d: usize, n: u64, rng: &mut impl Rng) -> McEstimate {
    assert!(d >= 2);
    let kd = kappa(d);
    let factor = 4.0 * PI * kd * kd;
    mc_fraction(n, rng, factor, move |r| {
        let x = sample_unit_ball(d, r);
        let y = sample_disk(2.0, r);
        let z = sample_unit_ball(d, r);
        closed_hit(
            Point2::new(0.0, 0.0),
            Point2::new(x.coords[0], x.coords[1]),
            y,
            Point2::new(y.x + z.coords[0], y.y + z.coords[1]),
        )
    })
}

/// Second-order crossing constant: one base segment against two independent
/// translated segments, both required to meet it. Scale factor
/// `kappa_d * (4pi)^2 * kappa_d^2`.
pub fn estimate_c_prime_d(d: usize, n: u64, rng: &mut impl Rng) -> McEstimate {
    assert!(d >= 2);
    let kd = kappa(d);
    let factor = 16.0 * PI * PI * kd * kd * kd;
    mc_fraction(n, rng, factor, move |r| {
        let x = sample_unit_ball(d, r);
        let y1 = sample_disk(2.0, r);
        let z1 = sample_unit_ball(d, r);
        let y2 = sample_disk(2.0, r);
        let z2 = sample_unit_ball(d, r);
        let o = Point2::new(0.0, 0.0);
        let xl = Point2::new(x.coords[0], x.coords[1]);
        closed_hit(
            o,
            xl,
            y1,
            Point2::new(y1.x + z1.coords[0], y1.y + z1.coords[1]),
        ) && closed_hit(
            o,
            xl,
            y2,
            Point2::new(y2.x + z2.coords[0], y2.y + z2.coords[1]),
        )
    })
}

/// Draws one unbiased sample of the fiber volume `vol_{d-2}((q + L^perp) n W)`.
/// Bodies with a closed form (balls, axis-aligned cube sections, any 2-d
/// body) are evaluated exactly; the oblique cube uses a single uniform draw
/// from the bounding box of the fiber, which keeps the outer estimators
/// unbiased at one membership test per sample instead of a nested MC run.
struct SectionSampler<'a> {
    body: &'a ConvexBody,
    plane: &'a Plane2,
    complement: Option<Vec<Vector>>,
}

impl<'a> SectionSampler<'a> {
    fn new(body: &'a ConvexBody, plane: &'a Plane2) -> Self {
        let exact = body.dim() == 2
            || body.kind() == BodyKind::UnitVolumeBall
            || plane.is_axis_aligned();
        SectionSampler {
            body,
            plane,
            complement: if exact {
                None
            } else {
                Some(plane.complement_basis())
            },
        }
    }

    fn draw<R: Rng + ?Sized>(&self, q: Point2, rng: &mut R) -> f64 {
        let Some(comp) = &self.complement else {
            return section_volume(self.body, self.plane, q);
        };
        let rb = self.body.bounding_radius();
        let h_sq = rb * rb - q.x * q.x - q.y * q.y;
        if h_sq <= 0.0 {
            return 0.0;
        }
        let h = h_sq.sqrt();
        let mut p = Vector::zeros(self.body.dim())
            .add_scaled(q.x, self.plane.u1())
            .add_scaled(q.y, self.plane.u2());
        let mut vol = 1.0;
        for w in comp {
            p = p.add_scaled(rng.random_range(-h..h), w);
            vol *= 2.0 * h;
        }
        if self.body.contains(&p) {
            vol
        } else {
            0.0
        }
    }
}

/// `I2 = integral over W of the fiber volume over v|_L` — equivalently the
/// integral of the squared section volume over the shadow `W|_L`.
pub fn estimate_i2(body: &ConvexBody, plane: &Plane2, n: u64, rng: &mut impl Rng) -> McEstimate {
    let sampler = SectionSampler::new(body, plane);
    mc_mean(n, rng, move |r| {
        let v = body.sample_uniform(r);
        sampler.draw(plane.project(&v), r)
    })
}

/// `I3 = integral over W of the squared fiber volume over v|_L` (cubed
/// section volume over the shadow). The square uses two independent fiber
/// draws so the sampled-cube path stays unbiased.
pub fn estimate_i3(body: &ConvexBody, plane: &Plane2, n: u64, rng: &mut impl Rng) -> McEstimate {
    let sampler = SectionSampler::new(body, plane);
    mc_mean(n, rng, move |r| {
        let v = body.sample_uniform(r);
        let q = plane.project(&v);
        sampler.draw(q, r) * sampler.draw(q, r)
    })
}

/// Closed-form I2 for the unit-volume ball (radial integral).
pub fn i2_ball_analytic(d: usize) -> f64 {
    assert!(d >= 2);
    let r = kappa(d).powf(-1.0 / d as f64);
    kappa(d - 2).powi(2) * PI * r.powi(2 * d as i32 - 2) / (d as f64 - 1.0)
}

/// Closed-form I3 for the unit-volume ball (radial integral).
pub fn i3_ball_analytic(d: usize) -> f64 {
    assert!(d >= 2);
    let r = kappa(d).powf(-1.0 / d as f64);
    2.0 * PI * kappa(d - 2).powi(3) * r.powi(3 * d as i32 - 4) / (3.0 * d as f64 - 4.0)
}

/// One stress summand `w(p,q) (d0 - dL)^2`, with the measure-zero coincident
/// draw mapped to 0 so estimators never divide by zero.
fn pair_term(p: &Vector, q: &Vector, plane: &Plane2, w: WeightKind) -> f64 {
    let d0 = p.dist(q);
    if d0 == 0.0 {
        return 0.0;
    }
    let dl = plane.project(p).dist(&plane.project(q));
    let diff = d0 - dl;
    match w {
        WeightKind::Unit => diff * diff,
        WeightKind::InverseSquare => {
            let rel = diff / d0;
            rel * rel
        }
    }
}

/// `S1 = integral over W^2 of w(v1,v2) (d0 - dL)^2`.
pub fn estimate_s1(
    body: &ConvexBody,
    plane: &Plane2,
    w: WeightKind,
    n: u64,
    rng: &mut impl Rng,
) -> McEstimate {
    mc_mean(n, rng, move |r| {
        let v1 = body.sample_uniform(r);
        let v2 = body.sample_uniform(r);
        pair_term(&v1, &v2, plane, w)
    })
}

/// `S2 = integral over W^3 of the product of the two stress summands that
/// share the middle point v`.
pub fn estimate_s2(
    body: &ConvexBody,
    plane: &Plane2,
    w: WeightKind,
    n: u64,
    rng: &mut impl Rng,
) -> McEstimate {
    mc_mean(n, rng, move |r| {
        let v = body.sample_uniform(r);
        let v1 = body.sample_uniform(r);
        let v2 = body.sample_uniform(r);
        pair_term(&v, &v1, plane, w) * pair_term(&v, &v2, plane, w)
    })
}

/// Section-weighted stress integral
/// `SW = integral over W^2 of sec(v|_L) w(v,v1) (d0 - dL)^2`: the
/// deterministic factor of the covariance lower bound once the local
/// crossing intensity is replaced by its small-delta limit.
pub fn estimate_sw(
    body: &ConvexBody,
    plane: &Plane2,
    w: WeightKind,
    n: u64,
    rng: &mut impl Rng,
) -> McEstimate {
    let sampler = SectionSampler::new(body, plane);
    mc_mean(n, rng, move |r| {
        let v = body.sample_uniform(r);
        let v1 = body.sample_uniform(r);
        let sec = sampler.draw(plane.project(&v), r);
        if sec == 0.0 {
            return 0.0;
        }
        sec * pair_term(&v, &v1, plane, w)
    })
}

/// Local crossing intensity at `v`: the measure of pairs (a delta-edge at v,
/// a delta-edge elsewhere in W) whose projections meet. Estimated at finite
/// delta as `(kappa_d delta^d)^2` times the hit fraction over x, z uniform
/// in the delta-ball and y uniform in W.
pub fn estimate_iw(
    v: &Vector,
    body: &ConvexBody,
    plane: &Plane2,
    delta: f64,
    n: u64,
    rng: &mut impl Rng,
) -> McEstimate {
    assert!(delta > 0.0);
    let d = body.dim();
    assert_eq!(d, v.dim());
    let factor = {
        let b = kappa(d) * delta.powi(d as i32);
        b * b
    };
    let vl = plane.project(v);
    mc_fraction(n, rng, factor, move |r| {
        let x = sample_unit_ball(d, r);
        let y = body.sample_uniform(r);
        let z = sample_unit_ball(d, r);
        let vx = v.add_scaled(delta, &x);
        if !body.contains(&vx) {
            return false;
        }
        let yz = y.add_scaled(delta, &z);
        if !body.contains(&yz) {
            return false;
        }
        closed_hit(vl, plane.project(&vx), plane.project(&y), plane.project(&yz))
    })
}

/// Covariance lower bound `(t^5/16) c_d delta^{2d+2} SW`, with `c_d` and
/// `SW` estimated back to back from the given stream (disjoint draws, so the
/// two factors are independent and the standard error combines by the
/// product rule).
pub fn cov_lower_bound(
    body: &ConvexBody,
    plane: &Plane2,
    w: WeightKind,
    t: f64,
    delta: f64,
    n: u64,
    rng: &mut impl Rng,
) -> McEstimate {
    assert!(t > 0.0 && delta > 0.0);
    let cd = estimate_c_d(body.dim(), n, rng);
    let sw = estimate_sw(body, plane, w, n, rng);
    let scale = t.powi(5) / 16.0 * delta.powi(2 * body.dim() as i32 + 2);
    let var = cd.value * cd.value * sw.std_error * sw.std_error
        + sw.value * sw.value * cd.std_error * cd.std_error;
    McEstimate {
        value: scale * cd.value * sw.value,
        std_error: scale * var.sqrt(),
        n_samples: n,
    }
}

/// The estimated constants bundle for one (body, plane, weight) setting.
/// Every field carries its standard error; `n_samples` and `seed` make the
/// record reproducible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Constants {
    pub d: usize,
    pub body: BodyKind,
    pub weight: WeightKind,
    pub c_d: f64,
    pub c_d_se: f64,
    pub c_prime_d: f64,
    pub c_prime_d_se: f64,
    pub i2: f64,
    pub i2_se: f64,
    pub i3: f64,
    pub i3_se: f64,
    pub s1: f64,
    pub s1_se: f64,
    pub s2: f64,
    pub s2_se: f64,
    pub sw: f64,
    pub sw_se: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl Constants {
    /// Runs all seven estimators, one substream each, `n` samples apiece.
    pub fn estimate(
        body: &ConvexBody,
        plane: &Plane2,
        weight: WeightKind,
        n: u64,
        seed: u64,
    ) -> Self {
        let stream = |k: u64| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(k);
            r
        };
        let c = estimate_c_d(body.dim(), n, &mut stream(1));
        let cp = estimate_c_prime_d(body.dim(), n, &mut stream(2));
        let i2 = estimate_i2(body, plane, n, &mut stream(3));
        let i3 = estimate_i3(body, plane, n, &mut stream(4));
        let s1 = estimate_s1(body, plane, weight, n, &mut stream(5));
        let s2 = estimate_s2(body, plane, weight, n, &mut stream(6));
        let sw = estimate_sw(body, plane, weight, n, &mut stream(7));
        Constants {
            d: body.dim(),
            body: body.kind(),
            weight,
            c_d: c.value,
            c_d_se: c.std_error,
            c_prime_d: cp.value,
            c_prime_d_se: cp.std_error,
            i2: i2.value,
            i2_se: i2.std_error,
            i3: i3.value,
            i3_se: i3.std_error,
            s1: s1.value,
            s1_se: s1.std_error,
            s2: s2.value,
            s2_se: s2.std_error,
            sw: sw.value,
            sw_se: sw.std_error,
            n_samples: n,
            seed,
        }
    }
}

/// Leading-order moment predictions for intensity `t` and radius `delta`.
/// Lower-order corrections are dropped; the variance upper bound keeps the
/// finite-t `2 pi kappa_d c_d / (t delta^d)` term of the sandwich.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MomentPredictions {
    pub e_m: f64,
    pub e_cr: f64,
    pub var_cr_lb: f64,
    pub var_cr_ub: f64,
    pub e_stress: f64,
    pub var_stress: f64,
    pub cov_lb: f64,
    pub corr_lb: f64,
}

pub fn predict_moments(t: f64, delta: f64, k: &Constants) -> MomentPredictions {
    assert!(t > 0.0 && delta > 0.0);
    let d = k.d as i32;
    let kd = kappa(k.d);
    let e_m = expected_edges(&ConvexBody::of_kind(k.body, k.d), t, delta);
    let e_cr = 0.125 * k.c_d * t.powi(4) * delta.powi(2 * d + 2) * k.i2;
    let base = t.powi(7) * delta.powi(4 * d + 4) * k.i3 / 64.0;
    let var_cr_lb = k.c_d * k.c_d * base;
    let var_cr_ub = (k.c_d * k.c_d + 2.0 * PI * kd * k.c_d / (t * delta.powi(d))) * base;
    let e_stress = 0.5 * t * t * k.s1;
    let var_stress = 0.25 * t.powi(3) * k.s2;
    let cov_lb = t.powi(5) / 16.0 * k.c_d * delta.powi(2 * d + 2) * k.sw;
    let denom = (var_cr_ub * var_stress).sqrt();
    let corr_lb = if denom > 0.0 {
        (cov_lb / denom).clamp(-1.0, 1.0)
    } else {
        0.0
    };
    MomentPredictions {
        e_m,
        e_cr,
        var_cr_lb,
        var_cr_ub,
        e_stress,
        var_stress,
        cov_lb,
        corr_lb,
    }
}
