//! Crossings and stress are positively correlated over the randomness of
//! the point process: replicate at one intensity, compute Pearson r, and
//! test positivity with a one-sided Fisher z.
//!
//! ```bash
//! cargo run --release --example correlation_demo
//! ```

use rggkit::experiments::{
    correlation_check, run_experiment, ExperimentConfig, PlaneMode, ProcessKind,
};
use rggkit::geometry::{ConvexBody, Plane2};
use rggkit::pointprocess::RegimeSchedule;
use rggkit::stress::WeightKind;
use rggkit::theory::{predict_moments, Constants};

fn main() {
    let cfg = ExperimentConfig {
        body: ConvexBody::ball(3),
        schedule: RegimeSchedule::Thermodynamic { c: 5.0 },
        t_grid: vec![500.0],
        reps: 120,
        plane_mode: PlaneMode::FixedSeeded,
        weight: WeightKind::InverseSquare,
        seed: 6,
        process: ProcessKind::Poisson,
    };
    let result = run_experiment(&cfg).unwrap();
    let s = &result.summaries[0];

    let k = Constants::estimate(&cfg.body, &Plane2::coordinate(3), cfg.weight, 200_000, 9);
    let bound = predict_moments(s.t, s.delta, &k).corr_lb;
    let rep = correlation_check(&result.samples, bound);

    println!("t = {}, delta = {:.5}, reps = {}", s.t, s.delta, rep.reps);
    println!("pearson r(cr, stress) = {:.4}", rep.r);
    println!("one-sided p for r > 0 = {:.3e}", rep.p_one_sided);
    println!("predicted lower bound = {:.4}", rep.corr_lb);
    println!(
        "positive at 1%: {}; at least half the bound: {}",
        rep.pass_positive, rep.meets_half_bound
    );
    assert!(rep.pass_positive);
}
