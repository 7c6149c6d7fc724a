//! The variance sandwich for crossings (d >= 3): normalized by
//! t^7 delta^{4d+4}, Var(cr) is bounded below by c_d^2 I3 / 64 and above by
//! the same with a (1 + 2 pi kappa_d / (c_d t delta^d)) factor.
//!
//! ```bash
//! cargo run --release --example variance_sandwich
//! ```

use rggkit::experiments::{
    run_experiment, variance_sandwich_check, ExperimentConfig, PlaneMode, ProcessKind,
};
use rggkit::geometry::{ConvexBody, Plane2};
use rggkit::pointprocess::RegimeSchedule;
use rggkit::stress::WeightKind;
use rggkit::theory::Constants;

fn main() {
    let cfg = ExperimentConfig {
        body: ConvexBody::ball(3),
        schedule: RegimeSchedule::Thermodynamic { c: 5.0 },
        t_grid: vec![600.0],
        reps: 150,
        plane_mode: PlaneMode::FixedSeeded,
        weight: WeightKind::InverseSquare,
        seed: 4242,
        process: ProcessKind::Poisson,
    };
    let result = run_experiment(&cfg).unwrap();
    let k = Constants::estimate(&cfg.body, &Plane2::coordinate(3), cfg.weight, 300_000, 5);

    let s = variance_sandwich_check(&result, &k, 0.25).unwrap();
    println!("t = {}, delta = {:.5}", s.t, result.summaries[0].delta);
    println!("normalized Var(cr) = {:.5}", s.normalized_var);
    println!("  CI   [{:.5}, {:.5}]", s.normalized_ci.lo, s.normalized_ci.hi);
    println!("  band [{:.5}, {:.5}]  (tau = {})", s.lb, s.ub, s.tau);
    println!("pass: {}", s.pass);

    // d = 2 has no sandwich theorem; the check refuses rather than guesses.
    let k2 = Constants::estimate(
        &ConvexBody::ball(2),
        &Plane2::coordinate(2),
        WeightKind::InverseSquare,
        10_000,
        5,
    );
    let refused = variance_sandwich_check(&result, &k2, 0.25);
    println!("d=2 attempt: {}", refused.unwrap_err());
}
