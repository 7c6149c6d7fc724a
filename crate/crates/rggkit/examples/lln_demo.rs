//! Law of large numbers for the crossing count: along a thermodynamic grid
//! (t delta^d held constant), mean(cr) / (t^4 delta^{2d+2}) approaches
//! c_d I2 / 8 and the relative deviation shrinks.
//!
//! Small grid and replication count here, so the last deviation is still
//! visibly nonzero — the experiment command and the acceptance-scale runs
//! push it under 20%.
//!
//! ```bash
//! cargo run --release --example lln_demo
//! ```

use rggkit::experiments::{lln_check, run_experiment, ExperimentConfig, PlaneMode, ProcessKind};
use rggkit::geometry::{ConvexBody, Plane2};
use rggkit::pointprocess::RegimeSchedule;
use rggkit::stress::WeightKind;
use rggkit::theory::Constants;

fn main() {
    let cfg = ExperimentConfig {
        body: ConvexBody::ball(3),
        schedule: RegimeSchedule::Thermodynamic { c: 5.0 },
        t_grid: vec![100.0, 200.0, 400.0, 800.0],
        reps: 50,
        plane_mode: PlaneMode::FixedSeeded,
        weight: WeightKind::InverseSquare,
        seed: 42,
        process: ProcessKind::Poisson,
    };
    let result = run_experiment(&cfg).unwrap();

    let k = Constants::estimate(
        &cfg.body,
        &Plane2::coordinate(3),
        cfg.weight,
        300_000,
        1,
    );
    let report = lln_check(&result, &k, 0.5);
    println!("limit c_d I2 / 8 = {:.5}", report.limit);
    for row in &report.rows {
        println!(
            "  t = {:>5}: ratio = {:.5}  [{:.5}, {:.5}]  rel dev = {:.3}",
            row.t, row.ratio, row.ratio_ci.lo, row.ratio_ci.hi, row.rel_dev
        );
    }
    println!(
        "inversions: soft = {}, hard = {}; final deviation = {:.3}",
        report.soft_inversions, report.hard_inversions, report.final_rel_dev
    );
    assert_eq!(report.hard_inversions, 0, "deviations must shrink");
    assert!(
        report.rows.first().unwrap().rel_dev > report.final_rel_dev,
        "the grid end is closer to the limit than the start"
    );
}
