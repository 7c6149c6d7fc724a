//! Both functionals concentrate: their coefficients of variation decay like
//! t^{-1/2}. Run a doubling grid, regress log CoV on log t, and read off the
//! slope.
//!
//! ```bash
//! cargo run --release --example cov_scaling
//! ```

use rggkit::experiments::{cov_scaling_check, run_experiment, ExperimentConfig, PlaneMode, ProcessKind};
use rggkit::geometry::ConvexBody;
use rggkit::pointprocess::RegimeSchedule;
use rggkit::stress::WeightKind;

fn main() {
    let cfg = ExperimentConfig {
        body: ConvexBody::ball(3),
        schedule: RegimeSchedule::Thermodynamic { c: 5.0 },
        t_grid: vec![100.0, 200.0, 400.0, 800.0, 1600.0],
        reps: 40,
        plane_mode: PlaneMode::FixedSeeded,
        weight: WeightKind::InverseSquare,
        seed: 31,
        process: ProcessKind::Poisson,
    };
    let result = run_experiment(&cfg).unwrap();
    for s in &result.summaries {
        println!(
            "t = {:>6}: CoV(cr) = {:.4}, CoV(stress) = {:.4}",
            s.t,
            s.cr.var.sqrt() / s.cr.mean,
            s.stress.var.sqrt() / s.stress.mean
        );
    }
    let rep = cov_scaling_check(&result, -0.75, -0.25).unwrap();
    println!(
        "log-log slopes: cr = {:.3}, stress = {:.3} (theory: -0.5)",
        rep.slope_cr, rep.slope_stress
    );
    println!("within band [{}, {}]: {}", rep.band_lo, rep.band_hi, rep.pass);
    assert!(rep.slope_cr < 0.0 && rep.slope_stress < 0.0);
}
