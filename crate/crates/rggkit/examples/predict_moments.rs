//! Closed-form moment predictions from an estimated constants record:
//! expected edges, expected crossings, the variance sandwich for crossings,
//! stress mean/variance, and the correlation lower bound.
//!
//! ```bash
//! cargo run --release --example predict_moments
//! ```

use rggkit::geometry::{ConvexBody, Plane2};
use rggkit::stress::WeightKind;
use rggkit::theory::{predict_moments, Constants};

fn main() {
    let body = ConvexBody::ball(3);
    let k = Constants::estimate(
        &body,
        &Plane2::coordinate(3),
        WeightKind::InverseSquare,
        300_000,
        42,
    );
    println!("constants: c_d = {:.4}, I2 = {:.4}, S1 = {:.4}", k.c_d, k.i2, k.s1);

    for (t, delta) in [(1000.0, 0.05), (2000.0, 0.05), (1000.0, 0.17099759466766968)] {
        let p = predict_moments(t, delta, &k);
        println!("t = {t}, delta = {delta:.5}:");
        println!("  E[m]        = {:.2}", p.e_m);
        println!("  E[cr]       = {:.2}", p.e_cr);
        println!("  Var[cr]     in [{:.3}, {:.3}]", p.var_cr_lb, p.var_cr_ub);
        println!("  E[stress]   = {:.2}", p.e_stress);
        println!("  Var[stress] = {:.2}", p.var_stress);
        println!("  Corr lb     = {:.4}", p.corr_lb);
        assert!(p.var_cr_lb <= p.var_cr_ub);
        assert!(p.corr_lb >= 0.0 && p.corr_lb <= 1.0);
    }

    // Doubling t at fixed delta multiplies E[cr] by 16 and E[stress] by 4.
    let a = predict_moments(1000.0, 0.05, &k);
    let b = predict_moments(2000.0, 0.05, &k);
    println!(
        "scaling: E[cr] x{:.3}, E[stress] x{:.3}",
        b.e_cr / a.e_cr,
        b.e_stress / a.e_stress
    );
    assert!((b.e_cr / a.e_cr - 16.0).abs() < 1e-9);
    assert!((b.e_stress / a.e_stress - 4.0).abs() < 1e-9);
}
