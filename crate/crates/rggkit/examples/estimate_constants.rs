//! Monte Carlo estimation of the limit constants: the crossing density
//! c_d, its second-order companion c'_d, the section integrals I2 and I3,
//! and the stress integrals S1, S2, SW.
//!
//! For the ball, I2 and I3 have closed forms, so the example also shows the
//! estimator landing on them.
//!
//! ```bash
//! cargo run --release --example estimate_constants
//! ```

use rggkit::geometry::{ConvexBody, Plane2};
use rggkit::stress::WeightKind;
use rggkit::theory::{i2_ball_analytic, i3_ball_analytic, kappa, Constants};

fn main() {
    let d = 3;
    let body = ConvexBody::ball(d);
    let plane = Plane2::coordinate(d);
    let k = Constants::estimate(&body, &plane, WeightKind::InverseSquare, 400_000, 7);

    println!("d = {d}, ball, N = {} per constant", k.n_samples);
    println!("  c_d  = {:.5} +- {:.5}", k.c_d, k.c_d_se);
    println!("  c'_d = {:.5} +- {:.5}", k.c_prime_d, k.c_prime_d_se);
    println!("  I2   = {:.6} +- {:.6}", k.i2, k.i2_se);
    println!("  I3   = {:.6} +- {:.6}", k.i3, k.i3_se);
    println!("  S1   = {:.6} +- {:.6}", k.s1, k.s1_se);
    println!("  S2   = {:.6} +- {:.6}", k.s2, k.s2_se);
    println!("  SW   = {:.6} +- {:.6}", k.sw, k.sw_se);

    let (i2, i3) = (i2_ball_analytic(d), i3_ball_analytic(d));
    println!("ball closed forms: I2 = {i2:.10}, I3 = {i3:.10}");
    assert!((k.i2 - i2).abs() < 5.0 * k.i2_se);
    assert!((k.i3 - i3).abs() < 5.0 * k.i3_se);

    let cap = 2.0 * std::f64::consts::PI * kappa(d) * kappa(d);
    println!("bound: c_d = {:.4} <= 2 pi kappa_d^2 = {cap:.4}", k.c_d);
    assert!(k.c_d <= cap + 4.0 * k.c_d_se);

    // The cube is not rotation invariant: an oblique plane sees different
    // section integrals than the axis plane.
    let cube = ConvexBody::cube(3);
    let axis = Constants::estimate(&cube, &Plane2::coordinate(3), WeightKind::InverseSquare, 200_000, 7);
    let tilted = {
        use rggkit::geometry::Vector;
        let r = 0.5f64.sqrt();
        let u1 = Vector::new(vec![r, r, 0.0]);
        let u2 = Vector::new(vec![0.0, 0.0, 1.0]);
        let plane = Plane2::from_frame(u1, u2).unwrap();
        Constants::estimate(&cube, &plane, WeightKind::InverseSquare, 200_000, 7)
    };
    println!(
        "cube I2: axis plane {:.6} +- {:.1e}, tilted plane {:.6} +- {:.1e}",
        axis.i2, axis.i2_se, tilted.i2, tilted.i2_se
    );
    assert!((axis.i2 - 1.0).abs() < 1e-12, "axis sections are unit squares");
}
