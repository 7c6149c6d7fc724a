//! Uniform sampling in the two supported unit-volume convex bodies.
//!
//! Draws points in the ball and cube, confirms containment, and checks the
//! empirical mass of a sub-ball against its volume fraction.
//!
//! ```bash
//! cargo run --release --example sample_bodies
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rggkit::geometry::ConvexBody;
use rggkit::theory::kappa;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 200_000;

    for body in [ConvexBody::ball(3), ConvexBody::cube(3)] {
        let mut inside_body = 0usize;
        let mut inside_half = 0usize;
        // A ball of half the circumradius, centered at the origin, sits
        // inside both bodies; its volume is kappa_3 (r/2)^3.
        let r_half = body.ball_radius().min(0.5) / 2.0;
        for _ in 0..n {
            let p = body.sample_uniform(&mut rng);
            inside_body += usize::from(body.contains(&p));
            inside_half += usize::from(p.norm() <= r_half);
        }
        let expected = kappa(3) * r_half.powi(3); // body volume is 1
        let observed = inside_half as f64 / n as f64;
        println!("{:?}", body.kind());
        println!("  containment: {inside_body}/{n}");
        println!(
            "  mass of {r_half:.4}-ball: observed {observed:.5}, expected {expected:.5}"
        );
        assert_eq!(inside_body, n);
        assert!((observed - expected).abs() < 4.0 * (expected / n as f64).sqrt());
    }
    println!("ok");
}
