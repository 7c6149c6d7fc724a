//! Stress of a projected point set under both weight kinds.
//!
//! Stress sums w(p,q) (|p-q| - |p_L - q_L|)^2 over all point pairs; with the
//! inverse-square weight each term is the squared relative distance
//! distortion, so the total is scale-free.
//!
//! ```bash
//! cargo run --release --example stress_eval
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rggkit::geometry::{ConvexBody, Plane2};
use rggkit::pointprocess::{build_rgg, sample_poisson};
use rggkit::stress::{stress_of_projection, WeightKind};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let body = ConvexBody::ball(3);
    let pts = sample_poisson(&body, 400.0, &mut rng).unwrap();
    let g = build_rgg(pts, 0.2);
    println!("n = {}, m = {}", g.n(), g.m());

    for _ in 0..4 {
        let l = Plane2::sample_haar(3, &mut rng);
        let inv = stress_of_projection(&g, &l, WeightKind::InverseSquare).unwrap();
        let unit = stress_of_projection(&g, &l, WeightKind::Unit).unwrap();
        println!("  plane: inverse-square stress = {inv:.3}, unit stress = {unit:.5}");
    }

    // Points already inside a plane project onto it with zero distortion.
    let axis = Plane2::coordinate(3);
    let flat: Vec<_> = g
        .points
        .iter()
        .map(|p| rggkit::geometry::Vector::new(vec![p.coords[0], p.coords[1], 0.0]))
        .collect();
    let flat_g = build_rgg(flat, g.delta);
    let s = stress_of_projection(&flat_g, &axis, WeightKind::InverseSquare).unwrap();
    println!("flattened copy against its own plane: stress = {s}");
    assert_eq!(s, 0.0);
}
