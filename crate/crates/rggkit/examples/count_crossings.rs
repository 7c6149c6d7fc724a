//! Crossing counting on straight-line drawings: the quadratic oracle vs the
//! sweep, the K5 pentagon, and the crossing lemma floor.
//!
//! ```bash
//! cargo run --release --example count_crossings
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rggkit::crossings::{
    count_crossings_bruteforce, count_crossings_sweep, crossing_lemma_floor,
    crossing_number_of_projection, Drawing2,
};
use rggkit::geometry::{Plane2, Point2};
use rggkit::pointprocess::{build_rgg, sample_poisson};

fn main() {
    // K5 on a regular pentagon: every pair of "diagonal" edges crosses once.
    let positions: Vec<Point2> = (0..5)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / 5.0;
            Point2::new(a.cos(), a.sin())
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..5u32 {
        for j in (i + 1)..5 {
            edges.push((i, j));
        }
    }
    let k5 = Drawing2 { positions, edges };
    let bf = count_crossings_bruteforce(&k5);
    let sw = count_crossings_sweep(&k5);
    println!("K5 pentagon: brute = {}, sweep = {}", bf.count, sw.count);
    assert_eq!((bf.count, sw.count), (5, 5));

    // A projected random geometric graph; the two counters must agree.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let body = rggkit::geometry::ConvexBody::ball(3);
    let pts = sample_poisson(&body, 500.0, &mut rng).unwrap();
    let g = build_rgg(pts, 0.18);
    let plane = Plane2::sample_haar(3, &mut rng);
    let cr = crossing_number_of_projection(&g, &plane);
    println!(
        "RGG: n = {}, m = {}, crossings = {} (degenerate fallback: {})",
        g.n(),
        g.m(),
        cr.count,
        cr.degenerate
    );

    let floor = crossing_lemma_floor(g.n() as u64, g.m() as u64);
    if g.m() as u64 >= 7 * g.n() as u64 {
        println!("crossing lemma floor m^3/(20 n^2) = {floor:.1}");
        assert!(cr.count as f64 >= floor);
    } else {
        println!("m < 7n, lemma floor is 0");
    }
}
