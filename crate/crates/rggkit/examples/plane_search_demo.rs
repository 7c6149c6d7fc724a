//! Random-plane search: project one graph onto K Haar planes, tabulate
//! crossings and stress per plane, and compare the best plane against the
//! crossing-lemma floor.
//!
//! ```bash
//! cargo run --release --example plane_search_demo
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rggkit::experiments::plane_search;
use rggkit::geometry::ConvexBody;
use rggkit::pointprocess::{build_rgg, sample_poisson};
use rggkit::stress::WeightKind;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let body = ConvexBody::ball(3);
    // Dense-ish so the lemma floor applies (m >= 7n).
    let pts = sample_poisson(&body, 400.0, &mut rng).unwrap();
    let g = build_rgg(pts, 0.35);
    println!("n = {}, m = {} (m/n = {:.1})", g.n(), g.m(), g.m() as f64 / g.n() as f64);

    let report = plane_search(&g, 24, WeightKind::InverseSquare, &mut rng);
    for (i, o) in report.outcomes.iter().enumerate() {
        println!("  plane {i:>2}: cr = {:>7}, stress = {:.2}", o.cr, o.stress);
    }
    println!(
        "best cr at plane {} ({}), best stress at plane {} ({:.2})",
        report.best_cr,
        report.outcomes[report.best_cr].cr,
        report.best_stress,
        report.outcomes[report.best_stress].stress
    );
    println!("crossing lemma floor = {:.1}", report.lemma_floor);
    if let Some(r) = report.ratio_vs_floor {
        println!("best-plane ratio vs floor = {r:.2} (>= 1 necessarily)");
        assert!(r >= 1.0);
    }
    println!(
        "cross-plane pearson(cr, stress) = {:?}",
        report.pearson_across_planes
    );
    println!(
        "fraction of planes at most half the mean cr = {:.3}",
        report.frac_below_half_mean
    );

    let crs: Vec<u64> = report.outcomes.iter().map(|o| o.cr).collect();
    let mut sorted = crs.clone();
    sorted.sort_unstable();
    assert!(crs[report.best_cr] <= sorted[sorted.len() / 2], "min <= median");
}
