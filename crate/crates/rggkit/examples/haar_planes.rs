//! Haar-random 2-planes: orthonormal frames, projections, and the fact that
//! projection never increases distance.
//!
//! ```bash
//! cargo run --release --example haar_planes
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rggkit::geometry::{ConvexBody, Plane2};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let d = 4;
    let body = ConvexBody::ball(d);

    for trial in 0..3 {
        let l = Plane2::sample_haar(d, &mut rng);
        let (u1, u2) = (l.u1(), l.u2());
        println!(
            "plane {trial}: |u1| = {:.12}, |u2| = {:.12}, <u1,u2> = {:+.3e}",
            u1.norm(),
            u2.norm(),
            u1.dot(u2)
        );

        let a = body.sample_uniform(&mut rng);
        let b = body.sample_uniform(&mut rng);
        let d0 = a.dist(&b);
        let dl = l.project(&a).dist(&l.project(&b));
        println!("  pair distance {d0:.6} -> projected {dl:.6}");
        assert!(dl <= d0 + 1e-12, "projection is a contraction");
    }

    // d = 2 is the degenerate case: the plane is the identity frame and
    // projection changes nothing.
    let l2 = Plane2::sample_haar(2, &mut ChaCha8Rng::seed_from_u64(99));
    let p = ConvexBody::ball(2).sample_uniform(&mut rng);
    let q = l2.project(&p);
    assert_eq!((q.x, q.y), (p.coords[0], p.coords[1]));
    println!("d=2 projection is the identity");
}
