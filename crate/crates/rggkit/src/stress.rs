//! Stress of a planar projection: over all unordered pairs of distinct
//! points, the weighted squared gap between the original distance and the
//! projected distance,
//!
//! ```text
//! stress = sum_{i<j} w(x_i, x_j) (|x_i - x_j| - |L x_i - L x_j|)^2 .
//! ```
//!
//! Orthogonal projections are 1-Lipschitz, so the gap is always >= 0. With
//! the inverse-square weight `w = |x_i - x_j|^-2` each summand equals
//! `(1 - dL/d0)^2`, which lies in `[0, 1]`; that normalization makes the
//! total comparable across scales and is the default throughout.

use crate::geometry::{Plane2, Point2, Vector};
use crate::pointprocess::GeometricGraph;

/// Pair weight `w(x, y)` in the stress sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum WeightKind {
    /// `w = d0^-2`: each summand is the squared relative distance loss.
    InverseSquare,
    /// `w = 1`: raw squared distance loss.
    Unit,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum StressError {
    #[error("points {0} and {1} coincide; inverse-square weight is undefined")]
    CoincidentPoints(usize, usize),
}

/// The stress contribution of one pair. Panics if the points coincide and
/// the weight is inverse-square.
pub fn stress_term(p: &Vector, q: &Vector, l: &Plane2, w: WeightKind) -> f64 {
    let d0 = p.dist(q);
    let dl = l.project(p).dist(&l.project(q));
    let diff = d0 - dl;
    match w {
        WeightKind::Unit => diff * diff,
        WeightKind::InverseSquare => {
            assert!(d0 > 0.0, "coincident points have no inverse-square weight");
            let rel = diff / d0;
            rel * rel
        }
    }
}

/// Stress of the point set of `g` under the projection to `l`, summed over
/// all unordered pairs (the edge set plays no role). Coincident pairs are an
/// error under [`WeightKind::InverseSquare`]; they have probability zero for
/// Poisson samples but can occur in files.
///
/// The sum is accumulated row by row in index order, so the result is
/// bit-reproducible for a given input regardless of thread count.
pub fn stress_of_projection(
    g: &GeometricGraph,
    l: &Plane2,
    w: WeightKind,
) -> Result<f64, StressError> {
    assert_eq!(
        g.dim,
        l.dim(),
        "graph dimension {} does not match plane dimension {}",
        g.dim,
        l.dim()
    );
    let proj: Vec<Point2> = g.points.iter().map(|p| l.project(p)).collect();
    let n = g.points.len();
    let mut total = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in (i + 1)..n {
            let d0 = g.points[i].dist(&g.points[j]);
            let dl = proj[i].dist(&proj[j]);
            let diff = d0 - dl;
            row += match w {
                WeightKind::Unit => diff * diff,
                WeightKind::InverseSquare => {
                    if d0 == 0.0 {
                        return Err(StressError::CoincidentPoints(i, j));
                    }
                    let rel = diff / d0;
                    rel * rel
                }
            };
        }
        total += row;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexBody;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graph_of(points: Vec<Vector>) -> GeometricGraph {
        GeometricGraph {
            dim: points[0].dim(),
            delta: 0.0,
            points,
            edges: vec![],
        }
    }

    #[test]
    fn planar_input_has_zero_stress() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = Plane2::sample_haar(2, &mut rng);
        let pts = vec![
            Vector::new(vec![0.1, 0.2]),
            Vector::new(vec![-0.4, 0.3]),
            Vector::new(vec![0.0, -0.25]),
        ];
        let g = graph_of(pts);
        assert_eq!(
            stress_of_projection(&g, &l, WeightKind::InverseSquare).unwrap(),
            0.0
        );
    }

    #[test]
    fn pair_inside_the_plane_contributes_nothing() {
        let l = Plane2::from_frame(
            Vector::new(vec![1.0, 0.0, 0.0]),
            Vector::new(vec![0.0, 1.0, 0.0]),
        )
        .unwrap();
        let p = Vector::new(vec![0.3, -0.2, 0.0]);
        let q = Vector::new(vec![-0.1, 0.4, 0.0]);
        assert_eq!(stress_term(&p, &q, &l, WeightKind::InverseSquare), 0.0);
        assert_eq!(stress_term(&p, &q, &l, WeightKind::Unit), 0.0);
    }

    #[test]
    fn pair_orthogonal_to_the_plane_loses_everything() {
        let l = Plane2::from_frame(
            Vector::new(vec![1.0, 0.0, 0.0]),
            Vector::new(vec![0.0, 1.0, 0.0]),
        )
        .unwrap();
        let p = Vector::new(vec![0.0, 0.0, 0.0]);
        let q = Vector::new(vec![0.0, 0.0, 0.7]);
        assert!((stress_term(&p, &q, &l, WeightKind::InverseSquare) - 1.0).abs() < 1e-15);
        assert!((stress_term(&p, &q, &l, WeightKind::Unit) - 0.49).abs() < 1e-15);
    }

    #[test]
    fn tilting_out_of_plane_increases_the_term() {
        let l = Plane2::from_frame(
            Vector::new(vec![1.0, 0.0, 0.0]),
            Vector::new(vec![0.0, 1.0, 0.0]),
        )
        .unwrap();
        let p = Vector::new(vec![0.0, 0.0, 0.0]);
        let mut last = -1.0;
        for k in 0..=10 {
            let th = std::f64::consts::FRAC_PI_2 * k as f64 / 10.0;
            let q = Vector::new(vec![th.cos(), 0.0, th.sin()]);
            let term = stress_term(&p, &q, &l, WeightKind::InverseSquare);
            assert!(term >= last);
            last = term;
        }
        assert!((last - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_square_terms_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = ConvexBody::ball(4);
        let l = Plane2::sample_haar(4, &mut rng);
        for _ in 0..200 {
            let p = w.sample_uniform(&mut rng);
            let q = w.sample_uniform(&mut rng);
            let term = stress_term(&p, &q, &l, WeightKind::InverseSquare);
            assert!((0.0..=1.0).contains(&term), "term {term} out of range");
        }
    }

    #[test]
    fn in_plane_rotation_of_the_frame_leaves_stress_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let w = ConvexBody::ball(3);
        let pts: Vec<Vector> = (0..40).map(|_| w.sample_uniform(&mut rng)).collect();
        let g = graph_of(pts);
        let l = Plane2::sample_haar(3, &mut rng);
        let s0 = stress_of_projection(&g, &l, WeightKind::InverseSquare).unwrap();
        let th = 0.83f64;
        let (c, s) = (th.cos(), th.sin());
        let mut u1 = Vector::zeros(3);
        let mut u2 = Vector::zeros(3);
        for i in 0..3 {
            u1.coords[i] = c * l.u1().coords[i] + s * l.u2().coords[i];
            u2.coords[i] = -s * l.u1().coords[i] + c * l.u2().coords[i];
        }
        let lr = Plane2::from_frame(u1, u2).unwrap();
        let s1 = stress_of_projection(&g, &lr, WeightKind::InverseSquare).unwrap();
        assert!((s0 - s1).abs() <= 1e-9 * s0.max(1.0), "{s0} vs {s1}");
    }

    #[test]
    fn coincident_points_error_only_for_inverse_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let l = Plane2::sample_haar(3, &mut rng);
        let pts = vec![
            Vector::new(vec![0.1, 0.1, 0.1]),
            Vector::new(vec![0.1, 0.1, 0.1]),
            Vector::new(vec![0.3, -0.1, 0.0]),
        ];
        let g = graph_of(pts);
        assert_eq!(
            stress_of_projection(&g, &l, WeightKind::InverseSquare).unwrap_err(),
            StressError::CoincidentPoints(0, 1)
        );
        assert!(stress_of_projection(&g, &l, WeightKind::Unit).is_ok());
    }

    #[test]
    fn matches_naive_pair_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let w = ConvexBody::cube(3);
        let pts: Vec<Vector> = (0..25).map(|_| w.sample_uniform(&mut rng)).collect();
        let l = Plane2::sample_haar(3, &mut rng);
        let g = graph_of(pts.clone());
        let fast = stress_of_projection(&g, &l, WeightKind::Unit).unwrap();
        let mut naive = 0.0;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                naive += stress_term(&pts[i], &pts[j], &l, WeightKind::Unit);
            }
        }
        assert!((fast - naive).abs() <= 1e-12 * naive.max(1.0));
    }
}
