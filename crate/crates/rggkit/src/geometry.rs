//! Convex bodies, uniform sampling, Haar-random 2-planes, projections, and
//! (d-2)-dimensional section volumes.
//!
//! Both supported bodies have volume exactly 1 and are centered at the
//! origin: the ball of radius `r_d = kappa_d^{-1/d}` and the cube of side 1.
//! Centering makes the ball case genuinely rotation invariant, which several
//! downstream checks rely on.
//!
//! A [`Plane2`] is an orthonormal 2-frame `(u1, u2)` spanning a linear plane
//! `L`; [`Plane2::project`] maps `p` to `(p.u1, p.u2)`. The fiber of `L` over
//! a projected point `q` is the affine subspace `q + L^perp`, and
//! [`section_volume`] returns the (d-2)-volume of its intersection with the
//! body. For the ball this is closed form,
//!
//! ```text
//!   vol_{d-2}((q + L^perp) ∩ B) = kappa_{d-2} (r_d^2 - |q|^2)^{(d-2)/2},
//! ```
//!
//! for the axis-aligned cube it is 0 or 1, and for oblique sections of the
//! cube it is estimated by Monte Carlo behind the same function. With the
//! convention `vol_0 = 1` on nonempty fibers, the d = 2 case degenerates to
//! the indicator of the body, which is exactly what makes the d = 2 moment
//! formulas come out with `I^(2) = 1`.

use rand::{Rng, RngExt};
use rand_distr::StandardNormal;

use crate::theory::{kappa, McEstimate};

/// Tolerance for the orthonormality invariant of sampled frames.
pub const ORTHO_TOL: f64 = 1e-12;

/// A point of `R^d`, d >= 2, all coordinates finite.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    pub coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 2);
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Vector { coords }
    }

    pub fn zeros(d: usize) -> Self {
        Vector::new(vec![0.0; d])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }
}

/// A point of the plane a 2-frame projects onto.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BodyKind {
    UnitVolumeBall,
    UnitCube,
}

/// A unit-volume convex body centered at the origin.
#[derive(Clone, Debug)]
pub struct ConvexBody {
    kind: BodyKind,
    dim: usize,
    /// Ball radius `r_d` (meaningless 0 for the cube).
    radius: f64,
}

impl ConvexBody {
    /// The ball of volume 1 in dimension d, radius `kappa_d^{-1/d}`.
    pub fn ball(d: usize) -> Self {
        assert!(d >= 2, "bodies need d >= 2");
        ConvexBody {
            kind: BodyKind::UnitVolumeBall,
            dim: d,
            radius: kappa(d).powf(-1.0 / d as f64),
        }
    }

    /// The cube `[-1/2, 1/2]^d`.
    pub fn cube(d: usize) -> Self {
        assert!(d >= 2, "bodies need d >= 2");
        ConvexBody {
            kind: BodyKind::UnitCube,
            dim: d,
            radius: 0.0,
        }
    }

    pub fn of_kind(kind: BodyKind, d: usize) -> Self {
        match kind {
            BodyKind::UnitVolumeBall => ConvexBody::ball(d),
            BodyKind::UnitCube => ConvexBody::cube(d),
        }
    }

    pub fn kind(&self) -> BodyKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ball radius `r_d`; panics for the cube.
    pub fn ball_radius(&self) -> f64 {
        assert_eq!(self.kind, BodyKind::UnitVolumeBall);
        self.radius
    }

    /// Radius of the smallest origin-centered ball containing the body.
    pub fn bounding_radius(&self) -> f64 {
        match self.kind {
            BodyKind::UnitVolumeBall => self.radius,
            BodyKind::UnitCube => 0.5 * (self.dim as f64).sqrt(),
        }
    }

    pub fn contains(&self, p: &Vector) -> bool {
        debug_assert_eq!(p.dim(), self.dim);
        match self.kind {
            BodyKind::UnitVolumeBall => p.dot(p) <= self.radius * self.radius,
            BodyKind::UnitCube => p.coords.iter().all(|c| c.abs() <= 0.5),
        }
    }

    /// One uniform point of the body. Ball: Gaussian direction with radius
    /// `r_d * U^{1/d}` (rejection free); cube: d independent uniforms.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        let d = self.dim;
        match self.kind {
            BodyKind::UnitCube => {
                Vector::new((0..d).map(|_| rng.random_range(-0.5..0.5)).collect())
            }
            BodyKind::UnitVolumeBall => loop {
                let g: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-12 {
                    continue;
                }
                let u: f64 = rng.random_range(0.0..1.0);
                let r = self.radius * u.powf(1.0 / d as f64);
                return Vector::new(g.into_iter().map(|x| x * r / norm).collect());
            },
        }
    }
}

/// An orthonormal 2-frame spanning a linear plane `L` of `R^d`.
#[derive(Clone, Debug)]
pub struct Plane2 {
    u1: Vector,
    u2: Vector,
}

impl Plane2 {
    /// Builds a plane from two explicit frame vectors, checking the
    /// orthonormality invariant at [`ORTHO_TOL`].
    pub fn from_frame(u1: Vector, u2: Vector) -> Result<Self, GeometryError> {
        if u1.dim() != u2.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: u1.dim(),
                got: u2.dim(),
            });
        }
        let ok = (u1.norm() - 1.0).abs() <= ORTHO_TOL
            && (u2.norm() - 1.0).abs() <= ORTHO_TOL
            && u1.dot(&u2).abs() <= ORTHO_TOL;
        if !ok {
            return Err(GeometryError::NotOrthonormal);
        }
        Ok(Plane2 { u1, u2 })
    }

    /// The frame `(e1, e2)` of the first two coordinate axes.
    pub fn coordinate(d: usize) -> Self {
        assert!(d >= 2);
        let mut u1 = vec![0.0; d];
        let mut u2 = vec![0.0; d];
        u1[0] = 1.0;
        u2[1] = 1.0;
        Plane2 {
            u1: Vector::new(u1),
            u2: Vector::new(u2),
        }
    }

    /// A Haar-random plane: a d x 2 standard Gaussian matrix orthonormalized
    /// by modified Gram-Schmidt, resampling on residuals below 1e-9. For
    /// d = 2 the plane is unique and the identity frame is returned.
    pub fn sample_haar<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        assert!(d >= 2);
        if d == 2 {
            return Plane2::coordinate(2);
        }
        loop {
            let g1 = Vector::new((0..d).map(|_| rng.sample(StandardNormal)).collect());
            let n1 = g1.norm();
            if n1 < 1e-9 {
                continue;
            }
            let u1 = Vector::new(g1.coords.iter().map(|x| x / n1).collect());
            let g2 = Vector::new((0..d).map(|_| rng.sample(StandardNormal)).collect());
            let g2 = g2.add_scaled(-g2.dot(&u1), &u1);
            let n2 = g2.norm();
            if n2 < 1e-9 {
                continue;
            }
            let u2 = Vector::new(g2.coords.iter().map(|x| x / n2).collect());
            return Plane2 { u1, u2 };
        }
    }

    pub fn dim(&self) -> usize {
        self.u1.dim()
    }

    pub fn u1(&self) -> &Vector {
        &self.u1
    }

    pub fn u2(&self) -> &Vector {
        &self.u2
    }

    /// Orthogonal projection onto the plane, in frame coordinates.
    pub fn project(&self, p: &Vector) -> Point2 {
        assert_eq!(
            p.dim(),
            self.dim(),
            "projection dimension mismatch: point has d = {}, plane has d = {}",
            p.dim(),
            self.dim()
        );
        Point2::new(p.dot(&self.u1), p.dot(&self.u2))
    }

    /// An orthonormal basis of `L^perp`, obtained by Gram-Schmidt over the
    /// standard basis against the frame.
    pub fn complement_basis(&self) -> Vec<Vector> {
        let d = self.dim();
        let mut basis: Vec<Vector> = Vec::with_capacity(d - 2);
        for k in 0..d {
            let mut v = vec![0.0; d];
            v[k] = 1.0;
            let mut v = Vector::new(v);
            v = v.add_scaled(-v.dot(&self.u1), &self.u1);
            v = v.add_scaled(-v.dot(&self.u2), &self.u2);
            for b in &basis {
                v = v.add_scaled(-v.dot(b), b);
            }
            let n = v.norm();
            if n > 1e-9 {
                basis.push(Vector::new(v.coords.iter().map(|x| x / n).collect()));
            }
            if basis.len() == d - 2 {
                break;
            }
        }
        assert_eq!(basis.len(), d - 2, "degenerate frame");
        basis
    }

    /// True when both frame vectors are signed standard basis vectors (up to
    /// [`ORTHO_TOL`]), i.e. the plane is a coordinate plane.
    pub fn is_axis_aligned(&self) -> bool {
        let axis = |u: &Vector| {
            let mut big = 0;
            for c in &u.coords {
                if (c.abs() - 1.0).abs() <= ORTHO_TOL {
                    big += 1;
                } else if c.abs() > ORTHO_TOL {
                    return false;
                }
            }
            big == 1
        };
        axis(&self.u1) && axis(&self.u2)
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("frame vectors are not orthonormal within {ORTHO_TOL:e}")]
    NotOrthonormal,
}

/// `vol_{d-2}((q + L^perp) ∩ W)` for a projected point `q`.
///
/// Ball and axis-aligned cube sections are closed form; oblique cube sections
/// are delegated to [`section_volume_mc`] with a fixed internal sample count
/// and a seed derived from the bits of `q`, so the function stays
/// deterministic. `vol_0` of a nonempty point fiber is 1 (d = 2 convention).
pub fn section_volume(w: &ConvexBody, l: &Plane2, q: Point2) -> f64 {
    debug_assert_eq!(w.dim(), l.dim());
    let d = w.dim();
    match w.kind() {
        BodyKind::UnitVolumeBall => {
            let r = w.ball_radius();
            let s = r * r - q.x * q.x - q.y * q.y;
            if s < 0.0 {
                0.0
            } else {
                kappa(d - 2) * s.powf((d as f64 - 2.0) / 2.0)
            }
        }
        BodyKind::UnitCube => {
            if l.is_axis_aligned() {
                // The fiber is the full (d-2)-cube of the remaining axes,
                // present exactly when q lies in the projected unit square.
                if q.x.abs() <= 0.5 && q.y.abs() <= 0.5 {
                    1.0
                } else {
                    0.0
                }
            } else {
                let mut h = std::hash::DefaultHasher::new();
                use std::hash::{Hash, Hasher};
                q.x.to_bits().hash(&mut h);
                q.y.to_bits().hash(&mut h);
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(h.finish());
                section_volume_mc(w, l, q, OBLIQUE_SECTION_SAMPLES, &mut rng).value
            }
        }
    }
}

use rand::SeedableRng;

/// Sample count used when [`section_volume`] has to fall back to Monte Carlo.
pub const OBLIQUE_SECTION_SAMPLES: u64 = 1 << 15;

/// Unbiased Monte Carlo fiber volume: the fiber over `q` lies in the
/// (d-2)-ball of radius `sqrt(R^2 - |q|^2)` of `L^perp` (R the bounding
/// radius), so we sample the enclosing box and scale by its volume. Returns
/// 0 exactly when that box is empty.
pub fn section_volume_mc<R: Rng + ?Sized>(
    w: &ConvexBody,
    l: &Plane2,
    q: Point2,
    n: u64,
    rng: &mut R,
) -> McEstimate {
    assert!(n >= 1);
    debug_assert_eq!(w.dim(), l.dim());
    let d = w.dim();
    let rb = w.bounding_radius();
    let h2 = rb * rb - q.x * q.x - q.y * q.y;
    if h2 <= 0.0 {
        return McEstimate::exact(0.0, n);
    }
    let h = h2.sqrt();
    let base = l.u1().coords.iter().zip(&l.u2().coords).zip(0..d);
    let mut origin = Vector::zeros(d);
    for ((a, b), k) in base {
        origin.coords[k] = q.x * a + q.y * b;
    }
    if d == 2 {
        // Zero-dimensional fiber: the box volume is 1 and the single sample
        // is the membership indicator of the fiber point itself.
        let v = if w.contains(&origin) { 1.0 } else { 0.0 };
        return McEstimate::exact(v, n);
    }
    let perp = l.complement_basis();
    let box_vol = (2.0 * h).powi(d as i32 - 2);
    let mut hits: u64 = 0;
    let mut p = Vector::zeros(d);
    for _ in 0..n {
        p.coords.copy_from_slice(&origin.coords);
        for b in &perp {
            let s = rng.random_range(-h..h);
            for k in 0..d {
                p.coords[k] += s * b.coords[k];
            }
        }
        if w.contains(&p) {
            hits += 1;
        }
    }
    McEstimate::from_hits(hits, n, box_vol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ball_radius_d3() {
        // r_d = kappa_d^{-1/d}; d = 3 value cross-checked as (3/(4 pi))^{1/3}.
        let b = ConvexBody::ball(3);
        assert!((b.ball_radius() - 0.6203504908994001).abs() < 1e-15);
    }

    #[test]
    fn cube_and_ball_contain_their_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 2..=4 {
            for w in [ConvexBody::ball(d), ConvexBody::cube(d)] {
                for _ in 0..500 {
                    let p = w.sample_uniform(&mut rng);
                    assert!(w.contains(&p));
                    assert_eq!(p.dim(), d);
                }
            }
        }
    }

    #[test]
    fn cube_samples_in_unit_box_d2() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w = ConvexBody::cube(2);
        for _ in 0..200 {
            let p = w.sample_uniform(&mut rng);
            assert!(p.coords.iter().all(|c| (-0.5..=0.5).contains(c)));
        }
    }

    #[test]
    fn coordinate_plane_projects_to_leading_coords() {
        let l = Plane2::coordinate(4);
        let p = Vector::new(vec![3.0, -1.0, 7.0, 2.0]);
        let q = l.project(&p);
        assert_eq!((q.x, q.y), (3.0, -1.0));
    }

    #[test]
    fn projection_of_frame_combination() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let l = Plane2::sample_haar(5, &mut rng);
            let zero = Vector::zeros(5);
            assert_eq!(l.project(&zero), Point2::new(0.0, 0.0));
            let q1 = l.project(l.u1());
            assert!((q1.x - 1.0).abs() <= ORTHO_TOL && q1.y.abs() <= ORTHO_TOL);
            // u1 + 2 u2 + w with w in the complement projects to (1, 2).
            let perp = l.complement_basis();
            let p = l
                .u1()
                .add_scaled(2.0, l.u2())
                .add_scaled(0.7, &perp[0])
                .add_scaled(-1.3, &perp[1]);
            let q = l.project(&p);
            assert!((q.x - 1.0).abs() <= 1e-12 && (q.y - 2.0).abs() <= 1e-12);
        }
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn projection_dimension_mismatch_panics() {
        let l = Plane2::coordinate(3);
        let p = Vector::new(vec![1.0, 2.0, 3.0, 4.0]);
        let _ = l.project(&p);
    }

    #[test]
    fn haar_frames_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in [2usize, 3, 4, 7] {
            for _ in 0..100 {
                let l = Plane2::sample_haar(d, &mut rng);
                assert!((l.u1().norm() - 1.0).abs() <= ORTHO_TOL);
                assert!((l.u2().norm() - 1.0).abs() <= ORTHO_TOL);
                assert!(l.u1().dot(l.u2()).abs() <= ORTHO_TOL);
            }
        }
    }

    #[test]
    fn haar_d2_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let l = Plane2::sample_haar(2, &mut rng);
        assert_eq!(l.u1().coords, vec![1.0, 0.0]);
        assert_eq!(l.u2().coords, vec![0.0, 1.0]);
    }

    #[test]
    fn projection_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let l = Plane2::sample_haar(4, &mut rng);
            let p = ConvexBody::ball(4).sample_uniform(&mut rng);
            let q = ConvexBody::ball(4).sample_uniform(&mut rng);
            let (a, b): (f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let combo = Vector::new(
                p.coords
                    .iter()
                    .zip(&q.coords)
                    .map(|(x, y)| a * x + b * y)
                    .collect(),
            );
            let lhs = l.project(&combo);
            let (pp, pq) = (l.project(&p), l.project(&q));
            assert!((lhs.x - (a * pp.x + b * pq.x)).abs() <= 1e-12);
            assert!((lhs.y - (a * pp.y + b * pq.y)).abs() <= 1e-12);
        }
    }

    #[test]
    fn ball_section_closed_form() {
        let w = ConvexBody::ball(3);
        let l = Plane2::coordinate(3);
        // Central chord has length 2 r_3.
        let s0 = section_volume(&w, &l, Point2::new(0.0, 0.0));
        assert!((s0 - 1.2407009817988002).abs() < 1e-15);
        // Outside the projected disk the section is empty.
        assert_eq!(section_volume(&w, &l, Point2::new(0.7, 0.0)), 0.0);
    }

    #[test]
    fn ball_section_d2_is_indicator() {
        let w = ConvexBody::ball(2);
        let l = Plane2::coordinate(2);
        assert_eq!(section_volume(&w, &l, Point2::new(0.1, 0.2)), 1.0);
        assert_eq!(section_volume(&w, &l, Point2::new(0.9, 0.0)), 0.0);
    }

    #[test]
    fn cube_axis_section_is_unit() {
        for d in [3usize, 4] {
            let w = ConvexBody::cube(d);
            let l = Plane2::coordinate(d);
            assert_eq!(section_volume(&w, &l, Point2::new(0.2, -0.4)), 1.0);
            assert_eq!(section_volume(&w, &l, Point2::new(0.6, 0.0)), 0.0);
        }
    }

    #[test]
    fn section_mc_agrees_with_closed_form() {
        // Spec invariant: 20 random q, agreement within 4 MC standard errors.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = ConvexBody::ball(3);
        let l = Plane2::sample_haar(3, &mut rng);
        let r = w.ball_radius();
        for _ in 0..20 {
            let q = Point2::new(rng.random_range(-r..r), rng.random_range(-r..r));
            let exact = section_volume(&w, &l, q);
            let mc = section_volume_mc(&w, &l, q, 100_000, &mut rng);
            let tol = 4.0 * mc.std_error + 1e-12;
            assert!(
                (mc.value - exact).abs() <= tol,
                "q = {q:?}: mc {} vs exact {exact} (tol {tol})",
                mc.value
            );
        }
    }

    #[test]
    fn section_mc_cube_axis_fiber_is_full() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let w = ConvexBody::cube(4);
        let l = Plane2::coordinate(4);
        let mc = section_volume_mc(&w, &l, Point2::new(0.1, 0.3), 100_000, &mut rng);
        assert!((mc.value - 1.0).abs() <= 4.0 * mc.std_error + 1e-12);
    }

    #[test]
    fn section_mc_outside_projection_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = ConvexBody::ball(4);
        let l = Plane2::coordinate(4);
        let mc = section_volume_mc(&w, &l, Point2::new(1.0, 1.0), 100, &mut rng);
        assert_eq!(mc.value, 0.0);
        assert_eq!(mc.std_error, 0.0);
    }

    #[test]
    fn from_frame_rejects_bad_frames() {
        let u1 = Vector::new(vec![1.0, 0.0, 0.0]);
        let skew = Vector::new(vec![0.5, 0.5, 0.0]);
        assert_eq!(
            Plane2::from_frame(u1, skew).unwrap_err(),
            GeometryError::NotOrthonormal
        );
    }
}
