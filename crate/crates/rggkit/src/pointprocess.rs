//! Poisson and fixed-n point samples in a convex body, and the geometric
//! graph with edges between all pairs at distance at most delta.
//!
//! Graph construction uses a uniform cell grid of side delta, which is
//! expected O(n + m) for the bounded bodies used here; the result is required
//! to be identical to the all-pairs oracle, and both compare squared
//! distances against `delta^2` so they cannot disagree by a rounding ulp.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use rand::{Rng, RngExt};
use rand_distr::Poisson;

use crate::geometry::{ConvexBody, Vector};
use crate::theory::kappa;

/// A point set together with its threshold graph. Edges are stored as
/// `(i, j)` with `i < j`, sorted lexicographically, with no duplicates.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricGraph {
    pub dim: usize,
    pub delta: f64,
    pub points: Vec<Vector>,
    pub edges: Vec<(u32, u32)>,
}

impl GeometricGraph {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }
}

/// How the threshold delta scales with the intensity t.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegimeSchedule {
    /// `t * delta^d = c` for all t.
    Thermodynamic { c: f64 },
    /// `t * delta^d = c * t^(1-beta)`, beta < 1, so the mean degree grows.
    Dense { c: f64, beta: f64 },
    /// Constant delta.
    Fixed { delta: f64 },
}

impl RegimeSchedule {
    pub fn delta(&self, t: f64, d: usize) -> f64 {
        assert!(t > 0.0);
        let inv_d = 1.0 / d as f64;
        match *self {
            RegimeSchedule::Thermodynamic { c } => (c / t).powf(inv_d),
            RegimeSchedule::Dense { c, beta } => {
                assert!(beta < 1.0);
                (c * t.powf(-beta)).powf(inv_d)
            }
            RegimeSchedule::Fixed { delta } => delta,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PointProcessError {
    #[error("intensity must be positive, got {0}")]
    NonPositiveIntensity(f64),
}

/// Poisson(t) many i.i.d. uniform points in the body.
pub fn sample_poisson<R: Rng + ?Sized>(
    w: &ConvexBody,
    t: f64,
    rng: &mut R,
) -> Result<Vec<Vector>, PointProcessError> {
    if !(t > 0.0) {
        return Err(PointProcessError::NonPositiveIntensity(t));
    }
    let pois = Poisson::new(t).map_err(|_| PointProcessError::NonPositiveIntensity(t))?;
    let n: f64 = rng.sample(pois);
    Ok(sample_binomial(w, n as usize, rng))
}

/// Exactly n i.i.d. uniform points in the body.
pub fn sample_binomial<R: Rng + ?Sized>(w: &ConvexBody, n: usize, rng: &mut R) -> Vec<Vector> {
    (0..n).map(|_| w.sample_uniform(rng)).collect()
}

/// All pairs at distance <= delta, by exhaustive comparison. This is the
/// oracle `build_rgg` is tested against.
pub fn edges_all_pairs(points: &[Vector], delta: f64) -> Vec<(u32, u32)> {
    let d2 = delta * delta;
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].dist_sq(&points[j]) <= d2 {
                edges.push((i as u32, j as u32));
            }
        }
    }
    edges
}

// Cell keys pack one 12-bit signed index per axis into a u64, which covers
// d <= 5 and |coordinate| < 2048 * delta. Out-of-range inputs take the
// all-pairs path instead; correctness never depends on the grid.
const GRID_MAX_DIM: usize = 5;
const GRID_HALF_RANGE: i64 = 2048;

fn cell_key(p: &Vector, delta: f64) -> Option<u64> {
    let mut key = 0u64;
    for (axis, c) in p.coords.iter().enumerate() {
        let idx = (c / delta).floor() as i64;
        if idx.abs() >= GRID_HALF_RANGE {
            return None;
        }
        key |= ((idx + GRID_HALF_RANGE) as u64) << (12 * axis);
    }
    Some(key)
}

/// The delta-threshold graph on the given points (inclusive comparison).
pub fn build_rgg(points: Vec<Vector>, delta: f64) -> GeometricGraph {
    assert!(delta > 0.0, "delta must be positive");
    assert!(points.len() < u32::MAX as usize);
    let dim = points.first().map_or(2, Vector::dim);
    let mut edges = if dim > GRID_MAX_DIM {
        edges_all_pairs(&points, delta)
    } else {
        build_edges_grid(&points, delta).unwrap_or_else(|| edges_all_pairs(&points, delta))
    };
    edges.sort_unstable();
    GeometricGraph {
        dim,
        delta,
        points,
        edges,
    }
}

fn build_edges_grid(points: &[Vector], delta: f64) -> Option<Vec<(u32, u32)>> {
    let dim = points.first().map_or(2, Vector::dim);
    let d2 = delta * delta;
    let mut cells: HashMap<u64, Vec<u32>> = HashMap::new();
    let mut keys = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let key = cell_key(p, delta)?;
        keys.push(key);
        cells.entry(key).or_default().push(i as u32);
    }
    // Neighbor cell offsets as packed key deltas, one per point of
    // {-1, 0, 1}^d.
    let mut offsets = vec![0i64];
    for axis in 0..dim {
        let step = 1i64 << (12 * axis);
        let mut next = Vec::with_capacity(offsets.len() * 3);
        for &o in &offsets {
            next.extend([o - step, o, o + step]);
        }
        offsets = next;
    }
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let i = i as u32;
        let key = keys[i as usize] as i64;
        for &off in &offsets {
            let Some(bucket) = cells.get(&((key + off) as u64)) else {
                continue;
            };
            for &j in bucket {
                if j < i && points[j as usize].dist_sq(p) <= d2 {
                    edges.push((j, i));
                }
            }
        }
    }
    Some(edges)
}

/// Leading term of the expected edge count, `(kappa_d / 2) t^2 delta^d`.
/// The boundary correction is of relative order delta and is treated as an
/// error budget by callers, not computed here.
pub fn expected_edges(w: &ConvexBody, t: f64, delta: f64) -> f64 {
    assert!(t > 0.0 && delta > 0.0);
    0.5 * kappa(w.dim()) * t * t * delta.powi(w.dim() as i32)
}

#[derive(Debug, thiserror::Error)]
pub enum GraphParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

fn malformed(line: usize, msg: impl Into<String>) -> GraphParseError {
    GraphParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

/// Writes the text dump format: `d n delta`, n coordinate lines, `m`, m edge
/// lines. Floats carry 17 significant digits so the dump round-trips.
pub fn write_graph<W: Write>(g: &GeometricGraph, out: &mut W) -> io::Result<()> {
    writeln!(out, "{} {} {}", g.dim, g.n(), fmt_f64(g.delta))?;
    for p in &g.points {
        let row: Vec<String> = p.coords.iter().map(|&c| fmt_f64(c)).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    writeln!(out, "{}", g.m())?;
    for &(i, j) in &g.edges {
        writeln!(out, "{i} {j}")?;
    }
    Ok(())
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Reads the dump format back, validating dimensions, indices, and the edge
/// distance invariant (with a 1e-12 relative slack at the boundary).
pub fn read_graph<R: BufRead>(input: R) -> Result<GeometricGraph, GraphParseError> {
    let mut lines = input.lines().enumerate();
    let mut next_line = |ctx: &str| -> Result<(usize, String), GraphParseError> {
        match lines.next() {
            Some((idx, Ok(text))) => Ok((idx + 1, text)),
            Some((_, Err(e))) => Err(GraphParseError::Io(e)),
            None => Err(malformed(0, format!("unexpected end of file, wanted {ctx}"))),
        }
    };

    let (lno, header) = next_line("header `d n delta`")?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(malformed(lno, "header must be `d n delta`"));
    }
    let dim: usize = parts[0]
        .parse()
        .map_err(|_| malformed(lno, "bad dimension"))?;
    if dim < 2 {
        return Err(malformed(lno, "dimension must be at least 2"));
    }
    let n: usize = parts[1]
        .parse()
        .map_err(|_| malformed(lno, "bad point count"))?;
    let delta: f64 = parts[2].parse().map_err(|_| malformed(lno, "bad delta"))?;
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(malformed(lno, "delta must be positive and finite"));
    }

    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let (lno, text) = next_line("a coordinate line")?;
        let coords: Result<Vec<f64>, _> = text.split_whitespace().map(str::parse).collect();
        let coords = coords.map_err(|_| malformed(lno, "bad coordinate"))?;
        if coords.len() != dim {
            return Err(malformed(
                lno,
                format!("expected {dim} coordinates, got {}", coords.len()),
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(malformed(lno, "coordinates must be finite"));
        }
        points.push(Vector::new(coords));
    }

    let (lno, mline) = next_line("edge count")?;
    let m: usize = mline
        .trim()
        .parse()
        .map_err(|_| malformed(lno, "bad edge count"))?;
    let mut edges = Vec::with_capacity(m);
    let slack = delta * (1.0 + 1e-12);
    for _ in 0..m {
        let (lno, text) = next_line("an edge line")?;
        let parts: Vec<&str> = text.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(malformed(lno, "edge line must be `i j`"));
        }
        let i: u32 = parts[0].parse().map_err(|_| malformed(lno, "bad index"))?;
        let j: u32 = parts[1].parse().map_err(|_| malformed(lno, "bad index"))?;
        if i == j {
            return Err(malformed(lno, "self-loop"));
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if j as usize >= n {
            return Err(malformed(lno, format!("index {j} out of range (n = {n})")));
        }
        if points[i as usize].dist(&points[j as usize]) > slack {
            return Err(malformed(
                lno,
                format!("edge {i} {j} is longer than delta = {delta}"),
            ));
        }
        edges.push((i, j));
    }
    edges.sort_unstable();
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return Err(malformed(lno, "duplicate edge"));
    }
    Ok(GeometricGraph {
        dim,
        delta,
        points,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn edge_at_exact_threshold_is_included() {
        let points = vec![
            Vector::new(vec![0.0, 0.0]),
            Vector::new(vec![0.25, 0.0]),
        ];
        let g = build_rgg(points, 0.25);
        assert_eq!(g.edges, vec![(0, 1)]);
    }

    #[test]
    fn collinear_triple_has_only_consecutive_edges() {
        let points = vec![
            Vector::new(vec![0.0, 0.0]),
            Vector::new(vec![0.06, 0.0]),
            Vector::new(vec![0.12, 0.0]),
        ];
        let g = build_rgg(points, 0.1);
        assert_eq!(g.edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn grid_matches_all_pairs_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = ConvexBody::ball(3);
        let points = sample_binomial(&w, 500, &mut rng);
        let mut oracle = edges_all_pairs(&points, 0.2);
        oracle.sort_unstable();
        let g = build_rgg(points, 0.2);
        assert_eq!(g.edges, oracle);
    }

    #[test]
    fn grid_matches_oracle_across_instances() {
        // Spec invariant: exact equality on 100 random instances, n <= 2000.
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for case in 0..100 {
            let d = 2 + case % 3;
            let w = if case % 2 == 0 {
                ConvexBody::ball(d)
            } else {
                ConvexBody::cube(d)
            };
            let n = rng.random_range(2..=2000);
            let delta = rng.random_range(0.01..0.3);
            let points = sample_binomial(&w, n, &mut rng);
            let mut oracle = edges_all_pairs(&points, delta);
            oracle.sort_unstable();
            let g = build_rgg(points, delta);
            assert_eq!(g.edges, oracle, "case {case}: d={d} n={n} delta={delta}");
        }
    }

    #[test]
    fn graph_is_simple_and_sorted() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let w = ConvexBody::cube(2);
        let g = build_rgg(sample_binomial(&w, 300, &mut rng), 0.1);
        for win in g.edges.windows(2) {
            assert!(win[0] < win[1]);
        }
        for &(i, j) in &g.edges {
            assert!(i < j);
            let dist = g.points[i as usize].dist(&g.points[j as usize]);
            assert!(dist <= g.delta * (1.0 + 1e-12));
        }
    }

    #[test]
    fn poisson_mean_and_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let w = ConvexBody::ball(3);
        let (reps, t) = (500usize, 1000.0);
        let counts: Vec<f64> = (0..reps)
            .map(|_| sample_poisson(&w, t, &mut rng).unwrap().len() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / reps as f64;
        assert!(
            (mean - t).abs() <= 4.0 * (t / reps as f64).sqrt(),
            "mean {mean}"
        );
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (reps as f64 - 1.0);
        assert!((var - t).abs() <= 0.2 * t, "var {var}");
    }

    #[test]
    fn tiny_intensity_is_almost_surely_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let w = ConvexBody::cube(2);
        assert!(sample_poisson(&w, 1e-4, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn nonpositive_intensity_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let w = ConvexBody::cube(2);
        assert!(sample_poisson(&w, 0.0, &mut rng).is_err());
        assert!(sample_poisson(&w, -3.0, &mut rng).is_err());
    }

    #[test]
    fn binomial_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let w = ConvexBody::ball(3);
        assert!(sample_binomial(&w, 0, &mut rng).is_empty());
        let pts = sample_binomial(&w, 5, &mut rng);
        assert_eq!(pts.len(), 5);
        assert!(pts.iter().all(|p| w.contains(p)));
    }

    #[test]
    fn expected_edges_reference_value() {
        // (kappa_3 / 2) * 2000^2 * 0.05^3, fixed by independent arithmetic.
        let w = ConvexBody::ball(3);
        let e = expected_edges(&w, 2000.0, 0.05);
        assert!((e - 1047.197551196598).abs() < 1e-9);
    }

    #[test]
    fn schedules() {
        let thermo = RegimeSchedule::Thermodynamic { c: 5.0 };
        for t in [250.0, 500.0, 1000.0] {
            let delta = thermo.delta(t, 3);
            assert!((t * delta.powi(3) - 5.0).abs() < 1e-12);
        }
        let dense = RegimeSchedule::Dense { c: 1.0, beta: 0.75 };
        let delta = dense.delta(1000.0, 3);
        assert!((delta - 1000.0_f64.powf(-0.25)).abs() < 1e-12);
        let fixed = RegimeSchedule::Fixed { delta: 0.3 };
        assert_eq!(fixed.delta(7.0, 3), 0.3);
    }

    #[test]
    fn dump_round_trip_is_byte_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let w = ConvexBody::ball(3);
        let g = build_rgg(sample_binomial(&w, 50, &mut rng), 0.4);
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let g2 = read_graph(io::Cursor::new(&buf)).unwrap();
        let mut buf2 = Vec::new();
        write_graph(&g2, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
        assert_eq!(g.edges, g2.edges);
    }

    #[test]
    fn read_graph_reports_line_numbers() {
        let text = "3 2 1.0e-1\n0 0 0\n0.05 0 0\n1\n0 5\n";
        let err = read_graph(io::Cursor::new(text)).unwrap_err();
        assert!(matches!(
            err,
            GraphParseError::Malformed { line: 5, .. }
        ));
        let text = "1 0 0.1\n0\n";
        let err = read_graph(io::Cursor::new(text)).unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }

    #[test]
    fn read_graph_rejects_long_edges() {
        let text = "2 2 1.0e-1\n0 0\n0.5 0\n1\n0 1\n";
        let err = read_graph(io::Cursor::new(text)).unwrap_err();
        assert!(err.to_string().contains("longer than delta"));
    }
}
