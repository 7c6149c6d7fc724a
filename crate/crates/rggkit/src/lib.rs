//! Simulation and numerical verification toolkit for random geometric graphs
//! (RGGs) in convex bodies of `R^d`, their projections onto random 2-planes,
//! and the first two moments of two drawing functionals: the rectilinear
//! crossing number and the metric stress.
//!
//! The pipeline is
//!
//! ```text
//!   Poisson(t) points in W  ->  RGG with threshold delta  ->  project onto
//!   a Haar-random plane L   ->  count crossings, evaluate stress
//! ```
//!
//! and the toolkit provides, for each stage, both the simulation side and the
//! limit-theory side (Monte Carlo estimators for the constants `c_d`, `c'_d`,
//! `I^(2)`, `I^(3)`, `S^(1)`, `S^(2)` and closed-form moment predictions built
//! from them), plus a replicated-experiment harness that compares the two.
//!
//! Modules, in dependency order:
//!
//! * [`geometry`] — convex bodies (unit-volume ball, unit cube), uniform
//!   sampling, Haar 2-frames, projections, section volumes.
//! * [`pointprocess`] — Poisson / binomial point samples and the
//!   delta-threshold graph, plus the text dump format.
//! * [`crossings`] — exact-predicate crossing counters: a quadratic oracle and
//!   a Bentley–Ottmann style sweep that falls back to the oracle on any
//!   detected degeneracy.
//! * [`stress`] — the weighted quadratic discrepancy between source-space and
//!   projected distances.
//! * [`theory`] — constants, integrals, and moment predictions.
//! * [`experiments`] — seeded, reproducible replication harness and the
//!   statistical verification checks (law of large numbers, variance sandwich,
//!   correlation positivity, coefficient-of-variation scaling, plane search).
//! * [`cli`] — the `rggkit` binary: `constants`, `predict`, `experiment`,
//!   `search`.
//!
//! Every randomized routine takes an explicit RNG (or a seed) and is
//! deterministic given it; the experiment harness derives one counter-based
//! substream per replication so results are byte-identical at any worker
//! count. Start with the `examples/` directory; each file there is a small,
//! runnable tour of one capability.

pub mod cli;
pub mod crossings;
pub mod experiments;
pub mod geometry;
pub mod pointprocess;
pub mod stress;
pub mod theory;
