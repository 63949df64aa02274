//! Intrinsic and mixed volumes of convex bodies, computed exactly for
//! polytopes and estimated through Gaussian spectra.
//!
//! The crate is layered bottom-up:
//!
//! * [`geometry`]: V-polytopes in dimension ≤ 6, hulls, Minkowski sums, volumes.
//! * [`mixed`]: deterministic mixed and intrinsic volumes (polarization,
//!   Minkowski-polynomial interpolation, Steiner fitting).
//! * [`montecarlo`]: seeded counter-based streams and estimate aggregation.
//! * [`spectrum`]: Gaussian-projection estimators for polytopes.
//! * [`brownian`]: Brownian paths as spectra of the Wiener spiral.
//! * [`support`]: planar support functions and Cauchy-formula quadrature.
//! * [`experiment`] and [`suite`]: the experiment registry and the
//!   reproduction suite driven by the `gaussmix` binary.

pub mod brownian;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod mixed;
pub mod montecarlo;
pub mod spectrum;
pub mod suite;
pub mod support;

pub use error::{Error, Result};
pub use geometry::{ball_polytope, convex_hull, minkowski_sum, scale, volume, BallMode, Point, Polytope};
pub use montecarlo::{MCEstimate, RngStream};

/// Seed used whenever none is supplied.
pub const DEFAULT_SEED: u64 = 42;
