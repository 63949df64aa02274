//! Exact finite-dimensional convex geometry on V-polytopes.

mod ball;
mod hull;
pub(crate) mod linalg;
pub mod planar;
mod point;
mod polytope;

pub use ball::{ball_polytope, circumscribed_ngon_area, inscribed_ngon_area, BallMode};
pub use hull::convex_hull;
pub use point::{Point, MAX_DIM};
pub use polytope::{minkowski_sum, scale, volume, Polytope};

/// Relative tolerance of every orientation and rank predicate.
pub const HULL_EPS: f64 = 1e-9;
