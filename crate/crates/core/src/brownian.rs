//! Brownian paths as Gaussian spectra of the Wiener spiral.
//!
//! The `k`-dimensional spectrum of the spiral `{1_[0,t]}` is distributed as
//! the hull of a standard `k`-dimensional Brownian motion on `[0, 1]`. Paths
//! are sampled on a uniform grid, so every hull functional computed here is
//! that of an inscribed polytope and is biased low.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geometry::planar::{self, P2};
use crate::geometry::{convex_hull, Point, Polytope};
use crate::montecarlo::{sample_moments, Accumulator, MCEstimate, RngStream};
use crate::spectrum::spectral_constant;

pub const SPIRAL_TAG: u16 = 2;
pub const TWO_SPIRALS_TAG: u16 = 3;
pub const BM_STATS_TAG: u16 = 4;

/// Grid samples of a Brownian motion started at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct BrownianPath {
    k: usize,
    n_steps: usize,
    horizon: f64,
    /// `(n_steps + 1) × k`, row-major.
    values: Vec<f64>,
}

impl BrownianPath {
    /// Path with the given increments (`n_steps × k`, row-major).
    pub fn from_increments(k: usize, horizon: f64, increments: &[f64]) -> Result<Self> {
        check_k(k)?;
        if !(horizon > 0.0) || !horizon.is_finite() {
            return domain("horizon must be positive and finite");
        }
        if increments.is_empty() || increments.len() % k != 0 {
            return domain("increment count must be a positive multiple of k");
        }
        let n_steps = increments.len() / k;
        let mut values = vec![0.0; (n_steps + 1) * k];
        for i in 0..n_steps {
            for j in 0..k {
                values[(i + 1) * k + j] = values[i * k + j] + increments[i * k + j];
            }
        }
        Ok(Self { k, n_steps, horizon, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn time(&self, i: usize) -> f64 {
        self.horizon * i as f64 / self.n_steps as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_steps).map(|i| self.time(i))
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.k..(i + 1) * self.k]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.k)
    }

    pub fn endpoint(&self) -> &[f64] {
        self.point(self.n_steps)
    }

    /// Brownian-bridge refinement: inserts the midpoint of every step, drawn
    /// from the bridge law `N((x_i + x_{i+1})/2, Δt/4 · I)`.
    pub fn refine(&self, stream: &mut RngStream) -> BrownianPath {
        let k = self.k;
        let sd = (self.horizon / self.n_steps as f64 / 4.0).sqrt();
        let mut values = Vec::with_capacity((2 * self.n_steps + 1) * k);
        values.extend_from_slice(self.point(0));
        for i in 0..self.n_steps {
            let (a, b) = (self.point(i), self.point(i + 1));
            for j in 0..k {
                values.push(0.5 * (a[j] + b[j]) + sd * stream.standard_normal());
            }
            values.extend_from_slice(b);
        }
        BrownianPath {
            k,
            n_steps: 2 * self.n_steps,
            horizon: self.horizon,
            values,
        }
    }

    /// Planar path rotated about the origin by `angle`.
    pub fn rotated(&self, angle: f64) -> Result<BrownianPath> {
        if self.k != 2 {
            return domain("rotation is defined for planar paths");
        }
        let (s, c) = angle.sin_cos();
        let values = self
            .values
            .chunks_exact(2)
            .flat_map(|p| [c * p[0] - s * p[1], s * p[0] + c * p[1]])
            .collect();
        Ok(BrownianPath { values, ..self.clone() })
    }

    fn planar_points(&self) -> &[P2] {
        self.values.as_chunks::<2>().0
    }
}

fn check_k(k: usize) -> Result<()> {
    if !(1..=3).contains(&k) {
        return domain(format!("path dimension must be 1, 2 or 3, got {k}"));
    }
    Ok(())
}

/// Standard Brownian motion on `[0, 1]` in `R^k`.
pub fn sample_brownian_path(k: usize, n_steps: usize, stream: &mut RngStream) -> Result<BrownianPath> {
    sample_brownian_path_on(k, n_steps, 1.0, stream)
}

/// Brownian motion on `[0, horizon]`: increments are `N(0, horizon/n · I)`.
pub fn sample_brownian_path_on(k: usize, n_steps: usize, horizon: f64, stream: &mut RngStream) -> Result<BrownianPath> {
    check_k(k)?;
    if n_steps < 2 {
        return domain(format!("need at least 2 steps, got {n_steps}"));
    }
    if !(horizon > 0.0) || !horizon.is_finite() {
        return domain("horizon must be positive and finite");
    }
    let sd = (horizon / n_steps as f64).sqrt();
    let mut values = Vec::with_capacity((n_steps + 1) * k);
    let mut cur = [0.0; 3];
    values.extend_from_slice(&cur[..k]);
    for _ in 0..n_steps {
        for x in &mut cur[..k] {
            *x += sd * stream.standard_normal();
        }
        values.extend_from_slice(&cur[..k]);
    }
    Ok(BrownianPath { k, n_steps, horizon, values })
}

/// Hull of the grid points.
pub fn hull_of_path(path: &BrownianPath) -> Result<Polytope> {
    if path.k == 2 {
        let poly = path_polygon(path);
        return Polytope::from_coords(&poly.iter().map(|p| &p[..]).collect::<Vec<_>>());
    }
    let pts: Vec<Point> = path.points().map(|p| Point::from_iter_unchecked(p.iter().copied())).collect();
    convex_hull(&pts)
}

/// Counterclockwise hull polygon of a planar path.
pub fn path_polygon(path: &BrownianPath) -> Vec<P2> {
    let pts = path.planar_points();
    planar::hull_indices(pts).into_iter().map(|i| pts[i]).collect()
}

/// `k`-volume of the hull of the grid points: range, area or volume.
pub fn hull_volume(path: &BrownianPath) -> Result<f64> {
    match path.k {
        1 => {
            let (lo, hi) = path
                .values
                .iter()
                .fold((0.0f64, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
            Ok(hi - lo)
        }
        2 => Ok(planar::polygon_area(&path_polygon(path))),
        _ => Ok(hull_of_path(path)?.volume()),
    }
}

/// Running maximum of the first coordinate, its time, and the second
/// coordinate at that time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxStats {
    pub m: f64,
    pub t_star: f64,
    pub h_at_tstar: f64,
}

/// Grid argmax of the first coordinate, earliest index on ties.
pub fn max_stats(path: &BrownianPath) -> Result<MaxStats> {
    if path.k != 2 {
        return domain(format!("max statistics need a planar path, got k = {}", path.k));
    }
    let mut best = 0;
    for i in 1..=path.n_steps {
        if path.values[2 * i] > path.values[2 * best] {
            best = i;
        }
    }
    Ok(MaxStats {
        m: path.values[2 * best],
        t_star: path.time(best),
        h_at_tstar: path.values[2 * best + 1],
    })
}

/// Estimates `V_k` of the Wiener spiral (`k ∈ {1, 2}`); the limit is
/// `κ_k / k!`.
pub fn estimate_spiral_intrinsic(k: usize, n_steps: usize, n_paths: u64, seed: u64) -> Result<MCEstimate> {
    if !(1..=2).contains(&k) {
        return domain(format!("spiral intrinsic volumes are estimated for k = 1, 2, got {k}"));
    }
    let [acc] = sample_moments(n_paths, seed, SPIRAL_TAG, |rng| {
        Ok([hull_volume(&sample_brownian_path(k, n_steps, rng)?)?])
    })?;
    Ok(acc.estimate(seed)?.scaled(spectral_constant(k)))
}

/// Smallest accepted path count for the two-spiral estimator.
pub const MIN_MIXED_PATHS: u64 = 1000;

/// Everything recorded by one run of the two-spiral estimator.
///
/// Each sample draws two independent planar paths. `max`, `h` and
/// `below_one` are statistics of the first path of every pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoSpiralsRun {
    pub mixed: MCEstimate,
    pub max: MCEstimate,
    pub h: MCEstimate,
    /// Indicator of `m ≤ 1`.
    pub below_one: MCEstimate,
    pub area_first: MCEstimate,
    pub area_second: MCEstimate,
    /// Sample correlation of the two hull areas.
    pub area_correlation: f64,
}

impl TwoSpiralsRun {
    /// `π((Ê m)² − (Ê h)²)` and its delta-method standard error.
    pub fn factorized(&self) -> (f64, f64) {
        let pi = std::f64::consts::PI;
        let (m, h) = (self.max.mean, self.h.mean);
        let value = pi * (m * m - h * h);
        let stderr = 2.0 * pi * ((m * self.max.stderr).powi(2) + (h * self.h.stderr).powi(2)).sqrt();
        (value, stderr)
    }
}

/// Runs the two-spiral estimator and collects the side statistics.
pub fn run_two_spirals(n_steps: usize, n_paths: u64, seed: u64) -> Result<TwoSpiralsRun> {
    if n_paths < MIN_MIXED_PATHS {
        return domain(format!("need at least {MIN_MIXED_PATHS} path pairs, got {n_paths}"));
    }
    let acc = sample_moments(n_paths, seed, TWO_SPIRALS_TAG, |rng| {
        let p1 = sample_brownian_path(2, n_steps, rng)?;
        let p2 = sample_brownian_path(2, n_steps, rng)?;
        let (h1, h2) = (path_polygon(&p1), path_polygon(&p2));
        let stats = max_stats(&p1)?;
        let (a1, a2) = (planar::polygon_area(&h1), planar::polygon_area(&h2));
        Ok([
            planar::mixed_area(&h1, &h2),
            stats.m,
            stats.h_at_tstar,
            f64::from(u8::from(stats.m <= 1.0)),
            a1,
            a2,
            a1 * a2,
        ])
    })?;
    let [mixed, max, h, below, a1, a2, prod] = acc;
    let n = mixed.count() as f64;
    let cov = (prod.mean() - a1.mean() * a2.mean()) * n / (n - 1.0);
    let corr = cov / (a1.variance() * a2.variance()).sqrt();
    let est = |a: &Accumulator| a.estimate(seed);
    Ok(TwoSpiralsRun {
        mixed: est(&mixed)?,
        max: est(&max)?,
        h: est(&h)?,
        below_one: est(&below)?,
        area_first: est(&a1)?,
        area_second: est(&a2)?,
        area_correlation: corr,
    })
}

/// Estimates `Ṽ(K_1, K_2)` for two Wiener spirals with independent
/// spectra; the limit is 2. The scaling constant is 1 for `k = 2`.
pub fn estimate_two_spirals_mixed(n_steps: usize, n_paths: u64, seed: u64) -> Result<MCEstimate> {
    Ok(run_two_spirals(n_steps, n_paths, seed)?.mixed)
}

/// Max statistics of single planar paths: `(E m, E h, P(m ≤ level))`.
pub fn estimate_bm_stats(n_steps: usize, n_paths: u64, seed: u64, level: f64) -> Result<[MCEstimate; 3]> {
    let [m, h, below] = sample_moments(n_paths, seed, BM_STATS_TAG, |rng| {
        let s = max_stats(&sample_brownian_path(2, n_steps, rng)?)?;
        Ok([s.m, s.h_at_tstar, f64::from(u8::from(s.m <= level))])
    })?;
    Ok([m.estimate(seed)?, h.estimate(seed)?, below.estimate(seed)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_shape_and_determinism() {
        let a = sample_brownian_path(2, 100, &mut RngStream::new(1, 2)).unwrap();
        let b = sample_brownian_path(2, 100, &mut RngStream::new(1, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.point(0), &[0.0, 0.0]);
        assert_eq!(a.points().count(), 101);
        assert_eq!(a.time(100), 1.0);
        assert!(sample_brownian_path(4, 100, &mut RngStream::new(1, 2)).is_err());
        assert!(sample_brownian_path(2, 1, &mut RngStream::new(1, 2)).is_err());
    }

    #[test]
    fn zero_path_hull_is_a_point() {
        let p = BrownianPath::from_increments(2, 1.0, &[0.0; 20]).unwrap();
        let h = hull_of_path(&p).unwrap();
        assert_eq!(h.vertices().len(), 1);
        assert_eq!(hull_volume(&p).unwrap(), 0.0);
    }

    #[test]
    fn hull_contains_origin_in_every_dimension() {
        for k in 1..=3 {
            let p = sample_brownian_path(k, 200, &mut RngStream::new(3, k as u64)).unwrap();
            let h = hull_of_path(&p).unwrap();
            assert!(h.contains(&Point::origin(k).unwrap(), 1e-12));
            assert!((h.volume() - hull_volume(&p).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn refinement_keeps_points_and_grows_hull() {
        let mut rng = RngStream::new(4, 4);
        let p = sample_brownian_path(2, 50, &mut rng).unwrap();
        let r = p.refine(&mut rng);
        assert_eq!(r.n_steps(), 100);
        for i in 0..=50 {
            assert_eq!(r.point(2 * i), p.point(i));
        }
        assert!(hull_volume(&r).unwrap() >= hull_volume(&p).unwrap());
    }

    #[test]
    fn max_stats_tie_breaking() {
        let p = BrownianPath::from_increments(2, 1.0, &[1.0, 0.5, 0.0, 1.0, -1.0, 0.0, 1.0, 0.0]).unwrap();
        let s = max_stats(&p).unwrap();
        assert_eq!(s.m, 1.0);
        assert_eq!(s.t_star, 0.25);
        assert_eq!(s.h_at_tstar, 0.5);
        let p1 = BrownianPath::from_increments(1, 1.0, &[1.0, 1.0]).unwrap();
        assert!(max_stats(&p1).is_err());
    }

    #[test]
    fn rotation_preserves_area() {
        let p = sample_brownian_path(2, 300, &mut RngStream::new(8, 8)).unwrap();
        let q = p.rotated(0.7).unwrap();
        assert!((hull_volume(&p).unwrap() - hull_volume(&q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn coarse_spiral_is_biased_low() {
        let e = estimate_spiral_intrinsic(2, 2, 20_000, 42).unwrap();
        assert!(e.ci95[1] < std::f64::consts::FRAC_PI_2);
        assert!(estimate_spiral_intrinsic(3, 10, 100, 42).is_err());
        assert!(run_two_spirals(10, 999, 42).is_err());
    }
}
