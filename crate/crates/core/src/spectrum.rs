//! Gaussian spectra of polytopes and the estimators built on them.
//!
//! For a `k×d` standard Gaussian matrix `A`,
//!
//! `V_k(K) = (2π)^{k/2} / (k! κ_k) · E Vol_k(AK)`
//!
//! and, with one matrix shared by all bodies,
//!
//! `Ṽ(K_1, …, K_k) = (2π)^{k/2} / (k! κ_k) · E Ṽ_k(AK_1, …, AK_k)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geometry::{convex_hull, Point, Polytope};
use crate::mixed::{binomial, factorial, kappa, mixed_volume_polarization};
use crate::montecarlo::{sample_moments, MCEstimate, RngStream};

/// Stream family of all spectral estimators. Sharing it means estimates on
/// different bodies with equal `(k, d, seed)` reuse the same matrices.
pub const SPECTRUM_TAG: u16 = 1;

/// Largest projection dimension accepted by the estimators.
pub const MAX_SPECTRAL_K: usize = 3;

/// Smallest accepted sample count.
pub const MIN_SAMPLES: u64 = 100;

/// `k×d` matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    /// `(root_seed, stream_id, counter)` of the first draw, if sampled.
    provenance: Option<(u64, u64, u128)>,
}

impl GaussianMatrix {
    /// A fixed matrix, for tests and deterministic projections.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        let Some(d) = rows.first().map(Vec::len) else {
            return domain("matrix needs at least one row");
        };
        if k > d || rows.iter().any(|r| r.len() != d) {
            return domain(format!("expected k <= d rows of equal length, got {k} rows"));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return domain("matrix entries must be finite");
        }
        Ok(Self {
            rows: k,
            cols: d,
            entries: rows.concat(),
            provenance: None,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn provenance(&self) -> Option<(u64, u64, u128)> {
        self.provenance
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, x: &[f64]) -> Point {
        Point::from_iter_unchecked(
            (0..self.rows).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum::<f64>()),
        )
    }
}

/// `k·d` independent `N(0,1)` entries drawn row-major from `stream`.
pub fn sample_gaussian_matrix(k: usize, d: usize, stream: &mut RngStream) -> Result<GaussianMatrix> {
    if k == 0 || k > d {
        return domain(format!("need 1 <= k <= d, got k = {k}, d = {d}"));
    }
    let provenance = Some((stream.root_seed(), stream.stream_id(), stream.counter()));
    let mut entries = vec![0.0; k * d];
    stream.fill_normal(&mut entries, 1.0);
    Ok(GaussianMatrix {
        rows: k,
        cols: d,
        entries,
        provenance,
    })
}

/// `AK`: the hull of the vertex images.
pub fn project_body(a: &GaussianMatrix, body: &Polytope) -> Result<Polytope> {
    if body.dim_ambient() != a.cols {
        return domain(format!(
            "matrix has {} columns but the body lives in R^{}",
            a.cols,
            body.dim_ambient()
        ));
    }
    let images: Vec<Point> = body.vertices().iter().map(|v| a.apply(v.coords())).collect();
    convex_hull(&images)
}

/// Images of several bodies under one matrix draw.
#[derive(Clone, Debug)]
pub struct SpectrumSample {
    pub matrix: GaussianMatrix,
    pub images: Vec<Polytope>,
}

impl SpectrumSample {
    pub fn draw(bodies: &[Polytope], k: usize, stream: &mut RngStream) -> Result<Self> {
        let d = common_dim(bodies)?;
        let matrix = sample_gaussian_matrix(k, d, stream)?;
        let images = bodies
            .iter()
            .map(|b| project_body(&matrix, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { matrix, images })
    }
}

fn common_dim(bodies: &[Polytope]) -> Result<usize> {
    let Some(first) = bodies.first() else {
        return domain("no bodies given");
    };
    let d = first.dim_ambient();
    if bodies.iter().any(|b| b.dim_ambient() != d) {
        return domain("bodies of mixed ambient dimension");
    }
    Ok(d)
}

/// `(2π)^{k/2} / (k! κ_k)`.
pub fn spectral_constant(k: usize) -> f64 {
    (2.0 * std::f64::consts::PI).powf(k as f64 / 2.0) / (factorial(k) * kappa(k))
}

/// `c_{k,d} = κ_{d−k} (2π)^{k/2} / (k! C(d,k) κ_k)`.
pub fn constant_c(k: usize, d: usize) -> Result<f64> {
    if k == 0 || k > d {
        return domain(format!("need 1 <= k <= d, got k = {k}, d = {d}"));
    }
    Ok(kappa(d - k) * spectral_constant(k) / binomial(d, k))
}

fn check_k(k: usize, d: usize) -> Result<()> {
    if k == 0 || k > d {
        return domain(format!("need 1 <= k <= d, got k = {k}, d = {d}"));
    }
    if k > MAX_SPECTRAL_K {
        return domain(format!("spectral estimators are limited to k <= {MAX_SPECTRAL_K}"));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n < MIN_SAMPLES {
        return domain(format!("need at least {MIN_SAMPLES} samples, got {n}"));
    }
    Ok(())
}

/// Estimates `V_k(K)` from `n_samples` projections.
pub fn estimate_intrinsic_volume(body: &Polytope, k: usize, n_samples: u64, seed: u64) -> Result<MCEstimate> {
    check_k(k, body.dim_ambient())?;
    check_n(n_samples)?;
    let [acc] = sample_moments(n_samples, seed, SPECTRUM_TAG, |rng| {
        let a = sample_gaussian_matrix(k, body.dim_ambient(), rng)?;
        Ok([project_body(&a, body)?.volume()])
    })?;
    Ok(acc.estimate(seed)?.scaled(spectral_constant(k)))
}

/// Estimates the normalized mixed volume `Ṽ(K_1, …, K_k)`, `k = bodies.len()`.
pub fn estimate_mixed_volume(bodies: &[Polytope], n_samples: u64, seed: u64) -> Result<MCEstimate> {
    let d = common_dim(bodies)?;
    let k = bodies.len();
    check_k(k, d)?;
    check_n(n_samples)?;
    let [acc] = sample_moments(n_samples, seed, SPECTRUM_TAG, |rng| {
        let s = SpectrumSample::draw(bodies, k, rng)?;
        Ok([mixed_volume_polarization(&s.images)?])
    })?;
    Ok(acc.estimate(seed)?.scaled(spectral_constant(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constants() {
        assert!((constant_c(2, 2).unwrap() - 1.0).abs() < 1e-15);
        let half_root = (2.0 * PI).sqrt() / 2.0;
        assert!((constant_c(1, 1).unwrap() - half_root).abs() < 1e-15);
        assert!((constant_c(1, 2).unwrap() - half_root).abs() < 1e-15);
        assert!((spectral_constant(2) - 1.0).abs() < 1e-15);
        assert!(constant_c(3, 2).is_err());
        assert!(constant_c(0, 2).is_err());
    }

    #[test]
    fn matrix_is_replayable() {
        let a = sample_gaussian_matrix(2, 3, &mut RngStream::new(5, 9)).unwrap();
        let b = sample_gaussian_matrix(2, 3, &mut RngStream::new(5, 9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.provenance(), Some((5, 9, 0)));
        assert!(sample_gaussian_matrix(3, 2, &mut RngStream::new(5, 9)).is_err());
    }

    #[test]
    fn identity_projection() {
        let k = Polytope::unit_box(&[1.0, 2.0]).unwrap();
        let id = GaussianMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(project_body(&id, &k).unwrap().same_vertex_set(&k, 1e-15));
        let origin = Polytope::from_coords(&[&[0.0, 0.0, 0.0]]).unwrap();
        let a = sample_gaussian_matrix(2, 3, &mut RngStream::new(1, 1)).unwrap();
        let img = project_body(&a, &origin).unwrap();
        assert_eq!(img.vertices().len(), 1);
        assert_eq!(img.vertices()[0].coords(), &[0.0, 0.0]);
        assert!(project_body(&id, &origin).is_err());
    }

    #[test]
    fn estimator_preconditions() {
        let sq = Polytope::unit_box(&[1.0, 1.0]).unwrap();
        assert!(estimate_intrinsic_volume(&sq, 3, 1000, 1).is_err());
        assert!(estimate_intrinsic_volume(&sq, 1, 10, 1).is_err());
        let cube = Polytope::unit_box(&[1.0; 3]).unwrap();
        assert!(estimate_mixed_volume(&[sq, cube], 1000, 1).is_err());
        assert!(estimate_mixed_volume(&[], 1000, 1).is_err());
    }

    #[test]
    fn small_square_estimates() {
        let sq = Polytope::unit_box(&[1.0, 1.0]).unwrap();
        let v1 = estimate_intrinsic_volume(&sq, 1, 20_000, 3).unwrap();
        assert!(v1.covers(2.0, 4.0, 0.0), "{v1:?}");
        let v2 = estimate_intrinsic_volume(&sq, 2, 20_000, 3).unwrap();
        assert!(v2.covers(1.0, 4.0, 0.0), "{v2:?}");
    }
}
