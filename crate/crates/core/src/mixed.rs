//! Deterministic mixed and intrinsic volumes of polytopes.
//!
//! Two independent routes compute the same numbers:
//!
//! * polarization: inclusion-exclusion over volumes of partial Minkowski sums;
//! * interpolation: sample `Vol_d(Σ α_i K_i + λ B)` on a grid, fit the
//!   homogeneous Minkowski polynomial, read off the coefficient of
//!   `α_1 ⋯ α_k λ^{d-k}`.
//!
//! The Euclidean ball is replaced by a polytopal surrogate (see
//! [`ball_polytope`]); inscribed and circumscribed surrogates bracket the
//! true value because mixed volumes are monotone in each argument.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{ball_polytope, convex_hull, minkowski_sum, scale, BallMode, Point, Polytope};

/// Largest dimension handled by the exact routes.
pub const MAX_EXACT_DIM: usize = 4;

/// Largest tolerated relative residual of a polynomial fit.
pub const FIT_RESIDUAL_TOL: f64 = 1e-8;

/// Volume of the unit ball `B^k`, `π^{k/2} / Γ(k/2 + 1)`.
///
/// Evaluated by the recurrence `κ_k = 2π/k · κ_{k-2}` from `κ_0 = 1`,
/// `κ_1 = 2`.
pub fn kappa(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / k as f64 * kappa(k - 2),
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Mixed volume `Ṽ_d(K_1, …, K_d)` of `d` polytopes in `R^d` by
/// polarization:
///
/// `Ṽ_d = 1/d! Σ_{∅≠S⊆[d]} (−1)^{d−|S|} Vol_d(Σ_{i∈S} K_i)`.
pub fn mixed_volume_polarization(bodies: &[Polytope]) -> Result<f64> {
    let Some(first) = bodies.first() else {
        return domain("polarization needs at least one body");
    };
    let d = first.dim_ambient();
    if bodies.len() != d {
        return domain(format!("polarization in R^{d} needs {d} bodies, got {}", bodies.len()));
    }
    if d > MAX_EXACT_DIM {
        return domain(format!("polarization is limited to d <= {MAX_EXACT_DIM}"));
    }
    if bodies.iter().any(|b| b.dim_ambient() != d) {
        return domain("bodies of mixed ambient dimension");
    }
    // sums[mask] = Σ_{i ∈ mask} K_i, built from the sum without the lowest bit.
    let mut sums: Vec<Option<Polytope>> = vec![None; 1 << d];
    let mut total = 0.0;
    for mask in 1usize..1 << d {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let sum = if rest == 0 {
            bodies[low].clone()
        } else {
            minkowski_sum(sums[rest].as_ref().expect("subsets visited in order"), &bodies[low])?
        };
        let sign = if (d - mask.count_ones() as usize) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * sum.volume();
        sums[mask] = Some(sum);
    }
    Ok((total / factorial(d)).max(0.0))
}

/// Resolution and side of the polytopal ball surrogate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallApprox {
    pub n: usize,
    pub mode: BallMode,
}

impl BallApprox {
    pub fn inscribed(n: usize) -> Self {
        Self { n, mode: BallMode::Inscribed }
    }

    pub fn circumscribed(n: usize) -> Self {
        Self { n, mode: BallMode::Circumscribed }
    }

    pub fn polytope(&self, d: usize) -> Result<Polytope> {
        if d == 1 {
            // The one-dimensional ball is a segment; no surrogate needed.
            return Polytope::from_coords(&[&[-1.0], &[1.0]]);
        }
        ball_polytope(d, self.n, self.mode)
    }
}

/// Arguments of `Ṽ_d(K_1, …, K_k, B, …, B)`: `k` bodies and `d − k` ball
/// slots filled with a surrogate.
#[derive(Clone, Debug)]
pub struct MixedVolumeQuery {
    bodies: Vec<Polytope>,
    dim: usize,
    ball: BallApprox,
}

impl MixedVolumeQuery {
    /// Bodies of lower ambient dimension are zero-padded into `R^dim`.
    pub fn new(bodies: &[Polytope], dim: usize, ball: BallApprox) -> Result<Self> {
        let k = bodies.len();
        if k == 0 || k > dim {
            return domain(format!("need 1 <= k <= d bodies, got k = {k}, d = {dim}"));
        }
        if dim > MAX_EXACT_DIM {
            return domain(format!("exact mixed volumes are limited to d <= {MAX_EXACT_DIM}"));
        }
        let bodies = bodies
            .iter()
            .map(|b| b.zero_padded(dim))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bodies, dim, ball })
    }

    pub fn bodies(&self) -> &[Polytope] {
        &self.bodies
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ball_slots(&self) -> usize {
        self.dim - self.bodies.len()
    }

    fn ball(&self) -> Result<Option<Polytope>> {
        if self.ball_slots() == 0 {
            Ok(None)
        } else {
            self.ball.polytope(self.dim).map(Some)
        }
    }

    /// Polarization with the ball slots filled by the surrogate.
    pub fn polarization(&self) -> Result<f64> {
        let mut args = self.bodies.clone();
        if let Some(ball) = self.ball()? {
            args.extend(std::iter::repeat_n(ball, self.ball_slots()));
        }
        mixed_volume_polarization(&args)
    }
}

/// Result of a least-squares polynomial fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interpolated {
    pub value: f64,
    /// `max |A x − b| / max |b|` over the grid.
    pub residual: f64,
    /// Ratio of extreme singular values of the design matrix.
    pub condition: f64,
}

/// Default interpolation weights for degree `d`: `0.5, 1.0, …, (d+1)/2`.
///
/// `d + 1` distinct values per variable make the tensor grid unisolvent for
/// every polynomial of degree ≤ `d`.
pub fn default_weights(d: usize) -> Vec<f64> {
    (1..=d + 1).map(|i| 0.5 * i as f64).collect()
}

/// Exponent vectors of the degree-`d` monomials in `vars` variables.
fn monomials(vars: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == vars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(vars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, d as u32, &mut Vec::new(), &mut out);
    out
}

/// Least-squares solve with rank check, residual and condition number.
fn fit(a: DMatrix<f64>, b: DVector<f64>) -> Result<(DVector<f64>, f64, f64)> {
    let cols = a.ncols();
    if a.nrows() < cols {
        return domain(format!(
            "grid of {} points cannot determine {cols} coefficients",
            a.nrows()
        ));
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let tol = smax * 1e-12 * cols as f64;
    if smin <= tol {
        return domain("interpolation grid is not unisolvent (rank-deficient design)");
    }
    let x = svd
        .solve(&b, tol)
        .map_err(|e| Error::Numerical(format!("least-squares solve failed: {e}")))?;
    let scale = b.amax();
    let residual = if scale > 0.0 { (&a * &x - &b).amax() / scale } else { 0.0 };
    Ok((x, residual, smax / smin))
}

/// `Ṽ_d(K_1, …, K_k, B, …, B)` for the query's ball surrogate, from the
/// coefficient of `α_1 ⋯ α_k λ^{d−k}` in `Vol_d(Σ α_i K_i + λ B)`, which
/// equals `k!·C(d,k)·Ṽ_d(…)`.
///
/// The polynomial is fitted on the tensor grid `weights_grid^(k+1)` (or
/// `weights_grid^k` without ball slots).
pub fn mixed_volume_interpolation(query: &MixedVolumeQuery, weights_grid: &[f64]) -> Result<Interpolated> {
    if weights_grid.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return domain("interpolation weights must be positive and finite");
    }
    let d = query.dim;
    let k = query.bodies.len();
    let ball = query.ball()?;
    let vars = k + usize::from(ball.is_some());
    let monos = monomials(vars, d);
    let target: Vec<u32> = (0..vars).map(|i| if i < k { 1 } else { (d - k) as u32 }).collect();
    let target_col = monos.iter().position(|m| *m == target).expect("target monomial");

    let n_grid = weights_grid.len().pow(vars as u32);
    if n_grid < monos.len() {
        return domain(format!(
            "grid of {n_grid} points cannot determine {} coefficients",
            monos.len()
        ));
    }
    let mut args: Vec<&Polytope> = query.bodies.iter().collect();
    if let Some(b) = &ball {
        args.push(b);
    }
    let mut a = DMatrix::<f64>::zeros(n_grid, monos.len());
    let mut b = DVector::<f64>::zeros(n_grid);
    for row in 0..n_grid {
        let mut rest = row;
        let weights: Vec<f64> = (0..vars)
            .map(|_| {
                let w = weights_grid[rest % weights_grid.len()];
                rest /= weights_grid.len();
                w
            })
            .collect();
        let mut body = scale(args[0], weights[0])?;
        for (arg, &w) in args.iter().zip(&weights).skip(1) {
            body = minkowski_sum(&body, &scale(arg, w)?)?;
        }
        b[row] = body.volume();
        for (col, m) in monos.iter().enumerate() {
            a[(row, col)] = weights.iter().zip(m).map(|(w, &e)| w.powi(e as i32)).product();
        }
    }
    let (x, residual, condition) = fit(a, b)?;
    if residual > FIT_RESIDUAL_TOL {
        return Err(Error::Numerical(format!(
            "Minkowski polynomial fit residual {residual:.3e} exceeds {FIT_RESIDUAL_TOL:e}"
        )));
    }
    let value = (x[target_col] / (factorial(k) * binomial(d, k))).max(0.0);
    Ok(Interpolated { value, residual, condition })
}

/// Coefficients of the Steiner polynomial `Vol_d(K + λB) = Σ_k c_k λ^{d−k}`,
/// where `c_k = κ_{d−k} V_k(K)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteinerCoefficients {
    pub coeffs: Vec<f64>,
    pub residual: f64,
}

impl SteinerCoefficients {
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `V_0, …, V_d`.
    pub fn intrinsic_volumes(&self) -> Vec<f64> {
        let d = self.dim();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / kappa(d - k))
            .collect()
    }
}

/// Fits the Steiner polynomial of `body` (ambient dimension ≤ 3) through
/// `(λ, Vol(body + λ·ball))`.
pub fn steiner_fit(body: &Polytope, ball: BallApprox, lambdas: &[f64]) -> Result<SteinerCoefficients> {
    let d = body.dim_ambient();
    if d > 3 {
        return domain(format!("Steiner fitting is limited to d <= 3, got {d}"));
    }
    if lambdas.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
        return domain("Steiner radii must be positive and finite");
    }
    let mut distinct = lambdas.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < d + 1 {
        return domain(format!("need at least {} distinct radii, got {}", d + 1, distinct.len()));
    }
    let b_poly = ball.polytope(d)?;
    let mut a = DMatrix::<f64>::zeros(lambdas.len(), d + 1);
    let mut b = DVector::<f64>::zeros(lambdas.len());
    for (row, &l) in lambdas.iter().enumerate() {
        b[row] = minkowski_sum(body, &scale(&b_poly, l)?)?.volume();
        for k in 0..=d {
            a[(row, k)] = l.powi((d - k) as i32);
        }
    }
    let (x, residual, _) = fit(a, b)?;
    if residual > FIT_RESIDUAL_TOL {
        return Err(Error::Numerical(format!(
            "Steiner fit residual {residual:.3e} exceeds {FIT_RESIDUAL_TOL:e}"
        )));
    }
    Ok(SteinerCoefficients {
        coeffs: x.iter().copied().collect(),
        residual,
    })
}

/// `V_k` of a box with the given side lengths: the elementary symmetric
/// polynomial `e_k(sides)`.
pub fn intrinsic_volume_box(sides: &[f64], k: usize) -> Result<f64> {
    if k > sides.len() {
        return domain(format!("k = {k} exceeds the box dimension {}", sides.len()));
    }
    if sides.iter().any(|s| !(*s >= 0.0)) {
        return domain("box sides must be nonnegative");
    }
    let mut e = vec![0.0; sides.len() + 1];
    e[0] = 1.0;
    for (i, &s) in sides.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += s * e[j - 1];
        }
    }
    Ok(e[k])
}

/// A value with the two-sided bracket from inscribed and circumscribed ball
/// surrogates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracketed {
    /// Midpoint of the bracket.
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub residual: f64,
}

/// Dimension-free mixed volume `C(d,k)/κ_{d−k} · Ṽ_d(K_1, …, K_k, B, …, B)`
/// of `k` polytopes embedded into `R^d`.
pub fn normalized_mixed_volume(bodies: &[Polytope], d: usize, n_ball: usize) -> Result<Bracketed> {
    let k = bodies.len();
    let norm = binomial(d, k) / kappa(d.saturating_sub(k));
    let weights = default_weights(d);
    let inner = mixed_volume_interpolation(&MixedVolumeQuery::new(bodies, d, BallApprox::inscribed(n_ball))?, &weights)?;
    if k == d {
        let v = norm * inner.value;
        return Ok(Bracketed { value: v, lo: v, hi: v, residual: inner.residual });
    }
    let outer = mixed_volume_interpolation(
        &MixedVolumeQuery::new(bodies, d, BallApprox::circumscribed(n_ball))?,
        &weights,
    )?;
    let (lo, hi) = (norm * inner.value, norm * outer.value);
    Ok(Bracketed {
        value: 0.5 * (lo + hi),
        lo,
        hi,
        residual: inner.residual.max(outer.residual),
    })
}

/// Which exact route produced a [`MixedVolumeResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Polarization,
    Interpolation,
}

/// Serialized result of an exact computation:
/// `{"value", "bracket": [lo, hi], "method", "residual"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedVolumeResult {
    pub value: f64,
    pub bracket: [f64; 2],
    pub method: Method,
    pub residual: f64,
}

/// Normalized mixed volume of `bodies` in `R^d` by either route, bracketed
/// by inscribed/circumscribed surrogates when ball slots are present.
pub fn exact_mixed_volume(bodies: &[Polytope], d: usize, n_ball: usize, method: Method) -> Result<MixedVolumeResult> {
    match method {
        Method::Interpolation => {
            let b = normalized_mixed_volume(bodies, d, n_ball)?;
            Ok(MixedVolumeResult {
                value: b.value,
                bracket: [b.lo, b.hi],
                method,
                residual: b.residual,
            })
        }
        Method::Polarization => {
            let k = bodies.len();
            let norm = binomial(d, k) / kappa(d.saturating_sub(k));
            let lo = norm * MixedVolumeQuery::new(bodies, d, BallApprox::inscribed(n_ball))?.polarization()?;
            let hi = if k == d {
                lo
            } else {
                norm * MixedVolumeQuery::new(bodies, d, BallApprox::circumscribed(n_ball))?.polarization()?
            };
            Ok(MixedVolumeResult {
                value: 0.5 * (lo + hi),
                bracket: [lo, hi],
                method,
                residual: 0.0,
            })
        }
    }
}

/// Convenience: polytope from a point list, used by fixtures and tests.
pub fn hull_of(rows: &[&[f64]]) -> Result<Polytope> {
    let pts = rows.iter().map(|r| Point::new(r)).collect::<Result<Vec<_>>>()?;
    convex_hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(a: f64, b: f64) -> Polytope {
        Polytope::unit_box(&[a, b]).unwrap()
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(0), 1.0);
        assert_eq!(kappa(1), 2.0);
        assert!((kappa(2) - PI).abs() < 1e-15);
        assert!((kappa(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        // Against the Gamma-function form.
        for k in 0..12usize {
            let g = libm::tgamma(k as f64 / 2.0 + 1.0);
            assert!((kappa(k) - PI.powf(k as f64 / 2.0) / g).abs() < 1e-13 * kappa(k));
        }
    }

    #[test]
    fn polarization_examples() {
        let v = mixed_volume_polarization(&[rect(1.0, 2.0), rect(3.0, 4.0)]).unwrap();
        assert!((v - 5.0).abs() < 1e-12);
        let sq = rect(1.0, 1.0);
        assert!((mixed_volume_polarization(&[sq.clone(), sq]).unwrap() - 1.0).abs() < 1e-12);
        let e1 = Polytope::segment(&[1.0, 0.0]).unwrap();
        let e2 = Polytope::segment(&[0.0, 1.0]).unwrap();
        assert!((mixed_volume_polarization(&[e1, e2]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn polarization_errors() {
        assert!(mixed_volume_polarization(&[rect(1.0, 1.0)]).is_err());
        assert!(mixed_volume_polarization(&[]).is_err());
        let cube = Polytope::unit_box(&[1.0; 3]).unwrap();
        assert!(mixed_volume_polarization(&[cube.clone(), cube, rect(1.0, 1.0)]).is_err());
    }

    #[test]
    fn interpolation_matches_polarization_on_rectangles() {
        let q = MixedVolumeQuery::new(&[rect(1.0, 2.0), rect(3.0, 4.0)], 2, BallApprox::inscribed(64)).unwrap();
        let r = mixed_volume_interpolation(&q, &default_weights(2)).unwrap();
        assert!((r.value - 5.0).abs() < 1e-9, "{r:?}");
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn interpolation_recovers_v1_of_square() {
        let q = MixedVolumeQuery::new(&[rect(1.0, 1.0)], 2, BallApprox::inscribed(256)).unwrap();
        let r = mixed_volume_interpolation(&q, &default_weights(2)).unwrap();
        let v1 = binomial(2, 1) / kappa(1) * r.value;
        assert!((v1 - 2.0).abs() < 1e-3, "{v1}");
        let p = q.polarization().unwrap();
        assert!((p - r.value).abs() < 1e-6 * p);
    }

    #[test]
    fn interpolation_grid_errors() {
        let q = MixedVolumeQuery::new(&[rect(1.0, 1.0), rect(1.0, 2.0)], 2, BallApprox::inscribed(8)).unwrap();
        assert!(matches!(mixed_volume_interpolation(&q, &[1.0]), Err(Error::Domain(_))));
        // Two weights give a 4-point grid, but (1,1) and (2,2) are
        // proportional: only 3 independent rows remain, enough for 3 monomials.
        assert!(mixed_volume_interpolation(&q, &[1.0, 2.0]).is_ok());
        let q3 = MixedVolumeQuery::new(
            &[
                Polytope::unit_box(&[1.0; 3]).unwrap(),
                Polytope::unit_box(&[1.0, 2.0, 1.0]).unwrap(),
                Polytope::unit_box(&[2.0, 1.0, 1.0]).unwrap(),
            ],
            3,
            BallApprox::inscribed(12),
        )
        .unwrap();
        // {1,2}^3 has only 7 distinct directions for 10 cubic monomials.
        assert!(matches!(mixed_volume_interpolation(&q3, &[1.0, 2.0]), Err(Error::Domain(_))));
        assert!(mixed_volume_interpolation(&q3, &[-1.0, 2.0]).is_err());
    }

    #[test]
    fn query_validation() {
        assert!(MixedVolumeQuery::new(&[], 2, BallApprox::inscribed(8)).is_err());
        let three = vec![rect(1.0, 1.0); 3];
        assert!(MixedVolumeQuery::new(&three, 2, BallApprox::inscribed(8)).is_err());
        assert!(MixedVolumeQuery::new(&three, 5, BallApprox::inscribed(8)).is_err());
    }

    #[test]
    fn steiner_square() {
        let s = steiner_fit(&rect(1.0, 1.0), BallApprox::inscribed(512), &[0.5, 1.0, 1.5, 2.0]).unwrap();
        let v = s.intrinsic_volumes();
        for (got, want) in v.iter().zip([1.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-2, "{v:?}");
        }
        assert!((s.coeffs[0] - PI).abs() < 1e-3);
        assert!((s.coeffs[1] - 4.0).abs() < 1e-9);
    }

    #[test]
    fn steiner_degenerate_bodies() {
        let l = 2.5;
        let seg = Polytope::segment(&[l, 0.0]).unwrap();
        let v = steiner_fit(&seg, BallApprox::inscribed(512), &[0.5, 1.0, 2.0]).unwrap().intrinsic_volumes();
        assert!((v[0] - 1.0).abs() < 1e-4 && (v[1] - l).abs() < 1e-9 && v[2].abs() < 1e-9, "{v:?}");
        let pt = hull_of(&[&[0.3, 0.3]]).unwrap();
        let v = steiner_fit(&pt, BallApprox::inscribed(512), &[0.5, 1.0, 2.0]).unwrap().intrinsic_volumes();
        assert!((v[0] - 1.0).abs() < 1e-4 && v[1].abs() < 1e-9 && v[2].abs() < 1e-9, "{v:?}");
        assert!(steiner_fit(&seg, BallApprox::inscribed(64), &[1.0, 1.0, 2.0]).is_err());
    }

    #[test]
    fn steiner_in_one_and_three_dimensions() {
        let seg = hull_of(&[&[0.0], &[3.0]]).unwrap();
        let v = steiner_fit(&seg, BallApprox::inscribed(8), &[1.0, 2.0]).unwrap().intrinsic_volumes();
        assert!((v[0] - 1.0).abs() < 1e-12 && (v[1] - 3.0).abs() < 1e-12);

        let cube = Polytope::unit_box(&[1.0, 2.0, 3.0]).unwrap();
        let lo = steiner_fit(&cube, BallApprox::inscribed(162), &[0.5, 1.0, 1.5, 2.0]).unwrap().intrinsic_volumes();
        let hi = steiner_fit(&cube, BallApprox::circumscribed(162), &[0.5, 1.0, 1.5, 2.0]).unwrap().intrinsic_volumes();
        for k in 0..=3 {
            let exact = intrinsic_volume_box(&[1.0, 2.0, 3.0], k).unwrap();
            assert!(lo[k] <= exact + 1e-9 && exact <= hi[k] + 1e-9, "k={k}: {} {exact} {}", lo[k], hi[k]);
        }
    }

    #[test]
    fn box_intrinsic_volumes() {
        assert_eq!(intrinsic_volume_box(&[1.0, 1.0], 1).unwrap(), 2.0);
        assert_eq!(intrinsic_volume_box(&[2.0, 3.0, 5.0], 3).unwrap(), 30.0);
        assert_eq!(intrinsic_volume_box(&[2.0, 3.0, 5.0], 2).unwrap(), 31.0);
        assert_eq!(intrinsic_volume_box(&[2.0, 3.0], 0).unwrap(), 1.0);
        assert!(intrinsic_volume_box(&[2.0, 3.0], 3).is_err());
    }

    #[test]
    fn normalized_examples() {
        let bodies = [rect(1.0, 2.0), rect(3.0, 4.0)];
        let d2 = normalized_mixed_volume(&bodies, 2, 64).unwrap();
        assert!((d2.value - 5.0).abs() < 1e-9 && d2.lo == d2.hi);
        let d3 = normalized_mixed_volume(&bodies, 3, 642).unwrap();
        assert!(d3.lo <= 5.0 + 1e-9 && 5.0 <= d3.hi + 1e-9, "{d3:?}");
        assert!((d3.value - 5.0).abs() < 2e-2, "{d3:?}");

        let l = 1.7;
        let seg = Polytope::segment(&[l, 0.0]).unwrap();
        for d in [2, 3] {
            let r = normalized_mixed_volume(std::slice::from_ref(&seg), d, 256).unwrap();
            assert!(r.lo <= l + 1e-9 && l <= r.hi + 1e-9, "d={d} {r:?}");
        }
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(4, 4).len(), 35);
        assert!(monomials(2, 3).iter().all(|m| m.iter().sum::<u32>() == 3));
    }
}
