//! The reproduction suite: every acceptance criterion as a list of checks.
//!
//! A [`SuiteReport`] carries no timings, so two runs with the same options
//! serialize to identical bytes.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::brownian::{estimate_spiral_intrinsic, run_two_spirals};
use crate::error::Result;
use crate::geometry::planar::{self, P2};
use crate::geometry::{convex_hull, Point, Polytope};
use crate::mixed::{
    default_weights, intrinsic_volume_box, mixed_volume_interpolation, mixed_volume_polarization,
    normalized_mixed_volume, steiner_fit, BallApprox, MixedVolumeQuery,
};
use crate::montecarlo::{stream_id, RngStream, Z95};
use crate::spectrum::{estimate_intrinsic_volume, estimate_mixed_volume};
use crate::support::{cauchy_area, cauchy_length, cauchy_mixed_area, support_profile};

/// Stream family used to draw random test polytopes.
pub const POLYTOPE_TAG: u16 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Reduced sample sizes and widened allowances.
    pub quick: bool,
}

/// One comparison: pass iff `|value − target| ≤ k_sigma·stderr + allowance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub stderr: f64,
    pub k_sigma: f64,
    pub allowance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, target: f64, stderr: f64, k_sigma: f64, allowance: f64) -> Self {
        let pass = (value - target).abs() <= k_sigma * stderr + allowance;
        Self {
            name: name.into(),
            value,
            target,
            stderr,
            k_sigma,
            allowance,
            pass,
        }
    }

    /// Deterministic comparison with absolute tolerance `tol`.
    pub fn exact(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self::new(name, value, target, 0.0, 0.0, tol)
    }

    /// A boolean condition, reported as value 1 (holds) or 0.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::exact(name, f64::from(u8::from(ok)), 1.0, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn new(id: u8, title: &str, checks: Vec<Check>) -> Self {
        Self {
            id,
            title: title.into(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    /// `PASS  3  title` or `FAIL ...`, followed by the failing checks.
    pub fn summary_line(&self) -> String {
        let mut s = format!("{}  {:>2}  {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.title);
        for c in self.checks.iter().filter(|c| !c.pass) {
            s.push_str(&format!(
                "\n        {}: value {} target {} (tolerance {}·{} + {})",
                c.name, c.value, c.target, c.k_sigma, c.stderr, c.allowance
            ));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub quick: bool,
    pub pass: bool,
    pub criteria: Vec<CriterionReport>,
}

/// Sample sizes and allowances of one suite run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scale {
    pub n_steps: usize,
    pub n_paths: u64,
    pub n_samples: u64,
    pub mixed_allowance: f64,
    pub v1_allowance: f64,
    pub v2_allowance: f64,
    pub max_allowance: f64,
    pub cdf_allowance: f64,
    pub padded_allowance: f64,
    pub pairs_2d: usize,
    pub triples_3d: usize,
    pub cauchy_hulls: usize,
    pub cauchy_pairs: usize,
}

impl Scale {
    pub const FULL: Scale = Scale {
        n_steps: 10_000,
        n_paths: 100_000,
        n_samples: 100_000,
        mixed_allowance: 0.04,
        v1_allowance: 0.03,
        v2_allowance: 0.03,
        max_allowance: 0.02,
        cdf_allowance: 0.01,
        padded_allowance: 0.02,
        pairs_2d: 50,
        triples_3d: 20,
        cauchy_hulls: 100,
        cauchy_pairs: 20,
    };

    /// Grid bias grows roughly like `n_steps^{-1/2}`, so the Brownian
    /// allowances are widened accordingly.
    pub const QUICK: Scale = Scale {
        n_steps: 1000,
        n_paths: 4000,
        n_samples: 10_000,
        mixed_allowance: 0.15,
        v1_allowance: 0.08,
        v2_allowance: 0.15,
        max_allowance: 0.05,
        cdf_allowance: 0.03,
        padded_allowance: 0.05,
        pairs_2d: 10,
        triples_3d: 4,
        cauchy_hulls: 20,
        cauchy_pairs: 5,
    };

    pub fn of(quick: bool) -> Scale {
        if quick {
            Self::QUICK
        } else {
            Self::FULL
        }
    }
}

/// Hull of `n_points` uniform points in `[−1, 1]^d`.
pub fn random_polytope(d: usize, n_points: usize, rng: &mut RngStream) -> Result<Polytope> {
    let pts = (0..n_points)
        .map(|_| {
            let c: Vec<f64> = (0..d).map(|_| 2.0 * rng.uniform() - 1.0).collect();
            Point::new(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    convex_hull(&pts)
}

/// Random polytope with between `lo` and `hi` generating points.
pub fn random_polytope_between(d: usize, lo: usize, hi: usize, rng: &mut RngStream) -> Result<Polytope> {
    let n = lo + (rng.uniform() * (hi - lo + 1) as f64) as usize;
    random_polytope(d, n.min(hi), rng)
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Criteria 1–4, which share one run of the two-spiral estimator.
pub fn brownian_criteria(seed: u64, s: &Scale) -> Result<Vec<CriterionReport>> {
    let run = run_two_spirals(s.n_steps, s.n_paths, seed)?;
    let v1 = estimate_spiral_intrinsic(1, s.n_steps, s.n_paths, seed)?;
    let v2 = estimate_spiral_intrinsic(2, s.n_steps, s.n_paths, seed)?;
    let (fact, fact_se) = run.factorized();
    let combined = (run.mixed.stderr.powi(2) + fact_se.powi(2)).sqrt();
    Ok(vec![
        CriterionReport::new(
            1,
            "two Wiener spirals: mixed volume 2",
            vec![Check::new("mixed", run.mixed.mean, 2.0, run.mixed.stderr, Z95, s.mixed_allowance)],
        ),
        CriterionReport::new(
            2,
            "Wiener spiral intrinsic volumes 2 and pi/2",
            vec![
                Check::new("V1", v1.mean, 2.0, v1.stderr, Z95, s.v1_allowance),
                Check::new("V2", v2.mean, FRAC_PI_2, v2.stderr, Z95, s.v2_allowance),
            ],
        ),
        CriterionReport::new(
            3,
            "Brownian maximum statistics",
            vec![
                Check::new("E max", run.max.mean, FRAC_2_PI.sqrt(), run.max.stderr, Z95, s.max_allowance),
                Check::new("E W2(t*)", run.h.mean, 0.0, run.h.stderr, Z95, 0.0),
                Check::new(
                    "P(max <= 1)",
                    run.below_one.mean,
                    libm::erf(1.0 / SQRT_2),
                    run.below_one.stderr,
                    3.0,
                    s.cdf_allowance,
                ),
            ],
        ),
        CriterionReport::new(
            4,
            "factorization of the spiral mixed volume",
            vec![
                Check::new("direct vs factorized", run.mixed.mean, fact, combined, 3.0, 0.05),
                Check::new("area correlation", run.area_correlation, 0.0, 0.0, 0.0, 4.0 / (s.n_paths as f64).sqrt()),
            ],
        ),
    ])
}

fn rectangles() -> Result<[Polytope; 2]> {
    Ok([Polytope::unit_box(&[1.0, 2.0])?, Polytope::unit_box(&[3.0, 4.0])?])
}

/// Criterion 5: spectral estimates against exact finite-dimensional values.
pub fn spectral_criterion(seed: u64, s: &Scale) -> Result<CriterionReport> {
    let rects = rectangles()?;
    let exact = mixed_volume_polarization(&rects)?;
    let mut checks = Vec::new();
    let e = estimate_mixed_volume(&rects, s.n_samples, seed)?;
    checks.push(Check::new("rectangles k=2 d=2", e.mean, exact, e.stderr, Z95, 0.0));
    let square = Polytope::unit_box(&[1.0, 1.0])?;
    let e = estimate_intrinsic_volume(&square, 2, s.n_samples, seed)?;
    checks.push(Check::new("unit square k=2", e.mean, 1.0, e.stderr, Z95, 0.0));
    let length = 1.5;
    for d in 1..=4 {
        let mut end = vec![0.0; d];
        if d == 1 {
            end[0] = length;
        } else {
            end[0] = 0.6 * length;
            end[1] = 0.8 * length;
        }
        let seg = Polytope::segment(&end)?;
        let e = estimate_intrinsic_volume(&seg, 1, s.n_samples, seed)?;
        checks.push(Check::new(format!("segment k=1 d={d}"), e.mean, length, e.stderr, Z95, 0.0));
    }
    Ok(CriterionReport::new(5, "spectral estimates of finite-dimensional volumes", checks))
}

/// Criterion 6: zero-padded spectral estimates against the exact planar value.
pub fn dimension_criterion(seed: u64, s: &Scale) -> Result<CriterionReport> {
    let rects = rectangles()?;
    let exact = normalized_mixed_volume(&rects, 2, 8)?.value;
    let mut checks = vec![Check::exact("exact d=2", exact, 5.0, 1e-9)];
    for d in [3, 4] {
        let padded = rects.iter().map(|r| r.zero_padded(d)).collect::<Result<Vec<_>>>()?;
        let e = estimate_mixed_volume(&padded, s.n_samples, seed)?;
        checks.push(Check::new(format!("spectral d={d}"), e.mean, exact, e.stderr, Z95, s.padded_allowance));
    }
    Ok(CriterionReport::new(6, "dimension invariance of the normalized mixed volume", checks))
}

/// Criterion 7: polarization and interpolation agree; Steiner fit; brackets.
pub fn exact_criterion(seed: u64, s: &Scale) -> Result<CriterionReport> {
    let mut rng = RngStream::new(seed, stream_id(POLYTOPE_TAG, 0));
    let mut worst_2d: f64 = 0.0;
    for _ in 0..s.pairs_2d {
        let bodies = [
            random_polytope_between(2, 3, 12, &mut rng)?,
            random_polytope_between(2, 3, 12, &mut rng)?,
        ];
        worst_2d = worst_2d.max(route_gap(&bodies)?);
    }
    let mut worst_3d: f64 = 0.0;
    for _ in 0..s.triples_3d {
        let bodies = [
            random_polytope_between(3, 4, 10, &mut rng)?,
            random_polytope_between(3, 4, 10, &mut rng)?,
            random_polytope_between(3, 4, 10, &mut rng)?,
        ];
        worst_3d = worst_3d.max(route_gap(&bodies)?);
    }
    let mut checks = vec![
        Check::exact(format!("worst relative gap, {} pairs d=2", s.pairs_2d), worst_2d, 0.0, 1e-6),
        Check::exact(format!("worst relative gap, {} triples d=3", s.triples_3d), worst_3d, 0.0, 1e-6),
    ];

    let square = Polytope::unit_box(&[1.0, 1.0])?;
    let steiner = steiner_fit(&square, BallApprox::inscribed(512), &[0.5, 1.0, 1.5, 2.0])?;
    for (k, (v, want)) in steiner.intrinsic_volumes().iter().zip([1.0, 2.0, 1.0]).enumerate() {
        checks.push(Check::exact(format!("Steiner V{k} of the unit square"), *v, want, 1e-2));
    }

    let cube = Polytope::unit_box(&[1.0, 1.0, 1.0])?;
    let seg = Polytope::segment(&[0.6, 0.8])?;
    let rects = rectangles()?;
    let bracketed: [(&str, Vec<Polytope>, usize, f64); 5] = [
        ("V1 unit square, d=2", vec![square.clone()], 2, 2.0),
        ("segment, d=2", vec![seg.clone()], 2, 1.0),
        ("segment, d=3", vec![seg.zero_padded(3)?], 3, 1.0),
        ("rectangles, d=3", rects.to_vec(), 3, 5.0),
        ("V2 unit cube, d=3", vec![cube.clone(), cube], 3, intrinsic_volume_box(&[1.0; 3], 2)?),
    ];
    for (name, bodies, d, exact) in bracketed {
        let n_ball = if d == 2 { 256 } else { 162 };
        let b = normalized_mixed_volume(&bodies, d, n_ball)?;
        let inside = b.lo <= exact * (1.0 + 1e-9) && exact <= b.hi * (1.0 + 1e-9);
        checks.push(Check::holds(format!("bracket [{:.6}, {:.6}] contains {name} = {exact}", b.lo, b.hi), inside));
    }
    Ok(CriterionReport::new(7, "exact routes: polarization, interpolation, Steiner, brackets", checks))
}

/// Relative gap between the two exact routes for `k = d` bodies.
pub fn route_gap(bodies: &[Polytope]) -> Result<f64> {
    let d = bodies.len();
    let pol = mixed_volume_polarization(bodies)?;
    let query = MixedVolumeQuery::new(bodies, d, BallApprox::inscribed(8))?;
    let int = mixed_volume_interpolation(&query, &default_weights(d))?;
    Ok(rel_diff(pol, int.value))
}

pub const CAUCHY_GRIDS: [usize; 4] = [512, 1024, 2048, 4096];

fn polygon(body: &Polytope) -> Vec<P2> {
    body.vertices().iter().map(|v| [v.coords()[0], v.coords()[1]]).collect()
}

/// Criterion 8: Cauchy quadrature against edge sums, volumes and polarization.
pub fn cauchy_criterion(seed: u64, s: &Scale) -> Result<CriterionReport> {
    let mut rng = RngStream::new(seed, stream_id(POLYTOPE_TAG, 1));
    let mut worst_len: f64 = 0.0;
    let mut worst_area: f64 = 0.0;
    let mut mean_len = [0.0; CAUCHY_GRIDS.len()];
    let mut area_monotone = true;
    for _ in 0..s.cauchy_hulls {
        let body = random_polytope_between(2, 8, 32, &mut rng)?;
        let perimeter = planar::polygon_perimeter(&polygon(&body));
        let mut area_err = Vec::new();
        for (i, m) in CAUCHY_GRIDS.into_iter().enumerate() {
            let p = support_profile(&body, m)?;
            let le = rel_diff(cauchy_length(&p), perimeter);
            let ae = rel_diff(cauchy_area(&p)?, body.volume());
            mean_len[i] += le / s.cauchy_hulls as f64;
            area_err.push(ae);
            if i + 1 == CAUCHY_GRIDS.len() {
                worst_len = worst_len.max(le);
                worst_area = worst_area.max(ae);
            }
        }
        area_monotone &= area_err.windows(2).all(|w| w[1] < w[0]);
    }
    let mut worst_mixed: f64 = 0.0;
    for _ in 0..s.cauchy_pairs {
        let a = random_polytope_between(2, 8, 32, &mut rng)?;
        let b = random_polytope_between(2, 8, 32, &mut rng)?;
        let q = cauchy_mixed_area(&support_profile(&a, 4096)?, &support_profile(&b, 4096)?)?;
        worst_mixed = worst_mixed.max(rel_diff(q, mixed_volume_polarization(&[a, b])?));
    }
    let checks = vec![
        Check::exact(format!("worst relative length error, {} hulls, m=4096", s.cauchy_hulls), worst_len, 0.0, 2e-2),
        Check::exact(format!("worst relative area error, {} hulls, m=4096", s.cauchy_hulls), worst_area, 0.0, 2e-2),
        Check::holds("area error decreases with m on every hull", area_monotone),
        Check::holds(
            "mean length error decreases with m",
            mean_len.windows(2).all(|w| w[1] < w[0]),
        ),
        Check::exact(format!("worst relative mixed-area error, {} pairs", s.cauchy_pairs), worst_mixed, 0.0, 3e-2),
    ];
    Ok(CriterionReport::new(8, "Cauchy quadrature of length, area and mixed area", checks))
}

/// Runs criteria 1–8.
pub fn reproduce_all(opts: SuiteOptions) -> Result<SuiteReport> {
    let s = Scale::of(opts.quick);
    let mut criteria = brownian_criteria(opts.seed, &s)?;
    criteria.push(spectral_criterion(opts.seed, &s)?);
    criteria.push(dimension_criterion(opts.seed, &s)?);
    criteria.push(exact_criterion(opts.seed, &s)?);
    criteria.push(cauchy_criterion(opts.seed, &s)?);
    Ok(SuiteReport {
        seed: opts.seed,
        quick: opts.quick,
        pass: criteria.iter().all(|c| c.pass),
        criteria,
    })
}
