//! Support functions of planar bodies and Cauchy-formula quadrature.
//!
//! With `M(φ)` the support function in direction `(cos φ, sin φ)`:
//!
//! * perimeter `L = ∫ M dφ`,
//! * area `A = ½ ∫ (M² − M′²) dφ`,
//! * mixed area `Ṽ_2(K_1, K_2) = ½ ∫ (M_1 M_2 − M_1′ M_2′) dφ`,
//!
//! all over `[0, 2π)`. Integrals use the periodic trapezoid rule and `M′`
//! uses periodic central differences. For polygons `M′` jumps at every edge
//! normal, so the area formulas converge only as the grid is refined.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::{domain, Result};
use crate::geometry::Polytope;

pub const MIN_PROFILE_ANGLES: usize = 8;
pub const MIN_AREA_ANGLES: usize = 32;
pub const DEFAULT_GRID: usize = 4096;

/// `M` sampled at the `m` angles `2πj/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportProfile {
    values: Vec<f64>,
    source: Option<Polytope>,
}

/// Support profile of a planar polytope.
pub fn support_profile(body: &Polytope, m: usize) -> Result<SupportProfile> {
    if body.dim_ambient() != 2 {
        return domain(format!("support profiles need a planar body, got R^{}", body.dim_ambient()));
    }
    check_m(m)?;
    let values = (0..m)
        .map(|j| {
            let (s, c) = (TAU * j as f64 / m as f64).sin_cos();
            body.support(&[c, s]) + 0.0
        })
        .collect();
    Ok(SupportProfile {
        values,
        source: Some(body.clone()),
    })
}

fn check_m(m: usize) -> Result<()> {
    if m < MIN_PROFILE_ANGLES {
        return domain(format!("need at least {MIN_PROFILE_ANGLES} angles, got {m}"));
    }
    Ok(())
}

impl SupportProfile {
    /// Profile from raw samples on the uniform grid.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        check_m(values.len())?;
        if values.iter().any(|v| !v.is_finite()) {
            return domain("support values must be finite");
        }
        Ok(Self { values, source: None })
    }

    /// `M ≡ r`: the disk of radius `r` about the origin.
    pub fn disk(m: usize, r: f64) -> Result<Self> {
        Self::from_values(vec![r; m])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        TAU / self.len() as f64
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (0..self.len()).map(move |j| h * j as f64)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source(&self) -> Option<&Polytope> {
        self.source.as_ref()
    }

    /// Profile of the Minkowski sum of the two sources.
    pub fn sum(&self, other: &SupportProfile) -> Result<SupportProfile> {
        same_grid(self, other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(SupportProfile { values, source: None })
    }

    /// Periodic central differences `(M_{j+1} − M_{j−1}) / 2h`.
    pub fn derivative(&self) -> Vec<f64> {
        let m = self.len();
        let inv = 1.0 / (2.0 * self.step());
        (0..m)
            .map(|j| (self.values[(j + 1) % m] - self.values[(j + m - 1) % m]) * inv)
            .collect()
    }

    /// `angle,value` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("angle,value\n");
        for (a, v) in self.angles().zip(&self.values) {
            let _ = writeln!(out, "{a},{v}");
        }
        out
    }
}

fn same_grid(a: &SupportProfile, b: &SupportProfile) -> Result<()> {
    if a.len() != b.len() {
        return domain(format!("angle grids differ: {} vs {} points", a.len(), b.len()));
    }
    Ok(())
}

/// `∫ M dφ` by the trapezoid rule.
pub fn cauchy_length(profile: &SupportProfile) -> f64 {
    profile.step() * profile.values.iter().sum::<f64>()
}

/// `½ ∫ (M² − M′²) dφ`.
pub fn cauchy_area(profile: &SupportProfile) -> Result<f64> {
    cauchy_mixed_area(profile, profile)
}

/// `½ ∫ (M_1 M_2 − M_1′ M_2′) dφ`.
pub fn cauchy_mixed_area(p1: &SupportProfile, p2: &SupportProfile) -> Result<f64> {
    same_grid(p1, p2)?;
    if p1.len() < MIN_AREA_ANGLES {
        return domain(format!("area quadrature needs at least {MIN_AREA_ANGLES} angles, got {}", p1.len()));
    }
    let (d1, d2) = (p1.derivative(), p2.derivative());
    let sum: f64 = (0..p1.len())
        .map(|j| p1.values[j] * p2.values[j] - d1[j] * d2[j])
        .sum();
    Ok(0.5 * p1.step() * sum)
}
