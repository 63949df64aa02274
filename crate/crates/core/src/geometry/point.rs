use std::fmt;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 6;

/// A point of `R^d`, `1 <= d <= MAX_DIM`, with finite coordinates.
///
/// Coordinates are stored inline so that large point clouds (Brownian
/// paths, Minkowski-sum candidates) do not allocate per point.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: ArrayVec<f64, MAX_DIM>,
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return domain(format!(
                "point dimension {} outside 1..={MAX_DIM}",
                coords.len()
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return domain("point has a non-finite coordinate");
        }
        Ok(Self::from_iter_unchecked(coords.iter().copied()))
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Self::new(&vec![0.0; dim])
    }

    /// Builds a point from coordinates already known to be valid.
    pub(crate) fn from_iter_unchecked(coords: impl IntoIterator<Item = f64>) -> Self {
        Self {
            coords: coords.into_iter().collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Self::from_iter_unchecked(self.coords.iter().zip(other.coords()).map(|(a, b)| a + b))
    }

    pub fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Self::from_iter_unchecked(self.coords.iter().zip(other.coords()).map(|(a, b)| a - b))
    }

    pub fn scaled(&self, factor: f64) -> Point {
        Self::from_iter_unchecked(self.coords.iter().map(|c| c * factor))
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.coords.iter().zip(other.coords()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Embeds the point into `R^dim` by appending zero coordinates.
    pub fn zero_padded(&self, dim: usize) -> Result<Point> {
        if dim < self.dim() || dim > MAX_DIM {
            return domain(format!("cannot embed R^{} into R^{dim}", self.dim()));
        }
        let mut coords = self.coords.clone();
        while coords.len() < dim {
            coords.push(0.0);
        }
        Ok(Self { coords })
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = crate::Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(&coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords.to_vec()
    }
}
