use serde::{Deserialize, Serialize};

use super::hull::{convex_hull, hull_data, HullData};
use super::linalg::Vector;
use super::point::Point;
use crate::error::{domain, Error, Result};

/// A convex polytope given by its extreme points.
///
/// Values are only built through [`convex_hull`] (or operations that
/// preserve extremality), so every stored vertex is extreme and the
/// volume is computed once at construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson", into = "PolytopeJson")]
pub struct Polytope {
    vertices: Vec<Point>,
    dim_ambient: usize,
    dim_affine: usize,
    volume: f64,
    facets: Vec<(Vector, f64)>,
}

/// Wire format: `{"dim": d, "vertices": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Point>,
}

impl TryFrom<PolytopeJson> for Polytope {
    type Error = Error;

    fn try_from(raw: PolytopeJson) -> Result<Self> {
        if let Some(p) = raw.vertices.iter().find(|p| p.dim() != raw.dim) {
            return domain(format!(
                "vertex {:?} does not match declared dimension {}",
                p, raw.dim
            ));
        }
        convex_hull(&raw.vertices)
    }
}

impl From<Polytope> for PolytopeJson {
    fn from(p: Polytope) -> Self {
        PolytopeJson {
            dim: p.dim_ambient,
            vertices: p.vertices,
        }
    }
}

impl Polytope {
    pub(crate) fn from_hull(points: &[Point], data: HullData) -> Self {
        Self {
            vertices: data.vertex_idx.iter().map(|&i| points[i].clone()).collect(),
            dim_ambient: points[0].dim(),
            dim_affine: data.dim_affine,
            volume: data.volume,
            facets: data.facets,
        }
    }

    /// Hull of the given points; alias of [`convex_hull`].
    pub fn from_points(points: &[Point]) -> Result<Self> {
        convex_hull(points)
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_coords(rows: &[&[f64]]) -> Result<Self> {
        let pts = rows.iter().map(|r| Point::new(r)).collect::<Result<Vec<_>>>()?;
        convex_hull(&pts)
    }

    /// Axis-parallel box `[0, s_1] x ... x [0, s_d]`.
    pub fn unit_box(sides: &[f64]) -> Result<Self> {
        let d = sides.len();
        let pts = (0..1u32 << d)
            .map(|m| {
                let c: Vec<f64> = (0..d)
                    .map(|k| if (m >> k) & 1 == 1 { sides[k] } else { 0.0 })
                    .collect();
                Point::new(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        convex_hull(&pts)
    }

    /// Segment from the origin to `end`.
    pub fn segment(end: &[f64]) -> Result<Self> {
        let o = vec![0.0; end.len()];
        Self::from_coords(&[&o, end])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim_affine(&self) -> usize {
        self.dim_affine
    }

    /// Lebesgue measure in the ambient dimension (zero when flat).
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Outward facet planes `(unit normal, offset)` of a full-dimensional
    /// polytope; empty for flat ones.
    pub fn facet_planes(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.facets.iter().map(move |(n, o)| (&n[..self.dim_ambient], *o))
    }

    /// Support value `max_v <v, u>`.
    pub fn support(&self, direction: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.coords().iter().zip(direction).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn translate(&self, by: &Point) -> Result<Polytope> {
        if by.dim() != self.dim_ambient {
            return domain("translation vector has the wrong dimension");
        }
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.add(by)).collect();
        convex_hull(&pts)
    }

    /// Applies an arbitrary linear map given row by row (`rows.len()` is the
    /// target dimension).
    pub fn linear_image(&self, rows: &[Vec<f64>]) -> Result<Polytope> {
        if rows.iter().any(|r| r.len() != self.dim_ambient) {
            return domain("linear map does not match the polytope dimension");
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                let c: Vec<f64> = rows
                    .iter()
                    .map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                    .collect();
                Point::new(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        convex_hull(&pts)
    }

    /// Isometric embedding into `R^dim` (extra coordinates zero).
    pub fn zero_padded(&self, dim: usize) -> Result<Polytope> {
        if dim == self.dim_ambient {
            return Ok(self.clone());
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| v.zero_padded(dim))
            .collect::<Result<Vec<_>>>()?;
        convex_hull(&pts)
    }

    /// Vertex-set equality up to `tol` in the max norm.
    pub fn same_vertex_set(&self, other: &Polytope, tol: f64) -> bool {
        let close = |a: &Point, b: &Point| {
            a.coords()
                .iter()
                .zip(b.coords())
                .all(|(x, y)| (x - y).abs() <= tol)
        };
        self.dim_ambient == other.dim_ambient
            && self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .all(|a| other.vertices.iter().any(|b| close(a, b)))
    }

    /// Whether `p` lies in the polytope, up to `tol` (full-dimensional only;
    /// flat polytopes fall back to a hull-membership test).
    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        if self.dim_affine == self.dim_ambient && self.dim_ambient >= 2 {
            return self
                .facet_planes()
                .all(|(n, o)| n.iter().zip(p.coords()).map(|(a, b)| a * b).sum::<f64>() - o <= tol);
        }
        let mut pts = self.vertices.clone();
        pts.push(p.clone());
        match hull_data(&pts) {
            Ok(h) => (h.dim_affine == self.dim_affine && !h.vertex_idx.contains(&(pts.len() - 1)))
                || self.vertices.iter().any(|v| v.sub(p).norm() <= tol),
            Err(_) => false,
        }
    }
}

/// Minkowski sum: hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.dim_ambient != q.dim_ambient {
        return domain(format!(
            "Minkowski sum of polytopes in R^{} and R^{}",
            p.dim_ambient, q.dim_ambient
        ));
    }
    let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(a.add(b));
        }
    }
    convex_hull(&sums)
}

/// Dilation by a nonnegative factor; `λ = 0` collapses to the origin.
pub fn scale(p: &Polytope, lambda: f64) -> Result<Polytope> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return domain(format!("scale factor {lambda} must be finite and nonnegative"));
    }
    if lambda == 0.0 {
        return convex_hull(&[Point::origin(p.dim_ambient)?]);
    }
    let d = p.dim_ambient as i32;
    Ok(Polytope {
        vertices: p.vertices.iter().map(|v| v.scaled(lambda)).collect(),
        dim_ambient: p.dim_ambient,
        dim_affine: p.dim_affine,
        volume: p.volume * lambda.powi(d),
        facets: p
            .facets
            .iter()
            .map(|(n, o)| (*n, o * lambda))
            .collect(),
    })
}

/// Ambient-dimensional volume; zero for lower-dimensional polytopes.
pub fn volume(p: &Polytope) -> f64 {
    p.volume
}
