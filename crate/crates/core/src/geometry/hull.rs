//! Convex hulls in dimension ≤ 6.
//!
//! The affine hull of the input is found first by greedy Gram-Schmidt; the
//! points are then hulled inside it: trivially in dimension 0 and 1, by a
//! monotone chain in dimension 2, and by a simplicial quickhull above.

use std::collections::HashMap;

use arrayvec::ArrayVec;

use super::linalg::{det, dot, hyperplane_normal, OrthoBasis, Vector};
use super::planar;
use super::point::{Point, MAX_DIM};
use super::polytope::Polytope;
use super::HULL_EPS;
use crate::error::{domain, Error, Result};

/// Computes the convex hull of a finite point set.
///
/// Only extreme points are kept. In the plane they are listed in
/// counterclockwise boundary order; otherwise in input order.
pub fn convex_hull(points: &[Point]) -> Result<Polytope> {
    let data = hull_data(points)?;
    Ok(Polytope::from_hull(points, data))
}

/// Raw hull result, indexed into the input slice.
pub(crate) struct HullData {
    pub vertex_idx: Vec<usize>,
    pub dim_affine: usize,
    pub volume: f64,
    /// Outward unit normals and offsets; present only for full-dimensional
    /// hulls in dimension ≥ 2.
    pub facets: Vec<(Vector, f64)>,
}

pub(crate) fn hull_data(points: &[Point]) -> Result<HullData> {
    let Some(first) = points.first() else {
        return domain("convex hull of an empty point set");
    };
    let dim = first.dim();
    if points.iter().any(|p| p.dim() != dim) {
        return domain("points of mixed dimensions");
    }

    let (start, scale) = farthest_from(points, first);
    if scale == 0.0 {
        return Ok(HullData {
            vertex_idx: vec![0],
            dim_affine: 0,
            volume: 0.0,
            facets: Vec::new(),
        });
    }
    let origin = &points[start];
    let (simplex, basis) = affine_frame(points, start, scale);
    let rank = basis.len();

    match rank {
        1 => {
            let dir = &basis.vectors()[0];
            let t = |p: &Point| dot(&p.sub(origin).coords()[..dim], &dir[..dim]);
            let (mut lo, mut hi) = (0, 0);
            let (mut tlo, mut thi) = (f64::INFINITY, f64::NEG_INFINITY);
            for (i, p) in points.iter().enumerate() {
                let v = t(p);
                if v < tlo {
                    tlo = v;
                    lo = i;
                }
                if v > thi {
                    thi = v;
                    hi = i;
                }
            }
            let volume = if dim == 1 { thi - tlo } else { 0.0 };
            Ok(HullData {
                vertex_idx: vec![lo, hi],
                dim_affine: 1,
                volume,
                facets: Vec::new(),
            })
        }
        2 => {
            let flat: Vec<planar::P2> = if dim == 2 {
                points.iter().map(|p| [p.coords()[0], p.coords()[1]]).collect()
            } else {
                let (b0, b1) = (&basis.vectors()[0], &basis.vectors()[1]);
                points
                    .iter()
                    .map(|p| {
                        let v = p.sub(origin);
                        [dot(v.coords(), &b0[..dim]), dot(v.coords(), &b1[..dim])]
                    })
                    .collect()
            };
            let idx = planar::hull_indices(&flat);
            let (volume, facets) = if dim == 2 {
                let poly: Vec<planar::P2> = idx.iter().map(|&i| flat[i]).collect();
                (planar::polygon_area(&poly), edge_facets(&poly))
            } else {
                (0.0, Vec::new())
            };
            Ok(HullData {
                vertex_idx: idx,
                dim_affine: 2,
                volume,
                facets,
            })
        }
        r => {
            let coords: Vec<f64> = if r == dim {
                points.iter().flat_map(|p| p.coords().iter().copied()).collect()
            } else {
                points
                    .iter()
                    .flat_map(|p| {
                        let v = p.sub(origin);
                        basis
                            .vectors()
                            .iter()
                            .map(move |b| dot(v.coords(), &b[..dim]))
                            .collect::<ArrayVec<f64, MAX_DIM>>()
                    })
                    .collect()
            };
            let mut qh = QuickHull::new(r, &coords, HULL_EPS * scale);
            qh.run(&simplex)?;
            let vertex_idx = qh.extreme_vertices();
            let volume = if r == dim { qh.volume(&vertex_idx) } else { 0.0 };
            let facets = if r == dim { qh.facet_planes() } else { Vec::new() };
            Ok(HullData {
                vertex_idx,
                dim_affine: r,
                volume,
                facets,
            })
        }
    }
}

fn farthest_from(points: &[Point], from: &Point) -> (usize, f64) {
    let mut best = (0, 0.0);
    for (i, p) in points.iter().enumerate() {
        let d = p.sub(from).norm();
        if d > best.1 {
            best = (i, d);
        }
    }
    best
}

/// Greedy affinely independent subset (the seed simplex) and an orthonormal
/// basis of the affine hull's direction space.
fn affine_frame(points: &[Point], start: usize, scale: f64) -> (Vec<usize>, OrthoBasis) {
    let origin = &points[start];
    let dim = origin.dim();
    let tol = HULL_EPS * scale;
    let mut basis = OrthoBasis::new(dim);
    let mut simplex = vec![start];
    while basis.len() < dim {
        let mut best = (usize::MAX, tol);
        for (i, p) in points.iter().enumerate() {
            let r = basis.residual(p.sub(origin).coords());
            let len = dot(&r[..dim], &r[..dim]).sqrt();
            if len > best.1 {
                best = (i, len);
            }
        }
        if best.0 == usize::MAX {
            break;
        }
        let v = points[best.0].sub(origin);
        if !basis.try_push(v.coords(), tol) {
            break;
        }
        simplex.push(best.0);
    }
    (simplex, basis)
}

fn edge_facets(poly: &[planar::P2]) -> Vec<(Vector, f64)> {
    let n = poly.len();
    if n < 3 {
        return Vec::new();
    }
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let len = (dx * dx + dy * dy).sqrt();
            let mut normal = [0.0; MAX_DIM];
            normal[0] = dy / len;
            normal[1] = -dx / len;
            let offset = normal[0] * a[0] + normal[1] * a[1];
            (normal, offset)
        })
        .collect()
}

struct Facet {
    verts: ArrayVec<usize, MAX_DIM>,
    /// `neighbors[i]` shares the ridge opposite `verts[i]`.
    neighbors: ArrayVec<usize, MAX_DIM>,
    normal: Vector,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

/// Simplicial quickhull for full-dimensional point sets in `R^dim`, `dim ≥ 3`.
///
/// A facet counts as visible from a point when the point lies on or beyond
/// its hyperplane up to `eps`; absorbing such coplanar facets guarantees every
/// new facet has height > `eps` over its horizon ridge.
struct QuickHull<'a> {
    dim: usize,
    coords: &'a [f64],
    eps: f64,
    interior: Vector,
    facets: Vec<Facet>,
    /// Per-facet visit marker for the visibility search.
    stamp: Vec<u32>,
    visible_flag: Vec<bool>,
    round: u32,
}

impl<'a> QuickHull<'a> {
    fn new(dim: usize, coords: &'a [f64], eps: f64) -> Self {
        Self {
            dim,
            coords,
            eps,
            interior: [0.0; MAX_DIM],
            facets: Vec::new(),
            stamp: Vec::new(),
            visible_flag: Vec::new(),
            round: 0,
        }
    }

    #[inline]
    fn pt(&self, i: usize) -> &'a [f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    fn dist(&self, f: usize, i: usize) -> f64 {
        let facet = &self.facets[f];
        dot(&facet.normal[..self.dim], self.pt(i)) - facet.offset
    }

    fn n_points(&self) -> usize {
        self.coords.len() / self.dim
    }

    fn push_facet(&mut self, verts: ArrayVec<usize, MAX_DIM>) -> Result<usize> {
        let pts: ArrayVec<&[f64], MAX_DIM> = verts.iter().map(|&v| self.pt(v)).collect();
        let mut normal = hyperplane_normal(&pts, self.dim)
            .ok_or_else(|| Error::Numerical("degenerate facet during hull construction".into()))?;
        let mut offset = dot(&normal[..self.dim], pts[0]);
        if dot(&normal[..self.dim], &self.interior[..self.dim]) - offset > 0.0 {
            for x in &mut normal[..self.dim] {
                *x = -*x;
            }
            offset = -offset;
        }
        let id = self.facets.len();
        self.facets.push(Facet {
            neighbors: ArrayVec::from_iter(std::iter::repeat_n(usize::MAX, verts.len())),
            verts,
            normal,
            offset,
            outside: Vec::new(),
            alive: true,
        });
        self.stamp.push(0);
        self.visible_flag.push(false);
        Ok(id)
    }

    /// Moves each candidate into the outside set of the facet it lies
    /// farthest beyond, dropping points inside (up to `eps`).
    fn assign(&mut self, candidates: impl IntoIterator<Item = usize>, facets: &[usize]) {
        for p in candidates {
            let mut best = (usize::MAX, self.eps);
            for &f in facets {
                let d = self.dist(f, p);
                if d > best.1 {
                    best = (f, d);
                }
            }
            if best.0 != usize::MAX {
                self.facets[best.0].outside.push(p);
            }
        }
    }

    fn run(&mut self, simplex: &[usize]) -> Result<()> {
        let d = self.dim;
        debug_assert_eq!(simplex.len(), d + 1);
        for &s in simplex {
            for (k, x) in self.pt(s).iter().enumerate() {
                self.interior[k] += x / (d + 1) as f64;
            }
        }
        for i in 0..=d {
            let verts: ArrayVec<usize, MAX_DIM> = simplex
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect();
            self.push_facet(verts)?;
        }
        for i in 0..=d {
            for slot in 0..d {
                let v = self.facets[i].verts[slot];
                let j = simplex.iter().position(|&s| s == v).unwrap();
                self.facets[i].neighbors[slot] = j;
            }
        }
        let in_simplex: Vec<bool> = {
            let mut m = vec![false; self.n_points()];
            for &s in simplex {
                m[s] = true;
            }
            m
        };
        let all: Vec<usize> = (0..=d).collect();
        self.assign((0..self.n_points()).filter(|&p| !in_simplex[p]), &all);

        let mut pending: Vec<usize> = all;
        while let Some(f) = pending.pop() {
            if !self.facets[f].alive || self.facets[f].outside.is_empty() {
                continue;
            }
            let apex = {
                let facet = &self.facets[f];
                let mut best = (facet.outside[0], f64::NEG_INFINITY);
                for &p in &facet.outside {
                    let dist = self.dist(f, p);
                    if dist > best.1 {
                        best = (p, dist);
                    }
                }
                best.0
            };
            let new_facets = self.add_point(f, apex)?;
            pending.extend(new_facets.into_iter().filter(|&g| !self.facets[g].outside.is_empty()));
        }
        Ok(())
    }

    fn add_point(&mut self, seed: usize, apex: usize) -> Result<Vec<usize>> {
        self.round += 1;
        let round = self.round;
        let mut visible = vec![seed];
        self.stamp[seed] = round;
        self.visible_flag[seed] = true;
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        let mut head = 0;
        while head < visible.len() {
            let v = visible[head];
            head += 1;
            for slot in 0..self.dim {
                let n = self.facets[v].neighbors[slot];
                if self.stamp[n] != round {
                    self.stamp[n] = round;
                    let vis = self.dist(n, apex) > -self.eps;
                    self.visible_flag[n] = vis;
                    if vis {
                        visible.push(n);
                    }
                }
                if !self.visible_flag[n] {
                    horizon.push((v, slot));
                }
            }
        }

        let mut orphans: Vec<usize> = Vec::new();
        for &v in &visible {
            self.facets[v].alive = false;
            orphans.extend(self.facets[v].outside.drain(..).filter(|&p| p != apex));
        }

        let mut created = Vec::with_capacity(horizon.len());
        let mut open_ridges: HashMap<ArrayVec<usize, MAX_DIM>, (usize, usize)> = HashMap::new();
        for (v, slot) in horizon {
            let other = self.facets[v].neighbors[slot];
            let mut verts: ArrayVec<usize, MAX_DIM> = ArrayVec::new();
            verts.push(apex);
            for (k, &w) in self.facets[v].verts.iter().enumerate() {
                if k != slot {
                    verts.push(w);
                }
            }
            let g = self.push_facet(verts.clone())?;
            created.push(g);
            self.facets[g].neighbors[0] = other;
            let back = self.facets[other]
                .neighbors
                .iter()
                .position(|&x| x == v)
                .ok_or_else(|| Error::Numerical("inconsistent hull adjacency".into()))?;
            self.facets[other].neighbors[back] = g;
            for s in 1..verts.len() {
                let mut key: ArrayVec<usize, MAX_DIM> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != 0 && k != s)
                    .map(|(_, &w)| w)
                    .collect();
                key.sort_unstable();
                if let Some((h, hs)) = open_ridges.remove(&key) {
                    self.facets[g].neighbors[s] = h;
                    self.facets[h].neighbors[hs] = g;
                } else {
                    open_ridges.insert(key, (g, s));
                }
            }
        }
        if !open_ridges.is_empty() {
            return Err(Error::Numerical("hull horizon is not closed".into()));
        }
        self.assign(orphans, &created);
        Ok(created)
    }

    fn alive(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.alive)
    }

    /// Facet vertices whose incident normals span the space; points that
    /// ended up inside a face (coplanar input) are dropped.
    fn extreme_vertices(&self) -> Vec<usize> {
        let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
        for (id, f) in self.facets.iter().enumerate() {
            if f.alive {
                for &v in &f.verts {
                    incident.entry(v).or_default().push(id);
                }
            }
        }
        let mut out: Vec<usize> = incident
            .into_iter()
            .filter(|(_, fs)| {
                let mut basis = OrthoBasis::new(self.dim);
                for &f in fs {
                    basis.try_push(&self.facets[f].normal[..self.dim], 1e-8);
                    if basis.len() == self.dim {
                        return true;
                    }
                }
                false
            })
            .map(|(v, _)| v)
            .collect();
        out.sort_unstable();
        out
    }

    /// Volume by coning every boundary simplex to the vertex centroid.
    fn volume(&self, vertices: &[usize]) -> f64 {
        let d = self.dim;
        let mut centroid = [0.0; MAX_DIM];
        for &v in vertices {
            for (k, x) in self.pt(v).iter().enumerate() {
                centroid[k] += x / vertices.len() as f64;
            }
        }
        let factorial: f64 = (1..=d).map(|k| k as f64).product();
        let total: f64 = self
            .alive()
            .map(|f| {
                let mut m = [[0.0; MAX_DIM]; MAX_DIM];
                for (r, &v) in f.verts.iter().enumerate() {
                    for (c, x) in self.pt(v).iter().enumerate() {
                        m[r][c] = x - centroid[c];
                    }
                }
                det(m, d).abs()
            })
            .sum();
        total / factorial
    }

    fn facet_planes(&self) -> Vec<(Vector, f64)> {
        self.alive().map(|f| (f.normal, f.offset)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[&[f64]]) -> Vec<Point> {
        raw.iter().map(|c| Point::new(c).unwrap()).collect()
    }

    #[test]
    fn square_drops_interior_point_and_is_ccw() {
        let p = convex_hull(&pts(&[
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[0.0, 1.0],
            &[1.0, 1.0],
            &[0.5, 0.5],
        ]))
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.dim_affine(), 2);
        let v = p.vertices();
        for i in 0..4 {
            let (a, b, c) = (v[i].coords(), v[(i + 1) % 4].coords(), v[(i + 2) % 4].coords());
            assert!(planar::cross([a[0], a[1]], [b[0], b[1]], [c[0], c[1]]) > 0.0);
        }
    }

    #[test]
    fn single_point() {
        let p = convex_hull(&pts(&[&[0.0, 0.0]])).unwrap();
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.dim_affine(), 0);
        assert_eq!(p.volume(), 0.0);
    }

    #[test]
    fn errors() {
        assert!(convex_hull(&[]).is_err());
        assert!(convex_hull(&pts(&[&[0.0], &[0.0, 1.0]])).is_err());
    }

    #[test]
    fn circle_points_are_all_vertices() {
        let raw: Vec<Point> = (0..50)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / 50.0;
                Point::new(&[t.cos(), t.sin()]).unwrap()
            })
            .collect();
        assert_eq!(convex_hull(&raw).unwrap().vertices().len(), 50);
    }

    #[test]
    fn cube_with_face_and_edge_points() {
        let mut raw = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    raw.push(Point::new(&[i as f64 * 0.5, j as f64 * 0.5, k as f64 * 0.5]).unwrap());
                }
            }
        }
        let p = convex_hull(&raw).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert!((p.volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simplex_volume() {
        let p = convex_hull(&pts(&[
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
        ]))
        .unwrap();
        assert!((p.volume() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn lower_dimensional_in_space() {
        let seg = convex_hull(&pts(&[&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0], &[0.5, 0.5, 0.5]])).unwrap();
        assert_eq!(seg.dim_affine(), 1);
        assert_eq!(seg.vertices().len(), 2);
        assert_eq!(seg.volume(), 0.0);

        // A square lying in a tilted plane of R^4.
        let sq = convex_hull(&pts(&[
            &[0.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 1.0],
            &[1.0, 1.0, 1.0, 1.0],
            &[0.5, 0.5, 0.5, 0.5],
        ]))
        .unwrap();
        assert_eq!(sq.dim_affine(), 2);
        assert_eq!(sq.vertices().len(), 4);

        // A cube embedded in R^5.
        let mut cube = Vec::new();
        for m in 0..8u32 {
            let b = |k: u32| ((m >> k) & 1) as f64;
            cube.push(Point::new(&[b(0), b(1), 0.0, b(2), 0.0]).unwrap());
        }
        cube.push(Point::new(&[0.5, 0.5, 0.0, 0.5, 0.0]).unwrap());
        let c = convex_hull(&cube).unwrap();
        assert_eq!(c.dim_affine(), 3);
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.volume(), 0.0);
    }

    #[test]
    fn hypercubes_up_to_six_dimensions() {
        for d in 1..=6usize {
            let raw: Vec<Point> = (0..1u32 << d)
                .map(|m| {
                    let c: Vec<f64> = (0..d).map(|k| 2.0 * ((m >> k) & 1) as f64).collect();
                    Point::new(&c).unwrap()
                })
                .collect();
            let p = convex_hull(&raw).unwrap();
            assert_eq!(p.vertices().len(), 1 << d, "d={d}");
            let expect = 2f64.powi(d as i32);
            assert!((p.volume() - expect).abs() < 1e-9 * expect, "d={d}");
        }
    }

    #[test]
    fn cross_polytope_volume() {
        // conv{±e_i} in R^d has volume 2^d / d!.
        for d in 3..=6usize {
            let mut raw = Vec::new();
            for i in 0..d {
                for s in [-1.0, 1.0] {
                    let mut c = vec![0.0; d];
                    c[i] = s;
                    raw.push(Point::new(&c).unwrap());
                }
            }
            let p = convex_hull(&raw).unwrap();
            let fact: f64 = (1..=d).map(|k| k as f64).product();
            assert_eq!(p.vertices().len(), 2 * d);
            assert!((p.volume() - 2f64.powi(d as i32) / fact).abs() < 1e-12);
        }
    }
}
