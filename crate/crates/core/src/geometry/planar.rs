//! Planar kernels on raw coordinate pairs.
//!
//! These back the generic polytope operations in dimension two and are also
//! called directly from the Brownian hot loop, where building a
//! [`Polytope`](super::Polytope) per intermediate set would dominate.

use std::cmp::Ordering;

use super::HULL_EPS;

pub type P2 = [f64; 2];

#[inline]
pub fn cross(o: P2, a: P2, b: P2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Largest coordinate extent of the point set.
pub fn extent(points: &[P2]) -> f64 {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for i in 0..2 {
            if p[i] < lo[i] {
                lo[i] = p[i];
            }
            if p[i] > hi[i] {
                hi[i] = p[i];
            }
        }
    }
    (hi[0] - lo[0]).max(hi[1] - lo[1]).max(0.0)
}

/// Strict counterclockwise turn at `a`: the sine of the turning angle must
/// exceed `HULL_EPS`.
#[inline]
fn left_turn(o: P2, a: P2, b: P2) -> bool {
    let c = cross(o, a, b);
    if c <= 0.0 {
        return false;
    }
    let la = (a[0] - o[0]).powi(2) + (a[1] - o[1]).powi(2);
    let lb = (b[0] - o[0]).powi(2) + (b[1] - o[1]).powi(2);
    c * c > HULL_EPS * HULL_EPS * la * lb
}

fn lex(points: &[P2], a: usize, b: usize) -> Ordering {
    let (p, q) = (points[a], points[b]);
    p[0].total_cmp(&q[0])
        .then(p[1].total_cmp(&q[1]))
        .then(a.cmp(&b))
}

/// Indices of the hull vertices in counterclockwise order, starting at the
/// lexicographically smallest vertex. Collinear boundary points are dropped.
pub fn hull_indices(points: &[P2]) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }
    let scale = extent(points);
    let tol = HULL_EPS * scale * scale;
    let mut idx = if points.len() > 64 {
        interior_filter(points, tol)
    } else {
        (0..points.len()).collect()
    };
    idx.sort_unstable_by(|&a, &b| lex(points, a, b));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    monotone_chain(points, &idx)
}

fn monotone_chain(points: &[P2], sorted: &[usize]) -> Vec<usize> {
    if sorted.len() <= 1 {
        return sorted.to_vec();
    }
    let mut lower: Vec<usize> = Vec::with_capacity(sorted.len());
    for &i in sorted {
        while lower.len() >= 2
            && !left_turn(points[lower[lower.len() - 2]], points[lower[lower.len() - 1]], points[i])
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(sorted.len());
    for &i in sorted.iter().rev() {
        while upper.len() >= 2
            && !left_turn(points[upper[upper.len() - 2]], points[upper[upper.len() - 1]], points[i])
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

const DIRS: [P2; 8] = [
    [1.0, 0.0],
    [1.0, 1.0],
    [0.0, 1.0],
    [-1.0, 1.0],
    [-1.0, 0.0],
    [-1.0, -1.0],
    [0.0, -1.0],
    [1.0, -1.0],
];

/// Points per bounding box in the prefilter. Consecutive inputs that are
/// spatially close (paths) are then accepted or rejected a block at a time.
const BLOCK: usize = 32;

/// Akl-Toussaint prefilter: drops points strictly inside the polygon spanned
/// by the extreme points in eight compass directions.
fn interior_filter(points: &[P2], tol: f64) -> Vec<usize> {
    let boxes: Vec<[P2; 2]> = points
        .chunks(BLOCK)
        .map(|c| {
            let mut lo = c[0];
            let mut hi = c[0];
            for p in c {
                for i in 0..2 {
                    if p[i] < lo[i] {
                        lo[i] = p[i];
                    }
                    if p[i] > hi[i] {
                        hi[i] = p[i];
                    }
                }
            }
            [lo, hi]
        })
        .collect();
    let mut best = [0usize; 8];
    let mut best_val = [f64::NEG_INFINITY; 8];
    for (b, [lo, hi]) in boxes.iter().enumerate() {
        for (k, d) in DIRS.iter().enumerate() {
            let bound: f64 = (0..2).map(|i| (d[i] * lo[i]).max(d[i] * hi[i])).sum();
            if bound <= best_val[k] {
                continue;
            }
            let first = b * BLOCK;
            for (i, p) in points[first..(first + BLOCK).min(points.len())].iter().enumerate() {
                let v = d[0] * p[0] + d[1] * p[1];
                if v > best_val[k] {
                    best_val[k] = v;
                    best[k] = first + i;
                }
            }
        }
    }
    let mut corner_idx = best.to_vec();
    corner_idx.sort_unstable_by(|&a, &b| lex(points, a, b));
    corner_idx.dedup_by(|a, b| points[*a] == points[*b]);
    let poly = monotone_chain(points, &corner_idx);
    if poly.len() < 3 {
        return (0..points.len()).collect();
    }
    // Inward half-planes n·q > c of the counterclockwise corner polygon.
    let m = poly.len();
    let planes: Vec<[f64; 3]> = (0..m)
        .map(|j| {
            let (a, b) = (points[poly[j]], points[poly[(j + 1) % m]]);
            let n = [a[1] - b[1], b[0] - a[0]];
            [n[0], n[1], n[0] * a[0] + n[1] * a[1] + tol]
        })
        .collect();
    let outside = |q: P2| planes.iter().any(|h| h[0] * q[0] + h[1] * q[1] <= h[2]);
    let mut keep = Vec::with_capacity(points.len() / 8);
    for (b, [lo, hi]) in boxes.iter().enumerate() {
        let corners = [*lo, [hi[0], lo[1]], *hi, [lo[0], hi[1]]];
        if !corners.iter().any(|&c| outside(c)) {
            continue;
        }
        let first = b * BLOCK;
        for (i, q) in points[first..(first + BLOCK).min(points.len())].iter().enumerate() {
            if outside(*q) {
                keep.push(first + i);
            }
        }
    }
    keep
}

/// Shoelace area of a counterclockwise polygon.
pub fn polygon_area(poly: &[P2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let o = poly[0];
    let mut twice = 0.0;
    for i in 1..n - 1 {
        twice += cross(o, poly[i], poly[i + 1]);
    }
    0.5 * twice
}

/// Boundary length; a segment counts both sides, a point has length zero.
pub fn polygon_perimeter(poly: &[P2]) -> f64 {
    let n = poly.len();
    if n < 2 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
        })
        .sum()
}

/// Hull of the pairwise vertex sums of two convex polygons.
pub fn minkowski_hull(p: &[P2], q: &[P2]) -> Vec<P2> {
    let mut sums = Vec::with_capacity(p.len() * q.len());
    for a in p {
        for b in q {
            sums.push([a[0] + b[0], a[1] + b[1]]);
        }
    }
    hull_indices(&sums).into_iter().map(|i| sums[i]).collect()
}

/// Mixed area of two convex polygons by polarization:
/// `(A(P+Q) - A(P) - A(Q)) / 2`.
pub fn mixed_area(p: &[P2], q: &[P2]) -> f64 {
    let sum = minkowski_hull(p, q);
    (0.5 * (polygon_area(&sum) - polygon_area(p) - polygon_area(q))).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_interior_and_collinear_points() {
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [0.0, 1.0],
            [1.0, 1.0],
            [0.5, 0.5],
            [0.5, 0.0],
        ];
        let h = hull_indices(&pts);
        assert_eq!(h, vec![0, 1, 3, 2]);
        let poly: Vec<P2> = h.iter().map(|&i| pts[i]).collect();
        assert_eq!(polygon_area(&poly), 1.0);
        assert_eq!(polygon_perimeter(&poly), 4.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(hull_indices(&[[1.0, 1.0], [1.0, 1.0]]), vec![0]);
        let seg = hull_indices(&[[0.0, 0.0], [2.0, 2.0], [1.0, 1.0]]);
        assert_eq!(seg, vec![0, 1]);
        let poly: Vec<P2> = seg.iter().map(|&i| [i as f64 * 2.0, i as f64 * 2.0]).collect();
        assert!((polygon_perimeter(&poly) - 2.0 * 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn filter_keeps_all_points_in_convex_position() {
        let n = 200;
        let pts: Vec<P2> = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        assert_eq!(hull_indices(&pts).len(), n);
    }

    #[test]
    fn mixed_area_of_rectangles() {
        let r1 = [[0.0, 0.0], [1.0, 0.0], [1.0, 2.0], [0.0, 2.0]];
        let r2 = [[0.0, 0.0], [3.0, 0.0], [3.0, 4.0], [0.0, 4.0]];
        assert!((mixed_area(&r1, &r2) - 5.0).abs() < 1e-12);
    }
}
