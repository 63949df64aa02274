use std::collections::HashSet;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::hull::convex_hull;
use super::point::Point;
use super::polytope::{scale, Polytope};
use crate::error::{domain, Error, Result};

/// Which side of the unit ball a polytopal surrogate sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallMode {
    /// All vertices on the unit sphere; the surrogate is inside the ball.
    Inscribed,
    /// Inradius one; the surrogate contains the ball.
    Circumscribed,
}

impl fmt::Display for BallMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BallMode::Inscribed => "inscribed",
            BallMode::Circumscribed => "circumscribed",
        })
    }
}

impl FromStr for BallMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inscribed" => Ok(BallMode::Inscribed),
            "circumscribed" => Ok(BallMode::Circumscribed),
            other => domain(format!("unknown ball mode {other:?}")),
        }
    }
}

/// Polytopal surrogate of the unit ball `B^d`, `d ∈ {2, 3}`.
///
/// In the plane this is the regular `n`-gon with a vertex on the positive
/// x-axis. In space it is the geodesic icosphere of the smallest subdivision
/// frequency `f` with `10 f² + 2 ≥ n` vertices.
pub fn ball_polytope(d: usize, n: usize, mode: BallMode) -> Result<Polytope> {
    if n < d + 1 {
        return domain(format!("ball surrogate in R^{d} needs at least {} vertices", d + 1));
    }
    let inscribed = match d {
        2 => {
            let pts = (0..n)
                .map(|j| {
                    let t = TAU * j as f64 / n as f64;
                    Point::new(&[t.cos(), t.sin()])
                })
                .collect::<Result<Vec<_>>>()?;
            convex_hull(&pts)?
        }
        3 => icosphere(n)?,
        _ => return domain(format!("ball surrogates exist only for d in {{2, 3}}, got {d}")),
    };
    match mode {
        BallMode::Inscribed => Ok(inscribed),
        BallMode::Circumscribed => {
            let inradius = inscribed
                .facet_planes()
                .map(|(_, offset)| offset)
                .fold(f64::INFINITY, f64::min);
            scale(&inscribed, 1.0 / inradius)
        }
    }
}

fn icosphere(min_vertices: usize) -> Result<Polytope> {
    let mut freq = 1usize;
    while 10 * freq * freq + 2 < min_vertices {
        freq += 1;
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let base: [[f64; 3]; 12] = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    const FACES: [[usize; 3]; 20] = [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    let mut seen = HashSet::new();
    let mut pts = Vec::new();
    for [a, b, c] in FACES {
        for i in 0..=freq {
            for j in 0..=freq - i {
                let k = freq - i - j;
                let mut v = [0.0; 3];
                for (axis, slot) in v.iter_mut().enumerate() {
                    *slot = (i as f64 * base[a][axis] + j as f64 * base[b][axis] + k as f64 * base[c][axis])
                        / freq as f64;
                }
                let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                let v = [v[0] / len, v[1] / len, v[2] / len];
                // Shared edge points are generated once per incident face.
                let key = v.map(|x| (x * 1e9).round() as i64);
                if seen.insert(key) {
                    pts.push(Point::new(&v)?);
                }
            }
        }
    }
    debug_assert_eq!(pts.len(), 10 * freq * freq + 2);
    convex_hull(&pts)
}

/// Area of the regular `n`-gon inscribed in the unit circle.
pub fn inscribed_ngon_area(n: usize) -> f64 {
    0.5 * n as f64 * (TAU / n as f64).sin()
}

/// Area of the regular `n`-gon circumscribed about the unit circle.
pub fn circumscribed_ngon_area(n: usize) -> f64 {
    n as f64 * (PI / n as f64).tan()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_surrogate() {
        let sq = ball_polytope(2, 4, BallMode::Inscribed).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert!((sq.volume() - 2.0).abs() < 1e-15);
        assert!(sq.same_vertex_set(
            &Polytope::from_coords(&[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]]).unwrap(),
            1e-15
        ));
    }

    #[test]
    fn ngon_areas_match_closed_forms() {
        for n in [5, 17, 64, 1000] {
            let ins = ball_polytope(2, n, BallMode::Inscribed).unwrap().volume();
            let cir = ball_polytope(2, n, BallMode::Circumscribed).unwrap().volume();
            assert!((ins - inscribed_ngon_area(n)).abs() < 1e-12);
            assert!((cir - circumscribed_ngon_area(n)).abs() < 1e-12);
            assert!(ins <= PI && PI <= cir);
        }
        let big = ball_polytope(2, 1 << 14, BallMode::Inscribed).unwrap().volume();
        assert!((big - PI).abs() < 1e-6);
    }

    #[test]
    fn icosphere_brackets_the_ball() {
        let vol = 4.0 * PI / 3.0;
        let mut last_gap = f64::INFINITY;
        for n in [12, 42, 162, 642] {
            let ins = ball_polytope(3, n, BallMode::Inscribed).unwrap();
            let cir = ball_polytope(3, n, BallMode::Circumscribed).unwrap();
            assert_eq!(ins.vertices().len(), n);
            assert!(ins.volume() < vol && vol < cir.volume());
            let min_offset = cir.facet_planes().map(|(_, o)| o).fold(f64::INFINITY, f64::min);
            assert!((min_offset - 1.0).abs() < 1e-12);
            let gap = cir.volume() - ins.volume();
            assert!(gap < last_gap);
            last_gap = gap;
        }
    }

    #[test]
    fn rejects_unsupported_dimensions() {
        assert!(ball_polytope(4, 100, BallMode::Inscribed).is_err());
        assert!(ball_polytope(2, 2, BallMode::Inscribed).is_err());
        assert!("round".parse::<BallMode>().is_err());
    }
}
