//! Small dense kernels for dimensions up to `MAX_DIM`.

use super::point::MAX_DIM;

pub(crate) type Vector = [f64; MAX_DIM];

/// Determinant of the leading `n x n` block by LU with partial pivoting.
pub(crate) fn det(mut m: [[f64; MAX_DIM]; MAX_DIM], n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for row in col + 1..n {
            let f = m[row][col] / p;
            if f != 0.0 {
                for k in col + 1..n {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    det
}

/// Unit normal of the hyperplane through `n` points of `R^n`, via cofactors.
///
/// Returns `None` when the points are affinely dependent.
pub(crate) fn hyperplane_normal(points: &[&[f64]], n: usize) -> Option<Vector> {
    debug_assert_eq!(points.len(), n);
    let base = points[0];
    let mut rows = [[0.0; MAX_DIM]; MAX_DIM];
    for (r, p) in points[1..].iter().enumerate() {
        for c in 0..n {
            rows[r][c] = p[c] - base[c];
        }
    }
    let mut normal = [0.0; MAX_DIM];
    for (j, slot) in normal.iter_mut().enumerate().take(n) {
        let mut minor = [[0.0; MAX_DIM]; MAX_DIM];
        for r in 0..n - 1 {
            let mut cc = 0;
            for c in 0..n {
                if c != j {
                    minor[r][cc] = rows[r][c];
                    cc += 1;
                }
            }
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * det(minor, n - 1);
    }
    let len = normal[..n].iter().map(|x| x * x).sum::<f64>().sqrt();
    if len == 0.0 || !len.is_finite() {
        return None;
    }
    for x in &mut normal[..n] {
        *x /= len;
    }
    Some(normal)
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Incremental Gram-Schmidt basis used for rank and affine-dimension tests.
#[derive(Default)]
pub(crate) struct OrthoBasis {
    dim: usize,
    vectors: Vec<Vector>,
}

impl OrthoBasis {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            dim,
            vectors: Vec::with_capacity(dim),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.vectors.len()
    }

    pub(crate) fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Component of `v` orthogonal to the current span.
    pub(crate) fn residual(&self, v: &[f64]) -> Vector {
        let mut r = [0.0; MAX_DIM];
        r[..self.dim].copy_from_slice(&v[..self.dim]);
        // Two passes of classical Gram-Schmidt keep the basis orthogonal to
        // working precision.
        for _ in 0..2 {
            for b in &self.vectors {
                let c = dot(&r[..self.dim], &b[..self.dim]);
                for i in 0..self.dim {
                    r[i] -= c * b[i];
                }
            }
        }
        r
    }

    /// Adds `v` if its residual exceeds `tol`; returns whether it was added.
    pub(crate) fn try_push(&mut self, v: &[f64], tol: f64) -> bool {
        if self.vectors.len() == self.dim {
            return false;
        }
        let r = self.residual(v);
        let len = dot(&r[..self.dim], &r[..self.dim]).sqrt();
        if len <= tol {
            return false;
        }
        let mut unit = r;
        for x in &mut unit[..self.dim] {
            *x /= len;
        }
        self.vectors.push(unit);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_permuted_diagonal() {
        let mut m = [[0.0; MAX_DIM]; MAX_DIM];
        m[0][1] = 2.0;
        m[1][0] = 3.0;
        m[2][2] = 4.0;
        assert_eq!(det(m, 3), -24.0);
    }

    #[test]
    fn normal_of_coordinate_plane() {
        let pts: [&[f64]; 3] = [&[0.0, 0.0, 1.0], &[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]];
        let n = hyperplane_normal(&pts, 3).unwrap();
        assert!((n[2].abs() - 1.0).abs() < 1e-15);
        assert!(n[0].abs() < 1e-15 && n[1].abs() < 1e-15);
        let flat: [&[f64]; 3] = [&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0], &[2.0, 2.0, 2.0]];
        assert!(hyperplane_normal(&flat, 3).is_none());
    }

    #[test]
    fn basis_detects_rank() {
        let mut b = OrthoBasis::new(3);
        assert!(b.try_push(&[1.0, 1.0, 0.0], 1e-12));
        assert!(!b.try_push(&[2.0, 2.0, 0.0], 1e-12));
        assert!(b.try_push(&[0.0, 1.0, 0.0], 1e-12));
        assert!(!b.try_push(&[5.0, -3.0, 0.0], 1e-12));
        assert_eq!(b.len(), 2);
    }
}
