use gaussmix::{convex_hull, minkowski_sum, scale, Point, Polytope};
use proptest::prelude::*;

fn cloud(d: usize, min: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, d), min..max)
        .prop_map(|rows| rows.iter().map(|r| Point::new(r).unwrap()).collect())
}

fn body(d: usize) -> impl Strategy<Value = Polytope> {
    cloud(d, d + 1, 16).prop_map(|pts| convex_hull(&pts).unwrap())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_is_idempotent(d in 2usize..=4, seed_pts in cloud(4, 5, 24)) {
        let pts: Vec<Point> = seed_pts.iter().map(|p| Point::new(&p.coords()[..d]).unwrap()).collect();
        let once = convex_hull(&pts).unwrap();
        let twice = convex_hull(once.vertices()).unwrap();
        prop_assert!(once.same_vertex_set(&twice, 1e-12));
        prop_assert!(rel_close(once.volume(), twice.volume(), 1e-12));
    }

    #[test]
    fn volume_is_monotone_on_nested_hulls(pts in cloud(3, 8, 24), keep in prop::collection::vec(any::<bool>(), 24)) {
        let outer = convex_hull(&pts).unwrap();
        let mut sub: Vec<Point> = pts.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| p.clone()).collect();
        sub.push(pts[0].clone());
        let inner = convex_hull(&sub).unwrap();
        prop_assert!(inner.volume() <= outer.volume() * (1.0 + 1e-12));
        for v in inner.vertices() {
            prop_assert!(outer.contains(v, 1e-9));
        }
    }

    #[test]
    fn volume_is_homogeneous(d in 2usize..=4, p in cloud(4, 6, 16), lambda in 0.0f64..3.0) {
        let pts: Vec<Point> = p.iter().map(|q| Point::new(&q.coords()[..d]).unwrap()).collect();
        let body = convex_hull(&pts).unwrap();
        let scaled = scale(&body, lambda).unwrap();
        let want = lambda.powi(d as i32) * body.volume();
        prop_assert!((scaled.volume() - want).abs() <= 1e-10 * want.max(1e-12), "{} vs {want}", scaled.volume());
        // Recomputed from scratch, not just rescaled.
        let rebuilt = convex_hull(scaled.vertices()).unwrap();
        prop_assert!((rebuilt.volume() - want).abs() <= 1e-10 * want.max(1e-12));
    }

    #[test]
    fn minkowski_sum_commutes_and_associates(a in body(2), b in body(2), c in body(2)) {
        let ab = minkowski_sum(&a, &b).unwrap();
        let ba = minkowski_sum(&b, &a).unwrap();
        prop_assert!(ab.same_vertex_set(&ba, 1e-12));
        let ab_c = minkowski_sum(&ab, &c).unwrap();
        let a_bc = minkowski_sum(&a, &minkowski_sum(&b, &c).unwrap()).unwrap();
        prop_assert!(ab_c.same_vertex_set(&a_bc, 1e-12));
    }

    #[test]
    fn minkowski_sum_commutes_in_three_dimensions(a in body(3), b in body(3)) {
        let ab = minkowski_sum(&a, &b).unwrap();
        let ba = minkowski_sum(&b, &a).unwrap();
        prop_assert!(ab.same_vertex_set(&ba, 1e-12));
        prop_assert!(rel_close(ab.volume(), ba.volume(), 1e-12));
    }

    #[test]
    fn volume_is_translation_invariant(d in 2usize..=5, p in cloud(5, 7, 16), shift in prop::collection::vec(-5.0f64..5.0, 5)) {
        let pts: Vec<Point> = p.iter().map(|q| Point::new(&q.coords()[..d]).unwrap()).collect();
        let body = convex_hull(&pts).unwrap();
        let moved = body.translate(&Point::new(&shift[..d]).unwrap()).unwrap();
        prop_assert!((moved.volume() - body.volume()).abs() <= 1e-10 * body.volume().max(1e-12));
    }
}
