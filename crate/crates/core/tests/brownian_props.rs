use gaussmix::brownian::{
    estimate_spiral_intrinsic, hull_volume, path_polygon, run_two_spirals, sample_brownian_path,
    sample_brownian_path_on,
};
use gaussmix::geometry::planar;
use gaussmix::montecarlo::{aggregate, sample_moments, stream_id};
use gaussmix::RngStream;

#[test]
fn endpoint_is_standard_normal() {
    let n = 1_000_000u64;
    let ends: Vec<f64> = (0..n)
        .map(|i| sample_brownian_path(1, 2, &mut RngStream::new(11, i)).unwrap().endpoint()[0])
        .collect();
    let e = aggregate(ends.iter().copied(), 11).unwrap();
    assert!(e.mean.abs() < 4.0 / (n as f64).sqrt(), "{e:?}");
    let var = aggregate(ends.iter().map(|x| x * x), 11).unwrap().mean - e.mean * e.mean;
    assert!((var - 1.0).abs() < 0.01, "variance {var}");
}

#[test]
fn increments_are_uncorrelated_with_variance_dt() {
    let n_steps = 50;
    let mut lag = Vec::new();
    let mut sq = Vec::new();
    for i in 0..20_000u64 {
        let p = sample_brownian_path(2, n_steps, &mut RngStream::new(12, i)).unwrap();
        let inc = |j: usize| p.point(j + 1)[0] - p.point(j)[0];
        lag.push(inc(3) * inc(4) * n_steps as f64);
        sq.push(inc(7).powi(2) * n_steps as f64);
    }
    let l = aggregate(lag, 0).unwrap();
    let s = aggregate(sq, 0).unwrap();
    assert!(l.mean.abs() < 4.0 * l.stderr, "{l:?}");
    assert!((s.mean - 1.0).abs() < 4.0 * s.stderr, "{s:?}");
}

#[test]
fn hull_area_is_self_similar() {
    let (n_steps, n) = (500, 20_000);
    let area = |horizon: f64, tag: u16| {
        let [acc] = sample_moments(n, 42, tag, |rng| {
            Ok([hull_volume(&sample_brownian_path_on(2, n_steps, horizon, rng)?)?])
        })
        .unwrap();
        acc.estimate(42).unwrap()
    };
    let unit = area(1.0, 20).scaled(4.0);
    let long = area(4.0, 21);
    assert!((unit.mean - long.mean).abs() <= 3.0 * unit.combined_stderr(&long), "{unit:?} {long:?}");
}

#[test]
fn the_two_spirals_are_independent() {
    let n = 4000;
    let run = run_two_spirals(300, n, 42).unwrap();
    assert!(run.area_correlation.abs() < 4.0 / (n as f64).sqrt(), "{}", run.area_correlation);
}

#[test]
fn hull_area_distribution_is_rotation_invariant() {
    let n = 20_000;
    // Hull area and the support value in direction 0 (the maximum of the
    // first coordinate), under a fixed rotation of all increments.
    let measure = |angle: f64, tag: u16| {
        let [area, support] = sample_moments(n, 42, tag, |rng| {
            let p = sample_brownian_path(2, 300, rng)?.rotated(angle)?;
            let poly = path_polygon(&p);
            Ok([planar::polygon_area(&poly), poly.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max)])
        })
        .unwrap();
        [area.estimate(42).unwrap(), support.estimate(42).unwrap()]
    };
    let a = measure(0.0, 22);
    let b = measure(1.1, 23);
    for (x, y) in a.iter().zip(&b) {
        assert!((x.mean - y.mean).abs() <= 3.0 * x.combined_stderr(y), "{x:?} {y:?}");
    }
}

#[test]
fn refinement_grows_hull_functionals_pathwise() {
    for i in 0..50u64 {
        let mut rng = RngStream::new(13, stream_id(30, i));
        for k in 1..=3 {
            let mut path = sample_brownian_path(k, 16, &mut rng).unwrap();
            let mut last = hull_volume(&path).unwrap();
            let mut last_perimeter = if k == 2 { planar::polygon_perimeter(&path_polygon(&path)) } else { 0.0 };
            for _ in 0..4 {
                path = path.refine(&mut rng);
                let v = hull_volume(&path).unwrap();
                assert!(v >= last * (1.0 - 1e-12), "k={k}: {v} < {last}");
                last = v;
                if k == 2 {
                    let per = planar::polygon_perimeter(&path_polygon(&path));
                    assert!(per >= last_perimeter * (1.0 - 1e-12));
                    last_perimeter = per;
                }
            }
        }
    }
}

#[test]
fn diagonal_mixed_area_equals_hull_area() {
    let n = 20_000;
    let [mixed, area] = sample_moments(n, 42, 24, |rng| {
        let p = path_polygon(&sample_brownian_path(2, 300, rng)?);
        Ok([planar::mixed_area(&p, &p), planar::polygon_area(&p)])
    })
    .unwrap();
    assert!((mixed.mean() - area.mean()).abs() < 1e-9);
    let diag = mixed.estimate(42).unwrap();
    let v2 = estimate_spiral_intrinsic(2, 300, n, 42).unwrap();
    assert!((diag.mean - v2.mean).abs() <= 3.0 * diag.combined_stderr(&v2), "{diag:?} {v2:?}");
}

#[test]
fn two_step_grid_is_strictly_below_the_limits() {
    for (k, target) in [(1, 2.0), (2, std::f64::consts::FRAC_PI_2)] {
        let e = estimate_spiral_intrinsic(k, 2, 20_000, 42).unwrap();
        assert!(e.ci95[1] < target, "k={k}: {e:?}");
    }
}
