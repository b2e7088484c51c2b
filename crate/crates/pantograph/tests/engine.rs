//! Cross-validation of the curve engine: the flip-based intersection
//! algorithm against the tracing oracle, slope arithmetic on the
//! once-punctured torus, twists, half-twists and complement classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use pantograph::surface::arrange::intersection_by_tracing;
use pantograph::surface::charts;
use pantograph::surface::complement::{bounds_twice_punctured_disk, classify_complement};
use pantograph::surface::curve::Curve;
use pantograph::surface::flip::intersection_number;
use pantograph::surface::ops::{
    dehn_twist, dehn_twist_stacked, farey_mediant, half_twist, small_curve_pool, Multicurve, Side,
};
use pantograph::surface::word::edge_double;
use pantograph::surface::{Chart, Surface};

fn torus_curve(chart: &Arc<Chart>, coords: [u64; 3]) -> Curve {
    Curve::new(chart.clone(), coords.to_vec()).unwrap()
}

/// Slope arithmetic oracle on the once-punctured torus: curves are reduced
/// fractions p/q with i(p/q, r/s) = |ps - qr|.
fn slope_coords(p: i64, q: i64) -> [u64; 3] {
    [p.unsigned_abs(), q.unsigned_abs(), (p + q).unsigned_abs()]
}

#[test]
fn torus_slopes_intersect_by_determinant() {
    let chart = charts::torus_one();
    let slopes = [
        (1i64, 0i64),
        (0, 1),
        (1, 1),
        (1, -1),
        (2, 1),
        (1, 2),
        (3, -2),
        (5, 2),
        (2, -5),
        (7, 3),
    ];
    for &(p, q) in &slopes {
        for &(r, s) in &slopes {
            let a = torus_curve(&chart, slope_coords(p, q));
            let b = torus_curve(&chart, slope_coords(r, s));
            let expected = (p * s - q * r).unsigned_abs();
            assert_eq!(
                intersection_by_tracing(&a, &b).unwrap(),
                expected,
                "tracing i({p}/{q},{r}/{s})"
            );
            assert_eq!(
                intersection_number(&a, &b).unwrap(),
                expected,
                "flips i({p}/{q},{r}/{s})"
            );
        }
    }
}

#[test]
fn intersection_is_symmetric_and_vanishes_on_self() {
    let chart = charts::sphere_polygon(5);
    let pool = small_curve_pool(&chart, 4);
    assert!(!pool.is_empty());
    for a in &pool {
        assert_eq!(intersection_by_tracing(a, a).unwrap(), 0);
        for b in &pool {
            let ab = intersection_by_tracing(a, b).unwrap();
            let ba = intersection_by_tracing(b, a).unwrap();
            assert_eq!(ab, ba);
        }
    }
}

/// Random curves by twisting pool curves around each other.
fn random_curves(chart: &Arc<Chart>, rng: &mut ChaCha8Rng, count: usize, twists: usize) -> Vec<Curve> {
    let pool = small_curve_pool(chart, 4);
    let mut out: Vec<Curve> = Vec::new();
    while out.len() < count {
        let mut c = pool[rng.gen_range(0..pool.len())].clone();
        for _ in 0..twists {
            let t = &pool[rng.gen_range(0..pool.len())];
            let n = rng.gen_range(-2i64..=2);
            c = dehn_twist(t, &c, n).unwrap();
        }
        if c.weight() < 200 {
            out.push(c);
        }
    }
    out
}

#[test]
fn flip_route_agrees_with_tracing_oracle() {
    let cases: Vec<(Arc<Chart>, usize)> = vec![
        (charts::torus_one(), 28),
        (charts::sphere_polygon(4), 24),
        (charts::sphere_polygon(5), 20),
        (charts::torus_two(), 20),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    for (chart, n) in cases {
        let curves = random_curves(&chart, &mut rng, n, 3);
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let slow = intersection_by_tracing(&curves[i], &curves[j]).unwrap();
                let fast = intersection_number(&curves[i], &curves[j]).unwrap();
                assert_eq!(slow, fast, "{} vs {}", curves[i], curves[j]);
            }
        }
    }
}

#[test]
fn dehn_twist_grows_linearly_on_torus() {
    let chart = charts::torus_one();
    let a = torus_curve(&chart, slope_coords(1, 0));
    let b = torus_curve(&chart, slope_coords(0, 1));
    // i(T_a^n(b), b) = |n| for i(a,b) = 1.
    for n in -3i64..=3 {
        let tb = dehn_twist(&a, &b, n).unwrap();
        assert_eq!(
            intersection_by_tracing(&tb, &b).unwrap(),
            n.unsigned_abs(),
            "power {n}"
        );
        assert_eq!(intersection_by_tracing(&tb, &a).unwrap(), 1);
        // The stacked-arrangement twist is the same isotopy class.
        assert_eq!(dehn_twist_stacked(&a, &b, n).unwrap(), tb);
    }
}

#[test]
fn dehn_twist_composes() {
    let chart = charts::sphere_polygon(5);
    let pool = small_curve_pool(&chart, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..12 {
        let a = &pool[rng.gen_range(0..pool.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        let t2 = dehn_twist(a, b, 2).unwrap();
        let t11 = dehn_twist(a, &dehn_twist(a, b, 1).unwrap(), 1).unwrap();
        assert_eq!(t2, t11);
        let back = dehn_twist(a, &dehn_twist(a, b, 1).unwrap(), -1).unwrap();
        assert_eq!(&back, b);
    }
}

#[test]
fn twist_fixes_disjoint_targets() {
    let chart = charts::sphere_polygon(6);
    let pool = small_curve_pool(&chart, 4);
    for a in &pool {
        for b in &pool {
            if intersection_by_tracing(a, b).unwrap() == 0 {
                assert_eq!(&dehn_twist(a, b, 3).unwrap(), b);
            }
        }
    }
}

#[test]
fn farey_mediants_on_torus_match_slope_arithmetic() {
    let chart = charts::torus_one();
    let a = torus_curve(&chart, slope_coords(0, 1));
    let b = torus_curve(&chart, slope_coords(1, 0));
    let m1 = farey_mediant(&a, &b, Side::Plus).unwrap();
    let m2 = farey_mediant(&a, &b, Side::Minus).unwrap();
    assert_ne!(m1, m2);
    let sum = torus_curve(&chart, slope_coords(1, 1));
    let diff = torus_curve(&chart, slope_coords(1, -1));
    let got = {
        let mut v = vec![m1.clone(), m2.clone()];
        v.sort();
        v
    };
    let expect = {
        let mut v = vec![sum, diff];
        v.sort();
        v
    };
    assert_eq!(got, expect);
    // Mediants meet both parents in the Farey unit.
    for m in [&m1, &m2] {
        assert_eq!(intersection_by_tracing(m, &a).unwrap(), 1);
        assert_eq!(intersection_by_tracing(m, &b).unwrap(), 1);
    }
}

#[test]
fn farey_mediant_rejects_non_adjacent() {
    let chart = charts::torus_one();
    let a = torus_curve(&chart, slope_coords(0, 1));
    let b = torus_curve(&chart, slope_coords(2, 1));
    assert!(farey_mediant(&a, &b, Side::Plus).is_err());
}

#[test]
fn polygon_chart_shapes() {
    for n in 4..=8u32 {
        let chart = charts::sphere_polygon(n);
        assert_eq!(chart.surface, Surface::new(0, n));
        assert_eq!(chart.num_triangles(), 2 * (n as usize - 2));
        assert_eq!(chart.num_vertices(), n as usize);
    }
    assert_eq!(charts::torus_two().num_edges(), 6);
    assert_eq!(charts::torus_three().num_edges(), 9);
    assert_eq!(charts::genus_two_one().num_edges(), 9);
    assert_eq!(charts::genus_two_two().num_edges(), 12);
}

#[test]
fn classify_complement_of_empty_and_pants() {
    // Empty multicurve on S_{0,4}.
    let chart = charts::sphere_polygon(4);
    let comp = classify_complement(&chart, &Multicurve::empty()).unwrap();
    assert_eq!(comp.census(), vec![(Surface::new(0, 4), 1)]);
    assert_eq!(comp.nontrivial().len(), 1);

    // A pants decomposition of S_{0,5}: two disjoint chord curves.
    let chart5 = charts::sphere_polygon(5);
    let s1 = charts::polygon_side_edge(&chart5, 5, 1);
    let s3 = charts::polygon_side_edge(&chart5, 5, 3);
    let c1 = edge_double(&chart5, s1).unwrap();
    let c2 = edge_double(&chart5, s3).unwrap();
    let q = Multicurve::new(vec![c1, c2]).unwrap();
    let comp = classify_complement(&chart5, &q).unwrap();
    assert!(comp.is_pants_decomposition(), "{:?}", comp.census());
    assert_eq!(comp.pieces.len(), 3);
}

#[test]
fn complement_euler_sums_match() {
    // Sum of Euler characteristics of the pieces equals chi(S) minus
    // nothing: cutting along circles preserves chi.
    let chart = charts::torus_two();
    let pool = small_curve_pool(&chart, 4);
    for c in pool.iter().take(12) {
        let q = Multicurve::new(vec![c.clone()]).unwrap();
        let comp = classify_complement(&chart, &q).unwrap();
        let total: i64 = comp
            .pieces
            .iter()
            .map(|p| 2 - 2 * p.surface.genus as i64 - p.surface.punctures as i64)
            .sum();
        assert_eq!(total, chart.surface.euler(), "cut along {c}");
    }
}

#[test]
fn twice_punctured_disk_detection() {
    let chart = charts::torus_two();
    let (_, _, f) = charts::torus_two_edges(&chart);
    let beta1 = edge_double(&chart, f[0]).unwrap();
    assert!(bounds_twice_punctured_disk(&beta1).unwrap());
    // A nonseparating curve does not bound a disk.
    let vert = Curve::new(chart.clone(), {
        let (a, _, f) = charts::torus_two_edges(&chart);
        let mut v = vec![0u64; chart.num_edges()];
        v[a] = 1;
        v[f[1]] = 1;
        v[f[2]] = 1;
        v
    })
    .unwrap();
    assert!(!bounds_twice_punctured_disk(&vert).unwrap());
}

#[test]
fn half_twist_squares_to_full_twist() {
    let chart = charts::sphere_polygon(5);
    // c = double of side 1; targets from the pool crossing it twice.
    let c = edge_double(&chart, charts::polygon_side_edge(&chart, 5, 1)).unwrap();
    let pool = small_curve_pool(&chart, 4);
    let mut checked = 0;
    for t in &pool {
        let k = intersection_by_tracing(&c, t).unwrap();
        if k != 2 {
            continue;
        }
        for sign in [1i64, -1] {
            let h = half_twist(&c, t, sign).unwrap();
            let hh = half_twist(&c, &h, sign).unwrap();
            let full = dehn_twist(&c, t, sign).unwrap();
            assert_eq!(hh, full, "H^2 = T at sign {sign}");
            assert_eq!(intersection_by_tracing(&h, &c).unwrap(), k);
        }
        checked += 1;
    }
    assert!(checked >= 2, "only {checked} targets exercised");
}

#[test]
fn half_twist_fixes_disjoint_curves() {
    let chart = charts::sphere_polygon(5);
    let c = edge_double(&chart, charts::polygon_side_edge(&chart, 5, 1)).unwrap();
    let pool = small_curve_pool(&chart, 4);
    for t in &pool {
        if intersection_by_tracing(&c, t).unwrap() == 0 {
            assert_eq!(&half_twist(&c, t, 1).unwrap(), t);
        }
    }
}

#[test]
fn half_twist_rejects_nonseparating_twister() {
    let chart = charts::torus_one();
    let a = torus_curve(&chart, slope_coords(1, 0));
    let b = torus_curve(&chart, slope_coords(0, 1));
    assert!(half_twist(&a, &b, 1).is_err());
}

#[test]
fn canonical_form_is_fixed_point() {
    // Re-validating any produced curve's coordinates is the identity.
    let chart = charts::torus_two();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for c in random_curves(&chart, &mut rng, 10, 3) {
        let again = Curve::new(chart.clone(), c.coords().to_vec()).unwrap();
        assert_eq!(again, c);
    }
}
