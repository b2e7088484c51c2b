//! Pants-graph layer: neighbor enumeration against the Stern-Brocot
//! counting oracle, ball structure, common neighbors, circuit
//! decomposition, and the length-2 geodesic trichotomy.

use std::sync::Arc;

use pantograph::pants::analyze::{
    circuit_alternating_decomposition, common_neighbors, farey_path_counts, geodesic2_classify,
    CircuitShape, Geodesic2,
};
use pantograph::pants::{build_ball, neighbors_in_chart, FrameCache, PantsVertex};
use pantograph::surface::charts;
use pantograph::surface::ops::Multicurve;
use pantograph::surface::word::edge_double;
use pantograph::surface::{Chart, Curve};

fn chord(chart: &Arc<Chart>, n: u32, k: u32) -> Curve {
    edge_double(chart, charts::polygon_side_edge(chart, n, k)).unwrap()
}

/// The pentagon vertex {double(side1), double(side3)} on S_{0,5}.
fn s05_vertex(chart: &Arc<Chart>) -> PantsVertex {
    let c1 = chord(chart, 5, 1);
    let c2 = chord(chart, 5, 3);
    PantsVertex::new(chart, Multicurve::new(vec![c1, c2]).unwrap()).unwrap()
}

#[test]
fn neighbor_depth_accounting_matches_stern_brocot() {
    let chart = charts::sphere_polygon(5);
    let v = s05_vertex(&chart);
    let cache = FrameCache::new(&chart);
    let moving = v.curves()[0].clone();
    let mut prev = 0;
    for depth in 1..=4u32 {
        let nbrs = neighbors_in_chart(&chart, &cache, &v, &moving, depth).unwrap();
        // The slope family u + k·m, |k| <= depth: 2 depth + 1 vertices.
        assert_eq!(nbrs.len(), 2 * depth as usize + 1, "depth {depth}");
        assert!(nbrs.len() == prev + 2 || prev == 0);
        prev = nbrs.len();
        // Every neighbor differs from v in exactly one curve.
        for w in &nbrs {
            assert_eq!(v.intersection(w).len(), 1);
        }
    }
}

#[test]
fn ball_radius_zero_is_a_point() {
    let chart = charts::sphere_polygon(5);
    let v = s05_vertex(&chart);
    let ball = build_ball(&chart, v.clone(), 0, 3, 1000).unwrap();
    assert_eq!(ball.num_vertices(), 1);
    assert!(ball.edges.is_empty());
}

#[test]
fn s04_ball_is_a_farey_fragment() {
    // P(S_{0,4}) is a Farey graph: with enough chart depth every edge of
    // the inner part lies in exactly two triangles.
    let chart = charts::sphere_polygon(4);
    let c = chord(&chart, 4, 1);
    let v = PantsVertex::new(&chart, Multicurve::new(vec![c]).unwrap()).unwrap();
    let ball = build_ball(&chart, v, 2, 4, 10_000).unwrap();
    assert!(ball.num_vertices() > 5);
    let tris = ball.triangles();
    assert!(!tris.is_empty());
    // Count triangles per edge; the center's edges must lie in exactly 2.
    let mut per_edge: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for (t, _) in &tris {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *per_edge.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let c0 = ball.center;
    for &w in ball.neighbors(c0) {
        if ball.dist[w] + 1 < ball.radius {
            let k = per_edge.get(&(c0.min(w), c0.max(w))).copied().unwrap_or(0);
            assert_eq!(k, 2, "central edge in {k} triangles");
        }
    }
}

#[test]
fn ball_edges_are_elementary_moves_with_correct_labels() {
    let chart = charts::sphere_polygon(5);
    let v = s05_vertex(&chart);
    let ball = build_ball(&chart, v, 1, 2, 10_000).unwrap();
    for (&(a, b), &cid) in &ball.edges {
        let u = &ball.vertices[a];
        let w = &ball.vertices[b];
        let common = u.intersection(w);
        assert_eq!(common.len(), 1);
        assert_eq!(ball.charts[cid].locus, common);
        // Moving curves meet in the chart unit (2 on a sphere piece).
        let unit = ball.charts[cid].unit();
        let cu = u.curves().iter().find(|c| !common.contains(c)).unwrap();
        let cw = w.curves().iter().find(|c| !common.contains(c)).unwrap();
        assert_eq!(
            pantograph::surface::arrange::intersection_by_tracing(cu, cw).unwrap(),
            unit
        );
    }
    // Center must be adjacent to all depth-1 vertices found.
    assert!(ball.degree(ball.center) >= 6);
}

#[test]
fn common_neighbors_of_farey_adjacent_pair_are_the_two_mediants() {
    let chart = charts::sphere_polygon(5);
    let v = s05_vertex(&chart);
    let cache = FrameCache::new(&chart);
    let moving = v.curves()[0].clone();
    let nbrs = neighbors_in_chart(&chart, &cache, &v, &moving, 1).unwrap();
    let w = &nbrs[0];
    let cn = common_neighbors(&chart, &cache, &v, w).unwrap();
    assert_eq!(cn.len(), 2, "adjacent pair has exactly two common neighbors");
    for x in &cn {
        assert!(
            pantograph::pants::elementary_move(&chart, &v, x)
                .unwrap()
                .is_some()
        );
        assert!(
            pantograph::pants::elementary_move(&chart, w, x)
                .unwrap()
                .is_some()
        );
    }
}

#[test]
fn common_neighbors_is_symmetric() {
    let chart = charts::sphere_polygon(5);
    let v = s05_vertex(&chart);
    let cache = FrameCache::new(&chart);
    let ball = build_ball(&chart, v, 2, 2, 10_000).unwrap();
    let n = ball.num_vertices().min(12);
    for a in 0..n {
        for b in (a + 1)..n {
            let uv = common_neighbors(&chart, &cache, &ball.vertices[a], &ball.vertices[b]).unwrap();
            let vu = common_neighbors(&chart, &cache, &ball.vertices[b], &ball.vertices[a]).unwrap();
            assert_eq!(uv, vu);
            for w in &uv {
                assert!(
                    pantograph::pants::elementary_move(&chart, &ball.vertices[a], w)
                        .unwrap()
                        .is_some()
                );
            }
        }
    }
}

#[test]
fn farey_triangle_is_single_chart() {
    let chart = charts::sphere_polygon(5);
    let v = s05_vertex(&chart);
    let cache = FrameCache::new(&chart);
    let moving = v.curves()[0].clone();
    let nbrs = neighbors_in_chart(&chart, &cache, &v, &moving, 1).unwrap();
    let w = nbrs[0].clone();
    let cn = common_neighbors(&chart, &cache, &v, &w).unwrap();
    let circuit = vec![v.clone(), w, cn[0].clone()];
    match circuit_alternating_decomposition(&chart, &circuit).unwrap() {
        CircuitShape::SingleChart(_) => {}
        CircuitShape::Alternating(t) => panic!("triangle decomposed into {}-tuple", t.k()),
    }
}

#[test]
fn farey_path_count_oracle() {
    // Brute-force oracle: enumerate simple paths whose slopes have entries
    // bounded by 60, which covers all short paths between small slopes.
    fn brute(from: (i64, i64), to: (i64, i64), len: usize) -> u64 {
        fn neighbors(s: (i64, i64), bound: i64) -> Vec<(i64, i64)> {
            let mut out = Vec::new();
            for p in -bound..=bound {
                for q in 0..=bound {
                    let c = match pantograph::surface::ops::canonical_slope((p, q)) {
                        Ok(c) => c,
                        Err(_) => continue,
                    };
                    if (s.0 * c.1 - s.1 * c.0).abs() == 1 && !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
            out
        }
        fn go(
            cur: (i64, i64),
            to: (i64, i64),
            left: usize,
            seen: &mut Vec<(i64, i64)>,
            count: &mut u64,
        ) {
            if left == 0 {
                if cur == to {
                    *count += 1;
                }
                return;
            }
            if cur == to {
                return;
            }
            for n in neighbors(cur, 60) {
                if seen.contains(&n) {
                    continue;
                }
                seen.push(n);
                go(n, to, left - 1, seen, count);
                seen.pop();
            }
        }
        let mut count = 0;
        let mut seen = vec![from];
        go(from, to, len, &mut seen, &mut count);
        count
    }
    for (a, b) in [((0i64, 1i64), (1i64, 0i64)), ((0, 1), (1, 1)), ((0, 1), (2, 1)), ((1, 2), (1, 0))] {
        let got = farey_path_counts(a, b, 3);
        for len in 1..=3usize {
            let want = brute(a, b, len);
            assert_eq!(got[len - 1], want, "paths of length {len} from {a:?} to {b:?}");
        }
    }
}

#[test]
fn geodesic2_farey_pair_inside_chart() {
    // Build the in-chart configuration by slope arithmetic: v carries the
    // moving slope m, w its neighbor u, x the slope 2u + m. Then v-w-x is a
    // length-2 path, v and x are non-adjacent (determinant 2), and the two
    // common neighbors u and u + m make it a Farey pair.
    let chart = charts::sphere_polygon(5);
    let v = s05_vertex(&chart);
    let cache = FrameCache::new(&chart);
    let moving = v.curves()[0].clone();
    let locus = v.multicurve().without(&moving);
    let id = pantograph::pants::FareyChartId::new(&chart, locus.clone()).unwrap();
    let frame = cache.frame(&locus, &moving, id.unit()).unwrap();
    let m = frame.slope_of(&moving).unwrap();
    assert_eq!(m, (0, 1));
    let w_curve = frame.curve_at((1, 0)).unwrap();
    let x_curve = frame.curve_at((2, 1)).unwrap();
    let w = v.replace(&chart, &moving, w_curve).unwrap();
    let x = v.replace(&chart, &moving, x_curve).unwrap();
    assert!(pantograph::pants::elementary_move(&chart, &v, &w).unwrap().is_some());
    assert!(pantograph::pants::elementary_move(&chart, &w, &x).unwrap().is_some());
    assert!(pantograph::pants::elementary_move(&chart, &v, &x).unwrap().is_none());
    let class = geodesic2_classify(&chart, &cache, &v, &w, &x).unwrap();
    assert_eq!(class, Geodesic2::FareyPair);
}
