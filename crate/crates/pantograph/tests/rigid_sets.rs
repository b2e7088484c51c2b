//! Construction counts and structural checks for the rigid-set builders.

use pantograph::pants::analyze::{circuit_alternating_decomposition, CircuitShape};
use pantograph::rigid::gamma::{
    all_chords, build_z0n, chord_intersection, chords_interleave, gamma_family,
    polygon_triangulations,
};
use pantograph::rigid::pentagon::{build_x05, build_x0n, qualifying_w};
use pantograph::surface::arrange::intersection_by_tracing;
use pantograph::surface::charts;

#[test]
fn gamma_counts() {
    // |Gamma_n| = n(n-3)/2.
    assert_eq!(all_chords(5).len(), 5);
    assert_eq!(all_chords(6).len(), 9);
    assert_eq!(all_chords(7).len(), 14);
    assert_eq!(all_chords(8).len(), 20);
}

#[test]
fn chord_model_matches_engine() {
    // Chord-model intersections agree with the normal-coordinate engine
    // for all pairs, n <= 8.
    for n in 5..=8u32 {
        let chart = charts::sphere_polygon(n);
        let fam = gamma_family(&chart, n).unwrap();
        let chords = all_chords(n);
        for (k, &a) in chords.iter().enumerate() {
            for &b in &chords[k..] {
                let want = if a == b { 0 } else { chord_intersection(n, a, b) };
                let got = intersection_by_tracing(&fam[&a], &fam[&b]).unwrap();
                assert_eq!(got, want, "n={n} chords {a:?},{b:?}");
            }
        }
    }
}

#[test]
fn disjointness_is_non_interleaving() {
    let n = 7;
    let chart = charts::sphere_polygon(n);
    let fam = gamma_family(&chart, n).unwrap();
    for (&a, ca) in &fam {
        for (&b, cb) in &fam {
            if a >= b {
                continue;
            }
            let disjoint = intersection_by_tracing(ca, cb).unwrap() == 0;
            assert_eq!(disjoint, !chords_interleave(n, a, b));
        }
    }
}

#[test]
fn z05_is_an_alternating_pentagon() {
    let (_fam, z) = build_z0n(5).unwrap();
    assert_eq!(z.num_vertices(), 5);
    assert_eq!(z.num_edges(), 5);
    // Walk the 5-cycle and decompose it.
    let mut circuit = vec![0usize];
    let mut prev = usize::MAX;
    for _ in 0..4 {
        let cur = *circuit.last().unwrap();
        let next = *z.adjacency[cur].iter().find(|&&x| x != prev).unwrap();
        prev = cur;
        circuit.push(next);
    }
    let verts: Vec<_> = circuit.iter().map(|&i| z.vertices[i].clone()).collect();
    match circuit_alternating_decomposition(&z.chart, &verts).unwrap() {
        CircuitShape::Alternating(t) => assert_eq!(t.k(), 5),
        CircuitShape::SingleChart(_) => panic!("pentagon collapsed into one chart"),
    }
}

#[test]
fn z0n_vertex_counts_are_catalan() {
    // Triangulations of the n-gon: C_{n-2}.
    assert_eq!(polygon_triangulations(5).len(), 5);
    assert_eq!(polygon_triangulations(6).len(), 14);
    assert_eq!(polygon_triangulations(7).len(), 42);
    let (_fam, z6) = build_z0n(6).unwrap();
    assert_eq!(z6.num_vertices(), 14);
}

#[test]
fn x05_construction_counts() {
    let (_fam, set) = build_x05().unwrap();
    let x = &set.rigid;
    assert_eq!(x.num_vertices(), 25);
    // Thick pentagon: 10 triangles (validated inside the builder too).
    // The ten middles each form a path of length 2 between two apexes.
    let middles = x.named_vertices("middles").unwrap().to_vec();
    assert_eq!(middles.len(), 10);
    let thick: std::collections::BTreeSet<usize> =
        x.named_vertices("thick").unwrap().iter().copied().collect();
    for &m in &middles {
        let nbrs = &x.adjacency[m];
        assert_eq!(nbrs.len(), 2, "middle {m} has degree {}", nbrs.len());
        for &w in nbrs {
            assert!(thick.contains(&w), "middle attaches outside the thick pentagon");
        }
    }
    assert_eq!(x.num_edges(), 45);
}

#[test]
fn x05_matches_honest_half_twists() {
    // The mediant recipe reproduces the half-twist images of the pentagon
    // vertices on the standard chart.
    use pantograph::surface::ops::half_twist;
    let (fam, set) = build_x05().unwrap();
    let x = &set.rigid;
    for c in fam.curves.values() {
        for sign in [1i64, -1] {
            for v in &set.z_ring {
                let mut image = Vec::new();
                for cu in v.curves() {
                    image.push(half_twist(c, cu, sign).unwrap());
                }
                let q = pantograph::surface::ops::Multicurve::new(image).unwrap();
                let w = pantograph::pants::PantsVertex::new(&x.chart, q).unwrap();
                assert!(
                    x.index_of(&w).is_some(),
                    "half-twist image of a pentagon vertex missing from X"
                );
            }
        }
    }
}

#[test]
fn x0n_qualifying_w_count_for_n6() {
    let chart = charts::sphere_polygon(6);
    let fam = pantograph::rigid::gamma::standard_family(&chart, 6).unwrap();
    let ws = qualifying_w(&fam).unwrap();
    // Deficiency-2 multicurves in Gamma_6 with a five-punctured sphere
    // piece: exactly the six curves cutting off two punctures.
    assert_eq!(ws.len(), 6);
    for (w, _) in &ws {
        assert_eq!(w.len(), 1);
    }
}

#[test]
fn x0n_copies_are_isomorphic_to_x05() {
    let (_fam, x, copies) = build_x0n(6).unwrap();
    let (_f5, reference) = build_x05().unwrap();
    assert_eq!(copies.len(), 6);
    for copy in &copies {
        assert_eq!(copy.rigid.num_vertices(), 25);
        assert_eq!(copy.rigid.num_edges(), 45);
        // Recipe-order correspondence is a graph isomorphism.
        let mut corr = std::collections::BTreeMap::new();
        for (i, v) in reference.recipe_order.iter().enumerate() {
            let a = reference.rigid.index_of(v).unwrap();
            let b = copy.rigid.index_of(&copy.recipe_order[i]).unwrap();
            corr.insert(a, b);
        }
        assert!(pantograph::rigid::is_isomorphic_under(
            &reference.rigid,
            &copy.rigid,
            &corr
        ));
    }
    assert!(x.num_vertices() >= 14 + 6 * 20);
}
