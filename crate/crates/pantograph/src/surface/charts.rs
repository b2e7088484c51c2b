//! Standard charts: the reference triangulations every construction and
//! seed in this crate lives on.

use std::sync::Arc;

use crate::error::SurfaceError;
use crate::surface::chart::{Chart, EdgeId, Slot, Surface};

/// The two-triangle chart of the once-punctured torus. Edges 0,1,2; the
/// slope curves 1/0, 0/1, 1/1 have coordinates (1,1,0), (0,1,1), (1,0,1) up
/// to relabeling.
pub fn torus_one() -> Arc<Chart> {
    let glue = vec![
        [Slot::new(1, 0), Slot::new(1, 1), Slot::new(1, 2)],
        [Slot::new(0, 0), Slot::new(0, 1), Slot::new(0, 2)],
    ];
    Arc::new(Chart::new("S_1_1", Surface::new(1, 1), glue).expect("torus chart"))
}

/// Doubled ideal n-gon: the standard chart of the n-punctured sphere.
///
/// Corners 0..n are the punctures. Front and back faces are fanned from
/// corner 0. Side k of the polygon joins corners k and k+1; the polygon
/// sides are the first n edges of the chart (edge id k = side k), so the
/// curves of the polygon family are neighborhood boundaries of side paths.
pub fn sphere_polygon(n: u32) -> Arc<Chart> {
    assert!(n >= 4, "need at least 4 punctures for a polygon chart");
    let n = n as usize;
    let ntri = 2 * (n - 2);
    // Front triangles f_j = (0, j, j+1) at index j-1 for j in 1..=n-2.
    // Back triangles b_j = (0, j+1, j) at index (n-3) + j.
    let f = |j: usize| j - 1;
    let b = |j: usize| (n - 3) + j;
    let mut glue = vec![[Slot::new(usize::MAX, 0); 3]; ntri];
    let mut set = |a: Slot, c: Slot| {
        glue[a.tri][a.side] = c;
        glue[c.tri][c.side] = a;
    };
    // Polygon sides s_j (front side0 of f_j vs back side0 of b_j), j=1..n-2.
    for j in 1..=n - 2 {
        set(Slot::new(f(j), 0), Slot::new(b(j), 0));
    }
    // s_0: front f_1 side2 <-> back b_1 side1.
    set(Slot::new(f(1), 2), Slot::new(b(1), 1));
    // s_{n-1}: front f_{n-2} side1 <-> back b_{n-2} side2.
    set(Slot::new(f(n - 2), 1), Slot::new(b(n - 2), 2));
    // Front diagonals (0,j): f_{j-1} side1 <-> f_j side2, j=2..n-2.
    for j in 2..=n - 2 {
        set(Slot::new(f(j - 1), 1), Slot::new(f(j), 2));
        set(Slot::new(b(j - 1), 2), Slot::new(b(j), 1));
    }
    Arc::new(
        Chart::new(
            &format!("S_0_{n}"),
            Surface::new(0, n as u32),
            glue,
        )
        .expect("polygon chart"),
    )
}

/// Edge id of polygon side k on a `sphere_polygon` chart.
///
/// Sides are discovered in triangle order: f_1 contributes s_1 (side0),
/// s_0 (side2) and the diagonal d_2 (side1) when n > 4.
pub fn polygon_side_edge(chart: &Chart, n: u32, k: u32) -> EdgeId {
    let n = n as usize;
    let k = k as usize;
    let f = |j: usize| j - 1;
    let slot = if k == 0 {
        Slot::new(f(1), 2)
    } else if k == n - 1 {
        Slot::new(f(n - 2), 1)
    } else {
        Slot::new(f(k), 0)
    };
    chart.edge(slot)
}

/// The coned-square chart of the twice-punctured torus: a square torus with
/// corner puncture v and center puncture c, four spokes f0..f3 from c to the
/// corners. Triangles: 0 bottom, 1 right, 2 top, 3 left.
pub fn torus_two() -> Arc<Chart> {
    let mut glue = vec![[Slot::new(usize::MAX, 0); 3]; 4];
    let mut set = |a: Slot, c: Slot| {
        glue[a.tri][a.side] = c;
        glue[c.tri][c.side] = a;
    };
    // Spokes f_k = (c, corner k): triangle k side2 is f_k, triangle k side1
    // is f_{k+1}.
    for k in 0..4usize {
        set(Slot::new(k, 1), Slot::new((k + 1) % 4, 2));
    }
    // Square sides: bottom <-> top, right <-> left.
    set(Slot::new(0, 0), Slot::new(2, 0));
    set(Slot::new(1, 0), Slot::new(3, 0));
    Arc::new(Chart::new("S_1_2", Surface::new(1, 2), glue).expect("coned square"))
}

/// Named edges of `torus_two`: (a, b, f0, f1, f2, f3) where a is the
/// horizontal square side, b the vertical one, f_k the spoke from the center
/// to corner k.
pub fn torus_two_edges(chart: &Chart) -> (EdgeId, EdgeId, [EdgeId; 4]) {
    let a = chart.edge(Slot::new(0, 0));
    let b = chart.edge(Slot::new(1, 0));
    let f = [
        chart.edge(Slot::new(0, 2)),
        chart.edge(Slot::new(0, 1)),
        chart.edge(Slot::new(1, 1)),
        chart.edge(Slot::new(2, 1)),
    ];
    (a, b, f)
}

/// The thrice-punctured torus: a square torus split along one diagonal, each
/// half coned from its own center puncture.
///
/// Triangles 0..3 are the lower half (around c1), 3..6 the upper (around
/// c2). Edge names in construction order per triangle below.
pub fn torus_three() -> Arc<Chart> {
    // Lower: L1=(c1,p0,p1) idx0, L2=(c1,p1,p2) idx1, L3=(c1,p2,p0) idx2.
    // Upper: U1=(c2,p2,p3) idx3, U2=(c2,p3,p0) idx4, U3=(c2,p0,p2) idx5.
    let mut glue = vec![[Slot::new(usize::MAX, 0); 3]; 6];
    let mut set = |a: Slot, c: Slot| {
        glue[a.tri][a.side] = c;
        glue[c.tri][c.side] = a;
    };
    // a: bottom (L1 side0) <-> top (U1 side0); b: right (L2) <-> left (U2).
    set(Slot::new(0, 0), Slot::new(3, 0));
    set(Slot::new(1, 0), Slot::new(4, 0));
    // d: diagonal p0p2 lower (L3 side0) <-> upper (U3 side0).
    set(Slot::new(2, 0), Slot::new(5, 0));
    // Lower spokes: g0: L1 side2 <-> L3 side1; g1: L2 side2 <-> L1 side1;
    // g2: L3 side2 <-> L2 side1.
    set(Slot::new(0, 2), Slot::new(2, 1));
    set(Slot::new(1, 2), Slot::new(0, 1));
    set(Slot::new(2, 2), Slot::new(1, 1));
    // Upper spokes: h2: U1 side2 <-> U3 side1; h3: U2 side2 <-> U1 side1;
    // h0: U3 side2 <-> U2 side1.
    set(Slot::new(3, 2), Slot::new(5, 1));
    set(Slot::new(4, 2), Slot::new(3, 1));
    set(Slot::new(5, 2), Slot::new(4, 1));
    Arc::new(Chart::new("S_1_3", Surface::new(1, 3), glue).expect("double-coned square"))
}

/// The once-punctured genus-2 surface: ideal octagon with the standard
/// identification a b a' b' c d c' d', fanned from corner 0. Triangles
/// F_1..F_6 at indices 0..6.
pub fn genus_two_one() -> Arc<Chart> {
    let f = |j: usize| j - 1;
    let mut glue = vec![[Slot::new(usize::MAX, 0); 3]; 6];
    let mut set = |a: Slot, c: Slot| {
        glue[a.tri][a.side] = c;
        glue[c.tri][c.side] = a;
    };
    // Octagon side o_k lives on: o_0 = (F_1,2), o_k = (F_k,0) for 1..=6,
    // o_7 = (F_6,1).
    let o: Vec<Slot> = vec![
        Slot::new(f(1), 2),
        Slot::new(f(1), 0),
        Slot::new(f(2), 0),
        Slot::new(f(3), 0),
        Slot::new(f(4), 0),
        Slot::new(f(5), 0),
        Slot::new(f(6), 0),
        Slot::new(f(6), 1),
    ];
    // Identification a b a' b' c d c' d': o_0~o_2, o_1~o_3, o_4~o_6, o_5~o_7.
    set(o[0], o[2]);
    set(o[1], o[3]);
    set(o[4], o[6]);
    set(o[5], o[7]);
    // Fan diagonals (0,j): F_{j-1} side1 <-> F_j side2, j = 2..6.
    for j in 2..=6 {
        set(Slot::new(f(j - 1), 1), Slot::new(f(j), 2));
    }
    Arc::new(Chart::new("S_2_1", Surface::new(2, 1), glue).expect("octagon chart"))
}

/// The twice-punctured genus-2 surface: the same octagon coned from a
/// central puncture. Triangles T_k = (c, k, k+1) at index k, k = 0..8.
pub fn genus_two_two() -> Arc<Chart> {
    let mut glue = vec![[Slot::new(usize::MAX, 0); 3]; 8];
    let mut set = |a: Slot, c: Slot| {
        glue[a.tri][a.side] = c;
        glue[c.tri][c.side] = a;
    };
    // Spokes s_k = (c, corner k): T_k side2 = s_k, T_k side1 = s_{k+1}.
    for k in 0..8usize {
        set(Slot::new(k, 1), Slot::new((k + 1) % 8, 2));
    }
    // Octagon sides o_k = (T_k, 0); identification as in `genus_two_one`.
    set(Slot::new(0, 0), Slot::new(2, 0));
    set(Slot::new(1, 0), Slot::new(3, 0));
    set(Slot::new(4, 0), Slot::new(6, 0));
    set(Slot::new(5, 0), Slot::new(7, 0));
    Arc::new(Chart::new("S_2_2", Surface::new(2, 2), glue).expect("coned octagon"))
}

/// A fresh copy of the twice-punctured torus chart under another name, for
/// the genus-two atlas where three S_{1,2} pieces must not be confused.
pub fn torus_two_named(name: &str) -> Result<Arc<Chart>, SurfaceError> {
    let base = torus_two();
    let mut table = vec![[Slot::new(usize::MAX, 0); 3]; base.num_triangles()];
    for t in 0..base.num_triangles() {
        for i in 0..3 {
            table[t][i] = base.glued(Slot::new(t, i));
        }
    }
    Ok(Arc::new(Chart::new(name, Surface::new(1, 2), table)?))
}
