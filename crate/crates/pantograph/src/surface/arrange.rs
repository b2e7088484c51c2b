//! Simultaneous minimal position of several curves on one chart.
//!
//! Each curve is individually normal; what remains is the interleaving of
//! their crossing points along each edge. Two parallel strands are ordered by
//! walking them leftwards until they diverge: the strand that turns around
//! the far corner is the lower one in canonical edge direction. Fixing every
//! order this way and then reading crossings off triangle-by-triangle
//! produces a configuration with no bigons between distinct curves, so the
//! crossing counts are geometric intersection numbers.

use std::collections::BTreeMap;

use crate::error::SurfaceError;
use crate::surface::chart::{Chart, EdgeId, Slot};
use crate::surface::curve::{corner_count, step_through, trace, canonical_idx, Component, Curve, TraceStep};

/// One end of an arc (an arc runs from its entry crossing to its exit).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcEnd {
    Entry,
    Exit,
}

/// A transverse crossing between arcs of two distinct curves inside a
/// triangle.
#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub tri: usize,
    /// (curve index, step index) of the two arcs; `a` is the smaller curve
    /// index.
    pub a: (usize, usize),
    pub b: (usize, usize),
    /// Travelling along `a`'s arc, this end of `b`'s arc is on the right.
    pub right_of_a: ArcEnd,
    /// Travelling along `b`'s arc, this end of `a`'s arc is on the right.
    pub right_of_b: ArcEnd,
}

/// Simultaneous minimal position of a family of pairwise distinct curves.
pub struct Arrangement<'a> {
    pub chart: &'a Chart,
    pub curves: Vec<&'a Curve>,
    pub traces: Vec<Component>,
    /// Per edge, the merged point list `(curve, own canonical index)` in
    /// canonical edge direction.
    pub merged: Vec<Vec<(usize, u64)>>,
    /// `rank[k][e][i]` = merged position of point `i` of curve `k` on `e`.
    pub rank: Vec<Vec<Vec<usize>>>,
    /// `step_at[k][e][i]` = step index of curve `k` crossing `(e, i)`.
    pub step_at: Vec<Vec<Vec<usize>>>,
    pub crossings: Vec<Crossing>,
    /// `on_arc[k][s]` = crossing ids met along arc `s` of curve `k`, ordered
    /// from the arc's entry to its exit.
    pub on_arc: Vec<Vec<Vec<usize>>>,
}

/// Whether the arc entered via `slot` at `idx` (slot direction) hugs the
/// corner at the far end of the side (the "high" corner `side+2`).
fn hugs_high(chart: &Chart, coords: &[u64], slot: Slot, idx: u64) -> bool {
    idx >= corner_count(chart, coords, slot.tri, (slot.side + 1) % 3)
}

/// Divergence vote: is point `i` of `c1` below point `j` of `c2` on edge
/// `e` in canonical direction? Requires distinct isotopy classes.
///
/// The two strands are walked in both directions simultaneously until they
/// separate. In the geodesic picture a crossing between the strands sits at
/// the midpoint of their common corridor, so the side that separates first
/// sees the uncrossed order and its verdict is the order at `e`. On a tie
/// the crossing is pushed to the left, i.e. the rightward verdict is used.
fn vote_below(
    chart: &Chart,
    c1: &[u64],
    c2: &[u64],
    e: EdgeId,
    i: u64,
    j: u64,
    cap: usize,
) -> Result<bool, SurfaceError> {
    let os = chart.other_slot(e);
    let cs = chart.canonical_slot(e);
    // Leftward states (entering the non-canonical side's triangle).
    let mut l1 = TraceStep { slot: os, idx: c1[e] - 1 - i };
    let mut l2 = TraceStep { slot: os, idx: c2[e] - 1 - j };
    // Rightward states.
    let mut r1 = TraceStep { slot: cs, idx: i };
    let mut r2 = TraceStep { slot: cs, idx: j };
    for _ in 0..cap {
        debug_assert_eq!(l1.slot, l2.slot);
        debug_assert_eq!(r1.slot, r2.slot);
        let rh1 = hugs_high(chart, c1, r1.slot, r1.idx);
        let rh2 = hugs_high(chart, c2, r2.slot, r2.idx);
        if rh1 != rh2 {
            // Strand 1 below in canonical direction iff it hugs the low
            // corner at the rightward divergence.
            return Ok(!rh1);
        }
        let lh1 = hugs_high(chart, c1, l1.slot, l1.idx);
        let lh2 = hugs_high(chart, c2, l2.slot, l2.idx);
        if lh1 != lh2 {
            // Leftward direction is reversed relative to canonical.
            return Ok(lh1);
        }
        l1 = step_through(chart, c1, l1.slot, l1.idx);
        l2 = step_through(chart, c2, l2.slot, l2.idx);
        r1 = step_through(chart, c1, r1.slot, r1.idx);
        r2 = step_through(chart, c2, r2.slot, r2.idx);
    }
    Err(SurfaceError::ArrangeInconsistent)
}

/// Cyclic boundary position of a point inside a triangle: sides in ccw
/// boundary order (2, 0, 1), each traversed in its own direction. The point
/// is given by its merged rank on the edge of `(tri, side)`.
fn boundary_pos(
    chart: &Chart,
    merged: &[Vec<(usize, u64)>],
    tri: usize,
    side: usize,
    rank_on_edge: usize,
) -> usize {
    let order = [2usize, 0, 1];
    let mut offset = 0;
    for &s in &order {
        let e = chart.tri_edges(tri)[s];
        let len = merged[e].len();
        if s == side {
            let slot = Slot::new(tri, side);
            let pos = if chart.is_canonical(e, slot) {
                rank_on_edge
            } else {
                len - 1 - rank_on_edge
            };
            return offset + pos;
        }
        offset += len;
    }
    unreachable!("side not in triangle");
}

impl<'a> Arrangement<'a> {
    /// Simultaneous minimal position (vote-resolved orders).
    pub fn new(chart: &'a Chart, curves: Vec<&'a Curve>) -> Result<Arrangement<'a>, SurfaceError> {
        Self::build(chart, curves, true)
    }

    /// A valid but generally non-minimal transverse position: each edge
    /// carries curve 0's points first, then curve 1's, and so on. Extra
    /// crossings are isotopically inessential, so surgeries that only need a
    /// genuine transverse picture (twisting) may use this policy.
    pub fn new_stacked(
        chart: &'a Chart,
        curves: Vec<&'a Curve>,
    ) -> Result<Arrangement<'a>, SurfaceError> {
        Self::build(chart, curves, false)
    }

    fn build(
        chart: &'a Chart,
        curves: Vec<&'a Curve>,
        minimal: bool,
    ) -> Result<Arrangement<'a>, SurfaceError> {
        for w in curves.windows(1) {
            debug_assert_eq!(w[0].chart().digest(), chart.digest());
        }
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                if curves[i] == curves[j] {
                    return Err(SurfaceError::Other(
                        "arrangement requires pairwise distinct curves".into(),
                    ));
                }
            }
        }
        let traces: Vec<Component> = curves.iter().map(|c| c.traced()).collect();
        let ne = chart.num_edges();
        let cap: usize = traces.iter().map(|t| t.len()).sum::<usize>() + 2;

        // Point -> step maps.
        let mut step_at: Vec<Vec<Vec<usize>>> = Vec::with_capacity(curves.len());
        for (k, tr) in traces.iter().enumerate() {
            let mut m: Vec<Vec<usize>> = (0..ne)
                .map(|e| vec![usize::MAX; curves[k].coords()[e] as usize])
                .collect();
            for (s, st) in tr.steps.iter().enumerate() {
                let (e, i) = canonical_idx(chart, curves[k].coords(), *st);
                m[e][i as usize] = s;
            }
            step_at.push(m);
        }

        // Merged orders per edge, from pairwise votes.
        let mut merged: Vec<Vec<(usize, u64)>> = Vec::with_capacity(ne);
        let mut rank: Vec<Vec<Vec<usize>>> = curves
            .iter()
            .map(|c| c.coords().iter().map(|&x| vec![usize::MAX; x as usize]).collect())
            .collect();
        for e in 0..ne {
            let mut pts: Vec<(usize, u64)> = Vec::new();
            for (k, c) in curves.iter().enumerate() {
                for i in 0..c.coords()[e] {
                    pts.push((k, i));
                }
            }
            // Pairwise "below" matrix.
            let n = pts.len();
            let mut below = vec![vec![false; n]; n];
            for p in 0..n {
                for q in 0..n {
                    if p == q {
                        continue;
                    }
                    let (k1, i1) = pts[p];
                    let (k2, i2) = pts[q];
                    below[p][q] = if k1 == k2 {
                        i1 < i2
                    } else if minimal {
                        vote_below(
                            chart,
                            curves[k1].coords(),
                            curves[k2].coords(),
                            e,
                            i1,
                            i2,
                            cap,
                        )?
                    } else {
                        k1 < k2
                    };
                }
            }
            // Consistency: below-counts must be 0..n-1 exactly.
            let mut idx: Vec<usize> = (0..n).collect();
            let mut counts: Vec<usize> = (0..n)
                .map(|p| (0..n).filter(|&q| q != p && below[q][p]).count())
                .collect();
            idx.sort_by_key(|&p| counts[p]);
            counts.sort_unstable();
            if counts != (0..n).collect::<Vec<_>>() {
                return Err(SurfaceError::ArrangeInconsistent);
            }
            let ordered: Vec<(usize, u64)> = idx.into_iter().map(|p| pts[p]).collect();
            for (r, &(k, i)) in ordered.iter().enumerate() {
                rank[k][e][i as usize] = r;
            }
            merged.push(ordered);
        }

        let mut arr = Arrangement {
            chart,
            curves,
            traces,
            merged,
            rank,
            step_at,
            crossings: Vec::new(),
            on_arc: Vec::new(),
        };
        arr.find_crossings()?;
        Ok(arr)
    }

    /// Boundary position of an arc end: `Entry` is where step `s` enters its
    /// triangle, `Exit` where the arc leaves it.
    fn arc_end_pos(&self, k: usize, s: usize, end: ArcEnd) -> usize {
        let tr = &self.traces[k];
        let m = tr.steps.len();
        let chart = self.chart;
        let coords = self.curves[k].coords();
        let (slot, e, ci) = match end {
            ArcEnd::Entry => {
                let st = tr.steps[s];
                let (e, ci) = canonical_idx(chart, coords, st);
                (st.slot, e, ci)
            }
            ArcEnd::Exit => {
                let next = tr.steps[(s + 1) % m];
                let exit_slot = chart.glued(next.slot);
                debug_assert_eq!(exit_slot.tri, tr.steps[s].slot.tri);
                let (e, ci) = canonical_idx(chart, coords, next);
                (exit_slot, e, ci)
            }
        };
        let r = self.rank[k][e][ci as usize];
        boundary_pos(chart, &self.merged, slot.tri, slot.side, r)
    }

    fn tri_boundary_len(&self, tri: usize) -> usize {
        self.chart
            .tri_edges(tri)
            .iter()
            .map(|&e| self.merged[e].len())
            .sum()
    }

    fn find_crossings(&mut self) -> Result<(), SurfaceError> {
        // Arcs per triangle.
        let mut arcs_in_tri: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (k, tr) in self.traces.iter().enumerate() {
            for s in 0..tr.steps.len() {
                arcs_in_tri
                    .entry(tr.steps[s].slot.tri)
                    .or_default()
                    .push((k, s));
            }
        }
        let mut crossings = Vec::new();
        for (&tri, arcs) in &arcs_in_tri {
            let total = self.tri_boundary_len(tri);
            let in_ccw = |x: usize, p1: usize, p2: usize| -> bool {
                // strictly between p1 and p2 going ccw
                let d_end = (p2 + total - p1) % total;
                let d_x = (x + total - p1) % total;
                d_x > 0 && d_x < d_end
            };
            for a in 0..arcs.len() {
                for b in a + 1..arcs.len() {
                    let (k1, s1) = arcs[a];
                    let (k2, s2) = arcs[b];
                    if k1 == k2 {
                        continue;
                    }
                    let p1 = self.arc_end_pos(k1, s1, ArcEnd::Entry);
                    let p2 = self.arc_end_pos(k1, s1, ArcEnd::Exit);
                    let q1 = self.arc_end_pos(k2, s2, ArcEnd::Entry);
                    let q2 = self.arc_end_pos(k2, s2, ArcEnd::Exit);
                    let q1_in = in_ccw(q1, p1, p2);
                    let q2_in = in_ccw(q2, p1, p2);
                    if q1_in == q2_in {
                        continue; // nested or disjoint
                    }
                    // Travelling p1 -> p2, the ccw interval (p1, p2) is on
                    // the right.
                    let right_of_a = if q1_in { ArcEnd::Entry } else { ArcEnd::Exit };
                    let p1_in = in_ccw(p1, q1, q2);
                    let right_of_b = if p1_in { ArcEnd::Entry } else { ArcEnd::Exit };
                    crossings.push(Crossing {
                        tri,
                        a: (k1, s1),
                        b: (k2, s2),
                        right_of_a,
                        right_of_b,
                    });
                }
            }
        }
        // Order crossings along each arc.
        let mut on_arc: Vec<Vec<Vec<usize>>> = self
            .traces
            .iter()
            .map(|t| vec![Vec::new(); t.steps.len()])
            .collect();
        for (id, x) in crossings.iter().enumerate() {
            on_arc[x.a.0][x.a.1].push(id);
            on_arc[x.b.0][x.b.1].push(id);
        }
        for (k, per_curve) in on_arc.iter_mut().enumerate() {
            for (s, list) in per_curve.iter_mut().enumerate() {
                if list.len() < 2 {
                    continue;
                }
                let p1 = self.arc_end_pos(k, s, ArcEnd::Entry);
                let p2 = self.arc_end_pos(k, s, ArcEnd::Exit);
                let total = self.tri_boundary_len(self.traces[k].steps[s].slot.tri);
                // Key: ccw distance from p1 of the other arc's right-side
                // endpoint; crossing arcs are pairwise disjoint, so this
                // orders crossings along the arc.
                let key = |id: usize| -> usize {
                    let x = &crossings[id];
                    let (ok, os, right) = if x.a == (k, s) {
                        (x.b.0, x.b.1, x.right_of_a)
                    } else {
                        (x.a.0, x.a.1, x.right_of_b)
                    };
                    let q = self.arc_end_pos(ok, os, right);
                    debug_assert_ne!(q, p2);
                    (q + total - p1) % total
                };
                list.sort_by_key(|&id| key(id));
            }
        }
        self.crossings = crossings;
        self.on_arc = on_arc;
        Ok(())
    }

    /// Total crossings between two of the arranged curves.
    pub fn crossings_between(&self, k1: usize, k2: usize) -> u64 {
        let (lo, hi) = (k1.min(k2), k1.max(k2));
        self.crossings
            .iter()
            .filter(|x| x.a.0 == lo && x.b.0 == hi)
            .count() as u64
    }
}

/// Geometric intersection number by simultaneous minimal position. This is
/// the tracing oracle: bigons are resolved by the divergence votes.
pub fn intersection_by_tracing(a: &Curve, b: &Curve) -> Result<u64, SurfaceError> {
    a.require_same_chart(b)?;
    if a == b {
        return Ok(0);
    }
    let arr = Arrangement::new(&a.chart, vec![a, b])?;
    Ok(arr.crossings_between(0, 1))
}

/// Pairwise disjointness check for multicurve construction.
pub fn all_disjoint(curves: &[&Curve]) -> Result<(), SurfaceError> {
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if curves[i] == curves[j] {
                return Err(SurfaceError::DuplicateCurve);
            }
            let n = intersection_by_tracing(curves[i], curves[j])?;
            if n != 0 {
                return Err(SurfaceError::NotDisjoint(n));
            }
        }
    }
    Ok(())
}

/// Re-trace a coordinate vector and return per-component coordinate vectors.
pub fn component_vectors(chart: &Chart, coords: &[u64]) -> Vec<Vec<u64>> {
    trace(chart, coords)
        .into_iter()
        .map(|c| c.coords(chart))
        .collect()
}
