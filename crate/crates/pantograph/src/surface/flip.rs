//! Diagonal flips and the flip-based intersection algorithm.
//!
//! `intersection_number` shortens one curve by weight-reducing flips until it
//! reaches a recognized short position, then reads the intersection number
//! off the other curve's coordinates:
//!
//! * the link of a single edge (a curve bounding a twice-punctured disk):
//!   twice the other curve's crossing count on that edge;
//! * a weight-2 curve (core of a two-triangle annulus): the number of
//!   strands of the other curve through the annulus switching sides;
//! * on the two-triangle torus chart, slope determinants.
//!
//! Curves that reach none of these (isolating separating curves) are handled
//! by twist linearity: coordinates of T_a^n(b) grow linearly in n with slope
//! i(a,b)·x_a(e), with error bounded by x_b(e).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::SurfaceError;
use crate::surface::chart::{Chart, EdgeId, Slot, Surface};
use crate::surface::curve::{trace, Curve};
use crate::surface::ops::dehn_twist_stacked;
use crate::surface::word::boundary_of_edges;

/// Result of flipping edge `e`: the new chart and the slot relocation for
/// the four quadrilateral sides (everything else keeps its slots).
pub struct Flip {
    pub chart: Arc<Chart>,
    /// Maps old edge ids to new edge ids.
    pub edge_map: Vec<EdgeId>,
    /// New id of the flipped edge.
    pub flipped: EdgeId,
}

/// Whether edge `e` is flippable: its two sides lie in distinct triangles.
pub fn flippable(chart: &Chart, e: EdgeId) -> bool {
    let (a, b) = chart.slots_of_edge(e);
    a.tri != b.tri
}

/// Flip edge `e`, returning the new chart and a function transporting
/// normal coordinate vectors.
pub fn flip(chart: &Chart, e: EdgeId) -> Result<Flip, SurfaceError> {
    if !flippable(chart, e) {
        return Err(SurfaceError::Other(format!("edge {e} is not flippable")));
    }
    let (s1, s2) = chart.slots_of_edge(e);
    let (t1, i1) = (s1.tri, s1.side);
    let (t2, i2) = (s2.tri, s2.side);
    // Quadrilateral sides, as old slots:
    //   A->X: (t1, i1+2), X->B: (t2, i2+1), B->Y: (t2, i2+2), Y->A: (t1, i1+1).
    let ax = Slot::new(t1, (i1 + 2) % 3);
    let xb = Slot::new(t2, (i2 + 1) % 3);
    let by = Slot::new(t2, (i2 + 2) % 3);
    let ya = Slot::new(t1, (i1 + 1) % 3);
    // New triangles in place: t1' = (A, X, B): side0 = X-B, side1 = B-A
    // (the new edge), side2 = A-X. t2' = (B, Y, A): side0 = Y-A, side1 =
    // A-B, side2 = B-Y.
    let relocation: BTreeMap<Slot, Slot> = [
        (xb, Slot::new(t1, 0)),
        (ax, Slot::new(t1, 2)),
        (ya, Slot::new(t2, 0)),
        (by, Slot::new(t2, 2)),
    ]
    .into_iter()
    .collect();
    let reloc = |s: Slot| *relocation.get(&s).unwrap_or(&s);

    let ntri = chart.num_triangles();
    let mut glue = vec![[Slot::new(usize::MAX, 0); 3]; ntri];
    // New diagonal.
    glue[t1][1] = Slot::new(t2, 1);
    glue[t2][1] = Slot::new(t1, 1);
    // All other adjacencies: for each old slot pair (s, partner), connect
    // their relocations. Skip the flipped edge.
    for old_e in 0..chart.num_edges() {
        if old_e == e {
            continue;
        }
        let (a, b) = chart.slots_of_edge(old_e);
        let (na, nb) = (reloc(a), reloc(b));
        glue[na.tri][na.side] = nb;
        glue[nb.tri][nb.side] = na;
    }
    let new_chart = Arc::new(Chart::new(&chart.name, chart.surface, glue)?);
    let mut edge_map = vec![usize::MAX; chart.num_edges()];
    for old_e in 0..chart.num_edges() {
        if old_e == e {
            edge_map[old_e] = new_chart.edge(Slot::new(t1, 1));
        } else {
            let (a, _) = chart.slots_of_edge(old_e);
            let na = reloc(a);
            edge_map[old_e] = new_chart.edge(na);
        }
    }
    let flipped = edge_map[e];
    Ok(Flip {
        chart: new_chart,
        edge_map,
        flipped,
    })
}

/// Transport normal coordinates across a flip of `e` (computed on the old
/// chart).
pub fn flip_coords(chart: &Chart, e: EdgeId, f: &Flip, coords: &[u64]) -> Vec<u64> {
    let (s1, s2) = chart.slots_of_edge(e);
    let (t1, i1) = (s1.tri, s1.side);
    let (t2, i2) = (s2.tri, s2.side);
    let x = |s: Slot| coords[chart.edge(s)];
    let ax = x(Slot::new(t1, (i1 + 2) % 3));
    let xb = x(Slot::new(t2, (i2 + 1) % 3));
    let by = x(Slot::new(t2, (i2 + 2) % 3));
    let ya = x(Slot::new(t1, (i1 + 1) % 3));
    // Opposite quad side pairs are (A-X, B-Y) and (X-B, Y-A).
    let new_diag = (ax + by).max(xb + ya) - coords[e];
    let mut out = vec![0u64; f.chart.num_edges()];
    for old_e in 0..chart.num_edges() {
        out[f.edge_map[old_e]] = if old_e == e { new_diag } else { coords[old_e] };
    }
    out
}

/// A shortening state: a chart and the coordinates of the curve being
/// shortened, plus transported companion coordinates.
#[derive(Clone)]
struct ShortState {
    chart: Arc<Chart>,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl ShortState {
    fn weight(&self) -> u64 {
        self.a.iter().sum()
    }
    fn key(&self) -> (u64, Vec<u64>) {
        (self.chart.digest(), self.a.clone())
    }
}

/// Shorten `a` by flips (never increasing its weight), transporting `b`
/// along, until a recognized short form appears or the plateau search is
/// exhausted. Returns the final state and the recognized form.
enum ShortForm {
    /// `a` is the double of this edge.
    EdgeLink(EdgeId),
    /// `a` has weight 2; stores its two crossing steps' triangles and edges.
    AnnulusCore,
    /// No recognized form within budget.
    Unrecognized,
}

fn recognize(state: &ShortState) -> Option<ShortForm> {
    let chart = &state.chart;
    if state.weight() == 2 {
        return Some(ShortForm::AnnulusCore);
    }
    for e in 0..chart.num_edges() {
        let (u, v) = chart.edge_ends(e);
        if u == v {
            continue;
        }
        if state.a[e] != 0 {
            continue;
        }
        // Cheap prefilter: the link crosses exactly the ends at u and v.
        let mut ok = true;
        for f in 0..chart.num_edges() {
            let expect = if f == e {
                0
            } else {
                chart.ends_at(f, u) + chart.ends_at(f, v)
            };
            if state.a[f] != expect {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        // Confirm against the actual boundary word.
        let mut words = boundary_of_edges(chart, &[e]);
        if words.len() == 1 {
            let mut w = words.pop().unwrap();
            w.reduce(chart);
            if w.coords(chart) == state.a {
                return Some(ShortForm::EdgeLink(e));
            }
        }
    }
    None
}

/// Breadth-first search over weight-non-increasing flips, preferring strict
/// decreases, until `recognize` succeeds or the budget runs out.
fn shorten(start: ShortState, budget: usize) -> Result<(ShortState, ShortForm), SurfaceError> {
    if let Some(form) = recognize(&start) {
        return Ok((start, form));
    }
    let mut seen: BTreeSet<(u64, Vec<u64>)> = BTreeSet::new();
    seen.insert(start.key());
    let mut queue: VecDeque<ShortState> = VecDeque::new();
    queue.push_back(start.clone());
    let mut best = start;
    let mut visited = 0usize;
    while let Some(state) = queue.pop_front() {
        visited += 1;
        if visited > budget {
            return Ok((best, ShortForm::Unrecognized));
        }
        let w = state.weight();
        // Strictly decreasing flips restart the frontier.
        let mut nexts: Vec<ShortState> = Vec::new();
        let mut found_decrease = false;
        for e in 0..state.chart.num_edges() {
            if !flippable(&state.chart, e) {
                continue;
            }
            let f = flip(&state.chart, e)?;
            let na = flip_coords(&state.chart, e, &f, &state.a);
            let nw: u64 = na.iter().sum();
            if nw > w {
                continue;
            }
            let nb = flip_coords(&state.chart, e, &f, &state.b);
            let next = ShortState {
                chart: f.chart,
                a: na,
                b: nb,
            };
            if seen.contains(&next.key()) {
                continue;
            }
            seen.insert(next.key());
            if let Some(form) = recognize(&next) {
                return Ok((next, form));
            }
            if nw < w {
                found_decrease = true;
                nexts.clear();
                nexts.push(next);
                break;
            }
            nexts.push(next);
        }
        if found_decrease {
            // Drop the plateau frontier; restart from the strictly better
            // state.
            queue.clear();
            seen.retain(|k| *k == nexts[0].key());
            best = nexts[0].clone();
            queue.push_back(nexts.pop().unwrap());
        } else {
            for n in nexts {
                if n.weight() < best.weight() {
                    best = n.clone();
                }
                queue.push_back(n);
            }
        }
    }
    Ok((best, ShortForm::Unrecognized))
}

/// Strands of `b` through the two-triangle annulus around a weight-2 curve
/// `a`, counting side switches. `a` and `b` are coordinate vectors on
/// `chart`.
fn annulus_strand_count(chart: &Chart, a: &[u64], b: &[u64]) -> Result<u64, SurfaceError> {
    let comps = trace(chart, a);
    debug_assert_eq!(comps.len(), 1);
    let steps = &comps[0].steps;
    debug_assert_eq!(steps.len(), 2);
    let t1 = steps[0].slot.tri;
    let t2 = steps[1].slot.tri;
    if t1 == t2 {
        return Err(SurfaceError::Other(
            "degenerate weight-2 position (single triangle)".into(),
        ));
    }
    // In t1 the core enters via steps[0].slot and exits via the glued
    // partner of steps[1].slot; the remaining slot is the free side.
    let free_side = |t: usize, used1: Slot, used2: Slot| -> Slot {
        (0..3)
            .map(|i| Slot::new(t, i))
            .find(|&s| s != used1 && s != used2)
            .unwrap()
    };
    let g = free_side(t1, steps[0].slot, chart.glued(steps[1].slot));
    let h = free_side(t2, steps[1].slot, chart.glued(steps[0].slot));
    let ge = chart.edge(g);
    let he = chart.edge(h);
    if ge == he {
        // All three edge classes internal: the chart is the two-triangle
        // once-punctured torus.
        return torus_slope_intersection(chart, a, b);
    }
    // Trace b and classify maximal runs of arcs inside {t1, t2}. Boundary
    // crossings happen exactly on ge/he.
    let comps_b = trace(chart, b);
    let mut switches = 0u64;
    for comp in &comps_b {
        let m = comp.steps.len();
        let inside = |k: usize| {
            let t = comp.steps[k % m].slot.tri;
            t == t1 || t == t2
        };
        if (0..m).all(inside) {
            return Err(SurfaceError::Other(
                "companion curve lives inside the annulus".into(),
            ));
        }
        for k in 0..m {
            if !inside(k) || inside(k + m - 1) {
                continue; // not the start of a run
            }
            let entry_edge = chart.edge(comp.steps[k].slot);
            let mut j = k;
            while inside(j + 1) {
                j += 1;
            }
            let exit_edge = chart.edge(comp.steps[(j + 1) % m].slot);
            if entry_edge != ge && entry_edge != he || exit_edge != ge && exit_edge != he {
                return Err(SurfaceError::Other(
                    "strand crosses the annulus boundary off the free sides".into(),
                ));
            }
            if entry_edge != exit_edge {
                switches += 1;
            }
        }
    }
    Ok(switches)
}

/// Intersection number on the two-triangle torus chart via slopes.
///
/// Relative to a fixed basis of the homology the coordinates of the slope
/// p/q curve are (|p|, |q|, |p-q|) on the three edges; any consistent basis
/// choice computes the same determinants.
pub fn torus_slope_intersection(chart: &Chart, a: &[u64], b: &[u64]) -> Result<u64, SurfaceError> {
    debug_assert_eq!(chart.num_edges(), 3);
    let slope = |c: &[u64]| -> Result<(i64, i64), SurfaceError> {
        let (x0, x1, x2) = (c[0] as i64, c[1] as i64, c[2] as i64);
        let q = x1;
        if (x0 - q).abs() == x2 {
            Ok((x0, q))
        } else if x0 + q == x2 {
            Ok((-x0, q))
        } else {
            Err(SurfaceError::BadCoords(
                "not a torus curve coordinate triple".into(),
            ))
        }
    };
    let (pa, qa) = slope(a)?;
    let (pb, qb) = slope(b)?;
    Ok((pa * qb - qa * pb).unsigned_abs())
}

/// Twist-linearity fallback: recover i(a,b) from the growth of T_a^n(b).
fn intersection_by_twisting(a: &Curve, b: &Curve) -> Result<u64, SurfaceError> {
    let e = (0..a.chart().num_edges())
        .max_by_key(|&e| a.coords()[e])
        .unwrap();
    let xa = a.coords()[e];
    debug_assert!(xa > 0);
    let xb = b.coords()[e];
    let m = (4 * xb + 4) as i64;
    let t1 = dehn_twist_stacked(a, b, m)?;
    let t2 = dehn_twist_stacked(a, b, 2 * m)?;
    let num = t2.coords()[e] as i64 - t1.coords()[e] as i64;
    let den = m * xa as i64;
    let rounded = (2 * num + den) / (2 * den);
    // |x_{T^n b}(e) - n·i·xa| <= xb, so the residue must be small.
    if (num - rounded * den).abs() > 2 * xb as i64 {
        return Err(SurfaceError::Other(
            "twist growth did not stabilize; increase twisting power".into(),
        ));
    }
    Ok(rounded as u64)
}

const SHORTEN_BUDGET: usize = 4000;

fn intersection_one_sided(a: &Curve, b: &Curve) -> Result<Option<u64>, SurfaceError> {
    let start = ShortState {
        chart: a.chart().clone(),
        a: a.coords().to_vec(),
        b: b.coords().to_vec(),
    };
    let (state, form) = shorten(start, SHORTEN_BUDGET)?;
    match form {
        ShortForm::EdgeLink(e) => Ok(Some(2 * state.b[e])),
        ShortForm::AnnulusCore => {
            if state.chart.num_edges() == 3 && state.chart.surface == Surface::new(1, 1) {
                return torus_slope_intersection(&state.chart, &state.a, &state.b).map(Some);
            }
            match annulus_strand_count(&state.chart, &state.a, &state.b) {
                Ok(n) => Ok(Some(n)),
                Err(_) => Ok(None),
            }
        }
        ShortForm::Unrecognized => Ok(None),
    }
}

/// Geometric intersection number via flips and short-form read-offs. This
/// is the primary algorithm; `arrange::intersection_by_tracing` is the
/// independent oracle it is cross-checked against.
pub fn intersection_number(a: &Curve, b: &Curve) -> Result<u64, SurfaceError> {
    a.require_same_chart(b)?;
    if a == b {
        return Ok(0);
    }
    if let Some(n) = intersection_one_sided(a, b)? {
        return Ok(n);
    }
    if let Some(n) = intersection_one_sided(b, a)? {
        return Ok(n);
    }
    intersection_by_twisting(a, b)
}
