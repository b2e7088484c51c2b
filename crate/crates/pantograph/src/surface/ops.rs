//! Surgeries and derived operations on curves: smoothing of transverse
//! unions, regular-neighborhood boundaries, Dehn twists, half-twists, Farey
//! mediants, and slope frames for the Farey charts.

use std::sync::Arc;

use crate::error::SurfaceError;
use crate::surface::arrange::{intersection_by_tracing, ArcEnd, Arrangement};
use crate::surface::chart::{Chart, Slot};
use crate::surface::curve::Curve;
use crate::surface::word::{boundary_of_edges, edge_double, Word};

/// A multicurve: a sorted set of distinct, pairwise disjoint curves.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Multicurve {
    curves: Vec<Curve>,
}

impl Multicurve {
    pub fn new(mut curves: Vec<Curve>) -> Result<Multicurve, SurfaceError> {
        curves.sort();
        for w in curves.windows(2) {
            if w[0] == w[1] {
                return Err(SurfaceError::DuplicateCurve);
            }
            w[0].require_same_chart(&w[1])?;
        }
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let n = intersection_by_tracing(&curves[i], &curves[j])?;
                if n != 0 {
                    return Err(SurfaceError::NotDisjoint(n));
                }
            }
        }
        Ok(Multicurve { curves })
    }

    pub fn empty() -> Multicurve {
        Multicurve { curves: Vec::new() }
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn contains(&self, c: &Curve) -> bool {
        self.curves.binary_search(c).is_ok()
    }

    /// Union of two disjoint multicurve supports; fails if members cross.
    pub fn union(&self, other: &Multicurve) -> Result<Multicurve, SurfaceError> {
        let mut curves = self.curves.clone();
        for c in &other.curves {
            if !self.contains(c) {
                curves.push(c.clone());
            }
        }
        Multicurve::new(curves)
    }

    pub fn without(&self, c: &Curve) -> Multicurve {
        Multicurve {
            curves: self.curves.iter().filter(|x| *x != c).cloned().collect(),
        }
    }

    pub fn with(&self, c: Curve) -> Result<Multicurve, SurfaceError> {
        let mut curves = self.curves.clone();
        curves.push(c);
        Multicurve::new(curves)
    }

    /// Total coordinate vector of the family.
    pub fn total_coords(&self, chart: &Chart) -> Vec<u64> {
        let mut c = vec![0u64; chart.num_edges()];
        for cu in &self.curves {
            for (e, x) in cu.coords().iter().enumerate() {
                c[e] += x;
            }
        }
        c
    }
}

/// Resolution side for smoothing a transverse pair coherently.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// Position of a crossing along one curve of a two-curve arrangement:
/// (arc index, rank within the arc).
type CrossPos = (usize, usize);

/// Flattened crossing order along curve `k` of the arrangement, and the
/// inverse map crossing-id -> position.
fn crossing_cycle(arr: &Arrangement<'_>, k: usize) -> (Vec<usize>, Vec<CrossPos>) {
    let mut cycle = Vec::new();
    let mut pos = vec![(usize::MAX, usize::MAX); arr.crossings.len()];
    for (s, list) in arr.on_arc[k].iter().enumerate() {
        for (i, &id) in list.iter().enumerate() {
            pos[id] = (s, i);
            cycle.push(id);
        }
    }
    (cycle, pos)
}

/// Emit the slot word travelling curve `k` forward from the crossing at
/// `from` to the next crossing `to` (positions along the curve's word).
fn emit_forward(arr: &Arrangement<'_>, k: usize, from: CrossPos, to: CrossPos, out: &mut Vec<Slot>) {
    let word = &arr.traces[k].steps;
    let m = word.len();
    if from.0 == to.0 && to.1 == from.1 + 1 {
        return;
    }
    // Walk arcs from.0+1 ..= to.0 cyclically.
    let mut s = (from.0 + 1) % m;
    loop {
        out.push(word[s].slot);
        if s == to.0 {
            break;
        }
        s = (s + 1) % m;
    }
}

/// Emit the slot word travelling curve `k` backward from `from` to the
/// previous crossing `to`.
fn emit_backward(arr: &Arrangement<'_>, k: usize, from: CrossPos, to: CrossPos, out: &mut Vec<Slot>) {
    let chart = arr.chart;
    let word = &arr.traces[k].steps;
    let m = word.len();
    if from.0 == to.0 && from.1 == to.1 + 1 {
        return;
    }
    // Crossing edges word[from.0], word[from.0-1], ..., word[to.0+1],
    // entering through the glued slots.
    let mut s = from.0;
    loop {
        out.push(chart.glued(word[s].slot));
        let prev = (s + m - 1) % m;
        if prev == to.0 {
            break;
        }
        s = prev;
    }
}

/// Coherent smoothing of a transversal pair of curves: every crossing is
/// resolved by the same turn. `Side::Plus` turns right everywhere,
/// `Side::Minus` left; on adjacent pairs these are the two Farey mediants.
pub fn smooth_words(a: &Curve, b: &Curve, side: Side) -> Result<Vec<Word>, SurfaceError> {
    a.require_same_chart(b)?;
    let arr = Arrangement::new(&a.chart, vec![a, b])?;
    if arr.crossings.is_empty() {
        return Err(SurfaceError::Other("smoothing needs crossings".into()));
    }
    let cycles = [crossing_cycle(&arr, 0), crossing_cycle(&arr, 1)];
    let flat_of = |k: usize, pos: CrossPos| -> usize {
        let mut flat = 0;
        for (s, list) in arr.on_arc[k].iter().enumerate() {
            if s == pos.0 {
                flat += pos.1;
                break;
            }
            flat += list.len();
        }
        flat
    };

    // A state: arrived at crossing x travelling along curve k with
    // direction d (true = forward).
    let mut seen = std::collections::BTreeSet::<(usize, usize, bool)>::new();
    let mut words = Vec::new();
    for sx in 0..arr.crossings.len() {
        for sk in 0..2usize {
            for sd in [true, false] {
                if seen.contains(&(sx, sk, sd)) {
                    continue;
                }
                let mut steps: Vec<Slot> = Vec::new();
                let (mut x, mut k, mut d) = (sx, sk, sd);
                loop {
                    if seen.contains(&(x, k, d)) {
                        break;
                    }
                    seen.insert((x, k, d));
                    let cr = &arr.crossings[x];
                    // Ray matching at the crossing, Side::Plus:
                    //   (a, Entry) <-> (b, right_of_a),
                    //   (a, Exit)  <-> (b, flip(right_of_a)).
                    // Arriving forward along k means arriving on ray
                    // (k, Entry); backward on (k, Exit).
                    let on_a_side = k == cr.a.0;
                    let arrive_end = if d { ArcEnd::Entry } else { ArcEnd::Exit };
                    let flip = |e: ArcEnd| match e {
                        ArcEnd::Entry => ArcEnd::Exit,
                        ArcEnd::Exit => ArcEnd::Entry,
                    };
                    let mut base = cr.right_of_a;
                    if side == Side::Minus {
                        base = flip(base);
                    }
                    // Partner of (a, e) is (b, e == Entry ? base : flip(base));
                    // partner of (b, e) inverts that map.
                    let depart_end = if on_a_side {
                        if arrive_end == ArcEnd::Entry { base } else { flip(base) }
                    } else if arrive_end == base {
                        ArcEnd::Entry
                    } else {
                        ArcEnd::Exit
                    };
                    let ok = if on_a_side { cr.b.0 } else { cr.a.0 };
                    let nd = depart_end == ArcEnd::Exit;
                    let (cycle, positions) = &cycles[ok];
                    let from = positions[x];
                    let flat = flat_of(ok, from);
                    let y = if nd {
                        cycle[(flat + 1) % cycle.len()]
                    } else {
                        cycle[(flat + cycle.len() - 1) % cycle.len()]
                    };
                    let to = positions[y];
                    if nd {
                        emit_forward(&arr, ok, from, to, &mut steps);
                    } else {
                        emit_backward(&arr, ok, from, to, &mut steps);
                    }
                    x = y;
                    k = ok;
                    d = nd;
                }
                if !steps.is_empty() {
                    words.push(Word::new(steps));
                }
            }
        }
    }
    Ok(words)
}

/// The essential curves among the components of a smoothing.
pub fn smooth_essential(a: &Curve, b: &Curve, side: Side) -> Result<Vec<Curve>, SurfaceError> {
    let chart = a.chart().clone();
    let mut out = Vec::new();
    for w in smooth_words(a, b, side)? {
        match w.into_curve_class(&chart) {
            Ok(Some(c)) => out.push(c),
            Ok(None) => {}
            Err(SurfaceError::NullHomotopic) => {}
            Err(SurfaceError::NotConnected(_)) => {
                return Err(SurfaceError::Other(
                    "smoothing component traced disconnected".into(),
                ))
            }
            Err(e) => return Err(e),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Boundary components of a regular neighborhood of the union of a
/// transverse family of curves (connected union required).
pub fn neighborhood_boundary(curves: &[&Curve]) -> Result<Vec<Word>, SurfaceError> {
    if curves.is_empty() {
        return Ok(Vec::new());
    }
    let chart = curves[0].chart();
    let arr = Arrangement::new(chart, curves.to_vec())?;
    if curves.len() == 1 {
        return Err(SurfaceError::Other(
            "neighborhood boundary of a single curve is its two parallel copies".into(),
        ));
    }
    // Rays at a crossing, counterclockwise. Case `right_of_a == Exit` means
    // b leaves to a's right: ccw order (a-out, b-in, a-in, b-out); otherwise
    // (a-out, b-out, a-in, b-in). A ray is (curve, arc step, In/Out).
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    struct Ray {
        k: usize,
        inward: bool, // In: points backward along the curve (arrival ray)
    }
    let rays_ccw = |x: &crate::surface::arrange::Crossing| -> [Ray; 4] {
        let a_out = Ray { k: x.a.0, inward: false };
        let a_in = Ray { k: x.a.0, inward: true };
        let b_out = Ray { k: x.b.0, inward: false };
        let b_in = Ray { k: x.b.0, inward: true };
        if x.right_of_a == ArcEnd::Exit {
            [a_out, b_in, a_in, b_out]
        } else {
            [a_out, b_out, a_in, b_in]
        }
    };

    // Crossing cycles per curve.
    let mut cycles = Vec::new();
    let mut positions = Vec::new();
    for k in 0..curves.len() {
        let (c, p) = crossing_cycle(&arr, k);
        if c.is_empty() {
            return Err(SurfaceError::Other(
                "neighborhood boundary needs a connected union".into(),
            ));
        }
        cycles.push(c);
        positions.push(p);
    }

    // A state: departing crossing x along ray r (outward) on side s of the
    // outward travel direction (false = Left, true = Right).
    type State = (usize, usize, bool, bool); // (crossing, ray index 0..4, ... )
    // We encode ray by its index in rays_ccw(x).
    let ray_index = |x: usize, r: Ray| -> usize {
        let rs = rays_ccw(&arr.crossings[x]);
        (0..4).find(|&i| rs[i] == r).expect("ray present")
    };

    let mut seen = std::collections::BTreeSet::<State>::new();
    let mut words = Vec::new();
    for x0 in 0..arr.crossings.len() {
        for r0 in 0..4 {
            for s0 in [false, true] {
                let start: State = (x0, r0, s0, false);
                if seen.contains(&start) {
                    continue;
                }
                let mut steps: Vec<Slot> = Vec::new();
                let (mut x, mut ri, mut side) = (x0, r0, s0);
                loop {
                    let st: State = (x, ri, side, false);
                    if seen.contains(&st) {
                        break;
                    }
                    seen.insert(st);
                    // Travel outward along ray ri of crossing x.
                    let ray = rays_ccw(&arr.crossings[x])[ri];
                    let k = ray.k;
                    let posx = positions[k][x];
                    let (y, travelled_forward) = if !ray.inward {
                        // Outward along the out-ray = forward along k.
                        let y = {
                            let mut flat = 0;
                            for (s, list) in arr.on_arc[k].iter().enumerate() {
                                if s == posx.0 {
                                    flat += posx.1;
                                    break;
                                }
                                flat += list.len();
                            }
                            cycles[k][(flat + 1) % cycles[k].len()]
                        };
                        emit_forward(&arr, k, posx, positions[k][y], &mut steps);
                        (y, true)
                    } else {
                        let y = {
                            let mut flat = 0;
                            for (s, list) in arr.on_arc[k].iter().enumerate() {
                                if s == posx.0 {
                                    flat += posx.1;
                                    break;
                                }
                                flat += list.len();
                            }
                            cycles[k][(flat + cycles[k].len() - 1) % cycles[k].len()]
                        };
                        emit_backward(&arr, k, posx, positions[k][y], &mut steps);
                        (y, false)
                    };
                    // Arrive at y along k: arrival ray at y is (k, In) if we
                    // travelled forward (the ray pointing back), else (k, Out).
                    let arrive_ray = Ray { k, inward: travelled_forward };
                    let ari = ray_index(y, arrive_ray);
                    // Our side of travel becomes an outward-side of the
                    // arrival ray by flipping.
                    let outward_side = !side;
                    // Quadrant turn: outward-left of ray i connects to
                    // outward-right of ray i+1 (ccw).
                    let (nri, nside) = if !outward_side {
                        // Left: go ccw to ray i+1, right side.
                        ((ari + 1) % 4, true)
                    } else {
                        ((ari + 3) % 4, false)
                    };
                    x = y;
                    ri = nri;
                    side = nside;
                }
                if !steps.is_empty() {
                    words.push(Word::new(steps));
                }
            }
        }
    }
    Ok(words)
}

/// Essential boundary curves of a regular neighborhood of a transverse
/// connected union.
pub fn neighborhood_boundary_curves(curves: &[&Curve]) -> Result<Vec<Curve>, SurfaceError> {
    let chart = curves[0].chart().clone();
    let mut out = Vec::new();
    for w in neighborhood_boundary(curves)? {
        if let Ok(Some(c)) = w.into_curve_class(&chart) {
            out.push(c);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// How the simultaneous position is chosen when twisting.
#[derive(Clone, Copy, PartialEq, Eq)]
enum TwistArrangePolicy {
    Minimal,
    Stacked,
}

fn dehn_twist_impl(
    c: &Curve,
    target: &Curve,
    power: i64,
    policy: TwistArrangePolicy,
) -> Result<Curve, SurfaceError> {
    c.require_same_chart(target)?;
    if power == 0 || c == target {
        return Ok(target.clone());
    }
    let chart = c.chart().clone();
    let arr = match policy {
        TwistArrangePolicy::Minimal => Arrangement::new(&chart, vec![c, target])?,
        TwistArrangePolicy::Stacked => Arrangement::new_stacked(&chart, vec![c, target])?,
    };
    if arr.crossings.is_empty() {
        return Ok(target.clone());
    }
    let cw = &arr.traces[0].steps;
    let m = cw.len();
    let tw = &arr.traces[1].steps;
    let mut steps: Vec<Slot> = Vec::new();
    for (s, st) in tw.iter().enumerate() {
        steps.push(st.slot);
        for &xid in &arr.on_arc[1][s] {
            let x = &arr.crossings[xid];
            debug_assert_eq!(x.b, (1, s));
            let j = x.a.1; // c's arc at this crossing
            // Positive power: turn towards the end of c's arc on the
            // target's right.
            let toward_exit = (x.right_of_b == ArcEnd::Exit) == (power > 0);
            for _ in 0..power.unsigned_abs() {
                if toward_exit {
                    for t in 0..m {
                        steps.push(cw[(j + 1 + t) % m].slot);
                    }
                } else {
                    for t in 0..m {
                        steps.push(chart.glued(cw[(j + m - t) % m].slot));
                    }
                }
            }
        }
    }
    let mut w = Word::new(steps);
    debug_assert!(w.is_well_formed(&chart));
    w.reduce(&chart);
    w.into_curve(&chart)
}

/// Dehn twist T_c^power applied to `target`, in canonical form. The sign
/// convention is fixed by the implementation; `half_twist` squares to
/// `dehn_twist` with matching signs.
pub fn dehn_twist(c: &Curve, target: &Curve, power: i64) -> Result<Curve, SurfaceError> {
    dehn_twist_impl(c, target, power, TwistArrangePolicy::Minimal)
}

/// Twist computed on the stacked (non-minimal) arrangement: same isotopy
/// class by an independent route, used for cross-checks and for the
/// twist-linearity intersection fallback.
pub fn dehn_twist_stacked(c: &Curve, target: &Curve, power: i64) -> Result<Curve, SurfaceError> {
    dehn_twist_impl(c, target, power, TwistArrangePolicy::Stacked)
}

/// Twist a multicurve memberwise.
pub fn dehn_twist_multi(c: &Curve, q: &Multicurve, power: i64) -> Result<Multicurve, SurfaceError> {
    Multicurve::new(
        q.curves()
            .iter()
            .map(|x| dehn_twist(c, x, power))
            .collect::<Result<Vec<_>, _>>()?,
    )
}

/// All curves of weight at most `max_weight`, plus all edge doubles: a
/// candidate pool for frame bootstrapping.
pub fn small_curve_pool(chart: &Arc<Chart>, max_weight: u64) -> Vec<Curve> {
    let ne = chart.num_edges();
    let mut out: Vec<Curve> = Vec::new();
    // Edge doubles.
    for e in 0..ne {
        if let Ok(c) = edge_double(chart, e) {
            out.push(c);
        }
    }
    // Doubles of connected two-edge subcomplexes.
    for e in 0..ne {
        for f in e + 1..ne {
            let (a1, b1) = chart.edge_ends(e);
            let (a2, b2) = chart.edge_ends(f);
            if a1 != a2 && a1 != b2 && b1 != a2 && b1 != b2 {
                continue;
            }
            for w in boundary_of_edges(chart, &[e, f]) {
                if let Ok(Some(c)) = w.into_curve_class(chart) {
                    out.push(c);
                }
            }
        }
    }
    // Exhaustive small-weight vectors.
    let mut coords = vec![0u64; ne];
    fn rec(chart: &Arc<Chart>, coords: &mut Vec<u64>, e: usize, left: u64, out: &mut Vec<Curve>) {
        if e == coords.len() {
            if coords.iter().any(|&x| x > 0) {
                if let Ok(c) = Curve::new(chart.clone(), coords.clone()) {
                    out.push(c);
                }
            }
            return;
        }
        for x in 0..=left {
            coords[e] = x;
            rec(chart, coords, e + 1, left - x, out);
        }
        coords[e] = 0;
    }
    rec(chart, &mut coords, 0, max_weight, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Find any essential curve in the chart of `locus`: disjoint from the
/// locus, not a member, not parallel to a member.
pub fn any_chart_curve(locus: &Multicurve, chart: &Arc<Chart>) -> Result<Curve, SurfaceError> {
    for cand in small_curve_pool(chart, 4) {
        if locus.contains(&cand) {
            continue;
        }
        if locus
            .curves()
            .iter()
            .all(|q| intersection_by_tracing(q, &cand) == Ok(0))
        {
            return Ok(cand);
        }
    }
    Err(SurfaceError::Other(
        "no small curve found in the chart of the locus".into(),
    ))
}

/// Reduce `y` against `m` by smoothing until the intersection number drops
/// to `unit`, staying disjoint from `locus`. Returns a Farey neighbor of `m`.
pub fn reduce_to_neighbor(
    locus: &Multicurve,
    m: &Curve,
    y: &Curve,
    unit: u64,
) -> Result<Curve, SurfaceError> {
    let mut frontier: Vec<Curve> = vec![y.clone()];
    let mut seen = std::collections::BTreeSet::<Curve>::new();
    for _ in 0..64 {
        let mut next: Vec<Curve> = Vec::new();
        for cand in &frontier {
            let i0 = intersection_by_tracing(m, cand)?;
            if i0 == unit {
                return Ok(cand.clone());
            }
            for side in [Side::Plus, Side::Minus] {
                for c in smooth_essential(m, cand, side)? {
                    if c == *m || seen.contains(&c) {
                        continue;
                    }
                    if !locus
                        .curves()
                        .iter()
                        .all(|q| intersection_by_tracing(q, &c) == Ok(0))
                    {
                        continue;
                    }
                    let i1 = intersection_by_tracing(m, &c)?;
                    if i1 > 0 && i1 < i0 {
                        seen.insert(c.clone());
                        next.push(c);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by_key(|c| intersection_by_tracing(m, c).unwrap_or(u64::MAX));
        frontier = next;
    }
    Err(SurfaceError::Other(
        "could not reduce to a Farey neighbor".into(),
    ))
}

/// A slope coordinate system on the Farey chart of a deficiency-1 locus:
/// `zero`, `infty`, `one` are chart curves at slopes 0/1, 1/0, 1/1, and
/// `unit` is the chart's intersection unit (1 on S_{1,1}, 2 on S_{0,4}).
#[derive(Clone, Debug)]
pub struct FareyFrame {
    pub locus: Multicurve,
    pub zero: Curve,
    pub infty: Curve,
    pub one: Curve,
    pub unit: u64,
}

impl FareyFrame {
    /// Build a frame around a given chart curve (slope 0/1).
    pub fn around(
        locus: &Multicurve,
        zero: &Curve,
        unit: u64,
        chart: &Arc<Chart>,
    ) -> Result<FareyFrame, SurfaceError> {
        Self::around_with_hint(locus, zero, unit, chart, None)
    }

    /// Like `around`, but tries caller-supplied chart curves first when
    /// hunting for the slope-1/0 partner.
    pub fn around_with_hint(
        locus: &Multicurve,
        zero: &Curve,
        unit: u64,
        chart: &Arc<Chart>,
        hint: Option<&Curve>,
    ) -> Result<FareyFrame, SurfaceError> {
        let hints: Vec<Curve> = hint.cloned().into_iter().collect();
        Self::around_with_candidates(locus, zero, unit, chart, &hints)
    }

    /// Build a frame trying the given chart curves as partners before the
    /// generic pool.
    pub fn around_with_candidates(
        locus: &Multicurve,
        zero: &Curve,
        unit: u64,
        chart: &Arc<Chart>,
        hints: &[Curve],
    ) -> Result<FareyFrame, SurfaceError> {
        let mut partner: Option<Curve> = None;
        let mut candidates: Vec<Curve> = hints.to_vec();
        candidates.extend(small_curve_pool(chart, 4));
        for cand in candidates {
            if cand == *zero || locus.contains(&cand) {
                continue;
            }
            if !locus
                .curves()
                .iter()
                .all(|q| intersection_by_tracing(q, &cand) == Ok(0))
            {
                continue;
            }
            let i0 = intersection_by_tracing(zero, &cand)?;
            if i0 == 0 {
                continue;
            }
            partner = Some(if i0 == unit {
                cand
            } else {
                reduce_to_neighbor(locus, zero, &cand, unit)?
            });
            break;
        }
        let infty = match partner {
            Some(p) => p,
            // Constructive fallback: search the cut complex of the full
            // pants decomposition for a closed path crossing `zero` in the
            // chart unit.
            None => crate::surface::complement::chart_partner(chart, locus, zero, unit)?,
        };
        let mut mediants = smooth_essential(zero, &infty, Side::Plus)?;
        mediants.extend(smooth_essential(zero, &infty, Side::Minus)?);
        mediants.retain(|c| {
            intersection_by_tracing(c, zero) == Ok(unit)
                && intersection_by_tracing(c, &infty) == Ok(unit)
        });
        mediants.sort();
        mediants.dedup();
        if mediants.is_empty() {
            return Err(SurfaceError::Other("no mediant for Farey frame".into()));
        }
        let one = mediants.swap_remove(0);
        Ok(FareyFrame {
            locus: locus.clone(),
            zero: zero.clone(),
            infty,
            one,
            unit,
        })
    }

    /// Slope of a chart curve in this frame, canonicalized to q > 0, or
    /// (1, 0).
    pub fn slope_of(&self, x: &Curve) -> Result<(i64, i64), SurfaceError> {
        if *x == self.zero {
            return Ok((0, 1));
        }
        if *x == self.infty {
            return Ok((1, 0));
        }
        let p = intersection_by_tracing(x, &self.zero)? / self.unit;
        let q = intersection_by_tracing(x, &self.infty)? / self.unit;
        let r = intersection_by_tracing(x, &self.one)? / self.unit;
        let (p, q, r) = (p as i64, q as i64, r as i64);
        if p == 0 {
            return Ok((0, 1));
        }
        if q == 0 {
            return Ok((1, 0));
        }
        // r = |p' - q| where p' is the signed p.
        if (p - q).abs() == r {
            Ok((p, q))
        } else if (p + q).abs() == r {
            Ok((-p, q))
        } else {
            Err(SurfaceError::Other(format!(
                "inconsistent slope triple ({p},{q},{r})"
            )))
        }
    }

    /// Construct the chart curve at a given primitive slope by Stern-Brocot
    /// descent from the frame.
    pub fn curve_at(&self, slope: (i64, i64)) -> Result<Curve, SurfaceError> {
        let (p, q) = canonical_slope(slope)?;
        let target = (p, q);
        let matches = |c: &Curve, s: (i64, i64)| -> bool {
            self.slope_of(c).map(|t| t == canonical_slope(s).unwrap()).unwrap_or(false)
        };
        if target == (0, 1) {
            return Ok(self.zero.clone());
        }
        if target == (1, 0) {
            return Ok(self.infty.clone());
        }
        if target == (1, 1) {
            return Ok(self.one.clone());
        }
        // Descend in the fan spanned by L and R.
        let (mut ls, mut lc) = ((0i64, 1i64), self.zero.clone());
        let (mut rs, mut rc) = ((1i64.copysign_i(p), 0i64), self.infty.clone());
        for _ in 0..512 {
            let ms = (ls.0 + rs.0, ls.1 + rs.1);
            let mut cand = smooth_essential(&lc, &rc, Side::Plus)?;
            cand.extend(smooth_essential(&lc, &rc, Side::Minus)?);
            cand.sort();
            cand.dedup();
            let mc = cand
                .into_iter()
                .find(|c| matches(c, ms))
                .ok_or_else(|| SurfaceError::Other("mediant descent lost the slope".into()))?;
            if canonical_slope(ms)? == target {
                return Ok(mc);
            }
            // det(target, ms) decides the side.
            let d = p * ms.1 - q * ms.0;
            if d.signum() == (p * ls.1 - q * ls.0).signum() {
                // target between ms and rs
                ls = ms;
                lc = mc;
            } else {
                rs = ms;
                rc = mc;
            }
        }
        Err(SurfaceError::Other("slope descent did not converge".into()))
    }
}

/// Canonicalize a slope: q > 0, or (1,0); reduced.
pub fn canonical_slope(s: (i64, i64)) -> Result<(i64, i64), SurfaceError> {
    let (p, q) = s;
    if p == 0 && q == 0 {
        return Err(SurfaceError::Other("zero slope".into()));
    }
    let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
    let (mut p, mut q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        p = -p;
        q = -q;
    }
    Ok((p, q))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

trait CopysignI {
    fn copysign_i(self, other: i64) -> i64;
}
impl CopysignI for i64 {
    fn copysign_i(self, other: i64) -> i64 {
        if other < 0 {
            -self.abs()
        } else {
            self.abs()
        }
    }
}

/// Common Farey neighbors of two slopes: the integral primitive vectors
/// (±s1 ± s2)/|det(s1,s2)|.
pub fn common_neighbor_slopes(s1: (i64, i64), s2: (i64, i64)) -> Vec<(i64, i64)> {
    let d = (s1.0 * s2.1 - s1.1 * s2.0).abs();
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let p = e1 * s1.0 + e2 * s2.0;
        let q = e1 * s1.1 + e2 * s2.1;
        if p % d != 0 || q % d != 0 {
            continue;
        }
        let (p, q) = (p / d, q / d);
        if p == 0 && q == 0 {
            continue;
        }
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            continue;
        }
        if let Ok(c) = canonical_slope((p, q)) {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// The two Farey mediants of an adjacent pair in a complexity-1 chart.
/// `side` selects one of the two coherent resolutions of the union.
pub fn farey_mediant(a: &Curve, b: &Curve, side: Side) -> Result<Curve, SurfaceError> {
    a.require_same_chart(b)?;
    let k = a.chart().surface.complexity();
    if k != 1 {
        return Err(SurfaceError::NotComplexityOne(format!(
            "chart surface {} has complexity {k}",
            a.chart().surface
        )));
    }
    let unit = if a.chart().surface.genus == 1 { 1 } else { 2 };
    let found = intersection_by_tracing(a, b)?;
    if found != unit {
        return Err(SurfaceError::NotAdjacent {
            found,
            expected: unit,
        });
    }
    let mut cands = smooth_essential(a, b, side)?;
    cands.retain(|c| {
        intersection_by_tracing(c, a) == Ok(unit) && intersection_by_tracing(c, b) == Ok(unit)
    });
    if cands.len() != 1 {
        return Err(SurfaceError::Other(format!(
            "expected one mediant per side, found {}",
            cands.len()
        )));
    }
    Ok(cands.pop().unwrap())
}

/// Half twist about a curve bounding a twice-punctured disk.
///
/// For i(c, target) = 2 the two half-twist images are the two coherent
/// resolutions of the union; the sign is matched against the full twist
/// (applying the same sign twice is `dehn_twist(c, target, sign)`). For
/// larger intersection numbers the image is computed by slope arithmetic in
/// the Farey chart of a companion multicurve; a configuration filling the
/// surface is unsupported.
pub fn half_twist(c: &Curve, target: &Curve, sign: i64) -> Result<Curve, SurfaceError> {
    use crate::surface::complement::{bounds_twice_punctured_disk, classify_complement, CutCells};
    if sign != 1 && sign != -1 {
        return Err(SurfaceError::Other("half twist sign must be +1 or -1".into()));
    }
    c.require_same_chart(target)?;
    if !bounds_twice_punctured_disk(c)? {
        return Err(SurfaceError::NotHalfTwistable(format!(
            "{c} does not bound a twice-punctured disk"
        )));
    }
    let k = intersection_by_tracing(c, target)?;
    if k == 0 {
        return Ok(target.clone());
    }
    if k % 2 != 0 {
        return Err(SurfaceError::Other(
            "odd intersection with a separating curve".into(),
        ));
    }
    let chart = c.chart().clone();
    if k == 2 {
        let full = dehn_twist(c, target, sign)?;
        let (m1, m2) = mediant_pair(c, target)?;
        for m in [m1, m2] {
            let (n1, n2) = mediant_pair(c, &m)?;
            if n1 == full || n2 == full {
                return Ok(m);
            }
        }
        return Err(SurfaceError::Other(
            "half-twist calibration failed at i = 2".into(),
        ));
    }
    // Companion route: essential boundary curves of N(c ∪ target) cut the
    // surface so that c and target live in a complexity-1 piece.
    let companions = neighborhood_boundary_curves(&[c, target])?;
    let companions: Vec<Curve> = companions
        .into_iter()
        .filter(|w| {
            intersection_by_tracing(w, c) == Ok(0) && intersection_by_tracing(w, target) == Ok(0)
        })
        .collect();
    if companions.is_empty() {
        return Err(SurfaceError::HalfTwistUnsupported(
            "the curve and target fill the surface".into(),
        ));
    }
    let locus = Multicurve::new(companions)?;
    let comp = classify_complement(&chart, &locus)?;
    let cells = CutCells::new(&chart, &locus)?;
    let piece = cells.piece_of_curve(&locus, c)?;
    let info = comp
        .pieces
        .iter()
        .find(|p| p.piece == piece)
        .expect("piece exists");
    if info.surface.complexity() != 1 {
        return Err(SurfaceError::HalfTwistUnsupported(format!(
            "companion piece {} is not complexity 1",
            info.surface
        )));
    }
    if cells.piece_of_curve(&locus, target)? != piece {
        return Err(SurfaceError::HalfTwistUnsupported(
            "curve and target in different companion pieces".into(),
        ));
    }
    let unit = if info.surface.genus == 1 { 1 } else { 2 };
    let frame = FareyFrame::around_with_hint(&locus, c, unit, &chart, Some(target))?;
    let (p, q) = frame.slope_of(target)?;
    debug_assert_eq!(p.unsigned_abs(), k / unit);
    let full = dehn_twist(c, target, sign)?;
    let full_slope = canonical_slope(frame.slope_of(&full)?)?;
    for d in [1i64, -1] {
        if canonical_slope((p, q + 2 * d * p))? == full_slope {
            return frame.curve_at((p, q + d * p));
        }
    }
    Err(SurfaceError::Other(
        "half-twist slope calibration failed".into(),
    ))
}

/// Both mediants of an adjacent pair inside any chart (the two coherent
/// resolutions), without the complexity-1 restriction on the ambient chart.
pub fn mediant_pair(a: &Curve, b: &Curve) -> Result<(Curve, Curve), SurfaceError> {
    let mut plus = smooth_essential(a, b, Side::Plus)?;
    let mut minus = smooth_essential(a, b, Side::Minus)?;
    let keep = |v: &mut Vec<Curve>, a: &Curve, b: &Curve| {
        v.retain(|c| {
            intersection_by_tracing(c, a).unwrap_or(u64::MAX)
                == intersection_by_tracing(a, b).unwrap_or(0)
                && intersection_by_tracing(c, b).unwrap_or(u64::MAX)
                    == intersection_by_tracing(a, b).unwrap_or(0)
        });
    };
    keep(&mut plus, a, b);
    keep(&mut minus, a, b);
    if plus.len() != 1 || minus.len() != 1 {
        return Err(SurfaceError::Other(format!(
            "mediant surgery produced {}/{} candidates",
            plus.len(),
            minus.len()
        )));
    }
    let (p, m) = (plus.pop().unwrap(), minus.pop().unwrap());
    if p == m {
        return Err(SurfaceError::Other("mediants coincide".into()));
    }
    Ok((p, m))
}
