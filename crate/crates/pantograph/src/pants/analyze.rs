//! Structural analyzers: common neighbors by exact case analysis, the
//! decomposition of circuits into alternating tuples, the square transport
//! check, and the classification of length-2 geodesics.

use std::sync::Arc;

use crate::error::PantsError;
use crate::pants::{elementary_move, FareyChartId, FrameCache, PantsVertex};
use crate::surface::chart::Chart;
use crate::surface::complement::{classify_complement, CutCells};
use crate::surface::ops::{canonical_slope, common_neighbor_slopes, Multicurve};

/// Common neighbors of two distinct vertices, computed analytically:
/// within one Farey chart via slope arithmetic when the vertices share a
/// deficiency-1 multicurve, by the four mixture candidates when they share
/// deficiency 2, and empty otherwise.
pub fn common_neighbors(
    chart: &Arc<Chart>,
    cache: &FrameCache,
    u: &PantsVertex,
    v: &PantsVertex,
) -> Result<Vec<PantsVertex>, PantsError> {
    assert_ne!(u, v, "common neighbors of a vertex with itself");
    let kappa = chart.surface.complexity();
    let common = u.intersection(v);
    let shared = common.len() as i64;
    if shared == kappa - 1 {
        // One Farey chart: neighbors of both moving slopes.
        let id = FareyChartId::new(chart, common.clone())?;
        let cu = u.curves().iter().find(|c| !common.contains(c)).unwrap();
        let cv = v.curves().iter().find(|c| !common.contains(c)).unwrap();
        let frame = cache.frame_with_candidates(&common, cu, id.unit(), &[cv.clone()])?;
        let s1 = frame.slope_of(cu)?;
        let s2 = frame.slope_of(cv)?;
        let mut out = Vec::new();
        for s in common_neighbor_slopes(s1, s2) {
            if canonical_slope(s)? == canonical_slope(s1)? || canonical_slope(s)? == canonical_slope(s2)? {
                continue;
            }
            let c = frame.curve_at(s)?;
            out.push(u.replace(chart, cu, c)?);
        }
        out.sort();
        out.dedup();
        return Ok(out);
    }
    if shared == kappa - 2 {
        // w must contain the common part plus one curve from each side.
        let us: Vec<_> = u.curves().iter().filter(|c| !common.contains(c)).collect();
        let vs: Vec<_> = v.curves().iter().filter(|c| !common.contains(c)).collect();
        debug_assert_eq!(us.len(), 2);
        debug_assert_eq!(vs.len(), 2);
        let mut out = Vec::new();
        for x in &us {
            for y in &vs {
                let q = common.clone().with((*x).clone()).and_then(|q| q.with((*y).clone()));
                let q = match q {
                    Ok(q) => q,
                    Err(_) => continue, // members cross: not a multicurve
                };
                let w = match PantsVertex::new(chart, q) {
                    Ok(w) => w,
                    Err(_) => continue,
                };
                if elementary_move(chart, u, &w)?.is_some()
                    && elementary_move(chart, v, &w)?.is_some()
                {
                    out.push(w);
                }
            }
        }
        out.sort();
        out.dedup();
        return Ok(out);
    }
    Ok(Vec::new())
}

/// A cyclically ordered alternating tuple: consecutive vertices share the
/// listed Farey chart and consecutive charts differ.
#[derive(Clone, Debug)]
pub struct AltTuple {
    pub vertices: Vec<PantsVertex>,
    pub charts: Vec<FareyChartId>,
}

impl AltTuple {
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Validate the definition; `charts[i]` joins `vertices[i]` and
    /// `vertices[i+1]`.
    pub fn validate(&self, chart: &Arc<Chart>) -> Result<(), PantsError> {
        let k = self.vertices.len();
        if k != self.charts.len() {
            return Err(PantsError::NotACircuit("tuple arity mismatch".into()));
        }
        for i in 0..k {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % k];
            let locus = a.intersection(b);
            let id = FareyChartId::new(chart, locus)?;
            if id != self.charts[i] {
                return Err(PantsError::NotACircuit(format!(
                    "segment {i} is not in its declared Farey chart"
                )));
            }
            if self.charts[i] == self.charts[(i + 1) % k] {
                return Err(PantsError::NotACircuit(format!(
                    "consecutive charts {i} coincide"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of decomposing a circuit by the Farey charts of its edges.
#[derive(Clone, Debug)]
pub enum CircuitShape {
    SingleChart(FareyChartId),
    Alternating(AltTuple),
}

/// Decompose a circuit into maximal arcs within single Farey charts; the
/// arc endpoints form an alternating tuple unless all edges share a chart.
pub fn circuit_alternating_decomposition(
    chart: &Arc<Chart>,
    circuit: &[PantsVertex],
) -> Result<CircuitShape, PantsError> {
    let m = circuit.len();
    if m < 3 {
        return Err(PantsError::NotACircuit(format!("length {m} < 3")));
    }
    for i in 0..m {
        for j in i + 1..m {
            if circuit[i] == circuit[j] {
                return Err(PantsError::NotACircuit(format!(
                    "vertices {i} and {j} coincide"
                )));
            }
        }
    }
    let mut edge_charts = Vec::with_capacity(m);
    for i in 0..m {
        let a = &circuit[i];
        let b = &circuit[(i + 1) % m];
        match elementary_move(chart, a, b)? {
            Some(id) => edge_charts.push(id),
            None => {
                return Err(PantsError::NotACircuit(format!(
                    "vertices {i} and {} are not adjacent",
                    (i + 1) % m
                )))
            }
        }
    }
    if edge_charts.iter().all(|c| *c == edge_charts[0]) {
        return Ok(CircuitShape::SingleChart(edge_charts[0].clone()));
    }
    // Endpoints of maximal arcs: vertex i is an endpoint when the incoming
    // and outgoing edges lie in different charts.
    let mut vertices = Vec::new();
    let mut charts = Vec::new();
    for i in 0..m {
        let incoming = &edge_charts[(i + m - 1) % m];
        let outgoing = &edge_charts[i];
        if incoming != outgoing {
            vertices.push(circuit[i].clone());
            charts.push(outgoing.clone());
        }
    }
    Ok(CircuitShape::Alternating(AltTuple { vertices, charts }))
}

/// Report of the square transport check.
#[derive(Clone, Debug)]
pub struct SquareReport {
    pub shared: Multicurve,
    pub path_counts_f1: Vec<u64>,
    pub path_counts_f3: Vec<u64>,
}

/// Verify the structure of an alternating 4-tuple: all four vertices share
/// a deficiency-2 multicurve whose complement has two complexity-1 pieces,
/// the tuple is the square of the two moving pairs, and path counts of each
/// length up to `depth` between (v1,v2) in F_1 agree with those between
/// (v4,v3) in F_3.
pub fn square_transport_check(
    chart: &Arc<Chart>,
    cache: &FrameCache,
    t: &AltTuple,
    depth: u32,
) -> Result<SquareReport, PantsError> {
    if t.k() != 4 {
        return Err(PantsError::NotASquare(format!("k = {}", t.k())));
    }
    t.validate(chart)?;
    let [v1, v2, v3, v4] = [
        &t.vertices[0],
        &t.vertices[1],
        &t.vertices[2],
        &t.vertices[3],
    ];
    // Shared deficiency-2 multicurve.
    let mut shared_curves = Vec::new();
    for c in v1.curves() {
        if v2.contains(c) && v3.contains(c) && v4.contains(c) {
            shared_curves.push(c.clone());
        }
    }
    let shared = Multicurve::new(shared_curves).map_err(crate::error::PantsError::Surface)?;
    if shared.len() as i64 != chart.surface.complexity() - 2 {
        return Err(PantsError::NotASquare(format!(
            "shared multicurve has deficiency {}",
            chart.surface.complexity() - shared.len() as i64
        )));
    }
    let comp = classify_complement(chart, &shared)?;
    let nontrivial = comp.nontrivial();
    if nontrivial.len() != 2 || nontrivial.iter().any(|p| p.surface.complexity() != 1) {
        return Err(PantsError::NotASquare(format!(
            "complement of the shared multicurve is {:?}, not two complexity-1 pieces",
            comp.census()
        )));
    }
    // The square structure: v1 = Q ∪ {a1, a2}, v2 = Q ∪ {a1', a2},
    // v3 = Q ∪ {a1', a2'}, v4 = Q ∪ {a1, a2'} with the pieces separating
    // the pairs.
    let moving = |v: &PantsVertex| -> Vec<_> {
        v.curves()
            .iter()
            .filter(|c| !shared.contains(c))
            .cloned()
            .collect::<Vec<_>>()
    };
    let cells = CutCells::new(chart, &shared)?;
    for v in [v1, v2, v3, v4] {
        let mv = moving(v);
        if mv.len() != 2 {
            return Err(PantsError::NotASquare("vertex moves two curves".into()));
        }
        let p0 = cells.piece_of_curve(&shared, &mv[0])?;
        let p1 = cells.piece_of_curve(&shared, &mv[1])?;
        if p0 == p1 {
            return Err(PantsError::NotASquare(
                "both moving curves in one piece".into(),
            ));
        }
    }
    // Path counts in the two opposite Farey charts.
    let f1 = &t.charts[0];
    let f3 = &t.charts[2];
    let count = |id: &FareyChartId, a: &PantsVertex, b: &PantsVertex| -> Result<Vec<u64>, PantsError> {
        let ca = a.curves().iter().find(|c| !id.locus.contains(c)).unwrap();
        let cb = b.curves().iter().find(|c| !id.locus.contains(c)).unwrap();
        let frame = cache.frame_with_candidates(&id.locus, ca, id.unit(), &[cb.clone()])?;
        let sa = frame.slope_of(ca)?;
        let sb = frame.slope_of(cb)?;
        Ok(farey_path_counts(sa, sb, depth))
    };
    let path_counts_f1 = count(f1, v1, v2)?;
    let path_counts_f3 = count(f3, v4, v3)?;
    Ok(SquareReport {
        shared,
        path_counts_f1,
        path_counts_f3,
    })
}

/// Number of simple paths of each length 1..=maxlen between two distinct
/// slopes in the Farey graph, by exact enumeration. Supports lengths up to
/// three, which is what the square check needs; the length-3 case reduces
/// to a finite divisibility window around the endpoints.
pub fn farey_path_counts(from: (i64, i64), to: (i64, i64), maxlen: u32) -> Vec<u64> {
    assert!(maxlen <= 3, "exact Farey path counting implemented to length 3");
    let from = canonical_slope(from).unwrap();
    let to = canonical_slope(to).unwrap();
    assert_ne!(from, to);
    let sdet = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
    let mut counts = vec![0u64; maxlen as usize];
    if maxlen >= 1 && sdet(from, to).abs() == 1 {
        counts[0] = 1;
    }
    if maxlen >= 2 {
        counts[1] = common_neighbor_slopes(from, to).len() as u64;
    }
    if maxlen >= 3 {
        // Paths from -> x -> y -> to. Neighbors of `from` are x = u + k·from
        // with u a fixed neighbor; y must be a common neighbor of x and to,
        // i.e. y = (x + s·to)/det(x, to) integral for s = ±1. The integer
        // combination a1·y0 - a0·y1 is independent of k, so a nonzero value
        // bounds det(x, to) and hence k; a zero value forces y parallel to
        // `from`, excluded by simplicity.
        let a = from;
        let (g, xg, yg) = super::ext_gcd(a.0, a.1);
        debug_assert_eq!(g, 1);
        let u = (-yg, xg);
        debug_assert_eq!(sdet(a, u), 1);
        let d_u = sdet(u, to);
        let d_a = sdet(a, to);
        debug_assert_ne!(d_a, 0);
        let mut paths = std::collections::BTreeSet::new();
        for s in [1i64, -1] {
            // c = a1·(u0 + s·to0) - a0·(u1 + s·to1), constant in k.
            let c = a.1 * (u.0 + s * to.0) - a.0 * (u.1 + s * to.1);
            if c == 0 {
                continue; // y would be parallel to `from`
            }
            // d(k) = |d_u + k·d_a| must divide |c|; enumerate that window.
            let lim = c.abs();
            let b = (lim + d_u.abs()) / d_a.abs() + 1;
            for k in -b..=b {
                if (d_u + k * d_a).abs() > lim {
                    continue;
                }
                let x = (u.0 + k * a.0, u.1 + k * a.1);
                let d = sdet(x, to);
                if d == 0 {
                    continue; // x is the target slope
                }
                let num = (x.0 + s * to.0, x.1 + s * to.1);
                if num.0 % d != 0 || num.1 % d != 0 {
                    continue;
                }
                let y = (num.0 / d, num.1 / d);
                if y == (0, 0) {
                    continue;
                }
                let xc = canonical_slope(x).unwrap();
                let yc = canonical_slope(y).unwrap();
                debug_assert_eq!(sdet(y, to).abs(), 1);
                debug_assert_eq!(sdet(x, y).abs(), 1);
                // Simplicity: all four vertices distinct.
                if xc == from || xc == to || yc == from || yc == to || xc == yc {
                    continue;
                }
                paths.insert((xc, yc));
            }
        }
        counts[2] = paths.len() as u64;
    }
    counts
}

/// Classification of a length-2 geodesic per the trichotomy: the unique
/// geodesic, one of the two geodesics of a Farey fan, or one of the two
/// sides of an alternating square.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Geodesic2 {
    Unique,
    FareyPair,
    SquarePair,
}

pub fn geodesic2_classify(
    chart: &Arc<Chart>,
    cache: &FrameCache,
    u: &PantsVertex,
    mid: &PantsVertex,
    v: &PantsVertex,
) -> Result<Geodesic2, PantsError> {
    if u == v {
        return Err(PantsError::NotAPath("endpoints coincide".into()));
    }
    if elementary_move(chart, u, mid)?.is_none() || elementary_move(chart, mid, v)?.is_none() {
        return Err(PantsError::NotAPath("not a length-2 path".into()));
    }
    if elementary_move(chart, u, v)?.is_some() {
        return Err(PantsError::NotAPath("endpoints adjacent".into()));
    }
    let cn = common_neighbors(chart, cache, u, v)?;
    if !cn.contains(mid) {
        return Err(PantsError::NotAPath(
            "analytic common neighbors miss the midpoint".into(),
        ));
    }
    match cn.len() {
        1 => Ok(Geodesic2::Unique),
        2 => {
            // Two geodesics: inside one Farey chart or an alternating
            // square.
            let kappa = chart.surface.complexity();
            if u.intersection(v).len() as i64 == kappa - 1 {
                Ok(Geodesic2::FareyPair)
            } else {
                Ok(Geodesic2::SquarePair)
            }
        }
        n => Err(PantsError::NotAPath(format!(
            "found {n} common neighbors; the lemma allows at most two"
        ))),
    }
}
