//! Curves in normal coordinates, and the tracing machinery that walks a
//! normal family through the triangulation.
//!
//! Normal coordinates on an ideal triangulation are a complete isotopy
//! invariant for multicurves without null-homotopic components, so equality
//! of canonical `Curve` values in one chart is isotopy of curves.

use std::sync::Arc;

use crate::error::SurfaceError;
use crate::surface::chart::{Chart, EdgeId, Slot};

/// One crossing along a traced component: the curve enters triangle
/// `slot.tri` through side `slot.side`, at point `idx` of the edge counted in
/// the slot's own direction (from the corner `side+1` end).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub slot: Slot,
    pub idx: u64,
}

/// A traced component: the cyclic sequence of crossings in one travel
/// direction.
#[derive(Clone, Debug)]
pub struct Component {
    pub steps: Vec<TraceStep>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Normal coordinates of this component alone.
    pub fn coords(&self, chart: &Chart) -> Vec<u64> {
        let mut c = vec![0u64; chart.num_edges()];
        for s in &self.steps {
            c[chart.edge(s.slot)] += 1;
        }
        c
    }
}

/// Check the parity and triangle-inequality conditions of a coordinate
/// vector. Zero vectors are allowed here; callers reject them as needed.
pub fn check_normal(chart: &Chart, coords: &[u64]) -> Result<(), SurfaceError> {
    if coords.len() != chart.num_edges() {
        return Err(SurfaceError::BadCoords(format!(
            "expected {} coordinates, got {}",
            chart.num_edges(),
            coords.len()
        )));
    }
    for t in 0..chart.num_triangles() {
        let e = chart.tri_edges(t);
        let x = [coords[e[0]], coords[e[1]], coords[e[2]]];
        let total = x[0] + x[1] + x[2];
        if total % 2 != 0 {
            return Err(SurfaceError::BadCoords(format!(
                "odd total around triangle {t}"
            )));
        }
        for k in 0..3 {
            if x[(k + 1) % 3] + x[(k + 2) % 3] < x[k] {
                return Err(SurfaceError::BadCoords(format!(
                    "triangle inequality fails at triangle {t}, corner {k}"
                )));
            }
        }
    }
    Ok(())
}

/// Number of arcs cutting corner `k` of triangle `t`.
pub fn corner_count(chart: &Chart, coords: &[u64], t: usize, k: usize) -> u64 {
    let e = chart.tri_edges(t);
    let x = [coords[e[0]], coords[e[1]], coords[e[2]]];
    (x[(k + 1) % 3] + x[(k + 2) % 3] - x[k]) / 2
}

/// Follow the arc of the family through triangle `slot.tri` entered via
/// `slot` at index `idx` (in slot direction). Returns the exit as the next
/// entering step, after crossing the exit edge.
pub fn step_through(chart: &Chart, coords: &[u64], slot: Slot, idx: u64) -> TraceStep {
    let t = slot.tri;
    let i = slot.side;
    let near = corner_count(chart, coords, t, (i + 1) % 3); // arcs hugging corner i+1
    let (exit_side, exit_idx) = if idx < near {
        // Around corner i+1 to side i+2, which ends at corner i+1.
        let side = (i + 2) % 3;
        let x = coords[chart.tri_edges(t)[side]];
        (side, x - 1 - idx)
    } else {
        // Around corner i+2 to side i+1, which starts at corner i+2.
        let x_i = coords[chart.tri_edges(t)[i]];
        let depth = x_i - 1 - idx;
        ((i + 1) % 3, depth)
    };
    let partner = chart.glued(Slot::new(t, exit_side));
    let x_exit = coords[chart.tri_edges(t)[exit_side]];
    TraceStep {
        slot: partner,
        idx: x_exit - 1 - exit_idx,
    }
}

/// Index of a step's point in the canonical edge direction.
pub fn canonical_idx(chart: &Chart, coords: &[u64], s: TraceStep) -> (EdgeId, u64) {
    let e = chart.edge(s.slot);
    if chart.is_canonical(e, s.slot) {
        (e, s.idx)
    } else {
        (e, coords[e] - 1 - s.idx)
    }
}

/// Trace a normal coordinate vector into its components. Coordinates must
/// already pass `check_normal`.
pub fn trace(chart: &Chart, coords: &[u64]) -> Vec<Component> {
    let mut visited: Vec<Vec<bool>> = (0..chart.num_edges())
        .map(|e| vec![false; coords[e] as usize])
        .collect();
    let mut components = Vec::new();
    for e0 in 0..chart.num_edges() {
        for p0 in 0..coords[e0] as usize {
            if visited[e0][p0] {
                continue;
            }
            // Start travelling into the canonical slot's triangle.
            let start = TraceStep {
                slot: chart.canonical_slot(e0),
                idx: p0 as u64,
            };
            let mut steps = Vec::new();
            let mut cur = start;
            loop {
                let (e, idx) = canonical_idx(chart, coords, cur);
                visited[e][idx as usize] = true;
                steps.push(cur);
                cur = step_through(chart, coords, cur.slot, cur.idx);
                if cur == start {
                    break;
                }
            }
            components.push(Component { steps });
        }
    }
    components
}

/// An essential simple closed curve on a chart, in canonical normal
/// coordinates.
#[derive(Clone, Debug)]
pub struct Curve {
    chart_digest: u64,
    coords: Vec<u64>,
    #[doc(hidden)]
    pub chart: Arc<Chart>,
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.chart_digest == other.chart_digest && self.coords == other.coords
    }
}
impl Eq for Curve {}

impl PartialOrd for Curve {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Curve {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.chart_digest, &self.coords).cmp(&(other.chart_digest, &other.coords))
    }
}
impl std::hash::Hash for Curve {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.chart_digest.hash(state);
        self.coords.hash(state);
    }
}

impl Curve {
    /// Validate coordinates as a single essential curve.
    pub fn new(chart: Arc<Chart>, coords: Vec<u64>) -> Result<Curve, SurfaceError> {
        check_normal(&chart, &coords)?;
        if coords.iter().all(|&x| x == 0) {
            return Err(SurfaceError::NullHomotopic);
        }
        let comps = trace(&chart, &coords);
        if comps.len() != 1 {
            return Err(SurfaceError::NotConnected(comps.len()));
        }
        for v in 0..chart.num_vertices() {
            if chart.vertex_link(v) == coords {
                return Err(SurfaceError::Peripheral);
            }
        }
        Ok(Curve {
            chart_digest: chart.digest(),
            coords,
            chart,
        })
    }

    /// Classify a component vector without constructing a `Curve`:
    /// `Ok(true)` essential, `Ok(false)` peripheral.
    pub fn essential_or_peripheral(chart: &Chart, coords: &[u64]) -> Result<bool, SurfaceError> {
        if coords.iter().all(|&x| x == 0) {
            return Err(SurfaceError::NullHomotopic);
        }
        for v in 0..chart.num_vertices() {
            if chart.vertex_link(v) == coords {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn weight(&self) -> u64 {
        self.coords.iter().sum()
    }

    pub fn same_chart(&self, other: &Curve) -> bool {
        self.chart_digest == other.chart_digest
    }

    pub fn require_same_chart(&self, other: &Curve) -> Result<(), SurfaceError> {
        if self.same_chart(other) {
            Ok(())
        } else {
            Err(SurfaceError::ChartMismatch(
                self.chart.name.clone(),
                other.chart.name.clone(),
            ))
        }
    }

    pub fn traced(&self) -> Component {
        let mut comps = trace(&self.chart, &self.coords);
        debug_assert_eq!(comps.len(), 1);
        comps.pop().unwrap()
    }
}

impl std::fmt::Display for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]@{}", self.chart.name)
    }
}
