//! Closed curves as cyclic words of edge crossings, and reduction of such
//! words to normal position.
//!
//! A word stores, for each crossing, the slot through which the curve
//! *enters* the next triangle. Between consecutive steps the curve runs
//! inside one triangle. A word is reducible at `k` when the curve exits a
//! triangle through the side it entered; removing the two crossings is an
//! isotopy across a bigon with that edge. A fully reduced word has no arc
//! with both endpoints on one side, so the curve it describes is in normal
//! position and its crossing counts are the canonical coordinates.

use std::sync::Arc;

use crate::error::SurfaceError;
use crate::surface::chart::{Chart, EdgeId, Slot, VertexId};
use crate::surface::curve::Curve;

/// Cyclic word of entering slots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    pub steps: Vec<Slot>,
}

impl Word {
    pub fn new(steps: Vec<Slot>) -> Self {
        Word { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Check that consecutive steps are geometrically consistent: the slot we
    /// exit to reach step `k+1` must belong to the triangle of step `k`.
    pub fn is_well_formed(&self, chart: &Chart) -> bool {
        let m = self.steps.len();
        (0..m).all(|k| {
            let exit = chart.glued(self.steps[(k + 1) % m]);
            exit.tri == self.steps[k].tri
        })
    }

    /// Reduce the cyclic word by removing edge bigons until none remain.
    pub fn reduce(&mut self, chart: &Chart) {
        debug_assert!(self.is_well_formed(chart));
        loop {
            let m = self.steps.len();
            if m == 0 {
                return;
            }
            let mut removed = false;
            let mut k = 0;
            while k < self.steps.len() && self.steps.len() >= 2 {
                let m = self.steps.len();
                let next = (k + 1) % m;
                if self.steps[next] == chart.glued(self.steps[k]) {
                    // Exits back through the entering side: bigon.
                    if next > k {
                        self.steps.remove(next);
                        self.steps.remove(k);
                    } else {
                        self.steps.remove(k);
                        self.steps.remove(next);
                    }
                    removed = true;
                    k = k.saturating_sub(1);
                } else {
                    k += 1;
                }
            }
            if !removed {
                return;
            }
        }
    }

    /// Crossing counts per edge.
    pub fn coords(&self, chart: &Chart) -> Vec<u64> {
        let mut c = vec![0u64; chart.num_edges()];
        for s in &self.steps {
            c[chart.edge(*s)] += 1;
        }
        c
    }

    /// Reduce and interpret as a closed curve: essential curve, peripheral
    /// curve (reported as `Ok(None)`), or an error for null-homotopic input.
    pub fn into_curve_class(mut self, chart: &Arc<Chart>) -> Result<Option<Curve>, SurfaceError> {
        self.reduce(chart);
        if self.steps.is_empty() {
            return Err(SurfaceError::NullHomotopic);
        }
        let coords = self.coords(chart);
        if !Curve::essential_or_peripheral(chart, &coords)? {
            return Ok(None);
        }
        Curve::new(chart.clone(), coords).map(Some)
    }

    /// Reduce and require an essential curve.
    pub fn into_curve(self, chart: &Arc<Chart>) -> Result<Curve, SurfaceError> {
        self.into_curve_class(chart)?.ok_or(SurfaceError::Peripheral)
    }
}

/// Reverse a traversal: entering slots of the backwards travel.
pub fn reverse_word(chart: &Chart, w: &Word) -> Word {
    let mut steps: Vec<Slot> = w.steps.iter().rev().map(|&s| chart.glued(s)).collect();
    // Align so the word stays well-formed cyclically; reversal already is,
    // but keep the first step stable for readability.
    if steps.is_empty() {
        return Word::new(steps);
    }
    steps.rotate_left(0);
    Word::new(steps)
}

/// Boundary walks of a regular neighborhood of a connected union of edges
/// (together with their endpoint punctures). Returns one word per boundary
/// component.
///
/// The double of an ideal arc `e` between distinct punctures is
/// `boundary_of_edges(chart, {e})`, which is how the curves of the polygon
/// families are produced.
pub fn boundary_of_edges(chart: &Chart, edges: &[EdgeId]) -> Vec<Word> {
    let in_k = |e: EdgeId| edges.contains(&e);
    // A walk state is a corner (t, c) at a vertex of K, about to cross side
    // c+1 of t while rotating counterclockwise.
    let vertices: Vec<VertexId> = {
        let mut vs = Vec::new();
        for &e in edges {
            let (a, b) = chart.edge_ends(e);
            vs.push(a);
            vs.push(b);
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let step = |(t, c): (usize, usize)| -> ((usize, usize), Option<Slot>) {
        let side = (c + 1) % 3;
        let e = chart.tri_edges(t)[side];
        if in_k(e) {
            // Slide along the K-edge to its far corner in the same triangle.
            (((t, (c + 2) % 3)), None)
        } else {
            let g = chart.glued(Slot::new(t, side));
            // Crossing side `side` lands at the corner (g.tri, g.side+1),
            // emitting a crossing into g's triangle.
            (((g.tri, (g.side + 1) % 3)), Some(g))
        }
    };

    let mut words = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for t in 0..chart.num_triangles() {
        for c in 0..3 {
            if !vertices.contains(&chart.vertex_at(t, c)) || seen.contains(&(t, c)) {
                continue;
            }
            // Only start walks adjacent to K so each orbit is a boundary
            // component of N(K): the corner must touch a K-edge end.
            let touches = in_k(chart.tri_edges(t)[(c + 1) % 3]) || in_k(chart.tri_edges(t)[(c + 2) % 3]);
            if !touches {
                continue;
            }
            let start = (t, c);
            let mut cur = start;
            let mut steps = Vec::new();
            loop {
                seen.insert(cur);
                let (next, emit) = step(cur);
                if let Some(s) = emit {
                    steps.push(s);
                }
                cur = next;
                if cur == start {
                    break;
                }
            }
            words.push(Word::new(steps));
        }
    }
    words
}

/// The double of an ideal edge joining two distinct punctures: the boundary
/// of a regular neighborhood of the edge, as an essential curve. Fails when
/// the edge is a loop (two boundary components) or the double is not
/// essential.
pub fn edge_double(chart: &Arc<Chart>, e: EdgeId) -> Result<Curve, SurfaceError> {
    let (a, b) = chart.edge_ends(e);
    if a == b {
        return Err(SurfaceError::Other(format!(
            "edge {e} is a loop; its neighborhood boundary is not a single curve"
        )));
    }
    let mut words = boundary_of_edges(chart, &[e]);
    if words.len() != 1 {
        return Err(SurfaceError::Other(format!(
            "edge {e} neighborhood has {} boundary components",
            words.len()
        )));
    }
    words.pop().unwrap().into_curve(chart)
}
