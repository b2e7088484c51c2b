//! Ideal triangulations of punctured surfaces.
//!
//! A chart is a combinatorial ideal triangulation: a set of oriented
//! triangles together with a side gluing. All curve computations are done in
//! normal coordinates relative to a chart, so everything downstream keys off
//! the conventions fixed here:
//!
//! * triangle corners are numbered 0,1,2 counterclockwise;
//! * side `i` is opposite corner `i` and runs from corner `i+1` to corner
//!   `i+2` (the ccw boundary direction);
//! * gluing two sides reverses direction (the surface is oriented).

use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::SurfaceError;

/// Homeomorphism type of a finite-type orientable surface. Holes are treated
/// uniformly as punctures; pieces produced by cutting record their boundary
/// circles here as punctures too.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub punctures: u32,
}

impl Surface {
    pub fn new(genus: u32, punctures: u32) -> Self {
        Surface { genus, punctures }
    }

    /// Complexity kappa = 3g + n - 3, the size of a pants decomposition.
    pub fn complexity(&self) -> i64 {
        3 * self.genus as i64 + self.punctures as i64 - 3
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    pub fn is_pair_of_pants(&self) -> bool {
        self.genus == 0 && self.punctures == 3
    }

    /// Number of triangles in any ideal triangulation.
    pub fn triangle_count(&self) -> usize {
        (2 * (2 * self.genus as i64 - 2 + self.punctures as i64)) as usize
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

/// A side slot of a triangle: triangle index plus side index 0..3.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Slot {
    pub tri: usize,
    pub side: usize,
}

impl Slot {
    pub fn new(tri: usize, side: usize) -> Self {
        debug_assert!(side < 3);
        Slot { tri, side }
    }
}

/// Edge index into `Chart::edges`.
pub type EdgeId = usize;
/// Vertex (puncture) index into the chart's corner classes.
pub type VertexId = usize;

/// A combinatorial ideal triangulation of an oriented punctured surface.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chart {
    pub name: String,
    pub surface: Surface,
    /// `glue[t][i]` is the slot glued to side `i` of triangle `t`.
    glue: Vec<[Slot; 3]>,
    /// Edge id of each slot.
    edge_of: Vec<[EdgeId; 3]>,
    /// Canonical slot pair per edge; `edges[e].0` is the canonical slot whose
    /// direction orients point indices on the edge.
    edges: Vec<(Slot, Slot)>,
    /// Vertex class of each corner `(t, k)`.
    vertex_of: Vec<[VertexId; 3]>,
    /// Endpoints of each edge: `(start, end)` in the canonical slot direction.
    edge_ends: Vec<(VertexId, VertexId)>,
    num_vertices: usize,
    digest: u64,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.digest == other.digest && self.glue == other.glue && self.name == other.name
    }
}
impl Eq for Chart {}

impl Chart {
    /// Build a chart from a gluing table. `glue[t][i]` names the partner of
    /// side `i` of triangle `t`. Fails unless the table is a fixed-point-free
    /// involution describing a connected triangulation of `surface`.
    pub fn new(name: &str, surface: Surface, glue: Vec<[Slot; 3]>) -> Result<Chart, SurfaceError> {
        let ntri = glue.len();
        if ntri == 0 || ntri % 2 != 0 {
            return Err(SurfaceError::BadChart(format!(
                "{name}: triangle count {ntri} is not a positive even number"
            )));
        }
        for (t, sides) in glue.iter().enumerate() {
            for (i, s) in sides.iter().enumerate() {
                if s.tri >= ntri || s.side >= 3 {
                    return Err(SurfaceError::BadChart(format!(
                        "{name}: slot ({t},{i}) glued out of range"
                    )));
                }
                if (s.tri, s.side) == (t, i) {
                    return Err(SurfaceError::BadChart(format!(
                        "{name}: slot ({t},{i}) glued to itself"
                    )));
                }
                let back = glue[s.tri][s.side];
                if (back.tri, back.side) != (t, i) {
                    return Err(SurfaceError::BadChart(format!(
                        "{name}: gluing is not an involution at ({t},{i})"
                    )));
                }
            }
        }

        // Edge classes.
        let mut edge_of = vec![[usize::MAX; 3]; ntri];
        let mut edges = Vec::new();
        for t in 0..ntri {
            for i in 0..3 {
                if edge_of[t][i] != usize::MAX {
                    continue;
                }
                let a = Slot::new(t, i);
                let b = glue[t][i];
                let id = edges.len();
                edge_of[a.tri][a.side] = id;
                edge_of[b.tri][b.side] = id;
                edges.push((a.min(b), a.max(b)));
            }
        }

        // Vertex classes: walk corners counterclockwise around each puncture.
        // From corner (t,k), crossing side k+1 lands at corner (t', i'+1)
        // where (t',i') is the glued slot.
        let mut vertex_of = vec![[usize::MAX; 3]; ntri];
        let mut num_vertices = 0;
        for t in 0..ntri {
            for k in 0..3 {
                if vertex_of[t][k] != usize::MAX {
                    continue;
                }
                let v = num_vertices;
                num_vertices += 1;
                let (mut ct, mut ck) = (t, k);
                loop {
                    vertex_of[ct][ck] = v;
                    let s = glue[ct][(ck + 1) % 3];
                    let (nt, nk) = (s.tri, (s.side + 1) % 3);
                    if vertex_of[nt][nk] == v {
                        break;
                    }
                    debug_assert_eq!(vertex_of[nt][nk], usize::MAX);
                    (ct, ck) = (nt, nk);
                }
            }
        }

        // Connectivity.
        let mut seen = vec![false; ntri];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for i in 0..3 {
                let s = glue[t][i];
                if !seen[s.tri] {
                    seen[s.tri] = true;
                    stack.push(s.tri);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SurfaceError::BadChart(format!("{name}: not connected")));
        }

        // Euler count against the claimed surface.
        let nedges = edges.len() as i64;
        let chi = num_vertices as i64 - nedges + ntri as i64;
        if chi != 2 - 2 * surface.genus as i64 || num_vertices != surface.punctures as usize {
            return Err(SurfaceError::BadChart(format!(
                "{name}: triangulation has {num_vertices} vertices and chi={chi}, \
                 which is not {surface}"
            )));
        }

        let edge_ends: Vec<(VertexId, VertexId)> = edges
            .iter()
            .map(|&(a, _)| {
                let start = vertex_of[a.tri][(a.side + 1) % 3];
                let end = vertex_of[a.tri][(a.side + 2) % 3];
                (start, end)
            })
            .collect();

        let mut h = DefaultHasher::new();
        name.hash(&mut h);
        surface.hash(&mut h);
        glue.hash(&mut h);
        let digest = h.finish();

        Ok(Chart {
            name: name.to_string(),
            surface,
            glue,
            edge_of,
            edges,
            vertex_of,
            edge_ends,
            num_vertices,
            digest,
        })
    }

    pub fn digest(&self) -> u64 {
        self.digest
    }

    pub fn num_triangles(&self) -> usize {
        self.glue.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn glued(&self, s: Slot) -> Slot {
        self.glue[s.tri][s.side]
    }

    pub fn edge(&self, s: Slot) -> EdgeId {
        self.edge_of[s.tri][s.side]
    }

    /// The canonical slot of an edge; point indices run in this slot's
    /// direction.
    pub fn canonical_slot(&self, e: EdgeId) -> Slot {
        self.edges[e].0
    }

    pub fn other_slot(&self, e: EdgeId) -> Slot {
        self.edges[e].1
    }

    pub fn slots_of_edge(&self, e: EdgeId) -> (Slot, Slot) {
        self.edges[e]
    }

    /// Vertex at corner `k` of triangle `t`.
    pub fn vertex_at(&self, t: usize, k: usize) -> VertexId {
        self.vertex_of[t][k]
    }

    /// Endpoints `(start, end)` of an edge in canonical direction. A loop
    /// edge has `start == end`.
    pub fn edge_ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edge_ends[e]
    }

    /// Edge ids of the three sides of triangle `t`.
    pub fn tri_edges(&self, t: usize) -> [EdgeId; 3] {
        self.edge_of[t]
    }

    /// True if the point ordering of edge `e` as seen from slot `s` agrees
    /// with the canonical ordering.
    pub fn is_canonical(&self, e: EdgeId, s: Slot) -> bool {
        self.edges[e].0 == s
    }

    /// Number of ends of edge `e` incident to vertex `v` (0, 1 or 2).
    pub fn ends_at(&self, e: EdgeId, v: VertexId) -> u64 {
        let (a, b) = self.edge_ends[e];
        (a == v) as u64 + (b == v) as u64
    }

    /// Normal coordinates of the link of vertex `v` (the peripheral curve
    /// around the puncture).
    pub fn vertex_link(&self, v: VertexId) -> Vec<u64> {
        (0..self.num_edges()).map(|e| self.ends_at(e, v)).collect()
    }
}
