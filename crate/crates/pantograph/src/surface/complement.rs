//! Cutting a chart along a multicurve: complement pieces, their
//! homeomorphism types, and membership queries for curves disjoint from the
//! cut locus.
//!
//! The triangulation is divided by the family's arcs into cells (corner
//! cells, quad cells between parallel arcs, and one central cell per
//! triangle). Gluing cells across the edge intervals between crossing
//! points and reading Euler characteristics off the resulting complexes
//! classifies every complement component exactly.

use std::collections::BTreeMap;

use crate::error::SurfaceError;
use crate::surface::arrange::Arrangement;
use crate::surface::chart::{Chart, Slot, Surface};
use crate::surface::curve::{check_normal, corner_count, trace, Curve};
use crate::surface::ops::Multicurve;

/// Union-find over cell ids.
struct Dsu {
    parent: Vec<usize>,
}
impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The cell decomposition induced by a multicurve on its chart.
pub struct CutCells<'a> {
    chart: &'a Chart,
    total: Vec<u64>,
    /// Per triangle: [n_0, n_1, n_2] corner stack sizes and the base cell id.
    stacks: Vec<[u64; 3]>,
    base: Vec<usize>,
    ncells: usize,
    piece_of: Vec<usize>,
    npieces: usize,
}

impl<'a> CutCells<'a> {
    /// Cell id of corner cell/quad `level` in stack `(t, k)`.
    fn corner_cell(&self, t: usize, k: usize, level: u64) -> usize {
        debug_assert!(level < self.stacks[t][k]);
        let mut off = self.base[t];
        for kk in 0..k {
            off += self.stacks[t][kk] as usize;
        }
        off + level as usize
    }

    fn central_cell(&self, t: usize) -> usize {
        self.base[t] + (self.stacks[t][0] + self.stacks[t][1] + self.stacks[t][2]) as usize
    }

    /// Cell adjacent to interval `r` on side `i` of triangle `t`, with `r`
    /// counted in the triangle's own direction along that side.
    fn cell_at(&self, t: usize, i: usize, r: u64) -> usize {
        let n_low = self.stacks[t][(i + 1) % 3];
        let n_high = self.stacks[t][(i + 2) % 3];
        let x = n_low + n_high;
        if n_low > 0 && r + 1 <= n_low {
            self.corner_cell(t, (i + 1) % 3, r)
        } else if n_high > 0 && r >= n_low + 1 {
            self.corner_cell(t, (i + 2) % 3, x - r)
        } else {
            self.central_cell(t)
        }
    }

    /// Cells on the two sides of arc `level` in stack `(t, k)`: (inner
    /// toward the vertex, outer).
    pub fn arc_sides_pub(&self, t: usize, k: usize, level: u64) -> (usize, usize) {
        self.arc_sides(t, k, level)
    }

    fn arc_sides(&self, t: usize, k: usize, level: u64) -> (usize, usize) {
        let inner = self.corner_cell(t, k, level);
        let outer = if level + 1 < self.stacks[t][k] {
            self.corner_cell(t, k, level + 1)
        } else {
            self.central_cell(t)
        };
        (inner, outer)
    }

    pub fn new(chart: &'a Chart, q: &Multicurve) -> Result<CutCells<'a>, SurfaceError> {
        let total = q.total_coords(chart);
        check_normal(chart, &total)?;
        let nt = chart.num_triangles();
        let mut stacks = Vec::with_capacity(nt);
        let mut base = Vec::with_capacity(nt);
        let mut ncells = 0usize;
        for t in 0..nt {
            let n = [
                corner_count(chart, &total, t, 0),
                corner_count(chart, &total, t, 1),
                corner_count(chart, &total, t, 2),
            ];
            stacks.push(n);
            base.push(ncells);
            ncells += (n[0] + n[1] + n[2]) as usize + 1;
        }
        let mut cells = CutCells {
            chart,
            total,
            stacks,
            base,
            ncells,
            piece_of: Vec::new(),
            npieces: 0,
        };
        // Glue across every edge interval.
        let mut dsu = Dsu::new(ncells);
        for e in 0..chart.num_edges() {
            let (sa, sb) = chart.slots_of_edge(e);
            let x = cells.total[e];
            for r in 0..=x {
                let ca = cells.cell_at(sa.tri, sa.side, r);
                let cb = cells.cell_at(sb.tri, sb.side, x - r);
                dsu.union(ca, cb);
            }
        }
        let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
        let mut piece_of = vec![usize::MAX; ncells];
        for c in 0..ncells {
            let r = dsu.find(c);
            let next = roots.len();
            let id = *roots.entry(r).or_insert(next);
            piece_of[c] = id;
        }
        cells.npieces = roots.len();
        cells.piece_of = piece_of;
        Ok(cells)
    }

    pub fn num_pieces(&self) -> usize {
        self.npieces
    }

    pub fn piece_of_cell(&self, cell: usize) -> usize {
        self.piece_of[cell]
    }

    /// Piece containing vertex `v`.
    pub fn piece_of_vertex(&self, v: usize) -> usize {
        for t in 0..self.chart.num_triangles() {
            for k in 0..3 {
                if self.chart.vertex_at(t, k) == v {
                    let cell = if self.stacks[t][k] > 0 {
                        self.corner_cell(t, k, 0)
                    } else {
                        self.central_cell(t)
                    };
                    return self.piece_of[cell];
                }
            }
        }
        unreachable!("vertex not in chart")
    }

    /// Piece metadata: (surface type, boundary circles, interior punctures)
    /// per piece. A piece's surface type counts each boundary circle as a
    /// puncture.
    pub fn pieces(&self, q: &Multicurve) -> Result<Vec<PieceInfo>, SurfaceError> {
        let chart = self.chart;
        let mut f2 = vec![0i64; self.npieces];
        for c in 0..self.ncells {
            f2[self.piece_of[c]] += 1;
        }
        // 1-cells: intervals plus arc sides.
        let mut e1 = vec![0i64; self.npieces];
        for e in 0..chart.num_edges() {
            let (sa, _) = chart.slots_of_edge(e);
            let x = self.total[e];
            for r in 0..=x {
                let p = self.piece_of[self.cell_at(sa.tri, sa.side, r)];
                e1[p] += 1;
            }
        }
        for t in 0..chart.num_triangles() {
            for k in 0..3 {
                for level in 0..self.stacks[t][k] {
                    let (inner, outer) = self.arc_sides(t, k, level);
                    e1[self.piece_of[inner]] += 1;
                    e1[self.piece_of[outer]] += 1;
                }
            }
        }
        // 0-cells: interior vertices plus point-side copies.
        let mut v0 = vec![0i64; self.npieces];
        let mut interior_punctures = vec![0u32; self.npieces];
        for v in 0..chart.num_vertices() {
            let p = self.piece_of_vertex(v);
            v0[p] += 1;
            interior_punctures[p] += 1;
        }
        for e in 0..chart.num_edges() {
            let (sa, _) = chart.slots_of_edge(e);
            let x = self.total[e];
            for pt in 0..x {
                // The two sides of point `pt` are the intervals pt and pt+1.
                let p1 = self.piece_of[self.cell_at(sa.tri, sa.side, pt)];
                let p2 = self.piece_of[self.cell_at(sa.tri, sa.side, pt + 1)];
                v0[p1] += 1;
                v0[p2] += 1;
            }
        }
        // Boundary circles: sides of the locus components.
        let mut circles = vec![0u32; self.npieces];
        for comp in trace(chart, &self.total) {
            let st = comp.steps[0];
            let (t, i, idx) = (st.slot.tri, st.slot.side, st.idx);
            let n_low = corner_count(chart, &self.total, t, (i + 1) % 3);
            let (k, level) = if idx < n_low {
                ((i + 1) % 3, idx)
            } else {
                let x = self.total[chart.tri_edges(t)[i]];
                ((i + 2) % 3, x - 1 - idx)
            };
            let (inner, outer) = self.arc_sides(t, k, level);
            circles[self.piece_of[inner]] += 1;
            circles[self.piece_of[outer]] += 1;
        }
        let mut out = Vec::new();
        for p in 0..self.npieces {
            let chi = v0[p] - e1[p] + f2[p];
            // chi of the compact piece with punctures filled:
            // chi = 2 - 2g - circles.
            let two_g = 2 - circles[p] as i64 - chi;
            if two_g < 0 || two_g % 2 != 0 {
                return Err(SurfaceError::Other(format!(
                    "piece {p} has inconsistent Euler count (chi={chi}, circles={})",
                    circles[p]
                )));
            }
            out.push(PieceInfo {
                surface: Surface::new(
                    (two_g / 2) as u32,
                    interior_punctures[p] + circles[p],
                ),
                boundary_circles: circles[p],
                interior_punctures: interior_punctures[p],
                piece: p,
            });
        }
        let _ = q;
        Ok(out)
    }

    /// Piece containing a curve disjoint from the locus.
    pub fn piece_of_curve(
        &self,
        q: &Multicurve,
        c: &Curve,
    ) -> Result<usize, SurfaceError> {
        if q.contains(c) {
            return Err(SurfaceError::Other(
                "curve is a member of the cut locus".into(),
            ));
        }
        let mut curves: Vec<&Curve> = q.curves().iter().collect();
        curves.push(c);
        let k = curves.len() - 1;
        let arr = Arrangement::new(self.chart, curves)?;
        if (0..k).any(|i| arr.crossings_between(i, k) != 0) {
            return Err(SurfaceError::NotDisjoint(1));
        }
        // First point of c: count locus points below it.
        let e = (0..self.chart.num_edges())
            .find(|&e| c.coords()[e] > 0)
            .expect("essential curve crosses something");
        let rank = arr.rank[k][e][0];
        let below = arr.merged[e][..rank]
            .iter()
            .filter(|(kk, _)| *kk != k)
            .count() as u64;
        let sa = self.chart.canonical_slot(e);
        Ok(self.piece_of[self.cell_at(sa.tri, sa.side, below)])
    }
}

/// One complement component.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PieceInfo {
    pub surface: Surface,
    pub boundary_circles: u32,
    pub interior_punctures: u32,
    pub piece: usize,
}

/// Classification of the complement of a multicurve: all pieces, and the
/// nontrivial ones (those that are not pairs of pants).
#[derive(Clone, Debug)]
pub struct Complement {
    pub pieces: Vec<PieceInfo>,
}

impl Complement {
    pub fn nontrivial(&self) -> Vec<&PieceInfo> {
        self.pieces
            .iter()
            .filter(|p| !p.surface.is_pair_of_pants())
            .collect()
    }

    /// Multiset of piece types with multiplicities, sorted.
    pub fn census(&self) -> Vec<(Surface, usize)> {
        let mut m: BTreeMap<Surface, usize> = BTreeMap::new();
        for p in &self.pieces {
            *m.entry(p.surface).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    pub fn is_pants_decomposition(&self) -> bool {
        self.nontrivial().is_empty()
    }
}

/// Homeomorphism types of the complement components of `q`.
pub fn classify_complement(chart: &Chart, q: &Multicurve) -> Result<Complement, SurfaceError> {
    if q.is_empty() {
        return Ok(Complement {
            pieces: vec![PieceInfo {
                surface: chart.surface,
                boundary_circles: 0,
                interior_punctures: chart.surface.punctures,
                piece: 0,
            }],
        });
    }
    let cells = CutCells::new(chart, q)?;
    Ok(Complement {
        pieces: cells.pieces(q)?,
    })
}

/// Deficiency of a multicurve: kappa(S) minus its size.
pub fn deficiency(chart: &Chart, q: &Multicurve) -> i64 {
    chart.surface.complexity() - q.len() as i64
}

/// True if `c` bounds a twice-punctured disk: some complement piece of {c}
/// is a pair of pants with exactly two interior punctures.
pub fn bounds_twice_punctured_disk(c: &Curve) -> Result<bool, SurfaceError> {
    let q = Multicurve::new(vec![c.clone()])?;
    let comp = classify_complement(&c.chart, &q)?;
    Ok(comp.pieces.iter().any(|p| {
        p.surface.is_pair_of_pants() && p.interior_punctures == 2 && p.boundary_circles == 1
    }))
}

/// Slot helper re-exported for tests.
pub fn slot(t: usize, s: usize) -> Slot {
    Slot::new(t, s)
}

/// Construct a curve in the Farey chart of `locus` crossing `moving`
/// exactly `unit` times: cut along the full pants decomposition
/// locus ∪ {moving} and search the cell complex for a closed path crossing
/// the arcs of `moving` the right number of times. The resulting edge word
/// reduces to the partner curve.
pub fn chart_partner(
    chart: &std::sync::Arc<Chart>,
    locus: &Multicurve,
    moving: &Curve,
    unit: u64,
) -> Result<Curve, SurfaceError> {
    use crate::surface::word::Word;
    let full = locus.with(moving.clone())?;
    let cells = CutCells::new(chart, &full)?;
    let total = full.total_coords(chart);

    // Arcs of `moving` inside the cut complex, found by tracing the total
    // family and matching component coordinates.
    let mut m_arcs: Vec<(usize, usize, u64)> = Vec::new();
    for comp in trace(chart, &total) {
        if comp.coords(chart) != moving.coords() {
            continue;
        }
        for st in &comp.steps {
            let (t, i, idx) = (st.slot.tri, st.slot.side, st.idx);
            let n_low = corner_count(chart, &total, t, (i + 1) % 3);
            let (k, level) = if idx < n_low {
                ((i + 1) % 3, idx)
            } else {
                let x = total[chart.tri_edges(t)[i]];
                ((i + 2) % 3, x - 1 - idx)
            };
            m_arcs.push((t, k, level));
        }
    }
    if m_arcs.is_empty() {
        return Err(SurfaceError::Other("moving curve has no arcs".into()));
    }
    m_arcs.sort_unstable();
    m_arcs.dedup();

    // Moves between cells: across an edge interval (emitting the entering
    // slot) or across an arc of `moving` (no emission).
    #[derive(Clone, Copy)]
    enum Move {
        Interval(Slot),
        CrossM,
    }
    let mut moves: Vec<Vec<(usize, Move)>> = vec![Vec::new(); cells.ncells];
    for e in 0..chart.num_edges() {
        let (sa, sb) = chart.slots_of_edge(e);
        let x = total[e];
        for r in 0..=x {
            let ca = cells.cell_at(sa.tri, sa.side, r);
            let cb = cells.cell_at(sb.tri, sb.side, x - r);
            moves[ca].push((cb, Move::Interval(sb)));
            moves[cb].push((ca, Move::Interval(sa)));
        }
    }
    for &(t, k, level) in &m_arcs {
        let (inner, outer) = cells.arc_sides(t, k, level);
        moves[inner].push((outer, Move::CrossM));
        moves[outer].push((inner, Move::CrossM));
    }

    // Interval-paths between two cells avoiding arc crossings, enumerated
    // by depth-first search with each cell visited at most twice (taut
    // partner segments never need more), capped for safety.
    let connect = |from: usize, to: usize| -> Vec<Vec<Slot>> {
        let mut paths: Vec<Vec<Slot>> = Vec::new();
        let mut visits = vec![0u8; cells.ncells];
        let mut stack: Vec<Slot> = Vec::new();
        fn dfs(
            c: usize,
            to: usize,
            moves: &[Vec<(usize, Move)>],
            visits: &mut [u8],
            stack: &mut Vec<Slot>,
            paths: &mut Vec<Vec<Slot>>,
        ) {
            if paths.len() >= 240 {
                return;
            }
            if c == to {
                paths.push(stack.clone());
                // Keep exploring: longer paths may be the right class.
            }
            if visits[c] >= 2 {
                return;
            }
            visits[c] += 1;
            for &(nc, mv) in &moves[c] {
                if let Move::Interval(s) = mv {
                    if visits[nc] >= 2 {
                        continue;
                    }
                    stack.push(s);
                    dfs(nc, to, moves, visits, stack, paths);
                    stack.pop();
                }
            }
            visits[c] -= 1;
        }
        dfs(from, to, &moves, &mut visits, &mut stack, &mut paths);
        paths.sort_by_key(|p| p.len());
        paths
    };

    // Directed crossings of `moving`: (from-cell, to-cell) per arc side.
    let mut crossings: Vec<(usize, usize)> = Vec::new();
    for &(t, k, level) in &m_arcs {
        let (inner, outer) = cells.arc_sides(t, k, level);
        crossings.push((inner, outer));
        crossings.push((outer, inner));
    }

    let validate = |slots: Vec<Slot>| -> Option<Curve> {
        if slots.is_empty() {
            return None;
        }
        let word = Word::new(slots);
        if !word.is_well_formed(chart) {
            return None;
        }
        let cand = match word.into_curve_class(chart) {
            Ok(Some(c)) => c,
            _ => return None,
        };
        if locus
            .curves()
            .iter()
            .any(|q| crate::surface::arrange::intersection_by_tracing(q, &cand) != Ok(0))
        {
            return None;
        }
        if crate::surface::arrange::intersection_by_tracing(moving, &cand) != Ok(unit) {
            return None;
        }
        Some(cand)
    };

    if unit == 1 {
        // One crossing: cross an arc, then walk back to the entry side.
        for &(a1, a2) in &crossings {
            for back in connect(a2, a1) {
                if let Some(c) = validate(back) {
                    return Ok(c);
                }
            }
        }
    } else {
        // Two crossings: cross arc A, walk, cross arc B, walk back.
        for &(a1, a2) in &crossings {
            for &(b1, b2) in &crossings {
                let mids = connect(a2, b1);
                if mids.is_empty() {
                    continue;
                }
                let backs = connect(b2, a1);
                for mid in &mids {
                    for back in &backs {
                        let mut slots = mid.clone();
                        slots.extend(back.iter().copied());
                        if let Some(c) = validate(slots) {
                            return Ok(c);
                        }
                    }
                }
            }
        }
    }
    Err(SurfaceError::Other(
        "no partner path found in the cut complex".into(),
    ))
}
