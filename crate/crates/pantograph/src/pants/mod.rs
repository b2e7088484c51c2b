//! The pants graph: vertices are pants decompositions, edges are elementary
//! moves, and every edge lies in a unique Farey chart (the deficiency-1
//! multicurve shared by its endpoints). Balls are finite windows onto this
//! locally infinite graph, parametrized by a radius and a per-chart Farey
//! recursion depth.

pub mod analyze;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::PantsError;
use crate::surface::arrange::intersection_by_tracing;
use crate::surface::chart::{Chart, Surface};
use crate::surface::complement::{classify_complement, deficiency};
use crate::surface::curve::Curve;
use crate::surface::ops::{FareyFrame, Multicurve};

/// A pants decomposition: kappa(S) pairwise disjoint curves whose complement
/// is a union of pairs of pants.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PantsVertex {
    curves: Multicurve,
}

impl PantsVertex {
    pub fn new(chart: &Arc<Chart>, curves: Multicurve) -> Result<PantsVertex, PantsError> {
        let kappa = chart.surface.complexity();
        if kappa < 1 {
            return Err(PantsError::LowComplexity(chart.surface.to_string(), kappa));
        }
        let d = deficiency(chart, &curves);
        if d != 0 {
            return Err(PantsError::NotPants(d));
        }
        let comp = classify_complement(chart, &curves)?;
        if !comp.is_pants_decomposition() {
            return Err(PantsError::NotPants(0));
        }
        Ok(PantsVertex { curves })
    }

    pub fn curves(&self) -> &[Curve] {
        self.curves.curves()
    }

    pub fn multicurve(&self) -> &Multicurve {
        &self.curves
    }

    pub fn contains(&self, c: &Curve) -> bool {
        self.curves.contains(c)
    }

    /// The common multicurve of two vertices.
    pub fn intersection(&self, other: &PantsVertex) -> Multicurve {
        Multicurve::new(
            self.curves()
                .iter()
                .filter(|c| other.contains(c))
                .cloned()
                .collect(),
        )
        .expect("subset of a multicurve")
    }

    /// Replace one curve.
    pub fn replace(
        &self,
        chart: &Arc<Chart>,
        out: &Curve,
        with: Curve,
    ) -> Result<PantsVertex, PantsError> {
        let q = self.curves.without(out);
        PantsVertex::new(chart, q.with(with)?)
    }
}

impl std::fmt::Display for PantsVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.curves().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// The Farey chart containing an edge: a deficiency-1 multicurve plus the
/// homeomorphism type of its nontrivial complement piece.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FareyChartId {
    pub locus: Multicurve,
    pub piece: Surface,
}

impl FareyChartId {
    pub fn new(chart: &Arc<Chart>, locus: Multicurve) -> Result<FareyChartId, PantsError> {
        if deficiency(chart, &locus) != 1 {
            return Err(PantsError::NotPants(deficiency(chart, &locus) - 1));
        }
        let comp = classify_complement(chart, &locus)?;
        let nt = comp.nontrivial();
        if nt.len() != 1 || nt[0].surface.complexity() != 1 {
            return Err(PantsError::Surface(
                crate::error::SurfaceError::NotComplexityOne(format!("{:?}", comp.census())),
            ));
        }
        let piece = nt[0].surface;
        Ok(FareyChartId { locus, piece })
    }

    /// Intersection unit of an elementary move in this chart: 1 in a
    /// once-punctured torus piece, 2 in a four-punctured sphere piece.
    pub fn unit(&self) -> u64 {
        if self.piece.genus == 1 {
            1
        } else {
            2
        }
    }
}

/// Whether two pants decompositions differ by an elementary move; returns
/// the Farey chart of the edge.
pub fn elementary_move(
    chart: &Arc<Chart>,
    u: &PantsVertex,
    v: &PantsVertex,
) -> Result<Option<FareyChartId>, PantsError> {
    if u == v {
        return Ok(None);
    }
    let common = u.intersection(v);
    if common.len() as i64 != chart.surface.complexity() - 1 {
        return Ok(None);
    }
    let cu = u.curves().iter().find(|c| !common.contains(c)).unwrap();
    let cv = v.curves().iter().find(|c| !common.contains(c)).unwrap();
    let id = FareyChartId::new(chart, common)?;
    let i = intersection_by_tracing(cu, cv)?;
    Ok(if i == id.unit() { Some(id) } else { None })
}

/// Shared frame cache so repeated work in one chart agrees across calls.
pub struct FrameCache {
    chart: Arc<Chart>,
    frames: Mutex<BTreeMap<Multicurve, Arc<FareyFrame>>>,
}

impl FrameCache {
    pub fn new(chart: &Arc<Chart>) -> FrameCache {
        FrameCache {
            chart: chart.clone(),
            frames: Mutex::new(BTreeMap::new()),
        }
    }

    /// Frame of the chart of `locus`, anchored at `moving` when the chart
    /// has not been visited yet.
    pub fn frame(
        &self,
        locus: &Multicurve,
        moving: &Curve,
        unit: u64,
    ) -> Result<Arc<FareyFrame>, PantsError> {
        self.frame_with_candidates(locus, moving, unit, &[])
    }

    /// Frame lookup that may create the frame, trying `hints` as partner
    /// curves before the generic pool.
    pub fn frame_with_candidates(
        &self,
        locus: &Multicurve,
        moving: &Curve,
        unit: u64,
        hints: &[Curve],
    ) -> Result<Arc<FareyFrame>, PantsError> {
        if let Some(f) = self.frames.lock().unwrap().get(locus) {
            return Ok(f.clone());
        }
        let frame = Arc::new(FareyFrame::around_with_candidates(
            locus,
            moving,
            unit,
            &self.chart,
            hints,
        )?);
        let mut lock = self.frames.lock().unwrap();
        Ok(lock.entry(locus.clone()).or_insert(frame).clone())
    }

    /// Deterministically create the frames for a batch of (locus, movings)
    /// jobs, in sorted order, anchoring each at its least moving curve with
    /// the other movings as partner hints. Used by ball expansion so that
    /// parallel lookups only ever read.
    pub fn ensure_frames(
        &self,
        jobs: &BTreeMap<Multicurve, Vec<Curve>>,
    ) -> Result<(), PantsError> {
        for (locus, movings) in jobs {
            if self.frames.lock().unwrap().contains_key(locus) {
                continue;
            }
            let id = FareyChartId::new(&self.chart, locus.clone())?;
            let anchor = &movings[0];
            let hints: Vec<Curve> = movings[1..].to_vec();
            self.frame_with_candidates(locus, anchor, id.unit(), &hints)?;
        }
        Ok(())
    }
}

/// Extended gcd: returns (g, x, y) with a·x + b·y = g.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// The (p, k) member of the Farey neighbor family of slope `m`: u·p + k·m
/// where u is a fixed neighbor of m (so p = ±1 picks the side and k the
/// twisting depth).
fn neighbor_slope_of(m: (i64, i64), p: i64, k: i64) -> (i64, i64) {
    let (a, b) = m;
    let (g, x, y) = ext_gcd(a, b);
    debug_assert_eq!(g, 1, "slope must be primitive");
    // a·x + b·y = 1, so det(m, u) = a·(x) - b·(-y)… choose u = (-y, x):
    // det(m, u) = a·x - b·(-y) = 1.
    let u = (-y, x);
    (p * u.0 + k * m.0, p * u.1 + k * m.1)
}

/// All pants vertices obtained from `v` by replacing `moving` with a curve
/// Farey-adjacent to it, enumerated to Stern–Brocot depth `depth` from the
/// chart's seed pair: the neighbor family u, u ± m, u ± 2m, … of the moving
/// slope m, with |k| ≤ depth. Depth d adds two neighbors over depth d-1.
pub fn neighbors_in_chart(
    chart: &Arc<Chart>,
    cache: &FrameCache,
    v: &PantsVertex,
    moving: &Curve,
    depth: u32,
) -> Result<Vec<PantsVertex>, PantsError> {
    if !v.contains(moving) {
        return Err(PantsError::NotAMember);
    }
    debug_assert!(depth >= 1);
    let locus = v.multicurve().without(moving);
    let id = FareyChartId::new(chart, locus.clone())?;
    let frame = cache.frame(&locus, moving, id.unit())?;
    let m = frame.slope_of(moving)?;
    let mut out = Vec::new();
    // The Farey neighbors of m are u + k·m for a fixed neighbor u; depth d
    // admits |k| <= d, so each deeper level adds two mediants.
    for k in -(depth as i64)..=depth as i64 {
        let s = neighbor_slope_of(m, 1, k);
        let c = frame.curve_at(s)?;
        if locus.contains(&c) || c == *moving {
            continue;
        }
        out.push(v.replace(chart, moving, c)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A finite window onto the pants graph around a center vertex.
#[derive(Clone, Debug)]
pub struct Ball {
    pub chart: Arc<Chart>,
    pub center: usize,
    pub radius: u32,
    pub chart_bound: u32,
    pub vertices: Vec<PantsVertex>,
    pub dist: Vec<u32>,
    /// Edges as index pairs (u < v) with the index of their Farey chart.
    pub edges: BTreeMap<(usize, usize), usize>,
    pub charts: Vec<FareyChartId>,
    adjacency: Vec<Vec<usize>>,
}

impl Ball {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: &PantsVertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn edge_chart_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edge_chart(&self, u: usize, v: usize) -> Option<&FareyChartId> {
        self.edge_chart_index(u, v).map(|i| &self.charts[i])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Triangles (3-cliques); a triangle always lies in a single Farey
    /// chart, returned alongside.
    pub fn triangles(&self) -> Vec<([usize; 3], usize)> {
        let mut out = Vec::new();
        for (&(u, v), &cid) in &self.edges {
            for &w in &self.adjacency[u] {
                if w <= v {
                    continue;
                }
                if self.adjacent(v, w) {
                    let c1 = self.edge_chart_index(u, w);
                    let c2 = self.edge_chart_index(v, w);
                    if c1 == Some(cid) && c2 == Some(cid) {
                        out.push(([u, v, w], cid));
                    }
                }
            }
        }
        out
    }
}

/// Build a ball by breadth-first expansion of `neighbors_in_chart` over all
/// moving curves, truncated at `radius`, with the per-chart Farey window
/// `chart_bound`. A vertex cap makes resource exhaustion a first-class
/// outcome rather than a silent truncation.
pub fn build_ball(
    chart: &Arc<Chart>,
    center: PantsVertex,
    radius: u32,
    chart_bound: u32,
    vertex_cap: usize,
) -> Result<Ball, PantsError> {
    let cache = FrameCache::new(chart);
    let mut known: BTreeMap<PantsVertex, u32> = BTreeMap::new();
    known.insert(center.clone(), 0);
    let mut frontier: Vec<PantsVertex> = vec![center.clone()];
    for layer in 1..=radius {
        // Deterministic frame creation for every chart this layer touches;
        // the parallel expansion below then only reads the cache.
        let mut jobs: BTreeMap<Multicurve, Vec<Curve>> = BTreeMap::new();
        let mut sorted_frontier = frontier.clone();
        sorted_frontier.sort();
        for v in &sorted_frontier {
            for m in v.curves() {
                let entry = jobs.entry(v.multicurve().without(m)).or_default();
                if !entry.contains(m) {
                    entry.push(m.clone());
                }
            }
        }
        for movings in jobs.values_mut() {
            movings.sort();
        }
        cache.ensure_frames(&jobs)?;
        let expansions: Vec<Result<Vec<PantsVertex>, PantsError>> = frontier
            .par_iter()
            .map(|v| {
                let mut out = Vec::new();
                for m in v.curves().to_vec() {
                    out.extend(neighbors_in_chart(chart, &cache, v, &m, chart_bound)?);
                }
                Ok(out)
            })
            .collect();
        let mut next: Vec<PantsVertex> = Vec::new();
        for exp in expansions {
            for w in exp? {
                if !known.contains_key(&w) {
                    known.insert(w.clone(), layer);
                    next.push(w);
                    if known.len() > vertex_cap {
                        return Err(PantsError::BudgetExceeded {
                            visited: known.len(),
                            cap: vertex_cap,
                        });
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    finish_ball(chart, known, center, radius, chart_bound)
}

/// Assemble a ball from an explicit vertex set (used both by `build_ball`
/// and by constructions that need the induced graph on given vertices).
pub fn induced_ball(
    chart: &Arc<Chart>,
    vertices: Vec<PantsVertex>,
    center: PantsVertex,
) -> Result<Ball, PantsError> {
    let mut known: BTreeMap<PantsVertex, u32> = BTreeMap::new();
    for v in vertices {
        known.insert(v, 0);
    }
    known.insert(center.clone(), 0);
    finish_ball(chart, known, center, 0, 0)
}

fn finish_ball(
    chart: &Arc<Chart>,
    known: BTreeMap<PantsVertex, u32>,
    center: PantsVertex,
    radius: u32,
    chart_bound: u32,
) -> Result<Ball, PantsError> {
    let mut vertices: Vec<PantsVertex> = known.keys().cloned().collect();
    vertices.sort();
    let center_idx = vertices.binary_search(&center).unwrap();

    // Exact induced edge set, grouped by deficiency-1 loci.
    let mut by_locus: BTreeMap<Multicurve, Vec<usize>> = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        for c in v.curves() {
            by_locus
                .entry(v.multicurve().without(c))
                .or_default()
                .push(i);
        }
    }
    let mut charts: Vec<FareyChartId> = Vec::new();
    let mut chart_index: BTreeMap<Multicurve, usize> = BTreeMap::new();
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (locus, group) in by_locus {
        if group.len() < 2 {
            continue;
        }
        let id = FareyChartId::new(chart, locus.clone())?;
        let unit = id.unit();
        let mut new_edges = Vec::new();
        for a in 0..group.len() {
            for b in a + 1..group.len() {
                let (u, v) = (group[a].min(group[b]), group[a].max(group[b]));
                let cu = vertices[u]
                    .curves()
                    .iter()
                    .find(|c| !locus.contains(c))
                    .unwrap();
                let cv = vertices[v]
                    .curves()
                    .iter()
                    .find(|c| !locus.contains(c))
                    .unwrap();
                if intersection_by_tracing(cu, cv)? == unit {
                    new_edges.push((u, v));
                }
            }
        }
        if new_edges.is_empty() {
            continue;
        }
        let cid = *chart_index.entry(locus.clone()).or_insert_with(|| {
            charts.push(id.clone());
            charts.len() - 1
        });
        for e in new_edges {
            edges.insert(e, cid);
        }
    }
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for &(u, v) in edges.keys() {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for l in &mut adjacency {
        l.sort_unstable();
    }
    // Graph distances from the center on the final edge set.
    let mut dist = vec![u32::MAX; vertices.len()];
    dist[center_idx] = 0;
    let mut q = std::collections::VecDeque::from([center_idx]);
    while let Some(u) = q.pop_front() {
        for &w in &adjacency[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    Ok(Ball {
        chart: chart.clone(),
        center: center_idx,
        radius,
        chart_bound,
        vertices,
        dist,
        edges,
        charts,
        adjacency,
    })
}
