//! The polygon curve family: doubles of arcs joining non-adjacent sides of
//! the n-gon, their chord combinatorics, and the subgraph Z_{0,n} spanned by
//! the pants decompositions drawn from the family.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::BuildError;
use crate::pants::PantsVertex;
use crate::rigid::RigidSet;
use crate::surface::chart::{Chart, Surface};
use crate::surface::charts::polygon_side_edge;
use crate::surface::curve::Curve;
use crate::surface::ops::Multicurve;

/// A chord joining two non-adjacent sides of the polygon, as side indices
/// (i, j) with i < j.
pub type Chord = (u32, u32);

/// All chords of the n-gon: n(n-3)/2 of them.
pub fn all_chords(n: u32) -> Vec<Chord> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

/// Whether two chords interleave (their doubles then meet in two points).
/// Chords sharing a side never cross.
pub fn chords_interleave(n: u32, a: Chord, b: Chord) -> bool {
    let _ = n;
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return false;
    }
    let inside = |x: u32| a.0 < x && x < a.1;
    inside(b.0) != inside(b.1)
}

/// Expected geometric intersection number of two chord doubles: 2 per
/// interleaved pair.
pub fn chord_intersection(n: u32, a: Chord, b: Chord) -> u64 {
    if chords_interleave(n, a, b) {
        2
    } else {
        0
    }
}

/// Normal coordinates of the double of the chord (i, j) on the standard
/// polygon chart: one crossing on each of the two sides, one on each (front
/// and back) fan diagonal separating them.
pub fn gamma_curve(chart: &Arc<Chart>, n: u32, chord: Chord) -> Result<Curve, BuildError> {
    let (i, j) = chord;
    let mut coords = vec![0u64; chart.num_edges()];
    coords[polygon_side_edge(chart, n, i)] = 1;
    coords[polygon_side_edge(chart, n, j)] = 1;
    // Front diagonal d_k = (corner 0, corner k), k = 2..n-2, is crossed iff
    // k lies in the enclosed corner block i+1..j (corner 0 never does).
    let f = |jj: usize| jj - 1;
    let b = |jj: usize| (n as usize - 3) + jj;
    for k in 2..=n as usize - 2 {
        if (i as usize + 1..=j as usize).contains(&k) {
            let front = chart.edge(crate::surface::chart::Slot::new(f(k), 2));
            let back = chart.edge(crate::surface::chart::Slot::new(b(k), 1));
            coords[front] = 1;
            coords[back] = 1;
        }
    }
    Curve::new(chart.clone(), coords).map_err(BuildError::Surface)
}

/// The full polygon family on the standard chart.
pub fn gamma_family(chart: &Arc<Chart>, n: u32) -> Result<BTreeMap<Chord, Curve>, BuildError> {
    let mut out = BTreeMap::new();
    for c in all_chords(n) {
        out.insert(c, gamma_curve(chart, n, c)?);
    }
    Ok(out)
}

/// All triangulations of the n-gon by chords (maximal disjoint chord sets).
pub fn polygon_triangulations(n: u32) -> Vec<BTreeSet<Chord>> {
    let chords = all_chords(n);
    let mut out = Vec::new();
    let mut cur: Vec<Chord> = Vec::new();
    fn rec(
        n: u32,
        chords: &[Chord],
        from: usize,
        cur: &mut Vec<Chord>,
        out: &mut Vec<BTreeSet<Chord>>,
    ) {
        if cur.len() as u32 == n - 3 {
            out.push(cur.iter().copied().collect());
            return;
        }
        for k in from..chords.len() {
            let c = chords[k];
            if cur.iter().all(|&x| !chords_interleave(n, x, c)) {
                cur.push(c);
                rec(n, chords, k + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &chords, 0, &mut cur, &mut out);
    out
}

/// The unique chord that replaces `x` when flipping it in triangulation
/// `t`: crosses `x` and nothing else in `t`.
pub fn flip_partner_chord(n: u32, t: &BTreeSet<Chord>, x: Chord) -> Option<Chord> {
    debug_assert!(t.contains(&x));
    let mut found = None;
    for c in all_chords(n) {
        if !chords_interleave(n, c, x) {
            continue;
        }
        if t.iter().all(|&y| y == x || !chords_interleave(n, c, y)) {
            if found.is_some() {
                return None; // not a triangulation
            }
            found = Some(c);
        }
    }
    found
}

/// A realized polygon family: curves indexed by chords, all living on one
/// chart, together with an optional core multicurve adjoined to every
/// vertex (the cut system when the polygon is a cut piece of a bigger
/// surface).
#[derive(Clone)]
pub struct PolygonFamily {
    pub chart: Arc<Chart>,
    pub n: u32,
    pub core: Multicurve,
    pub curves: BTreeMap<Chord, Curve>,
}

impl PolygonFamily {
    /// Validate the chord pattern: i = 2 on interleaved pairs, 0 otherwise,
    /// and all members disjoint from the core.
    pub fn validate(&self) -> Result<(), BuildError> {
        use crate::surface::arrange::intersection_by_tracing;
        let chords: Vec<Chord> = self.curves.keys().copied().collect();
        if chords.len() as u32 != self.n * (self.n - 3) / 2 {
            return Err(BuildError::SeedValidation(format!(
                "family has {} chords, expected {}",
                chords.len(),
                self.n * (self.n - 3) / 2
            )));
        }
        for (k, &a) in chords.iter().enumerate() {
            for &b in &chords[k + 1..] {
                let want = chord_intersection(self.n, a, b);
                let got = intersection_by_tracing(&self.curves[&a], &self.curves[&b])
                    .map_err(BuildError::Surface)?;
                if got != want {
                    return Err(BuildError::SeedValidation(format!(
                        "chords {a:?},{b:?} meet {got} times, expected {want}"
                    )));
                }
            }
            for q in self.core.curves() {
                let got = intersection_by_tracing(&self.curves[&a], q)
                    .map_err(BuildError::Surface)?;
                if got != 0 {
                    return Err(BuildError::SeedValidation(format!(
                        "chord {a:?} meets the core"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The pants vertex of a triangulation (core adjoined).
    pub fn vertex(&self, t: &BTreeSet<Chord>) -> Result<PantsVertex, BuildError> {
        let mut curves: Vec<Curve> = self.core.curves().to_vec();
        for c in t {
            curves.push(self.curves[c].clone());
        }
        let q = Multicurve::new(curves).map_err(BuildError::Surface)?;
        PantsVertex::new(&self.chart, q).map_err(BuildError::Pants)
    }

    /// Z_{0,n}: the subgraph spanned by the triangulation vertices.
    pub fn z_graph(&self, models: Surface, provenance: &str) -> Result<RigidSet, BuildError> {
        let mut vertices = Vec::new();
        for t in polygon_triangulations(self.n) {
            vertices.push(self.vertex(&t)?);
        }
        RigidSet::induced(&self.chart, models, vertices, provenance)
    }
}

/// The standard family on the polygon chart of S_{0,n}.
pub fn standard_family(chart: &Arc<Chart>, n: u32) -> Result<PolygonFamily, BuildError> {
    let fam = PolygonFamily {
        chart: chart.clone(),
        n,
        core: Multicurve::empty(),
        curves: gamma_family(chart, n)?,
    };
    fam.validate()?;
    Ok(fam)
}

/// Z_{0,n} on the standard polygon chart.
pub fn build_z0n(n: u32) -> Result<(PolygonFamily, RigidSet), BuildError> {
    if n < 5 {
        return Err(BuildError::Unsupported(format!(
            "Z_0n needs n >= 5, got {n}"
        )));
    }
    let chart = crate::surface::charts::sphere_polygon(n);
    let fam = standard_family(&chart, n)?;
    let z = fam.z_graph(Surface::new(0, n), &format!("Z_0_{n}"))?;
    Ok((fam, z))
}
