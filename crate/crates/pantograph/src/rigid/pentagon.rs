//! The pentagon enlargement: X_{0,5} built from an alternating pentagon by
//! attaching the ten half-twist triangles and the ten outer length-2 paths,
//! and X_{0,n} as the union of Z_{0,n} with one such copy per qualifying
//! deficiency-2 multicurve.
//!
//! The recipe runs on any chart: the attached triangles' apexes are the two
//! coherent resolutions of the crossing pairs, and the far vertices pair
//! the resolutions by disjointness. On the standard pentagon chart this
//! agrees with the honest half-twist images (tested), which is what lets
//! the same recipe build every transported copy inside a larger surface.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::BuildError;
use crate::pants::PantsVertex;
use crate::rigid::gamma::{
    all_chords, chords_interleave, standard_family, Chord, PolygonFamily,
};
use crate::rigid::RigidSet;
use crate::surface::arrange::intersection_by_tracing;
use crate::surface::chart::{Chart, Surface};
use crate::surface::complement::classify_complement;
use crate::surface::curve::Curve;
use crate::surface::ops::{mediant_pair, Multicurve};

/// Five curves with the pentagon crossing pattern: c_k meets c_{k±1} twice
/// and is disjoint from c_{k±2}, all disjoint from the base multicurve.
pub struct PentagonSeed {
    pub chart: Arc<Chart>,
    pub base: Multicurve,
    pub curves: [Curve; 5],
}

impl PentagonSeed {
    pub fn validate(&self) -> Result<(), BuildError> {
        for k in 0..5usize {
            for d in 1..=2usize {
                let want = if d == 1 { 2 } else { 0 };
                let got = intersection_by_tracing(
                    &self.curves[k],
                    &self.curves[(k + d) % 5],
                )
                .map_err(BuildError::Surface)?;
                if got != want {
                    return Err(BuildError::SeedValidation(format!(
                        "pentagon curves {k},{} meet {got} times, expected {want}",
                        (k + d) % 5
                    )));
                }
            }
            for q in self.base.curves() {
                if intersection_by_tracing(&self.curves[k], q).map_err(BuildError::Surface)? != 0
                {
                    return Err(BuildError::SeedValidation(format!(
                        "pentagon curve {k} meets the base"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A built pentagon set with its recipe bookkeeping.
pub struct PentagonSet {
    pub rigid: RigidSet,
    /// Vertices in recipe order: Z ring (5), apexes (10), far middles (10).
    pub recipe_order: Vec<PantsVertex>,
    /// The Z pentagon in ring order v_0, v_2, v_4, v_1, v_3.
    pub z_ring: Vec<PantsVertex>,
}

fn vertex_of(
    chart: &Arc<Chart>,
    base: &Multicurve,
    curves: &[&Curve],
) -> Result<PantsVertex, BuildError> {
    let mut all: Vec<Curve> = base.curves().to_vec();
    for c in curves {
        all.push((*c).clone());
    }
    let q = Multicurve::new(all).map_err(BuildError::Surface)?;
    PantsVertex::new(chart, q).map_err(BuildError::Pants)
}

/// Build the enlarged pentagon X_{0,5}-copy from a seed.
pub fn build_pentagon_set(seed: &PentagonSeed, provenance: &str) -> Result<PentagonSet, BuildError> {
    seed.validate()?;
    let chart = &seed.chart;
    let c = &seed.curves;
    // Z vertices: v_k = {c_k, c_{k+2}}; ring edges [v_k, v_{k+2}].
    let mut z: Vec<PantsVertex> = Vec::new();
    for k in 0..5usize {
        z.push(vertex_of(chart, &seed.base, &[&c[k], &c[(k + 2) % 5]])?);
    }
    // Apexes: per ring edge [v_k, v_{k+2}] with shared curve c_{k+2}, the
    // moving pair is (c_k, c_{k+4}); the two resolutions are the two
    // attached triangles' tips.
    let mut recipe: Vec<PantsVertex> = z.clone();
    let mut mediants: BTreeMap<(usize, usize), (Curve, Curve)> = BTreeMap::new();
    for k in 0..5usize {
        let a = k;
        let b = (k + 4) % 5;
        let key = (a.min(b), a.max(b));
        if let std::collections::btree_map::Entry::Vacant(e) = mediants.entry(key) {
            let pair =
                mediant_pair(&c[key.0], &c[key.1]).map_err(BuildError::Surface)?;
            e.insert(pair);
        }
        let (m1, m2) = mediants[&key].clone();
        recipe.push(vertex_of(chart, &seed.base, &[&c[(k + 2) % 5], &m1])?);
        recipe.push(vertex_of(chart, &seed.base, &[&c[(k + 2) % 5], &m2])?);
    }
    // Far middles: per chord j and twist side, the images of the opposite
    // vertex {c_{j+1}, c_{j+4}}: resolutions of (c_j, c_{j+1}) paired with
    // resolutions of (c_j, c_{j+4}) by disjointness.
    for j in 0..5usize {
        let p = (j + 1) % 5;
        let q = (j + 4) % 5;
        let kp = (j.min(p), j.max(p));
        let kq = (j.min(q), j.max(q));
        let (p1, p2) = mediants[&kp].clone();
        let (q1, q2) = mediants[&kq].clone();
        let mut pairs = Vec::new();
        for a in [&p1, &p2] {
            for b in [&q1, &q2] {
                if intersection_by_tracing(a, b).map_err(BuildError::Surface)? == 0 {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
        if pairs.len() != 2 {
            return Err(BuildError::SeedValidation(format!(
                "twist {j}: {} disjoint resolution pairings, expected 2",
                pairs.len()
            )));
        }
        for (a, b) in pairs {
            recipe.push(vertex_of(chart, &seed.base, &[&a, &b])?);
        }
    }
    let mut all = recipe.clone();
    all.sort();
    all.dedup();
    if all.len() != 25 {
        return Err(BuildError::SeedValidation(format!(
            "pentagon set has {} distinct vertices, expected 25",
            all.len()
        )));
    }
    let mut rigid = RigidSet::induced(chart, Surface::new(0, 5), all, provenance)?;
    rigid.name_vertices("Z", &z)?;
    rigid.name_vertices("thick", &recipe[..15].to_vec())?;
    rigid.name_vertices("middles", &recipe[15..].to_vec())?;
    // Structural counts: the thick pentagon carries ten triangles and the
    // ten middles hang on twenty new edges.
    let thick_tris = rigid
        .triangles()
        .iter()
        .filter(|(t, _)| {
            t.iter().all(|&v| {
                let pv = &rigid.vertices[v];
                recipe[..15].contains(pv)
            })
        })
        .count();
    if thick_tris != 10 {
        return Err(BuildError::SeedValidation(format!(
            "thick pentagon has {thick_tris} triangles, expected 10"
        )));
    }
    Ok(PentagonSet {
        rigid,
        recipe_order: recipe,
        z_ring: vec![
            z[0].clone(),
            z[2].clone(),
            z[4].clone(),
            z[1].clone(),
            z[3].clone(),
        ],
    })
}

/// X_{0,5} on the standard pentagon chart.
pub fn build_x05() -> Result<(PolygonFamily, PentagonSet), BuildError> {
    let chart = crate::surface::charts::sphere_polygon(5);
    let fam = standard_family(&chart, 5)?;
    let seed = pentagon_seed_from_family(&fam, &Multicurve::empty(), &pentagon_chords())?;
    let set = build_pentagon_set(&seed, "X_0_5")?;
    Ok((fam, set))
}

/// The pentagon chords of the 5-gon in crossing-ring order.
pub fn pentagon_chords() -> [Chord; 5] {
    [(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)]
}

/// Label five family chords into the pentagon ring order: c_k crosses
/// c_{k±1}.
pub fn label_pentagon(n: u32, chords: &[Chord]) -> Result<[Chord; 5], BuildError> {
    if chords.len() != 5 {
        return Err(BuildError::SeedValidation(format!(
            "pentagon needs 5 chords, got {}",
            chords.len()
        )));
    }
    let crossing: Vec<Vec<usize>> = (0..5)
        .map(|i| {
            (0..5)
                .filter(|&j| j != i && chords_interleave(n, chords[i], chords[j]))
                .collect()
        })
        .collect();
    if crossing.iter().any(|c| c.len() != 2) {
        return Err(BuildError::SeedValidation(
            "chords do not form a pentagon crossing ring".into(),
        ));
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    for _ in 0..4 {
        let cur = *order.last().unwrap();
        let next = *crossing[cur]
            .iter()
            .find(|&&x| x != prev)
            .expect("ring continues");
        prev = cur;
        order.push(next);
    }
    Ok([
        chords[order[0]],
        chords[order[1]],
        chords[order[2]],
        chords[order[3]],
        chords[order[4]],
    ])
}

fn pentagon_seed_from_family(
    fam: &PolygonFamily,
    extra_base: &Multicurve,
    ring: &[Chord; 5],
) -> Result<PentagonSeed, BuildError> {
    let base = fam
        .core
        .union(extra_base)
        .map_err(BuildError::Surface)?;
    Ok(PentagonSeed {
        chart: fam.chart.clone(),
        base,
        curves: [
            fam.curves[&ring[0]].clone(),
            fam.curves[&ring[1]].clone(),
            fam.curves[&ring[2]].clone(),
            fam.curves[&ring[3]].clone(),
            fam.curves[&ring[4]].clone(),
        ],
    })
}

/// The qualifying deficiency-2 sub-multicurves: chord subsets of size n-5
/// whose complement (with the core) has a five-punctured sphere piece; the
/// remaining disjoint chords are its pentagon.
pub fn qualifying_w(fam: &PolygonFamily) -> Result<Vec<(Vec<Chord>, [Chord; 5])>, BuildError> {
    let n = fam.n;
    let size = (n - 5) as usize;
    let chords = all_chords(n);
    let mut out = Vec::new();
    let mut pick: Vec<Chord> = Vec::new();
    fn rec(
        fam: &PolygonFamily,
        chords: &[Chord],
        from: usize,
        size: usize,
        pick: &mut Vec<Chord>,
        out: &mut Vec<(Vec<Chord>, [Chord; 5])>,
    ) -> Result<(), BuildError> {
        if pick.len() == size {
            // Complement must have an S_{0,5} piece.
            let mut curves: Vec<Curve> = fam.core.curves().to_vec();
            for c in pick.iter() {
                curves.push(fam.curves[c].clone());
            }
            let w = Multicurve::new(curves).map_err(BuildError::Surface)?;
            let comp = classify_complement(&fam.chart, &w).map_err(BuildError::Surface)?;
            let has5 = comp
                .pieces
                .iter()
                .any(|p| p.surface == Surface::new(0, 5));
            if has5 {
                let pentagon: Vec<Chord> = fam
                    .curves
                    .keys()
                    .filter(|&&c| {
                        !pick.contains(&c)
                            && pick.iter().all(|&wch| !chords_interleave(fam.n, wch, c))
                    })
                    .copied()
                    .collect();
                if pentagon.len() != 5 {
                    return Err(BuildError::SeedValidation(format!(
                        "piece pentagon has {} chords",
                        pentagon.len()
                    )));
                }
                let ring = label_pentagon(fam.n, &pentagon)?;
                out.push((pick.clone(), ring));
            }
            return Ok(());
        }
        for k in from..chords.len() {
            let c = chords[k];
            if pick.iter().all(|&x| !chords_interleave(fam.n, x, c)) {
                pick.push(c);
                rec(fam, chords, k + 1, size, pick, out)?;
                pick.pop();
            }
        }
        Ok(())
    }
    rec(fam, &chords, 0, size, &mut pick, &mut out)?;
    Ok(out)
}

/// X_{0,n} over a realized polygon family: Z plus one pentagon copy per
/// qualifying deficiency-2 multicurve. Also returns the copies for
/// structural checks.
pub fn build_x0_family(
    fam: &PolygonFamily,
    models: Surface,
    provenance: &str,
) -> Result<(RigidSet, Vec<PentagonSet>), BuildError> {
    let z = fam.z_graph(models, &format!("{provenance}:Z"))?;
    let mut copies = Vec::new();
    let mut vertices: Vec<PantsVertex> = z.vertices.clone();
    if fam.n == 5 {
        let seed = pentagon_seed_from_family(fam, &Multicurve::empty(), &label_pentagon(
            5,
            &all_chords(5),
        )?)?;
        let set = build_pentagon_set(&seed, provenance)?;
        vertices.extend(set.rigid.vertices.iter().cloned());
        copies.push(set);
    } else {
        for (w, ring) in qualifying_w(fam)? {
            let wcurves: Vec<Curve> = w.iter().map(|c| fam.curves[c].clone()).collect();
            let extra = Multicurve::new(wcurves).map_err(BuildError::Surface)?;
            let seed = pentagon_seed_from_family(fam, &extra, &ring)?;
            let set = build_pentagon_set(&seed, &format!("{provenance}:W{w:?}"))?;
            // Every vertex of the copy contains the multicurve W.
            for v in &set.rigid.vertices {
                for q in extra.curves() {
                    if !v.contains(q) {
                        return Err(BuildError::SeedValidation(
                            "pentagon copy vertex misses its W".into(),
                        ));
                    }
                }
            }
            vertices.extend(set.rigid.vertices.iter().cloned());
            copies.push(set);
        }
    }
    vertices.sort();
    vertices.dedup();
    let mut rigid = RigidSet::induced(&fam.chart, models, vertices, provenance)?;
    rigid.name_vertices("Z", &z.vertices)?;
    Ok((rigid, copies))
}

/// X_{0,n} on the standard polygon chart.
pub fn build_x0n(n: u32) -> Result<(PolygonFamily, RigidSet, Vec<PentagonSet>), BuildError> {
    if n < 5 {
        return Err(BuildError::Unsupported(format!("X_0n needs n >= 5, got {n}")));
    }
    let chart = crate::surface::charts::sphere_polygon(n);
    let fam = standard_family(&chart, n)?;
    let (x, copies) = build_x0_family(&fam, Surface::new(0, n), &format!("X_0_{n}"))?;
    Ok((fam, x, copies))
}
