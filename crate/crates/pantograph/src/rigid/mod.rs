//! The finite rigid subgraphs: the polygon families Gamma_n and Z_{0,n},
//! the pentagon enlargements X_{0,5} and X_{0,n}, the hexagon sets Z_{1,2}
//! and X_{1,2}, the genus-two atlas set X_{2,0}, and the general glued
//! X_{g,n}.

pub mod gamma;
pub mod hexagon;
pub mod pentagon;
pub mod x20;
pub mod xgn;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::BuildError;
use crate::pants::{induced_ball, FareyChartId, PantsVertex};
use crate::surface::chart::{Chart, Surface};

/// A named sub-object of a rigid set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinguished {
    Vertex(usize),
    Vertices(Vec<usize>),
    Edge(usize, usize),
    Edges(Vec<(usize, usize)>),
}

/// A finite labeled subgraph of a pants graph: vertices carry pants
/// decompositions, edges carry their Farey charts, and the structure
/// records named sub-objects and its construction provenance.
#[derive(Clone, Debug)]
pub struct RigidSet {
    pub chart: Arc<Chart>,
    /// The surface whose rigid set this is (the source of the embeddings
    /// the set certifies, not the ambient chart surface).
    pub models: Surface,
    pub vertices: Vec<PantsVertex>,
    pub edges: BTreeMap<(usize, usize), usize>,
    pub charts: Vec<FareyChartId>,
    pub adjacency: Vec<Vec<usize>>,
    pub distinguished: BTreeMap<String, Distinguished>,
    pub provenance: String,
}

impl RigidSet {
    /// Build a rigid set from explicit vertices and edges; every edge is
    /// validated as an elementary move and labeled with its Farey chart.
    /// The constructions are unions of subgraphs, not induced subgraphs, so
    /// the edge list is part of the data.
    pub fn from_parts(
        chart: &Arc<Chart>,
        models: Surface,
        vertices: Vec<PantsVertex>,
        edge_list: &[(PantsVertex, PantsVertex)],
        provenance: &str,
    ) -> Result<RigidSet, BuildError> {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(BuildError::SeedValidation("empty vertex set".into()));
        }
        let mut charts: Vec<FareyChartId> = Vec::new();
        let mut chart_index: BTreeMap<FareyChartId, usize> = BTreeMap::new();
        let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (a, b) in edge_list {
            let u = vertices
                .binary_search(a)
                .map_err(|_| BuildError::SeedValidation("edge endpoint missing".into()))?;
            let v = vertices
                .binary_search(b)
                .map_err(|_| BuildError::SeedValidation("edge endpoint missing".into()))?;
            let id = crate::pants::elementary_move(chart, a, b)?.ok_or_else(|| {
                BuildError::SeedValidation(format!("not an elementary move: {a} -- {b}"))
            })?;
            let cid = *chart_index.entry(id.clone()).or_insert_with(|| {
                charts.push(id.clone());
                charts.len() - 1
            });
            edges.insert((u.min(v), u.max(v)), cid);
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(u, v) in edges.keys() {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for l in &mut adjacency {
            l.sort_unstable();
            l.dedup();
        }
        Ok(RigidSet {
            chart: chart.clone(),
            models,
            vertices,
            edges,
            charts,
            adjacency,
            distinguished: BTreeMap::new(),
            provenance: provenance.to_string(),
        })
    }

    /// Build the induced subgraph of the pants graph on a vertex set; every
    /// edge is re-verified as an elementary move.
    pub fn induced(
        chart: &Arc<Chart>,
        models: Surface,
        vertices: Vec<PantsVertex>,
        provenance: &str,
    ) -> Result<RigidSet, BuildError> {
        let center = vertices
            .first()
            .ok_or_else(|| BuildError::SeedValidation("empty vertex set".into()))?
            .clone();
        let ball = induced_ball(chart, vertices, center)?;
        let mut adjacency = vec![Vec::new(); ball.vertices.len()];
        for &(u, v) in ball.edges.keys() {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for l in &mut adjacency {
            l.sort_unstable();
        }
        Ok(RigidSet {
            chart: chart.clone(),
            models,
            vertices: ball.vertices,
            edges: ball.edges,
            charts: ball.charts,
            adjacency,
            distinguished: BTreeMap::new(),
            provenance: provenance.to_string(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, v: &PantsVertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn edge_chart(&self, u: usize, v: usize) -> Option<&FareyChartId> {
        self.edges
            .get(&(u.min(v), u.max(v)))
            .map(|&i| &self.charts[i])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// All triangles together with their chart index.
    pub fn triangles(&self) -> Vec<([usize; 3], usize)> {
        let mut out = Vec::new();
        for (&(u, v), &cid) in &self.edges {
            for &w in &self.adjacency[u] {
                if w <= v || !self.adjacent(v, w) {
                    continue;
                }
                let c1 = self.edges.get(&(u.min(w), u.max(w)));
                let c2 = self.edges.get(&(v.min(w), v.max(w)));
                if c1 == Some(&cid) && c2 == Some(&cid) {
                    out.push(([u, v, w], cid));
                }
            }
        }
        out
    }

    /// Distinct Farey charts that actually carry edges.
    pub fn used_charts(&self) -> BTreeSet<usize> {
        self.edges.values().copied().collect()
    }

    pub fn name_vertex(&mut self, name: &str, v: &PantsVertex) -> Result<(), BuildError> {
        let i = self
            .index_of(v)
            .ok_or_else(|| BuildError::SeedValidation(format!("vertex {name} missing")))?;
        self.distinguished
            .insert(name.to_string(), Distinguished::Vertex(i));
        Ok(())
    }

    pub fn name_vertices(&mut self, name: &str, vs: &[PantsVertex]) -> Result<(), BuildError> {
        let mut ids = Vec::new();
        for v in vs {
            ids.push(self.index_of(v).ok_or_else(|| {
                BuildError::SeedValidation(format!("vertex set {name} has a missing member"))
            })?);
        }
        self.distinguished
            .insert(name.to_string(), Distinguished::Vertices(ids));
        Ok(())
    }

    pub fn named_vertex(&self, name: &str) -> Option<usize> {
        match self.distinguished.get(name) {
            Some(Distinguished::Vertex(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn named_vertices(&self, name: &str) -> Option<&[usize]> {
        match self.distinguished.get(name) {
            Some(Distinguished::Vertices(v)) => Some(v),
            _ => None,
        }
    }

    /// The abstract graph: sorted adjacency lists, labels forgotten.
    pub fn abstract_graph(&self) -> Vec<Vec<usize>> {
        self.adjacency.clone()
    }

    /// All edges as labeled vertex pairs.
    pub fn edge_pairs(&self) -> Vec<(PantsVertex, PantsVertex)> {
        self.edges
            .keys()
            .map(|&(u, v)| (self.vertices[u].clone(), self.vertices[v].clone()))
            .collect()
    }

    /// Union of rigid sets over one chart as graphs: vertex and edge sets
    /// are merged.
    pub fn union_graphs(
        chart: &Arc<Chart>,
        models: Surface,
        parts: &[&RigidSet],
        provenance: &str,
    ) -> Result<RigidSet, BuildError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for p in parts {
            vertices.extend(p.vertices.iter().cloned());
            edges.extend(p.edge_pairs());
        }
        RigidSet::from_parts(chart, models, vertices, &edges, provenance)
    }

    /// Vertex-set intersection with another rigid set on the same chart.
    pub fn vertex_intersection(&self, other: &RigidSet) -> Vec<PantsVertex> {
        self.vertices
            .iter()
            .filter(|v| other.index_of(v).is_some())
            .cloned()
            .collect()
    }
}

/// Graph isomorphism check for small labeled-by-construction graphs: the
/// correspondence is given explicitly and verified edge by edge.
pub fn is_isomorphic_under(
    a: &RigidSet,
    b: &RigidSet,
    correspondence: &BTreeMap<usize, usize>,
) -> bool {
    if a.num_vertices() != b.num_vertices()
        || a.num_edges() != b.num_edges()
        || correspondence.len() != a.num_vertices()
    {
        return false;
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for (&x, &y) in correspondence {
        if x >= a.num_vertices() || y >= b.num_vertices() || !seen.insert(y) {
            return false;
        }
    }
    for &(u, v) in a.edges.keys() {
        let (x, y) = (correspondence[&u], correspondence[&v]);
        if !b.adjacent(x, y) {
            return false;
        }
    }
    true
}
