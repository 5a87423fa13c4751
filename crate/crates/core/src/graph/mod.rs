//! Vertex- and edge-weighted graphs.
//!
//! Vertices are the dense indices `0..n`. Each vertex carries a phase weight
//! (the angle of its `RX` rotation) and each undirected edge a coupling weight
//! (the angle of its `RZZ` gate). Edges are stored with the smaller endpoint
//! first and iterate in lexicographic order, so every product taken over a
//! neighborhood is evaluated in the same order on every run.

mod format;
pub mod generators;

use std::collections::BTreeMap;
use std::ops::Deref;

pub use format::{parse_graph, serialize_graph};

use crate::error::{Error, ParseError, Result};

/// Sorted set of distinct vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for VertexSet {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Undirected weighted edge with `j < k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub j: usize,
    pub k: usize,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    phi: Vec<f64>,
    edges: Vec<Edge>,
    // adjacency[v] = (neighbor, theta) sorted by neighbor
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    /// Builds a graph from per-vertex phases and `(j, k, theta)` edges.
    ///
    /// Edge endpoints may be given in either order. Self-loops, repeated
    /// edges, out-of-range endpoints and non-finite weights are rejected.
    pub fn new<I>(vertex_weights: Vec<f64>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = vertex_weights.len();
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        if let Some(v) = vertex_weights.iter().position(|w| !w.is_finite()) {
            return Err(ParseError::NonFinite(format!("phi of vertex {v}")).into());
        }

        let mut canonical = BTreeMap::new();
        for (a, b, theta) in edges {
            if a >= n || b >= n {
                return Err(ParseError::EdgeOutOfRange { j: a, k: b, n }.into());
            }
            if a == b {
                return Err(ParseError::SelfLoop(a).into());
            }
            if !theta.is_finite() {
                return Err(ParseError::NonFinite(format!("theta of edge ({a}, {b})")).into());
            }
            let key = (a.min(b), a.max(b));
            if canonical.insert(key, theta).is_some() {
                return Err(ParseError::DuplicateEdge(key.0, key.1).into());
            }
        }

        let mut adjacency = vec![Vec::new(); n];
        let edges: Vec<Edge> = canonical
            .into_iter()
            .map(|((j, k), theta)| {
                adjacency[j].push((k, theta));
                adjacency[k].push((j, theta));
                Edge { j, k, theta }
            })
            .collect();
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(v, _)| v);
        }

        Ok(WeightedGraph { phi: vertex_weights, edges, adjacency })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn vertex_weights(&self) -> &[f64] {
        &self.phi
    }

    /// Edges in canonical order (`j < k`, lexicographic).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn phi(&self, l: usize) -> Result<f64> {
        self.check(l)?;
        Ok(self.phi[l])
    }

    /// Weight of edge `(j, k)`, if present.
    pub fn edge_weight(&self, j: usize, k: usize) -> Option<f64> {
        let list = self.adjacency.get(j)?;
        list.binary_search_by_key(&k, |&(v, _)| v).ok().map(|i| list[i].1)
    }

    /// `(neighbor, theta)` pairs of `l`, sorted by neighbor.
    pub fn incident(&self, l: usize) -> Result<&[(usize, f64)]> {
        self.check(l)?;
        Ok(&self.adjacency[l])
    }

    pub fn neighborhood(&self, l: usize) -> Result<VertexSet> {
        Ok(VertexSet(self.incident(l)?.iter().map(|&(v, _)| v).collect()))
    }

    pub fn closed_neighborhood(&self, l: usize) -> Result<VertexSet> {
        let mut set = self.neighborhood(l)?.into_vec();
        set.push(l);
        Ok(VertexSet::new(set))
    }

    /// Vertices adjacent to both `l` and `m`.
    pub fn common_neighbors(&self, l: usize, m: usize) -> Result<VertexSet> {
        if l == m {
            return Err(Error::RepeatedVertex(l));
        }
        let other = self.neighborhood(m)?;
        Ok(self.incident(l)?.iter().map(|&(v, _)| v).filter(|&v| other.contains(v)).collect())
    }

    pub fn degree(&self, l: usize) -> Result<usize> {
        Ok(self.incident(l)?.len())
    }

    /// Same topology with every phase set to `phi` and every coupling to `theta`.
    pub fn make_uniform(&self, phi: f64, theta: f64) -> Result<WeightedGraph> {
        WeightedGraph::new(
            vec![phi; self.n()],
            self.edges.iter().map(|e| (e.j, e.k, theta)),
        )
    }

    pub(crate) fn check(&self, l: usize) -> Result<()> {
        if l < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: l, n: self.n() })
        }
    }
}
