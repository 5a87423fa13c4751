//! JSON graph documents.
//!
//! ```json
//! {"n": 5, "vertex_weights": [0.1, 0.2, 0.3, 0.4, 0.5],
//!  "edges": [{"j": 0, "k": 1, "theta": 1.5708}]}
//! ```
//!
//! A top-level `"phi"` may replace `vertex_weights` (all vertices share it) and a
//! top-level `"theta"` supplies the weight of any edge that omits its own.
//! [`serialize_graph`] always writes the explicit, canonical form.

use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, ParseError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    n: usize,
    #[serde(default)]
    vertex_weights: Option<Vec<f64>>,
    #[serde(default)]
    phi: Option<f64>,
    #[serde(default)]
    theta: Option<f64>,
    #[serde(default)]
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    j: usize,
    k: usize,
    #[serde(default)]
    theta: Option<f64>,
}

#[derive(Serialize)]
struct CanonicalGraph<'a> {
    n: usize,
    vertex_weights: &'a [f64],
    edges: Vec<CanonicalEdge>,
}

#[derive(Serialize)]
struct CanonicalEdge {
    j: usize,
    k: usize,
    theta: f64,
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| ParseError::Syntax(e.to_string()))?;
    if raw.n == 0 {
        return Err(ParseError::Syntax("\"n\" must be at least 1".into()));
    }
    let phi = match (raw.vertex_weights, raw.phi) {
        (Some(_), Some(_)) => {
            return Err(ParseError::Syntax("give either \"vertex_weights\" or \"phi\", not both".into()))
        }
        (Some(w), None) if w.len() != raw.n => {
            return Err(ParseError::WeightCount { expected: raw.n, found: w.len() })
        }
        (Some(w), None) => w,
        (None, Some(p)) => vec![p; raw.n],
        (None, None) => return Err(ParseError::MissingWeight("vertex weights".into())),
    };
    let edges = raw
        .edges
        .iter()
        .map(|e| match e.theta.or(raw.theta) {
            Some(theta) => Ok((e.j, e.k, theta)),
            None => Err(ParseError::MissingWeight(format!("theta of edge ({}, {})", e.j, e.k))),
        })
        .collect::<Result<Vec<_>, _>>()?;

    WeightedGraph::new(phi, edges).map_err(|e| match e {
        Error::Parse(p) => p,
        other => ParseError::Syntax(other.to_string()),
    })
}

pub fn serialize_graph(g: &WeightedGraph) -> String {
    let doc = CanonicalGraph {
        n: g.n(),
        vertex_weights: g.vertex_weights(),
        edges: g
            .edges()
            .iter()
            .map(|e| CanonicalEdge { j: e.j, k: e.k, theta: e.theta })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("graph serialization cannot fail");
    text.push('\n');
    text
}
