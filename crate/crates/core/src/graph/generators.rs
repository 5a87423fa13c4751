//! Builders for the graph families used in experiments and tests.

use rand::Rng;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::rng;

/// Star `K_{1,leaves}` with center 0 and leaves `1..=leaves`.
pub fn star(leaves: usize, phi: f64, theta: f64) -> Result<WeightedGraph> {
    WeightedGraph::new(vec![phi; leaves + 1], (1..=leaves).map(|k| (0, k, theta)))
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize, phi: f64, theta: f64) -> Result<WeightedGraph> {
    WeightedGraph::new(vec![phi; n], (1..n).map(|k| (k - 1, k, theta)))
}

/// Erdős–Rényi graph on `n` vertices with edge probability `edge_prob`.
/// All phases and couplings are drawn uniformly from the open interval (0, π).
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Result<WeightedGraph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidArgument(format!("edge probability {edge_prob} not in [0, 1]")));
    }
    let mut rng = rng::stream(seed, &[rng::label_tag("random_graph")]);
    let open_angle = move |rng: &mut rng::StreamRng| loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u * std::f64::consts::PI;
        }
    };
    let phi: Vec<f64> = (0..n).map(|_| open_angle(&mut rng)).collect();
    let mut edges = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            if rng.random::<f64>() < edge_prob {
                edges.push((j, k, open_angle(&mut rng)));
            }
        }
    }
    WeightedGraph::new(phi, edges)
}
