//! Parameter sweeps over uniform weights.
//!
//! A sweep fixes a graph topology and, for every `(phi, theta)` on a grid,
//! sets every phase to `phi` and every coupling to `theta`, then evaluates
//! each requested quantity in closed form and, optionally, by ideal and by
//! noisy shot sampling. Grid points run in parallel on the current rayon
//! pool; results are assembled in row-major, phi-outer order.

mod output;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use output::{compare, read_rows, Column, CompareRow, Comparison, DiffRow};

use crate::analytic;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::noise::{self, NoiseModel, TrajectoryConfig};
use crate::pauli::AxisPair;
use crate::rng;
use crate::sim::{self, Simulator};

/// Inclusive, evenly spaced axis `start, ..., stop` with `points` values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidArgument("a grid needs at least one point".into()));
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidArgument("grid bounds must be finite".into()));
        }
        Ok(Grid { start, stop, points })
    }

    pub fn single(value: f64) -> Result<Self> {
        Grid::new(value, value, 1)
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.stop } else { self.start + i as f64 * step })
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.points)
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// `start:stop:points`, or a single angle. Angles accept `pi` forms such
    /// as `pi/2`, `-pi/4`, `3pi/4` or `0.5*pi`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Grid::single(parse_angle(v)?),
            [a, b, n] => {
                let points = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad point count '{n}'")))?;
                Grid::new(parse_angle(a)?, parse_angle(b)?, points)
            }
            _ => Err(Error::InvalidArgument(format!("expected start:stop:points, got '{s}'"))),
        }
    }
}

/// Parses a real number or a multiple of pi (`pi`, `-pi/3`, `2pi`, `0.25*pi`, `3pi/4`).
pub fn parse_angle(text: &str) -> Result<f64> {
    let bad = || Error::InvalidArgument(format!("cannot read angle '{text}'"));
    let t = text.trim().to_ascii_lowercase();
    let Some(at) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad()).and_then(|v| if v.is_finite() { Ok(v) } else { Err(bad()) });
    };
    let coeff = t[..at].trim().trim_end_matches('*').trim();
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = t[at + 2..].trim();
    let denom = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?,
    };
    if denom == 0.0 {
        return Err(bad());
    }
    Ok(coeff * std::f64::consts::PI / denom)
}

/// What a sweep evaluates at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Geometric measure of entanglement of one vertex.
    Gme { vertex: usize },
    /// `<sigma^a_l sigma^b_m>`
    Correlator { l: usize, m: usize, axes: AxisPair },
}

impl Quantity {
    /// File-name friendly label, e.g. `gme_q0` or `corr_xy_q0_q1`.
    pub fn label(&self) -> String {
        match self {
            Quantity::Gme { vertex } => format!("gme_q{vertex}"),
            Quantity::Correlator { l, m, axes } => format!("corr_{axes}_q{l}_q{m}"),
        }
    }

    fn check(&self, g: &WeightedGraph) -> Result<()> {
        match *self {
            Quantity::Gme { vertex } => g.check(vertex),
            Quantity::Correlator { l, m, .. } => {
                g.check(l)?;
                g.check(m)?;
                if l == m {
                    return Err(Error::RepeatedVertex(l));
                }
                Ok(())
            }
        }
    }

    pub fn analytic(&self, g: &WeightedGraph) -> Result<f64> {
        match *self {
            Quantity::Gme { vertex } => analytic::gme(g, vertex),
            Quantity::Correlator { l, m, axes } => analytic::correlator(g, l, m, axes.0, axes.1),
        }
    }

    pub fn ideal(&self, sim: &Simulator, circuit: &sim::Circuit, shots: u64, seed: u64) -> Result<f64> {
        match *self {
            Quantity::Gme { vertex } => Ok(sim.estimate_bloch_vector(circuit, vertex, shots, seed)?.gme()),
            Quantity::Correlator { l, m, axes } => {
                sim.estimate_correlator(circuit, l, m, axes.0, axes.1, shots, seed)
            }
        }
    }

    pub fn noisy(&self, bc: &noise::BasisCircuit, model: &NoiseModel, cfg: &TrajectoryConfig) -> Result<f64> {
        match *self {
            Quantity::Gme { vertex } => Ok(noise::noisy_estimate_bloch_vector(bc, model, vertex, cfg)?.gme()),
            Quantity::Correlator { l, m, axes } => {
                noise::noisy_estimate_correlator(bc, model, l, m, axes.0, axes.1, cfg)
            }
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Gme { vertex } => write!(f, "gme of qubit {vertex}"),
            Quantity::Correlator { l, m, axes } => {
                write!(f, "<sigma^{}_{l} sigma^{}_{m}>", axes.0, axes.1)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Topology; its own weights are replaced at every grid point.
    pub graph: WeightedGraph,
    /// Human-readable source of the graph, recorded in metadata.
    pub graph_label: String,
    pub phi: Grid,
    pub theta: Grid,
    pub quantities: Vec<Quantity>,
    /// Shots per estimate; `None` skips sampling.
    pub shots: Option<u64>,
    pub seed: u64,
    /// Noise model; `None` skips the noisy column.
    pub noise: Option<NoiseModel>,
    pub max_qubits: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.quantities.is_empty() {
            return Err(Error::InvalidArgument("nothing to sweep".into()));
        }
        for q in &self.quantities {
            q.check(&self.graph)?;
        }
        if self.shots == Some(0) {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        if self.noise.is_some() && self.shots.is_none() {
            return Err(Error::InvalidArgument("a noisy sweep needs --shots".into()));
        }
        if let Some(model) = &self.noise {
            model.validate()?;
        }
        if self.shots.is_some() && self.graph.n() > self.max_qubits {
            return Err(Error::TooManyQubits { n: self.graph.n(), max: self.max_qubits });
        }
        Grid::new(self.phi.start, self.phi.stop, self.phi.points)?;
        Grid::new(self.theta.start, self.theta.stop, self.theta.points)?;
        Ok(())
    }
}

/// One grid point of one quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub phi: f64,
    pub theta: f64,
    pub analytic: f64,
    pub ideal: Option<f64>,
    pub noisy: Option<f64>,
    pub d_ideal: Option<f64>,
    pub d_noisy: Option<f64>,
}

impl SweepRow {
    fn new(phi: f64, theta: f64, analytic: f64, ideal: Option<f64>, noisy: Option<f64>) -> Self {
        SweepRow {
            phi,
            theta,
            analytic,
            ideal,
            noisy,
            d_ideal: ideal.map(|v| (analytic - v).abs()),
            d_noisy: noisy.map(|v| (analytic - v).abs()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub tool: String,
    pub version: String,
    pub quantity: String,
    pub description: String,
    pub graph: String,
    pub phi: String,
    pub theta: String,
    pub shots: Option<u64>,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
    /// Unix seconds at write time; the only field outside the determinism contract.
    pub generated_at: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub quantity: Quantity,
    pub metadata: SweepMetadata,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn max_d_ideal(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.d_ideal).reduce(f64::max)
    }

    pub fn max_d_noisy(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.d_noisy).reduce(f64::max)
    }

    pub fn differences(&self) -> Vec<DiffRow> {
        self.rows
            .iter()
            .map(|r| DiffRow { phi: r.phi, theta: r.theta, d_ideal: r.d_ideal, d_noisy: r.d_noisy })
            .collect()
    }
}

/// Seed for one quantity at one grid point. Ideal and noisy estimates share
/// it, so a noiseless model reproduces the ideal column.
pub fn point_seed(master: u64, quantity: &Quantity, point: usize) -> u64 {
    rng::derive_seed(master, &[rng::label_tag(&quantity.label()), point as u64])
}

/// Runs the sweep on the current rayon pool.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepResult>> {
    cfg.validate()?;
    let phis = cfg.phi.values();
    let thetas = cfg.theta.values();
    let points: Vec<(f64, f64)> =
        phis.iter().flat_map(|&p| thetas.iter().map(move |&t| (p, t))).collect();
    let sim = Simulator::new(cfg.max_qubits);

    let per_point: Vec<Vec<SweepRow>> = points
        .par_iter()
        .enumerate()
        .map(|(idx, &(phi, theta))| {
            let g = cfg.graph.make_uniform(phi, theta)?;
            let circuit = cfg.shots.map(|_| sim::build_graph_circuit(&g));
            let basis = match (&circuit, &cfg.noise) {
                (Some(c), Some(_)) => Some(noise::transpile(c)?),
                _ => None,
            };
            cfg.quantities
                .iter()
                .map(|q| {
                    let seed = point_seed(cfg.seed, q, idx);
                    let analytic = q.analytic(&g)?;
                    let ideal = match (&circuit, cfg.shots) {
                        (Some(c), Some(shots)) => Some(q.ideal(&sim, c, shots, seed)?),
                        _ => None,
                    };
                    let noisy = match (&basis, &cfg.noise, cfg.shots) {
                        (Some(bc), Some(model), Some(shots)) => {
                            let tc = TrajectoryConfig { shots, seed, max_qubits: cfg.max_qubits };
                            Some(q.noisy(bc, model, &tc)?)
                        }
                        _ => None,
                    };
                    Ok(SweepRow::new(phi, theta, analytic, ideal, noisy))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    Ok(cfg
        .quantities
        .iter()
        .enumerate()
        .map(|(qi, q)| SweepResult {
            quantity: *q,
            metadata: SweepMetadata {
                tool: "graphlab".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                quantity: q.label(),
                description: q.to_string(),
                graph: cfg.graph_label.clone(),
                phi: cfg.phi.to_string(),
                theta: cfg.theta.to_string(),
                shots: cfg.shots,
                seed: cfg.seed,
                noise: cfg.noise,
                generated_at: None,
            },
            rows: per_point.iter().map(|rows| rows[qi]).collect(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::star;
    use crate::pauli::PauliAxis;
    use std::f64::consts::PI;

    fn base(quantities: Vec<Quantity>) -> SweepConfig {
        SweepConfig {
            graph: star(4, 0.0, 0.0).unwrap(),
            graph_label: "star(4)".into(),
            phi: Grid::new(0.0, PI, 21).unwrap(),
            theta: Grid::new(0.0, PI, 21).unwrap(),
            quantities,
            shots: None,
            seed: 1,
            noise: None,
            max_qubits: 24,
        }
    }

    #[test]
    fn grid_values() {
        let g = Grid::new(0.0, PI, 21).unwrap();
        let v = g.values();
        assert_eq!(v.len(), 21);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[20], PI);
        assert_eq!(Grid::single(0.3).unwrap().values(), vec![0.3]);
        assert!(Grid::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn parses_grids_and_angles() {
        assert_eq!("0:pi:21".parse::<Grid>().unwrap(), Grid::new(0.0, PI, 21).unwrap());
        assert_eq!(parse_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("0.5*pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("tau").is_err());
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:x".parse::<Grid>().is_err());
    }

    #[test]
    fn analytic_only_gme_surface() {
        let results = run_sweep(&base(vec![Quantity::Gme { vertex: 0 }])).unwrap();
        let rows = &results[0].rows;
        assert_eq!(rows.len(), 441);
        assert_eq!((rows[0].phi, rows[0].theta), (0.0, 0.0));
        assert_eq!((rows[1].phi, rows[1].theta), (0.0, PI / 20.0));
        assert!(rows.iter().filter(|r| r.phi == 0.0).all(|r| r.analytic.abs() < 1e-15));
        assert!(rows.iter().all(|r| r.ideal.is_none() && r.d_noisy.is_none()));
    }

    #[test]
    fn sampled_columns_are_consistent() {
        let mut cfg = base(vec![
            Quantity::Gme { vertex: 0 },
            Quantity::Correlator { l: 0, m: 1, axes: AxisPair(PauliAxis::Y, PauliAxis::Z) },
        ]);
        cfg.phi = Grid::new(0.0, PI, 3).unwrap();
        cfg.theta = Grid::new(0.0, PI, 3).unwrap();
        cfg.shots = Some(2000);
        cfg.noise = Some(NoiseModel::noiseless());
        let results = run_sweep(&cfg).unwrap();
        for r in &results {
            for row in &r.rows {
                assert_eq!(row.d_ideal, Some((row.analytic - row.ideal.unwrap()).abs()));
                // noiseless trajectories reuse the ideal seed
                assert_eq!(row.ideal, row.noisy);
            }
        }
        assert_eq!(results, run_sweep(&cfg).unwrap());
    }

    #[test]
    fn validation() {
        let mut cfg = base(vec![Quantity::Gme { vertex: 9 }]);
        assert!(cfg.validate().is_err());
        cfg.quantities = vec![];
        assert!(cfg.validate().is_err());
        cfg.quantities = vec![Quantity::Gme { vertex: 0 }];
        cfg.noise = Some(NoiseModel::noiseless());
        assert!(cfg.validate().is_err());
        cfg.shots = Some(10);
        cfg.max_qubits = 4;
        assert_eq!(cfg.validate().unwrap_err(), Error::TooManyQubits { n: 5, max: 4 });
    }
}
