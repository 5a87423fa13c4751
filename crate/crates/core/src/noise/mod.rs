//! Noisy execution on the `{ID, X, SX, RZ, CNOT}` basis.
//!
//! Each shot replays the basis circuit with stochastic Pauli errors inserted
//! after X, SX and CNOT gates, samples the measured qubits, then flips each
//! reported bit independently. RZ and ID are noiseless.

mod trajectory;
mod transpile;

use serde::{Deserialize, Serialize};

pub use trajectory::noisy_sample;
pub use transpile::{transpile, BasisCircuit};

use crate::analytic::BlochVector;
use crate::error::{Error, Result};
use crate::pauli::PauliAxis;
use crate::rng;
use crate::sim::DEFAULT_MAX_QUBITS;

/// Which Pauli errors a faulty gate may introduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliChannel {
    /// Uniform over the 3 (one-qubit) or 15 (two-qubit) non-identity Paulis.
    #[default]
    Depolarizing,
    /// Uniform over Z (one-qubit) or ZI, IZ, ZZ (two-qubit).
    Dephasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseModel {
    /// Probability that a measured bit is reported flipped.
    pub readout_flip: f64,
    /// Error probability after each X or SX.
    pub err_1q: f64,
    /// Error probability after each CNOT.
    pub err_2q: f64,
    #[serde(default)]
    pub channel: PauliChannel,
}

impl NoiseModel {
    pub fn new(readout_flip: f64, err_1q: f64, err_2q: f64) -> Result<Self> {
        let model = NoiseModel { readout_flip, err_1q, err_2q, channel: PauliChannel::Depolarizing };
        model.validate()?;
        Ok(model)
    }

    pub fn with_channel(mut self, channel: PauliChannel) -> Self {
        self.channel = channel;
        self
    }

    /// Readout 1e-2, X/SX 1e-4, CNOT 1e-2.
    pub fn superconducting_default() -> Self {
        NoiseModel::new(1e-2, 1e-4, 1e-2).expect("valid preset")
    }

    pub fn noiseless() -> Self {
        NoiseModel::new(0.0, 0.0, 0.0).expect("valid preset")
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("readout_flip", self.readout_flip), ("err_1q", self.err_1q), ("err_2q", self.err_2q)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(format!("{name} = {p} is not a probability")));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.readout_flip == 0.0 && self.err_1q == 0.0 && self.err_2q == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrajectoryConfig {
    pub shots: u64,
    pub seed: u64,
    pub max_qubits: usize,
}

impl TrajectoryConfig {
    pub fn new(shots: u64, seed: u64) -> Self {
        TrajectoryConfig { shots, seed, max_qubits: DEFAULT_MAX_QUBITS }
    }

    fn with_seed(self, seed: u64) -> Self {
        TrajectoryConfig { seed, ..self }
    }
}

pub fn noisy_estimate_pauli_mean(
    bc: &BasisCircuit,
    model: &NoiseModel,
    l: usize,
    axis: PauliAxis,
    cfg: &TrajectoryConfig,
) -> Result<f64> {
    let measured = bc.with_measurement(&[(l, axis)])?;
    Ok(noisy_sample(&measured, model, &[l], cfg)?.parity_mean(&[0]))
}

pub fn noisy_estimate_correlator(
    bc: &BasisCircuit,
    model: &NoiseModel,
    l: usize,
    m: usize,
    a: PauliAxis,
    b: PauliAxis,
    cfg: &TrajectoryConfig,
) -> Result<f64> {
    if l == m {
        return Err(Error::RepeatedVertex(l));
    }
    let measured = bc.with_measurement(&[(l, a), (m, b)])?;
    Ok(noisy_sample(&measured, model, &[l, m], cfg)?.parity_mean(&[0, 1]))
}

/// Noisy counterpart of [`crate::sim::Simulator::estimate_bloch_vector`],
/// splitting seeds the same way.
pub fn noisy_estimate_bloch_vector(
    bc: &BasisCircuit,
    model: &NoiseModel,
    l: usize,
    cfg: &TrajectoryConfig,
) -> Result<BlochVector> {
    let est = |axis: PauliAxis, idx: u64| {
        noisy_estimate_pauli_mean(bc, model, l, axis, &cfg.with_seed(rng::derive_seed(cfg.seed, &[idx])))
    };
    Ok(BlochVector::new(est(PauliAxis::X, 0)?, est(PauliAxis::Y, 1)?, est(PauliAxis::Z, 2)?))
}
