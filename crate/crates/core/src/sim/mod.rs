//! Dense statevector simulation, the exact reference for every closed form,
//! plus shot sampling through rotated standard-basis measurement.
//!
//! Qubit 0 is the least-significant bit of the amplitude index. Bitstrings
//! are printed most-significant first.

mod circuit;
mod measure;
mod state;

pub use circuit::{build_graph_circuit, Circuit, Gate, GateKind};
pub use measure::{
    gme_from_means, measurement_circuit, sample, OutcomeDistribution, ShotCounts,
};
pub use state::{expectation, Statevector};

use crate::analytic::BlochVector;
use crate::error::Result;
use crate::pauli::PauliAxis;
use crate::rng;

/// Default cap on simulated qubits (2^24 amplitudes, 256 MiB).
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Simulation settings shared by the run and estimate entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulator {
    pub max_qubits: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator { max_qubits: DEFAULT_MAX_QUBITS }
    }
}

impl Simulator {
    pub fn new(max_qubits: usize) -> Self {
        Simulator { max_qubits }
    }

    /// Applies the circuit to `|0...0>`.
    pub fn run(&self, circuit: &Circuit) -> Result<Statevector> {
        let mut state = Statevector::zero(circuit.n(), self.max_qubits)?;
        state.apply_circuit(circuit);
        Ok(state)
    }

    /// Shot estimate of `<sigma^axis_l>`: `(count_0 - count_1) / shots`.
    pub fn estimate_pauli_mean(
        &self,
        circuit: &Circuit,
        l: usize,
        axis: PauliAxis,
        shots: u64,
        seed: u64,
    ) -> Result<f64> {
        let rotated = measurement_circuit(circuit, &[(l, axis)])?;
        let counts = sample(&self.run(&rotated)?, &[l], shots, seed)?;
        Ok(counts.parity_mean(&[0]))
    }

    /// Shot estimate of `<sigma^a_l sigma^b_m>` from the rotated two-qubit parity.
    #[allow(clippy::too_many_arguments)]
    pub fn estimate_correlator(
        &self,
        circuit: &Circuit,
        l: usize,
        m: usize,
        a: PauliAxis,
        b: PauliAxis,
        shots: u64,
        seed: u64,
    ) -> Result<f64> {
        let rotated = measurement_circuit(circuit, &[(l, a), (m, b)])?;
        let counts = sample(&self.run(&rotated)?, &[l, m], shots, seed)?;
        Ok(counts.parity_mean(&[0, 1]))
    }

    /// Estimates all three mean spins of `l`, each from its own measurement
    /// setting and its own seed split from `seed`.
    pub fn estimate_bloch_vector(
        &self,
        circuit: &Circuit,
        l: usize,
        shots: u64,
        seed: u64,
    ) -> Result<BlochVector> {
        let est = |axis: PauliAxis, idx: u64| {
            self.estimate_pauli_mean(circuit, l, axis, shots, rng::derive_seed(seed, &[idx]))
        };
        Ok(BlochVector::new(est(PauliAxis::X, 0)?, est(PauliAxis::Y, 1)?, est(PauliAxis::Z, 2)?))
    }
}

pub fn run(circuit: &Circuit) -> Result<Statevector> {
    Simulator::default().run(circuit)
}

pub fn estimate_pauli_mean(
    circuit: &Circuit,
    l: usize,
    axis: PauliAxis,
    shots: u64,
    seed: u64,
) -> Result<f64> {
    Simulator::default().estimate_pauli_mean(circuit, l, axis, shots, seed)
}

pub fn estimate_correlator(
    circuit: &Circuit,
    l: usize,
    m: usize,
    a: PauliAxis,
    b: PauliAxis,
    shots: u64,
    seed: u64,
) -> Result<f64> {
    Simulator::default().estimate_correlator(circuit, l, m, a, b, shots, seed)
}
