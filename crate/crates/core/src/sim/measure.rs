use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use rand::Rng;

use super::circuit::{Circuit, Gate};
use super::state::Statevector;
use crate::error::{Error, Result};
use crate::pauli::PauliAxis;
use crate::rng::{self, tag};

/// Appends the basis change that maps `axis` onto Z for each target:
/// `RY(-pi/2)` for X, `RX(pi/2)` for Y, nothing for Z.
pub fn measurement_circuit(circuit: &Circuit, targets: &[(usize, PauliAxis)]) -> Result<Circuit> {
    check_distinct(targets.iter().map(|&(q, _)| q))?;
    let mut out = circuit.clone();
    for &(q, axis) in targets {
        match axis {
            PauliAxis::X => out.push(Gate::Ry(q, -FRAC_PI_2))?,
            PauliAxis::Y => out.push(Gate::Rx(q, FRAC_PI_2))?,
            PauliAxis::Z => &mut out,
        };
    }
    Ok(out)
}

pub(crate) fn check_distinct<I: IntoIterator<Item = usize>>(qubits: I) -> Result<()> {
    let mut seen = Vec::new();
    for q in qubits {
        if seen.contains(&q) {
            return Err(Error::RepeatedVertex(q));
        }
        seen.push(q);
    }
    Ok(())
}

/// Histogram of measured outcomes.
///
/// Outcome bit `t` holds the result for `qubits[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    qubits: Vec<usize>,
    counts: BTreeMap<u64, u64>,
    shots: u64,
}

impl ShotCounts {
    pub fn new(qubits: Vec<usize>) -> Self {
        ShotCounts { qubits, counts: BTreeMap::new(), shots: 0 }
    }

    pub fn record(&mut self, outcome: u64) {
        *self.counts.entry(outcome).or_insert(0) += 1;
        self.shots += 1;
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn get(&self, outcome: u64) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    /// `(outcome, count)` pairs in increasing outcome order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&o, &c)| (o, c))
    }

    /// Outcome as text, last measured qubit first.
    pub fn bitstring(&self, outcome: u64) -> String {
        (0..self.qubits.len()).rev().map(|t| if outcome >> t & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Counts keyed by bitstring.
    pub fn to_bitstrings(&self) -> BTreeMap<String, u64> {
        self.iter().map(|(o, c)| (self.bitstring(o), c)).collect()
    }

    /// Mean of `(-1)^(sum of bits at positions)` over all shots.
    pub fn parity_mean(&self, positions: &[usize]) -> f64 {
        let mask: u64 = positions.iter().map(|&t| 1u64 << t).sum();
        let signed: i64 = self
            .iter()
            .map(|(o, c)| if (o & mask).count_ones().is_multiple_of(2) { c as i64 } else { -(c as i64) })
            .sum();
        signed as f64 / self.shots as f64
    }

    /// Pools another histogram over the same qubits.
    pub fn merge(&mut self, other: &ShotCounts) -> Result<()> {
        if other.qubits != self.qubits {
            return Err(Error::InvalidArgument("cannot merge counts over different qubits".into()));
        }
        for (o, c) in other.iter() {
            *self.counts.entry(o).or_insert(0) += c;
        }
        self.shots += other.shots;
        Ok(())
    }
}

/// Born distribution of a subset of qubits, ready for inverse-CDF draws.
#[derive(Debug, Clone)]
pub struct OutcomeDistribution {
    cumulative: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn new(state: &Statevector, qubits: &[usize]) -> Result<Self> {
        for &q in qubits {
            if q >= state.n() {
                return Err(Error::VertexOutOfRange { vertex: q, n: state.n() });
            }
        }
        check_distinct(qubits.iter().copied())?;
        if qubits.len() > 63 {
            return Err(Error::InvalidArgument("at most 63 measured qubits".into()));
        }
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (idx, amp) in state.amplitudes().iter().enumerate() {
            let outcome = qubits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (t, &q)| acc | ((idx >> q) & 1) << t);
            probs[outcome] += amp.norm_sqr();
        }
        let mut acc = 0.0;
        let cumulative = probs
            .into_iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(OutcomeDistribution { cumulative })
    }

    /// Outcome for a uniform draw `u` in `[0, 1)`.
    pub fn draw(&self, u: f64) -> u64 {
        let total = *self.cumulative.last().expect("non-empty distribution");
        let target = u * total;
        let idx = self.cumulative.partition_point(|&c| c <= target);
        idx.min(self.cumulative.len() - 1) as u64
    }
}

/// Draws `shots` i.i.d. outcomes of `qubits` from the Born distribution.
///
/// Uses the measurement stream split from `seed`; noisy sampling with all
/// rates zero consumes the same stream and reproduces these counts.
pub fn sample(state: &Statevector, qubits: &[usize], shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let dist = OutcomeDistribution::new(state, qubits)?;
    let mut rng = rng::stream(seed, &[tag::MEASUREMENT]);
    let mut counts = ShotCounts::new(qubits.to_vec());
    for _ in 0..shots {
        counts.record(dist.draw(rng.random::<f64>()));
    }
    Ok(counts)
}

/// GME from mean spins, `(1 - |m|) / 2`, with `|m|` clamped to 1 against sampling noise.
pub fn gme_from_means(mx: f64, my: f64, mz: f64) -> f64 {
    let norm = (mx * mx + my * my + mz * mz).sqrt();
    0.5 * (1.0 - norm.min(1.0))
}
