use std::collections::HashMap;

use rand::Rng;

use super::transpile::BasisCircuit;
use super::{NoiseModel, PauliChannel, TrajectoryConfig};
use crate::error::{Error, Result};
use crate::pauli::PauliAxis;
use crate::rng::{self, tag, StreamRng};
use crate::sim::{OutcomeDistribution, ShotCounts, Gate, Statevector};

/// One inserted error: gate index it follows, and the Pauli code.
///
/// One-qubit codes 1..=3 are X, Y, Z. Two-qubit codes 1..=15 encode
/// `(control, target)` Paulis as `4 * c + t` with 0 = I, 1 = X, 2 = Y, 3 = Z.
type Fault = (u32, u8);

/// Bernoulli(p) trials over positions `0..len`, yielding the successes.
/// Gaps between successes are drawn geometrically so the cost follows the
/// number of errors, not the number of trials.
struct BernoulliSkipper {
    log_q: f64,
    p: f64,
    next: u64,
    len: u64,
    rng: StreamRng,
}

impl BernoulliSkipper {
    fn new(p: f64, len: u64, rng: StreamRng) -> Self {
        let mut s = BernoulliSkipper { log_q: (-p).ln_1p(), p, next: 0, len, rng };
        s.next = if p <= 0.0 { len } else { s.gap() };
        s
    }

    fn gap(&mut self) -> u64 {
        if self.p >= 1.0 {
            return 0;
        }
        let u: f64 = self.rng.random();
        let g = ((1.0 - u).ln() / self.log_q).floor();
        if g >= self.len as f64 { self.len } else { g as u64 }
    }
}

impl Iterator for BernoulliSkipper {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.next >= self.len {
            return None;
        }
        let hit = self.next;
        self.next = hit.saturating_add(1).saturating_add(self.gap());
        Some(hit)
    }
}

fn error_code(rng: &mut StreamRng, two_qubit: bool, channel: PauliChannel) -> u8 {
    match (channel, two_qubit) {
        (PauliChannel::Depolarizing, false) => rng.random_range(1..=3),
        (PauliChannel::Depolarizing, true) => rng.random_range(1..=15),
        (PauliChannel::Dephasing, false) => 3,
        (PauliChannel::Dephasing, true) => [3u8, 12, 15][rng.random_range(0..3)],
    }
}

fn axis(code: u8) -> Option<PauliAxis> {
    match code {
        1 => Some(PauliAxis::X),
        2 => Some(PauliAxis::Y),
        3 => Some(PauliAxis::Z),
        _ => None,
    }
}

fn replay(bc: &BasisCircuit, faults: &[Fault], max_qubits: usize) -> Result<Statevector> {
    let mut state = Statevector::zero(bc.n(), max_qubits)?;
    let mut pending = faults.iter().peekable();
    for (idx, gate) in bc.gates().iter().enumerate() {
        state.apply(gate);
        while let Some(&&(at, code)) = pending.peek() {
            if at as usize != idx {
                break;
            }
            match *gate {
                Gate::Cnot(c, t) => {
                    if let Some(a) = axis(code >> 2) {
                        state.apply_pauli(c, a);
                    }
                    if let Some(a) = axis(code & 3) {
                        state.apply_pauli(t, a);
                    }
                }
                Gate::X(q) | Gate::Sx(q) => state.apply_pauli(q, axis(code).expect("1q code")),
                _ => unreachable!("faults only follow noisy gates"),
            }
            pending.next();
        }
    }
    Ok(state)
}

/// Samples `targets` from noisy trajectories of `bc`.
///
/// Faults for all shots are drawn first (one stream per gate class plus a
/// stream for the Pauli choice). Shots are then resolved in order, each
/// taking one draw from the measurement stream against the distribution of
/// its own trajectory; trajectories with the same faults share one
/// simulation. With every rate zero the measurement stream is consumed
/// exactly as by [`crate::sim::sample`].
pub fn noisy_sample(
    bc: &BasisCircuit,
    model: &NoiseModel,
    targets: &[usize],
    cfg: &TrajectoryConfig,
) -> Result<ShotCounts> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument("no measured qubits".into()));
    }
    if cfg.shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    model.validate()?;

    let one_q: Vec<u32> = slots(bc, |g| matches!(g, Gate::X(_) | Gate::Sx(_)));
    let two_q: Vec<u32> = slots(bc, |g| matches!(g, Gate::Cnot(..)));

    // (shot, gate index, is two-qubit)
    let mut hits: Vec<(u64, u32, bool)> = Vec::new();
    for (positions, p, stream_tag, two) in
        [(&one_q, model.err_1q, tag::GATE_1Q, false), (&two_q, model.err_2q, tag::GATE_2Q, true)]
    {
        if positions.is_empty() {
            continue;
        }
        let per_shot = positions.len() as u64;
        let trials = BernoulliSkipper::new(p, cfg.shots * per_shot, rng::stream(cfg.seed, &[stream_tag]));
        hits.extend(trials.map(|t| (t / per_shot, positions[(t % per_shot) as usize], two)));
    }
    hits.sort_unstable();
    let mut choice = rng::stream(cfg.seed, &[tag::PAULI_CHOICE]);
    let faults: Vec<(u64, Fault)> = hits
        .into_iter()
        .map(|(shot, at, two)| (shot, (at, error_code(&mut choice, two, model.channel))))
        .collect();

    let clean = OutcomeDistribution::new(&replay(bc, &[], cfg.max_qubits)?, targets)?;
    let mut cache: HashMap<Vec<Fault>, OutcomeDistribution> = HashMap::new();
    let mut measure = rng::stream(cfg.seed, &[tag::MEASUREMENT]);
    let width = targets.len() as u64;
    let mut flips = BernoulliSkipper::new(
        model.readout_flip,
        cfg.shots * width,
        rng::stream(cfg.seed, &[tag::READOUT]),
    )
    .peekable();

    let mut counts = ShotCounts::new(targets.to_vec());
    let mut cursor = 0;
    for shot in 0..cfg.shots {
        let start = cursor;
        while cursor < faults.len() && faults[cursor].0 == shot {
            cursor += 1;
        }
        let u: f64 = measure.random();
        let mut outcome = if start == cursor {
            clean.draw(u)
        } else {
            let key: Vec<Fault> = faults[start..cursor].iter().map(|&(_, f)| f).collect();
            if !cache.contains_key(&key) {
                let dist = OutcomeDistribution::new(&replay(bc, &key, cfg.max_qubits)?, targets)?;
                cache.insert(key.clone(), dist);
            }
            cache[&key].draw(u)
        };
        while let Some(&pos) = flips.peek() {
            if pos / width != shot {
                break;
            }
            outcome ^= 1 << (pos % width);
            flips.next();
        }
        counts.record(outcome);
    }
    Ok(counts)
}

fn slots(bc: &BasisCircuit, noisy: impl Fn(&Gate) -> bool) -> Vec<u32> {
    bc.gates().iter().enumerate().filter(|(_, g)| noisy(g)).map(|(i, _)| i as u32).collect()
}
