use num_complex::Complex64;

use super::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliAxis;

type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized state of `n` qubits stored as `2^n` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0...0>` on `n` qubits, refusing more than `max_qubits`.
    pub fn zero(n: usize, max_qubits: usize) -> Result<Self> {
        if n > max_qubits || n >= usize::BITS as usize - 1 {
            return Err(Error::TooManyQubits { n, max: max_qubits });
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(Statevector { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument("amplitude count must be a power of two".into()));
        }
        let n = amps.len().trailing_zeros() as usize;
        let s = Statevector { n, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument("amplitudes are not normalized".into()));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &Statevector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) {
        debug_assert_eq!(circuit.n(), self.n);
        for gate in circuit.gates() {
            self.apply(gate);
        }
    }

    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::Rz(q, a) => {
                let half = Complex64::from_polar(1.0, a / 2.0);
                self.apply_diagonal(q, half.conj(), half);
            }
            Gate::Rzz(p, q, a) => self.apply_rzz(p, q, a),
            Gate::X(q) => self.apply_pauli(q, PauliAxis::X),
            Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Sx(q) => {
                let m = gate.single_qubit_matrix().expect("single-qubit gate");
                self.apply_1q(q, m);
            }
            Gate::Cnot(c, t) => self.apply_cnot(c, t),
            Gate::Id(_) => {}
        }
    }

    /// Arbitrary 2x2 on qubit `q`, iterating amplitude pairs by stride.
    pub fn apply_1q(&mut self, q: usize, m: Matrix2) {
        let stride = 1 << q;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = m[0][0] * x0 + m[0][1] * x1;
                *a1 = m[1][0] * x0 + m[1][1] * x1;
            }
        }
    }

    fn apply_diagonal(&mut self, q: usize, d0: Complex64, d1: Complex64) {
        let stride = 1 << q;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            lo.iter_mut().for_each(|a| *a *= d0);
            hi.iter_mut().for_each(|a| *a *= d1);
        }
    }

    pub fn apply_pauli(&mut self, q: usize, axis: PauliAxis) {
        let stride = 1 << q;
        let i = Complex64::new(0.0, 1.0);
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            match axis {
                PauliAxis::X => lo.swap_with_slice(hi),
                PauliAxis::Y => {
                    for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                        let (x0, x1) = (*a0, *a1);
                        *a0 = -i * x1;
                        *a1 = i * x0;
                    }
                }
                PauliAxis::Z => hi.iter_mut().for_each(|a| *a = -*a),
            }
        }
    }

    fn apply_rzz(&mut self, p: usize, q: usize, angle: f64) {
        let even = Complex64::from_polar(1.0, -angle / 2.0);
        let odd = even.conj();
        let mask = (1usize << p) | (1usize << q);
        for (idx, a) in self.amps.iter_mut().enumerate() {
            *a *= if (idx & mask).count_ones().is_multiple_of(2) { even } else { odd };
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let (cm, tm) = (1usize << control, 1usize << target);
        for idx in 0..self.amps.len() {
            if idx & cm != 0 && idx & tm == 0 {
                self.amps.swap(idx, idx | tm);
            }
        }
    }
}

/// Exact `<psi| prod_i sigma^(a_i)_(l_i) |psi>` over distinct qubits.
pub fn expectation(state: &Statevector, ops: &[(usize, PauliAxis)]) -> Result<f64> {
    if ops.is_empty() || ops.len() > state.n {
        return Err(Error::InvalidArgument(format!(
            "need between 1 and {} Pauli factors, got {}",
            state.n,
            ops.len()
        )));
    }
    let (mut flip, mut sign, mut n_y) = (0usize, 0usize, 0u32);
    for (i, &(q, axis)) in ops.iter().enumerate() {
        if q >= state.n {
            return Err(Error::VertexOutOfRange { vertex: q, n: state.n });
        }
        if ops[..i].iter().any(|&(p, _)| p == q) {
            return Err(Error::RepeatedVertex(q));
        }
        let bit = 1usize << q;
        match axis {
            PauliAxis::X => flip |= bit,
            PauliAxis::Y => {
                flip |= bit;
                sign |= bit;
                n_y += 1;
            }
            PauliAxis::Z => sign |= bit,
        }
    }
    // P|i> = i^n_y (-1)^popcount(i & sign) |i ^ flip>
    let amps = &state.amps;
    let sum: Complex64 = amps
        .iter()
        .enumerate()
        .map(|(idx, &a)| {
            let v = amps[idx ^ flip].conj() * a;
            if (idx & sign).count_ones() % 2 == 0 { v } else { -v }
        })
        .sum();
    let value = sum * Complex64::new(0.0, 1.0).powu(n_y);
    assert!(
        value.im.abs() <= 1e-12 * state.norm_sqr().max(1.0),
        "Hermitian expectation has imaginary part {}",
        value.im
    );
    Ok(value.re)
}
