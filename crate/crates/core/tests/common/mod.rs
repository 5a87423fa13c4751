//! Brute-force reference for graph-state expectations.
//!
//! Amplitudes are written down directly: the RX layer gives a product state
//! and the RZZ layer a diagonal phase, so no gate kernels are involved.

#![allow(dead_code)]

use graphlab::{PauliAxis, WeightedGraph};
use num_complex::Complex64;

pub fn oracle_state(g: &WeightedGraph) -> Vec<Complex64> {
    let n = g.n();
    let phi = g.vertex_weights();
    (0..1usize << n)
        .map(|idx| {
            let bit = |q: usize| (idx >> q) & 1;
            let mut amp = Complex64::new(1.0, 0.0);
            for (q, &p) in phi.iter().enumerate() {
                amp *= if bit(q) == 0 {
                    Complex64::new((p / 2.0).cos(), 0.0)
                } else {
                    Complex64::new(0.0, -(p / 2.0).sin())
                };
            }
            let phase: f64 = g
                .edges()
                .iter()
                .map(|e| {
                    let zz = if bit(e.j) == bit(e.k) { 1.0 } else { -1.0 };
                    -0.5 * e.theta * zz
                })
                .sum();
            amp * Complex64::from_polar(1.0, phase)
        })
        .collect()
}

/// `<psi| P_1 ... P_k |psi>` for Paulis on distinct qubits.
pub fn oracle_expect(psi: &[Complex64], ops: &[(usize, PauliAxis)]) -> f64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (idx, &a) in psi.iter().enumerate() {
        let mut out = idx;
        let mut c = Complex64::new(1.0, 0.0);
        for &(q, axis) in ops {
            let b = (out >> q) & 1;
            match axis {
                PauliAxis::X => out ^= 1 << q,
                PauliAxis::Y => {
                    c *= if b == 0 { Complex64::i() } else { -Complex64::i() };
                    out ^= 1 << q;
                }
                PauliAxis::Z => {
                    if b == 1 {
                        c = -c;
                    }
                }
            }
        }
        total += psi[out].conj() * c * a;
    }
    assert!(total.im.abs() < 1e-9, "non-Hermitian result {total}");
    total.re
}

pub fn oracle_gme(psi: &[Complex64], l: usize) -> f64 {
    let m: f64 = PauliAxis::ALL.iter().map(|&a| oracle_expect(psi, &[(l, a)]).powi(2)).sum();
    0.5 * (1.0 - m.sqrt().min(1.0))
}
