//! Rewriting circuits onto the `{ID, X, SX, RZ, CNOT}` basis.
//!
//! `RZZ(t)` on `(j, k)` becomes `CNOT(j,k) RZ_k(t) CNOT(j,k)`, which is exact.
//! `RX` and `RY` become five-gate `RZ SX RZ SX RZ` chains that agree with the
//! original rotation up to a global phase. The chains are checked against the
//! exact 2x2 matrices the first time anything is transpiled.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliAxis;
use crate::sim::{measurement_circuit, Circuit, Gate, GateKind};

type Matrix2 = [[Complex64; 2]; 2];

/// Circuit restricted to `{ID, X, SX, RZ, CNOT}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCircuit(Circuit);

impl BasisCircuit {
    pub fn new(circuit: Circuit) -> Result<Self> {
        if let Some(g) = circuit.gates().iter().find(|g| !is_basis(g.kind())) {
            return Err(Error::InvalidCircuit(format!("{g} is not a basis gate")));
        }
        Ok(BasisCircuit(circuit))
    }

    pub fn circuit(&self) -> &Circuit {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn gates(&self) -> &[Gate] {
        self.0.gates()
    }

    /// Appends the transpiled measurement-basis rotations for `targets`.
    pub fn with_measurement(&self, targets: &[(usize, PauliAxis)]) -> Result<BasisCircuit> {
        let rotations = measurement_circuit(&Circuit::new(self.n()), targets)?;
        let mut out = self.0.clone();
        out.extend(transpile(&rotations)?.0.gates().iter().copied())?;
        Ok(BasisCircuit(out))
    }
}

fn is_basis(kind: GateKind) -> bool {
    matches!(kind, GateKind::Id | GateKind::X | GateKind::Sx | GateKind::Rz | GateKind::Cnot)
}

fn rx_chain(q: usize, angle: f64) -> [Gate; 5] {
    [
        Gate::Rz(q, FRAC_PI_2),
        Gate::Sx(q),
        Gate::Rz(q, angle + PI),
        Gate::Sx(q),
        Gate::Rz(q, FRAC_PI_2),
    ]
}

fn ry_chain(q: usize, angle: f64) -> [Gate; 5] {
    [Gate::Rz(q, 0.0), Gate::Sx(q), Gate::Rz(q, angle + PI), Gate::Sx(q), Gate::Rz(q, PI)]
}

fn mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// Unitary of a single-qubit gate sequence applied in time order.
pub(crate) fn chain_matrix(gates: &[Gate]) -> Matrix2 {
    let id = Gate::Id(0).single_qubit_matrix().unwrap();
    gates.iter().fold(id, |acc, g| mul(&g.single_qubit_matrix().expect("1q gate"), &acc))
}

/// `1 - |tr(A^dag B)| / 2`, zero iff equal up to global phase.
pub(crate) fn phase_insensitive_distance(a: &Matrix2, b: &Matrix2) -> f64 {
    let overlap: Complex64 =
        (0..2).flat_map(|r| (0..2).map(move |c| (r, c))).map(|(r, c)| a[r][c].conj() * b[r][c]).sum();
    1.0 - overlap.norm() / 2.0
}

fn verify_chains() -> std::result::Result<(), String> {
    for i in 0..=32 {
        let angle = -2.0 * PI + i as f64 * PI / 8.0;
        for (name, exact, chain) in [
            ("rx", Gate::Rx(0, angle), rx_chain(0, angle)),
            ("ry", Gate::Ry(0, angle), ry_chain(0, angle)),
        ] {
            let d = phase_insensitive_distance(&exact.single_qubit_matrix().unwrap(), &chain_matrix(&chain));
            if d > 1e-12 {
                return Err(format!("{name}({angle}) chain differs from the rotation (distance {d:e})"));
            }
        }
    }
    Ok(())
}

fn ensure_chains_verified() {
    static CHECK: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    if let Err(msg) = CHECK.get_or_init(verify_chains) {
        panic!("basis decomposition check failed: {msg}");
    }
}

/// Rewrites a circuit onto the basis gate set, equal up to global phase.
pub fn transpile(circuit: &Circuit) -> Result<BasisCircuit> {
    ensure_chains_verified();
    let mut out = Circuit::new(circuit.n());
    for gate in circuit.gates() {
        match *gate {
            Gate::Rx(q, a) => out.extend(rx_chain(q, a))?,
            Gate::Ry(q, a) => out.extend(ry_chain(q, a))?,
            Gate::Rzz(j, k, a) => out.extend([Gate::Cnot(j, k), Gate::Rz(k, a), Gate::Cnot(j, k)])?,
            Gate::Rz(..) | Gate::X(_) | Gate::Sx(_) | Gate::Cnot(..) | Gate::Id(_) => out.push(*gate)?,
        };
    }
    BasisCircuit::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::star;
    use crate::sim::{build_graph_circuit, run};
    use std::f64::consts::FRAC_PI_3;

    type Matrix4 = [[Complex64; 4]; 4];

    // 4x4 unitary of a two-qubit gate on (q0, q1) with index bit 0 = q0.
    fn two_qubit_matrix(gates: &[Gate]) -> Matrix4 {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for col in 0..4 {
            let mut amps = vec![Complex64::new(0.0, 0.0); 4];
            amps[col] = Complex64::new(1.0, 0.0);
            let mut s = crate::sim::Statevector::from_amplitudes(amps).unwrap();
            for g in gates {
                s.apply(g);
            }
            for (row, &amp) in m.iter_mut().zip(s.amplitudes()) {
                row[col] = amp;
            }
        }
        m
    }

    #[test]
    fn rzz_decomposition_matches_exponential() {
        for &theta in &[0.0, 0.3, FRAC_PI_3, 2.0, -1.1, 6.0] {
            let got = two_qubit_matrix(&[Gate::Cnot(0, 1), Gate::Rz(1, theta), Gate::Cnot(0, 1)]);
            // exp(-i theta ZZ / 2) is diagonal with parity-dependent phases
            for (row, line) in got.iter().enumerate() {
                for (col, &v) in line.iter().enumerate() {
                    let expected = if row != col {
                        Complex64::new(0.0, 0.0)
                    } else {
                        let parity = (row & 1) ^ (row >> 1 & 1);
                        let z = if parity == 0 { 1.0 } else { -1.0 };
                        Complex64::from_polar(1.0, -theta * z / 2.0)
                    };
                    assert!((v - expected).norm() < 1e-12, "theta {theta} ({row},{col})");
                }
            }
        }
        let mut c = Circuit::new(2);
        c.push(Gate::Rzz(0, 1, 0.4)).unwrap();
        assert_eq!(
            transpile(&c).unwrap().gates(),
            &[Gate::Cnot(0, 1), Gate::Rz(1, 0.4), Gate::Cnot(0, 1)]
        );
    }

    #[test]
    fn rotation_chains_verified() {
        assert_eq!(verify_chains(), Ok(()));
    }

    #[test]
    fn basis_gates_pass_through() {
        let mut c = Circuit::new(2);
        c.extend([Gate::Rz(1, 0.7), Gate::Sx(0), Gate::X(1), Gate::Cnot(1, 0), Gate::Id(0)]).unwrap();
        assert_eq!(transpile(&c).unwrap().circuit(), &c);
    }

    #[test]
    fn star_state_survives_transpilation() {
        let c = build_graph_circuit(&star(4, 0.9, 1.7).unwrap());
        let bc = transpile(&c).unwrap();
        assert!(bc.gates().iter().all(|g| is_basis(g.kind())));
        let f = run(&c).unwrap().fidelity(&run(bc.circuit()).unwrap());
        assert!(f >= 1.0 - 1e-10, "fidelity {f}");
    }

    #[test]
    fn rejects_non_basis() {
        let mut c = Circuit::new(1);
        c.push(Gate::Rx(0, 0.2)).unwrap();
        assert!(BasisCircuit::new(c).is_err());
    }

    #[test]
    fn measurement_rotations_are_transpiled() {
        let bc = transpile(&Circuit::new(2)).unwrap();
        let m = bc.with_measurement(&[(0, PauliAxis::X), (1, PauliAxis::Z)]).unwrap();
        assert_eq!(m.gates().len(), 5);
        assert!(m.gates().iter().all(|g| is_basis(g.kind())));
    }
}
