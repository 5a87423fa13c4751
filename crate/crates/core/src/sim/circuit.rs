use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    Rzz,
    X,
    Sx,
    Cnot,
    Id,
}

/// A gate with its qubits and, for rotations, its angle in radians.
///
/// Rotations follow `R_P(a) = exp(-i a P / 2)`, including
/// `RZZ(a) = exp(-i a Z Z / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Rzz(usize, usize, f64),
    X(usize),
    Sx(usize),
    /// `Cnot(control, target)`
    Cnot(usize, usize),
    Id(usize),
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Rx(..) => GateKind::Rx,
            Gate::Ry(..) => GateKind::Ry,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Rzz(..) => GateKind::Rzz,
            Gate::X(_) => GateKind::X,
            Gate::Sx(_) => GateKind::Sx,
            Gate::Cnot(..) => GateKind::Cnot,
            Gate::Id(_) => GateKind::Id,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => vec![q],
            Gate::X(q) | Gate::Sx(q) | Gate::Id(q) => vec![q],
            Gate::Rzz(a, b, _) | Gate::Cnot(a, b) => vec![a, b],
        }
    }

    /// Unitary of a single-qubit gate, row-major in the `|0>, |1>` basis.
    pub fn single_qubit_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let re = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        Some(match *self {
            Gate::Rx(_, a) => {
                let (s, c) = (a / 2.0).sin_cos();
                [[re(c), im(-s)], [im(-s), re(c)]]
            }
            Gate::Ry(_, a) => {
                let (s, c) = (a / 2.0).sin_cos();
                [[re(c), re(-s)], [re(s), re(c)]]
            }
            Gate::Rz(_, a) => {
                let half = Complex64::from_polar(1.0, a / 2.0);
                [[half.conj(), re(0.0)], [re(0.0), half]]
            }
            Gate::X(_) => [[re(0.0), re(1.0)], [re(1.0), re(0.0)]],
            Gate::Sx(_) => {
                let (p, m) = (Complex64::new(0.5, 0.5), Complex64::new(0.5, -0.5));
                [[p, m], [m, p]]
            }
            Gate::Id(_) => [[re(1.0), re(0.0)], [re(0.0), re(1.0)]],
            Gate::Rzz(..) | Gate::Cnot(..) => return None,
        })
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) | Gate::Rzz(_, _, a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rx(q, a) => write!(f, "rx({a}) q{q}"),
            Gate::Ry(q, a) => write!(f, "ry({a}) q{q}"),
            Gate::Rz(q, a) => write!(f, "rz({a}) q{q}"),
            Gate::Rzz(p, q, a) => write!(f, "rzz({a}) q{p}, q{q}"),
            Gate::X(q) => write!(f, "x q{q}"),
            Gate::Sx(q) => write!(f, "sx q{q}"),
            Gate::Cnot(c, t) => write!(f, "cx q{c}, q{t}"),
            Gate::Id(q) => write!(f, "id q{q}"),
        }
    }
}

/// Ordered gate list over `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, gates: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking its qubits and angle.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        let qubits = gate.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= self.n) {
            return Err(Error::InvalidCircuit(format!("{gate}: qubit {q} outside 0..{}", self.n)));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidCircuit(format!("{gate}: qubits must be distinct")));
        }
        if gate.angle().is_some_and(|a| !a.is_finite()) {
            return Err(Error::InvalidCircuit(format!("{gate}: non-finite angle")));
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }
}

/// `RX_i(phi_i)` on every vertex in index order, then `RZZ_jk(theta_jk)` on
/// every edge in canonical order.
pub fn build_graph_circuit(g: &WeightedGraph) -> Circuit {
    let mut gates: Vec<Gate> =
        g.vertex_weights().iter().enumerate().map(|(i, &phi)| Gate::Rx(i, phi)).collect();
    gates.extend(g.edges().iter().map(|e| Gate::Rzz(e.j, e.k, e.theta)));
    Circuit { n: g.n(), gates }
}
