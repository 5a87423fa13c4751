//! Weighted variational graph states.
//!
//! A weighted graph `G` defines the state
//! `|psi_G> = prod_(j,k) RZZ_jk(theta_jk) prod_i RX_i(phi_i) |0...0>`.
//! This crate evaluates its single-qubit mean spins, the geometric measure of
//! entanglement of each qubit and every two-qubit Pauli correlator in closed
//! form ([`analytic`]), checks them against exact statevector simulation and
//! shot sampling ([`sim`]), runs noisy basis-gate trajectories ([`noise`]) and
//! drives seeded parameter sweeps over uniform weights ([`sweep`]).

pub mod analytic;
pub mod cli;
pub mod error;
pub mod graph;
pub mod noise;
pub mod pauli;
pub mod rng;
pub mod sim;
pub mod sweep;

pub use error::{Error, ParseError, Result};
pub use graph::{VertexSet, WeightedGraph};
pub use pauli::{AxisPair, PauliAxis};
