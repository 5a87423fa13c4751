//! Closed-form observables of weighted variational graph states.
//!
//! The state for a graph `G` is `prod_(j,k) RZZ_jk(theta_jk) prod_i RX_i(phi_i) |0...0>`.
//! Everything here costs time polynomial in the local degree of the vertices
//! involved; nothing builds a state vector.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::pauli::PauliAxis;

/// Mean spin `(<X>, <Y>, <Z>)` of one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub mx: f64,
    pub my: f64,
    pub mz: f64,
}

impl BlochVector {
    /// Slack allowed on `|m| <= 1` for vectors computed in floating point.
    pub const NORM_SLACK: f64 = 1e-12;

    pub fn new(mx: f64, my: f64, mz: f64) -> Self {
        BlochVector { mx, my, mz }
    }

    pub fn norm(&self) -> f64 {
        (self.mx * self.mx + self.my * self.my + self.mz * self.mz).sqrt()
    }

    pub fn component(&self, axis: PauliAxis) -> f64 {
        match axis {
            PauliAxis::X => self.mx,
            PauliAxis::Y => self.my,
            PauliAxis::Z => self.mz,
        }
    }

    pub fn is_physical(&self) -> bool {
        self.norm() <= 1.0 + Self::NORM_SLACK
    }

    /// Geometric measure of entanglement `(1 - |m|) / 2`, with `|m|` clamped to 1.
    pub fn gme(&self) -> f64 {
        0.5 * (1.0 - self.norm().min(1.0))
    }
}

/// Per-neighbor factor `cos(theta_lj) + i sin(theta_lj) cos(phi_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborFactor(pub Complex64);

impl NeighborFactor {
    pub fn new(theta: f64, phi_neighbor: f64) -> Self {
        NeighborFactor(Complex64::new(theta.cos(), theta.sin() * phi_neighbor.cos()))
    }
}

fn neighbor_product<'a, I>(g: &WeightedGraph, incident: I) -> Complex64
where
    I: IntoIterator<Item = &'a (usize, f64)>,
{
    let phi = g.vertex_weights();
    incident
        .into_iter()
        .map(|&(j, theta)| NeighborFactor::new(theta, phi[j]).0)
        .product()
}

/// `<sigma^axis_l>` in the graph state.
pub fn pauli_mean(g: &WeightedGraph, l: usize, axis: PauliAxis) -> Result<f64> {
    let phi_l = g.phi(l)?;
    Ok(match axis {
        PauliAxis::Z => phi_l.cos(),
        PauliAxis::X => phi_l.sin() * neighbor_product(g, g.incident(l)?).im,
        PauliAxis::Y => -phi_l.sin() * neighbor_product(g, g.incident(l)?).re,
    })
}

pub fn bloch_vector(g: &WeightedGraph, l: usize) -> Result<BlochVector> {
    let phi_l = g.phi(l)?;
    let product = neighbor_product(g, g.incident(l)?);
    Ok(BlochVector::new(phi_l.sin() * product.im, -phi_l.sin() * product.re, phi_l.cos()))
}

/// Geometric measure of entanglement of qubit `l` with the rest, in `[0, 1/2]`.
pub fn gme(g: &WeightedGraph, l: usize) -> Result<f64> {
    let phi = g.vertex_weights();
    let phi_l = g.phi(l)?;
    let shrink: f64 = g
        .incident(l)?
        .iter()
        .map(|&(j, theta)| NeighborFactor::new(theta, phi[j]).0.norm_sqr())
        .product();
    Ok(gme_radicand(phi_l, shrink))
}

fn gme_radicand(phi_l: f64, shrink: f64) -> f64 {
    let (s, c) = phi_l.sin_cos();
    let radicand = (c * c + s * s * shrink).clamp(0.0, 1.0);
    0.5 - 0.5 * radicand.sqrt()
}

/// GME of a vertex of degree `degree` when every phase is `phi` and every coupling `theta`.
pub fn gme_uniform(phi: f64, theta: f64, degree: usize) -> f64 {
    let base = NeighborFactor::new(theta, phi).0.norm_sqr();
    gme_radicand(phi, base.powi(degree as i32))
}

/// GME of the center of `K_{1,4}`; `phi` lists center then leaves, `theta` the
/// couplings to leaves 1..4.
pub fn gme_star_center(phi: &[f64], theta: &[f64]) -> Result<f64> {
    if phi.len() != 5 || theta.len() != 4 {
        return Err(Error::InvalidArgument(format!(
            "K_1,4 needs 5 phases and 4 couplings, got {} and {}",
            phi.len(),
            theta.len()
        )));
    }
    let shrink: f64 = theta
        .iter()
        .zip(&phi[1..])
        .map(|(&t, &p)| NeighborFactor::new(t, p).0.norm_sqr())
        .product();
    Ok(gme_radicand(phi[0], shrink))
}

/// Two-qubit correlator `<sigma^a_l sigma^b_m>` for arbitrary graphs.
pub fn correlator(
    g: &WeightedGraph,
    l: usize,
    m: usize,
    a: PauliAxis,
    b: PauliAxis,
) -> Result<f64> {
    if l == m {
        return Err(Error::RepeatedVertex(l));
    }
    local_expectation(g, &[(l, a), (m, b)])
}

/// Expectation of a Pauli product on distinct vertices, evaluated locally.
///
/// Conjugating the product through the diagonal entangler leaves the operator
/// itself followed by `exp(-i theta_e Z_j Z_k)` for every edge with exactly one
/// endpoint on a flipped (X or Y) vertex. Splitting on the Z eigenvalues of the
/// flipped vertices turns that factor into a product of single-qubit phases on
/// their neighbors, which are then averaged in the `RX` product state where
/// `<Z_k> = cos(phi_k)`. Common neighbors pick up the summed angle
/// `s_l theta_lr + s_m theta_mr`. Cost is `2^f` times the summed degree of the
/// `f` flipped vertices.
pub fn local_expectation(g: &WeightedGraph, ops: &[(usize, PauliAxis)]) -> Result<f64> {
    for (i, &(v, _)) in ops.iter().enumerate() {
        g.check(v)?;
        if ops[..i].iter().any(|&(w, _)| w == v) {
            return Err(Error::RepeatedVertex(v));
        }
    }
    let flipped: Vec<(usize, PauliAxis)> = ops.iter().copied().filter(|(_, a)| a.flips()).collect();
    if flipped.len() > 16 {
        return Err(Error::InvalidArgument("too many flipped qubits for local evaluation".into()));
    }
    let phi = g.vertex_weights();
    let is_flipped = |v: usize| flipped.iter().any(|&(f, _)| f == v);

    // Non-flipped vertices that see a phase: (vertex, carries Z, [(flipped index, theta)]).
    type Touched = (usize, bool, Vec<(usize, f64)>);
    let mut touched: Vec<Touched> = ops
        .iter()
        .filter(|(_, a)| !a.flips())
        .map(|&(v, _)| (v, true, Vec::new()))
        .collect();
    for (fi, &(f, _)) in flipped.iter().enumerate() {
        for &(k, theta) in g.incident(f)? {
            if is_flipped(k) {
                continue;
            }
            match touched.iter_mut().find(|t| t.0 == k) {
                Some(entry) => entry.2.push((fi, theta)),
                None => touched.push((k, false, vec![(fi, theta)])),
            }
        }
    }

    // weights[fi][bit] = <p_f| A_f |bit><bit| p_f> with p = RX(phi)|0>
    let weights: Vec<[Complex64; 2]> = flipped
        .iter()
        .map(|&(f, axis)| {
            let (s, c) = (phi[f] / 2.0).sin_cos();
            let amp = [Complex64::new(c, 0.0), Complex64::new(0.0, -s)];
            let mat = axis.matrix();
            let mut w = [Complex64::new(0.0, 0.0); 2];
            for (bit, slot) in w.iter_mut().enumerate() {
                let bra_op: Complex64 = (0..2).map(|r| amp[r].conj() * mat[r][bit]).sum();
                *slot = bra_op * amp[bit];
            }
            w
        })
        .collect();

    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0usize..(1 << flipped.len()) {
        let spin = |fi: usize| if mask >> fi & 1 == 0 { 1.0 } else { -1.0 };
        let mut term: Complex64 =
            weights.iter().enumerate().map(|(fi, w)| w[mask >> fi & 1]).product();
        for (k, has_z, links) in &touched {
            let alpha: f64 = links.iter().map(|&(fi, theta)| spin(fi) * theta).sum();
            let (sa, ca) = alpha.sin_cos();
            let cos_phi = phi[*k].cos();
            term *= if *has_z {
                Complex64::new(ca * cos_phi, -sa)
            } else {
                Complex64::new(ca, -sa * cos_phi)
            };
        }
        total += term;
    }
    Ok(total.re)
}

/// Correlator of two vertices in a uniform graph (`phi` everywhere, `theta` on
/// every edge) whose neighborhoods, apart from each other, are disjoint.
///
/// `deg_l` and `deg_m` count the neighbors of `l` and `m` other than the
/// partner vertex; `adjacent` says whether `l` and `m` share an edge.
pub fn correlator_uniform(
    phi: f64,
    theta: f64,
    deg_l: usize,
    deg_m: usize,
    adjacent: bool,
    a: PauliAxis,
    b: PauliAxis,
) -> f64 {
    use PauliAxis::*;

    let q = NeighborFactor::new(theta, phi).0;
    let ql = q.powi(deg_l as i32);
    let qm = q.powi(deg_m as i32);
    let (sp, cp) = phi.sin_cos();
    // coupling between l and m; vanishes when they are not adjacent
    let (st, ct) = if adjacent { theta.sin_cos() } else { (0.0, 1.0) };

    match (a, b) {
        (Z, Z) => cp * cp,
        (X, Z) => sp * ct * cp * ql.im + sp * st * ql.re,
        (Y, Z) => -sp * ct * cp * ql.re + sp * st * ql.im,
        (X, Y) => -sp * sp * ql.im * qm.re,
        (X, X) => sp * sp * ql.im * qm.im,
        (Y, Y) => sp * sp * ql.re * qm.re,
        (Z, X) | (Z, Y) | (Y, X) => correlator_uniform(phi, theta, deg_m, deg_l, adjacent, b, a),
    }
}
