//! C ABI for `graphlab`.
//!
//! Every fallible call returns a [`GraphlabStatus`] and writes its result
//! through an out pointer. On failure, [`graphlab_last_error_message`]
//! describes the most recent error on the calling thread. Graphs are opaque
//! [`GraphlabGraph`] handles released with [`graphlab_graph_free`].
//!
//! Axes are passed as `GRAPHLAB_AXIS_X`, `GRAPHLAB_AXIS_Y` or `GRAPHLAB_AXIS_Z`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use graphlab::graph::{generators, parse_graph};
use graphlab::noise::{self, NoiseModel, TrajectoryConfig};
use graphlab::sim::{self, Simulator};
use graphlab::{analytic, Error, PauliAxis, WeightedGraph};

pub const GRAPHLAB_AXIS_X: u32 = 0;
pub const GRAPHLAB_AXIS_Y: u32 = 1;
pub const GRAPHLAB_AXIS_Z: u32 = 2;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    TooManyQubits = 4,
    Internal = 5,
}

/// Opaque weighted graph.
pub struct GraphlabGraph(WeightedGraph);

/// Noise parameters for sampled estimates: readout bit-flip probability and
/// depolarizing error probabilities after one- and two-qubit gates.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GraphlabNoise {
    pub readout_flip: f64,
    pub err_1q: f64,
    pub err_2q: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(GraphlabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => GraphlabStatus::Parse,
            Error::TooManyQubits { .. } => GraphlabStatus::TooManyQubits,
            _ => GraphlabStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(GraphlabStatus::InvalidArgument, msg.into())
}

fn null(name: &str) -> Failure {
    Failure(GraphlabStatus::NullPointer, format!("{name} is null"))
}

/// Runs `f`, storing its value in `out` and mapping errors and panics to a status.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Failure>) -> GraphlabStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return GraphlabStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null above; the caller provides writable storage.
            unsafe { out.write(v) };
            GraphlabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GraphlabStatus::Internal
        }
    }
}

fn axis(code: u32) -> Result<PauliAxis, Failure> {
    match code {
        GRAPHLAB_AXIS_X => Ok(PauliAxis::X),
        GRAPHLAB_AXIS_Y => Ok(PauliAxis::Y),
        GRAPHLAB_AXIS_Z => Ok(PauliAxis::Z),
        _ => Err(invalid(format!("unknown axis code {code}"))),
    }
}

unsafe fn graph_ref<'a>(g: *const GraphlabGraph) -> Result<&'a WeightedGraph, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(name))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

fn boxed(g: WeightedGraph) -> *mut GraphlabGraph {
    Box::into_raw(Box::new(GraphlabGraph(g)))
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; empty if none failed.
#[no_mangle]
pub extern "C" fn graphlab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn graphlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a JSON graph document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_graph_parse(json: *const c_char, out: *mut *mut GraphlabGraph) -> GraphlabStatus {
    guard(out, || {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| Failure(GraphlabStatus::Parse, e.to_string()))?;
        let g = parse_graph(text).map_err(|e| Failure(GraphlabStatus::Parse, e.to_string()))?;
        Ok(boxed(g))
    })
}

/// Builds a graph from `n` vertex phases and `n_edges` edges. Edge `i` joins
/// `endpoints[2i]` and `endpoints[2i+1]` with coupling `theta[i]`.
///
/// # Safety
/// `phi` must hold `n` values, `endpoints` `2 * n_edges`, `theta` `n_edges`.
#[no_mangle]
pub unsafe extern "C" fn graphlab_graph_new(
    n: usize,
    phi: *const f64,
    n_edges: usize,
    endpoints: *const usize,
    theta: *const f64,
    out: *mut *mut GraphlabGraph,
) -> GraphlabStatus {
    guard(out, || {
        let phi = slice(phi, n, "phi")?;
        let ends = slice(endpoints, n_edges * 2, "endpoints")?;
        let theta = slice(theta, n_edges, "theta")?;
        let edges = (0..n_edges).map(|i| (ends[2 * i], ends[2 * i + 1], theta[i]));
        WeightedGraph::new(phi.to_vec(), edges).map(boxed).map_err(|e| invalid(e.to_string()))
    })
}

/// Star graph with center 0 and `leaves` leaves, uniform weights.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_graph_star(
    leaves: usize,
    phi: f64,
    theta: f64,
    out: *mut *mut GraphlabGraph,
) -> GraphlabStatus {
    guard(out, || Ok(boxed(generators::star(leaves, phi, theta)?)))
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from a graphlab constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn graphlab_graph_free(g: *mut GraphlabGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn graphlab_graph_num_vertices(g: *const GraphlabGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Closed-form mean spin `<sigma^axis_l>`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_pauli_mean(
    g: *const GraphlabGraph,
    l: usize,
    axis_code: u32,
    out: *mut f64,
) -> GraphlabStatus {
    guard(out, || Ok(analytic::pauli_mean(graph_ref(g)?, l, axis(axis_code)?)?))
}

/// Closed-form Bloch vector of vertex `l`, written as x, y, z into `out[0..3]`.
///
/// # Safety
/// `g` must be a live handle and `out` must hold three doubles.
#[no_mangle]
pub unsafe extern "C" fn graphlab_bloch_vector(g: *const GraphlabGraph, l: usize, out: *mut f64) -> GraphlabStatus {
    guard(out.cast::<[f64; 3]>(), || {
        let b = analytic::bloch_vector(graph_ref(g)?, l)?;
        Ok([b.mx, b.my, b.mz])
    })
}

/// Geometric measure of entanglement of vertex `l`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_gme(g: *const GraphlabGraph, l: usize, out: *mut f64) -> GraphlabStatus {
    guard(out, || Ok(analytic::gme(graph_ref(g)?, l)?))
}

/// GME of a vertex of degree `degree` in a uniformly weighted graph.
/// A negative degree is an invalid argument.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_gme_uniform(phi: f64, theta: f64, degree: i64, out: *mut f64) -> GraphlabStatus {
    guard(out, || {
        let degree = usize::try_from(degree).map_err(|_| invalid(format!("negative degree {degree}")))?;
        Ok(analytic::gme_uniform(phi, theta, degree))
    })
}

/// GME of the center of a five-vertex star: `phi[0]` is the center phase,
/// `phi[1..5]` the leaf phases, `theta[i]` the coupling to leaf `i + 1`.
///
/// # Safety
/// `phi` must hold `n_phi` values, `theta` `n_theta`, and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_gme_star_center(
    phi: *const f64,
    n_phi: usize,
    theta: *const f64,
    n_theta: usize,
    out: *mut f64,
) -> GraphlabStatus {
    guard(out, || Ok(analytic::gme_star_center(slice(phi, n_phi, "phi")?, slice(theta, n_theta, "theta")?)?))
}

/// Closed-form correlator `<sigma^a_l sigma^b_m>`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_correlator(
    g: *const GraphlabGraph,
    l: usize,
    m: usize,
    a: u32,
    b: u32,
    out: *mut f64,
) -> GraphlabStatus {
    guard(out, || Ok(analytic::correlator(graph_ref(g)?, l, m, axis(a)?, axis(b)?)?))
}

/// Correlator in a uniformly weighted graph. `deg_l` and `deg_m` count the
/// neighbors of each vertex other than its partner; `adjacent` is nonzero
/// when the two vertices share an edge.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn graphlab_correlator_uniform(
    phi: f64,
    theta: f64,
    deg_l: i64,
    deg_m: i64,
    adjacent: i32,
    a: u32,
    b: u32,
    out: *mut f64,
) -> GraphlabStatus {
    guard(out, || {
        let deg = |d: i64| usize::try_from(d).map_err(|_| invalid(format!("negative degree {d}")));
        Ok(analytic::correlator_uniform(phi, theta, deg(deg_l)?, deg(deg_m)?, adjacent != 0, axis(a)?, axis(b)?))
    })
}

/// Exact `<sigma^a_l sigma^b_m>` from the simulated statevector, `l != m`.
/// `max_qubits` of 0 selects the default cap.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_exact_correlator(
    g: *const GraphlabGraph,
    l: usize,
    m: usize,
    a: u32,
    b: u32,
    max_qubits: usize,
    out: *mut f64,
) -> GraphlabStatus {
    guard(out, || {
        let g = graph_ref(g)?;
        if l == m {
            return Err(Error::RepeatedVertex(l).into());
        }
        let state = simulator(max_qubits).run(&sim::build_graph_circuit(g))?;
        Ok(sim::expectation(&state, &[(l, axis(a)?), (m, axis(b)?)])?)
    })
}

fn simulator(max_qubits: usize) -> Simulator {
    if max_qubits == 0 {
        Simulator::default()
    } else {
        Simulator::new(max_qubits)
    }
}

/// Shot estimate of `<sigma^a_l sigma^b_m>`. With `noise` null the ideal
/// statevector is sampled; otherwise the transpiled circuit runs under the
/// given noise.
///
/// # Safety
/// `g` must be a live handle, `noise` null or readable, `out` writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn graphlab_estimate_correlator(
    g: *const GraphlabGraph,
    l: usize,
    m: usize,
    a: u32,
    b: u32,
    shots: u64,
    seed: u64,
    noise: *const GraphlabNoise,
    out: *mut f64,
) -> GraphlabStatus {
    guard(out, || {
        let g = graph_ref(g)?;
        let (a, b) = (axis(a)?, axis(b)?);
        let circuit = sim::build_graph_circuit(g);
        match noise.as_ref() {
            None => Ok(sim::estimate_correlator(&circuit, l, m, a, b, shots, seed)?),
            Some(n) => {
                let model = NoiseModel::new(n.readout_flip, n.err_1q, n.err_2q)?;
                let bc = noise::transpile(&circuit)?;
                Ok(noise::noisy_estimate_correlator(&bc, &model, l, m, a, b, &TrajectoryConfig::new(shots, seed))?)
            }
        }
    })
}

/// Shot estimate of `<sigma^axis_l>`; `noise` as in
/// [`graphlab_estimate_correlator`].
///
/// # Safety
/// `g` must be a live handle, `noise` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphlab_estimate_pauli_mean(
    g: *const GraphlabGraph,
    l: usize,
    axis_code: u32,
    shots: u64,
    seed: u64,
    noise: *const GraphlabNoise,
    out: *mut f64,
) -> GraphlabStatus {
    guard(out, || {
        let g = graph_ref(g)?;
        let ax = axis(axis_code)?;
        let circuit = sim::build_graph_circuit(g);
        match noise.as_ref() {
            None => Ok(sim::estimate_pauli_mean(&circuit, l, ax, shots, seed)?),
            Some(n) => {
                let model = NoiseModel::new(n.readout_flip, n.err_1q, n.err_2q)?;
                let bc = noise::transpile(&circuit)?;
                Ok(noise::noisy_estimate_pauli_mean(&bc, &model, l, ax, &TrajectoryConfig::new(shots, seed))?)
            }
        }
    })
}
