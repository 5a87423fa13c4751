use std::ffi::{CStr, CString};
use std::ptr;

use graphlab::graph::generators;
use graphlab::{analytic, PauliAxis};
use graphlab_ffi::*;

const AXES: [u32; 3] = [GRAPHLAB_AXIS_X, GRAPHLAB_AXIS_Y, GRAPHLAB_AXIS_Z];

fn last_error() -> String {
    unsafe { CStr::from_ptr(graphlab_last_error_message()) }.to_string_lossy().into_owned()
}

fn star(leaves: usize, phi: f64, theta: f64) -> *mut GraphlabGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { graphlab_graph_star(leaves, phi, theta, &mut g) }, GraphlabStatus::Ok);
    g
}

#[test]
fn analytic_calls_match_the_library() {
    let g = star(4, 0.7, 1.1);
    let rust = generators::star(4, 0.7, 1.1).unwrap();
    unsafe {
        assert_eq!(graphlab_graph_num_vertices(g), 5);
        let mut v = 0.0;
        let mut bloch = [0.0; 3];
        assert_eq!(graphlab_bloch_vector(g, 0, bloch.as_mut_ptr()), GraphlabStatus::Ok);
        for (i, code) in AXES.into_iter().enumerate() {
            assert_eq!(graphlab_pauli_mean(g, 0, code, &mut v), GraphlabStatus::Ok);
            assert_eq!(v, analytic::pauli_mean(&rust, 0, PauliAxis::ALL[i]).unwrap());
            assert_eq!(bloch[i], v);
        }
        assert_eq!(graphlab_gme(g, 0, &mut v), GraphlabStatus::Ok);
        assert_eq!(v, analytic::gme(&rust, 0).unwrap());
        for (i, a) in AXES.into_iter().enumerate() {
            for (j, b) in AXES.into_iter().enumerate() {
                let mut closed = 0.0;
                let mut exact = 0.0;
                assert_eq!(graphlab_correlator(g, 0, 1, a, b, &mut closed), GraphlabStatus::Ok);
                assert_eq!(graphlab_exact_correlator(g, 0, 1, a, b, 0, &mut exact), GraphlabStatus::Ok);
                let expected = analytic::correlator(&rust, 0, 1, PauliAxis::ALL[i], PauliAxis::ALL[j]).unwrap();
                assert_eq!(closed, expected);
                assert!((closed - exact).abs() < 1e-12);
            }
        }
        graphlab_graph_free(g);
    }
}

#[test]
fn uniform_and_star_center_entry_points() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(graphlab_gme_uniform(0.5, 0.9, 3, &mut v), GraphlabStatus::Ok);
        assert_eq!(v, analytic::gme_uniform(0.5, 0.9, 3));
        assert_eq!(graphlab_gme_uniform(0.5, 0.9, -1, &mut v), GraphlabStatus::InvalidArgument);
        assert!(last_error().contains("negative"));

        assert_eq!(
            graphlab_correlator_uniform(0.5, 0.9, 2, 1, 1, GRAPHLAB_AXIS_X, GRAPHLAB_AXIS_Z, &mut v),
            GraphlabStatus::Ok
        );
        assert_eq!(v, analytic::correlator_uniform(0.5, 0.9, 2, 1, true, PauliAxis::X, PauliAxis::Z));

        let phi = [0.3, 0.4, 0.5, 0.6, 0.7];
        let theta = [1.0, 1.1, 1.2, 1.3];
        assert_eq!(graphlab_gme_star_center(phi.as_ptr(), 5, theta.as_ptr(), 4, &mut v), GraphlabStatus::Ok);
        assert_eq!(v, analytic::gme_star_center(&phi, &theta).unwrap());
        assert_eq!(
            graphlab_gme_star_center(phi.as_ptr(), 4, theta.as_ptr(), 4, &mut v),
            GraphlabStatus::InvalidArgument
        );
    }
}

#[test]
fn parse_and_build_graphs() {
    let doc = CString::new(r#"{"n": 3, "phi": 0.5, "edges": [[0, 1, 0.3], [1, 2, 0.4]]}"#).unwrap();
    let mut parsed = ptr::null_mut();
    let mut built = ptr::null_mut();
    let phi = [0.5; 3];
    let ends = [0usize, 1, 1, 2];
    let theta = [0.3, 0.4];
    unsafe {
        assert_eq!(graphlab_graph_parse(doc.as_ptr(), &mut parsed), GraphlabStatus::Ok, "{}", last_error());
        assert_eq!(
            graphlab_graph_new(3, phi.as_ptr(), 2, ends.as_ptr(), theta.as_ptr(), &mut built),
            GraphlabStatus::Ok
        );
        let (mut a, mut b) = (0.0, 0.0);
        graphlab_correlator(parsed, 0, 2, GRAPHLAB_AXIS_Y, GRAPHLAB_AXIS_X, &mut a);
        graphlab_correlator(built, 0, 2, GRAPHLAB_AXIS_Y, GRAPHLAB_AXIS_X, &mut b);
        assert_eq!(a, b);
        graphlab_graph_free(parsed);
        graphlab_graph_free(built);

        let bad = CString::new(r#"{"n": 2, "phi": 0.5, "edges": [[0, 0, 0.3]]}"#).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(graphlab_graph_parse(bad.as_ptr(), &mut g), GraphlabStatus::Parse);
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        let loose = [0usize, 5];
        assert_eq!(
            graphlab_graph_new(3, phi.as_ptr(), 1, loose.as_ptr(), theta.as_ptr(), &mut g),
            GraphlabStatus::InvalidArgument
        );
    }
}

#[test]
fn argument_errors_are_reported() {
    let g = star(2, 0.4, 0.8);
    unsafe {
        let mut v = 0.0;
        assert_eq!(graphlab_pauli_mean(g, 9, GRAPHLAB_AXIS_X, &mut v), GraphlabStatus::InvalidArgument);
        assert_eq!(graphlab_pauli_mean(g, 0, 7, &mut v), GraphlabStatus::InvalidArgument);
        assert_eq!(graphlab_pauli_mean(ptr::null(), 0, GRAPHLAB_AXIS_X, &mut v), GraphlabStatus::NullPointer);
        assert_eq!(graphlab_gme(g, 0, ptr::null_mut()), GraphlabStatus::NullPointer);
        assert_eq!(graphlab_correlator(g, 1, 1, 0, 0, &mut v), GraphlabStatus::InvalidArgument);
        assert_eq!(graphlab_exact_correlator(g, 0, 1, 0, 0, 2, &mut v), GraphlabStatus::TooManyQubits);
        graphlab_graph_free(g);
        graphlab_graph_free(ptr::null_mut());
        assert_eq!(graphlab_graph_num_vertices(ptr::null()), 0);
    }
}

#[test]
fn sampled_estimates_are_seeded() {
    let g = star(4, 1.0, 0.9);
    let noise = GraphlabNoise { readout_flip: 0.01, err_1q: 1e-4, err_2q: 1e-2 };
    unsafe {
        let mut exact = 0.0;
        graphlab_correlator(g, 0, 1, GRAPHLAB_AXIS_X, GRAPHLAB_AXIS_Z, &mut exact);
        let shots = 20_000;
        let tol = 5.0 / (shots as f64).sqrt();
        let (mut i1, mut i2, mut n1, mut n2) = (0.0, 0.0, 0.0, 0.0);
        for (out, noise) in [(&mut i1, ptr::null()), (&mut i2, ptr::null()), (&mut n1, &noise as *const _), (&mut n2, &noise)] {
            let s = graphlab_estimate_correlator(g, 0, 1, GRAPHLAB_AXIS_X, GRAPHLAB_AXIS_Z, shots, 11, noise, out);
            assert_eq!(s, GraphlabStatus::Ok);
        }
        assert_eq!(i1, i2);
        assert_eq!(n1, n2);
        assert!((i1 - exact).abs() < tol);
        assert!((n1 - exact).abs() < 0.15);

        let mut z = 0.0;
        assert_eq!(graphlab_estimate_pauli_mean(g, 2, GRAPHLAB_AXIS_Z, shots, 3, ptr::null(), &mut z), GraphlabStatus::Ok);
        assert!((z - 1.0f64.cos()).abs() < tol);

        let bad = GraphlabNoise { readout_flip: 1.5, err_1q: 0.0, err_2q: 0.0 };
        assert_eq!(
            graphlab_estimate_pauli_mean(g, 0, GRAPHLAB_AXIS_Z, 10, 3, &bad, &mut z),
            GraphlabStatus::InvalidArgument
        );
        graphlab_graph_free(g);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(graphlab_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
