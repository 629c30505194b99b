use std::f64::consts::{FRAC_PI_2, PI};

use qstirling::oracle::{
    energy_expectation, lindblad_steady_state_tls, squeezed_thermal_state_auto,
    squeezed_thermal_state_ho, stationary_solve_tls, tls_stationary_state, von_neumann_entropy,
    HamiltonianSpec, LindbladParams, TOLERANCES,
};
use qstirling::{ho, tls, Reservoir};

#[test]
fn two_level_closed_forms_match_matrix_state() {
    for i in 0..15 {
        let x = 1e-2 * (2000f64).powf(i as f64 / 14.0);
        for j in 0..9 {
            let r = 0.25 * j as f64;
            let res = Reservoir::squeezed(1.0, r, 0.0).unwrap();
            let rho = tls_stationary_state(x, 1.0, r).unwrap();
            let e = energy_expectation(&rho, &HamiltonianSpec::TwoLevel { omega: x }).unwrap();
            assert!((e - tls::internal_energy(x, &res).unwrap()).abs() < 1e-10);
            let s = von_neumann_entropy(&rho);
            assert!(
                (s - tls::entropy(x, &res).unwrap()).abs() < 1e-10,
                "x={x} r={r}"
            );
        }
    }
}

#[test]
fn steady_state_ignores_phase_and_rate() {
    let mut states = Vec::new();
    for &phi in &[0.0, FRAC_PI_2, PI] {
        for &gamma in &[0.1, 1.0, 10.0] {
            let res = Reservoir::squeezed(1.5, 0.6, phi).unwrap();
            let p = LindbladParams::new(gamma, 1.0, res).unwrap();
            let ss = lindblad_steady_state_tls(&p).unwrap();
            assert!(ss.min_eigenvalue >= TOLERANCES.integration_positivity);
            let direct = stationary_solve_tls(&p).unwrap();
            assert!(ss.state.trace_distance(&direct).unwrap() < 1e-9);
            states.push(ss.state);
        }
    }
    for s in &states[1..] {
        assert!(s.trace_distance(&states[0]).unwrap() < 1e-9);
    }
    let expected = tls_stationary_state(1.0, 1.5, 0.6).unwrap();
    assert!(states[0].trace_distance(&expected).unwrap() < 1e-8);
}

#[test]
fn oscillator_energy_converges_in_cutoff() {
    let (omega, t, r) = (1.0, 2.0, 0.8);
    let closed = ho::internal_energy(omega, &Reservoir::squeezed(t, r, 0.0).unwrap()).unwrap();
    let auto = squeezed_thermal_state_auto(omega, t, r, 0.0).unwrap();
    let doubled = squeezed_thermal_state_ho(omega, t, r, 0.0, 2 * auto.cutoff()).unwrap();
    let (a, b) = (auto.mean_energy().unwrap(), doubled.mean_energy().unwrap());
    assert!((a - b).abs() < 1e-9 * a);
    assert!((a - closed).abs() < 1e-8 * closed);
}

#[test]
fn oscillator_scalars_ignore_squeeze_phase() {
    let a = squeezed_thermal_state_ho(1.0, 1.0, 0.7, 0.0, 160).unwrap();
    let b = squeezed_thermal_state_ho(1.0, 1.0, 0.7, 2.2, 160).unwrap();
    assert!((a.mean_energy().unwrap() - b.mean_energy().unwrap()).abs() < 1e-9);
    let (sa, sb) = (
        a.von_neumann_entropy().unwrap(),
        b.von_neumann_entropy().unwrap(),
    );
    assert!((sa - sb).abs() < 1e-9);
    assert!((a.anomalous_moment() - b.anomalous_moment()).norm() > 0.1);
}

#[test]
fn cutoff_at_the_oscillator_bound() {
    // n cosh 2r = 20 at the edge of the supported range
    let omega = 1.0;
    let t = omega / (1.0 + 1.0 / 10.0f64).ln();
    let r = 0.5 * (2.0f64).acosh();
    let closed = ho::internal_energy(omega, &Reservoir::squeezed(t, r, 0.0).unwrap()).unwrap();
    let s = squeezed_thermal_state_auto(omega, t, r, 0.0).unwrap();
    assert!((s.mean_energy().unwrap() - closed).abs() < 1e-8 * closed);
}
