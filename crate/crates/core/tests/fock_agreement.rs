//! Closed forms versus the truncated-Fock-space oracle.
//!
//! The full interferometer pipeline — squeeze, fictitious beam splitter,
//! inverse squeeze — is simulated at small amplitudes and compared with
//! the balanced closed-form moments; photon bookkeeping is read off after
//! the first squeeze; the Fisher-information closed form is compared with
//! the overlap definition differentiated numerically.

use num_complex::Complex64;
use sprshift_core::deg_to_rad;
use sprshift_core::fock_oracle::{
    numerical_qfi, select_cutoff, FockState, Mode, QfiParameter, DEFAULT_QFI_STEP,
};
use sprshift_core::ifshift::BeamSpec;
use sprshift_core::interferometer::{
    homodyne_mean, homodyne_variance, photon_numbers, CoherentInputs, OpaSettings,
};
use sprshift_core::metrology;
use sprshift_core::optics::{reflectance, LayerStack};
use std::f64::consts::PI;

fn reference_stack() -> LayerStack {
    LayerStack::new(2.22, Complex64::new(-20.327, 1.862), 46e-9, 780e-9).unwrap()
}

/// Run the balanced pipeline and return (mean, variance) at the sensing
/// output plus (n_a, n_total) after the first OPA.
fn simulate(
    inputs: &CoherentInputs,
    g: f64,
    eta: f64,
    cutoff: usize,
) -> Result<(f64, f64, f64, f64), sprshift_core::fock_oracle::FockError> {
    let mut state = FockState::prepare(inputs, cutoff)?;
    state.apply_two_mode_squeeze(g, 0.0, (Mode::Signal, Mode::Reference))?;
    let n_a = state.moments(Mode::Signal).mean_n;
    let n_total = n_a + state.moments(Mode::Reference).mean_n;
    state.apply_beam_splitter(eta, (Mode::Signal, Mode::Ancilla))?;
    state.apply_two_mode_squeeze(g, PI, (Mode::Signal, Mode::Reference))?;
    let m = state.moments(Mode::Signal);
    Ok((m.mean_x, m.mean_x_sq - m.mean_x * m.mean_x, n_a, n_total))
}

#[test]
fn closed_form_moments_match_the_oracle() {
    for &(a, b) in &[(0.5, 0.5), (1.0, 0.3), (0.0, 1.0), (0.8, 0.8)] {
        for &g in &[0.2, 0.3, 0.5] {
            let inputs = CoherentInputs::new(a, 0.0, b, PI);
            let opa = OpaSettings::balanced(g);
            let cutoff = select_cutoff(&inputs, g).unwrap();
            for &eta in &[0.1, 0.5, 0.7, 0.9] {
                let (mean, var, n_a, n_tot) = simulate(&inputs, g, eta, cutoff).unwrap();
                let mean_cf = homodyne_mean(&inputs, &opa, eta).unwrap();
                let var_cf = homodyne_variance(&opa, eta).unwrap();
                let (na_cf, nt_cf) = photon_numbers(&inputs, &opa).unwrap();
                assert!(
                    (mean - mean_cf).abs() < 1e-8,
                    "mean {mean} vs {mean_cf} at a={a} b={b} g={g} eta={eta}"
                );
                assert!(
                    (var - var_cf).abs() < 1e-8,
                    "var {var} vs {var_cf} at a={a} b={b} g={g} eta={eta}"
                );
                assert!((n_a - na_cf).abs() < 1e-8, "n_a {n_a} vs {na_cf}");
                assert!((n_tot - nt_cf).abs() < 1e-8, "n_tot {n_tot} vs {nt_cf}");
            }
        }
    }
}

#[test]
fn oracle_confirms_variance_is_input_independent() {
    let g = 0.3;
    let eta = 0.4;
    let opa = OpaSettings::balanced(g);
    let expected = homodyne_variance(&opa, eta).unwrap();
    for &(a, ta, b, tb) in &[
        (0.2, 0.4, 0.9, 2.0),
        (0.7, 1.2, 0.1, 5.5),
        (1.0, 3.0, 1.0, 0.3),
    ] {
        let inputs = CoherentInputs::new(a, ta, b, tb);
        let cutoff = select_cutoff(&inputs, g).unwrap();
        let (_, var, _, _) = simulate(&inputs, g, eta, cutoff).unwrap();
        assert!(
            (var - expected).abs() < 1e-8,
            "variance {var} moved with inputs ({a},{ta},{b},{tb})"
        );
    }
}

#[test]
fn tighter_photon_accuracy_at_the_documented_point() {
    let inputs = CoherentInputs::new(0.5, 0.0, 0.5, PI);
    let g = 0.2;
    let cutoff = select_cutoff(&inputs, g).unwrap();
    let (_, _, n_a, n_tot) = simulate(&inputs, g, 0.5, cutoff).unwrap();
    let (na_cf, nt_cf) = photon_numbers(&inputs, &OpaSettings::balanced(g)).unwrap();
    assert!((n_a - na_cf).abs() < 1e-10);
    assert!((n_tot - nt_cf).abs() < 1e-10);
}

#[test]
fn fisher_information_matches_the_overlap_definition() {
    let stack = reference_stack();
    let beam = BeamSpec::for_stack(1, 1e-3, &stack).unwrap();
    let inputs = CoherentInputs::new(0.5, 0.0, 0.5, PI);
    let g = 0.2;
    let opa = OpaSettings::balanced(g);
    let cutoff = select_cutoff(&inputs, g).unwrap();
    for &deg in &[43.5, 43.8] {
        let theta = deg_to_rad(deg);
        let (f_shift_cf, f_theta_cf) = metrology::qfi(&inputs, &opa, &stack, &beam, theta).unwrap();
        let f_theta = numerical_qfi(
            &inputs,
            g,
            0.0,
            &stack,
            &beam,
            theta,
            QfiParameter::IncidentAngle,
            DEFAULT_QFI_STEP,
            cutoff,
        )
        .unwrap();
        let rel = (f_theta - f_theta_cf).abs() / f_theta_cf;
        assert!(
            rel < 1e-4,
            "F_theta {f_theta} vs {f_theta_cf} (rel {rel:.2e}) at {deg}"
        );
        let f_shift = numerical_qfi(
            &inputs,
            g,
            0.0,
            &stack,
            &beam,
            theta,
            QfiParameter::Shift,
            DEFAULT_QFI_STEP,
            cutoff,
        )
        .unwrap();
        let rel = (f_shift - f_shift_cf).abs() / f_shift_cf;
        assert!(
            rel < 1e-4,
            "F_shift {f_shift} vs {f_shift_cf} (rel {rel:.2e}) at {deg}"
        );
    }
}

#[test]
fn fisher_information_scales_with_the_sensing_occupation() {
    // Doubling the alpha amplitude at fixed eta and g scales F_theta by
    // the ratio of sensing-arm photon numbers.
    let stack = reference_stack();
    let beam = BeamSpec::for_stack(1, 1e-3, &stack).unwrap();
    let theta = deg_to_rad(43.5);
    let g = 0.2;
    let small = CoherentInputs::new(0.4, 0.0, 0.4, PI);
    let large = CoherentInputs::new(0.8, 0.0, 0.4, PI);
    let run = |inputs: &CoherentInputs| {
        let cutoff = select_cutoff(inputs, g).unwrap();
        numerical_qfi(
            inputs,
            g,
            0.0,
            &stack,
            &beam,
            theta,
            QfiParameter::IncidentAngle,
            DEFAULT_QFI_STEP,
            cutoff,
        )
        .unwrap()
    };
    let f_small = run(&small);
    let f_large = run(&large);
    let opa = OpaSettings::balanced(g);
    let (n_small, _) = photon_numbers(&small, &opa).unwrap();
    let (n_large, _) = photon_numbers(&large, &opa).unwrap();
    let expected_ratio = n_large / n_small;
    let ratio = f_large / f_small;
    assert!(
        (ratio - expected_ratio).abs() < 1e-4 * expected_ratio,
        "ratio {ratio} vs {expected_ratio}"
    );
}

#[test]
fn eta_at_the_oracle_angle_is_fock_friendly() {
    // The small-scale comparisons above sample the real stack at 43.5
    // degrees; pin the transmissivity they see.
    let refl = reflectance(&reference_stack(), deg_to_rad(43.5)).unwrap();
    assert!((refl.eta - 0.1827710570269603).abs() < 1e-12);
}
