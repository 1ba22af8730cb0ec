//! Property tests for the algebraic invariants of the optical stack and
//! the SU(1,1) coefficient algebra.

use num_complex::Complex64;
use proptest::prelude::*;
use sprshift_core::ifshift::{if_shift, BeamSpec};
use sprshift_core::interferometer::{
    homodyne_mean, homodyne_variance, mean_via_w, variance_via_w, w_coefficients, CoherentInputs,
    OpaSettings,
};
use sprshift_core::optics::{fresnel_tm, kretschmann_reflection, normal_wavevector, LayerStack};

const TAU: f64 = 2.0 * std::f64::consts::PI;

#[test]
fn values_are_shareable_across_threads() {
    fn check<T: Send + Sync>() {}
    check::<LayerStack>();
    check::<sprshift_core::optics::ComplexReflection>();
    check::<BeamSpec>();
    check::<CoherentInputs>();
    check::<OpaSettings>();
    check::<sprshift_core::metrology::SensitivityReport>();
    check::<sprshift_core::fock_oracle::FockState>();
}

proptest! {
    #[test]
    fn fresnel_is_antisymmetric_under_interface_swap(
        re_n in -30.0f64..4.0,
        im_n in 0.0f64..3.0,
        re_m in -30.0f64..4.0,
        im_m in 0.0f64..3.0,
        theta in 0.05f64..1.5,
    ) {
        let stack = LayerStack::new(2.22, Complex64::new(-20.327, 1.862), 46e-9, 780e-9).unwrap();
        let eps_n = Complex64::new(re_n, im_n);
        let eps_m = Complex64::new(re_m, im_m);
        let k_n = normal_wavevector(eps_n, theta, &stack);
        let k_m = normal_wavevector(eps_m, theta, &stack);
        if let (Ok(fwd), Ok(bwd)) = (
            fresnel_tm(eps_n, eps_m, k_n, k_m),
            fresnel_tm(eps_m, eps_n, k_m, k_n),
        ) {
            prop_assert!((fwd + bwd).norm() < 1e-12 * (1.0 + fwd.norm()));
        }
    }

    #[test]
    fn zero_thickness_composition_collapses(
        eps_p in 1.5f64..3.5,
        theta in 0.1f64..1.45,
    ) {
        let eps_g = Complex64::new(-20.327, 1.862);
        let stack = LayerStack::new(eps_p, eps_g, 0.0, 780e-9).unwrap();
        let r = kretschmann_reflection(&stack, theta).unwrap().r;
        let k_p = normal_wavevector(Complex64::new(eps_p, 0.0), theta, &stack);
        let k_v = normal_wavevector(Complex64::new(1.0, 0.0), theta, &stack);
        let direct = fresnel_tm(
            Complex64::new(eps_p, 0.0),
            Complex64::new(1.0, 0.0),
            k_p,
            k_v,
        ).unwrap();
        prop_assert!((r - direct).norm() <= 1e-12 * direct.norm().max(1e-6));
    }

    #[test]
    fn absorbing_stacks_never_amplify(
        re_g in -30.0f64..-5.0,
        im_g in 0.05f64..3.0,
        d_nm in 5.0f64..90.0,
        theta in 0.05f64..1.5,
    ) {
        let stack = LayerStack::new(2.22, Complex64::new(re_g, im_g), d_nm * 1e-9, 780e-9).unwrap();
        let refl = kretschmann_reflection(&stack, theta).unwrap();
        prop_assert!(refl.r.norm_sqr() <= 1.0 + 1e-9);
        // Branch invariant along the way: every layer decays downward.
        for eps in [Complex64::new(2.22, 0.0), stack.eps_gold(), Complex64::new(1.0, 0.0)] {
            prop_assert!(normal_wavevector(eps, theta, &stack).im >= 0.0);
        }
    }

    #[test]
    fn commutators_hold_for_any_settings(
        g1 in 0.0f64..2.0,
        t1 in 0.0f64..TAU,
        g2 in 0.0f64..2.0,
        t2 in 0.0f64..TAU,
        eta in 0.0f64..1.0,
    ) {
        let w = w_coefficients(&OpaSettings::general(g1, t1, g2, t2), eta);
        let (ra, rb) = w.commutator_residuals();
        prop_assert!(ra.abs() < 1e-11);
        prop_assert!(rb.abs() < 1e-11);
        prop_assert!(w.cross_commutator_residual().norm() < 1e-11);
    }

    #[test]
    fn balanced_closed_forms_agree_with_the_w_route(
        a in 0.0f64..2.0,
        ta in 0.0f64..TAU,
        b in 0.0f64..2.0,
        tb in 0.0f64..TAU,
        g in 0.0f64..1.2,
        eta in 0.0f64..1.0,
    ) {
        let inputs = CoherentInputs::new(a, ta, b, tb);
        let opa = OpaSettings::balanced(g);
        let w = w_coefficients(&opa, eta);
        let mean_closed = homodyne_mean(&inputs, &opa, eta).unwrap();
        let mean_w = mean_via_w(&inputs, &w);
        prop_assert!((mean_closed - mean_w).abs() < 1e-10 * (1.0 + mean_w.abs()));
        let var_closed = homodyne_variance(&opa, eta).unwrap();
        let var_w = variance_via_w(&w);
        prop_assert!((var_closed - var_w).abs() < 1e-10 * (1.0 + var_w));
    }

    #[test]
    fn shift_scales_exactly_with_oam(
        l in -3i32..=3,
        theta_mdeg in 0i32..1500,
    ) {
        let stack = LayerStack::new(2.22, Complex64::new(-20.327, 1.862), 46e-9, 780e-9).unwrap();
        let theta = sprshift_core::deg_to_rad(43.0 + theta_mdeg as f64 * 1e-3);
        let beam = BeamSpec::for_stack(l, 1e-3, &stack).unwrap();
        let unit = BeamSpec::for_stack(1, 1e-3, &stack).unwrap();
        let y = if_shift(&beam, &stack, theta).unwrap().shift;
        let y1 = if_shift(&unit, &stack, theta).unwrap().shift;
        prop_assert_eq!(y, l as f64 * y1);
    }
}
