//! SU(1,1) interferometer operator algebra.
//!
//! Two optical parametric amplifiers (two-mode squeezers) replace the
//! beam splitters of a conventional interferometer; the lossy plasmonic
//! reflection in the sensing arm is modeled as a fictitious beam splitter
//! of transmissivity `eta` coupling to an ancilla vacuum mode. The output
//! annihilation operators are linear in the inputs,
//!
//! ```text
//! a2 = W1 a0 - W2 b0^dag + W3 a_v,
//! b2 = W4 b0 - W5 a0^dag + W6 a_v^dag,
//! ```
//!
//! and everything measurable downstream is a function of the six W
//! coefficients. Closed-form homodyne moments are provided for the
//! balanced configuration (`g1 = g2`, `theta2 - theta1 = pi`) the
//! sensitivity analysis uses; general settings go through the
//! W-coefficient path.
//!
//! Quadrature convention: `X = (a + a^dag) / sqrt(2)`, vacuum variance 1/2.

use core::f64::consts::{PI, SQRT_2};
use core::fmt;
use num_complex::Complex64;
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

/// Errors from the closed-form moment evaluations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InterferometerError {
    /// The closed forms are only valid for balanced OPA settings.
    BalancedRequired,
}

impl fmt::Display for InterferometerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterferometerError::BalancedRequired => {
                write!(f, "closed-form moments require balanced OPA settings")
            }
        }
    }
}

impl core::error::Error for InterferometerError {}

/// The two coherent-state inputs `|alpha>_a (x) |beta>_b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentInputs {
    alpha_mag: f64,
    alpha_phase: f64,
    beta_mag: f64,
    beta_phase: f64,
}

impl CoherentInputs {
    /// Magnitudes must be non-negative; phases are reduced modulo 2 pi.
    pub fn new(alpha_mag: f64, alpha_phase: f64, beta_mag: f64, beta_phase: f64) -> Self {
        assert!(
            alpha_mag >= 0.0 && beta_mag >= 0.0,
            "coherent magnitudes must be non-negative"
        );
        CoherentInputs {
            alpha_mag,
            alpha_phase: wrap_phase(alpha_phase),
            beta_mag,
            beta_phase: wrap_phase(beta_phase),
        }
    }

    pub fn alpha_mag(&self) -> f64 {
        self.alpha_mag
    }

    pub fn alpha_phase(&self) -> f64 {
        self.alpha_phase
    }

    pub fn beta_mag(&self) -> f64 {
        self.beta_mag
    }

    pub fn beta_phase(&self) -> f64 {
        self.beta_phase
    }

    /// `alpha` as a complex amplitude.
    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.alpha_mag, self.alpha_phase)
    }

    /// `beta` as a complex amplitude.
    pub fn beta(&self) -> Complex64 {
        Complex64::from_polar(self.beta_mag, self.beta_phase)
    }
}

fn wrap_phase(phase: f64) -> f64 {
    let tau = 2.0 * PI;
    let wrapped = phase % tau;
    if wrapped < 0.0 {
        wrapped + tau
    } else {
        wrapped
    }
}

/// Gains and phases of the two OPA processes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpaSettings {
    g1: f64,
    theta1: f64,
    g2: f64,
    theta2: f64,
    balanced: bool,
}

impl OpaSettings {
    /// Balanced configuration: `g1 = g2 = g`, `theta1 = 0`, `theta2 = pi`,
    /// so the second OPA undoes the first when the arm is lossless.
    pub fn balanced(g: f64) -> Self {
        debug_assert!(g >= 0.0);
        OpaSettings {
            g1: g,
            theta1: 0.0,
            g2: g,
            theta2: PI,
            balanced: true,
        }
    }

    /// Arbitrary gains and phases; only the W-coefficient path accepts
    /// these.
    pub fn general(g1: f64, theta1: f64, g2: f64, theta2: f64) -> Self {
        debug_assert!(g1 >= 0.0 && g2 >= 0.0);
        OpaSettings {
            g1,
            theta1,
            g2,
            theta2,
            balanced: false,
        }
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn g2(&self) -> f64 {
        self.g2
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn is_balanced(&self) -> bool {
        self.balanced
    }

    /// The common gain of a balanced configuration.
    fn balanced_gain(&self) -> Result<f64, InterferometerError> {
        if self.balanced {
            Ok(self.g1)
        } else {
            Err(InterferometerError::BalancedRequired)
        }
    }
}

/// The six linear input-output coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WCoefficients {
    pub w1: Complex64,
    pub w2: Complex64,
    pub w3: Complex64,
    pub w4: Complex64,
    pub w5: Complex64,
    pub w6: Complex64,
}

impl WCoefficients {
    /// Commutator residuals `[a2, a2^dag] - 1` and `[b2, b2^dag] - 1`.
    /// Both vanish identically for any gains, phases, and transmissivity.
    pub fn commutator_residuals(&self) -> (f64, f64) {
        let a = self.w1.norm_sqr() - self.w2.norm_sqr() + self.w3.norm_sqr() - 1.0;
        let b = self.w4.norm_sqr() - self.w5.norm_sqr() - self.w6.norm_sqr() - 1.0;
        (a, b)
    }

    /// Residual of the cross commutator `[a2, b2]`, which must vanish.
    pub fn cross_commutator_residual(&self) -> Complex64 {
        -self.w1 * self.w5 + self.w2 * self.w4 + self.w3 * self.w6
    }
}

/// The six W coefficients for arbitrary OPA settings and arm
/// transmissivity `eta` in [0, 1].
pub fn w_coefficients(opa: &OpaSettings, eta: f64) -> WCoefficients {
    debug_assert!((0.0..=1.0).contains(&eta));
    let (c1, s1) = (opa.g1.cosh(), opa.g1.sinh());
    let (c2, s2) = (opa.g2.cosh(), opa.g2.sinh());
    let e1 = Complex64::from_polar(1.0, opa.theta1);
    let e2 = Complex64::from_polar(1.0, opa.theta2);
    let e21 = Complex64::from_polar(1.0, opa.theta2 - opa.theta1);
    let rt = eta.sqrt();
    let rt1m = (1.0 - eta).sqrt();
    WCoefficients {
        w1: rt * c1 * c2 + e21 * (s1 * s2),
        w2: rt * e1 * (s1 * c2) + e2 * (c1 * s2),
        w3: Complex64::new(rt1m * c2, 0.0),
        w4: Complex64::new(c1 * c2, 0.0) + rt * e21 * (s1 * s2),
        w5: e1 * (s1 * c2) + rt * e2 * (c1 * s2),
        w6: -rt1m * e2 * s2,
    }
}

/// Mean amplitude quadrature at the sensing output from the W
/// coefficients: `<X> = sqrt(2) Re(W1 alpha - W2 conj(beta))`. Valid for
/// any OPA settings.
pub fn mean_via_w(inputs: &CoherentInputs, w: &WCoefficients) -> f64 {
    SQRT_2 * (w.w1 * inputs.alpha() - w.w2 * inputs.beta().conj()).re
}

/// Quadrature variance at the sensing output from the W coefficients:
/// `(|W1|^2 + |W2|^2 + |W3|^2) / 2`. Independent of the coherent
/// amplitudes; valid for any OPA settings.
pub fn variance_via_w(w: &WCoefficients) -> f64 {
    0.5 * (w.w1.norm_sqr() + w.w2.norm_sqr() + w.w3.norm_sqr())
}

/// Closed-form mean quadrature for the balanced configuration:
///
/// ```text
/// <X> = sqrt(2) [ |alpha| (sqrt(eta) cosh^2 g - sinh^2 g) cos theta_alpha
///               - |beta| (sqrt(eta) - 1) sinh g cosh g cos theta_beta ].
/// ```
pub fn homodyne_mean(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    eta: f64,
) -> Result<f64, InterferometerError> {
    let g = opa.balanced_gain()?;
    let (c, s) = (g.cosh(), g.sinh());
    let rt = eta.sqrt();
    Ok(SQRT_2
        * (inputs.alpha_mag * (rt * c * c - s * s) * inputs.alpha_phase.cos()
            - inputs.beta_mag * (rt - 1.0) * s * c * inputs.beta_phase.cos()))
}

/// Closed-form quadrature variance for the balanced configuration:
///
/// ```text
/// Var X = [ (sqrt(eta) cosh^2 g - sinh^2 g)^2
///         + (sqrt(eta) - 1)^2 sinh^2 g cosh^2 g
///         + (1 - eta) cosh^2 g ] / 2.
/// ```
///
/// Independent of the coherent inputs by construction.
pub fn homodyne_variance(opa: &OpaSettings, eta: f64) -> Result<f64, InterferometerError> {
    let g = opa.balanced_gain()?;
    let (c, s) = (g.cosh(), g.sinh());
    let rt = eta.sqrt();
    let t1 = rt * c * c - s * s;
    let t2 = (rt - 1.0) * s * c;
    Ok(0.5 * (t1 * t1 + t2 * t2 + (1.0 - eta) * c * c))
}

/// Mean photon numbers for the balanced configuration:
/// the sensing-arm occupation after the first OPA,
/// `<a^dag a> = (|alpha| cosh g + |beta| sinh g)^2 + sinh^2 g`,
/// and the total occupation inside the interferometer,
/// `<N> = (|alpha|^2 + |beta|^2) cosh 2g + 2 |alpha| |beta| sinh 2g + 2 sinh^2 g`.
///
/// These forms assume the amplified phase configuration
/// `cos(theta_alpha + theta_beta) = -1` (the arrangement analyzed
/// throughout: `theta_alpha = 0`, `theta_beta = pi`); for other input
/// phases use the Fock oracle.
pub fn photon_numbers(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
) -> Result<(f64, f64), InterferometerError> {
    let g = opa.balanced_gain()?;
    let (c, s) = (g.cosh(), g.sinh());
    let amp = inputs.alpha_mag * c + inputs.beta_mag * s;
    let n_sensing = amp * amp + s * s;
    let n_total = (inputs.alpha_mag * inputs.alpha_mag + inputs.beta_mag * inputs.beta_mag)
        * (2.0 * g).cosh()
        + 2.0 * inputs.alpha_mag * inputs.beta_mag * (2.0 * g).sinh()
        + 2.0 * s * s;
    Ok((n_sensing, n_total))
}

/// Homodyne statistics bundle for the balanced configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomodyneMoments {
    /// Mean amplitude quadrature `<X>`.
    pub mean_x: f64,
    /// Quadrature variance `Var X` (1/2 for vacuum).
    pub var_x: f64,
    /// Sensing-arm mean photon number after the first OPA.
    pub n_after_opa1: f64,
    /// Total mean photon number inside the interferometer.
    pub n_total: f64,
}

/// Evaluate all balanced-configuration moments at transmissivity `eta`.
pub fn homodyne_moments(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    eta: f64,
) -> Result<HomodyneMoments, InterferometerError> {
    let (n_after_opa1, n_total) = photon_numbers(inputs, opa)?;
    Ok(HomodyneMoments {
        mean_x: homodyne_mean(inputs, opa, eta)?,
        var_x: homodyne_variance(opa, eta)?,
        n_after_opa1,
        n_total,
    })
}
