//! Sensitivities, quantum Fisher information, and precision limits.
//!
//! Error propagation through the homodyne signal gives the incident-angle
//! sensitivity
//!
//! ```text
//! delta theta = sqrt(Var X) / | (d<X>/d eta) (d eta/d theta) |,
//! ```
//!
//! and the shift sensitivity follows by the scalar reparameterization
//! `delta Y = delta theta * |dY/d theta|`. The quantum Fisher information
//! of the lossy-arm state is
//!
//! ```text
//! F_theta = (d eta/d theta)^2 / (eta (1 - eta)) * <a^dag a>,
//! ```
//!
//! with `F_Y = F_theta / (dY/d theta)^2`, and the Cramer-Rao bound is
//! `1 / sqrt(v F)` over `v` trials. The shot-noise limits use the total
//! photon number `<N>` in place of the sensing-arm occupation.
//!
//! Degeneracies are deliberate IEEE sentinels, not errors, inside scans:
//! at the SPR angle (`d eta/d theta = 0`) the angle sensitivity and both
//! bounds blow up to `inf`; at the shift extrema (`dY/d theta = 0`) the
//! shift sensitivity collapses to an exact 0 because the ratio form
//! multiplies by `|dY/d theta|` instead of dividing by its reciprocal.
//! Scan rows preserve every such sentinel.

use crate::ifshift::{self, BeamSpec, ShiftError};
use crate::interferometer::{self, CoherentInputs, InterferometerError, OpaSettings};
use crate::optics::{self, LayerStack, OpticsError};
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;
use core::fmt;
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

/// `eta (1 - eta)` below this counts as sitting on the transmissivity
/// boundary, where the Fisher information diverges unphysically.
const ETA_BOUNDARY_EPS: f64 = 1e-12;

/// Errors from the sensitivity computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetrologyError {
    Optics(OpticsError),
    Shift(ShiftError),
    Interferometer(InterferometerError),
    /// `eta (1 - eta)` vanished; the Fisher closed forms need 0 < eta < 1.
    EtaBoundary {
        eta: f64,
    },
    /// The Cramer-Rao bound needs strictly positive information.
    NonpositiveInformation(f64),
    /// At least one trial is required.
    ZeroTrials,
    /// Scan grids must be strictly increasing inside (0, pi/2).
    InvalidGrid,
}

impl fmt::Display for MetrologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetrologyError::Optics(e) => write!(f, "{e}"),
            MetrologyError::Shift(e) => write!(f, "{e}"),
            MetrologyError::Interferometer(e) => write!(f, "{e}"),
            MetrologyError::EtaBoundary { eta } => {
                write!(f, "eta(1-eta) too small at eta = {eta}")
            }
            MetrologyError::NonpositiveInformation(v) => {
                write!(f, "Fisher information must be positive, got {v}")
            }
            MetrologyError::ZeroTrials => write!(f, "trial count must be >= 1"),
            MetrologyError::InvalidGrid => {
                write!(
                    f,
                    "scan grid must be strictly increasing inside (0, 90) degrees"
                )
            }
        }
    }
}

impl core::error::Error for MetrologyError {}

impl From<OpticsError> for MetrologyError {
    fn from(e: OpticsError) -> Self {
        MetrologyError::Optics(e)
    }
}

impl From<ShiftError> for MetrologyError {
    fn from(e: ShiftError) -> Self {
        MetrologyError::Shift(e)
    }
}

impl From<InterferometerError> for MetrologyError {
    fn from(e: InterferometerError) -> Self {
        MetrologyError::Interferometer(e)
    }
}

/// Everything the scan records at one incident angle. Angles are radians,
/// lengths meters; non-finite entries are sentinels, never dropped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SensitivityReport {
    /// Incident angle, radians.
    pub theta: f64,
    /// Arm transmissivity `eta = |r|^2`.
    pub eta: f64,
    /// Transverse shift, meters.
    pub shift: f64,
    /// Homodyne shift sensitivity, meters.
    pub delta_shift: f64,
    /// Homodyne incident-angle sensitivity, radians.
    pub delta_theta: f64,
    /// Shot-noise limit of the shift, meters.
    pub snl_shift: f64,
    /// Shot-noise limit of the angle, radians.
    pub snl_theta: f64,
    /// Quantum Cramer-Rao bound of the shift, meters.
    pub qcrb_shift: f64,
    /// Quantum Cramer-Rao bound of the angle, radians.
    pub qcrb_theta: f64,
    /// Fisher information of the shift, per meter squared.
    pub fisher_shift: f64,
    /// Fisher information of the angle, per radian squared.
    pub fisher_theta: f64,
    /// Number of trials the bounds assume.
    pub trials: u32,
}

/// `d<X>/d eta` for the balanced closed form.
fn dmean_deta(inputs: &CoherentInputs, opa: &OpaSettings, eta: f64) -> f64 {
    let g = opa.g1();
    let (c, s) = (g.cosh(), g.sinh());
    SQRT_2
        * (inputs.alpha_mag() * c * c * inputs.alpha_phase().cos()
            - inputs.beta_mag() * s * c * inputs.beta_phase().cos())
        / (2.0 * eta.sqrt())
}

fn require_balanced(opa: &OpaSettings) -> Result<(), MetrologyError> {
    if opa.is_balanced() {
        Ok(())
    } else {
        Err(InterferometerError::BalancedRequired.into())
    }
}

/// Incident-angle sensitivity at `theta`, radians. Returns `inf` exactly
/// at stationary points of the transmissivity (the SPR angle).
pub fn delta_theta(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    stack: &LayerStack,
    theta: f64,
) -> Result<f64, MetrologyError> {
    require_balanced(opa)?;
    let refl = optics::reflectance(stack, theta)?;
    let var = interferometer::homodyne_variance(opa, refl.eta)?;
    Ok(var.sqrt() / (dmean_deta(inputs, opa, refl.eta) * refl.deta_dtheta).abs())
}

/// Shift sensitivity at `theta`, meters: `delta theta * |dY/d theta|`.
/// Exactly 0 at the shift extrema, `inf` at the SPR angle.
pub fn delta_shift(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    stack: &LayerStack,
    beam: &BeamSpec,
    theta: f64,
) -> Result<f64, MetrologyError> {
    let dtheta = delta_theta(inputs, opa, stack, theta)?;
    let slope = ifshift::if_shift_slope(beam, stack, theta)?;
    Ok(dtheta * slope.abs())
}

/// Quantum Fisher information `(F_shift, F_theta)` at `theta`.
///
/// `F_theta` is per radian squared, `F_shift` per meter squared.
/// `F_shift` carries an `inf` sentinel at shift extrema, where an
/// infinitesimal angle error does not move the shift at all.
pub fn qfi(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    stack: &LayerStack,
    beam: &BeamSpec,
    theta: f64,
) -> Result<(f64, f64), MetrologyError> {
    require_balanced(opa)?;
    let refl = optics::reflectance(stack, theta)?;
    let denom = refl.eta * (1.0 - refl.eta);
    if denom < ETA_BOUNDARY_EPS {
        return Err(MetrologyError::EtaBoundary { eta: refl.eta });
    }
    let (n_sensing, _) = interferometer::photon_numbers(inputs, opa)?;
    let fisher_theta = refl.deta_dtheta * refl.deta_dtheta / denom * n_sensing;
    let slope = ifshift::if_shift_slope(beam, stack, theta)?;
    let fisher_shift = fisher_theta / (slope * slope);
    Ok((fisher_shift, fisher_theta))
}

/// Quantum Cramer-Rao bound `1 / sqrt(v F)` for Fisher information `F`
/// over `v` trials.
pub fn qcrb(fisher: f64, trials: u32) -> Result<f64, MetrologyError> {
    if trials == 0 {
        return Err(MetrologyError::ZeroTrials);
    }
    if !(fisher > 0.0) {
        return Err(MetrologyError::NonpositiveInformation(fisher));
    }
    Ok(1.0 / (trials as f64 * fisher).sqrt())
}

/// Shot-noise limits `(snl_shift, snl_theta)` at `theta`, using the total
/// mean photon number inside the interferometer.
pub fn snl(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    stack: &LayerStack,
    beam: &BeamSpec,
    theta: f64,
) -> Result<(f64, f64), MetrologyError> {
    require_balanced(opa)?;
    let refl = optics::reflectance(stack, theta)?;
    let denom = refl.eta * (1.0 - refl.eta);
    if denom < ETA_BOUNDARY_EPS {
        return Err(MetrologyError::EtaBoundary { eta: refl.eta });
    }
    let (_, n_total) = interferometer::photon_numbers(inputs, opa)?;
    let snl_theta = 2.0 * denom.sqrt() / (refl.deta_dtheta.abs() * n_total.sqrt());
    let slope = ifshift::if_shift_slope(beam, stack, theta)?;
    Ok((snl_theta * slope.abs(), snl_theta))
}

/// Evaluate the full report on a strictly increasing grid of angles
/// (radians, inside (0, pi/2)).
///
/// Per-point numerical failures (degenerate denominators, boundary
/// transmissivities) poison that row with NaN sentinels instead of
/// failing the scan; rows are never dropped and keep grid order.
pub fn scan(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    stack: &LayerStack,
    beam: &BeamSpec,
    grid: &[f64],
    trials: u32,
) -> Result<Vec<SensitivityReport>, MetrologyError> {
    require_balanced(opa)?;
    if trials == 0 {
        return Err(MetrologyError::ZeroTrials);
    }
    if grid.is_empty()
        || grid.windows(2).any(|w| w[1] <= w[0])
        || grid[0] <= 0.0
        || *grid.last().unwrap() >= core::f64::consts::FRAC_PI_2
    {
        return Err(MetrologyError::InvalidGrid);
    }

    let mut out = Vec::with_capacity(grid.len());
    for &theta in grid {
        out.push(evaluate_point(inputs, opa, stack, beam, theta, trials));
    }
    Ok(out)
}

fn evaluate_point(
    inputs: &CoherentInputs,
    opa: &OpaSettings,
    stack: &LayerStack,
    beam: &BeamSpec,
    theta: f64,
    trials: u32,
) -> SensitivityReport {
    let mut report = SensitivityReport {
        theta,
        eta: f64::NAN,
        shift: f64::NAN,
        delta_shift: f64::NAN,
        delta_theta: f64::NAN,
        snl_shift: f64::NAN,
        snl_theta: f64::NAN,
        qcrb_shift: f64::NAN,
        qcrb_theta: f64::NAN,
        fisher_shift: f64::NAN,
        fisher_theta: f64::NAN,
        trials,
    };

    let refl = match optics::reflectance(stack, theta) {
        Ok(r) => r,
        Err(_) => return report,
    };
    report.eta = refl.eta;

    let l = beam.oam_index() as f64;
    report.shift = l * ifshift::unit_shift(&refl, beam.k0());
    let shift_slope = l * ifshift::unit_shift_slope(&refl, beam.k0());

    // Variance and photon numbers cannot fail once balance is checked.
    let var = interferometer::homodyne_variance(opa, refl.eta).unwrap_or(f64::NAN);
    let (n_sensing, n_total) =
        interferometer::photon_numbers(inputs, opa).unwrap_or((f64::NAN, f64::NAN));

    report.delta_theta = var.sqrt() / (dmean_deta(inputs, opa, refl.eta) * refl.deta_dtheta).abs();
    report.delta_shift = report.delta_theta * shift_slope.abs();

    let denom = refl.eta * (1.0 - refl.eta);
    if denom >= ETA_BOUNDARY_EPS {
        report.fisher_theta = refl.deta_dtheta * refl.deta_dtheta / denom * n_sensing;
        report.fisher_shift = report.fisher_theta / (shift_slope * shift_slope);
        let v = trials as f64;
        report.qcrb_theta = 1.0 / (v * report.fisher_theta).sqrt();
        report.qcrb_shift = 1.0 / (v * report.fisher_shift).sqrt();
        report.snl_theta = 2.0 * denom.sqrt() / (refl.deta_dtheta.abs() * n_total.sqrt());
        report.snl_shift = report.snl_theta * shift_slope.abs();
    }

    report
}
