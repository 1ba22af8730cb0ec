//! Transverse (Imbert-Fedorov) shift of the reflected OAM beam.
//!
//! In the large-waist regime the shift of a Laguerre-Gauss beam carrying
//! orbital angular momentum `l` reduces to the logarithmic angular
//! derivative of the reflectivity,
//!
//! ```text
//! Y = -l (d|r|/d theta) / (k0 |r|),
//! ```
//!
//! which is hugely enhanced near the SPR dip where `|r|` is small and
//! steep. The shift changes sign exactly at the dip, producing one
//! positive and one negative peak on either side of it.

use crate::optics::{self, LayerStack, OpticsError};
use crate::search;
use core::fmt;

/// Density of the uniform pre-scan used before refining peak brackets.
const PEAK_PRESCAN_POINTS: usize = 2000;

/// Refinement tolerance of the peak search, radians (1e-6 degrees).
const PEAK_TOL: f64 = 1e-6 * core::f64::consts::PI / 180.0;

/// Widest bracket accepted by the peak search, radians (5 degrees).
const MAX_BRACKET: f64 = 5.0 * core::f64::consts::PI / 180.0;

/// Below this value of `w0 * k0` the large-waist closed form is suspect.
const LARGE_WAIST_THRESHOLD: f64 = 1e3;

/// Errors from the shift computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ShiftError {
    /// Propagated failure of the underlying stack evaluation.
    Optics(OpticsError),
    /// The beam waist must be positive.
    Waist(f64),
    /// The peak-search bracket is empty or wider than 5 degrees.
    InvalidBracket { lo: f64, hi: f64 },
    /// The pre-scan found no interior extremum of the shift (no sign
    /// change of dY/d theta) inside the bracket.
    NoPeak,
}

impl fmt::Display for ShiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftError::Optics(e) => write!(f, "{e}"),
            ShiftError::Waist(w) => write!(f, "beam waist must be > 0, got {w} m"),
            ShiftError::InvalidBracket { lo, hi } => {
                write!(f, "invalid peak bracket [{lo}, {hi}] rad")
            }
            ShiftError::NoPeak => write!(f, "no interior shift extremum inside the bracket"),
        }
    }
}

impl core::error::Error for ShiftError {}

impl From<OpticsError> for ShiftError {
    fn from(e: OpticsError) -> Self {
        ShiftError::Optics(e)
    }
}

/// Incident-beam parameters.
///
/// The wave number is derived from the stack wavelength at construction,
/// so beam and stack can never disagree on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSpec {
    oam_index: i32,
    waist: f64,
    k0: f64,
}

impl BeamSpec {
    /// Build a beam for the given stack. `waist` is in meters.
    pub fn for_stack(oam_index: i32, waist: f64, stack: &LayerStack) -> Result<Self, ShiftError> {
        if !(waist > 0.0) {
            return Err(ShiftError::Waist(waist));
        }
        Ok(BeamSpec {
            oam_index,
            waist,
            k0: stack.vacuum_wavenumber(),
        })
    }

    pub fn oam_index(&self) -> i32 {
        self.oam_index
    }

    pub fn waist(&self) -> f64 {
        self.waist
    }

    /// Vacuum wave number, per meter.
    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// Whether the beam is wide enough (`w0 k0 >= 1e3`) for the
    /// large-waist closed form to be trustworthy.
    pub fn large_waist_valid(&self) -> bool {
        self.waist * self.k0 >= LARGE_WAIST_THRESHOLD
    }
}

/// One sample of the transverse shift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftSample {
    /// Incident angle, radians.
    pub theta: f64,
    /// Transverse shift, meters.
    pub shift: f64,
    /// Shift in units of the vacuum wavelength, `Y k0 / 2 pi`.
    pub shift_over_wavelength: f64,
}

/// Shift per unit of orbital angular momentum, `-|r|'/(k0 |r|)`.
///
/// Multiplying by the integer `l` afterwards keeps `Y(l) = l Y(1)` exact
/// in floating point.
pub(crate) fn unit_shift(refl: &optics::Reflectance, k0: f64) -> f64 {
    -refl.dmag_dtheta / (k0 * refl.mag)
}

/// `dY/d theta` per unit of orbital angular momentum:
/// `-(|r|''/|r| - (|r|'/|r|)^2) / k0`.
pub(crate) fn unit_shift_slope(refl: &optics::Reflectance, k0: f64) -> f64 {
    let log_slope = refl.dmag_dtheta / refl.mag;
    -(refl.d2mag_dtheta2 / refl.mag - log_slope * log_slope) / k0
}

/// Transverse shift of the reflected beam at `theta`.
pub fn if_shift(
    beam: &BeamSpec,
    stack: &LayerStack,
    theta: f64,
) -> Result<ShiftSample, ShiftError> {
    let refl = optics::reflectance(stack, theta)?;
    let shift = beam.oam_index as f64 * unit_shift(&refl, beam.k0);
    Ok(ShiftSample {
        theta,
        shift,
        shift_over_wavelength: shift * beam.k0 / (2.0 * core::f64::consts::PI),
    })
}

/// Angular slope `dY/d theta` of the shift at `theta`, in meters per
/// radian. Requires the analytic second derivative of `|r|`.
pub fn if_shift_slope(beam: &BeamSpec, stack: &LayerStack, theta: f64) -> Result<f64, ShiftError> {
    let refl = optics::reflectance(stack, theta)?;
    Ok(beam.oam_index as f64 * unit_shift_slope(&refl, beam.k0))
}

/// The two shift extrema flanking the SPR dip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IfPeaks {
    /// Angle of the most negative shift, radians.
    pub theta_neg: f64,
    /// Angle of the most positive shift, radians.
    pub theta_pos: f64,
    /// Shift at `theta_neg`, meters (negative).
    pub shift_neg: f64,
    /// Shift at `theta_pos`, meters (positive).
    pub shift_pos: f64,
}

/// Locate the positive and negative shift peaks inside `bracket`
/// (radians). The bracket must contain the SPR dip and be narrower than
/// 5 degrees; a 2000-point pre-scan brackets each extremum before
/// golden-section refinement to 1e-6 degrees.
pub fn find_if_peaks(
    beam: &BeamSpec,
    stack: &LayerStack,
    bracket: (f64, f64),
) -> Result<IfPeaks, ShiftError> {
    let (lo, hi) = bracket;
    if !(hi > lo) || hi - lo > MAX_BRACKET {
        return Err(ShiftError::InvalidBracket { lo, hi });
    }

    let n = PEAK_PRESCAN_POINTS;
    let step = (hi - lo) / n as f64;
    let mut max_at = (0usize, f64::NEG_INFINITY);
    let mut min_at = (0usize, f64::INFINITY);
    for i in 0..=n {
        let theta = lo + step * i as f64;
        let y = if_shift(beam, stack, theta)?.shift;
        if y > max_at.1 {
            max_at = (i, y);
        }
        if y < min_at.1 {
            min_at = (i, y);
        }
    }
    // A flat or monotone pre-scan has its extrema on the boundary; that
    // means dY/d theta never changed sign inside the bracket.
    if max_at.0 == 0 || max_at.0 == n || min_at.0 == 0 || min_at.0 == n {
        return Err(ShiftError::NoPeak);
    }

    let shift_at = |theta: f64| {
        if_shift(beam, stack, theta)
            .map(|s| s.shift)
            .unwrap_or(f64::NAN)
    };
    let (theta_pos, shift_pos) = search::golden_section_max(
        shift_at,
        lo + step * (max_at.0 - 1) as f64,
        lo + step * (max_at.0 + 1) as f64,
        PEAK_TOL,
    );
    let (theta_neg, shift_neg) = search::golden_section_min(
        shift_at,
        lo + step * (min_at.0 - 1) as f64,
        lo + step * (min_at.0 + 1) as f64,
        PEAK_TOL,
    );

    Ok(IfPeaks {
        theta_neg,
        theta_pos,
        shift_neg,
        shift_pos,
    })
}
