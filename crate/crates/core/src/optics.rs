//! TM reflection of the three-layer Kretschmann stack.
//!
//! The stack is prism / thin gold film / semi-infinite vacuum. A
//! TM-polarized beam incident through the prism excites surface plasmons
//! in the film, producing a sharp reflectivity dip at the SPR angle. The
//! two-interface composition
//!
//! ```text
//! r = (r_pg + r_gv e^{2 i k_gz d}) / (1 + r_pg r_gv e^{2 i k_gz d})
//! ```
//!
//! is evaluated together with its first and second angular derivatives by
//! forward-mode differentiation, so the narrow (~0.01 degree) resonance
//! features never go through finite differences.

use crate::jet::Jet;
use crate::search;
use core::fmt;
use num_complex::Complex64;
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

/// Relative scale below which an interface or stack denominator counts as
/// degenerate.
const DEGENERACY_EPS: f64 = 1e-12;

/// Reflection magnitudes below this are treated as zero-reflectivity for
/// the logarithmic-derivative form.
const NEAR_ZERO_MAG: f64 = 1e-12;

/// Grid density of the dip pre-scan in [`spr_angle`].
const DIP_PRESCAN_POINTS: usize = 2000;

/// Refinement tolerance of the dip search, radians (1e-6 degrees).
const DIP_TOL: f64 = 1e-6 * core::f64::consts::PI / 180.0;

/// Errors from constructing a [`LayerStack`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StackError {
    /// The prism permittivity must exceed 1 (denser than the vacuum side).
    PrismPermittivity(f64),
    /// The film must be passive: Im(eps) >= 0.
    GoldAbsorption(f64),
    /// The film thickness must be non-negative.
    Thickness(f64),
    /// The vacuum wavelength must be positive.
    Wavelength(f64),
}

impl fmt::Display for StackError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackError::PrismPermittivity(v) => {
                write!(f, "eps_prism must exceed 1, got {v}")
            }
            StackError::GoldAbsorption(v) => {
                write!(f, "Im(eps_gold) must be >= 0 for a passive film, got {v}")
            }
            StackError::Thickness(v) => {
                write!(f, "thickness_gold must be >= 0, got {v} m")
            }
            StackError::Wavelength(v) => write!(f, "wavelength must be > 0, got {v} m"),
        }
    }
}

impl core::error::Error for StackError {}

/// Numerical failures while evaluating the stack response.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OpticsError {
    /// An interface or stack denominator vanished (relative magnitude below
    /// the configured epsilon).
    DegenerateDenominator { magnitude: f64 },
    /// `|r|` is too close to zero for the logarithmic derivative d|r|/d theta.
    NearZeroReflectivity { magnitude: f64 },
    /// No interior reflectivity minimum was found in the requested bracket.
    NoMinimum,
}

impl fmt::Display for OpticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpticsError::DegenerateDenominator { magnitude } => {
                write!(
                    f,
                    "degenerate reflection denominator (|den| ~ {magnitude:e})"
                )
            }
            OpticsError::NearZeroReflectivity { magnitude } => {
                write!(f, "reflectivity too close to zero (|r| ~ {magnitude:e})")
            }
            OpticsError::NoMinimum => {
                write!(f, "no interior reflectivity minimum inside the bracket")
            }
        }
    }
}

impl core::error::Error for OpticsError {}

/// The prism / gold / vacuum optical stack.
///
/// Permittivities are relative and user-supplied constants (no dispersion
/// model); the bottom medium is fixed to vacuum. Lengths are meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerStack {
    eps_prism: f64,
    eps_gold: Complex64,
    thickness_gold: f64,
    wavelength: f64,
}

impl LayerStack {
    /// Relative permittivity of the semi-infinite bottom medium.
    pub const EPS_VACUUM: f64 = 1.0;

    /// Build a stack, validating physicality. A zero film thickness is
    /// accepted and collapses the stack to the bare prism-vacuum interface.
    pub fn new(
        eps_prism: f64,
        eps_gold: Complex64,
        thickness_gold: f64,
        wavelength: f64,
    ) -> Result<Self, StackError> {
        if !(eps_prism > 1.0) {
            return Err(StackError::PrismPermittivity(eps_prism));
        }
        if !(eps_gold.im >= 0.0) {
            return Err(StackError::GoldAbsorption(eps_gold.im));
        }
        if !(thickness_gold >= 0.0) {
            return Err(StackError::Thickness(thickness_gold));
        }
        if !(wavelength > 0.0) {
            return Err(StackError::Wavelength(wavelength));
        }
        Ok(LayerStack {
            eps_prism,
            eps_gold,
            thickness_gold,
            wavelength,
        })
    }

    pub fn eps_prism(&self) -> f64 {
        self.eps_prism
    }

    pub fn eps_gold(&self) -> Complex64 {
        self.eps_gold
    }

    pub fn thickness_gold(&self) -> f64 {
        self.thickness_gold
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Vacuum wave number `k0 = 2 pi / lambda`, per meter.
    pub fn vacuum_wavenumber(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.wavelength
    }
}

/// Complex reflection coefficient of the stack together with its first
/// and second derivatives with respect to the incident angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexReflection {
    /// Amplitude reflection coefficient.
    pub r: Complex64,
    /// d r / d theta, per radian.
    pub dr_dtheta: Complex64,
    /// d^2 r / d theta^2, per radian squared.
    pub d2r_dtheta2: Complex64,
}

/// `|r|` and `eta = |r|^2` with the angular derivatives the shift and
/// sensitivity formulas consume.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reflectance {
    /// Reflectance `eta = |r|^2`, dimensionless, in [0, 1] for passive stacks.
    pub eta: f64,
    /// d eta / d theta, per radian.
    pub deta_dtheta: f64,
    /// Reflectivity magnitude `|r|`.
    pub mag: f64,
    /// d |r| / d theta, per radian.
    pub dmag_dtheta: f64,
    /// d^2 |r| / d theta^2, per radian squared.
    pub d2mag_dtheta2: f64,
}

/// Normal component of the wave vector in a layer of permittivity
/// `eps_layer`, for incidence at `theta` through the prism of `stack`.
///
/// Returns `(2 pi / lambda) sqrt(eps_layer - eps_prism sin^2 theta)` on the
/// principal branch, sign-flipped when needed so the imaginary part is
/// never negative. Lossless evanescent layers therefore come out as
/// `+i |k_z|`. Valid for `0 <= theta < pi/2`.
pub fn normal_wavevector(eps_layer: Complex64, theta: f64, stack: &LayerStack) -> Complex64 {
    let s = theta.sin();
    let mut w = (eps_layer - stack.eps_prism * s * s).sqrt();
    if w.im < 0.0 {
        w = -w;
    }
    stack.vacuum_wavenumber() * w
}

/// TM Fresnel reflection coefficient between layers `n` and `m`:
/// `(k_nz eps_m - k_mz eps_n) / (k_nz eps_m + k_mz eps_n)`.
pub fn fresnel_tm(
    eps_n: Complex64,
    eps_m: Complex64,
    k_nz: Complex64,
    k_mz: Complex64,
) -> Result<Complex64, OpticsError> {
    let a = k_nz * eps_m;
    let b = k_mz * eps_n;
    let den = a + b;
    let scale = a.norm() + b.norm();
    if den.norm() < DEGENERACY_EPS * scale {
        return Err(OpticsError::DegenerateDenominator {
            magnitude: den.norm(),
        });
    }
    Ok((a - b) / den)
}

fn fresnel_jet(eps_n: Complex64, eps_m: Complex64, k_n: Jet, k_m: Jet) -> Result<Jet, OpticsError> {
    let a = k_n * eps_m;
    let b = k_m * eps_n;
    let den = a + b;
    let scale = a.v.norm() + b.v.norm();
    if den.v.norm() < DEGENERACY_EPS * scale {
        return Err(OpticsError::DegenerateDenominator {
            magnitude: den.v.norm(),
        });
    }
    Ok((a - b) / den)
}

fn reflection_jet(stack: &LayerStack, theta: f64) -> Result<Jet, OpticsError> {
    let k0 = stack.vacuum_wavenumber();
    let eps_p = Complex64::new(stack.eps_prism, 0.0);
    let eps_g = stack.eps_gold;
    let eps_v = Complex64::new(LayerStack::EPS_VACUUM, 0.0);

    let s = Jet::sin_of(theta);
    let u = s * s * stack.eps_prism; // eps_p sin^2 theta

    let k_p = (Jet::constant(eps_p) - u).sqrt_upper_half() * k0;
    let k_g = (Jet::constant(eps_g) - u).sqrt_upper_half() * k0;
    let k_v = (Jet::constant(eps_v) - u).sqrt_upper_half() * k0;

    let r_pg = fresnel_jet(eps_p, eps_g, k_p, k_g)?;
    let r_gv = fresnel_jet(eps_g, eps_v, k_g, k_v)?;

    // e^{2 i k_gz d}
    let phase = (k_g * Complex64::new(0.0, 2.0 * stack.thickness_gold)).exp();

    let num = r_pg + r_gv * phase;
    let den = Jet::constant(Complex64::new(1.0, 0.0)) + r_pg * r_gv * phase;
    let scale = 1.0 + (r_pg.v * r_gv.v * phase.v).norm();
    if den.v.norm() < DEGENERACY_EPS * scale {
        return Err(OpticsError::DegenerateDenominator {
            magnitude: den.v.norm(),
        });
    }
    Ok(num / den)
}

/// Complex reflection coefficient of the full stack at incidence `theta`
/// (radians, `0 < theta < pi/2`), with analytic angular derivatives.
pub fn kretschmann_reflection(
    stack: &LayerStack,
    theta: f64,
) -> Result<ComplexReflection, OpticsError> {
    let j = reflection_jet(stack, theta)?;
    Ok(ComplexReflection {
        r: j.v,
        dr_dtheta: j.d1,
        d2r_dtheta2: j.d2,
    })
}

/// Reflectance `eta = |r|^2` and the derivative bundle at `theta`.
///
/// Errors with [`OpticsError::NearZeroReflectivity`] when `|r|` is too
/// small for the logarithmic-derivative forms to be meaningful.
pub fn reflectance(stack: &LayerStack, theta: f64) -> Result<Reflectance, OpticsError> {
    let refl = kretschmann_reflection(stack, theta)?;
    let mag_sq = refl.r.norm_sqr();
    let mag = mag_sq.sqrt();
    if mag < NEAR_ZERO_MAG {
        return Err(OpticsError::NearZeroReflectivity { magnitude: mag });
    }
    // eta' = 2 Re(conj(r) r'), |r|' = Re(conj(r) r')/|r|,
    // |r|'' = (|r'|^2 + Re(conj(r) r''))/|r| - |r|'^2/|r|.
    let re_rr1 = (refl.r.conj() * refl.dr_dtheta).re;
    let dmag = re_rr1 / mag;
    let d2mag = (refl.dr_dtheta.norm_sqr() + (refl.r.conj() * refl.d2r_dtheta2).re) / mag
        - dmag * dmag / mag;
    Ok(Reflectance {
        eta: mag_sq,
        deta_dtheta: 2.0 * re_rr1,
        mag,
        dmag_dtheta: dmag,
        d2mag_dtheta2: d2mag,
    })
}

/// Locate the reflectivity-dip (SPR) angle inside `bracket` (radians) by a
/// dense pre-scan followed by golden-section refinement.
pub fn spr_angle(stack: &LayerStack, bracket: (f64, f64)) -> Result<f64, OpticsError> {
    let (lo, hi) = bracket;
    let n = DIP_PRESCAN_POINTS;
    let step = (hi - lo) / n as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=n {
        let theta = lo + step * i as f64;
        let mag = kretschmann_reflection(stack, theta)?.r.norm();
        if mag < best.1 {
            best = (i, mag);
        }
    }
    if best.0 == 0 || best.0 == n {
        return Err(OpticsError::NoMinimum);
    }
    let a = lo + step * (best.0 - 1) as f64;
    let b = lo + step * (best.0 + 1) as f64;
    let f = |theta: f64| {
        kretschmann_reflection(stack, theta)
            .map(|r| r.r.norm())
            .unwrap_or(f64::INFINITY)
    };
    let (theta_min, _) = search::golden_section_min(f, a, b, DIP_TOL);
    Ok(theta_min)
}
