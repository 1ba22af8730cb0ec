//! Quantum-limited estimation of plasmonic beam shifts.
//!
//! This crate models a three-layer Kretschmann stack (prism / thin metal
//! film / vacuum) probed by an orbital-angular-momentum beam that travels
//! through the sensing arm of an SU(1,1) interferometer. The lossy
//! plasmonic reflection acts as a fictitious beam splitter of
//! transmissivity `eta = |r|^2`, and homodyne detection at the output
//! turns the sharp angular response near the surface-plasmon resonance
//! into a displacement and angle sensor.
//!
//! Modules, bottom to top:
//!
//! * [`optics`] — complex TM reflection of the stack and its analytic
//!   angular derivatives.
//! * [`ifshift`] — the transverse (Imbert-Fedorov) shift of the reflected
//!   beam and the location of its extrema.
//! * [`interferometer`] — SU(1,1) operator algebra: W coefficients,
//!   homodyne quadrature moments, photon-number bookkeeping.
//! * [`metrology`] — error-propagation sensitivities, quantum Fisher
//!   information, Cramer-Rao bounds, and shot-noise limits.
//! * [`fock_oracle`] — a brute-force truncated-Fock-space simulator used
//!   as an independent cross-check of every closed form.
//!
//! Angles are radians and lengths are meters everywhere inside this crate;
//! unit conversion belongs to callers. The crate is `no_std` (with
//! `alloc`); all IO lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod jet;

pub mod fock_oracle;
pub mod ifshift;
pub mod interferometer;
pub mod metrology;
pub mod numdiff;
pub mod optics;
pub mod search;

/// Convert an angle in degrees to radians.
pub fn deg_to_rad(deg: f64) -> f64 {
    deg * (core::f64::consts::PI / 180.0)
}

/// Convert an angle in radians to degrees.
pub fn rad_to_deg(rad: f64) -> f64 {
    rad * (180.0 / core::f64::consts::PI)
}
