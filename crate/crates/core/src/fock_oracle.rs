//! Brute-force truncated-Fock-space simulator.
//!
//! Three bosonic modes — the sensing mode, the reference mode, and the
//! ancilla vacuum behind the fictitious beam splitter — are held as one
//! dense state vector over a per-mode number cutoff. Gates are applied by
//! exponentiating the truncated generator (sub-stepped Taylor series, so
//! each step is exactly unitary on the truncated space up to roundoff),
//! and every gate refuses to proceed when probability accumulates at the
//! cutoff boundary.
//!
//! The oracle exists to cross-check the closed-form homodyne moments,
//! photon numbers, and Fisher information at small amplitudes, where the
//! truncated basis is faithful. It never renormalizes: truncation error
//! stays visible in the norm.

use crate::ifshift::{self, BeamSpec};
use crate::interferometer::CoherentInputs;
use crate::numdiff;
use crate::optics::{self, LayerStack, OpticsError};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

/// Default bound on the probability allowed at the cutoff boundary.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// Hard per-mode cutoff cap; the oracle refuses rather than grow beyond it.
pub const MAX_CUTOFF: usize = 40;

/// Default finite-difference step of [`numerical_qfi`], radians.
pub const DEFAULT_QFI_STEP: f64 = 1e-6;

/// The three simulated modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Sensing mode `a`, which traverses the lossy reflection.
    Signal,
    /// Reference mode `b`.
    Reference,
    /// Ancilla vacuum mode behind the fictitious beam splitter.
    Ancilla,
}

impl Mode {
    fn axis(self) -> usize {
        match self {
            Mode::Signal => 0,
            Mode::Reference => 1,
            Mode::Ancilla => 2,
        }
    }
}

/// Oracle failures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FockError {
    /// The requested cutoff cannot hold the coherent inputs: the Poisson
    /// mass at or beyond the cutoff is `tail`.
    CutoffTooSmall { cutoff: usize, tail: f64 },
    /// A gate pushed `tail` probability onto the cutoff boundary.
    TailOverflow { tail: f64 },
    /// Automatic cutoff selection hit the hard cap.
    CutoffCapExceeded { cap: usize },
    /// Two states of different cutoffs cannot be combined.
    MismatchedCutoffs,
    /// Transmissivity must lie in [0, 1].
    InvalidTransmissivity(f64),
    /// The target parameter is stationary here; the finite-difference
    /// quotient carries no information.
    DegenerateParameter,
    /// The Richardson ladder of difference quotients failed to converge.
    InconsistentDifferences { spread: f64 },
    /// Propagated stack-evaluation failure.
    Optics(OpticsError),
}

impl fmt::Display for FockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockError::CutoffTooSmall { cutoff, tail } => write!(
                f,
                "cutoff {cutoff} too small: Poisson tail mass {tail:e} exceeds the tolerance"
            ),
            FockError::TailOverflow { tail } => {
                write!(f, "gate left tail mass {tail:e} at the cutoff boundary")
            }
            FockError::CutoffCapExceeded { cap } => {
                write!(
                    f,
                    "no cutoff up to the cap of {cap} keeps tails in tolerance"
                )
            }
            FockError::MismatchedCutoffs => write!(f, "states have different cutoffs"),
            FockError::InvalidTransmissivity(eta) => {
                write!(f, "transmissivity must be in [0, 1], got {eta}")
            }
            FockError::DegenerateParameter => {
                write!(
                    f,
                    "parameter is stationary at this angle; QFI quotient undefined"
                )
            }
            FockError::InconsistentDifferences { spread } => write!(
                f,
                "finite-difference QFI failed its Richardson consistency check (spread {spread:e})"
            ),
            FockError::Optics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FockError {}

impl From<OpticsError> for FockError {
    fn from(e: OpticsError) -> Self {
        FockError::Optics(e)
    }
}

/// Quadrature and number expectations of one mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    /// `<X>` with `X = (a + a^dag)/sqrt(2)`.
    pub mean_x: f64,
    /// `<X^2>`.
    pub mean_x_sq: f64,
    /// `<n>`.
    pub mean_n: f64,
}

/// Dense three-mode state vector over a common per-mode cutoff.
#[derive(Clone, Debug)]
pub struct FockState {
    amps: Vec<Complex64>,
    cutoff: usize,
}

impl FockState {
    /// Per-mode dimension, `cutoff + 1`.
    fn dim(&self) -> usize {
        self.cutoff + 1
    }

    fn stride(&self, mode: Mode) -> usize {
        let n = self.dim();
        match mode.axis() {
            0 => n * n,
            1 => n,
            _ => 1,
        }
    }

    /// The basis state `|n_signal, n_reference, n_ancilla>`.
    pub fn basis(cutoff: usize, occupation: (usize, usize, usize)) -> Self {
        let n = cutoff + 1;
        assert!(occupation.0 < n && occupation.1 < n && occupation.2 < n);
        let mut amps = vec![Complex64::ZERO; n * n * n];
        amps[(occupation.0 * n + occupation.1) * n + occupation.2] = Complex64::new(1.0, 0.0);
        FockState { amps, cutoff }
    }

    /// The product state `|alpha>_a |beta>_b |0>_v` in the truncated basis.
    ///
    /// No renormalization is applied, so truncation error remains visible
    /// in the norm. Fails when the Poisson mass of either input at or
    /// beyond the cutoff reaches [`DEFAULT_TAIL_TOL`].
    pub fn prepare(inputs: &CoherentInputs, cutoff: usize) -> Result<Self, FockError> {
        for mag in [inputs.alpha_mag(), inputs.beta_mag()] {
            let tail = poisson_tail(mag * mag, cutoff);
            if tail >= DEFAULT_TAIL_TOL {
                return Err(FockError::CutoffTooSmall { cutoff, tail });
            }
        }
        let ca = coherent_amplitudes(inputs.alpha(), cutoff);
        let cb = coherent_amplitudes(inputs.beta(), cutoff);
        let n = cutoff + 1;
        let mut amps = vec![Complex64::ZERO; n * n * n];
        for (i, &a) in ca.iter().enumerate() {
            for (j, &b) in cb.iter().enumerate() {
                amps[(i * n + j) * n] = a * b;
            }
        }
        Ok(FockState { amps, cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Squared norm; 1 minus this is the accumulated truncation loss.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &FockState) -> Result<Complex64, FockError> {
        if self.cutoff != other.cutoff {
            return Err(FockError::MismatchedCutoffs);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability mass sitting at the cutoff boundary of any mode.
    pub fn tail_mass(&self) -> f64 {
        let n = self.dim();
        let mut tail = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            let k = idx % n;
            let j = (idx / n) % n;
            let i = idx / (n * n);
            if i == self.cutoff || j == self.cutoff || k == self.cutoff {
                tail += amp.norm_sqr();
            }
        }
        tail
    }

    fn check_tail(&self) -> Result<(), FockError> {
        let tail = self.tail_mass();
        if tail >= DEFAULT_TAIL_TOL {
            Err(FockError::TailOverflow { tail })
        } else {
            Ok(())
        }
    }

    /// Apply the two-mode squeeze `exp(xi* a b - xi a^dag b^dag)` with
    /// `xi = gain e^{i phase}` on the given mode pair.
    pub fn apply_two_mode_squeeze(
        &mut self,
        gain: f64,
        phase: f64,
        modes: (Mode, Mode),
    ) -> Result<(), FockError> {
        assert!(gain >= 0.0, "squeeze gain must be non-negative");
        assert!(modes.0 != modes.1, "squeeze needs two distinct modes");
        if gain == 0.0 {
            return Ok(());
        }
        let xi = Complex64::from_polar(gain, phase);
        let (sa, sb) = (self.stride(modes.0), self.stride(modes.1));
        let n = self.dim();
        let generator = move |dst: &mut [Complex64], src: &[Complex64]| {
            for (idx, out) in dst.iter_mut().enumerate() {
                let i = state_occ(idx, sa, n);
                let j = state_occ(idx, sb, n);
                let mut acc = Complex64::ZERO;
                // xi* (a b) term: pulls amplitude down from (i+1, j+1).
                if i + 1 < n && j + 1 < n {
                    let w = (((i + 1) * (j + 1)) as f64).sqrt();
                    acc += xi.conj() * w * src[idx + sa + sb];
                }
                // -xi (a^dag b^dag) term: pulls amplitude up from (i-1, j-1).
                if i > 0 && j > 0 {
                    let w = ((i * j) as f64).sqrt();
                    acc -= xi * w * src[idx - sa - sb];
                }
                *out = acc;
            }
        };
        let norm_bound = 2.0 * gain * n as f64;
        self.exp_action(norm_bound, generator);
        self.check_tail()
    }

    /// Apply the fictitious beam splitter
    /// `exp[(a^dag a_v - a a_v^dag) arctan sqrt((1-eta)/eta)]`
    /// on the given (transmitted, ancilla) mode pair.
    pub fn apply_beam_splitter(&mut self, eta: f64, modes: (Mode, Mode)) -> Result<(), FockError> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(FockError::InvalidTransmissivity(eta));
        }
        assert!(modes.0 != modes.1, "beam splitter needs two distinct modes");
        if eta == 1.0 {
            return Ok(());
        }
        let angle = ((1.0 - eta) / eta).sqrt().atan();
        let (sa, sv) = (self.stride(modes.0), self.stride(modes.1));
        let n = self.dim();
        let generator = move |dst: &mut [Complex64], src: &[Complex64]| {
            for (idx, out) in dst.iter_mut().enumerate() {
                let i = state_occ(idx, sa, n);
                let k = state_occ(idx, sv, n);
                let mut acc = Complex64::ZERO;
                // a^dag a_v: amplitude flows from (i-1, k+1).
                if i > 0 && k + 1 < n {
                    let w = ((i * (k + 1)) as f64).sqrt();
                    acc += angle * w * src[idx - sa + sv];
                }
                // -a a_v^dag: amplitude flows from (i+1, k-1).
                if k > 0 && i + 1 < n {
                    let w = (((i + 1) * k) as f64).sqrt();
                    acc -= angle * w * src[idx + sa - sv];
                }
                *out = acc;
            }
        };
        let norm_bound = 2.0 * angle * n as f64;
        self.exp_action(norm_bound, generator);
        self.check_tail()
    }

    /// `exp(G)` applied to the state by sub-stepped Taylor series with a
    /// crude norm bound on `G`. `G` is anti-Hermitian, so each substep is
    /// unitary up to roundoff. Per-substep norm is capped at 4;
    /// intermediate-term growth e^4 costs about two digits against the
    /// 1e-12 unitarity budget.
    fn exp_action(&mut self, norm_bound: f64, generator: impl Fn(&mut [Complex64], &[Complex64])) {
        let substeps = (norm_bound / 4.0).ceil().max(1.0) as usize;
        let inv = 1.0 / substeps as f64;
        let len = self.amps.len();
        let mut term = vec![Complex64::ZERO; len];
        let mut next = vec![Complex64::ZERO; len];

        for _ in 0..substeps {
            term.copy_from_slice(&self.amps);
            let mut acc_norm: f64 = self.amps.iter().map(|a| a.norm_sqr()).sum();
            for order in 1..=80usize {
                generator(&mut next, &term);
                let scale = inv / order as f64;
                let mut term_norm = 0.0;
                for (t, nx) in term.iter_mut().zip(&next) {
                    *t = nx * scale;
                    term_norm += t.norm_sqr();
                }
                for (a, t) in self.amps.iter_mut().zip(&term) {
                    *a += t;
                }
                acc_norm += term_norm;
                if term_norm < 1e-32 * acc_norm {
                    break;
                }
            }
        }
    }

    /// Quadrature and number expectations of one mode via ladder-operator
    /// action on the dense vector.
    pub fn moments(&self, mode: Mode) -> Moments {
        let s = self.stride(mode);
        let n = self.dim();
        let mut mean_n = 0.0;
        let mut mean_a = Complex64::ZERO;
        let mut mean_aa = Complex64::ZERO;
        for (idx, amp) in self.amps.iter().enumerate() {
            let t = state_occ(idx, s, n);
            mean_n += t as f64 * amp.norm_sqr();
            if t + 1 < n {
                mean_a += amp.conj() * ((t + 1) as f64).sqrt() * self.amps[idx + s];
            }
            if t + 2 < n {
                mean_aa +=
                    amp.conj() * (((t + 1) * (t + 2)) as f64).sqrt() * self.amps[idx + 2 * s];
            }
        }
        let mean_x = core::f64::consts::SQRT_2 * mean_a.re;
        // X^2 = (a^2 + a^dag^2 + 2 n + 1) / 2.
        let mean_x_sq = 0.5 * (2.0 * mean_aa.re + 2.0 * mean_n + self.norm_sqr());
        Moments {
            mean_x,
            mean_x_sq,
            mean_n,
        }
    }
}

fn state_occ(idx: usize, stride: usize, dim: usize) -> usize {
    (idx / stride) % dim
}

/// Coherent-state amplitudes `e^{-|alpha|^2/2} alpha^k / sqrt(k!)` up to
/// the cutoff.
fn coherent_amplitudes(alpha: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(cutoff + 1);
    let mut term = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    amps.push(term);
    for k in 1..=cutoff {
        term *= alpha / (k as f64).sqrt();
        amps.push(term);
    }
    amps
}

/// Poisson mass at or beyond `cutoff` for intensity `lambda = |alpha|^2`.
///
/// Computed as one minus the CDF; for amplitudes far beyond the cutoff the
/// CDF underflows to zero and the tail correctly reports ~1.
fn poisson_tail(lambda: f64, cutoff: usize) -> f64 {
    let mut term = (-lambda).exp();
    let mut cdf = 0.0;
    for k in 0..cutoff {
        cdf += term;
        term *= lambda / (k + 1) as f64;
    }
    (1.0 - cdf).max(0.0)
}

/// Smallest cutoff (within a step of 2) whose trial pipeline keeps every
/// tail inside tolerance, capped at [`MAX_CUTOFF`].
pub fn select_cutoff(inputs: &CoherentInputs, gain: f64) -> Result<usize, FockError> {
    let mut cutoff = 1;
    loop {
        if cutoff > MAX_CUTOFF {
            return Err(FockError::CutoffCapExceeded { cap: MAX_CUTOFF });
        }
        match trial_cutoff(inputs, gain, cutoff) {
            Ok(()) => return Ok(cutoff),
            Err(FockError::CutoffTooSmall { .. }) | Err(FockError::TailOverflow { .. }) => {
                cutoff += 2;
            }
            Err(e) => return Err(e),
        }
    }
}

fn trial_cutoff(inputs: &CoherentInputs, gain: f64, cutoff: usize) -> Result<(), FockError> {
    // Run the balanced pipeline at full and intermediate loss to bound
    // the occupations later runs will see; the per-gate tail guards
    // remain the final authority at run time.
    for eta in [0.0, 0.5] {
        let mut state = FockState::prepare(inputs, cutoff)?;
        state.apply_two_mode_squeeze(gain, 0.0, (Mode::Signal, Mode::Reference))?;
        state.apply_beam_splitter(eta, (Mode::Signal, Mode::Ancilla))?;
        state.apply_two_mode_squeeze(
            gain,
            core::f64::consts::PI,
            (Mode::Signal, Mode::Reference),
        )?;
    }
    Ok(())
}

/// Which parameter the numerical Fisher information targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfiParameter {
    /// The transverse shift, through the local angle reparameterization.
    Shift,
    /// The incident angle itself.
    IncidentAngle,
}

/// Fisher information of the pre-recombination state from state overlaps:
/// `F = 4 [ <psi'|psi'> - |<psi0|psi'>|^2 ]` with
/// `|psi'> = (psi_plus - psi_minus) / (2 dstep)`.
pub fn qfi_from_states(
    psi0: &FockState,
    psi_plus: &FockState,
    psi_minus: &FockState,
    dstep: f64,
) -> Result<f64, FockError> {
    let pp = psi_plus.overlap(psi_plus)?.re;
    let mm = psi_minus.overlap(psi_minus)?.re;
    let pm = psi_plus.overlap(psi_minus)?;
    let deriv_norm_sq = (pp + mm - 2.0 * pm.re) / (4.0 * dstep * dstep);
    let cross = (psi0.overlap(psi_plus)? - psi0.overlap(psi_minus)?) / (2.0 * dstep);
    Ok(4.0 * (deriv_norm_sq - cross.norm_sqr()))
}

/// Numerical Fisher information at `theta` for the state prepared by the
/// first OPA (gain, pump phase) and the lossy reflection, prior to the
/// second OPA.
///
/// The state is differentiated by central finite differences at steps
/// `dstep, dstep/2, dstep/4` (radians) with a Richardson consistency
/// check. The shift parameter is handled through the local
/// reparameterization `F_Y = F_theta / (dY/d theta)^2`.
pub fn numerical_qfi(
    inputs: &CoherentInputs,
    gain: f64,
    pump_phase: f64,
    stack: &LayerStack,
    beam: &BeamSpec,
    theta: f64,
    which: QfiParameter,
    dstep: f64,
    cutoff: usize,
) -> Result<f64, FockError> {
    let refl = optics::reflectance(stack, theta)?;
    if refl.deta_dtheta.abs() < 1e-12 {
        return Err(FockError::DegenerateParameter);
    }

    let build = |th: f64| -> Result<FockState, FockError> {
        let eta = optics::reflectance(stack, th)?.eta;
        let mut state = FockState::prepare(inputs, cutoff)?;
        state.apply_two_mode_squeeze(gain, pump_phase, (Mode::Signal, Mode::Reference))?;
        state.apply_beam_splitter(eta, (Mode::Signal, Mode::Ancilla))?;
        Ok(state)
    };

    let psi0 = build(theta)?;
    let mut samples = [0.0; 3];
    for (level, sample) in samples.iter_mut().enumerate() {
        let h = dstep / (1u64 << level) as f64;
        let plus = build(theta + h)?;
        let minus = build(theta - h)?;
        *sample = qfi_from_states(&psi0, &plus, &minus, h)?;
    }
    let r1 = numdiff::richardson_sequence(&samples[..2]);
    let r2 = numdiff::richardson_sequence(&samples[1..]);
    let fisher_theta = numdiff::richardson_sequence(&samples);
    let spread = (r2 - r1).abs();
    if spread > 1e-3 * fisher_theta.abs() + 1e-12 {
        return Err(FockError::InconsistentDifferences { spread });
    }

    match which {
        QfiParameter::IncidentAngle => Ok(fisher_theta),
        QfiParameter::Shift => {
            let slope = ifshift::if_shift_slope(beam, stack, theta).map_err(|e| match e {
                ifshift::ShiftError::Optics(o) => FockError::Optics(o),
                _ => FockError::DegenerateParameter,
            })?;
            if slope.abs() < 1e-15 {
                return Err(FockError::DegenerateParameter);
            }
            Ok(fisher_theta / (slope * slope))
        }
    }
}
