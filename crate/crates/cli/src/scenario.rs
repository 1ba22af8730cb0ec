//! Scenario files: the JSON schema, the built-in scenarios, and the
//! conversion into core types.
//!
//! All file-facing units are human-scale: angles in degrees, thickness
//! and wavelength in nanometers, waist in micrometers. Unknown keys are
//! rejected so a typo cannot silently fall back to a default.

use crate::CliError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sprshift_core::deg_to_rad;
use sprshift_core::ifshift::BeamSpec;
use sprshift_core::interferometer::{CoherentInputs, OpaSettings};
use sprshift_core::optics::LayerStack;
use std::path::Path;

/// Name of the built-in scenario with the reference parameters.
pub const PAPER_DEFAULT: &str = "paper-default";

/// Name of the built-in small-amplitude scenario the oracle check can
/// actually represent in Fock space.
pub const ORACLE_SMALL: &str = "oracle-small";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReIm {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackParams {
    pub eps_prism: f64,
    pub eps_gold: ReIm,
    pub thickness_gold_nm: f64,
    pub wavelength_nm: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamParams {
    pub oam_index: i32,
    pub waist_um: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputParams {
    pub alpha_mag: f64,
    pub alpha_phase_deg: f64,
    pub beta_mag: f64,
    pub beta_phase_deg: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpaParams {
    pub gain: f64,
    #[serde(default = "default_true")]
    pub balanced: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanParams {
    pub theta_min_deg: f64,
    pub theta_max_deg: f64,
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub stack: StackParams,
    pub beam: BeamParams,
    pub inputs: InputParams,
    pub opa: OpaParams,
    pub scan: ScanParams,
    #[serde(default = "default_trials")]
    pub trials: u32,
}

fn default_true() -> bool {
    true
}

fn default_trials() -> u32 {
    1
}

impl Scenario {
    /// The reference parameter set: eps_p = 2.22,
    /// eps_gold = -20.327 + 1.862i, 46 nm film, 780 nm light, 1000 um
    /// waist, g = 0.7, |alpha| = |beta| = 50000 at phases 0 / 180 deg,
    /// one trial, scanning 43.55..43.72 degrees.
    pub fn paper_default() -> Self {
        Scenario {
            stack: StackParams {
                eps_prism: 2.22,
                eps_gold: ReIm {
                    re: -20.327,
                    im: 1.862,
                },
                thickness_gold_nm: 46.0,
                wavelength_nm: 780.0,
            },
            beam: BeamParams {
                oam_index: 1,
                waist_um: 1000.0,
            },
            inputs: InputParams {
                alpha_mag: 50_000.0,
                alpha_phase_deg: 0.0,
                beta_mag: 50_000.0,
                beta_phase_deg: 180.0,
            },
            opa: OpaParams {
                gain: 0.7,
                balanced: true,
            },
            scan: ScanParams {
                theta_min_deg: 43.55,
                theta_max_deg: 43.72,
                steps: 2000,
            },
            trials: 1,
        }
    }

    /// Small-amplitude variant whose states fit in the truncated Fock
    /// basis: |alpha| = |beta| = 0.5, g = 0.2, centered on 43.5 degrees.
    pub fn oracle_small() -> Self {
        let mut s = Self::paper_default();
        s.inputs.alpha_mag = 0.5;
        s.inputs.beta_mag = 0.5;
        s.opa.gain = 0.2;
        s.scan = ScanParams {
            theta_min_deg: 43.3,
            theta_max_deg: 43.7,
            steps: 81,
        };
        s
    }

    /// Validated stack in SI units.
    pub fn stack(&self) -> Result<LayerStack, CliError> {
        let p = &self.stack;
        Ok(LayerStack::new(
            p.eps_prism,
            Complex64::new(p.eps_gold.re, p.eps_gold.im),
            p.thickness_gold_nm * 1e-9,
            p.wavelength_nm * 1e-9,
        )?)
    }

    /// Validated beam bound to this scenario's stack.
    pub fn beam(&self, stack: &LayerStack) -> Result<BeamSpec, CliError> {
        Ok(BeamSpec::for_stack(
            self.beam.oam_index,
            self.beam.waist_um * 1e-6,
            stack,
        )?)
    }

    /// Coherent inputs with phases converted to radians.
    pub fn coherent_inputs(&self) -> Result<CoherentInputs, CliError> {
        let p = &self.inputs;
        if p.alpha_mag < 0.0 || p.beta_mag < 0.0 {
            return Err(CliError::Validation(format!(
                "coherent magnitudes must be non-negative (alpha_mag {}, beta_mag {})",
                p.alpha_mag, p.beta_mag
            )));
        }
        Ok(CoherentInputs::new(
            p.alpha_mag,
            deg_to_rad(p.alpha_phase_deg),
            p.beta_mag,
            deg_to_rad(p.beta_phase_deg),
        ))
    }

    /// OPA settings; only the balanced configuration is meaningful for
    /// the closed-form scans this front end drives.
    pub fn opa_settings(&self) -> Result<OpaSettings, CliError> {
        if !self.opa.balanced {
            return Err(CliError::Validation(
                "opa.balanced must be true; the sensitivity closed forms assume the balanced \
                 configuration"
                    .into(),
            ));
        }
        if self.opa.gain < 0.0 {
            return Err(CliError::Validation(format!(
                "opa.gain must be non-negative (got {})",
                self.opa.gain
            )));
        }
        Ok(OpaSettings::balanced(self.opa.gain))
    }

    /// Uniform scan grid in radians, honoring any command-line override.
    pub fn grid(&self, override_scan: Option<ScanParams>) -> Result<Vec<f64>, CliError> {
        let scan = override_scan.unwrap_or(self.scan);
        build_grid(&scan)
    }

    /// Re-check every physical-validity invariant. Called at load so a
    /// bad file fails before any computation starts.
    pub fn validate(&self) -> Result<(), CliError> {
        let stack = self.stack()?;
        self.beam(&stack)?;
        self.coherent_inputs()?;
        self.opa_settings()?;
        build_grid(&self.scan)?;
        if self.trials == 0 {
            return Err(CliError::Validation("trials must be >= 1".into()));
        }
        Ok(())
    }
}

/// Build the inclusive uniform grid for a scan block.
pub fn build_grid(scan: &ScanParams) -> Result<Vec<f64>, CliError> {
    if scan.steps < 2 {
        return Err(CliError::Validation(format!(
            "scan.steps must be >= 2 (got {})",
            scan.steps
        )));
    }
    if !(scan.theta_min_deg > 0.0
        && scan.theta_min_deg < scan.theta_max_deg
        && scan.theta_max_deg < 90.0)
    {
        return Err(CliError::Validation(format!(
            "scan range must satisfy 0 < theta_min < theta_max < 90 degrees (got {} .. {})",
            scan.theta_min_deg, scan.theta_max_deg
        )));
    }
    let n = scan.steps;
    Ok((0..n)
        .map(|i| {
            deg_to_rad(
                scan.theta_min_deg
                    + (scan.theta_max_deg - scan.theta_min_deg) * i as f64 / (n - 1) as f64,
            )
        })
        .collect())
}

/// Load a scenario from a path or a built-in name.
pub fn load_scenario(spec: &str) -> Result<Scenario, CliError> {
    let scenario = match spec {
        PAPER_DEFAULT => Scenario::paper_default(),
        ORACLE_SMALL => Scenario::oracle_small(),
        path => {
            let text = std::fs::read_to_string(Path::new(path))?;
            parse_scenario(&text)?
        }
    };
    scenario.validate()?;
    Ok(scenario)
}

/// Parse scenario JSON, reporting line and column on failure.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!(
            "scenario JSON at line {}, column {}: {}",
            e.line(),
            e.column(),
            e
        ))
    })
}

/// Serialize a scenario to pretty JSON (the round-trip format).
pub fn to_json(scenario: &Scenario) -> String {
    serde_json::to_string_pretty(scenario).expect("scenario serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        assert!(load_scenario(PAPER_DEFAULT).is_ok());
        assert!(load_scenario(ORACLE_SMALL).is_ok());
    }

    #[test]
    fn round_trip_is_identical() {
        let s = Scenario::paper_default();
        let text = to_json(&s);
        let back = parse_scenario(&text).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut v: serde_json::Value =
            serde_json::from_str(&to_json(&Scenario::paper_default())).unwrap();
        v["stack"]["color"] = serde_json::json!("gold");
        let err = parse_scenario(&v.to_string()).unwrap_err();
        assert!(matches!(err, CliError::Parse(_)), "{err}");
        assert!(err.to_string().contains("color"));
    }

    #[test]
    fn negative_thickness_names_the_field() {
        let mut s = Scenario::paper_default();
        s.stack.thickness_gold_nm = -3.0;
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("thickness_gold"), "{err}");
    }

    #[test]
    fn parse_error_reports_position() {
        let err = parse_scenario("{ \"stack\": ").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") && msg.contains("column"), "{msg}");
    }

    #[test]
    fn grid_is_inclusive_and_uniform() {
        let grid = build_grid(&ScanParams {
            theta_min_deg: 10.0,
            theta_max_deg: 20.0,
            steps: 5,
        })
        .unwrap();
        assert_eq!(grid.len(), 5);
        assert!((grid[0] - deg_to_rad(10.0)).abs() < 1e-15);
        assert!((grid[4] - deg_to_rad(20.0)).abs() < 1e-15);
        assert!((grid[2] - deg_to_rad(15.0)).abs() < 1e-12);
    }
}
