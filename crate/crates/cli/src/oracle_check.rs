//! Closed-form-versus-oracle validation runs.
//!
//! Every balanced closed form the scans rely on — homodyne mean and
//! variance, the two photon numbers, and both Fisher informations — is
//! compared against the truncated-Fock-space simulation at the scenario's
//! amplitudes, and the deviations land in a machine-readable JSON report.

use crate::scenario::Scenario;
use crate::CliError;
use serde::Serialize;
use sprshift_core::fock_oracle::{
    numerical_qfi, select_cutoff, FockError, FockState, Mode, QfiParameter, DEFAULT_QFI_STEP,
};
use sprshift_core::interferometer::{
    homodyne_mean, homodyne_variance, photon_numbers, CoherentInputs,
};
use sprshift_core::{deg_to_rad, metrology};
use std::f64::consts::PI;

/// Absolute tolerance of the moment comparisons.
pub const MOMENT_TOL: f64 = 1e-8;

/// Relative tolerance of the Fisher-information comparisons.
pub const QFI_REL_TOL: f64 = 1e-4;

/// Transmissivities the moment comparisons sweep.
const ETA_GRID: [f64; 3] = [0.1, 0.5, 0.9];

#[derive(Debug, Serialize)]
pub struct ComparisonRecord {
    pub comparison: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub tolerance_kind: &'static str,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub alpha_mag: f64,
    pub beta_mag: f64,
    pub gain: f64,
    pub cutoff: usize,
    pub theta_deg: f64,
    pub records: Vec<ComparisonRecord>,
    pub all_pass: bool,
}

fn absolute(comparison: String, closed_form: f64, oracle: f64) -> ComparisonRecord {
    let deviation = (closed_form - oracle).abs();
    ComparisonRecord {
        comparison,
        closed_form,
        oracle,
        deviation,
        tolerance: MOMENT_TOL,
        tolerance_kind: "absolute",
        pass: deviation < MOMENT_TOL,
    }
}

fn relative(comparison: String, closed_form: f64, oracle: f64) -> ComparisonRecord {
    let deviation = (closed_form - oracle).abs() / closed_form.abs().max(f64::MIN_POSITIVE);
    ComparisonRecord {
        comparison,
        closed_form,
        oracle,
        deviation,
        tolerance: QFI_REL_TOL,
        tolerance_kind: "relative",
        pass: deviation < QFI_REL_TOL,
    }
}

fn oracle_err(e: FockError, inputs: &CoherentInputs) -> CliError {
    CliError::Oracle(format!(
        "with |alpha| = {}, |beta| = {}: {e}",
        inputs.alpha_mag(),
        inputs.beta_mag()
    ))
}

/// Run all comparisons for a scenario. The evaluation angle for the
/// Fisher-information checks is the midpoint of the scenario's scan.
pub fn run(scenario: &Scenario) -> Result<OracleReport, CliError> {
    let stack = scenario.stack()?;
    let beam = scenario.beam(&stack)?;
    let inputs = scenario.coherent_inputs()?;
    let opa = scenario.opa_settings()?;
    let g = opa.g1();
    let theta_deg = 0.5 * (scenario.scan.theta_min_deg + scenario.scan.theta_max_deg);
    let theta = deg_to_rad(theta_deg);

    let cutoff = select_cutoff(&inputs, g).map_err(|e| oracle_err(e, &inputs))?;
    let mut records = Vec::new();

    for &eta in &ETA_GRID {
        let mut state = FockState::prepare(&inputs, cutoff).map_err(|e| oracle_err(e, &inputs))?;
        state
            .apply_two_mode_squeeze(g, 0.0, (Mode::Signal, Mode::Reference))
            .map_err(|e| oracle_err(e, &inputs))?;
        let n_a = state.moments(Mode::Signal).mean_n;
        let n_total = n_a + state.moments(Mode::Reference).mean_n;
        state
            .apply_beam_splitter(eta, (Mode::Signal, Mode::Ancilla))
            .map_err(|e| oracle_err(e, &inputs))?;
        state
            .apply_two_mode_squeeze(g, PI, (Mode::Signal, Mode::Reference))
            .map_err(|e| oracle_err(e, &inputs))?;
        let m = state.moments(Mode::Signal);

        let mean_cf =
            homodyne_mean(&inputs, &opa, eta).map_err(|e| CliError::Computation(e.to_string()))?;
        let var_cf =
            homodyne_variance(&opa, eta).map_err(|e| CliError::Computation(e.to_string()))?;
        let (na_cf, nt_cf) =
            photon_numbers(&inputs, &opa).map_err(|e| CliError::Computation(e.to_string()))?;

        records.push(absolute(
            format!("homodyne_mean@eta={eta}"),
            mean_cf,
            m.mean_x,
        ));
        records.push(absolute(
            format!("homodyne_variance@eta={eta}"),
            var_cf,
            m.mean_x_sq - m.mean_x * m.mean_x,
        ));
        records.push(absolute(format!("n_after_opa1@eta={eta}"), na_cf, n_a));
        records.push(absolute(format!("n_total@eta={eta}"), nt_cf, n_total));
    }

    let (f_shift_cf, f_theta_cf) = metrology::qfi(&inputs, &opa, &stack, &beam, theta)?;
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
    .map_err(|e| oracle_err(e, &inputs))?;
    records.push(relative("qfi_theta".into(), f_theta_cf, f_theta));
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
    .map_err(|e| oracle_err(e, &inputs))?;
    records.push(relative("qfi_shift".into(), f_shift_cf, f_shift));

    let all_pass = records.iter().all(|r| r.pass);
    Ok(OracleReport {
        alpha_mag: inputs.alpha_mag(),
        beta_mag: inputs.beta_mag(),
        gain: g,
        cutoff,
        theta_deg,
        records,
        all_pass,
    })
}

/// Serialize the report; field order is declaration order, so the bytes
/// are deterministic.
pub fn to_json(report: &OracleReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Scenario;

    #[test]
    fn unrepresentable_amplitudes_are_refused_with_context() {
        let scenario = Scenario::paper_default();
        let err = run(&scenario).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("oracle"), "{msg}");
        assert!(msg.contains("50000"), "{msg}");
    }
}
