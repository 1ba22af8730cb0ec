//! The angle-scan subcommands: reflectivity, ifshift, sensitivity, limits.
//!
//! Internal radians and meters are converted to file-facing degrees and
//! micrometers here and nowhere else. Angular derivatives and Fisher
//! informations are rescaled accordingly (per degree, per degree squared,
//! per micrometer squared).

use crate::output::Table;
use crate::scenario::Scenario;
use crate::CliError;
use sprshift_core::ifshift;
use sprshift_core::metrology::{self, SensitivityReport};
use sprshift_core::{optics, rad_to_deg};

const RAD_PER_DEG: f64 = std::f64::consts::PI / 180.0;
const M_PER_UM: f64 = 1e-6;

/// `|r|`, `eta`, and the transmissivity slope across the grid.
pub fn reflectivity(scenario: &Scenario, grid: &[f64]) -> Result<Table, CliError> {
    let stack = scenario.stack()?;
    let mut table = Table::new(&[
        "theta[deg]",
        "reflectivity[1]",
        "eta[1]",
        "deta_dtheta[1/deg]",
    ]);
    for &theta in grid {
        let row = match optics::reflectance(&stack, theta) {
            Ok(r) => vec![rad_to_deg(theta), r.mag, r.eta, r.deta_dtheta * RAD_PER_DEG],
            Err(_) => vec![rad_to_deg(theta), f64::NAN, f64::NAN, f64::NAN],
        };
        table.push_row(row);
    }
    Ok(table)
}

/// Transverse shift across the grid, in micrometers and wavelengths.
pub fn ifshift(scenario: &Scenario, grid: &[f64]) -> Result<Table, CliError> {
    let stack = scenario.stack()?;
    let beam = scenario.beam(&stack)?;
    warn_if_narrow_waist(&beam);
    let mut table = Table::new(&["theta[deg]", "Y[um]", "Y_over_lambda[1]"]);
    for &theta in grid {
        let row = match ifshift::if_shift(&beam, &stack, theta) {
            Ok(s) => vec![
                rad_to_deg(theta),
                s.shift / M_PER_UM,
                s.shift_over_wavelength,
            ],
            Err(_) => vec![rad_to_deg(theta), f64::NAN, f64::NAN],
        };
        table.push_row(row);
    }
    Ok(table)
}

/// Homodyne sensitivities across the grid.
pub fn sensitivity(scenario: &Scenario, grid: &[f64]) -> Result<Table, CliError> {
    let rows = run_scan(scenario, grid)?;
    let mut table = Table::new(&[
        "theta[deg]",
        "eta[1]",
        "Y[um]",
        "delta_Y[um]",
        "delta_theta[deg]",
    ]);
    for r in &rows {
        table.push_row(vec![
            rad_to_deg(r.theta),
            r.eta,
            r.shift / M_PER_UM,
            r.delta_shift / M_PER_UM,
            rad_to_deg(r.delta_theta),
        ]);
    }
    Ok(table)
}

/// Sensitivities together with the shot-noise limits, Cramer-Rao bounds,
/// and Fisher informations.
pub fn limits(scenario: &Scenario, grid: &[f64]) -> Result<Table, CliError> {
    let rows = run_scan(scenario, grid)?;
    let mut table = Table::new(&[
        "theta[deg]",
        "eta[1]",
        "Y[um]",
        "delta_Y[um]",
        "delta_theta[deg]",
        "snl_Y[um]",
        "snl_theta[deg]",
        "qcrb_Y[um]",
        "qcrb_theta[deg]",
        "fisher_Y[1/um^2]",
        "fisher_theta[1/deg^2]",
        "trials[1]",
    ]);
    for r in &rows {
        table.push_row(vec![
            rad_to_deg(r.theta),
            r.eta,
            r.shift / M_PER_UM,
            r.delta_shift / M_PER_UM,
            rad_to_deg(r.delta_theta),
            r.snl_shift / M_PER_UM,
            rad_to_deg(r.snl_theta),
            r.qcrb_shift / M_PER_UM,
            rad_to_deg(r.qcrb_theta),
            r.fisher_shift * M_PER_UM * M_PER_UM,
            r.fisher_theta * RAD_PER_DEG * RAD_PER_DEG,
            r.trials as f64,
        ]);
    }
    Ok(table)
}

/// Shared full-report scan.
pub fn run_scan(scenario: &Scenario, grid: &[f64]) -> Result<Vec<SensitivityReport>, CliError> {
    let stack = scenario.stack()?;
    let beam = scenario.beam(&stack)?;
    warn_if_narrow_waist(&beam);
    let inputs = scenario.coherent_inputs()?;
    let opa = scenario.opa_settings()?;
    Ok(metrology::scan(
        &inputs,
        &opa,
        &stack,
        &beam,
        grid,
        scenario.trials,
    )?)
}

fn warn_if_narrow_waist(beam: &sprshift_core::ifshift::BeamSpec) {
    if !beam.large_waist_valid() {
        eprintln!(
            "warning: beam waist times wave number is {:.1}, below 1e3; the large-waist \
             shift formula is suspect here",
            beam.waist() * beam.k0()
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::ScanParams;

    #[test]
    fn limits_table_has_full_width() {
        let scenario = Scenario::paper_default();
        let grid = scenario
            .grid(Some(ScanParams {
                theta_min_deg: 43.6,
                theta_max_deg: 43.65,
                steps: 4,
            }))
            .unwrap();
        let table = limits(&scenario, &grid).unwrap();
        assert_eq!(table.headers().len(), 12);
        assert_eq!(table.rows().len(), 4);
        // Angles leave in degrees.
        assert!((table.rows()[0][0] - 43.6).abs() < 1e-12);
    }

    #[test]
    fn reflectivity_scan_brackets_the_dip() {
        let scenario = Scenario::paper_default();
        let grid = scenario.grid(None).unwrap();
        let table = reflectivity(&scenario, &grid).unwrap();
        let min_row = table
            .rows()
            .iter()
            .min_by(|a, b| a[1].total_cmp(&b[1]))
            .unwrap();
        assert!(
            (min_row[0] - 43.6309).abs() < 0.001,
            "dip at {}",
            min_row[0]
        );
    }
}
