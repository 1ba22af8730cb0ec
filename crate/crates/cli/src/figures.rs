//! Reproduction of the documented figure data sets.
//!
//! Each figure id maps to fixed columns and a default grid; identical
//! inputs produce byte-identical files. Angle-scan figures default to
//! 2000 points across the resonance window, amplitude figures to a
//! 40 x 40 grid of coherent amplitudes at the shift-peak angles.

use crate::commands;
use crate::output::{Format, Table};
use crate::scenario::{ScanParams, Scenario};
use crate::CliError;
use sprshift_core::ifshift::{find_if_peaks, BeamSpec};
use sprshift_core::interferometer::CoherentInputs;
use sprshift_core::metrology;
use sprshift_core::optics::LayerStack;
use sprshift_core::{deg_to_rad, rad_to_deg};

const M_PER_UM: f64 = 1e-6;

/// Window every resonance figure displays.
const RESONANCE_SCAN: ScanParams = ScanParams {
    theta_min_deg: 43.55,
    theta_max_deg: 43.72,
    steps: 2000,
};

/// Wide window for the bare reflectivity curve.
const REFLECTIVITY_SCAN: ScanParams = ScanParams {
    theta_min_deg: 40.0,
    theta_max_deg: 50.0,
    steps: 2000,
};

/// Bracket used to locate the shift peaks for the amplitude figures.
const PEAK_BRACKET: (f64, f64) = (43.0, 44.5);

/// Amplitude sweep of the coherent-amplitude figures.
const AMPLITUDE_MIN: f64 = 5_000.0;
const AMPLITUDE_MAX: f64 = 100_000.0;
const AMPLITUDE_STEPS: usize = 40;

/// The reproducible figures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    Fig1b,
    Fig2,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
    Fig6,
    Fig7,
    Fig8a,
    Fig8b,
    Fig9,
    Fig10a,
    Fig10b,
    Fig11,
}

impl FigureId {
    pub const ALL: [FigureId; 14] = [
        FigureId::Fig1b,
        FigureId::Fig2,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig5a,
        FigureId::Fig5b,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8a,
        FigureId::Fig8b,
        FigureId::Fig9,
        FigureId::Fig10a,
        FigureId::Fig10b,
        FigureId::Fig11,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig1b => "fig1b",
            FigureId::Fig2 => "fig2",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig5a => "fig5a",
            FigureId::Fig5b => "fig5b",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8a => "fig8a",
            FigureId::Fig8b => "fig8b",
            FigureId::Fig9 => "fig9",
            FigureId::Fig10a => "fig10a",
            FigureId::Fig10b => "fig10b",
            FigureId::Fig11 => "fig11",
        }
    }

    pub fn parse(id: &str) -> Result<Self, CliError> {
        Self::ALL
            .iter()
            .find(|f| f.name() == id)
            .copied()
            .ok_or_else(|| CliError::UnknownFigure {
                id: id.to_string(),
                valid: Self::ALL
                    .iter()
                    .map(|f| f.name())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }
}

/// Build the figure's data table. `override_scan` replaces the default
/// angle grid of the theta-scan figures; amplitude figures ignore it.
pub fn build_figure(
    figure: FigureId,
    scenario: &Scenario,
    override_scan: Option<ScanParams>,
) -> Result<Table, CliError> {
    let theta_grid = |default: ScanParams| -> Result<Vec<f64>, CliError> {
        crate::scenario::build_grid(&override_scan.unwrap_or(default))
    };

    match figure {
        FigureId::Fig1b => {
            let grid = theta_grid(REFLECTIVITY_SCAN)?;
            let full = commands::reflectivity(scenario, &grid)?;
            let mut table = Table::new(&["theta[deg]", "reflectivity[1]"]);
            for row in full.rows() {
                table.push_row(vec![row[0], row[1]]);
            }
            Ok(table)
        }
        FigureId::Fig2 => {
            let grid = theta_grid(RESONANCE_SCAN)?;
            let stack = scenario.stack()?;
            let mut table = Table::new(&[
                "theta[deg]",
                "Y_over_lambda_l1[1]",
                "Y_over_lambda_l2[1]",
                "Y_over_lambda_l3[1]",
            ]);
            let beams: Vec<BeamSpec> = (1..=3)
                .map(|l| scenario_beam_with_l(scenario, &stack, l))
                .collect::<Result<_, _>>()?;
            for &theta in &grid {
                let mut row = vec![rad_to_deg(theta)];
                for beam in &beams {
                    row.push(
                        sprshift_core::ifshift::if_shift(beam, &stack, theta)
                            .map(|s| s.shift_over_wavelength)
                            .unwrap_or(f64::NAN),
                    );
                }
                table.push_row(row);
            }
            Ok(table)
        }
        FigureId::Fig4a => {
            let grid = theta_grid(RESONANCE_SCAN)?;
            let full = commands::ifshift(scenario, &grid)?;
            let mut table = Table::new(&["theta[deg]", "Y[um]"]);
            for row in full.rows() {
                table.push_row(vec![row[0], row[1]]);
            }
            Ok(table)
        }
        FigureId::Fig4b => {
            let grid = theta_grid(RESONANCE_SCAN)?;
            let rows = commands::run_scan(scenario, &grid)?;
            let mut table = Table::new(&["theta[deg]", "delta_Y[um]"]);
            for r in &rows {
                table.push_row(vec![rad_to_deg(r.theta), r.delta_shift / M_PER_UM]);
            }
            Ok(table)
        }
        FigureId::Fig6 => {
            let grid = theta_grid(RESONANCE_SCAN)?;
            let stack = scenario.stack()?;
            let inputs = scenario.coherent_inputs()?;
            let opa = scenario.opa_settings()?;
            let mut table = Table::new(&[
                "theta[deg]",
                "delta_Y_l1[um]",
                "delta_Y_l2[um]",
                "delta_Y_l3[um]",
            ]);
            let mut columns = Vec::new();
            for l in 1..=3 {
                let beam = scenario_beam_with_l(scenario, &stack, l)?;
                columns.push(metrology::scan(
                    &inputs,
                    &opa,
                    &stack,
                    &beam,
                    &grid,
                    scenario.trials,
                )?);
            }
            for i in 0..grid.len() {
                table.push_row(vec![
                    rad_to_deg(grid[i]),
                    columns[0][i].delta_shift / M_PER_UM,
                    columns[1][i].delta_shift / M_PER_UM,
                    columns[2][i].delta_shift / M_PER_UM,
                ]);
            }
            Ok(table)
        }
        FigureId::Fig7 => {
            let grid = theta_grid(RESONANCE_SCAN)?;
            let rows = commands::run_scan(scenario, &grid)?;
            let mut table = Table::new(&["theta[deg]", "delta_theta[deg]"]);
            for r in &rows {
                table.push_row(vec![rad_to_deg(r.theta), rad_to_deg(r.delta_theta)]);
            }
            Ok(table)
        }
        FigureId::Fig9 => {
            let grid = theta_grid(RESONANCE_SCAN)?;
            let rows = commands::run_scan(scenario, &grid)?;
            let mut table = Table::new(&["theta[deg]", "delta_Y[um]", "qcrb_Y[um]", "snl_Y[um]"]);
            for r in &rows {
                table.push_row(vec![
                    rad_to_deg(r.theta),
                    r.delta_shift / M_PER_UM,
                    r.qcrb_shift / M_PER_UM,
                    r.snl_shift / M_PER_UM,
                ]);
            }
            Ok(table)
        }
        FigureId::Fig11 => {
            let grid = theta_grid(RESONANCE_SCAN)?;
            let rows = commands::run_scan(scenario, &grid)?;
            let mut table = Table::new(&[
                "theta[deg]",
                "delta_theta[deg]",
                "qcrb_theta[deg]",
                "snl_theta[deg]",
            ]);
            for r in &rows {
                table.push_row(vec![
                    rad_to_deg(r.theta),
                    rad_to_deg(r.delta_theta),
                    rad_to_deg(r.qcrb_theta),
                    rad_to_deg(r.snl_theta),
                ]);
            }
            Ok(table)
        }
        FigureId::Fig5a | FigureId::Fig5b => {
            amplitude_figure(scenario, figure == FigureId::Fig5b, "delta_Y[um]", |r| {
                r.delta_shift / M_PER_UM
            })
        }
        FigureId::Fig8a | FigureId::Fig8b => amplitude_figure(
            scenario,
            figure == FigureId::Fig8b,
            "delta_theta[deg]",
            |r| rad_to_deg(r.delta_theta),
        ),
        FigureId::Fig10a | FigureId::Fig10b => {
            amplitude_figure(scenario, figure == FigureId::Fig10b, "qcrb_Y[um]", |r| {
                r.qcrb_shift / M_PER_UM
            })
        }
    }
}

fn scenario_beam_with_l(
    scenario: &Scenario,
    stack: &LayerStack,
    l: i32,
) -> Result<BeamSpec, CliError> {
    Ok(BeamSpec::for_stack(
        l,
        scenario.beam.waist_um * 1e-6,
        stack,
    )?)
}

/// Sweep both coherent amplitudes at one of the two shift-peak angles
/// (`upper = false` picks the smaller angle, the positive-shift peak for
/// positive OAM).
fn amplitude_figure(
    scenario: &Scenario,
    upper: bool,
    value_header: &str,
    extract: impl Fn(&metrology::SensitivityReport) -> f64,
) -> Result<Table, CliError> {
    let stack = scenario.stack()?;
    let beam = scenario.beam(&stack)?;
    let opa = scenario.opa_settings()?;
    let peaks = find_if_peaks(
        &beam,
        &stack,
        (deg_to_rad(PEAK_BRACKET.0), deg_to_rad(PEAK_BRACKET.1)),
    )?;
    let lower_angle = peaks.theta_pos.min(peaks.theta_neg);
    let upper_angle = peaks.theta_pos.max(peaks.theta_neg);
    let theta = if upper { upper_angle } else { lower_angle };

    let mut table = Table::new(&["alpha_mag[1]", "beta_mag[1]", value_header]);
    let amp = |i: usize| {
        AMPLITUDE_MIN + (AMPLITUDE_MAX - AMPLITUDE_MIN) * i as f64 / (AMPLITUDE_STEPS - 1) as f64
    };
    for i in 0..AMPLITUDE_STEPS {
        for j in 0..AMPLITUDE_STEPS {
            let inputs = CoherentInputs::new(
                amp(i),
                deg_to_rad(scenario.inputs.alpha_phase_deg),
                amp(j),
                deg_to_rad(scenario.inputs.beta_phase_deg),
            );
            let rows = metrology::scan(&inputs, &opa, &stack, &beam, &[theta], scenario.trials)?;
            table.push_row(vec![amp(i), amp(j), extract(&rows[0])]);
        }
    }
    Ok(table)
}

/// Render a figure to bytes in the requested format.
pub fn render_figure(
    figure: FigureId,
    scenario: &Scenario,
    override_scan: Option<ScanParams>,
    format: Format,
) -> Result<Vec<u8>, CliError> {
    let table = build_figure(figure, scenario, override_scan)?;
    let mut buf = Vec::new();
    table.write(&mut buf, format)?;
    Ok(buf)
}
