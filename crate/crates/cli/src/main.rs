//! Command-line front end: angle scans, figure reproduction, and the
//! oracle self-check, emitting deterministic CSV or JSON.

use clap::{Args, Parser, Subcommand};
use sprshift_cli::figures::{self, FigureId};
use sprshift_cli::output::{Format, Table};
use sprshift_cli::scenario::{self, ScanParams, Scenario};
use sprshift_cli::{commands, oracle_check, CliError};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "sprshift",
    about = "Plasmonic beam-shift sensitivity scans on an SU(1,1) interferometer",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file path, or a built-in name (paper-default, oracle-small).
    #[arg(long, default_value = scenario::PAPER_DEFAULT)]
    scenario: String,

    /// Override the scan start angle, degrees.
    #[arg(long)]
    theta_min: Option<f64>,

    /// Override the scan end angle, degrees.
    #[arg(long)]
    theta_max: Option<f64>,

    /// Override the number of scan points.
    #[arg(long)]
    steps: Option<usize>,

    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

impl CommonArgs {
    fn load(&self) -> Result<(Scenario, Format), CliError> {
        let scenario = scenario::load_scenario(&self.scenario)?;
        let format: Format = self.format.parse()?;
        Ok((scenario, format))
    }

    /// The scan override, when any of the three flags is present.
    fn scan_override(&self, base: ScanParams) -> Option<ScanParams> {
        if self.theta_min.is_none() && self.theta_max.is_none() && self.steps.is_none() {
            return None;
        }
        Some(ScanParams {
            theta_min_deg: self.theta_min.unwrap_or(base.theta_min_deg),
            theta_max_deg: self.theta_max.unwrap_or(base.theta_max_deg),
            steps: self.steps.unwrap_or(base.steps),
        })
    }

    fn write_bytes(&self, bytes: &[u8]) -> Result<(), CliError> {
        match &self.output {
            Some(path) => std::fs::write(path, bytes)?,
            None => std::io::stdout().write_all(bytes)?,
        }
        Ok(())
    }

    fn write_table(&self, table: &Table, format: Format) -> Result<(), CliError> {
        let mut buf = Vec::new();
        table.write(&mut buf, format)?;
        self.write_bytes(&buf)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reflectivity and transmissivity across the angle grid.
    Reflectivity(CommonArgs),
    /// Transverse beam shift across the angle grid.
    Ifshift(CommonArgs),
    /// Homodyne shift and angle sensitivities across the grid.
    Sensitivity(CommonArgs),
    /// Sensitivities with shot-noise limits and Cramer-Rao bounds.
    Limits(CommonArgs),
    /// Reproduce one documented figure's data set.
    Figure {
        /// Figure id (fig1b, fig2, fig4a, fig4b, fig5a, fig5b, fig6,
        /// fig7, fig8a, fig8b, fig9, fig10a, fig10b, fig11).
        id: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare every closed form against the Fock-space oracle.
    OracleCheck {
        /// Scenario file path, or a built-in name; must be small enough
        /// for the truncated basis (see oracle-small).
        #[arg(long, default_value = scenario::ORACLE_SMALL)]
        scenario: String,

        /// Report file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Reflectivity(args) => {
            let (scenario, format) = args.load()?;
            let grid = scenario.grid(args.scan_override(scenario.scan))?;
            args.write_table(&commands::reflectivity(&scenario, &grid)?, format)
        }
        Command::Ifshift(args) => {
            let (scenario, format) = args.load()?;
            let grid = scenario.grid(args.scan_override(scenario.scan))?;
            args.write_table(&commands::ifshift(&scenario, &grid)?, format)
        }
        Command::Sensitivity(args) => {
            let (scenario, format) = args.load()?;
            let grid = scenario.grid(args.scan_override(scenario.scan))?;
            args.write_table(&commands::sensitivity(&scenario, &grid)?, format)
        }
        Command::Limits(args) => {
            let (scenario, format) = args.load()?;
            let grid = scenario.grid(args.scan_override(scenario.scan))?;
            args.write_table(&commands::limits(&scenario, &grid)?, format)
        }
        Command::Figure { id, common } => {
            let figure = FigureId::parse(&id)?;
            let (scenario, format) = common.load()?;
            let override_scan = common.scan_override(ScanParams {
                theta_min_deg: 43.55,
                theta_max_deg: 43.72,
                steps: 2000,
            });
            let bytes = figures::render_figure(figure, &scenario, override_scan, format)?;
            common.write_bytes(&bytes)
        }
        Command::OracleCheck { scenario, output } => {
            let scenario = scenario::load_scenario(&scenario)?;
            let report = oracle_check::run(&scenario)?;
            let text = oracle_check::to_json(&report);
            match &output {
                Some(path) => std::fs::write(path, &text)?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            if report.all_pass {
                Ok(())
            } else {
                let failed = report.records.iter().filter(|r| !r.pass).count();
                Err(CliError::OracleMismatch(failed))
            }
        }
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
