//! Command-line front end. Every subcommand writes CSV tables into `--out`
//! and prints the written paths; failures print a one-line JSON summary on
//! stderr and exit with status 1.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use co2_pathways::config::{read_config, read_mac_data, OutputKind, ScenarioConfig};
use co2_pathways::mac::fit_mac;
use co2_pathways::sweep::{run_sweep_with, SweepOptions};
use co2_pathways::table::{write_to_dir, Cell, Column, ResultTable};
use co2_pathways::Error;

#[derive(Debug, Parser)]
#[command(
    name = "co2-pathways",
    version,
    about = "CO2 mitigation pathways and expenditures"
)]
struct Cli {
    /// TOML scenario file; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory receiving the CSV tables.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit the MAC curve to a two-column data file.
    FitMac {
        #[arg(long)]
        data: PathBuf,
        /// Emissions the reductions are measured against, Gt CO2/yr
        /// (default: current emissions from the config).
        #[arg(long)]
        reference_emissions: Option<f64>,
    },
    /// Pathway, expenditure and burden tables for each goal and growth rate.
    Pathway,
    /// Run the outputs listed in the config.
    Sweep,
    /// Expenditure against cumulative emissions for constant rates.
    CostCurve,
    /// Cost fraction against goal and its power-law fit.
    PowerLaw,
    /// Early versus delayed mitigation for each goal.
    Delay,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("usage", &e.to_string());
            return ExitCode::FAILURE;
        }
    };
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            report(e.kind(), &e.to_string());
            ExitCode::FAILURE
        }
    }
}

fn report(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": kind, "message": message.trim() }));
}

fn run(cli: &Cli) -> Result<Vec<PathBuf>, Error> {
    let Format::Csv = cli.format;
    let mut config = match &cli.config {
        Some(path) => read_config(path)?,
        None => ScenarioConfig::default(),
    };
    let outputs = match &cli.command {
        Command::FitMac {
            data,
            reference_emissions,
        } => {
            return fit_mac_command(&config, data, *reference_emissions, &cli.out);
        }
        Command::Sweep => None,
        Command::Pathway => Some(vec![
            OutputKind::Pathway,
            OutputKind::Expenditure,
            OutputKind::Burden,
        ]),
        Command::CostCurve => Some(vec![OutputKind::CostCurve]),
        Command::PowerLaw => Some(vec![OutputKind::PowerLaw]),
        Command::Delay => Some(vec![OutputKind::Delay]),
    };
    if let Some(outputs) = outputs {
        config.outputs = outputs;
    }
    let tables = run_sweep_with(
        &config,
        SweepOptions {
            threads: cli.threads,
        },
    )?;
    for t in &tables {
        if let Some(Cell::Flag(flag)) = t.rows.first().and_then(|r| r.first()) {
            let detail = t
                .footer
                .iter()
                .find(|l| l.starts_with("error_kind="))
                .cloned()
                .unwrap_or_default();
            eprintln!(
                "{}",
                json!({ "warning": flag, "table": t.name, "detail": detail })
            );
        }
    }
    tables.iter().map(|t| write_to_dir(t, &cli.out)).collect()
}

fn fit_mac_command(
    config: &ScenarioConfig,
    data: &Path,
    reference: Option<f64>,
    out: &Path,
) -> Result<Vec<PathBuf>, Error> {
    let points = read_mac_data(data)?;
    let economy = config.economy();
    let reference = reference.unwrap_or_else(|| economy.m0());
    let fit = fit_mac(&points, reference, economy.mu0)?;
    let mut table = ResultTable::new(
        "mac_fit",
        vec![
            Column::new("alpha", "$/tCO2"),
            Column::new("alpha_se", "$/tCO2"),
            Column::new("nu", "1"),
            Column::new("nu_se", "1"),
            Column::new("residual_se", "ln"),
            Column::new("r_squared", "1"),
            Column::new("n_points", "1"),
        ],
    );
    table.push_numbers(&[
        fit.curve.alpha,
        fit.alpha_se,
        fit.curve.nu,
        fit.nu_se,
        fit.residual_se,
        fit.r_squared,
        fit.n_points as f64,
    ]);
    table.note(format!(
        "data={} reference_emissions_gtco2_per_yr={reference}",
        data.display()
    ));
    Ok(vec![write_to_dir(&table, out)?])
}
