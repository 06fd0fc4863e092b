//! Command-line front end: reproducible tables and curve data for spectra,
//! coefficients, states, weight functions, moment reports and thermal
//! sweeps.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "pasipcs",
    version,
    about = "Photon-added coherent states for the first-type Poschl-Teller model: tables and curve data"
)]
struct Cli {
    /// Flat key-value configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<String>,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Z-functional choice.
    #[arg(long, global = true, value_parser = ["phase", "gamma"])]
    choice: Option<String>,

    /// Comma-separated photon-added numbers, e.g. `--m 0,1,2`.
    #[arg(long, global = true)]
    m: Option<String>,

    /// Comma-separated inverse temperatures, e.g. `--beta 0.5,1,2`.
    #[arg(long, global = true)]
    beta: Option<String>,

    /// Check tolerance override.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy levels: partial sums against the closed form.
    Spectrum,
    /// Expansion coefficients with the raw-product cross-check.
    Coeffs,
    /// Fock amplitude table of one photon-added state.
    State,
    /// Weight function curves for the configured variant.
    Weight,
    /// The caption configuration: phase-only curves for m = 0..4.
    Figure1,
    /// Stieltjes moment report (quadrature vs |K_n^m|²).
    Moments,
    /// Thermal sweep with closed-form deviation columns.
    Thermal,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Coeffs => "coeffs",
            Command::State => "state",
            Command::Weight => "weight",
            Command::Figure1 => "figure1",
            Command::Moments => "moments",
            Command::Thermal => "thermal",
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config file `{path}`"))?;
            RunConfig::parse(&text).with_context(|| format!("config file `{path}`"))?
        }
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(format) = &cli.format {
        cfg.format = format.clone();
    }
    if let Some(choice) = &cli.choice {
        cfg.choice = choice.clone();
    }
    if let Some(m) = &cli.m {
        cfg.m_list = m
            .split(',')
            .map(|tok| tok.trim().parse().context("flag --m"))
            .collect::<Result<_>>()?;
    }
    if let Some(beta) = &cli.beta {
        cfg.beta_list = beta
            .split(',')
            .map(|tok| tok.trim().parse().context("flag --beta"))
            .collect::<Result<_>>()?;
    }
    if let Some(tol) = cli.tol {
        cfg.tol = tol;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let (table, pass) = match commands::run(cli.command.name(), &cfg) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let rendered = table.render(&cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                eprintln!("error: cannot write `{path}`: {e}");
                return ExitCode::FAILURE;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("one or more checks exceeded the configured tolerance");
        ExitCode::FAILURE
    }
}
