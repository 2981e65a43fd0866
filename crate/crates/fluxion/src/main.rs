// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! `fluxion` — drive a four-level cycle from a JSON config and emit CSV
//! tables (or a text report). Thin argument layer over [`fluxion::cli`].

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use fluxion::cli::{self, CliError, InitialLevel, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "fluxion", version, about = "Nonreciprocal transitions in a driven four-level cycle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Populations over time (CSV: t, pop_a, pop_b, pop_c, pop_d, norm)
    Simulate(CommonOpts),
    /// Transition probabilities vs loop flux (CSV: phi, t_ab, t_ba, isolation, capped)
    SweepFlux(CommonOpts),
    /// Emission spectrum over a frequency window (CSV: omega_k, omega_k_minus_omega_ag, s_value)
    Spectrum(CommonOpts),
    /// Emission at the probe frequency vs loop flux (CSV: phi, s_value)
    SpectrumFlux(CommonOpts),
    /// Closed-form adiabatic report (text)
    Adiabatic(CommonOpts),
}

#[derive(Args)]
struct CommonOpts {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Output file (stdout when omitted); overrides the config `out` field
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the loop flux Φ in radians (gauge-fixed onto the a–c link)
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Override the simulation horizon
    #[arg(long)]
    t_end: Option<f64>,
    /// Override the number of time samples
    #[arg(long)]
    samples: Option<usize>,
    /// Override the number of flux grid points over (−π, π]
    #[arg(long)]
    flux_points: Option<usize>,
    /// Override the lower edge of the frequency window
    #[arg(long, allow_hyphen_values = true)]
    omega_lo: Option<f64>,
    /// Override the upper edge of the frequency window
    #[arg(long, allow_hyphen_values = true)]
    omega_hi: Option<f64>,
    /// Override the number of frequency samples
    #[arg(long)]
    omega_points: Option<usize>,
    /// Override the initial level
    #[arg(long, value_enum)]
    initial: Option<InitialLevel>,
}

impl CommonOpts {
    fn overrides(&self) -> Overrides {
        Overrides {
            phi: self.phi,
            t_end: self.t_end,
            samples: self.samples,
            flux_points: self.flux_points,
            omega_lo: self.omega_lo,
            omega_hi: self.omega_hi,
            omega_points: self.omega_points,
            initial: self.initial,
        }
    }
}

fn init_thread_cap() -> Result<(), CliError> {
    match std::env::var("FLUXION_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("FLUXION_THREADS must be an integer (got `{raw}`)")))?;
            if n == 0 {
                return Ok(()); // 0 = auto
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))
        }
    }
}

fn run(opts: &CommonOpts, f: impl Fn(&RunConfig) -> Result<String, CliError>) -> Result<(), CliError> {
    let config = RunConfig::load(&opts.config)?.apply(&opts.overrides());
    let output = f(&config)?;
    let out_path = opts
        .out
        .clone()
        .or_else(|| config.out.as_ref().map(PathBuf::from));
    match out_path {
        Some(path) => std::fs::write(path, output)?,
        None => {
            // A downstream pipe closing early (e.g. `fluxion ... | head`)
            // is not an error.
            if let Err(e) = std::io::stdout().write_all(output.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_thread_cap().and_then(|()| match &cli.command {
        Command::Simulate(o) => run(o, cli::cmd_simulate),
        Command::SweepFlux(o) => run(o, cli::cmd_sweep_flux),
        Command::Spectrum(o) => run(o, cli::cmd_spectrum),
        Command::SpectrumFlux(o) => run(o, cli::cmd_spectrum_flux),
        Command::Adiabatic(o) => run(o, cli::cmd_adiabatic),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fluxion: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
