use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use isomorph_cli::{probe, sample, CliError, SampleOptions};

/// Random-walk Metropolis with isotropic variable transformations.
#[derive(Debug, Parser)]
#[command(name = "isomorph", version)]
struct Cli {
    /// Suppress the per-chain summary lines of `sample`.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the sampler and write draws plus a report.
    Sample {
        config: PathBuf,
        /// Number of concurrent chains; chain i uses generator stream i.
        #[arg(long, default_value_t = 1)]
        chains: usize,
        /// Also write the γ-space draws.
        #[arg(long)]
        emit_gamma: bool,
    },
    /// Probe tail lightness and curvature of the target and transformed density.
    Probe { config: PathBuf },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sample { config, chains, emit_gamma } => {
            let files = sample(&config, SampleOptions { chains, emit_gamma })?;
            if !cli.quiet {
                for f in files {
                    println!(
                        "chain {}: {} draws, acceptance rate {:.4}, samples {}, report {}",
                        f.stream,
                        f.n_kept,
                        f.acceptance_rate,
                        f.samples.display(),
                        f.report.display()
                    );
                }
            }
        }
        Command::Probe { config } => {
            print!("{}", probe(&config)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("isomorph: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
