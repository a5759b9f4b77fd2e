use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reefopt_cli::commands::{self, comparison_csv};
use reefopt_cli::{configure_threads, CliError};
use reefopt_core::telemetry::format_sig;

#[derive(Parser)]
#[command(name = "reefopt", version, about = "Coral reef optimization with substrate layers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full reef once and write summary.json, timing.json and telemetry.csv.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (defaults to the config's output_dir).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full reef and each single-substrate variant over consecutive seeds.
    Compare {
        #[arg(long)]
        config: PathBuf,
        /// First seed (defaults to the config's engine seed).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        seeds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the cost of a stored solution.
    Eval {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Write per-floor FRF curves in dB as CSV (open loop without a solution).
    Frf {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        /// CSV file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bill breakdown for `none`, `deterministic` or a schedule file.
    BsopReport {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "deterministic")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Other(format!("{}: {e}", path.display()))),
        None => {
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run { config, seed, out } => {
            let s = commands::cmd_run(&config, seed, out.as_deref())?;
            println!("best_fitness {}", format_sig(s.report_fitness, 6));
        }
        Command::Compare { config, seed, seeds, out } => {
            configure_threads()?;
            let rows = commands::cmd_compare(&config, seed, seeds, out.as_deref())?;
            print!("{}", comparison_csv(&rows));
        }
        Command::Eval { config, solution } => {
            println!("{}", format_sig(commands::cmd_eval(&config, solution.as_deref())?, 6));
        }
        Command::Frf { config, solution, out } => {
            emit(&commands::cmd_frf(&config, solution.as_deref())?, out)?;
        }
        Command::BsopReport { config, mode, out } => {
            emit(&commands::cmd_bsop_report(&config, &mode)?.to_csv(), out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
