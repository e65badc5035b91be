use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pyramid_cli::{
    cmd_figure1, cmd_info, cmd_sweep, cmd_verify, Command, Format, RunConfig, VerifyOptions,
    EXIT_ERROR,
};

/// Square-root vs information-maximizing measurements on pyramid state ensembles.
#[derive(Debug, Parser)]
#[command(name = "pyramid", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Preset sweep over N = 3..10, 20, 100, 500 and gamma in [-0.3, 0.99] (CSV).
    Figure1 {
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep a custom (N, gamma) grid.
    Sweep {
        /// Comma-separated dimensions, e.g. 3,4,5
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, allow_negative_numbers = true)]
        gamma_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma_max: f64,
        #[arg(long)]
        gamma_steps: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Print the full comparison for a single point as JSON.
    Info {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Check the symmetric family against brute-force oracles.
    Verify {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Outcome count of the information oracle [default: N(N+1)/2]
        #[arg(long)]
        outcomes: Option<usize>,
        /// Search complex-valued measurement vectors.
        #[arg(long)]
        complex: bool,
        /// Run even when N exceeds the oracle size limit.
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let code = match cli.command {
        Cmd::Figure1 { out: path } => cmd_figure1(&path, &mut out, &mut err),
        Cmd::Sweep {
            dims,
            gamma_min,
            gamma_max,
            gamma_steps,
            out: path,
            format,
        } => {
            let cfg = RunConfig {
                command: Command::Sweep,
                dims,
                gamma_min,
                gamma_max,
                gamma_steps,
                seed: 0,
                restarts: 0,
                output_path: path,
                format,
            };
            cmd_sweep(&cfg, &mut out, &mut err)
        }
        Cmd::Info { dim, gamma } => cmd_info(dim, gamma, &mut out, &mut err),
        Cmd::Verify {
            dim,
            gamma,
            restarts,
            seed,
            outcomes,
            complex,
            force,
        } => {
            let opts = VerifyOptions {
                dim,
                gamma,
                restarts,
                seed,
                outcomes,
                complex_mode: complex,
                force,
            };
            cmd_verify(&opts, &mut out, &mut err)
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
