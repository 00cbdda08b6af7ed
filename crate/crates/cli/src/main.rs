//! `nucdet` — spectra, determinant scans, and verification suites for
//! nuclearly perturbed band operators.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

mod commands;
mod opfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "nucdet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    StructuredText,
}

#[derive(Args)]
struct CommonOut {
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Output format for the spectrum body
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete spectrum of Δ + K by finite sections with doubling
    Spectrum {
        /// Operator file (see README for the format)
        #[arg(long)]
        operator: PathBuf,
        /// Truncation half-width N
        #[arg(long, default_value_t = 400)]
        n: usize,
        /// Band-exclusion radius δ
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Exponent τ for the reported eigenvalue sum
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Perturbation determinant d(z) over a rectangular z-grid
    DetScan {
        #[arg(long)]
        operator: PathBuf,
        /// Grid "re0:re1:nre,im0:im1:nim"
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 400)]
        n: usize,
        /// Minimum distance of every grid node to the band
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Randomized inequality suites plus the scaling study
    Verify {
        /// Seed for the random draws (recorded in the report)
        #[arg(long, default_value_t = 0x5eed_2026)]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Interval model M(t)·+∫k(t,s)·ds on Gauss–Legendre nodes
    Interval {
        /// Node count (doubled internally for the stability filter)
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Constant kernel value c in k ≡ c
        #[arg(long, default_value_t = 1.0)]
        kernel_const: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Jensen-identity residual for h = d∘φ on a disc circle
    Jensen {
        #[arg(long)]
        operator: PathBuf,
        /// Circle "cx,cy,r,nodes"; the center must be the origin
        #[arg(long, default_value = "0,0,0.9,8192")]
        contour: String,
        #[arg(long, default_value_t = 400)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Spectrum { operator, n, delta, tau, out } => {
            commands::spectrum(&operator, n, delta, tau, &out.out, out.format)
        }
        Command::DetScan { operator, grid, n, delta, out } => {
            commands::det_scan(&operator, &grid, n, delta, &out.out)
        }
        Command::Verify { seed, out } => commands::verify(seed, &out.out),
        Command::Interval { n, alpha, beta, kernel_const, delta, tau, out } => {
            commands::interval(n, alpha, beta, kernel_const, delta, tau, &out.out, out.format)
        }
        Command::Jensen { operator, contour, n, delta } => {
            commands::jensen(&operator, &contour, n, delta)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
