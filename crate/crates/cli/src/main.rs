use clap::{Parser, Subcommand};
use std::process::ExitCode;

mod compute;
mod output;
mod poisson;
mod verify;

/// Exit codes.
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "JASTROW_VERIFY_SEED";

#[derive(Parser)]
#[command(name = "jastrow-verify", version, about = "Numerical checks for Jastrow factors of Coulomb Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check groups and print a JSON report.
    Verify(verify::VerifyArgs),
    /// Evaluate a single quantity.
    Compute(compute::ComputeArgs),
    /// Solve Δu = r^k G(ω) on the harmonics of S^{n-1}.
    Poisson(poisson::PoissonArgs),
}

/// Failure with a message and an exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<jastrow::Error> for Failure {
    fn from(e: jastrow::Error) -> Self {
        let code = match e {
            jastrow::Error::InvalidInput(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Compute(a) => compute::run(a),
        Command::Poisson(a) => poisson::run(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
