use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use subord_cli::commands::{self, Outcome, Suite, VerifyParams};
use subord_cli::CliError;

/// Exact subordination distributions and their verification suites.
///
/// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 data error.
#[derive(Parser)]
#[command(name = "subord", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a prefix pipeline over distribution files and print the
    /// resulting moments file.
    ///
    /// Operations: boxplus X Y, boxplus_pow t X, uplus X Y, uplus_pow t X,
    /// boxright X Y, bb X, bb_t t X, bb_inv X, phi X, phi2 X Y, subpow p X.
    Compute {
        /// Expression tokens, e.g. `bb boxright a.json b.json`. Put them
        /// after `--` when a parameter is negative.
        #[arg(required = true, num_args = 1..)]
        expr: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run seeded randomized verification suites.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Fock depth; words up to this length are compared.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the Fock-space model of two files with `mu ⊳ nu`.
    FockCheck {
        mu: PathBuf,
        nu: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// One-variable Cauchy-transform checks on two `k = 1` files.
    #[command(name = "verify-1d")]
    Verify1d {
        mu: PathBuf,
        nu: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Fock,
    Onevar,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Fock => Suite::Fock,
            SuiteArg::Onevar => Suite::Onevar,
            SuiteArg::All => Suite::All,
        }
    }
}

/// A command's outcome, where to store it, and whether a stored copy is
/// also echoed to stdout (reports are, distribution files are not).
struct Run {
    outcome: Outcome,
    output: Option<PathBuf>,
    echo: bool,
}

fn run(cli: Cli) -> Result<Run, CliError> {
    let report = |outcome, output| Run {
        outcome,
        output,
        echo: true,
    };
    Ok(match cli.command {
        Command::Compute { expr, output } => Run {
            outcome: commands::compute(&expr)?,
            output,
            echo: false,
        },
        Command::Verify {
            suite,
            seed,
            trials,
            k,
            order,
            depth,
            output,
        } => {
            let params = VerifyParams {
                seed,
                trials,
                k,
                order,
                depth,
            };
            report(commands::verify(suite.into(), params)?, output)
        }
        Command::FockCheck {
            mu,
            nu,
            depth,
            output,
        } => report(commands::fock_check(&mu, &nu, depth)?, output),
        Command::Verify1d { mu, nu, output } => report(commands::verify_1d(&mu, &nu)?, output),
    })
}

fn main() -> ExitCode {
    let result = run(Cli::parse()).and_then(|r| {
        if let Some(path) = &r.output {
            commands::write_output(path, &r.outcome.text)?;
        }
        if r.output.is_none() || r.echo {
            print!("{}", r.outcome.text);
        }
        Ok(r.outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("subord: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
