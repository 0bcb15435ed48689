//! Command-line front end for `trirec`.
//!
//! Exit codes: 0 on success (all non-diagnostic identities pass), 1 when a
//! verification finds a counterexample, 2 on usage or input errors.
//!
//! Every command renders as `plain`, `json` or `csv`. JSON output is a single
//! document `{"command", "params", "records"}`; with `--timestamps` a `meta`
//! object is added beside them. Exact values are emitted as strings
//! (`"-3"`, `"9/5"`).

pub mod config;
mod render;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use trirec::identities::{IdentityId, Status, ValueRange};
use trirec::{BigRational, GridSpec, RecurrenceParams};

pub use render::Rendered;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] trirec::Error),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("output error: {0}")]
    Csv(#[from] csv::Error),
    #[error("output error: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus(pub i32);

impl ExitStatus {
    pub const SUCCESS: ExitStatus = ExitStatus(0);
    pub const IDENTITY_FAILURE: ExitStatus = ExitStatus(1);
    pub const USAGE: ExitStatus = ExitStatus(2);
}

fn rational(s: &str) -> Result<BigRational, String> {
    trirec::parse_rational(s).map_err(|e| e.to_string())
}

fn value_range(s: &str) -> Result<ValueRange, String> {
    s.parse().map_err(|e: trirec::Error| e.to_string())
}

fn identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|_| {
        let known: Vec<&str> = IdentityId::ALL.iter().map(|i| i.as_str()).collect();
        format!("unknown identity id {s:?}; known ids: {}", known.join(", "))
    })
}

#[derive(Debug, Parser)]
#[command(
    name = "trirec",
    version,
    about = "Exact sequences, binomials and characteristic polynomials of u_r = p u_(r-1) - q u_(r-2)",
    args_override_self = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,

    /// Add run metadata (outside the data records).
    #[arg(long, global = true)]
    pub timestamps: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of (n, u_n, w_n) for 0 <= n <= n-max.
    #[command(allow_negative_numbers = true)]
    Seq {
        #[arg(short = 'p', default_value = "1", allow_hyphen_values = true, value_parser = rational)]
        p: BigRational,
        #[arg(short = 'q', default_value = "-1", allow_hyphen_values = true, value_parser = rational)]
        q: BigRational,
        #[arg(short = 'n', long = "n-max", default_value_t = 10)]
        n_max: usize,
    },
    /// Coefficients of Phi_n(p, q, x), ascending degree.
    #[command(allow_negative_numbers = true)]
    Phi {
        #[arg(short = 'p', default_value = "1", allow_hyphen_values = true, value_parser = rational)]
        p: BigRational,
        #[arg(short = 'q', default_value = "-1", allow_hyphen_values = true, value_parser = rational)]
        q: BigRational,
        #[arg(short = 'n')]
        n: usize,
        /// Also print f_n(x), the Galois classification and, for p = 1,
        /// q = -1, the Fibonacci factorization.
        #[arg(long)]
        factor: bool,
    },
    /// Generalized binomial coefficient (r|k)_u.
    #[command(allow_negative_numbers = true)]
    Binom {
        #[arg(short = 'p', default_value = "1", allow_hyphen_values = true, value_parser = rational)]
        p: BigRational,
        #[arg(short = 'q', default_value = "-1", allow_hyphen_values = true, value_parser = rational)]
        q: BigRational,
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Gaussian binomial polynomial with top m and bottom k.
    Gauss {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'k')]
        k: usize,
        /// Also print the cyclotomic factorization.
        #[arg(long)]
        cyclotomic: bool,
    },
    /// Verify identities over a parameter grid.
    Verify {
        /// p values as start:end[:step].
        #[arg(long = "p-range", default_value = "-3:3", allow_hyphen_values = true, value_parser = value_range)]
        p_range: ValueRange,
        /// q values as start:end[:step].
        #[arg(long = "q-range", default_value = "-3:3", allow_hyphen_values = true, value_parser = value_range)]
        q_range: ValueRange,
        #[arg(long = "n-max", default_value_t = 50)]
        n_max: usize,
        #[arg(long = "a-max", default_value_t = 10)]
        a_max: usize,
        /// Comma-separated identity ids; defaults to every non-diagnostic identity.
        #[arg(long, value_delimiter = ',', value_parser = identity)]
        identities: Vec<IdentityId>,
        /// Let failures of diagnostic identities affect the exit code.
        #[arg(long = "strict-diagnostics")]
        strict_diagnostics: bool,
    },
}

/// Runs the command line `args` (including the program name), writing the
/// rendered output to `out` and diagnostics to `err`.
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let args = match config::apply_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return ExitStatus::USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return ExitStatus(code);
        }
    };
    match execute(&cli) {
        Ok((rendered, status)) => match rendered.write(cli.format, cli.timestamps, out, err) {
            Ok(()) => status,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                ExitStatus::USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<(Rendered, ExitStatus), CliError> {
    match &cli.command {
        Command::Seq { p, q, n_max } => {
            let params = RecurrenceParams::new(p.clone(), q.clone());
            Ok((render::seq(&params, *n_max), ExitStatus::SUCCESS))
        }
        Command::Phi { p, q, n, factor } => {
            let params = RecurrenceParams::new(p.clone(), q.clone());
            Ok((render::phi(&params, *n, *factor)?, ExitStatus::SUCCESS))
        }
        Command::Binom { p, q, r, k } => {
            let params = RecurrenceParams::new(p.clone(), q.clone());
            Ok((render::binom(&params, *r, *k)?, ExitStatus::SUCCESS))
        }
        Command::Gauss { m, k, cyclotomic } => Ok((render::gauss(*m, *k, *cyclotomic)?, ExitStatus::SUCCESS)),
        Command::Verify {
            p_range,
            q_range,
            n_max,
            a_max,
            identities,
            strict_diagnostics,
        } => {
            let grid = GridSpec::new(p_range.clone(), q_range.clone(), *n_max, *a_max)?;
            let ids = if identities.is_empty() {
                IdentityId::defaults()
            } else {
                identities.clone()
            };
            let reports = trirec::run_grid(&grid, &ids);
            let failed = reports
                .iter()
                .any(|r| r.status == Status::Fail && (!r.diagnostic || *strict_diagnostics));
            let status = if failed {
                ExitStatus::IDENTITY_FAILURE
            } else {
                ExitStatus::SUCCESS
            };
            Ok((render::verify(&grid, &ids, &reports), status))
        }
    }
}
