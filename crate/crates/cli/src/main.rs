//! `qcg`: q-deformed Clebsch-Gordan coefficients from the command line.
//!
//! Exit codes: 0 all checks pass, 1 a residual exceeded its tolerance,
//! 2 usage or configuration error.

mod commands;
mod config;
mod desk;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "qcg", version, about = "su_q(2) Clebsch-Gordan coefficients, q-series identities and q-Hahn polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Deformation parameter as a decimal string, e.g. 0.5 or 1e-1
    #[arg(long, default_value = "0.5")]
    pub q: String,
    /// Significant decimal digits
    #[arg(long, default_value_t = 50)]
    pub precision: u32,
}

#[derive(Args, Clone)]
pub struct KeyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub j1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub j2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub j: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    A,
    B,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one coefficient <j1 m1, j2 m2 | j m>
    Cgc {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        key: KeyArgs,
        /// Evaluate every closed form and append the largest deviation
        #[arg(long)]
        verify: bool,
        /// Structured output instead of "value formula"
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Every admissible coefficient for fixed j1, j2
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j1: String,
        #[arg(long)]
        j2: String,
        /// Keep only this total spin
        #[arg(long)]
        j: Option<String>,
        /// Keep only this total projection
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        /// Largest j1, j2 accepted
        #[arg(long, default_value = "3")]
        cap: String,
        /// Append the column norm sum_m1 C^2 to each CSV row
        #[arg(long)]
        checksums: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the identity suites and report the largest residual of each
    Verify {
        /// Comma-separated values of q
        #[arg(long, default_value = "0.5,0.9")]
        q: String,
        #[arg(long, default_value_t = 50)]
        precision: u32,
        /// Suite name or group (qhyper, repsu, cgc, hahn); repeatable
        #[arg(long)]
        suite: Vec<String>,
        /// Override every suite tolerance
        #[arg(long)]
        tolerance: Option<String>,
        /// Spin cap for the closed-form suites
        #[arg(long, default_value = "3")]
        cap: String,
        /// Add this amount to every residual (harness check)
        #[arg(long, hide = true)]
        perturb: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Tabulate q-Hahn polynomials on the lattice
    Hahn {
        #[command(flatten)]
        common: Common,
        /// Number of lattice points N
        #[arg(long = "points")]
        big_n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Only this degree (default: all n < N)
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "a")]
        form: FormArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Approach q = 1 along q = 1 - 10^-k and estimate the convergence order
    Limit {
        #[arg(long, default_value_t = 50)]
        precision: u32,
        #[arg(long, default_value_t = 2)]
        kmin: u32,
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        #[arg(long, allow_hyphen_values = true)]
        j1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        j2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        j: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Cgc { common, key, verify, format } => commands::cgc(&common, &key, verify, format),
        Command::Table { common, j1, j2, j, m, cap, checksums, format } => {
            commands::table(&common, &j1, &j2, j.as_deref(), m.as_deref(), &cap, checksums, format)
        }
        Command::Verify { q, precision, suite, tolerance, cap, perturb, format } => desk::run(&desk::Options {
            qs: q.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            precision,
            suites: suite,
            tolerance,
            cap,
            perturb,
            format,
        }),
        Command::Hahn { common, big_n, alpha, beta, degree, form, format } => {
            commands::hahn(&common, big_n, &alpha, &beta, degree, form, format)
        }
        Command::Limit { precision, kmin, kmax, j1, m1, j2, m2, j, m, format } => {
            let key = [j1, m1, j2, m2, j, m];
            let given = key.iter().filter(|s| s.is_some()).count();
            let key = match given {
                0 => None,
                6 => Some(key.map(|s| s.unwrap_or_default())),
                _ => return Err("limit: give all six of --j1 --m1 --j2 --m2 --j --m or none".into()),
            };
            commands::limit(precision, kmin, kmax, key, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
