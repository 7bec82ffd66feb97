//! `hypergeom`: command-line access to the sequence analyses.
//!
//! Exit codes: 0 on success, 1 on a domain error (the error name is printed
//! on stderr), 2 on a usage error.

mod commands;
mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "hypergeom",
    version,
    about = "Analyses of first-order hypergeometric recurrences f(n) u_n = g(n) u_{n-1}"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Worker threads for parallel scans (default: one per core).
    #[arg(long, env = "HYPERGEOM_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Csv,
    Text,
}

/// The sequence, given inline or as a record of a spec file.
#[derive(Args, Debug, Clone)]
pub struct SeqArgs {
    /// Left-hand polynomial f, e.g. "x^2 - 2".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "spec")]
    pub f: Option<String>,

    /// Right-hand polynomial g.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "spec")]
    pub g: Option<String>,

    /// Initial value u_0 (default 1).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "spec")]
    pub u0: Option<String>,

    /// File of `f = ...; g = ...; u0 = ...` records.
    #[arg(long, conflicts_with_all = ["f", "g"])]
    pub spec: Option<PathBuf>,

    /// Which record of the spec file to use, counting from 0.
    #[arg(long, default_value_t = 0, requires = "spec")]
    pub record: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validation flags: cancelled factor, invalid roots of f, zeros, regularity.
    Validate {
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// The terms u_0, ..., u_n.
    Terms {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        n: u64,
    },
    /// Height profile h(u_n) as CSV-friendly rows.
    Height {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
        /// Also report nu_p(u_n).
        #[arg(long)]
        p: Option<u64>,
    },
    /// The valuations nu_p(u_n) for n <= nmax.
    Valuation {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
    },
    /// Rewrite as u_n = q(n) v_n with v regular.
    Regularize {
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Search for a prime where f and g have different root counts.
    Asymmetry {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 2)]
        pmin: u64,
        #[arg(long, default_value_t = 10_000)]
        pmax: u64,
    },
    /// Class C and class D tests and condition primes.
    Classify {
        #[command(flatten)]
        seq: SeqArgs,
        /// Bound for the condition-prime search.
        #[arg(long, default_value_t = 10_000)]
        pmax: u64,
    },
    /// Decide whether targets occur in the sequence.
    Membership {
        #[command(flatten)]
        seq: SeqArgs,
        /// Target value; repeat for a batch.
        #[arg(long, required = true, allow_hyphen_values = true)]
        target: Vec<String>,
        /// Use this certificate prime instead of searching.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 10_000_000)]
        max_terms: u64,
        #[arg(long, default_value_t = 100_000)]
        prime_cap: u64,
    },
    /// Distribution of rep(r +- s sqrt(delta)) / p over primes.
    Equidist(EquidistArgs),
    /// p-adic roots and the prime-power valuation identity.
    #[command(subcommand)]
    Padic(PadicCommand),
}

#[derive(Args, Debug)]
pub struct EquidistArgs {
    #[arg(long)]
    pub delta: String,
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    #[arg(long, default_value_t = 0)]
    pub a: u64,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub r: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub plimit: u64,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    /// Count primes in [N, (1 + window) N) instead of sampling.
    #[arg(long)]
    pub window_n: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    pub window: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
}

#[derive(Subcommand, Debug)]
pub enum PadicCommand {
    /// Lift every root of a polynomial modulo p to the requested precision.
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        /// Report the zero run starting at this digit.
        #[arg(long)]
        run_at: Option<usize>,
        /// Report digit-pattern frequencies of this length.
        #[arg(long)]
        freq: Option<usize>,
    },
    /// nu_p(u_{p^s}) directly and from the digits of the roots.
    Identity {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = commands::run(&cli, &mut out);
    let flushed = out.flush();
    match res {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {}", e.name(), e);
            ExitCode::from(1)
        }
    }
}
