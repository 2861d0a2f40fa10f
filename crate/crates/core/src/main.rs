use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use whiteman::cli::{self, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "whiteman",
    version,
    about = "2-adic complexity of balanced Whiteman cyclotomic sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check a parameter pair and print the derived constants
    Validate(PairArgs),
    /// Emit one period of the sequence
    Generate(PairArgs),
    /// Exact 2-adic complexity and theorem verdicts
    Analyze(PairArgs),
    /// Gauss periods and class-by-class values of S(w^a)
    Spectrum(PairArgs),
    /// Exact circulant determinant against the closed form
    Det(PairArgs),
    /// Reproduce the results table
    Table(TableArgs),
    /// Run rational approximation on a prefix of the sequence
    Raa {
        #[command(flatten)]
        pair: PairArgs,
        /// Prefix length in bits (default 2N + 2)
        #[arg(long)]
        len: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// Use a specific common primitive root instead of the smallest
    #[arg(long)]
    g: Option<u64>,
    /// Allow pairs outside p = 1, q = 3 (mod 4)
    #[arg(long)]
    no_strict: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated p:q list, e.g. "5:3,5:7"
    #[arg(long)]
    pairs: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Raw,
}

fn config(command: Command, pair: Option<&PairArgs>, common: &Common) -> RunConfig {
    let mut cfg = RunConfig::new(command);
    if let Some(pair) = pair {
        cfg = cfg.with_pq(pair.p, pair.q);
    }
    cfg.g_override = common.g;
    cfg.strict = !common.no_strict;
    cfg.output_path = common.out.clone();
    if let Some(f) = common.format {
        cfg.output_format = match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Raw => OutputFormat::Raw,
        };
    }
    cfg
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let cfg = match &args.command {
        Sub::Validate(a) => config(Command::Validate, Some(a), &a.common),
        Sub::Generate(a) => config(Command::Generate, Some(a), &a.common),
        Sub::Analyze(a) => config(Command::Analyze, Some(a), &a.common),
        Sub::Spectrum(a) => config(Command::Spectrum, Some(a), &a.common),
        Sub::Det(a) => config(Command::Det, Some(a), &a.common),
        Sub::Raa { pair, len } => {
            let mut cfg = config(Command::Raa, Some(pair), &pair.common);
            cfg.raa_len = *len;
            cfg
        }
        Sub::Table(t) => {
            let mut cfg = config(Command::Table, None, &t.common);
            if let Some(s) = &t.pairs {
                match cli::parse_pairs(s) {
                    Some(p) => cfg.pairs = Some(p),
                    None => {
                        eprintln!("error[bad-pairs]: expected p:q,p:q,...");
                        return ExitCode::from(cli::EXIT_INVALID as u8);
                    }
                }
            }
            cfg
        }
    };
    let outcome = cli::run(&cfg);
    print!("{}", outcome.output);
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    ExitCode::from(outcome.status as u8)
}
