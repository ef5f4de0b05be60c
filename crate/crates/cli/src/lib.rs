//! The `ellpair` command line. [`run`] is the whole program; `main` only wires
//! it to the process streams.

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use ellpair_core::lists_cycles::DEFAULT_ALIQUOT_LIMIT;
use ellpair_core::Error;

pub use output::Format;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for bad arguments or inputs outside a command's domain.
pub const EXIT_INVALID: i32 = 1;
/// Exit status for a search that reached its limit without an answer.
pub const EXIT_NOT_FOUND: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ellpair",
    version,
    about = "Elliptic pairs, lists and cycles over square-free d"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Print a JSON envelope instead of text
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print CSV instead of text
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for random point sampling in order computations
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether (p, q) is an elliptic pair, and over which d
    Pair {
        p: u64,
        q: u64,
        #[arg(long)]
        d: Option<u64>,
    },
    /// Write 4p = a^2 + d b^2 (p = a^2 + 3b^2 when d = 3)
    Decompose { p: u64, d: u64 },
    /// Order of y^2 = x^3 + k over F_p
    Order {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// The six possible orders of y^2 = x^3 + k over F_p, p = 1 (mod 3)
    Orders { p: u64 },
    /// The elliptic list over d starting at p1
    List { p1: u64, d: u64 },
    /// Longest list over d among starts below the bound
    LongestList {
        d: u64,
        #[arg(long, value_name = "B")]
        bound: u64,
    },
    /// M(d), the longest list found, and their difference
    Mld {
        d: u64,
        #[arg(long, value_name = "B", default_value_t = 10_000)]
        bound: u64,
    },
    /// Search 6-cycles over d = 3 whose smallest member is below the bound
    CycleSearch {
        #[arg(long, value_name = "B")]
        bound: u64,
        /// Search anomalous cycles instead of proper ones
        #[arg(long)]
        anomalous: bool,
    },
    /// Evaluate the 6-cycle generated by (a, b)
    CycleFromAb {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    /// Smallest k making the cycle aliquot for y^2 = x^3 + k
    Aliquot {
        #[arg(required = true, num_args = 2..)]
        primes: Vec<u64>,
        #[arg(long, value_name = "L", default_value_t = DEFAULT_ALIQUOT_LIMIT)]
        limit: u64,
    },
    /// Anomalous primes over d below a bound
    Anomalous {
        d: u64,
        #[arg(long, value_name = "X")]
        below: u64,
    },
    /// Cycle members modulo 7 over all residues of (a, b)
    Mod7Table,
    /// Number of pairs (p, q)_d with p <= q < X
    Census {
        d: u64,
        #[arg(long, value_name = "X")]
        x: u64,
    },
    /// Histogram of d over every prime pair below X (X <= 10^6)
    ScanCensus {
        #[arg(long, value_name = "X")]
        x: u64,
    },
    /// Census over every d = 3 (mod 8) up to a bound with small class number
    Table2 {
        #[arg(long, value_name = "X", default_value_t = 10_000_000)]
        x: u64,
        #[arg(long, value_name = "H", default_value_t = 4)]
        hmax: u64,
        #[arg(long, value_name = "D", default_value_t = 1555)]
        dmax: u64,
        /// Also write the census CSV here
        #[arg(long, value_name = "FILE")]
        out: Option<std::path::PathBuf>,
    },
    /// Class number h(-d)
    ClassNumber { d: u64 },
}

/// Parses `args` (program name first) without running anything.
pub fn parse_args<I, T>(args: I) -> Result<(), clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args).map(drop)
}

/// Parses `args` (program name first), runs the command and writes the
/// result to `out`, diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let msg = e.render().to_string();
                    let _ = write!(err, "{msg}");
                    if !msg.contains("Usage:") {
                        let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                    }
                    EXIT_INVALID
                }
            };
        }
    };
    let format = match (cli.global.json, cli.global.csv) {
        (true, _) => Format::Json,
        (_, true) => Format::Csv,
        _ => Format::Text,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.threads {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_INVALID;
        }
    };
    let result = pool.install(|| commands::execute(cli.command, cli.global.seed));
    match result.and_then(|o| o.write(format, out).map_err(commands::CliError::Io)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                commands::CliError::Core(Error::NotFound { .. }) => EXIT_NOT_FOUND,
                _ => EXIT_INVALID,
            }
        }
    }
}
