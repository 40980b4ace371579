use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};
use clasp::cache::TableCache;
use clasp::commands::{self, BoundArgs, Format, Method, Output};
use clasp::format::OutputDocument;
use clasp::{reproduce, CliError, ExitCode};
use clasp_core::bound::Mode;

#[derive(Parser)]
#[command(name = "clasp", version, about = "Four-genus lower bounds for sums of two-bridge knots")]
struct Cli {
    /// Omit the `generated_at` field (and claim timings) for reproducible output.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant, signature, double-cover homology and chain matrix of B(a,b).
    Invariants {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    /// The table r -> sigma(K, chi_r) with its sigma_1 tau brackets.
    CgTable {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        /// Negative for the mirror image.
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Compute without reading or writing the table cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Certify a four-genus lower bound.
    #[command(group(ArgGroup::new("method").required(true).args(["exhaustive", "analytic_ex1", "linear_ex2"])))]
    Bound {
        /// JSON file: {"p", "summands": [[a,b],...], "mode"?, "target_g"?}.
        spec: Option<PathBuf>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        analytic_ex1: bool,
        #[arg(long)]
        linear_ex2: bool,
        #[arg(long, conflicts_with = "isotropic")]
        literal: bool,
        #[arg(long)]
        isotropic: bool,
        /// Target genus for the greedy family.
        #[arg(long)]
        genus: Option<usize>,
        /// Two-bridge parameters as A/B.
        #[arg(long, value_parser = commands::parse_knot, allow_hyphen_values = true)]
        knot: Option<(i64, i64)>,
        #[arg(long)]
        p: Option<u64>,
        /// Number of copies of --knot.
        #[arg(long)]
        n: Option<usize>,
        /// Exit 1 unless the certified bound is at least this.
        #[arg(long)]
        expect: Option<usize>,
        /// Highest genus the exhaustive scan may test.
        #[arg(long)]
        g_max: Option<usize>,
        /// Also write the bare certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedy B_m family certifying g4 >= g + 1.
    Family {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Recompute every published value; exit 0 iff all claims hold.
    ReproducePaper {
        #[arg(long)]
        json: bool,
    },
    /// Replay a certificate file and recompute its tables from the knot model.
    Verify { certificate: PathBuf },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let timestamp = !cli.no_timestamp;
    match cli.command {
        Command::Invariants { a, b } => commands::invariants(a, b, timestamp),
        Command::CgTable { a, b, p, format, no_cache } => {
            let cache = if no_cache { TableCache::disabled() } else { TableCache::from_env() };
            commands::cg_table(a, b, p, format, &cache, timestamp)
        }
        Command::Bound {
            spec,
            exhaustive,
            analytic_ex1,
            linear_ex2: _,
            literal,
            isotropic,
            genus,
            knot,
            p,
            n,
            expect,
            g_max,
            out,
        } => {
            let method = if exhaustive {
                Method::Exhaustive
            } else if analytic_ex1 {
                Method::AnalyticEx1
            } else {
                Method::LinearEx2
            };
            let mode = match (literal, isotropic) {
                (true, _) => Some(Mode::Literal),
                (_, true) => Some(Mode::Isotropic),
                _ => None,
            };
            commands::bound(&BoundArgs { method, spec, mode, genus, knot, p, n, expect, g_max, out, timestamp })
        }
        Command::Family { genus, format } => commands::family(genus, format, timestamp),
        Command::ReproducePaper { json } => {
            let report = reproduce::run(&TableCache::from_env(), timestamp);
            let code = if report.all_passed { ExitCode::Success } else { ExitCode::MathFailure };
            let stdout = if json {
                OutputDocument::new("reproduce-paper", &report, timestamp).to_json()?
            } else {
                report.text()
            };
            Ok(Output { stdout, code })
        }
        Command::Verify { certificate } => commands::verify(&certificate, timestamp),
    }
}

fn main() -> std::process::ExitCode {
    let code = match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                ExitCode::Usage
            } else {
                out.code
            }
        }
        Err(e) => {
            eprintln!("clasp: {e}");
            e.exit_code()
        }
    };
    std::process::ExitCode::from(code as u8)
}
