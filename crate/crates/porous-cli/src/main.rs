use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use porous::bench::{run_bench, write_csv, BenchConfig, DEFAULT_SIZES};
use porous::cert::DEFAULT_WITNESS_BUDGET;
use porous::instance::{parse_instance, Instance};
use porous::par::Execution;
use porous::report::{
    exit_code, run_check, run_strongest, run_ztarget, CheckOptions, Report, EXIT_FAILURE, EXIT_OK,
};
use porous::semilinear::Glyphs;
use porous::ztarget::DEFAULT_STATE_CAP;
use porous::Error;

/// Environment variable overriding the residue state cap `m^d`.
const STATE_CAP_VAR: &str = "POROUS_ZTARGET_CAP";

#[derive(Parser)]
#[command(name = "porous", version, about = "Semi-linear inductive invariants and reachability certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize an invariant, decide reachability and check the certificate.
    Check(CheckArgs),
    /// Strongest Z-linear inductive invariant of a matrix system.
    StrongestZlinear { file: PathBuf },
    /// Reachability of a full-dimensional Z-linear target.
    Ztarget { file: PathBuf },
    /// Random experiment over all function-type combinations, as CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// Print the proof-of-invariance table.
    #[arg(long)]
    proof: bool,
    /// Node budget for the reachability witness search.
    #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
    witness_budget: usize,
    /// ASCII glyphs (default).
    #[arg(long, conflicts_with = "unicode")]
    ascii: bool,
    /// Unicode glyphs for union and inclusion.
    #[arg(long)]
    unicode: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_SIZES)]
    sizes: Vec<u64>,
    #[arg(long, default_value_t = 10)]
    per_combo: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Witness search budget per reachable instance (0 skips the search).
    #[arg(long, default_value_t = 100_000)]
    witness_budget: usize,
    /// Run instances on one thread.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    out: PathBuf,
}

fn state_cap() -> Result<u64, Error> {
    match std::env::var(STATE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("{STATE_CAP_VAR}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn load(path: &Path) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

fn bench(args: &BenchArgs) -> Result<Report, Error> {
    let cfg = BenchConfig {
        sizes: args.sizes.clone(),
        per_combo: args.per_combo,
        seed: args.seed,
        witness_budget: args.witness_budget,
        execution: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let rows = run_bench(&cfg)?;
    write_csv(&rows, BufWriter::new(File::create(&args.out)?))?;
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "size {:>5}: unreachable {:>4}/{} ({:.1}%), build avg {:.6}s, witnesses {}/{}\n",
            r.size,
            r.unreachable_count,
            r.instances,
            r.unreachable_pct,
            r.build_time_avg,
            r.witness_found_count,
            r.reachable_count
        ));
    }
    let total: u64 = rows.iter().map(|r| r.instances).sum();
    let unreachable: u64 = rows.iter().map(|r| r.unreachable_count).sum();
    let valid: u64 = rows.iter().map(|r| r.certificates_valid).sum();
    text.push_str(&format!(
        "all: unreachable {unreachable}/{total}, certificates valid {valid}/{total}\n"
    ));
    let code = if valid == total { EXIT_OK } else { EXIT_FAILURE };
    Ok(Report { text, code })
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Check(args) => {
            let opts = CheckOptions {
                proof: args.proof,
                witness_budget: args.witness_budget,
                glyphs: if args.unicode {
                    Glyphs::Unicode
                } else {
                    Glyphs::Ascii
                },
                state_cap: state_cap()?,
            };
            Ok(run_check(&load(&args.file)?, &opts))
        }
        Command::StrongestZlinear { file } => Ok(run_strongest(&load(file)?)),
        Command::Ztarget { file } => Ok(run_ztarget(&load(file)?, state_cap()?)),
        Command::Bench(args) => bench(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code, to_stderr) = match run(&cli) {
        Ok(r) => (r.text, r.code, false),
        Err(e) => (format!("error: {e}\n"), exit_code(&e), true),
    };
    if to_stderr {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    let _ = io::Write::flush(&mut io::stdout());
    ExitCode::from(code as u8)
}
