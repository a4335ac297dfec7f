use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use iwasawa_core::oracle::{run_sweeps, SweepConfig};
use iwasawa_core::report::{self, Report, TableFormat};
use iwasawa_core::Error;

#[derive(Parser)]
#[command(name = "iwasawa", version, about = "Iwasawa lambda_2, tower splitting, genus fields and class-number parity of multi-quadratic fields")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Comma-separated radicands, e.g. `7,3,-1`.
    #[arg(short, long, global = true, allow_hyphen_values = true)]
    radicands: Option<String>,

    /// Assume Greenberg's conjecture for the maximal real subfield.
    #[arg(long, global = true, default_value_t = true, num_args = 0..=1,
          default_missing_value = "true", action = clap::ArgAction::Set)]
    assume_greenberg: bool,

    /// Known value of lambda_2 of the maximal real subfield.
    #[arg(long, global = true)]
    lambda_plus: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// lambda_2 of an imaginary multi-quadratic field.
    Lambda,
    /// Class-number parity verdict.
    Parity,
    /// Narrow genus field and genus field.
    Genus,
    /// Decomposition of p in the layers of the cyclotomic Z_2-extension.
    Splitting {
        #[arg(short, long)]
        p: u64,
        /// Levels, `a..b` (inclusive) or a single level.
        #[arg(short, long, default_value = "0..5")]
        n: String,
        /// Also report the behaviour in Q_n(sqrt(d)) / Q_n.
        #[arg(short, long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
    /// Run the brute-force cross-check suites.
    Verify {
        /// Config file of `key = value` lines; defaults are used when absent.
        config: Option<PathBuf>,
    },
    /// Write a lambda_2/parity table over small fields.
    Sweep {
        /// Radicand primes are below this bound.
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else if report.errors.is_empty() {
        print!("{}", report.to_text());
    } else {
        eprint!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}

fn fail(e: &Error, json: bool) -> ExitCode {
    if json {
        let obj = report::ErrorObject::from(e);
        println!("{}", serde_json::json!({ "errors": [obj] }));
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(e.exit_code() as u8)
}

fn radicands(cli: &Cli) -> Result<&str, Error> {
    cli.radicands
        .as_deref()
        .ok_or_else(|| Error::Parse("missing --radicands".into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let plus = report::lambda_plus_from_flags(cli.assume_greenberg, cli.lambda_plus);
    match &cli.command {
        Command::Lambda => match radicands(&cli) {
            Ok(r) => emit(&report::cmd_lambda(r, plus), cli.json),
            Err(e) => fail(&e, cli.json),
        },
        Command::Parity => match radicands(&cli) {
            Ok(r) => emit(&report::cmd_parity(r), cli.json),
            Err(e) => fail(&e, cli.json),
        },
        Command::Genus => match radicands(&cli) {
            Ok(r) => emit(&report::cmd_genus(r), cli.json),
            Err(e) => fail(&e, cli.json),
        },
        Command::Splitting { p, n, d } => emit(&report::cmd_splitting(*p, n, *d), cli.json),
        Command::Verify { config } => {
            let cfg = match config {
                Some(path) => SweepConfig::from_path(path),
                None => Ok(SweepConfig::default()),
            };
            let cfg = match cfg {
                Ok(c) => c,
                Err(e) => return fail(&e, cli.json),
            };
            if cfg.suites.is_empty() {
                eprintln!("no suites selected, nothing to check");
            }
            let rep = run_sweeps(&cfg);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rep).expect("sweep reports serialize"));
            } else {
                for f in &rep.failures {
                    println!("FAIL [{}] {}: expected {}, got {}", f.suite, f.input, f.expected, f.got);
                }
                println!(
                    "{} suites, {} checks, {} failures",
                    rep.suites.len(),
                    rep.checked,
                    rep.failures.len()
                );
            }
            eprintln!("elapsed {:.2?}", rep.elapsed);
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Sweep { bound, max_rank, output, format } => {
            let format = match format {
                Format::Csv => TableFormat::Csv,
                Format::Json => TableFormat::Json,
            };
            match report::cmd_sweep(*bound, *max_rank, output, format) {
                Ok(rows) => {
                    eprintln!("wrote {rows} rows to {}", output.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e, cli.json),
            }
        }
    }
}
