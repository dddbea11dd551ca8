use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use compdet::comb::{enumerate_proper, enumerate_weak};
use compdet::numeric::CornerConvention;
use compdet::verify::{identity_suite, run_verify, Suite, SuiteOptions, VerifyOptions, VerifyReport};
use num_bigint::BigInt;
use serde_json::json;

mod bench;
mod det;
mod error;

use det::{Engine, Query, Vars};
use error::{io_error, CliError};

#[derive(Parser)]
#[command(name = "compdet", version, about = "Exact determinants of power-composition matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Ci,
    Xy,
    Rec,
    Equiv,
    Colreduce,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CornerArg {
    One,
    Zero,
}

#[derive(Subcommand)]
enum Command {
    /// List the compositions of n into p parts, in matrix order.
    Compositions {
        n: u32,
        p: usize,
        #[arg(long)]
        proper: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the matrix with its composition labels.
    Matrix {
        n: u32,
        p: usize,
        #[arg(long)]
        proper: bool,
        #[arg(long, value_enum, default_value_t)]
        vars: Vars,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compute a determinant.
    Det {
        n: u32,
        p: usize,
        /// Defaults to bareiss for integer results and formula otherwise.
        #[arg(long, value_enum)]
        engine: Option<Engine>,
        #[arg(long)]
        proper: bool,
        #[arg(long, value_enum, default_value_t)]
        vars: Vars,
        /// Evaluate at an integer point, e.g. `--at 3,-1`.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check elimination against the closed forms over a grid.
    Verify {
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        pmax: usize,
        #[arg(long)]
        proper: bool,
        /// Random integer points per cell.
        #[arg(long, default_value_t = 0)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep per-cell milliseconds in the report (not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Run the fixed identity suites.
    Identities {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Value of C(-1,-1) used by the integer formulas.
        #[arg(long, value_enum, default_value_t = CornerArg::One)]
        corner: CornerArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the engines over a grid and write CSV.
    Bench {
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        pmax: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "bareiss,formula")]
        engines: Vec<Engine>,
        #[arg(long)]
        proper: bool,
        #[arg(long, value_enum, default_value_t)]
        vars: Vars,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_point(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|v| v.trim().parse::<BigInt>().map_err(|_| CliError::Args(format!("--at: {v:?} is not an integer"))))
        .collect()
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn print(s: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    writeln!(out, "{s}").map_err(|e| CliError::Io(e.to_string()))
}

fn compositions(n: u32, p: usize, proper: bool, format: Format) -> Result<(), CliError> {
    if p == 0 {
        return Err(CliError::Args("p must be at least 1".into()));
    }
    let list = if proper { enumerate_proper(n, p) } else { enumerate_weak(n, p) }
        .map_err(|e| CliError::Args(e.to_string()))?;
    let rows: Vec<&[u32]> = list.items().iter().map(|c| c.parts()).collect();
    let text = match format {
        Format::Json => serde_json::to_string(&rows).expect("serializable"),
        Format::Text => rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    if !text.is_empty() {
        print(&text)?;
    }
    Ok(())
}

fn matrix(n: u32, p: usize, proper: bool, vars: Vars, format: Format) -> Result<(), CliError> {
    let q = Query { n, p, proper, vars, at: None };
    q.validate()?;
    let m = q.matrix();
    let m = if vars == Vars::Zero {
        let point = compdet::pcmatrix::origin(&m);
        compdet::pcmatrix::specialize(&m, &point)?.map(|v| v.to_string())
    } else {
        let style =
            if vars == Vars::Univariate { compdet::poly::VarStyle::Single } else { compdet::poly::VarStyle::Indexed };
        m.entries().map(|e| compdet::poly::format_poly_with(e, style, true))
    };
    let list = if proper { enumerate_proper(n, p) } else { enumerate_weak(n, p) }
        .map_err(|e| CliError::Args(e.to_string()))?;
    let labels: Vec<&[u32]> = list.items().iter().map(|c| c.parts()).collect();
    let rows: Vec<&[String]> = m.rows().collect();
    match format {
        Format::Json => {
            print(&serde_json::to_string_pretty(&json!({"labels": labels, "entries": rows})).expect("serializable"))
        }
        Format::Text => {
            for (label, row) in list.items().iter().zip(&rows) {
                print(&format!("{label}\t{}", row.join("\t")))?;
            }
            Ok(())
        }
    }
}

fn emit_report(report: &VerifyReport, out: Option<&Path>) -> Result<ExitCode, CliError> {
    if let Some(path) = out {
        write_file(path, &report.to_json())?;
    }
    for c in report.cells.iter().filter(|c| c.witness.is_some()) {
        eprintln!("FAIL ({}, {}) {}: {}", c.n, c.p, c.check, c.witness.as_deref().unwrap_or(""));
    }
    print(&report.summary())?;
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("COMPDET_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Args(format!("COMPDET_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| CliError::Invariant(e.to_string()))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Compositions { n, p, proper, format } => compositions(n, p, proper, format)?,
        Command::Matrix { n, p, proper, vars, format } => matrix(n, p, proper, vars, format)?,
        Command::Det { n, p, engine, proper, vars, at, format } => {
            let at = at.as_deref().map(parse_point).transpose()?;
            let q = Query { n, p, proper, vars, at };
            let engine = engine.unwrap_or(if q.integer() { Engine::Bareiss } else { Engine::Formula });
            let out = det::compute(&q, engine)?;
            print(&det::render(&q, engine, &out.value, format == Format::Json))?;
        }
        Command::Verify { nmax, pmax, proper, points, seed, out, timings } => {
            if pmax == 0 {
                return Err(CliError::Args("--pmax must be at least 1".into()));
            }
            let report = run_verify(&VerifyOptions { nmax, pmax, proper, points, seed })?;
            let report = if timings { report } else { report.without_timings() };
            return emit_report(&report, out.as_deref());
        }
        Command::Identities { suite, corner, out } => {
            let suites = match suite {
                SuiteArg::Ci => vec![Suite::Ci],
                SuiteArg::Xy => vec![Suite::Xy],
                SuiteArg::Rec => vec![Suite::Rec],
                SuiteArg::Equiv => vec![Suite::Equiv],
                SuiteArg::Colreduce => vec![Suite::ColReduce],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let corner = match corner {
                CornerArg::One => CornerConvention::One,
                CornerArg::Zero => CornerConvention::Zero,
            };
            let report = identity_suite(&SuiteOptions { suites, corner }).without_timings();
            return emit_report(&report, out.as_deref());
        }
        Command::Bench { nmax, pmax, engines, proper, vars, out } => {
            let rows = bench::run(&bench::BenchOptions { nmax, pmax, proper, vars, engines })?;
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(|e| io_error(&path, e))?;
                    bench::write_csv(&rows, file).map_err(|e| io_error(&path, e))?;
                }
                None => bench::write_csv(&rows, io::stdout().lock()).map_err(|e| CliError::Io(e.to_string()))?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("compdet: {e}");
            e.exit_code()
        }
    }
}
