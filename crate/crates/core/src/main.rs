use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use flag_einstein::catalog::Subset;
use flag_einstein::einstein::SolverConfig;
use flag_einstein::flag::paint;
use flag_einstein::liealg::env_cache_dir;
use flag_einstein::report::{run_classify, run_table1, table1_text, RunOptions, TripleSource};
use flag_einstein::rootsys::{build_root_system, LieType};
use flag_einstein::Error;

/// Invariant Einstein metrics on flag manifolds G/H with b2 = 1.
#[derive(Parser)]
#[command(name = "flag-einstein", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots and highest root of a simple Lie type.
    Roots { lie: LieType },
    /// Isotropy decomposition of G with one node painted.
    Flag {
        lie: LieType,
        #[arg(long)]
        node: usize,
    },
    /// Structure-constant triples [k;ij].
    Triples {
        lie: LieType,
        #[arg(long)]
        node: usize,
        #[arg(long, default_value = "both")]
        triples: TripleSource,
    },
    /// Solve and classify the invariant Einstein metrics.
    Classify {
        lie: LieType,
        #[arg(long)]
        node: usize,
        #[arg(long, default_value = "both")]
        triples: TripleSource,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the TOML report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fail unless this many isometry classes are found.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Recompute the counts E(M) over a catalog of spaces.
    Table1 {
        #[arg(long, default_value = "quick")]
        subset: Subset,
        #[arg(long, default_value = "both")]
        triples: TripleSource,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = SolverConfig::default().starts)]
    starts: usize,
    /// Newton tolerance on the coefficient-normalized residual.
    #[arg(long, default_value_t = SolverConfig::default().newton_tol)]
    tol: f64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            seed: self.seed,
            starts: self.starts,
            newton_tol: self.tol,
            ..Default::default()
        }
    }
}

enum Failure {
    Assertion(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidType(_) | Error::NodeOutOfRange { .. } | Error::NoSubmersionMethod | Error::Parse(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Assertion(other.to_string()),
        }
    }
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Assertion(format!("cannot write {}: {e}", path.display())))
}

fn options(source: TripleSource, solver: &SolverArgs, expect: Option<usize>) -> RunOptions {
    RunOptions {
        source,
        solver: solver.config(),
        cache_dir: env_cache_dir(),
        expect,
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Roots { lie } => {
            print!("{}", build_root_system(lie)?.dump());
        }
        Cmd::Flag { lie, node } => {
            let rs = build_root_system(lie)?;
            print!("{}", paint(&rs, node)?.describe());
        }
        Cmd::Triples { lie, node, triples } => {
            let rs = build_root_system(lie)?;
            let fs = paint(&rs, node)?;
            let opts = RunOptions {
                source: triples,
                cache_dir: env_cache_dir(),
                ..Default::default()
            };
            let (t, mismatch) = flag_einstein::report::triples_for(&fs, &opts)?;
            print!("{t}");
            if let Some(diff) = mismatch {
                return Err(Failure::Assertion(diff));
            }
        }
        Cmd::Classify {
            lie,
            node,
            triples,
            solver,
            out,
            expect,
        } => {
            let outcome = run_classify(lie, node, &options(triples, &solver, expect))?;
            print!("{}", outcome.report.summary());
            eprintln!("timings: {}", outcome.report.timings_text());
            if let Some(path) = &out {
                write_out(path, &outcome.report.to_toml()?)?;
            }
            if !outcome.passed() {
                return Err(Failure::Assertion(outcome.failures.join("\n")));
            }
        }
        Cmd::Table1 {
            subset,
            triples,
            solver,
            out,
        } => {
            let rows = run_table1(subset, &options(triples, &solver, None))?;
            print!("{}", table1_text(&rows));
            if let Some(path) = &out {
                #[derive(serde::Serialize)]
                struct Rows<'a> {
                    rows: &'a [flag_einstein::report::Table1Row],
                }
                let text = toml::to_string(&Rows { rows: &rows }).map_err(|e| Failure::Assertion(e.to_string()))?;
                write_out(path, &text)?;
            }
            if rows.iter().any(|r| !r.passed) {
                return Err(Failure::Assertion("table mismatch".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
