use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fanlab::commands::{self, configure_threads, load_fan, parse_perm};
use fanlab::corpus::write_corpus;
use fanlab::schema::{read_dimfn, read_fan, FanFile};
use fanlab::CliError;
use fanlab_core::fan::product;
use fanlab_core::polymat::permutations;
use serde::Serialize;

/// Exact toric fan analysis and the odd-tuple engine.
#[derive(Parser)]
#[command(name = "fanlab", version)]
struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (overrides FANLAB_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Completeness, flagness and local convexity of a fan file.
    Validate { fan: PathBuf },
    /// f-, h- and gamma-vectors, signature and the vanishing-monomial suite.
    Signature { fan: PathBuf },
    /// Structural analysis of a locally convex fan.
    Structure {
        #[arg(value_enum)]
        analysis: Analysis,
        fan: PathBuf,
        /// Largest cone size analysed (at most half the dimension).
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Runs the odd-tuple algorithm on a dimension function file.
    Oddtuple {
        dimfn: PathBuf,
        /// Permutation in step order, e.g. 312 or 3,1,2.
        #[arg(long, conflicts_with = "all_perms")]
        perm: Option<String>,
        /// Run every permutation.
        #[arg(long)]
        all_perms: bool,
        /// Compare with the brute-force list of odd tuples.
        #[arg(long)]
        oracle: bool,
    },
    /// Exhaustive engine check against brute force for one ground set size.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_total: i64,
    },
    /// Writes the bundled fans and dimension functions into a directory.
    Corpus { dir: PathBuf },
    /// Product of two fan files.
    Product { left: PathBuf, right: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Analysis {
    SpecialRays,
    Suspensions,
    FourCycles,
    Blocks,
    Dichotomy,
}

/// A serialized report and whether the command's predicate held.
struct Outcome {
    json: serde_json::Value,
    ok: bool,
}

fn outcome<T: Serialize>(report: &T, ok: bool) -> Outcome {
    Outcome { json: serde_json::to_value(report).expect("reports serialize"), ok }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads(cli.threads)?;
    match &cli.command {
        Command::Validate { fan } => {
            let r = commands::validate_fan(&read_fan(fan)?)?;
            Ok(outcome(&r, r.ok))
        }
        Command::Signature { fan } => {
            let r = commands::signature_report(&load_fan(fan)?)?;
            Ok(outcome(&r, r.consistent))
        }
        Command::Structure { analysis, fan, p_max } => {
            let f = load_fan(fan)?;
            Ok(match analysis {
                Analysis::SpecialRays => outcome(&commands::special_rays_report(&f, *p_max)?, true),
                Analysis::Suspensions => outcome(&commands::suspensions_report(&f)?, true),
                Analysis::FourCycles => outcome(&commands::four_cycles_report(&f)?, true),
                Analysis::Blocks => outcome(&commands::blocks_report(&f)?, true),
                Analysis::Dichotomy => {
                    let r = commands::dichotomy_report(&f, *p_max)?;
                    let ok = r.entries.iter().all(|e| !e.inconsistent);
                    outcome(&r, ok)
                }
            })
        }
        Command::Oddtuple { dimfn, perm, all_perms, oracle } => {
            let b = read_dimfn(dimfn)?;
            let perms = match (perm, all_perms) {
                (_, true) => permutations(b.n()),
                (Some(p), false) => vec![parse_perm(p, b.n())?],
                (None, false) => vec![(0..b.n()).collect()],
            };
            let r = commands::oddtuple_report(&b, &perms, *oracle)?;
            let ok = r.oracle.as_ref().is_none_or(|o| o.agree);
            Ok(outcome(&r, ok))
        }
        Command::Sweep { n, max_total } => {
            if !(1..=5).contains(n) {
                return Err(fanlab_core::Error::Precondition(format!("sweep supports 1 <= n <= 5, got {n}")).into());
            }
            let r = commands::sweep(*n, *max_total);
            let ok = r.compatible_not_in_oracle == 0 && r.empty_oracle_with_compatible_run == 0 && r.errors.is_empty();
            Ok(outcome(&r, ok))
        }
        Command::Corpus { dir } => {
            let files = write_corpus(dir)?;
            Ok(outcome(&serde_json::json!({ "dir": dir.display().to_string(), "files": files }), true))
        }
        Command::Product { left, right } => {
            let f = product(&load_fan(left)?, &load_fan(right)?)?;
            Ok(outcome(&FanFile::from_fan(&f), true))
        }
    }
}

fn emit(out: Option<&Path>, json: &serde_json::Value, pretty: bool) -> Result<(), CliError> {
    let mut s = if pretty { serde_json::to_string_pretty(json) } else { serde_json::to_string(json) }.expect("reports serialize");
    s.push('\n');
    match out {
        Some(path) => fs::write(path, s).map_err(|e| CliError::Io(path.display().to_string(), e)),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| emit(cli.output.as_deref(), &o.json, cli.pretty).map(|()| o.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fanlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
