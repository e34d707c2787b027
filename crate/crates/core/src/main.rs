use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use lcr_core::dsl::parse;
use lcr_core::report::{
    check_report, nilradical_report, pullback_report, radical_report, search_report, spectrum_report, to_json,
    topology_dot, topology_report, verify_report, RejectedReport,
};
use lcr_core::workspace::{DslError, Workspace, VERSION};
use lcr_core::LcrTable;

/// Exact computations on finite left commutative rngs declared in `.lcr` files.
#[derive(Parser)]
#[command(name = "lcr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of every rng in the file.
    Verify { file: PathBuf },
    /// List the even and odd primes of an rng.
    Spectrum { file: PathBuf, name: String },
    /// Print the nil radical of an rng.
    Nilrad { file: PathBuf, name: String },
    /// Print the radical of a declared ideal.
    Radical {
        file: PathBuf,
        name: String,
        #[arg(long)]
        ideal: String,
    },
    /// Print the expanded Zariski topology on the spectrum.
    Topology {
        file: PathBuf,
        name: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the map on spectra induced by a homomorphism.
    Pullback { file: PathBuf, hom: String },
    /// Replay every structural check on an rng and the homomorphisms touching it.
    Check { file: PathBuf, name: String },
    /// Enumerate the rngs of a given order up to isomorphism.
    Search { order: usize },
}

/// A failed command: exit code 1 for a failed verdict, 2 for bad input.
struct Exit(u8);

fn usage(message: impl std::fmt::Display) -> Exit {
    eprintln!("error: {message}");
    Exit(2)
}

fn emit<T: Serialize>(report: &T) {
    print!("{}", to_json(report));
}

fn load(path: &Path) -> Result<Workspace, Exit> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        DslError::Verification { line, col, name, failure } => {
            eprintln!("{}:{line}:{col}: `{name}` fails verification: {failure}", path.display());
            emit(&RejectedReport { version: VERSION, holds: false, binding: name, line, col, failure });
            Exit(1)
        }
        other => usage(format!("{}:{other}", path.display())),
    })
}

fn lcr<'a>(ws: &'a Workspace, name: &str) -> Result<&'a LcrTable, Exit> {
    ws.lcr(name).map(|r| r.as_ref()).ok_or_else(|| match ws.get(name) {
        Some(b) => usage(format!("`{name}` is a {}, not an lcr", b.item.kind())),
        None => usage(format!("no lcr named `{name}`")),
    })
}

fn failed(e: lcr_core::LcrError) -> Exit {
    eprintln!("error: {e}");
    Exit(1)
}

fn run(cli: Cli) -> Result<(), Exit> {
    match cli.command {
        Command::Verify { file } => {
            let report = verify_report(&load(&file)?);
            emit(&report);
            if !report.holds {
                return Err(Exit(1));
            }
        }
        Command::Spectrum { file, name } => {
            let ws = load(&file)?;
            emit(&spectrum_report(&name, lcr(&ws, &name)?));
        }
        Command::Nilrad { file, name } => {
            let ws = load(&file)?;
            emit(&nilradical_report(&name, lcr(&ws, &name)?).map_err(failed)?);
        }
        Command::Radical { file, name, ideal } => {
            let ws = load(&file)?;
            let rng = lcr(&ws, &name)?;
            let (of, set) = ws.ideal(&ideal).ok_or_else(|| usage(format!("no ideal named `{ideal}`")))?;
            if of != name {
                return Err(usage(format!("`{ideal}` is an ideal of `{of}`, not of `{name}`")));
            }
            emit(&radical_report(&name, rng, &ideal, set).map_err(failed)?);
        }
        Command::Topology { file, name, dot, json } => {
            let ws = load(&file)?;
            let rng = lcr(&ws, &name)?;
            if dot {
                print!("{}", topology_dot(&name, rng));
            } else if json {
                emit(&topology_report(&name, rng));
            } else {
                print!("{}", topology_text(&name, rng));
            }
        }
        Command::Pullback { file, hom } => {
            let ws = load(&file)?;
            let (_, domain, codomain, f) = ws
                .lcr_homs()
                .find(|(n, ..)| *n == hom)
                .ok_or_else(|| usage(format!("no lcrhom named `{hom}`")))?;
            emit(&pullback_report(&hom, domain, codomain, f).map_err(failed)?);
        }
        Command::Check { file, name } => {
            let ws = load(&file)?;
            let report = check_report(&ws, &name, lcr(&ws, &name)?).map_err(failed)?;
            emit(&report);
            if !report.holds {
                for c in report.checks.iter().chain(report.homs.iter().flat_map(|h| &h.checks)) {
                    for f in &c.failures {
                        eprintln!("{}: {} fails on {}: {:?}", c.name, f.predicate, f.subject, f.witness);
                    }
                }
                return Err(Exit(1));
            }
        }
        Command::Search { order } => {
            emit(&search_report(order).map_err(usage)?);
        }
    }
    Ok(())
}

/// A short human-readable view of the spectrum and its closed sets.
fn topology_text(name: &str, rng: &LcrTable) -> String {
    let report = topology_report(name, rng);
    let mut out = format!("spec of {name} (left identity {})\n", report.left_identity);
    for p in &report.points {
        out.push_str(&format!("  #{} {:<4} {{{}}}\n", p.index, p.parity, p.prime.join(", ")));
    }
    out.push_str("closed sets:\n");
    for c in &report.closed_sets {
        let pts: Vec<String> = c.iter().map(|i| format!("#{i}")).collect();
        out.push_str(&format!("  {{{}}}\n", pts.join(", ")));
    }
    out
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code)) => ExitCode::from(code),
    }
}
