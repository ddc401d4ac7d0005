//! `hwp`: list, verify, inspect and search for group-regular
//! Hamilton-Waterloo factorizations.
//!
//! Exit status: 0 on success, 1 when a verification fails or a search finds
//! nothing, 2 on bad input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hwp_core::certificate::unicode;
use hwp_core::search::{search_hwp_with, SearchOptions, SearchVerdict};
use hwp_core::solutions::{load_solution_or_file, solution_dot};
use hwp_core::{cycle_orbit, partial_differences, verify_solution, Notation, SearchTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Canonical,
}

#[derive(Parser)]
#[command(name = "hwp", version, about = "Group-regular Hamilton-Waterloo factorizations")]
struct Cli {
    /// Output style: readable text or canonical JSON.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Write the main output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the embedded solutions.
    List,
    /// Verify an embedded solution or a solution file.
    Verify { solution: String },
    /// Difference set of one base cycle.
    Omega { solution: String, cycle: String },
    /// Orbit of a base cycle under one of the solution's subgroups.
    Orbit {
        solution: String,
        cycle: String,
        subgroup: String,
    },
    /// Search for a factorization matching a target file.
    Search {
        target: PathBuf,
        /// Override the target's node budget.
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Split the first branch over threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Print a solution as TOML, or as Graphviz with --dot.
    Export {
        solution: String,
        #[arg(long)]
        dot: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("error: {e}"),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let human = cli.format == Format::Human;
    match cli.command {
        Command::List => {
            let mut text = String::new();
            for id in hwp_core::list_solutions() {
                let spec = hwp_core::load_solution(id).map_err(input_error)?;
                if human {
                    text.push_str(&format!("{id:<9} {:<5} {}\n", spec.group.as_str(), spec.expected));
                } else {
                    text.push_str(id);
                    text.push('\n');
                }
            }
            emit(&cli.out, &text)
        }
        Command::Verify { solution } => {
            let spec = load_solution_or_file(&solution).map_err(input_error)?;
            let cert = verify_solution(&spec).map_err(input_error)?;
            let text = if human {
                cert.to_human()
            } else {
                cert.to_canonical_json()
            };
            emit(&cli.out, &text)?;
            if cert.is_verified() {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: format!(
                        "verification failed: {}",
                        unicode(cert.witness().unwrap_or("no witness"))
                    ),
                })
            }
        }
        Command::Omega { solution, cycle } => {
            let spec = load_solution_or_file(&solution).map_err(input_error)?;
            let resolved = spec.resolve().map_err(input_error)?;
            let c = resolved.cycle(&cycle).map_err(input_error)?;
            let omega = partial_differences(&resolved.group, c);
            let text = if human {
                format!("{}\n", omega.format(&resolved.group, Notation::Unicode))
            } else {
                let names: Vec<String> = omega.iter().map(|g| resolved.group.name(g)).collect();
                format!("{}\n", serde_json::to_string_pretty(&names).expect("strings serialize"))
            };
            emit(&cli.out, &text)
        }
        Command::Orbit {
            solution,
            cycle,
            subgroup,
        } => {
            let spec = load_solution_or_file(&solution).map_err(input_error)?;
            let resolved = spec.resolve().map_err(input_error)?;
            let g = &resolved.group;
            let c = resolved.cycle(&cycle).map_err(input_error)?;
            let s = resolved.subgroup(&subgroup).map_err(input_error)?;
            let orbit = cycle_orbit(g, s, c);
            let notation = if human { Notation::Unicode } else { Notation::Ascii };
            let lines: Vec<String> = orbit.cycles.iter().map(|x| x.format(g, notation)).collect();
            let text = if human {
                let mut t = format!(
                    "Orb_{subgroup}({cycle}): {} cycles, stabilizer order {}\n",
                    lines.len(),
                    orbit.stabilizer.order()
                );
                for l in &lines {
                    t.push_str(&format!("  {l}\n"));
                }
                t
            } else {
                format!("{}\n", serde_json::to_string_pretty(&lines).expect("strings serialize"))
            };
            emit(&cli.out, &text)
        }
        Command::Search {
            target,
            budget_nodes,
            parallel,
        } => {
            let target = SearchTarget::from_file(&target).map_err(input_error)?;
            let outcome = search_hwp_with(
                &target,
                &SearchOptions {
                    parallel,
                    node_budget: budget_nodes,
                },
            );
            let solution_toml = outcome.solution.as_ref().map(|s| s.to_toml_string());
            let text = if human {
                let mut t = format!(
                    "{:?} after {} nodes ({} prunes, {} table hits) in {:.2?}\n",
                    outcome.verdict, outcome.stats.nodes, outcome.stats.prunes, outcome.stats.table_hits, outcome.elapsed
                );
                if let Some(r) = &outcome.reason {
                    t.push_str(&format!("{r}\n"));
                }
                if let Some(s) = &solution_toml {
                    t.push('\n');
                    t.push_str(s);
                }
                t
            } else {
                // elapsed time is left out so the output is reproducible
                let value = serde_json::json!({
                    "verdict": outcome.verdict,
                    "stats": outcome.stats,
                    "reason": outcome.reason,
                    "solution": solution_toml,
                });
                format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
            };
            emit(&cli.out, &text)?;
            match outcome.verdict {
                SearchVerdict::Found => Ok(()),
                v => Err(Failure {
                    code: 1,
                    message: format!("no solution: {v:?}"),
                }),
            }
        }
        Command::Export { solution, dot } => {
            let spec = load_solution_or_file(&solution).map_err(input_error)?;
            let text = if dot {
                solution_dot(&spec).map_err(input_error)?
            } else {
                spec.to_toml_string()
            };
            emit(&cli.out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
