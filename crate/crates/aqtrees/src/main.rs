//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when verification (or data loading) fails,
//! 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use aqtrees::graph::{build_aq, Vertex};
use aqtrees::{broadcast, builder, io, verify, Error};

#[derive(Parser)]
#[command(name = "aqtrees", version, about = "Edge-disjoint spanning trees in augmented cubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build the n-1 edge-disjoint spanning trees of AQ_n and emit JSON.
    Build {
        #[arg(short)]
        n: u32,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a decomposition document and print the full report.
    Verify { file: PathBuf },
    /// Export a decomposition (or a bare graph) as JSON or DOT.
    Export {
        #[arg(long, value_enum)]
        format: Format,
        /// Build the decomposition for this dimension.
        #[arg(short)]
        n: Option<u32>,
        /// Read the decomposition from a document instead of building it.
        #[arg(long, conflicts_with = "n")]
        input: Option<PathBuf>,
        /// Export the augmented cube itself rather than a decomposition
        /// (DOT only; requires -n).
        #[arg(long)]
        graph: bool,
        /// Skip verification when loading --input.
        #[arg(long)]
        no_verify: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Broadcast reliability under k link failures, exhaustive or sampled.
    Simulate {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: usize,
        /// Enumerate every k-subset of edges (bounded by an internal budget).
        #[arg(long, conflicts_with_all = ["trials"])]
        exhaustive: bool,
        /// Monte Carlo trial count.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also print one detailed broadcast outcome from this source
        /// (bit-string label) for a sampled failure set.
        #[arg(long)]
        source: Option<String>,
    },
    /// Vertex/edge counts, degree, diameter, and the packing upper bound.
    Stats {
        #[arg(short)]
        n: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> ExitCode {
    match e {
        Error::VerificationFailed(_)
        | Error::InvalidDocument(_)
        | Error::Json(_)
        | Error::Io(_) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn write_output(output: Option<PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Build { n, output } => {
            let d = builder::build(n)?;
            write_output(output, &io::export_json(&d)?)
        }
        Command::Verify { file } => {
            let text = fs::read_to_string(file)?;
            let d = io::import_json(&text, false)?;
            let g = build_aq(d.n())?;
            let report = verify::verify_all(&g, &d)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&io::report_to_json(&report))?
            );
            if report.pass {
                Ok(())
            } else {
                Err(Error::VerificationFailed(report.failures().join("; ")))
            }
        }
        Command::Export {
            format,
            n,
            input,
            graph,
            no_verify,
            output,
        } => {
            if graph {
                let n = n.ok_or_else(|| Error::Usage("--graph requires -n".into()))?;
                if format != Format::Dot {
                    return Err(Error::Usage("--graph export supports only dot".into()));
                }
                let g = build_aq(n)?;
                return write_output(output, &io::export_dot_graph(&g));
            }
            let d = match (n, input) {
                (Some(n), None) => builder::build(n)?,
                (None, Some(path)) => io::import_json(&fs::read_to_string(path)?, !no_verify)?,
                _ => return Err(Error::Usage("provide exactly one of -n or --input".into())),
            };
            let text = match format {
                Format::Json => io::export_json(&d)?,
                Format::Dot => io::export_dot_decomposition(&d),
            };
            write_output(output, &text)
        }
        Command::Simulate {
            n,
            k,
            exhaustive,
            trials,
            seed,
            source,
        } => {
            let d = builder::build(n)?;
            if exhaustive {
                let report = broadcast::exhaustive_fault_check(&d, k)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "mode": "exhaustive",
                        "n": n,
                        "k": report.k,
                        "subsets_checked": report.subsets_checked,
                        "sources_per_subset": report.sources_per_subset,
                        "all_delivered": report.all_delivered,
                        "undelivered_subsets": report.undelivered_subsets,
                        "all_union_delivered": report.all_union_delivered,
                        "union_undelivered_subsets": report.union_undelivered_subsets,
                    }))?
                );
            } else {
                let stats = broadcast::monte_carlo(&d, k, trials, seed)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "mode": "monte_carlo",
                        "n": n,
                        "k": stats.k,
                        "trials": stats.trials,
                        "seed": stats.seed,
                        "delivered_fraction": stats.delivered_fraction,
                        "intact_tree_fraction": stats.intact_tree_fraction,
                        "union_delivered_fraction": stats.union_delivered_fraction,
                    }))?
                );
            }
            if let Some(label) = source {
                let src = Vertex::from_bits(&label)?;
                let g = build_aq(n)?;
                let failed = broadcast::sample_failures(&g, k, seed)?;
                let outcome = broadcast::simulate(&d, src, &failed)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "source": label,
                        "failed": failed.iter().map(|e| [e.a().bits(n), e.b().bits(n)]).collect::<Vec<_>>(),
                        "per_tree_reached": outcome.per_tree.iter().map(|t| t.reached.len()).collect::<Vec<_>>(),
                        "per_tree_intact": outcome.per_tree.iter().map(|t| t.intact).collect::<Vec<_>>(),
                        "delivered": outcome.delivered,
                        "union_delivered": outcome.union_delivered,
                    }))?
                );
            }
            Ok(())
        }
        Command::Stats { n } => {
            let g = build_aq(n)?;
            let degree = g.degree(Vertex(0))?;
            let bound = if n >= 2 {
                Some(verify::max_edst_upper_bound(n)?)
            } else {
                None
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "n": n,
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "degree": degree,
                    "diameter": g.diameter(),
                    "max_edst_upper_bound": bound,
                }))?
            );
            Ok(())
        }
    }
}
