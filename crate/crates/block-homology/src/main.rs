//! Command-line interface: compute invariant reports for block data given
//! as JSON documents or built-in presets.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use block_homology::error::EngineError;
use block_homology::input::parse_block_datum;
use block_homology::lattice::RationalVector;
use block_homology::presets::{preset_document, preset_names, preset_summary};
use block_homology::report::{render_json, render_text, run_report};

#[derive(Parser)]
#[command(
    name = "block-homology",
    version,
    about = "Exact homological invariants of finite affine torus actions twisted by root-of-unity cocycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full invariant report for a datum
    Report {
        /// Path to an input document (omit when using --preset)
        input: Option<PathBuf>,
        /// Evaluate a built-in preset instead of a file
        #[arg(long, conflicts_with = "input")]
        preset: Option<String>,
        /// Emit canonical JSON instead of text
        #[arg(long)]
        json: bool,
        /// Highest degree to tabulate (default: the torus rank)
        #[arg(long)]
        max_degree: Option<usize>,
        /// Fiber point "a/b,c/d" (one coordinate per comma); repeat the flag
        /// or separate points with ';' for several. Overrides the document's
        /// fiber points.
        #[arg(long)]
        fiber: Vec<String>,
        /// Cap on the group closure size
        #[arg(long)]
        group_cap: Option<usize>,
    },
    /// List the built-in presets
    Presets,
    /// Parse and validate a datum document without computing anything
    Validate {
        /// Path to an input document
        input: PathBuf,
    },
}

fn parse_fiber_argument(values: &[String], rank: usize) -> Result<Vec<RationalVector>, EngineError> {
    let mut points = Vec::new();
    for value in values {
        for chunk in value.split(';') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let mut pairs = Vec::new();
            for coord in chunk.split(',') {
                let coord = coord.trim();
                let (num, den) = match coord.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (coord, "1"),
                };
                let num: i64 = num.parse().map_err(|_| EngineError::ParseError {
                    detail: format!("fiber coordinate {coord:?} is not a rational a/b"),
                })?;
                let den: i64 = den.parse().map_err(|_| EngineError::ParseError {
                    detail: format!("fiber coordinate {coord:?} is not a rational a/b"),
                })?;
                pairs.push((num, den));
            }
            let v = RationalVector::from_pairs(&pairs)?;
            if v.dim() != rank {
                return Err(EngineError::ParseError {
                    detail: format!(
                        "fiber point {chunk:?} has {} coordinates, expected {rank}",
                        v.dim()
                    ),
                });
            }
            points.push(v.reduce_mod_one());
        }
    }
    Ok(points)
}

fn load_document(input: &Option<PathBuf>, preset: &Option<String>) -> Result<String, EngineError> {
    match (input, preset) {
        (Some(path), None) => {
            std::fs::read_to_string(path).map_err(|e| EngineError::ParseError {
                detail: format!("cannot read {}: {e}", path.display()),
            })
        }
        (None, Some(name)) => preset_document(name)
            .map(str::to_string)
            .ok_or_else(|| EngineError::ParseError {
                detail: format!(
                    "unknown preset {name:?}; available: {}",
                    preset_names().join(", ")
                ),
            }),
        (None, None) => Err(EngineError::ParseError {
            detail: "provide an input file or --preset NAME".into(),
        }),
        (Some(_), Some(_)) => unreachable!("clap forbids input together with --preset"),
    }
}

fn run() -> Result<(), EngineError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version arrive here; usage errors are input errors.
            if e.use_stderr() {
                e.print().ok();
                std::process::exit(1);
            }
            e.print().ok();
            return Ok(());
        }
    };

    match cli.command {
        Command::Report {
            input,
            preset,
            json,
            max_degree,
            fiber,
            group_cap,
        } => {
            let text = load_document(&input, &preset)?;
            let mut doc = block_homology::input::parse_input_document(&text)?;
            if let Some(cap) = group_cap {
                doc.options.group_cap = Some(cap);
            }
            let (datum, mut options) = block_homology::input::build_block_datum(&doc)?;
            if let Some(n) = max_degree {
                options.max_degree = Some(n);
            }
            if !fiber.is_empty() {
                options.fiber_points = parse_fiber_argument(&fiber, datum.rank())?;
            }
            let report = run_report(&datum, &options)?;
            if json {
                print!("{}", render_json(&report));
            } else {
                print!("{}", render_text(&report));
            }
            Ok(())
        }
        Command::Presets => {
            for name in preset_names() {
                let summary = preset_summary(name).unwrap_or_default();
                println!("{name:<24} {summary}");
            }
            Ok(())
        }
        Command::Validate { input } => {
            let text = load_document(&Some(input.clone()), &None)?;
            let (datum, options) = parse_block_datum(&text)?;
            let _ = options;
            println!(
                "ok: {} (rank {}, group order {}, cocycle modulus {})",
                datum.label(),
                datum.rank(),
                datum.group().order(),
                datum.cocycle().modulus()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
