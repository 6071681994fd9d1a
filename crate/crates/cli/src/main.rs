use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pseudoforest::decompose::{decompose, DecomposeError, DecomposeOptions, Outcome, Params};
use pseudoforest::density::mad_exact;
use pseudoforest::format::{parse_edge_list, print_edge_list, to_dot, ResultDocument, ResultKind};
use pseudoforest::gen::{
    gen_above_threshold, gen_below_threshold, gen_pseudoforest_union, Generated,
};
use pseudoforest::graph::Multigraph;
use pseudoforest::orient::{hakimi_orient, OrientationResult};
use pseudoforest::verify::{verify_certificate, verify_decomposition};

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const CERTIFICATE: u8 = 3;
const CAP: u8 = 4;

/// Decompose multigraphs into pseudoforests.
#[derive(Parser)]
#[command(name = "pfd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximum average degree and a densest vertex set.
    Mad { graph: PathBuf },
    /// Orient with out-degree at most CAP, or report a dense vertex set.
    Orient {
        graph: PathBuf,
        #[arg(long)]
        cap: usize,
    },
    /// Split the edges into k + 1 pseudoforests, or certify that the graph is too dense.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        assert_potential: bool,
    },
    /// Check a result document against its graph.
    Verify {
        graph: PathBuf,
        result: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// Draw a decomposition in DOT.
    ExportDot { graph: PathBuf, result: PathBuf },
    /// Print a random multigraph as an edge list.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rejected proposals allowed for `below`.
        #[arg(long, default_value_t = 1000)]
        tries: usize,
        /// Write the generator metadata here as JSON.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Below,
    Above,
    Union,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Multigraph, Failure> {
    parse_edge_list(&read(path)?).map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<ResultDocument, Failure> {
    ResultDocument::from_json(&read(path)?)
        .map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))
}

fn params(k: usize, d: usize) -> Result<Params, Failure> {
    Params::new(k, d).map_err(|e| fail(USAGE, e.to_string()))
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Mad { graph } => {
            let g = load_graph(&graph)?;
            let w = mad_exact(&g).map_err(|e| fail(USAGE, e.to_string()))?;
            println!("{}", w.density);
            let vertices: Vec<String> = w.vertices.iter().map(ToString::to_string).collect();
            println!("{}", vertices.join(" "));
            Ok(OK)
        }
        Command::Orient { graph, cap } => {
            let g = load_graph(&graph)?;
            match hakimi_orient(&g, cap) {
                OrientationResult::Oriented(state) => {
                    print_json(&json!({ "result": "orientation", "tails": state.tails() }));
                    Ok(OK)
                }
                OrientationResult::Dense(w) => {
                    print_json(&json!({
                        "result": "dense",
                        "witness_vertices": w.vertices,
                        "witness_density": w.density,
                    }));
                    Ok(CERTIFICATE)
                }
            }
        }
        Command::Decompose {
            graph,
            k,
            d,
            seed,
            max_iters,
            assert_potential,
        } => {
            let g = load_graph(&graph)?;
            let p = params(k, d)?;
            if d > 2 * k + 2 {
                eprintln!(
                    "warning: d = {d} is above 2k + 2 = {}; no decomposition is guaranteed",
                    2 * k + 2
                );
            }
            let options = DecomposeOptions {
                seed,
                max_iters,
                assert_potential,
            };
            match decompose(&g, &p, &options) {
                Ok(report) => {
                    print!("{}", ResultDocument::from_report(&p, &report).to_json());
                    Ok(match report.outcome {
                        Outcome::Decomposition(_) => OK,
                        Outcome::Certificate(_) => CERTIFICATE,
                    })
                }
                Err(e @ DecomposeError::IterationCap { .. }) => Err(fail(CAP, e.to_string())),
                Err(e) => Err(fail(FAILED, e.to_string())),
            }
        }
        Command::Verify {
            graph,
            result,
            k,
            d,
        } => {
            let g = load_graph(&graph)?;
            let doc = load_document(&result)?;
            if (doc.k, doc.d) != (k, d) {
                return Err(fail(
                    USAGE,
                    format!(
                        "document has k = {}, d = {}; command line has k = {k}, d = {d}",
                        doc.k, doc.d
                    ),
                ));
            }
            let p = params(k, d)?;
            let outcome = match doc.result {
                ResultKind::Decomposition => {
                    let dec = doc.decomposition().expect("schema checked");
                    verify_decomposition(&g, &dec, &p).map_err(|v| v.to_string())
                }
                ResultKind::Certificate => {
                    let cert = doc.certificate(&g).expect("schema checked");
                    verify_certificate(&g, &cert, &p).map_err(|v| v.to_string())
                }
            };
            match outcome {
                Ok(()) => {
                    print_json(&json!({ "valid": true }));
                    Ok(OK)
                }
                Err(violation) => {
                    print_json(&json!({ "valid": false, "violation": violation }));
                    Ok(FAILED)
                }
            }
        }
        Command::ExportDot { graph, result } => {
            let g = load_graph(&graph)?;
            let doc = load_document(&result)?;
            let dec = doc
                .decomposition()
                .ok_or_else(|| fail(USAGE, "certificate documents have nothing to draw"))?;
            let tails = doc
                .orientation
                .as_deref()
                .filter(|t| t.len() == g.edge_count());
            print!("{}", to_dot(&g, &dec, tails));
            Ok(OK)
        }
        Command::Gen {
            kind,
            n,
            k,
            d,
            seed,
            tries,
            meta,
        } => {
            let generated: Generated = match kind {
                GenKind::Below => gen_below_threshold(n, k, d, seed, tries),
                GenKind::Above => gen_above_threshold(n, k, d, seed),
                GenKind::Union => gen_pseudoforest_union(n, k, d, seed),
            }
            .map_err(|e| fail(USAGE, e.to_string()))?;
            if let Some(path) = meta {
                let text = serde_json::to_string_pretty(&generated.metadata).expect("serializable");
                fs::write(&path, text + "\n")
                    .map_err(|e| fail(FAILED, format!("{}: {e}", path.display())))?;
            }
            print!("{}", print_edge_list(&generated.graph));
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
