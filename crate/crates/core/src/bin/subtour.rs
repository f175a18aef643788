use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use subtour::decomposition::decompose_extreme_point;
use subtour::descriptions::{build, certify, BuildOptions, DescriptionKind};
use subtour::locked::{enumerate_locked, is_locked_matroid_oracle};
use subtour::lp_format::emit_lp;
use subtour::rational::{int, parse_rational};
use subtour::reductions::preprocess;
use subtour::tsp_bound::bound;
use subtour::verify::{parse_selector, run_suites};
use subtour::{Error, Graph, QPoint, Result};

/// Exact subtour elimination polytope descriptions and checks.
#[derive(Parser)]
#[command(name = "subtour", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph in the edge-list format (`n m` header, then `u v [w]` lines).
    graph: PathBuf,
    /// Emit JSON (the default format).
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Remove loops, parallel edges and series vertices; report bridges.
    Reduce(GraphArg),
    /// List the locked vertex sets.
    Locked {
        #[command(flatten)]
        input: GraphArg,
        /// Cross-check every set against the matroid definition.
        #[arg(long)]
        oracle: bool,
        /// Stop after this many sets.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build a linear description.
    Describe {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, default_value = "P-full")]
        kind: DescriptionKind,
        /// Emit LP text instead of JSON.
        #[arg(long)]
        lp: bool,
        /// Vertex label whose degree row the refined description drops.
        #[arg(long, default_value_t = 1)]
        v0: usize,
        /// Drop the upper bounds from the minimal description.
        #[arg(long)]
        no_ub: bool,
    },
    /// Classify every row of a description.
    Certify {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, default_value = "P-full")]
        kind: DescriptionKind,
        #[arg(long, default_value_t = 1)]
        v0: usize,
        #[arg(long)]
        no_ub: bool,
    },
    /// Subtour lower bound by cutting planes.
    Bound {
        #[command(flatten)]
        input: GraphArg,
        /// `graph` (weights from the file), `uniform`, or a path to a JSON
        /// array or whitespace separated list of rationals.
        #[arg(long, default_value = "graph")]
        weights: String,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Emit the final LP (with the pooled cuts) as LP text.
        #[arg(long)]
        lp: bool,
    },
    /// Decompose an extreme point of Q into spanning-tree points.
    Decompose {
        #[command(flatten)]
        input: GraphArg,
        /// JSON array of rationals, inline or as a file path.
        #[arg(long)]
        point: String,
    },
    /// Run the bundled checks.
    Verify {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// A command's stdout document and exit status.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn json<T: Serialize>(value: &T, code: u8) -> Result<Self> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        Ok(Output { text, code })
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Infeasible => 2,
        Error::ScaleLimit(_) => 3,
        _ => 1,
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    Graph::parse(&text)
}

fn read_text_or_inline(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with('[') && path.exists() {
        fs::read_to_string(path).map_err(|e| Error::Document(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_point(text: &str, dim: usize) -> Result<QPoint> {
    let trimmed = text.trim();
    let point = if trimmed.starts_with('[') {
        serde_json::from_str::<QPoint>(trimmed)?
    } else {
        QPoint::new(trimmed.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>()?)
    };
    point.check_dim(dim)?;
    Ok(point)
}

fn vertex_index(label: usize, g: &Graph) -> Result<usize> {
    if label == 0 || label > g.n() {
        return Err(Error::Domain(format!("vertex label {label} outside 1..={}", g.n())));
    }
    Ok(label - 1)
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Reduce(input) => {
            let g = read_graph(&input.graph)?;
            let (reduced, trace) = preprocess(&g);
            let code = if trace.status.is_infeasible() { 2 } else { 0 };
            Output::json(
                &json!({
                    "schema": "subtour/reduce/v1",
                    "status": trace.status,
                    "trace": trace,
                    "reduced": reduced.to_edge_list(),
                }),
                code,
            )
        }
        Command::Locked { input, oracle, limit } => {
            let g = read_graph(&input.graph)?;
            let found = enumerate_locked(&g, limit)?;
            let mut doc = json!({
                "schema": "subtour/locked/v1",
                "complete": found.complete,
                "count": found.subgraphs.len(),
                "locked": found.subgraphs,
            });
            if oracle {
                let mut disagreements: Vec<Value> = Vec::new();
                for s in &found.subgraphs {
                    if !is_locked_matroid_oracle(&g, &s.edges)? {
                        disagreements.push(json!(s.vertices));
                    }
                }
                doc["oracle_disagreements"] = json!(disagreements);
            }
            Output::json(&doc, 0)
        }
        Command::Describe { input, kind, lp, v0, no_ub } => {
            let g = read_graph(&input.graph)?;
            let opts = BuildOptions { v0: vertex_index(v0, &g)?, keep_ub: !no_ub };
            let sys = build(&g, kind, opts)?;
            if lp {
                Ok(Output { text: emit_lp(&sys, Some(&g.weight_vector()))?, code: 0 })
            } else {
                let mut text = sys.to_json()?;
                if !text.ends_with('\n') {
                    text.push('\n');
                }
                Ok(Output { text, code: 0 })
            }
        }
        Command::Certify { input, kind, v0, no_ub } => {
            let g = read_graph(&input.graph)?;
            let opts = BuildOptions { v0: vertex_index(v0, &g)?, keep_ub: !no_ub };
            let sys = build(&g, kind, opts)?;
            Output::json(&certify(&g, &sys)?, 0)
        }
        Command::Bound { input, weights, max_iter, lp } => {
            let g = read_graph(&input.graph)?;
            let w = match weights.as_str() {
                "graph" => g.weight_vector(),
                "uniform" => QPoint::new(vec![int(1); g.m()]),
                other => parse_point(&read_text_or_inline(other)?, g.m())?,
            };
            let report = bound(&g, &w, max_iter)?;
            let code = if report.status == subtour::tsp_bound::BoundStatus::Infeasible { 2 } else { 0 };
            if lp {
                let mut sys = subtour::tsp_bound::initial_system(&g)?;
                for c in &report.cuts {
                    sys.push_renamed(subtour::descriptions::cut_row(&g, &c.set))?;
                }
                return Ok(Output { text: emit_lp(&sys, Some(&w))?, code });
            }
            Output::json(&report, code)
        }
        Command::Decompose { input, point } => {
            let g = read_graph(&input.graph)?;
            let x = parse_point(&read_text_or_inline(&point)?, g.m())?;
            let d = decompose_extreme_point(&g, &x)?;
            let mut doc = serde_json::to_value(&d)?;
            doc["schema"] = json!("subtour/decomposition/v1");
            Output::json(&doc, 0)
        }
        Command::Verify { input, suite } => {
            let g = read_graph(&input.graph)?;
            let report = run_suites(&g, &parse_selector(&suite)?)?;
            let code = if report.passed { 0 } else { 1 };
            Output::json(&report, code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
