use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use semifact::circuits::{circuit_matrix, fundamental_circuit_matrix, CircuitMatrixBundle, DEFAULT_CIRCUIT_CAP};
use semifact::corpus::{self, RandomGraphParams, SEED_ENV};
use semifact::graph::{contract_infinite, nth_blowup, spanning_tree, total_blowup, SpanningTree};
use semifact::labellings::{component_group, descent_solve, pushforward_multidegree, VertexLabelling};
use semifact::verdict::{decide, Method};
use semifact::zlinalg::{snf, IntMatrix};
use semifact::LabelledGraph;

use crate::document::GraphDocument;
use crate::report::{analyse, signed_edges, snf_report, Entry, Report, Status};
use crate::{CliError, GRAPH_SCHEMA, REPORT_SCHEMA};

/// Decide semi-factoriality of a curve from its labelled dual graph.
#[derive(Debug, Parser)]
#[command(name = "semifact", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide circuit-coprimality and print the verdict.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "prime-forest")]
        method: Method,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Leave timings out of the JSON report.
        #[arg(long)]
        no_timings: bool,
        /// Give up on the naive decider after this many circuits.
        #[arg(long, default_value_t = DEFAULT_CIRCUIT_CAP)]
        circuit_cap: usize,
    },
    /// Print a circuit matrix in the matrix text format.
    Matrices {
        file: PathBuf,
        /// Only the fundamental circuits of a spanning tree.
        #[arg(long)]
        fundamental: bool,
        /// Multiply each column by its edge label.
        #[arg(long)]
        labelled: bool,
        /// Spanning tree edge ids, comma separated; implies --fundamental.
        #[arg(long, value_delimiter = ',')]
        tree: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_CIRCUIT_CAP)]
        circuit_cap: usize,
    },
    /// Smith normal form of a matrix file, or of a graph's labelled
    /// fundamental circuit matrix after contracting infinite edges.
    Snf {
        #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
        file: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Write the n-th or total blow-up as a graph document.
    Blowup {
        file: PathBuf,
        #[arg(long, required_unless_present = "total")]
        n: Option<u32>,
        #[arg(long, conflicts_with = "n")]
        total: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the graph with every infinite edge contracted.
    Contract {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the multidegree component group.
    Group {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find a Cartier labelling of the n-th blow-up cancelling `alpha` on the
    /// new vertices, and push the result down to the original graph.
    Descend {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        /// JSON object from blow-up vertex ids to integers; missing ids are zero.
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Analyse every `.json` file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value = "prime-forest")]
        method: Method,
        #[arg(long)]
        no_timings: bool,
        #[arg(long, default_value_t = DEFAULT_CIRCUIT_CAP)]
        circuit_cap: usize,
    },
    /// Run all three deciders on seeded random graphs and compare them.
    Crosscheck {
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Print a shipped JSON schema.
    Schema {
        #[arg(value_parser = ["graph", "report"])]
        which: String,
    },
}

/// Parse `args`, run the command and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { crate::EXIT_INPUT } else { 0 };
        }
    };
    let mut out = std::io::stdout().lock();
    match execute(cli.command, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<(GraphDocument, LabelledGraph), CliError> {
    let doc = GraphDocument::read(path)?;
    let g = doc.to_graph()?;
    Ok((doc, g))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

fn write_or_emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => emit(out, text),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

/// An integer as a JSON number when it fits in 64 bits, else as a string.
fn int_value(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn labelling_value(g: &LabelledGraph, values: &[BigInt]) -> Value {
    let map: Map<String, Value> = values.iter().enumerate().map(|(v, x)| (g.vertex_id(v).to_string(), int_value(x))).collect();
    Value::Object(map)
}

fn matrix_text(g: &LabelledGraph, bundle: &CircuitMatrixBundle) -> String {
    let mut text = format!("# columns: {}\n", bundle.edge_ids.join(" "));
    for (i, c) in bundle.circuits.iter().enumerate() {
        text += &format!("# row {}: {} {}\n", i + 1, g.vertex_id(c.vertices()[0]), signed_edges(g, c).join(" "));
    }
    text + &bundle.matrix.to_string()
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Check { file, method, json, no_timings, circuit_cap } => {
            let (doc, g) = load(&file)?;
            let analysis = analyse(&doc.name, &g, method, circuit_cap, !no_timings)?;
            if json {
                let entry =
                    Entry { file: file.display().to_string(), status: Status::Ok, analysis: Some(analysis), error: None };
                emit(out, &Report::new(vec![entry]).to_json())
            } else {
                let v = &analysis.verdict;
                emit(
                    out,
                    &format!(
                        "circuit-coprime: {}; semi-factorial: {}; Néron lft-model: {}\nmethod: {}\nwitness: {}\n",
                        v.circuit_coprime,
                        v.semi_factorial,
                        v.neron_lft_model,
                        v.method,
                        v.witness.describe()
                    ),
                )
            }
        }
        Command::Matrices { file, fundamental, labelled, tree, circuit_cap } => {
            let (_, g) = load(&file)?;
            let bundle = match (fundamental, tree) {
                (_, Some(ids)) => {
                    let t = SpanningTree::from_edge_ids(&g, &ids).map_err(CliError::Graph)?;
                    fundamental_circuit_matrix(&g, &t, labelled)
                }
                (true, None) => fundamental_circuit_matrix(&g, &spanning_tree(&g), labelled),
                (false, None) => circuit_matrix(&g, labelled, circuit_cap),
            }
            .map_err(CliError::Graph)?;
            emit(out, &matrix_text(&g, &bundle))
        }
        Command::Snf { file, matrix, json } => {
            let (diagonal, comment) = match (file, matrix) {
                (_, Some(path)) => {
                    let text =
                        std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    let m: IntMatrix = text.parse().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                    (snf(&m).diagonal.iter().map(ToString::to_string).collect(), None)
                }
                (Some(path), None) => {
                    let (_, g) = load(&path)?;
                    let r = snf_report(&g);
                    let note = format!("# columns: {}\n# tree: {}\n", r.edge_order.join(" "), r.spanning_tree.join(" "));
                    (r.diagonal, Some(note))
                }
                (None, None) => return Err(CliError::Usage("give a graph file or --matrix".into())),
            };
            let rank = diagonal.iter().filter(|d: &&String| *d != "0").count();
            if json {
                emit(out, &pretty(&json!({ "rank": rank, "diagonal": diagonal })))
            } else {
                emit(out, &format!("{}rank: {rank}\ndiagonal: {}\n", comment.unwrap_or_default(), diagonal.join(" ")))
            }
        }
        Command::Blowup { file, n, total, output } => {
            let (doc, g) = load(&file)?;
            let (b, suffix) = match n {
                Some(n) if !total => (nth_blowup(&g, n), format!("blowup-{n}")),
                _ => (total_blowup(&g), "total-blowup".to_string()),
            };
            let text = GraphDocument::from_graph(format!("{}-{suffix}", doc.name), b.graph()).to_json();
            write_or_emit(out, output.as_deref(), &text)
        }
        Command::Contract { file, output } => {
            let (doc, g) = load(&file)?;
            let c = contract_infinite(&g).graph;
            write_or_emit(out, output.as_deref(), &GraphDocument::from_graph(format!("{}-contracted", doc.name), &c).to_json())
        }
        Command::Group { file, json } => {
            let (_, g) = load(&file)?;
            let group = component_group(&g);
            if json {
                let torsion: Vec<String> = group.torsion.iter().map(ToString::to_string).collect();
                emit(out, &pretty(&json!({ "free_rank": group.free_rank, "torsion": torsion, "display": group.to_string() })))
            } else {
                emit(out, &format!("{group}\n"))
            }
        }
        Command::Descend { file, n, alpha } => {
            let (_, g) = load(&file)?;
            let b = nth_blowup(&g, n);
            let h = b.graph();
            let alpha = read_alpha(&alpha, h)?;
            let Some(phi) = descent_solve(&b, &alpha).map_err(CliError::Graph)? else {
                return Err(CliError::Infeasible("no Cartier labelling cancels alpha on the new vertices".into()));
            };
            let pushed = pushforward_multidegree(&b, &alpha, &phi)
                .map_err(|e| CliError::Internal(format!("descent witness does not verify: {e}")))?;
            emit(
                out,
                &pretty(&json!({
                    "phi": labelling_value(h, phi.labelling().values()),
                    "pushforward": labelling_value(&g, pushed.values()),
                })),
            )
        }
        Command::Batch { dir, report, method, no_timings, circuit_cap } => {
            let report_doc = batch(&dir, method, circuit_cap, !no_timings)?;
            std::fs::write(&report, report_doc.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", report.display())))?;
            let failed = report_doc.entries.iter().filter(|e| e.status == Status::Error).count();
            emit(out, &format!("{} files, {failed} failed; report written to {}\n", report_doc.entries.len(), report.display()))?;
            if failed > 0 {
                return Err(CliError::Usage(format!("{failed} files could not be analysed")));
            }
            Ok(())
        }
        Command::Crosscheck { seed, count } => {
            let graphs = corpus::random_graphs(seed, count, &RandomGraphParams::default());
            let mut disagreements = Vec::new();
            for (i, g) in graphs.iter().enumerate() {
                let verdicts: Vec<bool> = Method::ALL
                    .iter()
                    .map(|&m| decide(g, m, DEFAULT_CIRCUIT_CAP).map(|v| v.circuit_coprime))
                    .collect::<Result<_, _>>()
                    .map_err(CliError::Graph)?;
                if verdicts.iter().any(|&v| v != verdicts[0]) {
                    disagreements.push(i);
                }
            }
            emit(out, &format!("seed {seed}: {count} graphs, {} disagreements\n", disagreements.len()))?;
            if !disagreements.is_empty() {
                return Err(CliError::Internal(format!("deciders disagree on graphs {disagreements:?}")));
            }
            Ok(())
        }
        Command::Schema { which } => emit(out, if which == "graph" { GRAPH_SCHEMA } else { REPORT_SCHEMA }),
    }
}

fn read_alpha(path: &Path, h: &LabelledGraph) -> Result<VertexLabelling, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let map: Map<String, Value> = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let mut values = vec![BigInt::from(0); h.vertex_count()];
    for (id, v) in map {
        let i = h.vertex_index(&id).ok_or_else(|| CliError::Usage(format!("alpha names unknown vertex `{id}`")))?;
        values[i] = match &v {
            Value::Number(n) if n.is_i64() => BigInt::from(n.as_i64().unwrap()),
            Value::String(s) => s.parse().map_err(|_| CliError::Usage(format!("alpha[{id}]: `{s}` is not an integer")))?,
            _ => return Err(CliError::Usage(format!("alpha[{id}]: expected an integer, found {v}"))),
        };
    }
    Ok(VertexLabelling::new(values))
}

/// One entry per `.json` file in `dir`, in file-name order.
pub fn batch(dir: &Path, method: Method, cap: usize, timings: bool) -> Result<Report, CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let entries = files
        .par_iter()
        .map(|path| {
            let file = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
            match load(path).and_then(|(doc, g)| analyse(&doc.name, &g, method, cap, timings)) {
                Ok(a) => Entry { file, status: Status::Ok, analysis: Some(a), error: None },
                Err(e) => Entry { file, status: Status::Error, analysis: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    Ok(Report::new(entries))
}
