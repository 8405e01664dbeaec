//! Analysis reports. Integers that may grow without bound are written as
//! decimal strings.

use std::time::Instant;

use num_bigint::BigInt;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use semifact::circuits::fundamental_circuit_matrix;
use semifact::graph::{contract_infinite, spanning_tree, Circuit};
use semifact::labellings::component_group;
use semifact::verdict::{decide, stabilization_index, Method, Verdict, Witness};
use semifact::zlinalg::snf;
use semifact::LabelledGraph;

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// A report over one or more graph files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Report {
    /// Always "1".
    pub schema_version: String,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub file: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<Analysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    pub name: String,
    /// Edge ids in the order used for matrix columns.
    pub edge_order: Vec<String>,
    pub verdict: VerdictReport,
    pub snf: SnfReport,
    pub component_group: GroupReport,
    /// Blow-up level after which every finite label is one.
    pub stabilization_index: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct VerdictReport {
    /// One of "prime-forest", "snf", "naive".
    pub method: String,
    pub circuit_coprime: bool,
    pub semi_factorial: bool,
    pub neron_lft_model: bool,
    pub witness: WitnessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WitnessReport {
    /// Positive verdict: the SNF diagonal, all ones.
    Coprime { snf_diagonal: Vec<String> },
    /// Negative verdict: a prime dividing every label along a circuit.
    Circuit { prime: u64, edges: Vec<String> },
}

/// The Smith normal form of the labelled fundamental circuit matrix of the
/// graph with infinite edges contracted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SnfReport {
    /// Columns of the matrix: edge ids of the contracted graph.
    pub edge_order: Vec<String>,
    pub spanning_tree: Vec<String>,
    /// One row per circuit: signed edge ids in traversal order, `+` where the
    /// traversal agrees with the edge orientation.
    pub circuits: Vec<Vec<String>>,
    pub diagonal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GroupReport {
    pub free_rank: usize,
    pub torsion: Vec<String>,
    /// For example "Z + Z/3".
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Timings {
    pub verdict: f64,
    pub snf: f64,
    pub component_group: f64,
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// `+e1`, `-e3`, ... along a circuit.
pub fn signed_edges(g: &LabelledGraph, c: &Circuit) -> Vec<String> {
    c.edges()
        .iter()
        .zip(c.agreements())
        .map(|(&e, &agrees)| format!("{}{}", if agrees { '+' } else { '-' }, g.edge(e).id))
        .collect()
}

impl From<&Verdict> for VerdictReport {
    fn from(v: &Verdict) -> Self {
        VerdictReport {
            method: v.method.to_string(),
            circuit_coprime: v.circuit_coprime,
            semi_factorial: v.semi_factorial,
            neron_lft_model: v.neron_lft_model,
            witness: match &v.witness {
                Witness::Coprime { snf_diagonal } => WitnessReport::Coprime { snf_diagonal: strings(snf_diagonal) },
                Witness::Circuit { prime, edges } => WitnessReport::Circuit { prime: *prime, edges: edges.clone() },
            },
        }
    }
}

impl WitnessReport {
    /// The witness line of the human-readable output.
    pub fn describe(&self) -> String {
        match self {
            WitnessReport::Coprime { snf_diagonal } => format!("SNF diagonal [{}]", snf_diagonal.join(", ")),
            WitnessReport::Circuit { prime, edges } => format!("p = {prime}, circuit {}", edges.join(" ")),
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_secs_f64() * 1e3)
}

pub fn snf_report(g: &LabelledGraph) -> SnfReport {
    let c = contract_infinite(g).graph;
    let t = spanning_tree(&c);
    let n = fundamental_circuit_matrix(&c, &t, true).expect("contracted graphs have finite labels");
    SnfReport {
        edge_order: n.edge_ids.clone(),
        spanning_tree: t.tree_edges().iter().map(|&e| c.edge(e).id.clone()).collect(),
        circuits: n.circuits.iter().map(|circuit| signed_edges(&c, circuit)).collect(),
        diagonal: strings(&snf(&n.matrix).diagonal),
    }
}

/// Run every analysis on `g`.
pub fn analyse(name: &str, g: &LabelledGraph, method: Method, cap: usize, timings: bool) -> Result<Analysis, CliError> {
    let (verdict, t_verdict) = timed(|| decide(g, method, cap));
    let verdict = verdict.map_err(CliError::from_graph)?;
    if !verdict.witness.is_valid_for(g) {
        return Err(CliError::Internal(format!("{method} produced an invalid witness")));
    }
    let (snf, t_snf) = timed(|| snf_report(g));
    let (group, t_group) = timed(|| component_group(g));
    Ok(Analysis {
        name: name.into(),
        edge_order: g.edges().iter().map(|e| e.id.clone()).collect(),
        verdict: VerdictReport::from(&verdict),
        snf,
        component_group: GroupReport { free_rank: group.free_rank, torsion: strings(&group.torsion), display: group.to_string() },
        stabilization_index: stabilization_index(g),
        timings_ms: timings.then_some(Timings { verdict: t_verdict, snf: t_snf, component_group: t_group }),
    })
}

impl Report {
    pub fn new(entries: Vec<Entry>) -> Report {
        Report { schema_version: SCHEMA_VERSION.into(), entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
