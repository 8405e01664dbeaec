//! Labelled multigraphs: the dual graph of a nodal curve with node thicknesses
//! as edge labels.
//!
//! Vertices and edges carry string ids. Internally both are stored sorted by
//! [`id_cmp`], so index order and id order coincide everywhere: matrix columns,
//! link order and circuit enumeration all follow it.

mod blowup;
mod circuits;
mod contract;
mod iso;

pub use blowup::{first_blowup, nth_blowup, total_blowup, BlowupGraph, EdgePath};
pub use circuits::{enumerate_circuits, fundamental_circuits, spanning_tree, Circuit, SpanningTree};
pub use contract::{contract_infinite, Contraction};
pub use iso::isomorphic_fixing;

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::num::NonZeroU64;

use crate::error::{Error, Result};

/// Natural ordering of ids: runs of ASCII digits compare numerically, so
/// `e2 < e10`. Ties fall back to plain byte order.
pub fn id_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    while !x.is_empty() && !y.is_empty() {
        let dx = x[0].is_ascii_digit();
        let dy = y[0].is_ascii_digit();
        let ord = if dx && dy {
            let nx = x.iter().take_while(|c| c.is_ascii_digit()).count();
            let ny = y.iter().take_while(|c| c.is_ascii_digit()).count();
            let (rx, ry) = (&x[..nx], &y[..ny]);
            let tx = trim_zeros(rx);
            let ty = trim_zeros(ry);
            let o = tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty));
            x = &x[nx..];
            y = &y[ny..];
            o
        } else {
            let o = x[0].cmp(&y[0]);
            x = &x[1..];
            y = &y[1..];
            o
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    x.len().cmp(&y.len()).then_with(|| a.cmp(b))
}

fn find_id(sorted: &[String], id: &str) -> Option<usize> {
    sorted.binary_search_by(|v| id_cmp(v, id)).ok()
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let n = s.iter().take_while(|&&c| c == b'0').count();
    &s[n..]
}

/// Edge label: a positive integer thickness or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeLabel(Option<NonZeroU64>);

impl EdgeLabel {
    pub const ONE: EdgeLabel = EdgeLabel(Some(NonZeroU64::MIN));
    pub const INFINITY: EdgeLabel = EdgeLabel(None);

    /// Finite label; `None` for 0.
    pub fn finite(value: u64) -> Option<EdgeLabel> {
        NonZeroU64::new(value).map(|v| EdgeLabel(Some(v)))
    }

    /// The finite value, or `None` for infinity.
    pub fn value(self) -> Option<u64> {
        self.0.map(NonZeroU64::get)
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_none()
    }

    pub fn is_one(self) -> bool {
        self.value() == Some(1)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

/// Unvalidated label as it appears in user input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelInput {
    Finite(i64),
    Infinite,
}

impl From<i64> for LabelInput {
    fn from(v: i64) -> Self {
        LabelInput::Finite(v)
    }
}

impl From<EdgeLabel> for LabelInput {
    fn from(l: EdgeLabel) -> Self {
        match l.value() {
            Some(v) => LabelInput::Finite(v as i64),
            None => LabelInput::Infinite,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Reference orientation: source vertex index.
    pub source: usize,
    /// Reference orientation: target vertex index.
    pub target: usize,
    pub label: EdgeLabel,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    /// The endpoint opposite to `v`; `v` itself for loops.
    pub fn other(&self, v: usize) -> usize {
        if self.source == v {
            self.target
        } else {
            self.source
        }
    }
}

/// A finite connected multigraph with loops and labels in `Z>=1 ∪ {inf}`.
#[derive(Debug, Clone)]
pub struct LabelledGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    /// Incident edge indices per vertex, ascending; a loop is listed once.
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for LabelledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for LabelledGraph {}

#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String, LabelInput)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        label: impl Into<LabelInput>,
    ) -> Self {
        self.edges.push((id.into(), source.into(), target.into(), label.into()));
        self
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) {
        self.vertices.push(id.into());
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        label: impl Into<LabelInput>,
    ) {
        self.edges.push((id.into(), source.into(), target.into(), label.into()));
    }

    pub fn build(self) -> Result<LabelledGraph> {
        LabelledGraph::from_parts(self.vertices, self.edges)
    }
}

impl LabelledGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Validate and build. Rejects empty, disconnected, dangling or duplicate input
    /// and labels `<= 0`.
    pub fn from_parts(
        vertices: Vec<String>,
        edges: Vec<(String, String, String, LabelInput)>,
    ) -> Result<LabelledGraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut vertices = vertices;
        for v in &vertices {
            if v.is_empty() {
                return Err(Error::InvalidId(v.clone()));
            }
        }
        vertices.sort_by(|a, b| id_cmp(a, b));
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }

        let mut built = Vec::with_capacity(edges.len());
        for (id, s, t, label) in edges {
            if id.is_empty() {
                return Err(Error::InvalidId(id));
            }
            let lookup = |v: &String| {
                find_id(&vertices, v).ok_or_else(|| Error::DanglingEndpoint {
                    edge: id.clone(),
                    vertex: v.clone(),
                })
            };
            let source = lookup(&s)?;
            let target = lookup(&t)?;
            let label = match label {
                LabelInput::Infinite => EdgeLabel::INFINITY,
                LabelInput::Finite(v) if v >= 1 => EdgeLabel::finite(v as u64).expect("positive"),
                LabelInput::Finite(v) => return Err(Error::InvalidLabel { edge: id, label: v }),
            };
            built.push(Edge { id, source, target, label });
        }
        built.sort_by(|a, b| id_cmp(&a.id, &b.id));
        if let Some(w) = built.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateId(w[0].id.clone()));
        }
        let g = Self::assemble(vertices, built);
        g.check_connected()?;
        Ok(g)
    }

    /// Both lists must already be sorted by [`id_cmp`] and consistent.
    fn assemble(vertices: Vec<String>, edges: Vec<Edge>) -> LabelledGraph {
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.source].push(i);
            if !e.is_loop() {
                incidence[e.target].push(i);
            }
        }
        LabelledGraph { vertices, edges, incidence }
    }

    fn check_connected(&self) -> Result<()> {
        let seen = self.reachable_from(0);
        match seen.iter().position(|&s| !s) {
            None => Ok(()),
            Some(i) => {
                Err(Error::DisconnectedGraph(self.vertices[i].clone(), self.vertices[0].clone()))
            }
        }
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn nullity(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        find_id(&self.vertices, id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| id_cmp(&e.id, id)).ok()
    }

    /// Incident edges of `v` in ascending index order (loops once).
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Number of edge-ends at `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].iter().map(|&e| if self.edges[e].is_loop() { 2 } else { 1 }).sum()
    }

    pub fn has_infinite_edges(&self) -> bool {
        self.edges.iter().any(|e| e.label.is_infinite())
    }

    /// Largest finite label, if any.
    pub fn max_finite_label(&self) -> Option<u64> {
        self.edges.iter().filter_map(|e| e.label.value()).max()
    }

    /// Same graph with the labels replaced edge by edge.
    pub fn with_labels(&self, labels: &[EdgeLabel]) -> Result<LabelledGraph> {
        if labels.len() != self.edges.len() {
            return Err(Error::DimensionMismatch { expected: self.edges.len(), found: labels.len() });
        }
        let mut g = self.clone();
        for (e, &l) in g.edges.iter_mut().zip(labels) {
            e.label = l;
        }
        Ok(g)
    }
}

impl fmt::Display for LabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V = {{{}}}; E = {{", self.vertices.join(", "))?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{}: {} -> {} [{}]",
                e.id, self.vertices[e.source], self.vertices[e.target], e.label
            )?;
        }
        f.write_str("}")
    }
}
