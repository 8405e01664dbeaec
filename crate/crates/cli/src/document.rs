//! The graph document format: one JSON object naming the vertices and edges,
//! with labels given as positive integers or the string `"inf"`.

use std::borrow::Cow;
use std::fmt;
use std::path::Path;

use schemars::{json_schema, JsonSchema, Schema, SchemaGenerator};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use semifact::{EdgeLabel, Error as GraphError, LabelInput, LabelledGraph};

use crate::CliError;

/// A labelled graph as written on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    /// Source and target vertex ids.
    pub ends: [String; 2],
    pub label: Label,
}

/// An edge label: a positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Finite(i64),
    Infinite,
}

impl From<Label> for LabelInput {
    fn from(l: Label) -> Self {
        match l {
            Label::Finite(v) => LabelInput::Finite(v),
            Label::Infinite => LabelInput::Infinite,
        }
    }
}

impl From<EdgeLabel> for Label {
    fn from(l: EdgeLabel) -> Self {
        match l.value() {
            Some(v) => Label::Finite(v as i64),
            None => Label::Infinite,
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(v) => s.serialize_i64(*v),
            Label::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct LabelVisitor;

        impl Visitor<'_> for LabelVisitor {
            type Value = Label;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Label, E> {
                Ok(Label::Finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Label, E> {
                i64::try_from(v).map(Label::Finite).map_err(|_| E::custom(format!("label {v} is too large")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Label, E> {
                if v == "inf" {
                    Ok(Label::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(LabelVisitor)
    }
}

impl JsonSchema for Label {
    fn schema_name() -> Cow<'static, str> {
        "Label".into()
    }

    fn json_schema(_: &mut SchemaGenerator) -> Schema {
        json_schema!({
            "description": "A positive integer, or \"inf\" for an edge labelled by infinity.",
            "oneOf": [
                { "type": "integer", "minimum": 1 },
                { "const": "inf" }
            ]
        })
    }
}

impl GraphDocument {
    /// Parse a document; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<GraphDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Read and validate a document from `path`.
    pub fn read(path: &Path) -> Result<GraphDocument, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let doc = GraphDocument::parse(&text).map_err(|e| e.in_file(path))?;
        doc.to_graph().map_err(|e| e.in_file(path))?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }

    pub fn from_graph(name: impl Into<String>, g: &LabelledGraph) -> GraphDocument {
        GraphDocument {
            name: name.into(),
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDocument {
                    id: e.id.clone(),
                    ends: [g.vertex_id(e.source).into(), g.vertex_id(e.target).into()],
                    label: e.label.into(),
                })
                .collect(),
        }
    }

    /// Build the graph, reporting the offending field on failure.
    pub fn to_graph(&self) -> Result<LabelledGraph, CliError> {
        let mut b = LabelledGraph::builder();
        for v in &self.vertices {
            b.add_vertex(v.clone());
        }
        for e in &self.edges {
            b.add_edge(e.id.clone(), e.ends[0].clone(), e.ends[1].clone(), LabelInput::from(e.label));
        }
        b.build().map_err(|e| CliError::Validation { field: self.locate(&e), message: e.to_string() })
    }

    /// The document field a build error refers to.
    fn locate(&self, e: &GraphError) -> String {
        let edge = |id: &str| self.edges.iter().position(|x| x.id == id);
        let vertex = |id: &str| self.vertices.iter().position(|x| x == id);
        match e {
            GraphError::EmptyGraph => "vertices".into(),
            GraphError::DisconnectedGraph(..) => "edges".into(),
            GraphError::DanglingEndpoint { edge: id, vertex: v } => match edge(id) {
                Some(i) => {
                    let end = usize::from(self.edges[i].ends[0] != *v);
                    format!("edges[{i}].ends[{end}]")
                }
                None => "edges".into(),
            },
            GraphError::DuplicateId(id) | GraphError::InvalidId(id) => {
                // the second occurrence of a duplicate is the one to blame
                let vs: Vec<usize> = self.vertices.iter().enumerate().filter(|(_, x)| *x == id).map(|(i, _)| i).collect();
                let es: Vec<usize> = self.edges.iter().enumerate().filter(|(_, x)| x.id == *id).map(|(i, _)| i).collect();
                match (vs.as_slice(), es.as_slice()) {
                    ([.., i], []) => format!("vertices[{i}]"),
                    (_, [.., i]) => format!("edges[{i}].id"),
                    _ => "vertices".into(),
                }
            }
            GraphError::InvalidLabel { edge: id, .. } => match edge(id) {
                Some(i) => format!("edges[{i}].label"),
                None => "edges".into(),
            },
            GraphError::UnknownVertex(id) => vertex(id).map_or("vertices".into(), |i| format!("vertices[{i}]")),
            _ => "document".into(),
        }
    }
}
