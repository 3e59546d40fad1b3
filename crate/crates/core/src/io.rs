//! Text formats: edge lists, JSON graphs, DOT export and decimal-string serde helpers.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, GraphRecord, LabeledGraph};
use crate::reduction::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(GraphError),
}

impl From<GraphError> for InputError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SelfLoop(v) => InputError::SelfLoop(v),
            GraphError::DuplicateEdge(u, v) => InputError::DuplicateEdge(u, v),
            other => InputError::Graph(other),
        }
    }
}

/// Parses either a JSON graph `{"n": N, "edges": [[u, v], ...]}` or an edge list.
pub fn parse_graph_input(text: &str) -> Result<LabeledGraph, InputError> {
    if text.trim_start().starts_with('{') {
        let record: GraphRecord =
            serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
        return Ok(LabeledGraph::try_from(record)?);
    }
    parse_edge_list(text)
}

/// One `u v` pair per line, 1-based. `#` starts a comment; an optional
/// `n N` line fixes the vertex count, otherwise it is the largest label.
pub fn parse_edge_list(text: &str) -> Result<LabeledGraph, InputError> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| InputError::Parse { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields[0] == "n" {
            if fields.len() != 2 || declared.is_some() || !edges.is_empty() {
                return Err(err("header must be a single leading `n <N>` line".into()));
            }
            declared = Some(
                fields[1]
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad vertex count {:?}: {e}", fields[1])))?,
            );
            continue;
        }
        if fields.len() != 2 {
            return Err(err(format!("expected `u v`, found {content:?}")));
        }
        let parse = |s: &str| match s.parse::<usize>() {
            Ok(0) => Err(err("labels are 1-based".into())),
            Ok(v) => Ok(v),
            Err(e) => Err(err(format!("bad label {s:?}: {e}"))),
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(InputError::SelfLoop(u));
        }
        edges.push((u, v));
    }
    let max_label = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let n = declared.unwrap_or(max_label);
    Ok(LabeledGraph::from_edges(n, &edges)?)
}

pub fn to_edge_list(g: &LabeledGraph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn graph_to_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 1..=g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Vertex weights become `xlabel`s; weight `-1` edges are dashed, other
/// weights are printed as edge labels.
pub fn weighted_to_dot(h: &WeightedGraph) -> String {
    let mut out = String::from("graph H {\n");
    for v in 1..=h.vertex_count() {
        let _ = writeln!(out, "  {v} [xlabel=\"{}\"];", h.vertex_weight(v));
    }
    for (u, v, w) in h.edges() {
        match w {
            1 => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
            -1 => {
                let _ = writeln!(out, "  {u} -- {v} [style=dashed];");
            }
            _ => {
                let _ = writeln!(out, "  {u} -- {v} [label=\"{w}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Serde adapter writing a `BigInt` as a decimal string.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Serde adapter writing a list of `BigInt`s as decimal strings.
pub mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(D::Error::custom))
            .collect()
    }
}
