use std::collections::HashSet;

use serde::Deserialize;

use super::{ResolutionGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonVertex {
    id: String,
    weight: i64,
    genus: i64,
}

#[derive(Deserialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn checked_genus(id: &str, genus: i64) -> Result<u32> {
    u32::try_from(genus).map_err(|_| Error::NegativeGenus {
        id: id.to_string(),
        genus,
    })
}

/// Parses a graph file: either the line format
///
/// ```text
/// # comment
/// vertex a -2 0
/// vertex b -3 0
/// edge a b
/// ```
///
/// or the JSON form `{"vertices": [{"id", "weight", "genus"}], "edges": [[a, b]]}`.
pub fn parse_graph(text: &str) -> Result<ResolutionGraph> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut declared = HashSet::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| Error::Parse { line, message };
        match tokens.as_slice() {
            [] => {}
            ["vertex", id, weight, genus] => {
                if !valid_id(id) {
                    return Err(err(format!("invalid vertex id `{id}`")));
                }
                let weight: i64 = weight
                    .parse()
                    .map_err(|_| err(format!("invalid weight `{weight}`")))?;
                let genus: i64 = genus
                    .parse()
                    .map_err(|_| err(format!("invalid genus `{genus}`")))?;
                if !declared.insert(id.to_string()) {
                    return Err(Error::DuplicateVertex(id.to_string()));
                }
                vertices.push(Vertex::new(*id, weight, checked_genus(id, genus)?));
            }
            ["edge", a, b] => {
                for id in [a, b] {
                    if !declared.contains(*id) {
                        return Err(Error::UnknownVertex(id.to_string()));
                    }
                }
                edges.push((a.to_string(), b.to_string()));
            }
            [keyword, ..] => {
                return Err(err(format!(
                    "expected `vertex <id> <weight> <genus>` or `edge <id> <id>`, got `{keyword}` with {} fields",
                    tokens.len()
                )))
            }
        }
    }
    ResolutionGraph::new(vertices, &edges)
}

fn parse_json(text: &str) -> Result<ResolutionGraph> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let mut vertices = Vec::with_capacity(raw.vertices.len());
    for v in raw.vertices {
        if !valid_id(&v.id) {
            return Err(Error::Json(format!("invalid vertex id `{}`", v.id)));
        }
        let genus = checked_genus(&v.id, v.genus)?;
        vertices.push(Vertex::new(v.id, v.weight, genus));
    }
    let edges: Vec<_> = raw.edges.into_iter().map(|[a, b]| (a, b)).collect();
    ResolutionGraph::new(vertices, &edges)
}
