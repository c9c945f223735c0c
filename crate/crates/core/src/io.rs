//! Graph and distribution file formats.
//!
//! DIMACS: `p edge N M` then `e u v` lines, 1-based, `c` comments.
//! JSON: `{"n": N, "edges": [[i, j], ...]}`, 0-based.
//! Distributions: `{"p": [...], "graph_fingerprint": "<hex>"}` (fingerprint
//! optional). Vertex maps: `{"map": [...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use crate::probability::ProbabilityAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    Json,
}

impl GraphFormat {
    /// `.json` files are JSON; everything else is DIMACS.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => GraphFormat::Json,
            _ => GraphFormat::Dimacs,
        }
    }

    fn sniff(text: &str) -> Self {
        if text.trim_start().starts_with('{') {
            GraphFormat::Json
        } else {
            GraphFormat::Dimacs
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// Non-fatal issues, e.g. a DIMACS edge count that disagrees with the
    /// header.
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct JsonMap {
    map: Vec<usize>,
}

/// Parses `text`; the format is sniffed from the content when `None`.
pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<ParsedGraph> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    match format.unwrap_or_else(|| GraphFormat::sniff(text)) {
        GraphFormat::Json => {
            let j: JsonGraph =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
            Ok(ParsedGraph {
                graph: Graph::from_edges(j.n, &edges)?,
                warnings: Vec::new(),
            })
        }
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn parse_dimacs(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let mut fields = line.split_whitespace();
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: `{line}`", lineno + 1));
        match fields.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(bad("duplicate header"));
                }
                match fields.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(bad("expected `p edge N M`")),
                }
                let n = fields
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad("bad vertex count"))?;
                let m = fields
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad("bad edge count"))?;
                if n == 0 {
                    return Err(Error::EmptyGraph);
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| bad("edge before header"))?;
                let mut endpoint = || -> Result<usize> {
                    let v: usize = fields
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| bad("bad endpoint"))?;
                    if v == 0 || v > n {
                        return Err(Error::IndexOutOfRange { index: v, n });
                    }
                    Ok(v - 1)
                };
                let u = endpoint()?;
                let v = endpoint()?;
                edges.push((u, v));
            }
            Some(_) => return Err(bad("unrecognised line")),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing `p edge N M` header".into()))?;
    let graph = Graph::from_edges(n, &edges)?;
    let mut warnings = Vec::new();
    if graph.edge_count() != m {
        warnings.push(format!(
            "header declares {m} edges, found {} distinct edges",
            graph.edge_count()
        ));
    }
    Ok(ParsedGraph { graph, warnings })
}

pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dimacs => {
            let edges = g.edges();
            let mut out = format!("p edge {} {}\n", g.vertex_count(), edges.len());
            for (i, j) in edges {
                out.push_str(&format!("e {} {}\n", i + 1, j + 1));
            }
            out
        }
        GraphFormat::Json => {
            let j = JsonGraph {
                n: g.vertex_count(),
                edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            };
            let mut s = serde_json::to_string(&j).expect("plain data");
            s.push('\n');
            s
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> Result<ParsedGraph> {
    parse_graph(&read(path)?, None)
}

pub fn parse_distribution(text: &str) -> Result<ProbabilityAssignment> {
    let p: ProbabilityAssignment =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    p.validated()
}

pub fn read_distribution(path: &Path) -> Result<ProbabilityAssignment> {
    parse_distribution(&read(path)?)
}

pub fn serialize_distribution(p: &ProbabilityAssignment) -> String {
    let mut s =
        serde_json::to_string(&serde_json::to_value(p).expect("plain data")).expect("plain data");
    s.push('\n');
    s
}

pub fn parse_vertex_map(text: &str) -> Result<VertexMap> {
    let j: JsonMap = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    VertexMap::new(j.map)
}

pub fn read_vertex_map(path: &Path) -> Result<VertexMap> {
    parse_vertex_map(&read(path)?)
}

pub fn serialize_vertex_map(m: &VertexMap) -> String {
    let mut s = serde_json::to_string(&JsonMap {
        map: m.as_slice().to_vec(),
    })
    .expect("plain data");
    s.push('\n');
    s
}
