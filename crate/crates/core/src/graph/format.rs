//! Graph ingestion: edge-list text and adjacency documents.
//!
//! Edge list:
//! ```text
//! # two vertices, a loop and an edge
//! vertices 2
//! edge 1 1
//! edge 1 2
//! ```
//!
//! Adjacency document: `{"vertices": 2, "adjacency": [[1, 1], [0, 1]]}`.

use serde::Deserialize;

use super::{DirectedMultigraph, VertexMatrix};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_error(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what} {token:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<DirectedMultigraph> {
    let mut num_vertices = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("vertices") => {
                if num_vertices.is_some() {
                    return Err(parse_error(line_no, "duplicate vertices line"));
                }
                if !edges.is_empty() {
                    return Err(parse_error(line_no, "vertices line must precede edges"));
                }
                num_vertices = Some(parse_index(tokens.next(), line_no, "vertex count")?);
            }
            Some("edge") => {
                if num_vertices.is_none() {
                    return Err(parse_error(line_no, "edge before vertices line"));
                }
                let s = parse_index(tokens.next(), line_no, "source")?;
                let t = parse_index(tokens.next(), line_no, "target")?;
                edges.push((s, t));
            }
            Some(other) => return Err(parse_error(line_no, format!("unknown keyword {other:?}"))),
            None => unreachable!(),
        }
        if tokens.next().is_some() {
            return Err(parse_error(line_no, "trailing tokens"));
        }
    }
    let n = num_vertices.ok_or_else(|| parse_error(0, "missing vertices line"))?;
    DirectedMultigraph::new(n, &edges)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdjacencyDocument {
    vertices: usize,
    adjacency: Vec<Vec<u64>>,
}

pub fn parse_adjacency_document(text: &str) -> Result<DirectedMultigraph> {
    let doc: AdjacencyDocument =
        serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    if doc.vertices != doc.adjacency.len() {
        return Err(Error::DimensionMismatch {
            expected: doc.vertices,
            found: doc.adjacency.len(),
        });
    }
    Ok(VertexMatrix::from_rows(doc.adjacency)?.to_graph())
}

/// Dispatch on content: a leading `{` selects the adjacency document format.
pub fn parse_graph(text: &str) -> Result<DirectedMultigraph> {
    if text.trim_start().starts_with('{') {
        parse_adjacency_document(text)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments() {
        let g = parse_edge_list("# loops\nvertices 3\n\nedge 1 1\nedge 2 2 # second\nedge 3 3\n").unwrap();
        assert_eq!(g, DirectedMultigraph::loops(3).unwrap());
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list("edge 1 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("vertices 2\nedge 1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("vertices 2\nnode 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_edge_list("vertices 2\nedge 1 3"),
            Err(Error::VertexOutOfRange { index: 3, .. })
        ));
        assert_eq!(parse_edge_list("vertices 0"), Err(Error::NoVertices));
    }

    #[test]
    fn adjacency_document() {
        let g = parse_graph(r#"{"vertices": 2, "adjacency": [[1, 1], [0, 1]]}"#).unwrap();
        assert_eq!(g.vertex_matrix().rows(), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(g.num_edges(), 3);
        assert!(parse_graph(r#"{"vertices": 3, "adjacency": [[1]]}"#).is_err());
        assert!(parse_graph(r#"{"vertices": 1, "adjacency": [[-1]]}"#).is_err());
        assert!(parse_graph(r#"{"vertices": 2, "adjacency": [[1, 1], [0]]}"#).is_err());
    }
}
