//! Edge-list and JSON graph formats.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v` (0-based).
//! Blank lines and lines starting with `#` are ignored. JSON: `{"n": 3, "edges": [[0,1],[1,2]]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Json,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header `n m`".into(),
    })?;
    let [n, m] = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let [u, v] = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("vertex out of range for n = {n}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, l: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = l.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, got `{l}`"),
        });
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{f}` is not a nonnegative integer"),
        })?;
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let jg: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    Graph::from_edges(jg.n, jg.edges.into_iter().map(|[u, v]| (u, v)))
}

/// Parses either format, guessing JSON when the first non-blank byte is `{`.
pub fn parse_graph(text: &str, format: Option<Format>) -> Result<Graph> {
    let format = format.unwrap_or_else(|| {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::EdgeList
        }
    });
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Json => parse_json(text),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn to_json_value(g: &Graph) -> serde_json::Value {
    serde_json::to_value(JsonGraph {
        n: g.vertex_count(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
    })
    .expect("plain data serializes")
}

pub fn to_json(g: &Graph) -> String {
    to_json_value(g).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let g = Graph::cycle(5);
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_json(&to_json(&g)).unwrap(), g);
        assert_eq!(parse_graph(&to_json(&g), None).unwrap(), g);
        assert_eq!(parse_graph("# c\n3 2\n0 1\n\n1 2\n", None).unwrap(), Graph::path(3));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("2 1\n0 5\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("2 1\n1 1\n"), Err(Error::NotSimple(_))));
        assert!(matches!(parse_edge_list("2 2\n0 1\n1 0\n"), Err(Error::NotSimple(_))));
        assert!(matches!(parse_json("{\"n\": 2}"), Err(Error::Parse { .. })));
    }
}
