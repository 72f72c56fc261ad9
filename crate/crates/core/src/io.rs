//! DIMACS `.col` and JSON graph formats.
//!
//! DIMACS endpoints are 1-indexed on disk and 0-indexed in memory. Both
//! readers reject self-loops and repeated edges instead of cleaning them up.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the readers accept; adjacency is a dense bit
/// matrix, so this caps memory at a few tens of megabytes.
pub const MAX_READ_VERTICES: usize = 1 << 14;

fn check_size(n: usize, line: usize) -> Result<()> {
    if n > MAX_READ_VERTICES {
        return Err(parse_err(line, format!("{n} vertices exceeds the limit of {MAX_READ_VERTICES}")));
    }
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a DIMACS `.col` graph.
pub fn read_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut graph: Option<Graph> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut fields = line.split_ascii_whitespace();
        match fields.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line_no, "second problem line"));
                }
                let kind = fields.next().ok_or_else(|| parse_err(line_no, "missing format in problem line"))?;
                if kind != "edge" && kind != "col" {
                    return Err(parse_err(line_no, format!("unsupported format {kind:?}")));
                }
                let n = parse_num(fields.next(), line_no, "vertex count")?;
                let m = parse_num(fields.next(), line_no, "edge count")?;
                if fields.next().is_some() {
                    return Err(parse_err(line_no, "trailing fields in problem line"));
                }
                check_size(n, line_no)?;
                header = Some((n, m));
                graph = Some(Graph::edgeless(n));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(line_no, "edge before problem line"))?;
                let u = parse_num(fields.next(), line_no, "edge endpoint")?;
                let v = parse_num(fields.next(), line_no, "edge endpoint")?;
                if fields.next().is_some() {
                    return Err(parse_err(line_no, "trailing fields in edge line"));
                }
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(parse_err(line_no, format!("endpoint {w} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
                }
                let g = graph.as_mut().expect("header seen");
                if g.has_edge(u - 1, v - 1) {
                    return Err(parse_err(line_no, format!("duplicate edge {u}-{v}")));
                }
                g.link(u - 1, v - 1);
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(line_no, format!("unknown line type {other:?}"))),
            None => unreachable!("blank lines skipped"),
        }
    }

    let (_, m) = header.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if edges.len() != m {
        return Err(parse_err(0, format!("problem line declares {m} edges, found {}", edges.len())));
    }
    Ok(graph.expect("header seen"))
}

fn parse_num(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let f = field.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    f.parse().map_err(|_| parse_err(line, format!("bad {what} {f:?}")))
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// `{"n": int, "edges": [[u, v], ...]}` with 0-indexed endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

pub fn read_graph_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text)?;
    check_size(j.n, 0)?;
    j.try_into()
}

pub fn write_graph_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph json serializes")
}

/// Picks the reader from content: JSON objects start with `{`.
pub fn read_graph_auto(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        read_graph_json(text)
    } else {
        read_dimacs(text)
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn oversized_inputs_are_refused() {
        assert!(super::read_dimacs("p edge 1000000000 0").is_err());
        assert!(super::read_graph_json(r#"{"n": 1000000000, "edges": []}"#).is_err());
    }

    use super::*;

    #[test]
    fn dimacs_reads_one_indexed() {
        let g = read_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
    }

    #[test]
    fn dimacs_rejects_duplicates_and_loops() {
        let dup = read_dimacs("p edge 3 2\ne 1 2\ne 2 1\n");
        assert!(matches!(dup, Err(Error::Parse { line: 3, .. })));
        let lp = read_dimacs("p edge 3 1\ne 2 2\n");
        assert!(matches!(lp, Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn dimacs_rejects_malformed() {
        for bad in [
            "",
            "e 1 2\n",
            "p edge 2 1\ne 1 3\n",
            "p edge 2 1\ne 0 1\n",
            "p edge 2 2\ne 1 2\n",
            "p edge x 0\n",
            "p edge 2 0\np edge 2 0\n",
            "p foo 2 0\n",
            "q\n",
        ] {
            assert!(read_dimacs(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::new(5, [(0, 4), (1, 2), (3, 4)]).unwrap();
        assert_eq!(read_dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn json_graph() {
        let g = read_graph_json(r#"{"n": 4, "edges": [[0,1],[2,3]]}"#).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(read_graph_json(&write_graph_json(&g)).unwrap(), g);
        assert!(read_graph_json(r#"{"n": 2, "edges": [[0,0]]}"#).is_err());
        assert!(read_graph_json(r#"{"n": 2, "edges": [[0,1],[1,0]]}"#).is_err());
        assert!(read_graph_auto("p edge 1 0\n").is_ok());
    }
}
