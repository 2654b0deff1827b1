//! JSON input/output for digraphs and undirected graphs, plus the bundled
//! named inputs used by the verification suite.
//!
//! Digraph format: `{"n": 3, "edges": [[1, 2], [2, 3, 5]]}` with 1-based
//! vertex labels and an optional multiplicity as third entry (default 1).
//! Undirected format: `{"n": 4, "edges": [[1, 2], [2, 3]]}`.

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, SimpleGraph};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct DigraphFile {
    n: usize,
    edges: Vec<EdgeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum EdgeEntry {
    Weighted(usize, usize, u64),
    Plain(usize, usize),
}

/// Parse a digraph from JSON text. Loops and out-of-range labels are
/// rejected with the offending edge named; malformed JSON reports the
/// line/column from the parser.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let file: DigraphFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut g = Digraph::new(file.n)?;
    for (idx, entry) in file.edges.iter().enumerate() {
        let (tail, head, mult) = match *entry {
            EdgeEntry::Weighted(t, h, m) => (t, h, m),
            EdgeEntry::Plain(t, h) => (t, h, 1),
        };
        let context = |msg: String| Error::Parse(format!("edge {}: {}", idx + 1, msg));
        if mult == 0 {
            return Err(context("multiplicity must be >= 1".into()));
        }
        if tail == 0 || head == 0 || tail > file.n || head > file.n {
            return Err(context(format!(
                "({tail}, {head}) out of range 1..={}",
                file.n
            )));
        }
        if tail == head {
            return Err(context(format!("loop at vertex {tail}")));
        }
        g.add_edges(tail - 1, head - 1, mult)
            .map_err(|e| context(e.to_string()))?;
    }
    Ok(g)
}

/// Canonical JSON for a digraph: edges sorted by (tail, head), multiplicity
/// always written. Parsing this text reproduces the digraph exactly.
pub fn digraph_to_json(d: &Digraph) -> String {
    let edges: Vec<EdgeEntry> = d
        .edges()
        .into_iter()
        .map(|(t, h, m)| EdgeEntry::Weighted(t + 1, h + 1, m))
        .collect();
    serde_json::to_string(&DigraphFile { n: d.n(), edges }).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Parse an undirected simple graph from JSON text.
pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    for (idx, &(a, b)) in file.edges.iter().enumerate() {
        let context = |msg: String| Error::Parse(format!("edge {}: {}", idx + 1, msg));
        if a == 0 || b == 0 || a > file.n || b > file.n {
            return Err(context(format!("({a}, {b}) out of range 1..={}", file.n)));
        }
        if a == b {
            return Err(context(format!("loop at vertex {a}")));
        }
    }
    SimpleGraph::new(file.n, file.edges.iter().map(|&(a, b)| (a - 1, b - 1)))
}

pub fn graph_to_json(g: &SimpleGraph) -> String {
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    serde_json::to_string(&GraphFile { n: g.n, edges }).expect("serializable")
}

/// A bundled input addressed as `paper:<name>`.
#[derive(Debug, Clone)]
pub enum NamedInput {
    Digraph {
        digraph: Digraph,
        note: Option<&'static str>,
    },
    Graph(SimpleGraph),
}

pub const NAMED_INPUTS: &[&str] = &[
    "example1",
    "G1",
    "G2",
    "D1prime",
    "D2prime-printed",
    "D2prime-bidirected",
];

/// Look up a bundled input by name (with or without the `paper:` prefix).
pub fn named_input(name: &str) -> Option<NamedInput> {
    let name = name.strip_prefix("paper:").unwrap_or(name);
    let digraph = |n: usize, edges: &[(usize, usize, u64)]| {
        let mut g = Digraph::new(n).expect("n >= 1");
        for &(t, h, m) in edges {
            g.add_edges(t - 1, h - 1, m).expect("valid edge");
        }
        g
    };
    match name {
        "example1" => Some(NamedInput::Digraph {
            digraph: digraph(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1), (3, 2, 1)]),
            note: None,
        }),
        "G1" => Some(NamedInput::Graph(
            SimpleGraph::new(5, [(0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 3)])
                .expect("valid graph"),
        )),
        "G2" => Some(NamedInput::Graph(
            SimpleGraph::new(
                6,
                [
                    (0, 2),
                    (1, 3),
                    (2, 4),
                    (2, 3),
                    (2, 5),
                    (3, 4),
                    (3, 5),
                    (4, 5),
                ],
            )
            .expect("valid graph"),
        )),
        "D1prime" => Some(NamedInput::Digraph {
            digraph: digraph(
                5,
                &[
                    (1, 2, 1),
                    (1, 3, 1),
                    (1, 4, 1),
                    (2, 5, 1),
                    (3, 1, 1),
                    (4, 5, 1),
                    (5, 2, 1),
                    (5, 3, 1),
                    (5, 4, 1),
                ],
            ),
            note: None,
        }),
        "D2prime-printed" => Some(NamedInput::Digraph {
            digraph: d2prime(false),
            note: Some(
                "as bundled, vertices 1 and 2 have indegree zero, so the digraph is not \
                 strongly connected and the simplex cannot be reflexive; a variant with \
                 the bridges 1-3 and 2-4 bidirected is available as paper:D2prime-bidirected",
            ),
        }),
        "D2prime-bidirected" => Some(NamedInput::Digraph {
            digraph: d2prime(true),
            note: Some("variant of paper:D2prime-printed with the bridges 1-3 and 2-4 bidirected"),
        }),
        _ => None,
    }
}

fn d2prime(bidirect_bridges: bool) -> Digraph {
    let mut g = Digraph::new(6).expect("n >= 1");
    g.add_edges(0, 2, 1).expect("valid edge");
    g.add_edges(1, 3, 1).expect("valid edge");
    if bidirect_bridges {
        g.add_edges(2, 0, 1).expect("valid edge");
        g.add_edges(3, 1, 1).expect("valid edge");
    }
    for i in 2..6 {
        for j in 2..6 {
            if i != j {
                g.add_edges(i, j, 3).expect("valid edge");
            }
        }
    }
    g
}
