//! Edge-list parsing and degree extraction.
//!
//! The input format is line-oriented UTF-8 text. Each data line carries two
//! whitespace-separated node tokens; blank lines and lines whose first
//! non-blank character is `#` are ignored. Node tokens are opaque strings.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: expected 2 node tokens, found {found}")]
    Malformed { line: usize, found: usize },
    #[error("input contains no edges")]
    Empty,
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
}

/// A normalized undirected simple graph.
///
/// Nodes are interned to dense indices in order of first appearance. Edges
/// are stored as `(lo, hi)` index pairs with `lo < hi`, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    /// Edges as label pairs, in insertion order.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b)| (self.labels[a].as_str(), self.labels[b].as_str()))
    }

    /// Serializes back into the edge-list text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.labeled_edges() {
            out.push_str(a);
            out.push(' ');
            out.push_str(b);
            out.push('\n');
        }
        out
    }
}

/// Lines dropped during normalization.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DropCounts {
    pub duplicates: usize,
    pub self_loops: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedEdgeList {
    pub graph: EdgeList,
    pub dropped: DropCounts,
}

/// Parses an edge list from any buffered reader.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<ParsedEdgeList, IngestError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    let mut dropped = DropCounts::default();

    let mut intern = |token: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(token) {
            return i;
        }
        let i = labels.len();
        labels.push(token.to_owned());
        index.insert(token.to_owned(), i);
        i
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(IngestError::Malformed {
                line: lineno + 1,
                found: tokens.len(),
            });
        }
        if tokens[0] == tokens[1] {
            // Interning is deferred so a node seen only in a self-loop is not counted.
            dropped.self_loops += 1;
            continue;
        }
        let a = intern(tokens[0], &mut labels);
        let b = intern(tokens[1], &mut labels);
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            edges.push(key);
        } else {
            dropped.duplicates += 1;
        }
    }

    if edges.is_empty() {
        return Err(IngestError::Empty);
    }
    Ok(ParsedEdgeList {
        graph: EdgeList { labels, edges },
        dropped,
    })
}

pub fn parse_edge_list_str(text: &str) -> Result<ParsedEdgeList, IngestError> {
    parse_edge_list(text.as_bytes())
}

/// Per-node degrees of a graph; node identity is not retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<u64>);

impl DegreeSequence {
    /// Wraps raw degrees. Zero degrees are rejected; an empty sequence is
    /// allowed here and rejected by the table builders.
    pub fn new(degrees: Vec<u64>) -> Option<Self> {
        if degrees.contains(&0) {
            return None;
        }
        Some(DegreeSequence(degrees))
    }

    pub fn degrees(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Incident-edge count per node, in node-index order.
pub fn degree_sequence(graph: &EdgeList) -> DegreeSequence {
    let mut degrees = vec![0u64; graph.node_count()];
    for &(a, b) in graph.edges() {
        degrees[a] += 1;
        degrees[b] += 1;
    }
    DegreeSequence(degrees)
}
