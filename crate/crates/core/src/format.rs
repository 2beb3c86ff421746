//! Text formats: whitespace edge lists and graph6.
//!
//! graph6 follows the nauty definition: the order `N(n)` followed by the
//! upper triangle of the adjacency matrix in column order
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed big-endian into 6-bit groups
//! offset by 63. The `>>graph6<<` header is accepted on input and never
//! written.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("graph6: empty input")]
    EmptyGraph6,
    #[error("graph6: byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadGraph6Byte { byte: u8, offset: usize },
    #[error("graph6: sparse6/digraph6 input is not supported")]
    UnsupportedVariant,
    #[error("graph6: expected {expected} adjacency bytes for order {n}, found {found}")]
    Graph6Length {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge list line {line}: expected two vertex ids, got {found:?}")]
    EdgeListArity { line: usize, found: String },
    #[error("edge list line {line}: {token:?} is not a vertex id")]
    EdgeListToken { line: usize, token: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn encode_order(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
}

/// graph6 encoding without header or trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_order(n, &mut out);

    let bit_count = n * n.saturating_sub(1) / 2;
    let mut bits = vec![false; bit_count];
    for &(u, v) in g.edges() {
        // Column v (the larger endpoint) starts after v(v-1)/2 bits.
        bits[v * (v - 1) / 2 + u] = true;
    }
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for (i, &bit) in chunk.iter().enumerate() {
            if bit {
                value |= 1 << (5 - i);
            }
        }
        out.push((value + 63) as char);
    }
    out
}

/// Parses one graph6 record. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim();
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::EmptyGraph6);
    }
    if matches!(bytes[0], b':' | b'&') || text.starts_with(">>") {
        return Err(FormatError::UnsupportedVariant);
    }
    let mut values = Vec::with_capacity(bytes.len());
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(FormatError::BadGraph6Byte { byte, offset });
        }
        values.push((byte - 63) as usize);
    }

    let (n, body) = if values[0] != 63 {
        (values[0], &values[1..])
    } else if values.len() >= 2 && values[1] != 63 {
        if values.len() < 4 {
            return Err(FormatError::EmptyGraph6);
        }
        ((values[1] << 12) | (values[2] << 6) | values[3], &values[4..])
    } else {
        if values.len() < 8 {
            return Err(FormatError::EmptyGraph6);
        }
        let n = values[2..8].iter().fold(0usize, |acc, &x| (acc << 6) | x);
        (n, &values[8..])
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::Graph6Length {
            n,
            expected,
            found: body.len(),
        });
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if body[k / 6] & (1 << (5 - k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Parses a whitespace-separated edge list with 0-based vertex ids.
///
/// `#` starts a comment and blank lines are skipped. The order is the
/// largest id plus one, unless a `# order N` comment (as written by
/// [`write_edgelist`]) declares it, which keeps isolated vertices and the
/// single-vertex tree representable.
pub fn parse_edgelist(text: &str) -> Result<Graph, FormatError> {
    let mut edges = Vec::new();
    let mut declared_order = None;
    let mut max_id = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (content, comment) = match raw.split_once('#') {
            Some((content, comment)) => (content, Some(comment)),
            None => (raw, None),
        };
        if let Some(comment) = comment {
            let mut words = comment.split_whitespace();
            if let (Some("order"), Some(value), None) = (words.next(), words.next(), words.next()) {
                if let Ok(n) = value.parse::<usize>() {
                    declared_order = Some(n);
                }
            }
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            return Err(FormatError::EdgeListArity {
                line: line_no,
                found: content.trim().to_string(),
            });
        }
        let parse = |token: &str| {
            token.parse::<usize>().map_err(|_| FormatError::EdgeListToken {
                line: line_no,
                token: token.to_string(),
            })
        };
        let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let inferred = max_id.map_or(0, |m| m + 1);
    let n = declared_order.map_or(inferred, |d| d.max(inferred));
    Ok(Graph::new(n, &edges)?)
}

/// One `u v` line per edge, preceded by a `# order N` comment.
pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("# order {}\n", g.order());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
