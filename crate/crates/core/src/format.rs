//! Graph ingestion: a plain edge-list text format and graph6.
//!
//! Edge lists are one `u v` pair per line with 0-based endpoints. An optional
//! first line `n <count>` fixes the vertex count (useful for isolated
//! vertices). Blank lines and `#` comments are skipped.
//!
//! graph6 follows the format published with nauty: a size prefix followed by
//! the upper triangle of the adjacency matrix, column by column, six bits per
//! printable byte (offset 63).

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_seen: Option<usize> = None;
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_int = |tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected a non-negative integer, found '{tok}'"),
            })
        };
        if tokens[0] == "n" {
            if seen_content {
                return Err(Error::Parse {
                    line: line_no,
                    message: "the 'n <count>' header must come first".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "header must be 'n <count>'".into(),
                });
            }
            header = Some(parse_int(tokens[1])?);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 'u v', found {} token(s)", tokens.len()),
            });
        }
        let u = parse_int(tokens[0])?;
        let v = parse_int(tokens[1])?;
        if u == v {
            return Err(Error::Validation(format!(
                "self-loop at vertex {u} (line {line_no})"
            )));
        }
        max_seen = Some(max_seen.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }

    let n = match (header, max_seen) {
        (Some(h), Some(m)) => h.max(m + 1),
        (Some(h), None) => h,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "edge list describes no vertices".into(),
        });
    }
    Graph::from_edges(n, edges, "edgelist")
}

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix(GRAPH6_HEADER).unwrap_or(trimmed);
    if body.contains('\n') {
        return Err(g6_error("expected exactly one graph"));
    }
    let bytes = body.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_error(&format!(
            "invalid byte 0x{:02x} at offset {pos}",
            bytes[pos]
        )));
    }
    let (n, rest) = decode_size(bytes)?;
    if n == 0 {
        return Err(Error::Validation("graph6 input has zero vertices".into()));
    }
    let bit_count = n * (n - 1) / 2;
    let needed = bit_count.div_ceil(6);
    if rest.len() < needed {
        return Err(g6_error(&format!(
            "truncated adjacency data: need {needed} bytes, found {}",
            rest.len()
        )));
    }
    if rest.len() > needed {
        return Err(g6_error("trailing bytes after adjacency data"));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    for pad in bit_count..needed * 6 {
        if bit(pad) {
            return Err(g6_error("non-zero padding bits"));
        }
    }
    Graph::from_edges(n, edges, "graph6")
}

fn g6_error(message: &str) -> Error {
    Error::Parse {
        line: 1,
        message: format!("graph6: {message}"),
    }
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let val = |b: u8| (b - 63) as usize;
    match bytes {
        [] => Err(g6_error("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(g6_error("truncated size prefix"));
            }
            let n = rest[..6].iter().fold(0, |acc, &b| (acc << 6) | val(b));
            Ok((n, &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_error("truncated size prefix"));
            }
            let n = rest[..3].iter().fold(0, |acc, &b| (acc << 6) | val(b));
            Ok((n, &rest[3..]))
        }
        [b, rest @ ..] => Ok((val(*b), rest)),
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
