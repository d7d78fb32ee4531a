//! graph6 encoding of undirected simple graphs.
//!
//! Header: one byte `n + 63` for `n <= 62`, otherwise byte 126 followed by
//! `n` as an 18-bit big-endian value in three 6-bit groups (each `+ 63`).
//! Body: the upper triangle in column order `x(0,1), x(0,2), x(1,2),
//! x(0,3), ...`, six bits per byte, zero padded, each byte `+ 63`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::UGraph;

pub const MAX_VERTICES: usize = 258_047;
const SHORT_LIMIT: usize = 62;
const OPTIONAL_HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("{0} vertices exceed the supported maximum of 258047")]
    TooManyVertices(usize),
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    BadCharacter { offset: usize, byte: u8 },
    #[error("malformed size header")]
    BadHeader,
    #[error("non-canonical size header for {0} vertices")]
    NonCanonicalHeader(usize),
    #[error("body has {got} bytes, expected {expected}")]
    BodyLength { expected: usize, got: usize },
    #[error("padding bits in the last byte are not zero")]
    NonZeroPadding,
}

/// A validated graph6 string (without trailing newline).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph6String(String);

impl Graph6String {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Graph6String {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Graph6String {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph6String({:?})", self.0)
    }
}

impl FromStr for Graph6String {
    type Err = Graph6Error;

    /// Accepts exactly the strings `decode_graph6` accepts.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        decode_graph6(s)?;
        Ok(Graph6String(s.to_string()))
    }
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

fn size_header(n: usize) -> Result<Vec<u8>, Graph6Error> {
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }
    if n <= SHORT_LIMIT {
        Ok(vec![n as u8 + 63])
    } else {
        let mut h = vec![126];
        h.extend([12, 6, 0].map(|shift| ((n >> shift) & 0x3f) as u8 + 63));
        Ok(h)
    }
}

pub fn encode_graph6(g: &UGraph) -> Result<Graph6String, Graph6Error> {
    let n = g.vertex_count();
    let mut out = size_header(n)?;
    out.reserve(body_len(n));
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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
    Ok(Graph6String(
        String::from_utf8(out).expect("graph6 bytes are ASCII"),
    ))
}

/// Strict decoder: rejects characters outside `63..=126`, non-canonical
/// headers, wrong body length and non-zero padding. An optional leading
/// `>>graph6<<` marker is accepted.
pub fn decode_graph6(text: &str) -> Result<UGraph, Graph6Error> {
    let raw = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = raw.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let base = text.len() - raw.len();
    let mut values = Vec::with_capacity(bytes.len());
    for (k, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadCharacter {
                offset: base + k,
                byte: b,
            });
        }
        values.push(b - 63);
    }

    let (n, body) = if values[0] < 63 {
        (values[0] as usize, &values[1..])
    } else {
        if values.len() < 4 || values[1] == 63 {
            // 126 126 introduces the 36-bit form, which is unsupported
            return Err(Graph6Error::BadHeader);
        }
        let n = values[1..4]
            .iter()
            .fold(0usize, |acc, &v| acc << 6 | v as usize);
        if n <= SHORT_LIMIT {
            return Err(Graph6Error::NonCanonicalHeader(n));
        }
        (n, &values[4..])
    };

    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::BodyLength {
            expected,
            got: body.len(),
        });
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let pad = expected * 6 - total_bits;
    if pad > 0 && body[expected - 1] & ((1u8 << pad) - 1) != 0 {
        return Err(Graph6Error::NonZeroPadding);
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6];
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Ok(UGraph::from_edges(n, edges).expect("decoded edges are distinct and in range"))
}
