//! graph6 codec.
//!
//! Standard format: size as `63 + n` for `n <= 62`, or `'~'` followed by
//! three characters carrying an 18-bit size; then the upper adjacency
//! triangle in column-major order ((0,1), (0,2), (1,2), (0,3), ...),
//! six bits per printable character offset by 63, zero-padded.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_ORDER: usize = 258_047;

/// Optional stream header emitted by common enumeration tools.
pub const STREAM_HEADER: &str = ">>graph6<<";

/// Strips the optional `>>graph6<<` prefix from a corpus line.
pub fn strip_header(line: &str) -> &str {
    line.strip_prefix(STREAM_HEADER).unwrap_or(line)
}

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(OFFSET + n as u8);
    } else if n <= MAX_ORDER {
        out.push(b'~');
        out.push(OFFSET + ((n >> 12) & 0x3f) as u8);
        out.push(OFFSET + ((n >> 6) & 0x3f) as u8);
        out.push(OFFSET + (n & 0x3f) as u8);
    } else {
        return Err(Error::Scale(format!(
            "graph6 encoding here is limited to {MAX_ORDER} vertices, got {n}"
        )));
    }
    let mut accumulator = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            accumulator <<= 1;
            if g.has_edge(i, j) {
                accumulator |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + accumulator);
                accumulator = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        accumulator <<= 6 - filled;
        out.push(OFFSET + accumulator);
    }
    Ok(String::from_utf8(out).expect("printable ascii"))
}

pub fn decode(line: &str) -> Result<Graph> {
    let bytes = line.as_bytes();
    let parse_err = |offset: usize, message: String| Error::Parse {
        line: None,
        offset: Some(offset),
        message,
    };
    if bytes.is_empty() {
        return Err(parse_err(0, "empty graph6 line".into()));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(parse_err(i, format!("byte {b} outside the graph6 range")));
        }
    }

    let (n, mut pos) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return Err(parse_err(
                1,
                "graphs beyond 258047 vertices are not supported".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(parse_err(bytes.len(), "truncated multi-byte size".into()));
        }
        let n = ((usize::from(bytes[1] - OFFSET)) << 12)
            | ((usize::from(bytes[2] - OFFSET)) << 6)
            | usize::from(bytes[3] - OFFSET);
        (n, 4)
    } else {
        (usize::from(bytes[0] - OFFSET), 1)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let expected_chars = bits.div_ceil(6);
    if bytes.len() - pos != expected_chars {
        return Err(parse_err(
            bytes.len().min(pos + expected_chars),
            format!(
                "bit section has {} characters, expected {expected_chars} for n = {n}",
                bytes.len() - pos
            ),
        ));
    }

    let mut edges = Vec::new();
    let mut chunk = 0u8;
    let mut available = 0u8;
    let mut i = 0usize;
    let mut j = 1usize;
    for _ in 0..bits {
        if available == 0 {
            chunk = bytes[pos] - OFFSET;
            pos += 1;
            available = 6;
        }
        if chunk & 0b10_0000 != 0 {
            edges.push((i, j));
        }
        chunk = (chunk << 1) & 0b11_1111;
        available -= 1;
        i += 1;
        if i == j {
            i = 0;
            j += 1;
        }
    }
    if available > 0 && chunk != 0 {
        return Err(parse_err(pos - 1, "nonzero padding bits".into()));
    }
    Graph::from_edge_list(n, &edges).map_err(|e| Error::Parse {
        line: None,
        offset: None,
        message: e.to_string(),
    })
}
