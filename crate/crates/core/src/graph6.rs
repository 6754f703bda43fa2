//! graph6 codec (McKay's format, as produced by nauty's `geng`).
//!
//! The upper triangle of the adjacency matrix is read column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six bits per byte
//! big-endian, zero padded, and offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the order accepted by [`from_graph6`].
pub const DEFAULT_MAX_ORDER: usize = 64;

const BIAS: u8 = 63;
const OPTIONAL_HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    from_graph6_with_limit(text, DEFAULT_MAX_ORDER)
}

/// Decodes one graph6 line; orders above `max_order` are rejected.
pub fn from_graph6_with_limit(text: &str, max_order: usize) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match text.strip_prefix(OPTIONAL_HEADER) {
        Some(rest) => (OPTIONAL_HEADER.len(), rest.as_bytes()),
        None => (0, text.as_bytes()),
    };
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(parse_err(
            skip + pos,
            format!("byte {:#04x} outside the graph6 range 63..=126", body[pos]),
        ));
    }
    let digit = |i: usize| (body[i] - BIAS) as usize;

    let (order, start) = match body {
        [] => return Err(parse_err(skip, "empty input")),
        [b'~', b'~', ..] => {
            if body.len() < 8 {
                return Err(parse_err(skip + body.len(), "truncated 8-byte order prefix"));
            }
            ((2..8).fold(0, |n, i| (n << 6) | digit(i)), 8)
        }
        [b'~', ..] => {
            if body.len() < 4 {
                return Err(parse_err(skip + body.len(), "truncated 4-byte order prefix"));
            }
            ((1..4).fold(0, |n, i| (n << 6) | digit(i)), 4)
        }
        _ => (digit(0), 1),
    };
    if order > max_order {
        return Err(parse_err(
            skip,
            format!("order {order} exceeds the limit of {max_order}"),
        ));
    }

    let bits = order * order.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[start..];
    if data.len() != expected {
        let offset = skip + start + data.len().min(expected);
        return Err(parse_err(
            offset,
            format!(
                "expected {expected} data bytes for order {order}, found {}",
                data.len()
            ),
        ));
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(skip + start + expected - 1, "nonzero padding bits"));
        }
    }

    let mut g = Graph::empty(order);
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            let byte = data[k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.insert_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes `g` in graph6. Labels are not part of the format and are dropped.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::with_capacity(8 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(b'~');
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + BIAS));
    } else {
        out.extend(*b"~~");
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + BIAS));
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
