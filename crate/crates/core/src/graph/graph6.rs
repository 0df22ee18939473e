//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), …`,
//! packed big-endian into 6-bit groups, each offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const MAX_SHORT: usize = 62;
const MAX_MEDIUM: usize = 258_047;
const MAX_LONG: usize = 68_719_476_735;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= MAX_SHORT {
        out.push(n as u8 + BIAS);
    } else if n <= MAX_MEDIUM {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        assert!(n <= MAX_LONG, "graph too large for graph6");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn sextet(b: u8) -> Result<u64> {
    if !(63..=126).contains(&b) {
        return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
    }
    Ok(u64::from(b - BIAS))
}

fn read_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let first = *bytes.first().ok_or_else(|| Error::Graph6("empty input".into()))?;
    if first != 126 {
        return Ok((sextet(first)? as usize, &bytes[1..]));
    }
    let (len, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    if bytes.len() < start + len {
        return Err(Error::Graph6("truncated size header".into()));
    }
    let mut n = 0u64;
    for &b in &bytes[start..start + len] {
        n = (n << 6) | sextet(b)?;
    }
    Ok((n as usize, &bytes[start + len..]))
}

/// Decodes one graph6 string (no trailing newline).
pub fn graph6_decode(bytes: &[u8]) -> Result<Graph> {
    match bytes.first() {
        Some(b'&') => return Err(Error::Graph6("digraph6 input is not supported".into())),
        Some(b':') | Some(b';') => {
            return Err(Error::Graph6("sparse6 input is not supported".into()))
        }
        _ => {}
    }
    let (n, body) = read_size(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    let mut groups = body.iter();
    let mut cur = 0u64;
    let mut left = 0;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                cur = sextet(*groups.next().expect("length checked"))?;
                left = 6;
            }
            left -= 1;
            if cur >> left & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    debug_assert_eq!(k, nbits);
    if left > 0 && cur & ((1 << left) - 1) != 0 {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_encoded_examples() {
        assert_eq!(graph6_encode(&Graph::complete(3)), "Bw");
        assert_eq!(graph6_encode(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(graph6_encode(&Graph::empty(0)), "?");
        assert_eq!(graph6_encode(&Graph::empty(1)), "@");
        // petgraph's reference value: edges ac, ae, bd, de on 5 vertices
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(graph6_encode(&g), "DQc");
    }

    #[test]
    fn decodes_examples() {
        assert_eq!(graph6_decode(b"Bw").unwrap(), Graph::complete(3));
        assert_eq!(graph6_decode(b"Bg").unwrap(), Graph::path(3).unwrap());
    }

    #[test]
    fn long_headers_round_trip() {
        for n in [62, 63, 100] {
            let g = Graph::cycle(n).unwrap();
            let s = graph6_encode(&g);
            if n > 62 {
                assert!(s.starts_with('~'));
            }
            assert_eq!(graph6_decode(s.as_bytes()).unwrap(), g);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(graph6_decode(b"").is_err());
        assert!(graph6_decode(b"B").is_err());
        assert!(graph6_decode(b"Bww").is_err());
        assert!(graph6_decode(b"B\x7f").is_err());
        assert!(graph6_decode(b"B ").is_err());
        // K_3 with a stray padding bit
        assert!(graph6_decode(b"Bx").is_err());
        assert!(graph6_decode(b"&Bw").is_err());
        assert!(graph6_decode(b":Bw").is_err());
        assert!(graph6_decode(b"~?").is_err());
    }
}
