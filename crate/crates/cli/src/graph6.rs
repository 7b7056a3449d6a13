//! graph6, short form only (`n <= 62`).
//!
//! A line is `N(n) R(x)`: one byte `n + 63`, then the upper triangle of the
//! adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! six bits per byte, most significant first, each byte offset by 63.

use spectral_turan::Hypergraph;

use crate::error::{CliError, CliResult};

pub const MAX_N: usize = 62;
const HEADER: &str = ">>graph6<<";

fn err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Graph6 {
        line,
        message: message.into(),
    }
}

fn decode_line(bytes: &[u8], line: usize) -> CliResult<Hypergraph> {
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(line, format!("byte {b} outside 63..=126")));
    }
    let Some((&first, body)) = bytes.split_first() else {
        return Err(err(line, "empty line"));
    };
    let n = usize::from(first - 63);
    if n > MAX_N {
        return Err(err(line, "long-form graph6 (n > 62) is not supported"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(err(
            line,
            format!("{} data bytes for n = {n}, expected {expected}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push([i, j]);
            }
            k += 1;
        }
    }
    Hypergraph::new(n, 2, edges).map_err(|e| err(line, e.to_string()))
}

/// Decodes one graph per nonempty line; an optional `>>graph6<<` header is skipped.
pub fn parse_graph6(bytes: &[u8]) -> CliResult<Vec<Hypergraph>> {
    let mut out = Vec::new();
    for (i, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let mut line = raw.strip_suffix(b"\r").unwrap_or(raw);
        if i == 0 {
            line = line.strip_prefix(HEADER.as_bytes()).unwrap_or(line);
        }
        if line.is_empty() {
            continue;
        }
        out.push(decode_line(line, i + 1)?);
    }
    Ok(out)
}

pub fn encode_graph6(g: &Hypergraph) -> CliResult<String> {
    if g.r() != 2 {
        return Err(CliError::Core(spectral_turan::Error::NotAGraph(g.r())));
    }
    let n = g.n();
    if n > MAX_N {
        return Err(CliError::Usage(format!("graph6 short form needs n <= {MAX_N}")));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.contains_edge(&[i, j]));
        }
    }
    let mut out = String::with_capacity(1 + bits.len().div_ceil(6));
    out.push(char::from(n as u8 + 63));
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            v |= u8::from(b) << (5 - k);
        }
        out.push(char::from(v + 63));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectral_turan::hypergraph::{complete_graph, cycle_graph, petersen_graph};
    use spectral_turan::embeddings::is_isomorphic;

    #[test]
    fn examples() {
        assert_eq!(parse_graph6(b"A_").unwrap(), vec![complete_graph(2)]);
        let c5 = &parse_graph6(b"Dhc\n").unwrap()[0];
        assert_eq!(c5.edge_count(), 5);
        assert!(is_isomorphic(c5, &cycle_graph(5).unwrap()));
        let empty = &parse_graph6(b"B?").unwrap()[0];
        assert_eq!((empty.n(), empty.edge_count()), (3, 0));
        let p = &parse_graph6(b">>graph6<<IheA@GUAo\r\n").unwrap()[0];
        assert!(is_isomorphic(p, &petersen_graph()));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_graph6(b"A"), Err(CliError::Graph6 { line: 1, .. })));
        assert!(matches!(parse_graph6(b"A_\nA__"), Err(CliError::Graph6 { line: 2, .. })));
        assert!(parse_graph6(b"A\x7f").is_err());
        assert!(parse_graph6(b"~?@A").is_err());
    }

    #[test]
    fn encode_round_trip() {
        for g in [complete_graph(7), cycle_graph(9).unwrap(), petersen_graph()] {
            let s = encode_graph6(&g).unwrap();
            assert_eq!(parse_graph6(s.as_bytes()).unwrap()[0], g);
        }
        assert_eq!(encode_graph6(&complete_graph(2)).unwrap(), "A_");
    }
}
