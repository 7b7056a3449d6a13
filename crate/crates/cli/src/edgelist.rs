//! Plain-text hypergraphs: a header line `n r`, then one edge per line as
//! `r` vertex labels in `1..=n`. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use spectral_turan::{Error, Hypergraph};

use crate::error::{CliError, CliResult};

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn numbers(line: &str, lineno: usize) -> CliResult<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| CliError::Parse {
                line: lineno,
                message: format!("expected a nonnegative integer, found {tok:?}"),
            })
        })
        .collect()
}

pub fn parse_edgelist(text: &str) -> CliResult<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip(l)))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(CliError::Parse {
        line: 1,
        message: "missing header \"n r\"".into(),
    })?;
    let hv = numbers(header, hline)?;
    let [n, r] = hv[..] else {
        return Err(CliError::Parse {
            line: hline,
            message: format!("header must be \"n r\", found {header:?}"),
        });
    };
    let mut graph = Hypergraph::empty(n, r).map_err(|e| CliError::Parse {
        line: hline,
        message: e.to_string(),
    })?;
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let labels = numbers(line, lineno)?;
        if labels.len() != r {
            return Err(CliError::Parse {
                line: lineno,
                message: format!("edge has {} vertices, expected {r}", labels.len()),
            });
        }
        let mut edge = Vec::with_capacity(r);
        for &v in &labels {
            if v == 0 || v > n {
                return Err(CliError::Parse {
                    line: lineno,
                    message: format!("vertex {v} outside 1..={n}"),
                });
            }
            edge.push(v - 1);
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if edges.contains(&sorted) {
            return Err(CliError::Parse {
                line: lineno,
                message: format!("duplicate edge {labels:?}"),
            });
        }
        graph = graph.with_edge(&edge).map_err(|e| CliError::Parse {
            line: lineno,
            message: match e {
                Error::RepeatedVertex { .. } => format!("repeated vertex in {labels:?}"),
                other => other.to_string(),
            },
        })?;
        edges.push(sorted);
    }
    Ok(graph)
}

/// Inverse of [`parse_edgelist`].
pub fn write_edgelist(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.r());
    for e in h.edges() {
        let labels: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectral_turan::hypergraph::{complete_graph, cycle_graph};

    #[test]
    fn examples() {
        assert_eq!(parse_edgelist("2 2\n1 2").unwrap(), complete_graph(2));
        let c5 = parse_edgelist("5 2\n1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
        assert_eq!(c5, cycle_graph(5).unwrap());
        let e = parse_edgelist("3 3\n1 2 3").unwrap();
        assert_eq!(e.edges(), &[vec![0, 1, 2]]);
        let with_comments = parse_edgelist("# pentagon\n5 2\n\n1 2 # first\n2 3\n3 4\n4 5\n5 1").unwrap();
        assert_eq!(with_comments, c5);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |s: &str| match parse_edgelist(s) {
            Err(CliError::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line(""), 1);
        assert_eq!(line("2"), 1);
        assert_eq!(line("2 x"), 1);
        assert_eq!(line("3 2\n1 2\n1 2 3"), 3);
        assert_eq!(line("3 2\n1 2\n2 1"), 3);
        assert_eq!(line("3 2\n\n1 4"), 3);
        assert_eq!(line("3 2\n1 1"), 2);
        assert_eq!(line("3 2\n0 1"), 2);
    }

    #[test]
    fn round_trip() {
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(parse_edgelist(&write_edgelist(&c5)).unwrap(), c5);
    }
}
