//! Text graph formats: DIMACS `col` and plain edge lists.
//!
//! Both parsers return 0-based graphs. Errors carry the 1-based line number
//! where they were detected.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_id(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} `{token}`"),
    })
}

fn checked_edge(u: usize, v: usize, n: usize, line: usize) -> Result<(usize, usize)> {
    for id in [u, v] {
        if id >= n {
            return Err(Error::VertexOutOfRange { id, n }.at_line(line));
        }
    }
    if u == v {
        return Err(Error::Parse {
            line,
            message: format!("self-loop on vertex {u}"),
        });
    }
    Ok((u, v))
}

/// Parses the DIMACS `col` format: `c` comment lines, one `p edge N M`
/// header, then `e U V` lines with 1-based ids. The edge count `M` is not
/// enforced since repeated edges are legal and collapse.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "duplicate problem line".into(),
                    });
                }
                match tokens.next() {
                    Some("edge" | "col") => {}
                    other => {
                        return Err(Error::Parse {
                            line,
                            message: format!(
                                "malformed header: expected `p edge N M`, found format `{}`",
                                other.unwrap_or("")
                            ),
                        })
                    }
                }
                n = Some(parse_id(tokens.next(), line, "vertex count")?);
                parse_id(tokens.next(), line, "edge count")?;
            }
            Some("e") => {
                let Some(n) = n else {
                    return Err(Error::Parse {
                        line,
                        message: "edge before `p edge` header".into(),
                    });
                };
                let u = parse_id(tokens.next(), line, "endpoint")?;
                let v = parse_id(tokens.next(), line, "endpoint")?;
                if u == 0 || v == 0 {
                    return Err(Error::Parse {
                        line,
                        message: "DIMACS vertex ids are 1-based".into(),
                    });
                }
                edges.push(checked_edge(u - 1, v - 1, n, line)?);
            }
            Some(other) => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown line type `{other}`"),
                })
            }
        }
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "trailing tokens".into(),
            });
        }
    }
    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `p edge N M` header".into(),
    })?;
    Graph::from_edge_list(n, edges)
}

/// Parses a whitespace-separated edge list, one `U V` pair per line. Blank
/// lines and lines starting with `#` are skipped. The vertex count is the
/// largest id seen (plus one when ids are 0-based).
pub fn parse_edge_list(text: &str, one_based: bool) -> Result<Graph> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut u = parse_id(tokens.next(), line, "endpoint")?;
        let mut v = parse_id(tokens.next(), line, "endpoint")?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "expected exactly two ids".into(),
            });
        }
        if one_based {
            if u == 0 || v == 0 {
                return Err(Error::Parse {
                    line,
                    message: "id 0 in a one-based edge list".into(),
                });
            }
            u -= 1;
            v -= 1;
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop on vertex {u}"),
            });
        }
        pairs.push((u, v, line));
    }
    let n = pairs.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let edges = pairs
        .into_iter()
        .map(|(u, v, line)| checked_edge(u, v, n, line))
        .collect::<Result<Vec<_>>>()?;
    Graph::from_edge_list(n, edges)
}

/// Renders a graph in DIMACS `col` format.
pub fn write_dimacs(graph: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", graph.n(), graph.edge_count());
    for (u, v) in graph.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
