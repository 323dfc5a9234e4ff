//! Line-oriented text format.
//!
//! ```text
//! # comment
//! node v1 1.0
//! node v2 0.5
//! edge v1 v2 3
//! ```

use std::fmt::Write as _;

use super::MultiGraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Splits a line into `(column, token)` pairs, dropping any `#` comment.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Applies one `node`/`edge` statement; returns `false` for any other keyword.
pub(crate) fn apply_statement<S: Scalar>(
    g: &mut MultiGraph<S>,
    line: usize,
    toks: &[(usize, &str)],
) -> Result<bool> {
    let Some(&(col, keyword)) = toks.first() else {
        return Ok(false);
    };
    let at = |col: usize, e: Error| match e {
        Error::Parse { .. } => e,
        other => parse_error(line, col, other.to_string()),
    };
    match keyword {
        "node" => {
            let [_, (c1, id), (c2, w)] = toks else {
                return Err(parse_error(line, col, "expected `node <id> <weight>`"));
            };
            let weight = S::parse_decimal(w)
                .ok_or_else(|| parse_error(line, *c2, format!("invalid weight `{w}`")))?;
            g.add_node(*id, weight).map_err(|e| at(*c1, e))?;
        }
        "edge" => {
            let (src, dst, mult) = match toks {
                [_, s, d] => (s, d, None),
                [_, s, d, m] => (s, d, Some(m)),
                _ => {
                    return Err(parse_error(
                        line,
                        col,
                        "expected `edge <src> <dst> [multiplicity]`",
                    ))
                }
            };
            let m =
                match mult {
                    None => 1,
                    Some(&(c, m)) => m.parse::<u64>().ok().filter(|&m| m > 0).ok_or_else(|| {
                        parse_error(line, c, format!("invalid multiplicity `{m}`"))
                    })?,
                };
            for &(c, id) in [src, dst] {
                if !g.contains(&id.into()) {
                    return Err(parse_error(line, c, format!("unknown node `{id}`")));
                }
            }
            g.add_edge(src.1, dst.1, m).map_err(|e| at(col, e))?;
        }
        _ => return Ok(false),
    }
    Ok(true)
}

pub fn parse_graph(text: &str) -> Result<MultiGraph<f64>> {
    parse_graph_as(text)
}

/// Parses into any scalar type; exact types read decimal weights exactly.
pub fn parse_graph_as<S: Scalar>(text: &str) -> Result<MultiGraph<S>> {
    let mut g = MultiGraph::new();
    for (i, line) in text.lines().enumerate() {
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if !apply_statement(&mut g, i + 1, &toks)? {
            return Err(parse_error(
                i + 1,
                toks[0].0,
                format!("unknown statement `{}`", toks[0].1),
            ));
        }
    }
    Ok(g)
}

pub fn format_graph<S: Scalar>(g: &MultiGraph<S>) -> String {
    let mut out = String::new();
    for (v, w) in g.weights() {
        let _ = writeln!(out, "node {v} {}", w.to_f64());
    }
    for (u, v, m) in g.edges() {
        if m == 1 {
            let _ = writeln!(out, "edge {u} {v}");
        } else {
            let _ = writeln!(out, "edge {u} {v} {m}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = "# demo\nnode a 1\nnode b 0.25  # trailing\n\nedge a b\nedge a b 2\nedge b b\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.multiplicity(&"a".into(), &"b".into()), 3);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_graph("node a 1\nedge a  zz\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 9,
                message: "unknown node `zz`".into()
            }
        );
        assert!(matches!(
            parse_graph("node a -1").unwrap_err(),
            Error::Parse {
                line: 1,
                column: 6,
                ..
            }
        ));
        assert!(matches!(
            parse_graph("node a x").unwrap_err(),
            Error::Parse { column: 8, .. }
        ));
        assert!(matches!(
            parse_graph("vertex a").unwrap_err(),
            Error::Parse { column: 1, .. }
        ));
        assert!(parse_graph("node a 1\nedge a a 0").is_err());
    }
}
