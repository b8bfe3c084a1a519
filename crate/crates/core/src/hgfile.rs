//! The `.hg` text format.
//!
//! ```text
//! # optional comments
//! 3 7          <- r n
//! 1 2 4        <- one edge per line, r whitespace-separated 1-based labels
//! ```
//!
//! Edges are sorted and deduplicated on read. Weight files hold one decimal
//! per line and are renormalized when their sum is within 1e-6 of one.

use crate::error::{Error, Result};
use crate::graph::{RGraph, Vertex};
use crate::lagrangian::SimplexVector;

pub const WEIGHT_SUM_SLACK: f64 = 1e-6;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, got `{tok}`"),
    })
}

pub fn parse_hg(text: &str) -> Result<RGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `r n` header".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header must be `r n`, got `{header}`"),
        });
    }
    let r = parse_usize(hl, toks[0])?;
    let n = parse_usize(hl, toks[1])?;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    for (ln, l) in lines {
        let e = l
            .split_whitespace()
            .map(|t| parse_usize(ln, t))
            .collect::<Result<Vec<_>>>()?;
        if e.len() != r {
            return Err(Error::Parse {
                line: ln,
                msg: format!("edge has {} vertices, expected {r}", e.len()),
            });
        }
        RGraph::new(n, r, [&e]).map_err(|err| Error::Parse {
            line: ln,
            msg: err.to_string(),
        })?;
        edges.push(e);
    }
    RGraph::new(n, r, edges).map_err(|err| Error::Parse {
        line: hl,
        msg: err.to_string(),
    })
}

pub fn write_hg(g: &RGraph) -> String {
    let mut s = format!("{} {}\n", g.r(), g.n());
    for e in g.edges() {
        let vs: Vec<String> = e.vertices().map(|v| v.to_string()).collect();
        s.push_str(&vs.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_weights(text: &str) -> Result<SimplexVector> {
    let mut xs = Vec::new();
    for (ln, l) in content_lines(text) {
        let x: f64 = l.parse().map_err(|_| Error::Parse {
            line: ln,
            msg: format!("expected a decimal weight, got `{l}`"),
        })?;
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Parse {
                line: ln,
                msg: format!("weight {x} is not a finite non-negative number"),
            });
        }
        xs.push(x);
    }
    let sum: f64 = xs.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_SLACK {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {sum}, more than {WEIGHT_SUM_SLACK} away from 1"
        )));
    }
    SimplexVector::normalized(xs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_dedup() {
        let g = parse_hg("# fano-ish\n3 5\n\n3 2 1\n1 2 3\n1 4 5\n").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edge_tuples(), vec![vec![1, 2, 3], vec![1, 4, 5]]);
        assert_eq!(parse_hg(&write_hg(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_arity_and_range() {
        assert!(matches!(
            parse_hg("3 5\n1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_hg("3 5\n1 2 6\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_hg("3 5\n1 1 2\n"), Err(Error::Parse { .. })));
        assert!(parse_hg("").is_err());
        assert!(parse_hg("3\n").is_err());
    }

    #[test]
    fn weights_normalize_within_slack() {
        let w = parse_weights("0.5\n0.2500004\n0.25\n").unwrap();
        assert!((w.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(parse_weights("0.5\n0.4\n").is_err());
        assert!(parse_weights("0.5\n-0.1\n0.6\n").is_err());
    }
}
