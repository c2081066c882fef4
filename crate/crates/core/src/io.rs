//! Text formats for the four structure kinds.
//!
//! ```text
//! graph       n m      then m lines `a b`      (undirected edges)
//! poset       n m      then m lines `a b`      (a is covered by b)
//! hypergraph  n m      then m lines `a b c`
//! metric      n        then n rows of n rationals (`p/q`, integers or exact decimals)
//! ```
//!
//! Points are 0-indexed. Blank lines and lines starting with `#` are skipped.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::betweenness::BetweennessRelation;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::MetricSpace;
use crate::poset::Poset;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn parse<T: FromStr>(&self, what: &str) -> Result<T> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected {what}, found `{}`", self.text)))
    }
}

/// Nonempty, non-comment lines split into tokens.
fn records(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            let toks = l
                .split_whitespace()
                .map(|w| Token {
                    text: w,
                    line: i + 1,
                    column: w.as_ptr() as usize - l.as_ptr() as usize + 1,
                })
                .collect();
            (i + 1, toks)
        })
        .collect()
}

fn eof_error(text: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line: text.lines().count() + 1,
        column: 1,
        message: message.into(),
    }
}

fn expect_fields<'a>(line: usize, toks: &'a [Token<'a>], count: usize) -> Result<&'a [Token<'a>]> {
    if toks.len() != count {
        let column = toks.get(count).map_or(1, |t| t.column);
        return Err(Error::Parse {
            line,
            column,
            message: format!("expected {count} fields, found {}", toks.len()),
        });
    }
    Ok(toks)
}

/// Point indices of one record, tagged with its source line.
type Record = (usize, Vec<usize>);

/// Header `n m` followed by exactly `m` records of `arity` point indices.
fn parse_index_list(text: &str, arity: usize) -> Result<(usize, Vec<Record>)> {
    let recs = records(text);
    let Some((hline, header)) = recs.first() else {
        return Err(eof_error(text, "missing header `n m`"));
    };
    let header = expect_fields(*hline, header, 2)?;
    let n: usize = header[0].parse("point count n")?;
    if n == 0 {
        return Err(header[0].error("point count must be at least 1"));
    }
    let m: usize = header[1].parse("record count m")?;
    let body = &recs[1..];
    if body.len() < m {
        return Err(eof_error(text, format!("expected {m} records, found {}", body.len())));
    }
    if let Some((line, toks)) = body.get(m) {
        return Err(Error::Parse {
            line: *line,
            column: toks[0].column,
            message: format!("unexpected record beyond the declared {m}"),
        });
    }
    let mut out = Vec::with_capacity(m);
    for (line, toks) in body {
        let toks = expect_fields(*line, toks, arity)?;
        let mut pts = Vec::with_capacity(arity);
        for t in toks {
            let p: usize = t.parse("point index")?;
            if p >= n {
                return Err(t.error(format!("point {p} out of range 0..{n}")));
            }
            pts.push(p);
        }
        out.push((*line, pts));
    }
    Ok((n, out))
}

fn at_line(line: usize, e: Error) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: e.to_string(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, recs) = parse_index_list(text, 2)?;
    let mut g = Graph::from_edges(n, &[])?;
    for (line, e) in recs {
        let (a, b) = (e[0], e[1]);
        if a == b {
            return Err(at_line(line, Error::InvalidEdge { a, b, reason: "self-loop" }));
        }
        if g.has_edge(a, b) {
            return Err(at_line(line, Error::InvalidEdge { a, b, reason: "duplicate edge" }));
        }
        g.add_edge_unchecked(a, b);
    }
    Ok(g)
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let (n, recs) = parse_index_list(text, 2)?;
    let covers: Vec<_> = recs.iter().map(|(_, p)| (p[0], p[1])).collect();
    Poset::from_cover_relations(n, &covers).map_err(|e| match e {
        Error::Cycle(x) => {
            let line = recs.iter().find(|(_, p)| p.contains(&x)).map_or(1, |r| r.0);
            at_line(line, Error::Cycle(x))
        }
        other => other,
    })
}

pub fn parse_hypergraph(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let (n, recs) = parse_index_list(text, 3)?;
    for (line, e) in &recs {
        if e[0] == e[1] || e[1] == e[2] || e[0] == e[2] {
            return Err(at_line(
                *line,
                Error::MalformedEdge { edge: e.clone(), reason: "repeated vertex" },
            ));
        }
    }
    Ok((n, recs.into_iter().map(|(_, e)| e).collect()))
}

pub fn parse_hypergraph_relation(text: &str) -> Result<BetweennessRelation> {
    let (n, edges) = parse_hypergraph(text)?;
    crate::betweenness::hypergraph_relation(n, &edges)
}

/// Parses `p/q`, an integer, or a finite decimal literal, exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        if !digits(q) {
            return None;
        }
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let optional_digits = |t: &str| t.is_empty() || digits(t);
    if int.is_empty() && frac.is_empty() || !optional_digits(int) || !optional_digits(frac) {
        return None;
    }
    let numer: BigInt = format!("{int}{frac}").parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let mut r = BigRational::new(numer, denom);
    if neg {
        r = -r;
    }
    Some(r)
}

pub fn parse_metric(text: &str) -> Result<MetricSpace> {
    let recs = records(text);
    let Some((hline, header)) = recs.first() else {
        return Err(eof_error(text, "missing header `n`"));
    };
    let header = expect_fields(*hline, header, 1)?;
    let n: usize = header[0].parse("point count n")?;
    if n == 0 {
        return Err(header[0].error("point count must be at least 1"));
    }
    let body = &recs[1..];
    if body.len() != n {
        return Err(match body.get(n) {
            Some((line, toks)) => Error::Parse {
                line: *line,
                column: toks[0].column,
                message: format!("unexpected row beyond the declared {n}"),
            },
            None => eof_error(text, format!("expected {n} rows, found {}", body.len())),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (line, toks) in body {
        let toks = expect_fields(*line, toks, n)?;
        let row = toks
            .iter()
            .map(|t| {
                parse_rational(t.text)
                    .ok_or_else(|| t.error(format!("expected an exact rational, found `{}`", t.text)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    MetricSpace::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_text() {
        let g = parse_graph("4 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        let err = parse_graph("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_graph("3 1\n0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("3 1\n0  x\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, column: 4, message: "expected point index, found `x`".into() });
        let err = parse_graph("3 1\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 1\n0 1\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 1\n0 1 2\n"), Err(Error::Parse { line: 2, column: 5, .. })));
    }

    #[test]
    fn poset_text() {
        let p = parse_poset("# y shape\n4 3\n0 1\n1 2\n3 2\n").unwrap();
        assert_eq!(p.height(), 3);
        assert!(matches!(parse_poset("2 2\n0 1\n1 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn hypergraph_text() {
        let rel = parse_hypergraph_relation("4 2\n0 1 2\n0 1 3\n").unwrap();
        assert!(rel.contains(2, 0, 3) || rel.contains(0, 2, 1));
        assert!(matches!(parse_hypergraph("4 1\n0 1 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn rationals() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(parse_rational("3"), Some(r(3, 1)));
        assert_eq!(parse_rational("2/6"), Some(r(1, 3)));
        assert_eq!(parse_rational("0.5"), Some(r(1, 2)));
        assert_eq!(parse_rational(".25"), Some(r(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(r(-3, 2)));
        for bad in ["1e3", "1/0", "inf", "NaN", "", ".", "1/-2", "0x10", "1.2.3"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn metric_text() {
        let m = parse_metric("3\n0 1 2\n1 0 1\n2 1 0\n").unwrap();
        assert_eq!(m.n(), 3);
        let err = parse_metric("2\n0 1e0\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(
            parse_metric("3\n0 1 5\n1 0 1\n5 1 0\n"),
            Err(Error::MetricViolation { .. })
        ));
    }
}
