//! Plain-text edge lists.
//!
//! Unweighted: a header line `n m` followed by `m` lines `u v` (0-based,
//! ascending). Weighted: the same with `u v num den` lines.

use std::io::{BufRead, Write};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Rational, SimpleGraph, WeightedGraph};

pub fn write_edge_list<W: Write>(g: &SimpleGraph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_weighted_edge_list<W: Write>(g: &WeightedGraph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {} {}", w.numer(), w.denom())?;
    }
    Ok(())
}

pub fn edge_list_string(g: &SimpleGraph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Lines<R> {
    inner: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Lines<R> {
    /// Next non-blank line split into fields, with its 1-based line number.
    fn next_fields(&mut self) -> Result<Option<(usize, Vec<String>)>> {
        loop {
            self.buf.clear();
            if self.inner.read_line(&mut self.buf)? == 0 {
                return Ok(None);
            }
            self.line += 1;
            let fields: Vec<String> = self.buf.split_whitespace().map(str::to_owned).collect();
            if !fields.is_empty() {
                return Ok(Some((self.line, fields)));
            }
        }
    }
}

fn field<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, format!("bad {what} {s:?}")))
}

fn read_header<R: BufRead>(lines: &mut Lines<R>) -> Result<(usize, usize)> {
    let (line, f) = lines.next_fields()?.ok_or_else(|| parse_err(1, "missing header"))?;
    if f.len() != 2 {
        return Err(parse_err(line, "header must be `n m`"));
    }
    Ok((field(line, &f[0], "vertex count")?, field(line, &f[1], "edge count")?))
}

fn check_trailing<R: BufRead>(lines: &mut Lines<R>, m: usize) -> Result<()> {
    if let Some((line, _)) = lines.next_fields()? {
        return Err(parse_err(line, format!("more than the {m} edges announced in the header")));
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<SimpleGraph> {
    let mut lines = Lines { inner: input, line: 0, buf: String::new() };
    let (n, m) = read_header(&mut lines)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, f) = lines.next_fields()?.ok_or_else(|| parse_err(lines.line + 1, format!("expected {m} edges")))?;
        if f.len() != 2 {
            return Err(parse_err(line, "edge line must be `u v`"));
        }
        let u: usize = field(line, &f[0], "vertex")?;
        let v: usize = field(line, &f[1], "vertex")?;
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        edges.push((u, v));
    }
    check_trailing(&mut lines, m)?;
    SimpleGraph::new(n, edges)
}

pub fn read_weighted_edge_list<R: BufRead>(input: R) -> Result<WeightedGraph> {
    let mut lines = Lines { inner: input, line: 0, buf: String::new() };
    let (n, m) = read_header(&mut lines)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, f) = lines.next_fields()?.ok_or_else(|| parse_err(lines.line + 1, format!("expected {m} edges")))?;
        if f.len() != 4 {
            return Err(parse_err(line, "edge line must be `u v num den`"));
        }
        let u: usize = field(line, &f[0], "vertex")?;
        let v: usize = field(line, &f[1], "vertex")?;
        let num: i64 = field(line, &f[2], "numerator")?;
        let den: i64 = field(line, &f[3], "denominator")?;
        if den.is_zero() {
            return Err(parse_err(line, "zero denominator"));
        }
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        edges.push((u, v, Rational::new(num, den)));
    }
    check_trailing(&mut lines, m)?;
    WeightedGraph::from_edges(n, edges)
}
