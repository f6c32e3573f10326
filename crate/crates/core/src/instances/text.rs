//! Line-based text formats. Every format starts with a header line naming
//! the kind of object, followed by one record per line. `#` starts a
//! comment anywhere on a line; blank lines are ignored.
//!
//! ```text
//! digraph <n>            graph <n>              (edges: e <u> <v>)
//! genic <n> <m>          rcv <j> <r> : <i1> <i2> ...
//! cover <n> <k>          c <v1> <v2> ...
//! code <n> <k>           x <v1> <v2> ...
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::coding::{GenInstance, IndexCode};
use crate::graph::{CliqueCover, Digraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError { line, reason: reason.into() }
    }
}

/// Any object readable from the text formats, tagged by its header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Digraph(Digraph),
    Instance(GenInstance),
    Cover(CliqueCover),
    Code(IndexCode),
}

struct Line<'a> {
    no: usize,
    words: Vec<&'a str>,
}

impl<'a> Line<'a> {
    fn num<T: FromStr>(&self, i: usize, what: &str) -> Result<T, ParseError> {
        let w = self
            .words
            .get(i)
            .ok_or_else(|| ParseError::new(self.no, format!("missing {what}")))?;
        w.parse()
            .map_err(|_| ParseError::new(self.no, format!("invalid {what} `{w}`")))
    }

    fn nums(&self, from: usize) -> Result<Vec<usize>, ParseError> {
        (from..self.words.len()).map(|i| self.num(i, "vertex")).collect()
    }

    fn expect_len(&self, len: usize) -> Result<(), ParseError> {
        if self.words.len() == len {
            Ok(())
        } else {
            Err(ParseError::new(
                self.no,
                format!("expected {len} fields, found {}", self.words.len()),
            ))
        }
    }

    fn expect_tag(&self, tag: &str) -> Result<(), ParseError> {
        if self.words[0] == tag {
            Ok(())
        } else {
            Err(ParseError::new(self.no, format!("expected `{tag}` record, found `{}`", self.words[0])))
        }
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some(Line { no: i + 1, words })
    })
}

fn header<'a>(it: &mut impl Iterator<Item = Line<'a>>) -> Result<Line<'a>, ParseError> {
    it.next().ok_or_else(|| ParseError::new(0, "empty input"))
}

/// Reads exactly `k` records after `head`, failing on too few or too many.
fn records<'a>(
    head: &Line<'a>,
    rest: impl Iterator<Item = Line<'a>>,
    k: usize,
) -> Result<Vec<Line<'a>>, ParseError> {
    let body: Vec<Line<'a>> = rest.collect();
    if body.len() > k {
        return Err(ParseError::new(body[k].no, format!("header announced {k} records")));
    }
    if body.len() < k {
        return Err(ParseError::new(
            head.no,
            format!("header announced {k} records, found {}", body.len()),
        ));
    }
    Ok(body)
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    digraph_body(head, it)
}

fn digraph_body<'a>(head: Line<'a>, it: impl Iterator<Item = Line<'a>>) -> Result<Digraph, ParseError> {
    let symmetric = match head.words[0] {
        "digraph" => false,
        "graph" => true,
        other => return Err(ParseError::new(head.no, format!("expected `digraph` or `graph`, found `{other}`"))),
    };
    head.expect_len(2)?;
    let n: usize = head.num(1, "vertex count")?;
    let mut g = Digraph::empty(n);
    for line in it {
        line.expect_tag("e")?;
        line.expect_len(3)?;
        let u: usize = line.num(1, "vertex")?;
        let v: usize = line.num(2, "vertex")?;
        let added = if symmetric { g.add_undirected_edge(u, v) } else { g.add_edge(u, v) };
        added.map_err(|e| ParseError::new(line.no, e.to_string()))?;
    }
    Ok(g)
}

pub fn parse_instance(text: &str) -> Result<GenInstance, ParseError> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    instance_body(head, it)
}

fn instance_body<'a>(head: Line<'a>, it: impl Iterator<Item = Line<'a>>) -> Result<GenInstance, ParseError> {
    head.expect_tag("genic")?;
    head.expect_len(3)?;
    let n: usize = head.num(1, "symbol count")?;
    let m: usize = head.num(2, "receiver count")?;
    if m < n {
        return Err(ParseError::new(head.no, format!("need m >= n, got n = {n}, m = {m}")));
    }
    let body = records(&head, it, m)?;
    let mut req = Vec::with_capacity(m);
    let mut side = Vec::with_capacity(m);
    for (j, line) in body.iter().enumerate() {
        line.expect_tag("rcv")?;
        if line.words.get(3) != Some(&":") {
            return Err(ParseError::new(line.no, "expected `rcv <j> <r> : ...`"));
        }
        let idx: usize = line.num(1, "receiver index")?;
        if idx != j {
            return Err(ParseError::new(line.no, format!("expected receiver {j}, found {idx}")));
        }
        req.push(line.num(2, "required symbol")?);
        side.push(line.nums(4)?);
    }
    GenInstance::new(n, req, side).map_err(|e| {
        // Point at the offending receiver when there is one.
        let at = match &e {
            crate::coding::CodingError::SymbolOutOfRange { receiver, .. }
            | crate::coding::CodingError::DuplicateSide { receiver, .. } => body[*receiver].no,
            crate::coding::CodingError::RequiredInSide(j) => body[*j].no,
            _ => head.no,
        };
        ParseError::new(at, e.to_string())
    })
}

pub fn parse_cover(text: &str) -> Result<CliqueCover, ParseError> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    cover_body(head, it)
}

fn sets<'a>(
    head: &Line<'a>,
    it: impl Iterator<Item = Line<'a>>,
    tag: &str,
) -> Result<(usize, Vec<VertexSet>), ParseError> {
    head.expect_len(3)?;
    let n: usize = head.num(1, "vertex count")?;
    let k: usize = head.num(2, "set count")?;
    let body = records(head, it, k)?;
    let mut out = Vec::with_capacity(k);
    for line in &body {
        line.expect_tag(tag)?;
        let set = VertexSet::for_graph(line.nums(1)?, n)
            .map_err(|e| ParseError::new(line.no, e.to_string()))?;
        if set.is_empty() {
            return Err(ParseError::new(line.no, "empty set"));
        }
        out.push(set);
    }
    Ok((n, out))
}

fn cover_body<'a>(head: Line<'a>, it: impl Iterator<Item = Line<'a>>) -> Result<CliqueCover, ParseError> {
    head.expect_tag("cover")?;
    let (n, cliques) = sets(&head, it, "c")?;
    CliqueCover::new(n, cliques).map_err(|e| ParseError::new(head.no, e.to_string()))
}

pub fn parse_code(text: &str) -> Result<IndexCode, ParseError> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    code_body(head, it)
}

fn code_body<'a>(head: Line<'a>, it: impl Iterator<Item = Line<'a>>) -> Result<IndexCode, ParseError> {
    head.expect_tag("code")?;
    let (n, xor_sets) = sets(&head, it, "x")?;
    IndexCode::new(n, xor_sets).map_err(|e| ParseError::new(head.no, e.to_string()))
}

/// Parses whichever format the header names.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    match head.words[0] {
        "digraph" | "graph" => digraph_body(head, it).map(Document::Digraph),
        "genic" => instance_body(head, it).map(Document::Instance),
        "cover" => cover_body(head, it).map(Document::Cover),
        "code" => code_body(head, it).map(Document::Code),
        other => Err(ParseError::new(head.no, format!("unknown header `{other}`"))),
    }
}

fn push_set(out: &mut String, tag: &str, s: &VertexSet) {
    out.push_str(tag);
    for v in s.iter() {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

/// Symmetric digraphs are written as `graph` with each edge once (`u < v`).
pub fn write_digraph(g: &Digraph) -> String {
    let mut out = String::new();
    let symmetric = g.is_symmetric();
    let _ = writeln!(out, "{} {}", if symmetric { "graph" } else { "digraph" }, g.n());
    for (u, v) in g.edges() {
        if !symmetric || u < v {
            let _ = writeln!(out, "e {u} {v}");
        }
    }
    out
}

pub fn write_instance(inst: &GenInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "genic {} {}", inst.n(), inst.m());
    for j in 0..inst.m() {
        let _ = write!(out, "rcv {j} {} :", inst.required(j));
        for i in inst.side(j).iter() {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}

pub fn write_cover(cover: &CliqueCover) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cover {} {}", cover.n(), cover.len());
    for c in cover.cliques() {
        push_set(&mut out, "c", c);
    }
    out
}

pub fn write_code(code: &IndexCode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "code {} {}", code.n(), code.len());
    for s in code.xor_sets() {
        push_set(&mut out, "x", s);
    }
    out
}
