//! Text formats for graphs, vertex sets, and arc sets.
//!
//! All files share the same conventions: ids are 1-based, lines whose first
//! non-blank character is `#` are comments, and blank lines are ignored.
//!
//! Graph files carry a header line `<n> <m>` followed by exactly m lines
//! `<tail> <head>`; duplicate lines encode parallel arcs and `u u` encodes a
//! self-loop. Vertex-set files list ids separated by whitespace. Arc-set
//! files carry one `<tail> <head> <occurrence>` triple per line, where the
//! occurrence index counts parallel copies of the same ordered pair in input
//! order, starting at 1.

use dfvs::{ArcId, ArcSet, DiGraph, VertexId, VertexSet};
use std::fmt;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Lines that carry data: (1-based line number, text), comments and blank
/// lines dropped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

fn parse_count(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| err(line, format!("invalid {what} '{token}'")))
}

fn parse_vertex(line: usize, token: &str, n: usize) -> Result<VertexId, ParseError> {
    let id = parse_count(line, token, "vertex id")?;
    if id == 0 || id > n {
        return Err(err(line, format!("vertex id {id} out of range [1, {n}]")));
    }
    Ok(VertexId::new(id - 1))
}

const MAX_FILE_DIMENSION: usize = 50_000_000;

pub fn parse_edge_list(text: &str) -> Result<DiGraph, ParseError> {
    let mut lines = data_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing header line '<n> <m>'"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(err(header_no, "expected header '<n> <m>'"));
    }
    let n = parse_count(header_no, tokens[0], "vertex count")?;
    let m = parse_count(header_no, tokens[1], "arc count")?;
    if n > MAX_FILE_DIMENSION || m > MAX_FILE_DIMENSION {
        return Err(err(header_no, "graph dimensions too large"));
    }

    let mut arcs = Vec::with_capacity(m);
    let mut last_line = header_no;
    for (line_no, line) in lines {
        if arcs.len() == m {
            return Err(err(line_no, format!("unexpected data line after {m} arcs")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(err(line_no, "expected an arc line '<tail> <head>'"));
        }
        let tail = parse_vertex(line_no, tokens[0], n)?;
        let head = parse_vertex(line_no, tokens[1], n)?;
        arcs.push((tail.index(), head.index()));
        last_line = line_no;
    }
    if arcs.len() < m {
        return Err(err(
            last_line,
            format!("expected {m} arc lines, found {}", arcs.len()),
        ));
    }
    Ok(DiGraph::new(n, &arcs).expect("ids were range-checked"))
}

pub fn serialize_edge_list(g: &DiGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.arc_count());
    for a in g.arc_ids() {
        let (t, h) = g.arc(a);
        let _ = writeln!(out, "{} {}", t.index() + 1, h.index() + 1);
    }
    out
}

pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet, ParseError> {
    let mut set = VertexSet::new(n);
    for (line_no, line) in data_lines(text) {
        for token in line.split_whitespace() {
            let v = parse_vertex(line_no, token, n)?;
            if !set.insert(v) {
                return Err(err(line_no, format!("duplicate vertex id {}", v.index() + 1)));
            }
        }
    }
    Ok(set)
}

pub fn serialize_vertex_set(s: &VertexSet) -> String {
    let mut out = String::new();
    for v in s.iter() {
        let _ = writeln!(out, "{}", v.index() + 1);
    }
    out
}

/// 1-based position of `a` among the arcs with the same ordered endpoint
/// pair, counted in arc-id order.
pub fn occurrence_index(g: &DiGraph, a: ArcId) -> usize {
    let pair = g.arc(a);
    (0..=a.index())
        .filter(|&j| g.arc(ArcId::new(j)) == pair)
        .count()
}

pub fn arc_by_occurrence(
    g: &DiGraph,
    tail: VertexId,
    head: VertexId,
    occurrence: usize,
) -> Option<ArcId> {
    let mut seen = 0;
    for a in g.arc_ids() {
        if g.arc(a) == (tail, head) {
            seen += 1;
            if seen == occurrence {
                return Some(a);
            }
        }
    }
    None
}

pub fn parse_arc_set(text: &str, g: &DiGraph) -> Result<ArcSet, ParseError> {
    let n = g.vertex_count();
    let mut set = ArcSet::new(g.arc_count());
    for (line_no, line) in data_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(err(line_no, "expected an arc line '<tail> <head> <occurrence>'"));
        }
        let tail = parse_vertex(line_no, tokens[0], n)?;
        let head = parse_vertex(line_no, tokens[1], n)?;
        let occ = parse_count(line_no, tokens[2], "occurrence index")?;
        if occ == 0 {
            return Err(err(line_no, "occurrence index is 1-based"));
        }
        let a = arc_by_occurrence(g, tail, head, occ).ok_or_else(|| {
            err(
                line_no,
                format!(
                    "no arc {} {} with occurrence index {occ}",
                    tail.index() + 1,
                    head.index() + 1
                ),
            )
        })?;
        if !set.insert(a) {
            return Err(err(line_no, "duplicate arc"));
        }
    }
    Ok(set)
}

/// `<tail> <head> <occurrence>` rendering of one arc.
pub fn format_arc(g: &DiGraph, a: ArcId) -> String {
    let (t, h) = g.arc(a);
    format!("{} {} {}", t.index() + 1, h.index() + 1, occurrence_index(g, a))
}

pub fn serialize_arc_set(s: &ArcSet, g: &DiGraph) -> String {
    let mut out = String::new();
    for a in s.iter() {
        let _ = writeln!(out, "{}", format_arc(g, a));
    }
    out
}
