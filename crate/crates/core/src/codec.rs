//! Text encodings: graph6, undirected DOT and edge-list JSON.
//!
//! All three round-trip the edge set exactly. Vertex `i` of a graph is
//! written as `i` in DOT and JSON, and occupies bit position `i - 1` in
//! graph6.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    Dot,
    EdgeListJson,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "dot" | "gv" => Ok(Format::Dot),
            "json" | "edge-list-json" => Ok(Format::EdgeListJson),
            other => Err(Error::Parse {
                format: "format name",
                line: 1,
                column: 1,
                message: format!("unknown graph format `{other}`"),
            }),
        }
    }
}

pub fn encode(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::Dot => to_dot(g, |_| None),
        Format::EdgeListJson => to_json(g),
    }
}

pub fn decode(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => from_graph6(text),
        Format::Dot => from_dot(text),
        Format::EdgeListJson => from_json(text),
    }
}

// ---------------------------------------------------------------- graph6

const G6_BIAS: u8 = 63;

fn g6_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        format: "graph6",
        line: 1,
        column,
        message: message.into(),
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + G6_BIAS) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + G6_BIAS) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + G6_BIAS) as char);
        }
    }

    // Upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    let adj = g.adjacency();
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk <<= 1;
            if adj[i].binary_search(&j).is_ok() {
                chunk |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push((chunk + G6_BIAS) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        chunk <<= 6 - filled;
        out.push((chunk + G6_BIAS) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_error(
                i + 1,
                format!("byte {b:#04x} outside the graph6 range"),
            ));
        }
    }
    let (n, body_start) = match bytes {
        [] => return Err(g6_error(1, "empty input")),
        [b'~', b'~', rest @ ..] => {
            if rest.len() < 6 {
                return Err(g6_error(3, "truncated 8-byte order header"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - G6_BIAS) as usize);
            (n, 8)
        }
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_error(2, "truncated 4-byte order header"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - G6_BIAS) as usize);
            (n, 4)
        }
        [first, ..] => ((first - G6_BIAS) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != expected {
        return Err(g6_error(
            body_start + body.len().min(expected) + 1,
            format!(
                "order {n} needs {expected} edge bytes, found {}",
                body.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - G6_BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i + 1, j + 1));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - G6_BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(g6_error(body_start + expected, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

// ---------------------------------------------------------------- DOT

/// Writes an undirected DOT graph. `comment` may attach a `// ...` note to a
/// vertex line (products use it to record `(g,h)` coordinates).
pub fn to_dot(g: &Graph, comment: impl Fn(usize) -> Option<String>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 1..=g.order() {
        match comment(v) {
            Some(c) => writeln!(out, "  {v}; // {c}").unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(usize),
    LBrace,
    RBrace,
    Semi,
    Comma,
    Edge,
    Attrs,
    Eq,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            format: "dot",
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self, ahead: usize) -> Option<u8> {
        self.src.get(self.pos + ahead).copied()
    }

    fn skip_trivia(&mut self) -> Result<()> {
        loop {
            match (self.peek(0), self.peek(1)) {
                (Some(c), _) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                (Some(b'/'), Some(b'/')) | (Some(b'#'), _) => {
                    while let Some(c) = self.peek(0) {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                (Some(b'/'), Some(b'*')) => {
                    self.bump();
                    self.bump();
                    loop {
                        match (self.peek(0), self.peek(1)) {
                            (Some(b'*'), Some(b'/')) => {
                                self.bump();
                                self.bump();
                                break;
                            }
                            (Some(_), _) => {
                                self.bump();
                            }
                            (None, _) => return Err(self.err("unterminated block comment")),
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    /// Next token with the position it started at.
    fn next(&mut self) -> Result<Option<(Tok, usize, usize)>> {
        self.skip_trivia()?;
        let (line, col) = (self.line, self.col);
        let Some(c) = self.peek(0) else {
            return Ok(None);
        };
        let tok = match c {
            b'{' => {
                self.bump();
                Tok::LBrace
            }
            b'}' => {
                self.bump();
                Tok::RBrace
            }
            b';' => {
                self.bump();
                Tok::Semi
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b'=' => {
                self.bump();
                Tok::Eq
            }
            b'-' if self.peek(1) == Some(b'-') => {
                self.bump();
                self.bump();
                Tok::Edge
            }
            b'-' if self.peek(1) == Some(b'>') => {
                return Err(self.err("directed edges are not supported"));
            }
            b'[' => {
                // Attribute lists are accepted and ignored.
                let mut in_quotes = false;
                loop {
                    match self.bump() {
                        Some(b'"') => in_quotes = !in_quotes,
                        Some(b']') if !in_quotes => break,
                        Some(_) => {}
                        None => return Err(self.err("unterminated attribute list")),
                    }
                }
                Tok::Attrs
            }
            b'"' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some(b'"') => break,
                        Some(b'\\') => {
                            if let Some(e) = self.bump() {
                                s.push(e as char);
                            }
                        }
                        Some(ch) => s.push(ch as char),
                        None => return Err(self.err("unterminated string")),
                    }
                }
                match s.parse::<usize>() {
                    Ok(v) => Tok::Num(v),
                    Err(_) => Tok::Ident(s),
                }
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let mut s = String::new();
                while let Some(ch) = self.peek(0) {
                    if ch.is_ascii_alphanumeric() || ch == b'_' || ch == b'.' {
                        s.push(ch as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                match s.parse::<usize>() {
                    Ok(v) => Tok::Num(v),
                    Err(_) => Tok::Ident(s),
                }
            }
            other => return Err(self.err(format!("unexpected character `{}`", other as char))),
        };
        Ok(Some((tok, line, col)))
    }
}

/// Parses the subset of DOT this crate writes: an undirected `graph` whose
/// node ids are the integers `1..=n`. Attribute lists are skipped. The order
/// is the largest id mentioned.
pub fn from_dot(text: &str) -> Result<Graph> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut toks = Vec::new();
    while let Some(t) = lx.next()? {
        toks.push(t);
    }
    let err_at = |i: usize, msg: &str| {
        let (line, column) = toks.get(i).map(|t| (t.1, t.2)).unwrap_or((lx.line, lx.col));
        Error::Parse {
            format: "dot",
            line,
            column,
            message: msg.to_string(),
        }
    };

    let mut i = 0;
    if matches!(toks.get(i), Some((Tok::Ident(s), ..)) if s.eq_ignore_ascii_case("strict")) {
        i += 1;
    }
    match toks.get(i) {
        Some((Tok::Ident(s), ..)) if s.eq_ignore_ascii_case("graph") => i += 1,
        Some((Tok::Ident(s), ..)) if s.eq_ignore_ascii_case("digraph") => {
            return Err(err_at(i, "directed graphs are not supported"))
        }
        _ => return Err(err_at(i, "expected `graph`")),
    }
    if matches!(toks.get(i), Some((Tok::Ident(_) | Tok::Num(_), ..))) {
        i += 1;
    }
    if !matches!(toks.get(i), Some((Tok::LBrace, ..))) {
        return Err(err_at(i, "expected `{`"));
    }
    i += 1;

    let mut n = 0usize;
    let mut edges = Vec::new();
    loop {
        match toks.get(i) {
            None => return Err(err_at(i, "missing closing `}`")),
            Some((Tok::RBrace, ..)) => {
                i += 1;
                break;
            }
            Some((Tok::Semi | Tok::Comma, ..)) => i += 1,
            Some((Tok::Ident(kw), ..))
                if ["graph", "node", "edge"].contains(&kw.to_ascii_lowercase().as_str()) =>
            {
                i += 1;
                if matches!(toks.get(i), Some((Tok::Attrs, ..))) {
                    i += 1;
                }
            }
            Some((Tok::Ident(_), ..)) if matches!(toks.get(i + 1), Some((Tok::Eq, ..))) => {
                // graph-level `key = value`
                i += 3;
            }
            Some((Tok::Num(first), ..)) => {
                let mut chain = vec![(*first, i)];
                i += 1;
                while matches!(toks.get(i), Some((Tok::Edge, ..))) {
                    i += 1;
                    match toks.get(i) {
                        Some((Tok::Num(v), ..)) => chain.push((*v, i)),
                        _ => return Err(err_at(i, "expected a vertex id after `--`")),
                    }
                    i += 1;
                }
                if matches!(toks.get(i), Some((Tok::Attrs, ..))) {
                    i += 1;
                }
                for &(v, at) in &chain {
                    if v == 0 {
                        return Err(err_at(at, "vertex ids are 1-based"));
                    }
                    n = n.max(v);
                }
                for w in chain.windows(2) {
                    edges.push((w[0].0, w[1].0));
                }
            }
            Some(_) => return Err(err_at(i, "unexpected token")),
        }
    }
    if i != toks.len() {
        return Err(err_at(i, "trailing input after `}`"));
    }
    Graph::from_edges(n, edges).map_err(|e| Error::Parse {
        format: "dot",
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

// ---------------------------------------------------------------- JSON

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeList {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// `{"n":3,"edges":[[1,2],[1,3],[2,3]]}`, edges sorted, compact.
pub fn to_json(g: &Graph) -> String {
    let doc = EdgeList {
        n: g.order(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&doc).expect("edge list serialises")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let doc: EdgeList = serde_json::from_str(text).map_err(|e| Error::Parse {
        format: "edge-list-json",
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Graph::from_edges(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v))).map_err(|e| Error::Parse {
        format: "edge-list-json",
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, [(1, 3), (1, 5), (2, 4), (4, 5)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(to_graph6(&Graph::cycle(5).unwrap()), "Dhc");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn graph6_large_order_header() {
        let g = Graph::cycle(70).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(matches!(
            decode("garbage", Format::Graph6),
            Err(Error::Parse { .. })
        ));
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D\u{1}c").is_err());
        // padding bits must be zero
        assert!(from_graph6("Bx").is_err());
    }

    #[test]
    fn json_shape() {
        assert_eq!(
            encode(&Graph::complete(3).unwrap(), Format::EdgeListJson),
            r#"{"n":3,"edges":[[1,2],[1,3],[2,3]]}"#
        );
        match decode(
            "{\"n\": 3,\n \"edges\": [[1,2],[1,]]}",
            Format::EdgeListJson,
        ) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(decode("garbage", Format::EdgeListJson).is_err());
        assert!(decode(r#"{"n":2,"edges":[[1,3]]}"#, Format::EdgeListJson).is_err());
    }

    #[test]
    fn dot_round_trip_and_errors() {
        let c5 = Graph::cycle(5).unwrap();
        let text = encode(&c5, Format::Dot);
        assert_eq!(decode(&text, Format::Dot).unwrap(), c5);

        let loose = "strict graph \"x\" {\n  node [shape=circle];\n  1 -- 2 -- 3 [color=red];\n  /* isolated */ 4\n}";
        let g = from_dot(loose).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);

        match from_dot("graph {\n  1 -- ;\n}") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(from_dot("digraph { 1 -> 2 }").is_err());
        assert!(from_dot("garbage").is_err());
    }
}
