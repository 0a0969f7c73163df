//! The plain-text matroid file format.
//!
//! ```text
//! matroid v1
//! # U(2,4)
//! kind bases
//! n 4
//! r 2
//! 1 2
//! 1 3
//! ```
//!
//! Other bodies: `kind graph` with `vertices V` and `edges 1-2 2-3 ...`, and
//! `kind matrix` with `prime p`, `rows R`, `cols C` and then `R` rows of
//! entries. Elements and vertices are one-based; `-` is the empty basis.

use crate::bitset::{ElementSet, MAX_GROUND};
use crate::constructors::{graphic, linear_gf};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Bases {
        n: usize,
        r: usize,
        bases: Vec<ElementSet>,
    },
    Graph {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Matrix {
        prime: u64,
        rows: Vec<Vec<u64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidFile {
    pub body: Body,
    /// Line of every basis / matrix row, for error reporting.
    lines: Vec<usize>,
    kind_line: usize,
}

impl MatroidFile {
    pub fn new(body: Body) -> Self {
        MatroidFile {
            body,
            lines: Vec::new(),
            kind_line: 0,
        }
    }

    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidFile::new(Body::Bases {
            n: m.ground_size(),
            r: m.rank(),
            bases: m.bases().to_vec(),
        })
    }

    pub fn parse(text: &str) -> Result<MatroidFile> {
        Parser::new(text).file()
    }

    /// Builds the matroid; validation failures carry the offending line.
    pub fn to_matroid(&self) -> Result<Matroid> {
        let at = |line: usize| move |e: Error| Error::InFile { line, source: Box::new(e) };
        match &self.body {
            Body::Bases { n, bases, .. } => Matroid::validate_bases(*n, bases.iter().copied()).map_err(|e| {
                let culprit = match &e {
                    Error::ExchangeAxiomFailure { b1, .. } => Some(*b1),
                    Error::UnequalCardinality { second, .. } => Some(*second),
                    _ => None,
                };
                let line = culprit
                    .and_then(|b| bases.iter().position(|x| *x == b))
                    .and_then(|i| self.lines.get(i).copied())
                    .unwrap_or(self.kind_line);
                at(line)(e)
            }),
            Body::Graph { vertices, edges } => graphic(*vertices, edges).map_err(at(self.kind_line)),
            Body::Matrix { prime, rows } => linear_gf(rows, *prime).map_err(at(self.kind_line)),
        }
    }

    /// Canonical text; `parse(emit(f))` reproduces `f`'s body exactly.
    pub fn emit(&self) -> String {
        let mut out = format!("matroid v{FORMAT_VERSION}\n");
        match &self.body {
            Body::Bases { n, r, bases } => {
                out.push_str(&format!("kind bases\nn {n}\nr {r}\n"));
                for b in bases {
                    if b.is_empty() {
                        out.push_str("-\n");
                    } else {
                        let items: Vec<String> = b.iter().map(|e| (e + 1).to_string()).collect();
                        out.push_str(&items.join(" "));
                        out.push('\n');
                    }
                }
            }
            Body::Graph { vertices, edges } => {
                out.push_str(&format!("kind graph\nvertices {vertices}\nedges"));
                for (a, b) in edges {
                    out.push_str(&format!(" {a}-{b}"));
                }
                out.push('\n');
            }
            Body::Matrix { prime, rows } => {
                let cols = rows.first().map_or(0, Vec::len);
                out.push_str(&format!("kind matrix\nprime {prime}\nrows {}\ncols {cols}\n", rows.len()));
                for row in rows {
                    let items: Vec<String> = row.iter().map(u64::to_string).collect();
                    out.push_str(&items.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// Parses and builds a matroid in one step.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    MatroidFile::parse(text)?.to_matroid()
}

/// Canonical basis-list text of a matroid.
pub fn emit_matroid(m: &Matroid) -> String {
    MatroidFile::from_matroid(m).emit()
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    at: usize,
    last_line: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 1;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut column = 0;
            for piece in content.split([' ', '\t']) {
                if !piece.is_empty() {
                    tokens.push(Token {
                        text: piece.trim_end_matches('\r'),
                        column: column + 1,
                    });
                }
                column += piece.chars().count() + 1;
            }
            tokens.retain(|t| !t.text.is_empty());
            if !tokens.is_empty() {
                lines.push(Line {
                    number: i + 1,
                    tokens,
                });
            }
        }
        Parser {
            lines,
            at: 0,
            last_line,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<&Line<'a>> {
        let last = self.last_line;
        let line = self
            .lines
            .get(self.at)
            .ok_or_else(|| syntax(last + 1, 1, format!("unexpected end of file, expected {what}")))?;
        self.at += 1;
        Ok(line)
    }

    /// A line of the form `<key> <number>`.
    fn keyed_number(&mut self, key: &str) -> Result<(usize, u64)> {
        let line = self.next_line(&format!("`{key} <number>`"))?;
        let head = &line.tokens[0];
        if head.text != key {
            return Err(syntax(line.number, head.column, format!("expected `{key}`, found `{}`", head.text)));
        }
        if line.tokens.len() != 2 {
            let column = line.tokens.get(2).map_or(head.column, |t| t.column);
            return Err(syntax(line.number, column, format!("`{key}` takes exactly one number")));
        }
        let value = number(line.number, &line.tokens[1])?;
        Ok((line.number, value))
    }

    fn file(mut self) -> Result<MatroidFile> {
        if let Some(first) = self.lines.first() {
            if first.tokens[0].text == "matroid" {
                let version = first.tokens.get(1);
                match version.map(|t| t.text) {
                    Some("v1") if first.tokens.len() == 2 => {}
                    _ => {
                        let column = version.map_or(first.tokens[0].column, |t| t.column);
                        return Err(syntax(first.number, column, "unsupported header, expected `matroid v1`"));
                    }
                }
                self.at = 1;
            }
        }
        let line = self.next_line("`kind ...`")?;
        let kind_line = line.number;
        let head = &line.tokens[0];
        if head.text != "kind" || line.tokens.len() != 2 {
            return Err(syntax(line.number, head.column, "expected `kind bases|graph|matrix`"));
        }
        let kind = &line.tokens[1];
        let (body, lines) = match kind.text {
            "bases" => self.bases()?,
            "graph" => self.graph()?,
            "matrix" => self.matrix()?,
            other => {
                return Err(syntax(
                    kind_line,
                    kind.column,
                    format!("unknown kind `{other}`, expected bases, graph or matrix"),
                ))
            }
        };
        Ok(MatroidFile {
            body,
            lines,
            kind_line,
        })
    }

    fn bases(&mut self) -> Result<(Body, Vec<usize>)> {
        let (n_line, n) = self.keyed_number("n")?;
        if n as usize > MAX_GROUND {
            return Err(syntax(n_line, 3, format!("n = {n} exceeds the limit of {MAX_GROUND}")));
        }
        let (r_line, r) = self.keyed_number("r")?;
        if r > n {
            return Err(syntax(r_line, 3, format!("r = {r} exceeds n = {n}")));
        }
        let (n, r) = (n as usize, r as usize);
        let mut bases = Vec::new();
        let mut lines = Vec::new();
        while self.at < self.lines.len() {
            let line = &self.lines[self.at];
            self.at += 1;
            let mut set = ElementSet::EMPTY;
            if line.tokens.len() == 1 && line.tokens[0].text == "-" {
                // empty basis
            } else {
                for tok in &line.tokens {
                    let e = number(line.number, tok)? as usize;
                    if e == 0 || e > n {
                        return Err(syntax(line.number, tok.column, format!("element {e} is outside 1..={n}")));
                    }
                    if set.contains(e - 1) {
                        return Err(syntax(line.number, tok.column, format!("element {e} repeated")));
                    }
                    set = set.with(e - 1);
                }
            }
            if set.len() != r {
                return Err(syntax(
                    line.number,
                    line.tokens[0].column,
                    format!("basis has {} elements, expected r = {r}", set.len()),
                ));
            }
            bases.push(set);
            lines.push(line.number);
        }
        Ok((Body::Bases { n, r, bases }, lines))
    }

    fn graph(&mut self) -> Result<(Body, Vec<usize>)> {
        let (_, vertices) = self.keyed_number("vertices")?;
        let vertices = vertices as usize;
        let mut edges = Vec::new();
        let mut lines = Vec::new();
        while self.at < self.lines.len() {
            let line = &self.lines[self.at];
            self.at += 1;
            let head = &line.tokens[0];
            if head.text != "edges" {
                return Err(syntax(line.number, head.column, format!("expected `edges`, found `{}`", head.text)));
            }
            for tok in &line.tokens[1..] {
                let Some((a, b)) = tok.text.split_once('-') else {
                    return Err(syntax(line.number, tok.column, format!("expected an edge `a-b`, found `{}`", tok.text)));
                };
                let a = number_str(line.number, tok.column, a)? as usize;
                let b = number_str(line.number, tok.column + tok.text.find('-').unwrap_or(0) + 1, b)? as usize;
                for v in [a, b] {
                    if v == 0 || v > vertices {
                        return Err(syntax(line.number, tok.column, format!("vertex {v} is outside 1..={vertices}")));
                    }
                }
                edges.push((a, b));
                lines.push(line.number);
            }
        }
        Ok((Body::Graph { vertices, edges }, lines))
    }

    fn matrix(&mut self) -> Result<(Body, Vec<usize>)> {
        let (_, prime) = self.keyed_number("prime")?;
        let (_, row_count) = self.keyed_number("rows")?;
        let (_, col_count) = self.keyed_number("cols")?;
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        for _ in 0..row_count {
            let line = self.next_line("a matrix row")?;
            if line.tokens.len() as u64 != col_count {
                let column = line.tokens.get(col_count as usize).map_or(1, |t| t.column);
                return Err(syntax(
                    line.number,
                    column,
                    format!("row has {} entries, expected {col_count}", line.tokens.len()),
                ));
            }
            let row = line
                .tokens
                .iter()
                .map(|t| number(line.number, t))
                .collect::<Result<Vec<u64>>>()?;
            rows.push(row);
            lines.push(line.number);
        }
        if let Some(extra) = self.lines.get(self.at) {
            return Err(syntax(extra.number, extra.tokens[0].column, "unexpected content after the matrix"));
        }
        Ok((Body::Matrix { prime, rows }, lines))
    }
}

fn number(line: usize, tok: &Token<'_>) -> Result<u64> {
    number_str(line, tok.column, tok.text)
}

fn number_str(line: usize, column: usize, text: &str) -> Result<u64> {
    text.parse::<u64>()
        .map_err(|_| syntax(line, column, format!("expected a non-negative integer, found `{text}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{five_basis, k4, set1, u};

    #[test]
    fn parses_u24() {
        let text = "matroid v1\nkind bases\nn 4\nr 2\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
        assert_eq!(parse_matroid(text).unwrap(), u(2, 4));
        assert_eq!(emit_matroid(&u(2, 4)), text);
    }

    #[test]
    fn parses_graph_without_header() {
        let m = parse_matroid("kind graph\nvertices 4\nedges 1-2 1-3 1-4 2-3 2-4 3-4\n").unwrap();
        assert_eq!(m, k4());
        assert_eq!(m.basis_count(), 16);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn parses_matrix_and_comments() {
        let text = "# a GF(2) matrix\nkind matrix\nprime 2\nrows 2\ncols 3 # three columns\n1 0 1\n0 1 1\n";
        assert_eq!(parse_matroid(text).unwrap(), u(2, 3));
    }

    #[test]
    fn exchange_failure_carries_the_basis_line() {
        let err = parse_matroid("kind bases\nn 4\nr 2\n1 2\n3 4\n").unwrap_err();
        assert_eq!(
            err,
            Error::InFile {
                line: 4,
                source: Box::new(Error::ExchangeAxiomFailure {
                    b1: set1(&[1, 2]),
                    b2: set1(&[3, 4]),
                    e: 0
                })
            }
        );
    }

    #[test]
    fn syntax_errors_have_positions() {
        let cases = [
            ("kind bases\nn 4\nr 2\n1 5\n", 4, 3),
            ("kind shape\n", 1, 6),
            ("matroid v2\nkind bases\n", 1, 9),
            ("kind bases\nn 4\nr 2\n1 x\n", 4, 3),
            ("kind bases\nn 4\nr 2\n1 2 3\n", 4, 1),
            ("kind bases\nn 4\n", 3, 1),
            ("kind graph\nvertices 3\nedges 1-2 2+3\n", 3, 11),
            ("kind matrix\nprime 2\nrows 1\ncols 2\n1\n", 5, 1),
        ];
        for (text, line, column) in cases {
            match MatroidFile::parse(text).and_then(|f| f.to_matroid()) {
                Err(Error::Syntax { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn rank_zero_round_trip() {
        let m = u(0, 3);
        let text = emit_matroid(&m);
        assert!(text.ends_with("r 0\n-\n"));
        assert_eq!(parse_matroid(&text).unwrap(), m);
    }

    #[test]
    fn bodies_round_trip() {
        let bodies = [
            MatroidFile::from_matroid(&five_basis()),
            MatroidFile::new(Body::Graph {
                vertices: 3,
                edges: vec![(1, 2), (2, 3), (1, 2)],
            }),
            MatroidFile::new(Body::Matrix {
                prime: 3,
                rows: vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]],
            }),
        ];
        for f in bodies {
            let text = f.emit();
            let back = MatroidFile::parse(&text).unwrap();
            assert_eq!(back.body, f.body);
            assert_eq!(back.emit(), text);
        }
    }
}
