use std::collections::{HashMap, HashSet};

use crate::linalg::{ComplexMatrix, ComplexScalar, QuantumState};
use crate::network::LegRef;

use super::literal::parse_complex;
use super::{Decl, Declaration, Diagnostic, Document, NodeKind, Span};

/// Parses a document from raw bytes, reporting invalid UTF-8 as a
/// positioned diagnostic.
pub fn parse_bytes(bytes: &[u8]) -> Result<Document, Vec<Diagnostic>> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse(s),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line_start = valid.rfind('\n').map_or(0, |p| p + 1);
            let line = valid.matches('\n').count() + 1;
            let column = valid[line_start..].chars().count() + 1;
            let rest = &bytes[line_start..];
            let line_end = rest.iter().position(|&b| b == b'\n').unwrap_or(rest.len());
            let excerpt = String::from_utf8_lossy(&rest[..line_end]);
            Err(vec![Diagnostic::error(
                "invalid UTF-8",
                line,
                column,
                excerpt.trim_end_matches('\r'),
            )])
        }
    }
}

/// Parses a whole document. Either every line is valid or all diagnostics
/// are returned; there is no partial result.
pub fn parse(source: &str) -> Result<Document, Vec<Diagnostic>> {
    let mut parser = Parser::default();
    for (i, raw) in source.split('\n').enumerate() {
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let code = text.split('#').next().unwrap_or("");
        let mut line = Line {
            number: i + 1,
            text,
            code,
            pos: 0,
        };
        if line.at_end() {
            continue;
        }
        match parser.declaration(&mut line) {
            Ok(decl) => parser.declarations.push(decl),
            Err(d) => parser.diagnostics.push(d),
        }
    }
    if parser.diagnostics.is_empty() {
        Ok(Document {
            declarations: parser.declarations,
        })
    } else {
        Err(parser.diagnostics)
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    code: &'a str,
    pos: usize,
}

impl<'a> Line<'a> {
    fn column(&self, byte: usize) -> usize {
        self.text[..byte].chars().count() + 1
    }

    fn error(&self, byte: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(message, self.number, self.column(byte), self.text)
    }

    fn peek(&self) -> Option<char> {
        self.code[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.code.len()
    }

    fn describe_next(&mut self) -> String {
        self.skip_ws();
        let word: String = self.code[self.pos..]
            .chars()
            .take_while(|c| !c.is_whitespace())
            .take(16)
            .collect();
        if word.is_empty() {
            "end of line".to_string()
        } else {
            format!("`{word}`")
        }
    }

    fn ident(&mut self, what: &str) -> Result<(usize, &'a str), Diagnostic> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.code.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end].is_ascii_alphabetic() || bytes[end] == b'_') {
            end += 1;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
        }
        if end == start {
            let found = self.describe_next();
            return Err(self.error(start, format!("expected {what}, found {found}")));
        }
        self.pos = end;
        Ok((start, &self.code[start..end]))
    }

    fn expect(&mut self, token: &str) -> Result<usize, Diagnostic> {
        self.skip_ws();
        let start = self.pos;
        if self.code[start..].starts_with(token) {
            self.pos += token.len();
            Ok(start)
        } else {
            let found = self.describe_next();
            Err(self.error(start, format!("expected `{token}`, found {found}")))
        }
    }

    fn eat(&mut self, token: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(token) {
            self.pos += token.len_utf8();
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> Result<(usize, usize), Diagnostic> {
        self.skip_ws();
        let start = self.pos;
        let len = self.code[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            let found = self.describe_next();
            return Err(self.error(start, format!("expected a positive integer, found {found}")));
        }
        self.pos += len;
        self.code[start..start + len]
            .parse()
            .map(|n| (start, n))
            .map_err(|_| self.error(start, "integer out of range"))
    }

    fn leg_ref(&mut self) -> Result<(usize, LegRef), Diagnostic> {
        let (start, node) = self.ident("node id")?;
        self.expect(".")?;
        let (_, leg) = self.ident("leg name")?;
        Ok((start, LegRef::new(node, leg)))
    }

    /// `[c, c, ...]`, returning each literal's start offset.
    fn literal_list(&mut self) -> Result<Vec<(usize, ComplexScalar)>, Diagnostic> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            let len = self.code[start..]
                .find([',', ']', '['])
                .unwrap_or(self.code.len() - start);
            let text = self.code[start..start + len].trim_end();
            if text.is_empty() {
                let found = self.describe_next();
                return Err(self.error(start, format!("expected a complex literal, found {found}")));
            }
            let value = parse_complex(text)
                .ok_or_else(|| self.error(start, format!("malformed complex literal `{text}`")))?;
            out.push((start, value));
            self.pos = start + len;
            if self.eat(',') {
                continue;
            }
            self.expect("]")?;
            return Ok(out);
        }
    }

    fn finish(&mut self) -> Result<(), Diagnostic> {
        if self.at_end() {
            Ok(())
        } else {
            let found = self.describe_next();
            Err(self.error(self.pos, format!("unexpected {found}")))
        }
    }
}

#[derive(Default)]
struct Parser {
    declarations: Vec<Declaration>,
    diagnostics: Vec<Diagnostic>,
    dim: Option<usize>,
    gates: HashMap<String, usize>,
    states: HashSet<String>,
    circuits: HashSet<String>,
    nodes: HashMap<String, NodeKind>,
    used_legs: HashSet<LegRef>,
}

impl Parser {
    fn declaration(&mut self, line: &mut Line<'_>) -> Result<Declaration, Diagnostic> {
        let (start, keyword) = line.ident("a declaration keyword")?;
        let decl = match keyword {
            "dim" => self.dim(line, start)?,
            "gate" => self.gate(line, start)?,
            "state" => self.state(line, start)?,
            "circuit" => self.circuit(line)?,
            "node" => self.node(line)?,
            "edge" => self.edge(line)?,
            "free" => self.free(line)?,
            other => return Err(line.error(start, format!("unknown declaration `{other}`"))),
        };
        line.finish()?;
        self.register(&decl);
        Ok(Declaration {
            decl,
            span: Span {
                line: line.number,
                column: line.column(start),
            },
        })
    }

    /// Records names and wired legs once the whole line has parsed.
    fn register(&mut self, decl: &Decl) {
        match decl {
            Decl::Dim(n) => self.dim = Some(*n),
            Decl::Gate { name, matrix } => {
                self.gates.insert(name.clone(), matrix.rows());
            }
            Decl::State { name, .. } => {
                self.states.insert(name.clone());
            }
            Decl::Circuit { name, .. } => {
                self.circuits.insert(name.clone());
            }
            Decl::Node { id, kind, .. } => {
                self.nodes.insert(id.clone(), *kind);
            }
            Decl::Edge { from, to } => {
                self.used_legs.insert(from.clone());
                self.used_legs.insert(to.clone());
            }
            Decl::Free(leg) => {
                self.used_legs.insert(leg.clone());
            }
        }
    }

    fn require_dim(&self, line: &Line<'_>, start: usize, what: &str) -> Result<usize, Diagnostic> {
        self.dim
            .ok_or_else(|| line.error(start, format!("`{what}` before the `dim` declaration")))
    }

    fn dim(&mut self, line: &mut Line<'_>, start: usize) -> Result<Decl, Diagnostic> {
        if self.dim.is_some() {
            return Err(line.error(start, "duplicate declaration of `dim`"));
        }
        let (at, n) = line.unsigned()?;
        if n == 0 {
            return Err(line.error(at, "dimension must be positive"));
        }
        Ok(Decl::Dim(n))
    }

    fn gate(&mut self, line: &mut Line<'_>, start: usize) -> Result<Decl, Diagnostic> {
        let (name_at, name) = line.ident("gate name")?;
        line.expect("=")?;
        line.expect("[")?;
        let mut rows: Vec<(usize, Vec<ComplexScalar>)> = Vec::new();
        loop {
            line.skip_ws();
            let row_at = line.pos;
            let row = line.literal_list()?;
            rows.push((row_at, row.into_iter().map(|(_, z)| z).collect()));
            if line.eat(',') {
                continue;
            }
            line.expect("]")?;
            break;
        }
        let width = rows[0].1.len();
        if width == 0 {
            return Err(line.error(rows[0].0, "empty matrix row"));
        }
        if let Some((at, _)) = rows.iter().find(|(_, r)| r.len() != width) {
            return Err(line.error(*at, "ragged matrix row"));
        }
        let d = self.require_dim(line, start, "gate")?;
        if self.gates.contains_key(name) {
            return Err(line.error(name_at, format!("duplicate declaration of gate `{name}`")));
        }
        if rows.len() != d || width != d {
            return Err(line.error(
                name_at,
                format!(
                    "dimension mismatch: gate `{name}` is {}x{width}, expected {d}x{d}",
                    rows.len()
                ),
            ));
        }
        let matrix = ComplexMatrix::from_rows(rows.into_iter().map(|(_, r)| r).collect())
            .map_err(|e| line.error(name_at, e.to_string()))?;
        Ok(Decl::Gate {
            name: name.to_string(),
            matrix,
        })
    }

    fn state(&mut self, line: &mut Line<'_>, start: usize) -> Result<Decl, Diagnostic> {
        let (name_at, name) = line.ident("state name")?;
        line.expect("=")?;
        let values = line.literal_list()?;
        let d = self.require_dim(line, start, "state")?;
        if self.states.contains(name) {
            return Err(line.error(name_at, format!("duplicate declaration of state `{name}`")));
        }
        if values.len() != d {
            return Err(line.error(
                name_at,
                format!(
                    "dimension mismatch: state `{name}` has {} amplitudes, expected {d}",
                    values.len()
                ),
            ));
        }
        let state = QuantumState::new(values.into_iter().map(|(_, z)| z).collect())
            .map_err(|e| line.error(name_at, e.to_string()))?;
        Ok(Decl::State {
            name: name.to_string(),
            state,
        })
    }

    fn circuit(&mut self, line: &mut Line<'_>) -> Result<Decl, Diagnostic> {
        let (name_at, name) = line.ident("circuit name")?;
        line.expect("=")?;
        let mut gates = Vec::new();
        while !line.at_end() {
            let (at, gate) = line.ident("gate name")?;
            if !self.gates.contains_key(gate) {
                return Err(line.error(at, format!("unknown name `{gate}`")));
            }
            gates.push(gate.to_string());
        }
        if gates.is_empty() {
            return Err(line.error(line.pos, "expected gate name, found end of line"));
        }
        if self.circuits.contains(name) {
            return Err(line.error(
                name_at,
                format!("duplicate declaration of circuit `{name}`"),
            ));
        }
        Ok(Decl::Circuit {
            name: name.to_string(),
            gates,
        })
    }

    fn node(&mut self, line: &mut Line<'_>) -> Result<Decl, Diagnostic> {
        let (id_at, id) = line.ident("node id")?;
        line.expect(":")?;
        let (target_at, target) = line.ident("gate or state name")?;
        let kind = match (
            self.gates.contains_key(target),
            self.states.contains(target),
        ) {
            (true, false) => NodeKind::Gate,
            (false, true) => NodeKind::State,
            (true, true) => {
                return Err(line.error(
                    target_at,
                    format!("ambiguous name `{target}` (both a gate and a state)"),
                ))
            }
            (false, false) => return Err(line.error(target_at, format!("unknown name `{target}`"))),
        };
        if self.nodes.contains_key(id) {
            return Err(line.error(id_at, format!("duplicate declaration of node `{id}`")));
        }
        Ok(Decl::Node {
            id: id.to_string(),
            kind,
            target: target.to_string(),
        })
    }

    fn check_leg(&self, line: &Line<'_>, at: usize, leg: &LegRef) -> Result<(), Diagnostic> {
        let kind = self
            .nodes
            .get(&leg.node)
            .ok_or_else(|| line.error(at, format!("unknown name `{}`", leg.node)))?;
        let valid = match kind {
            NodeKind::Gate => leg.leg == "in" || leg.leg == "out",
            NodeKind::State => leg.leg == "out",
        };
        if !valid {
            return Err(line.error(at, format!("unknown leg `{leg}`")));
        }
        if self.used_legs.contains(leg) {
            return Err(line.error(at, format!("leg `{leg}` is already wired")));
        }
        Ok(())
    }

    fn edge(&mut self, line: &mut Line<'_>) -> Result<Decl, Diagnostic> {
        let (from_at, from) = line.leg_ref()?;
        line.expect("->")?;
        let (to_at, to) = line.leg_ref()?;
        self.check_leg(line, from_at, &from)?;
        self.check_leg(line, to_at, &to)?;
        if from == to {
            return Err(line.error(to_at, format!("leg `{to}` is already wired")));
        }
        Ok(Decl::Edge { from, to })
    }

    fn free(&mut self, line: &mut Line<'_>) -> Result<Decl, Diagnostic> {
        let (at, leg) = line.leg_ref()?;
        self.check_leg(line, at, &leg)?;
        Ok(Decl::Free(leg))
    }
}
