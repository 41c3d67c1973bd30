//! The line-oriented spec language.
//!
//! ```text
//! field 3
//! space H dim 2 parity 0 1
//! bracket H 1 1 -> 1 0
//! cifset A on H default 0 0 1 1
//! entry A 0 1 deg 2/3 1/2 1/4 1/3
//! map phi H -> H kind anti rows 2 0 / 0 1
//! ```
//!
//! One statement per line, `#` starts a comment. Bracket indices are
//! 0-based and given for `i <= j` only. Map rows are separated by a
//! standalone `/`. Rationals are `n/d` in lowest terms
//! or the integers `0` and `1`. Statements may only name things declared on
//! earlier lines; brackets may follow sets and maps on the same space.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use cifsuper_core::{
    AlgebraError, CifDegree, CifError, CifSet, Degree, DegreeError, GradedMap, MapKind, Parity, PrimeField, Scalar,
    Superalgebra, Unit, Vector,
};
use thiserror::Error;

/// Largest carrier a CIF set may be declared on.
pub const MAX_SET_CARRIER: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub kind: SpecErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecErrorKind {
    #[error("expected {expected}, found `{found}`")]
    Unexpected { expected: &'static str, found: String },
    #[error("expected {0}, found end of line")]
    EndOfLine(&'static str),
    #[error("unexpected trailing `{0}`")]
    Trailing(String),
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error("invalid name `{0}`")]
    Name(String),
    #[error("invalid integer `{0}`")]
    Integer(String),
    #[error("no field statement")]
    MissingField,
    #[error("field declared twice")]
    DuplicateField,
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    DuplicateName { kind: &'static str, name: String },
    #[error("bracket indices must satisfy i <= j")]
    BracketOrder,
    #[error("bracket ({0}, {1}) given twice")]
    DuplicateBracket(usize, usize),
    #[error("expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("not a Lie superalgebra: {0}")]
    Axiom(String),
    #[error("invalid map: {0}")]
    Map(String),
    #[error("carrier of {size} vectors exceeds the limit of {cap} for CIF sets")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Cif(#[from] CifError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSet {
    pub name: String,
    pub space: String,
    pub set: CifSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: GradedMap,
}

/// Everything declared by one document, in declaration order per kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    pub field: PrimeField,
    pub spaces: Vec<(String, Arc<Superalgebra>)>,
    pub sets: Vec<NamedSet>,
    pub maps: Vec<NamedMap>,
}

impl Workspace {
    pub fn space(&self, name: &str) -> Option<&Arc<Superalgebra>> {
        self.spaces.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn set(&self, name: &str) -> Option<&NamedSet> {
        self.sets.iter().find(|s| s.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }
}

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    end: usize,
}

impl<'a> Line<'a> {
    fn new(no: usize, raw: &'a str) -> Self {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        let push = |toks: &mut Vec<Tok<'a>>, s: usize, e: usize| {
            toks.push(Tok {
                text: &body[s..e],
                col: body[..s].chars().count() + 1,
            });
        };
        for (i, c) in body.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    push(&mut toks, s, i);
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            push(&mut toks, s, body.len());
        }
        let end = body.trim_end().chars().count() + 1;
        Line { no, toks, pos: 0, end }
    }

    fn is_blank(&self) -> bool {
        self.toks.is_empty()
    }

    fn err(&self, column: usize, kind: SpecErrorKind) -> SpecError {
        SpecError {
            line: self.no,
            column,
            kind,
        }
    }

    fn next(&mut self, expected: &'static str) -> Result<&Tok<'a>, SpecError> {
        match self.toks.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.toks[self.pos - 1])
            }
            None => Err(self.err(self.end, SpecErrorKind::EndOfLine(expected))),
        }
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos)
    }

    fn keyword(&mut self, kw: &'static str) -> Result<(), SpecError> {
        let t = self.next(kw)?;
        if t.text == kw {
            Ok(())
        } else {
            let (col, found) = (t.col, t.text.to_string());
            Err(self.err(col, SpecErrorKind::Unexpected { expected: kw, found }))
        }
    }

    fn name(&mut self) -> Result<(String, usize), SpecError> {
        let t = self.next("a name")?;
        let (col, text) = (t.col, t.text);
        let mut chars = text.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if ok && !KEYWORDS.contains(&text) {
            Ok((text.to_string(), col))
        } else {
            Err(self.err(col, SpecErrorKind::Name(text.to_string())))
        }
    }

    fn int(&mut self, expected: &'static str) -> Result<(u64, usize), SpecError> {
        let t = self.next(expected)?;
        let (col, text) = (t.col, t.text);
        if !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.err(col, SpecErrorKind::Integer(text.to_string())));
        }
        text.parse::<u64>()
            .map(|v| (v, col))
            .map_err(|_| self.err(col, SpecErrorKind::Integer(text.to_string())))
    }

    fn scalar(&mut self, field: PrimeField) -> Result<Scalar, SpecError> {
        let (v, col) = self.int("a field element")?;
        if v >= u64::from(field.modulus()) {
            let value = u32::try_from(v).unwrap_or(u32::MAX);
            return Err(self.err(
                col,
                AlgebraError::CoefficientOutOfRange {
                    value,
                    modulus: field.modulus(),
                }
                .into(),
            ));
        }
        Ok(v as Scalar)
    }

    fn scalars(&mut self, field: PrimeField, n: usize, col: usize) -> Result<Vec<Scalar>, SpecError> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            match self.peek() {
                Some(t) if t.text.bytes().all(|b| b.is_ascii_digit()) => out.push(self.scalar(field)?),
                _ => {
                    let found = out.len();
                    return Err(self.err(col, SpecErrorKind::Arity { expected: n, found }));
                }
            }
        }
        Ok(out)
    }

    fn unit(&mut self) -> Result<Unit, SpecError> {
        let t = self.next("a rational")?;
        let (col, text) = (t.col, t.text);
        text.parse::<Unit>().map_err(|e| self.err(col, e.into()))
    }

    /// `R W RH WH`.
    fn cif_degree(&mut self) -> Result<CifDegree, SpecError> {
        let col = self.peek().map_or(self.end, |t| t.col);
        let mem = Degree::new(self.unit()?, self.unit()?);
        let non = Degree::new(self.unit()?, self.unit()?);
        CifDegree::new(mem, non).map_err(|e| self.err(col, e.into()))
    }

    fn finish(&self) -> Result<(), SpecError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(t.col, SpecErrorKind::Trailing(t.text.to_string()))),
        }
    }
}

const KEYWORDS: [&str; 14] = [
    "field", "space", "dim", "parity", "bracket", "cifset", "on", "default", "entry", "deg", "map", "kind", "rows",
    "->",
];

struct RawSpace {
    name: String,
    line: usize,
    col: usize,
    parity: Vec<Parity>,
    brackets: Vec<(usize, usize, Vec<Scalar>)>,
}

struct RawSet {
    name: String,
    space: usize,
    line: usize,
    col: usize,
    default: CifDegree,
    entries: Vec<(Vector, CifDegree)>,
    seen: HashMap<Vector, ()>,
}

struct RawMap {
    name: String,
    source: usize,
    target: usize,
    kind: MapKind,
    rows: Vec<Vector>,
    line: usize,
    col: usize,
}

#[derive(Default)]
struct Builder {
    field: Option<PrimeField>,
    spaces: Vec<RawSpace>,
    sets: Vec<RawSet>,
    maps: Vec<RawMap>,
}

impl Builder {
    fn field(&self, line: &Line<'_>) -> Result<PrimeField, SpecError> {
        self.field.ok_or_else(|| line.err(1, SpecErrorKind::MissingField))
    }

    fn space_index(&self, line: &Line<'_>, name: &str, col: usize) -> Result<usize, SpecError> {
        self.spaces.iter().position(|s| s.name == name).ok_or_else(|| {
            line.err(
                col,
                SpecErrorKind::UnknownName {
                    kind: "space",
                    name: name.to_string(),
                },
            )
        })
    }

    fn statement(&mut self, line: &mut Line<'_>) -> Result<(), SpecError> {
        let head = line.next("a statement")?;
        let (head_col, head) = (head.col, head.text);
        match head {
            "field" => {
                if self.field.is_some() {
                    return Err(line.err(head_col, SpecErrorKind::DuplicateField));
                }
                let (p, col) = line.int("a prime")?;
                let p = u32::try_from(p).unwrap_or(u32::MAX);
                self.field = Some(PrimeField::new(p).map_err(|e| line.err(col, e.into()))?);
            }
            "space" => {
                self.field(line)?;
                let (name, col) = line.name()?;
                if self.spaces.iter().any(|s| s.name == name) {
                    return Err(line.err(col, SpecErrorKind::DuplicateName { kind: "space", name }));
                }
                line.keyword("dim")?;
                let (dim, dcol) = line.int("a dimension")?;
                let dim = usize::try_from(dim).unwrap_or(usize::MAX);
                if !(1..=cifsuper_core::superalgebra::MAX_DIM).contains(&dim) {
                    return Err(line.err(dcol, AlgebraError::InvalidDimension(dim).into()));
                }
                line.keyword("parity")?;
                let mut parity = Vec::with_capacity(dim);
                while parity.len() < dim {
                    let t = line.next("a parity bit")?;
                    let bit = match t.text {
                        "0" => Parity::Even,
                        "1" => Parity::Odd,
                        other => {
                            let (c, found) = (t.col, other.to_string());
                            return Err(line.err(
                                c,
                                SpecErrorKind::Unexpected {
                                    expected: "a parity bit",
                                    found,
                                },
                            ));
                        }
                    };
                    parity.push(bit);
                }
                self.spaces.push(RawSpace {
                    name,
                    line: line.no,
                    col,
                    parity,
                    brackets: Vec::new(),
                });
            }
            "bracket" => {
                let field = self.field(line)?;
                let (name, col) = line.name()?;
                let s = self.space_index(line, &name, col)?;
                let n = self.spaces[s].parity.len();
                let (i, icol) = line.int("an index")?;
                let (j, _) = line.int("an index")?;
                let (i, j) = (i as usize, j as usize);
                if i > j {
                    return Err(line.err(icol, SpecErrorKind::BracketOrder));
                }
                if j >= n {
                    return Err(line.err(icol, AlgebraError::IndexOutOfRange { index: j, dim: n }.into()));
                }
                if self.spaces[s].brackets.iter().any(|b| (b.0, b.1) == (i, j)) {
                    return Err(line.err(icol, SpecErrorKind::DuplicateBracket(i, j)));
                }
                line.keyword("->")?;
                let c = line.peek().map_or(line.end, |t| t.col);
                let coeffs = line.scalars(field, n, c)?;
                self.spaces[s].brackets.push((i, j, coeffs));
            }
            "cifset" => {
                let field = self.field(line)?;
                let (name, col) = line.name()?;
                if self.sets.iter().any(|s| s.name == name) {
                    return Err(line.err(col, SpecErrorKind::DuplicateName { kind: "cifset", name }));
                }
                line.keyword("on")?;
                let (space, scol) = line.name()?;
                let s = self.space_index(line, &space, scol)?;
                let size = usize::from(field.modulus()).pow(self.spaces[s].parity.len() as u32);
                if size > MAX_SET_CARRIER {
                    return Err(line.err(
                        scol,
                        SpecErrorKind::CarrierTooLarge {
                            size,
                            cap: MAX_SET_CARRIER,
                        },
                    ));
                }
                line.keyword("default")?;
                let default = line.cif_degree()?;
                self.sets.push(RawSet {
                    name,
                    space: s,
                    line: line.no,
                    col,
                    default,
                    entries: Vec::new(),
                    seen: HashMap::new(),
                });
            }
            "entry" => {
                let field = self.field(line)?;
                let (name, col) = line.name()?;
                let k = self.sets.iter().position(|s| s.name == name).ok_or_else(|| {
                    line.err(
                        col,
                        SpecErrorKind::UnknownName {
                            kind: "cifset",
                            name: name.clone(),
                        },
                    )
                })?;
                let n = self.spaces[self.sets[k].space].parity.len();
                let vcol = line.peek().map_or(line.end, |t| t.col);
                let v = Vector::from_coords(&line.scalars(field, n, vcol)?);
                line.keyword("deg")?;
                let d = line.cif_degree()?;
                if v.is_zero() && d != CifDegree::PINNED {
                    return Err(line.err(vcol, CifError::ZeroPinViolated.into()));
                }
                let set = &mut self.sets[k];
                if set.seen.insert(v, ()).is_some() {
                    return Err(line.err(vcol, CifError::DuplicateEntry.into()));
                }
                set.entries.push((v, d));
            }
            "map" => {
                let field = self.field(line)?;
                let (name, col) = line.name()?;
                if self.maps.iter().any(|m| m.name == name) {
                    return Err(line.err(col, SpecErrorKind::DuplicateName { kind: "map", name }));
                }
                let (src, scol) = line.name()?;
                let source = self.space_index(line, &src, scol)?;
                line.keyword("->")?;
                let (tgt, tcol) = line.name()?;
                let target = self.space_index(line, &tgt, tcol)?;
                line.keyword("kind")?;
                let t = line.next("plain or anti")?;
                let kind = match t.text {
                    "plain" => MapKind::Plain,
                    "anti" => MapKind::AntiHomomorphism,
                    other => {
                        let (c, found) = (t.col, other.to_string());
                        return Err(line.err(
                            c,
                            SpecErrorKind::Unexpected {
                                expected: "plain or anti",
                                found,
                            },
                        ));
                    }
                };
                line.keyword("rows")?;
                let (rows_n, cols_n) = (self.spaces[source].parity.len(), self.spaces[target].parity.len());
                let mut rows = Vec::with_capacity(rows_n);
                for r in 0..rows_n {
                    if r > 0 {
                        line.keyword("/")?;
                    }
                    let c = line.peek().map_or(line.end, |t| t.col);
                    rows.push(Vector::from_coords(&line.scalars(field, cols_n, c)?));
                }
                self.maps.push(RawMap {
                    name,
                    source,
                    target,
                    kind,
                    rows,
                    line: line.no,
                    col,
                });
            }
            other => {
                return Err(line.err(head_col, SpecErrorKind::UnknownStatement(other.to_string())));
            }
        }
        line.finish()
    }

    fn build(self, last_line: usize) -> Result<Workspace, SpecError> {
        let at = |line: usize, column: usize, kind: SpecErrorKind| SpecError { line, column, kind };
        let field = self
            .field
            .ok_or_else(|| at(last_line.max(1), 1, SpecErrorKind::MissingField))?;
        let mut spaces = Vec::with_capacity(self.spaces.len());
        for raw in self.spaces {
            let alg = Superalgebra::from_upper_triangle(field, raw.parity, raw.brackets)
                .map_err(|e| at(raw.line, raw.col, e.into()))?;
            let report = alg.validate();
            if let Some(v) = report.violations.first() {
                return Err(at(raw.line, raw.col, SpecErrorKind::Axiom(v.to_string())));
            }
            spaces.push((raw.name, Arc::new(alg)));
        }
        let mut sets = Vec::with_capacity(self.sets.len());
        for raw in self.sets {
            let (name, alg) = &spaces[raw.space];
            let set =
                CifSet::new(alg.clone(), raw.entries, raw.default).map_err(|e| at(raw.line, raw.col, e.into()))?;
            sets.push(NamedSet {
                name: raw.name,
                space: name.clone(),
                set,
            });
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for raw in self.maps {
            let (src, tgt) = (&spaces[raw.source], &spaces[raw.target]);
            let map = GradedMap::new(src.1.clone(), tgt.1.clone(), raw.rows, raw.kind)
                .map_err(|e| at(raw.line, raw.col, e.into()))?;
            if let Some(v) = map.validate().violations.first() {
                return Err(at(raw.line, raw.col, SpecErrorKind::Map(v.to_string())));
            }
            maps.push(NamedMap {
                name: raw.name,
                source: src.0.clone(),
                target: tgt.0.clone(),
                map,
            });
        }
        Ok(Workspace {
            field,
            spaces,
            sets,
            maps,
        })
    }
}

pub fn parse_spec(text: &str) -> Result<Workspace, SpecError> {
    let mut b = Builder::default();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let mut line = Line::new(i + 1, raw);
        last = i + 1;
        if line.is_blank() {
            continue;
        }
        b.statement(&mut line)?;
    }
    b.build(last)
}

/// As [`parse_spec`] for raw bytes; invalid UTF-8 is located by line.
pub fn parse_spec_bytes(bytes: &[u8]) -> Result<Workspace, SpecError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_spec(text),
        Err(e) => {
            let prefix = &bytes[..e.valid_up_to()];
            let line = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
            let start = prefix.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
            let column = String::from_utf8_lossy(&prefix[start..]).chars().count() + 1;
            Err(SpecError {
                line,
                column,
                kind: SpecErrorKind::Utf8,
            })
        }
    }
}

fn write_degree(out: &mut String, d: CifDegree) {
    let (m, n) = (d.mem(), d.non());
    let _ = write!(out, "{} {} {} {}", m.r, m.w, n.r, n.w);
}

fn write_coords(out: &mut String, v: &Vector) {
    for (i, c) in v.coords().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{c}");
    }
}

/// Most frequent value off zero; ties go to the smallest lexicographic key.
fn canonical_default(set: &CifSet) -> CifDegree {
    let mut counts: Vec<(CifDegree, usize)> = Vec::new();
    for &d in &set.table()[1..] {
        match counts.iter_mut().find(|(c, _)| *c == d) {
            Some((_, n)) => *n += 1,
            None => counts.push((d, 1)),
        }
    }
    counts
        .into_iter()
        .max_by(|(a, na), (b, nb)| na.cmp(nb).then_with(|| b.lex_key().cmp(&a.lex_key())))
        .map_or(CifDegree::ABSENT, |(d, _)| d)
}

/// Canonical text: field, spaces with their nonzero brackets, sets with
/// entries that differ from the most common value, then maps.
pub fn serialize(ws: &Workspace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", ws.field.modulus());
    for (name, alg) in &ws.spaces {
        let _ = write!(out, "space {name} dim {} parity", alg.dim());
        for p in alg.parities() {
            let _ = write!(out, " {}", p.bit());
        }
        out.push('\n');
        let n = alg.dim();
        for i in 0..n {
            for j in i..n {
                let coeffs: Vec<Scalar> = (0..n).map(|k| alg.constant(i, j, k)).collect();
                if coeffs.iter().any(|&c| c != 0) {
                    let _ = write!(out, "bracket {name} {i} {j} -> ");
                    write_coords(&mut out, &Vector::from_coords(&coeffs));
                    out.push('\n');
                }
            }
        }
    }
    for s in &ws.sets {
        let default = canonical_default(&s.set);
        let _ = write!(out, "cifset {} on {} default ", s.name, s.space);
        write_degree(&mut out, default);
        out.push('\n');
        let alg = s.set.algebra();
        for (i, &d) in s.set.table().iter().enumerate().skip(1) {
            if d != default {
                let _ = write!(out, "entry {} ", s.name);
                write_coords(&mut out, &alg.vector_at(i));
                out.push_str(" deg ");
                write_degree(&mut out, d);
                out.push('\n');
            }
        }
    }
    for m in &ws.maps {
        let kind = match m.map.kind() {
            MapKind::Plain => "plain",
            MapKind::AntiHomomorphism => "anti",
        };
        let _ = write!(out, "map {} {} -> {} kind {kind} rows ", m.name, m.source, m.target);
        for (i, row) in m.map.images().iter().enumerate() {
            if i > 0 {
                out.push_str(" / ");
            }
            write_coords(&mut out, row);
        }
        out.push('\n');
    }
    out
}
