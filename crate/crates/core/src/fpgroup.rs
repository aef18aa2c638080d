//! Finitely presented groups: words, a text format for presentations and a
//! Todd-Coxeter coset enumerator (HLT strategy with compaction).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{Perm, PermError, PermGroup};

/// Default limit on simultaneously live cosets.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// Exponents larger than this in presentation text are refused.
const MAX_EXPONENT: u64 = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: u32, inv: bool) -> Letter {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }

    /// Column of the coset table for this letter.
    #[inline]
    pub fn column(self) -> usize {
        2 * self.gen as usize + self.inv as usize
    }
}

/// A word over generator indices. Words are kept as written; use
/// [`Word::reduced`] for the freely reduced form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: u32) -> Word {
        Word(vec![Letter::new(g, false)])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// `by^-1 self by`
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn cyclically_reduced(&self) -> Word {
        let w = self.reduced().0;
        let mut i = 0;
        let mut j = w.len();
        while j > i + 1 && w[i] == w[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    /// Least word among the cyclic rotations of the word and its inverse.
    fn cyclic_canonical(&self) -> Word {
        let inv = self.inverse();
        let n = self.len();
        let mut best = self.clone();
        for w in [self, &inv] {
            for r in 0..n {
                let rot: Vec<Letter> = w.0[r..].iter().chain(&w.0[..r]).copied().collect();
                if rot < best.0 {
                    best = Word(rot);
                }
            }
        }
        best
    }

    /// Evaluates the word with the given generator images.
    pub fn evaluate(&self, images: &[Perm], degree: usize) -> Perm {
        self.0.iter().fold(Perm::identity(degree), |acc, l| {
            let g = &images[l.gen as usize];
            if l.inv {
                acc.mul(&g.inverse())
            } else {
                acc.mul(g)
            }
        })
    }

    /// Renders with the given generator names; runs of a letter become powers.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            let name = &names[l.gen as usize];
            parts.push(match (l.inv, run) {
                (false, 1) => name.clone(),
                (false, n) => format!("{name}^{n}"),
                (true, n) => format!("{name}^-{n}"),
            });
            i += run;
        }
        parts.join(" ")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {relator} uses generator index {gen} but only {count} generators are declared")]
    UndeclaredGenerator { relator: usize, gen: u32, count: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !valid_name(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.gen as usize >= generators.len()) {
                return Err(PresentationError::UndeclaredGenerator {
                    relator: i,
                    gen: l.gen,
                    count: generators.len(),
                });
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g == name).map(|i| i as u32)
    }

    pub fn render(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generators)).collect();
        format!("< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("malformed exponent")]
    MalformedExponent,
    #[error("unbalanced brackets")]
    UnbalancedBrackets,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
        let column = pos - before.iter().rposition(|&c| c == b'\n').map_or(0, |i| i + 1) + 1;
        ParseError { kind, line, column }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Expected(what)))
        }
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return None,
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Some((start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn presentation(&mut self) -> Result<Presentation, ParseError> {
        self.expect(b'<', "'<'")?;
        let mut gens = Vec::new();
        if !matches!(self.peek(), Some(b'|') | Some(b'>')) {
            loop {
                let (pos, name) = self.ident().ok_or_else(|| self.error(ParseErrorKind::Expected("generator name")))?;
                if gens.contains(&name) {
                    return Err(self.error_at(pos, ParseErrorKind::Invalid(format!("duplicate generator {name:?}"))));
                }
                gens.push(name);
                if !self.eat(b',') {
                    break;
                }
            }
        }
        self.names = gens.clone();
        let mut relators = Vec::new();
        if self.eat(b'|') && self.peek() != Some(b'>') {
            loop {
                let lhs = self.word()?;
                let rel = if self.eat(b'=') { lhs.concat(&self.word()?.inverse()) } else { lhs };
                relators.push(rel);
                if !self.eat(b',') {
                    break;
                }
            }
        }
        match self.peek() {
            Some(b'>') => self.pos += 1,
            Some(b')') | Some(b']') | None => return Err(self.error(ParseErrorKind::UnbalancedBrackets)),
            Some(_) => return Err(self.error(ParseErrorKind::Expected("',' or '>'"))),
        }
        if self.peek().is_some() {
            return Err(self.error(ParseErrorKind::Expected("end of input")));
        }
        Ok(Presentation::new(gens, relators).expect("parser validates names"))
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' || c == b'[' || c == b'1')
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if !self.starts_factor() {
            return Err(self.error(ParseErrorKind::Expected("a word")));
        }
        let mut w = Word::empty();
        loop {
            w = w.concat(&self.factor()?);
            self.eat(b'*');
            if !self.starts_factor() {
                break;
            }
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let mut w = self.atom()?;
        while self.eat(b'^') {
            match self.peek() {
                Some(b'-') | Some(b'0'..=b'9') => {
                    let n = self.integer()?;
                    w = w.pow(n);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' || c == b'[' => {
                    let by = self.atom()?;
                    w = w.conjugate(&by);
                }
                _ => return Err(self.error(ParseErrorKind::MalformedExponent)),
            }
        }
        Ok(w)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error_at(start, ParseErrorKind::MalformedExponent));
        }
        if matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphabetic() || *c == b'_') {
            return Err(self.error_at(start, ParseErrorKind::MalformedExponent));
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).expect("ascii digits");
        match text.parse::<u64>() {
            Ok(n) if n <= MAX_EXPONENT => Ok(if neg { -(n as i64) } else { n as i64 }),
            _ => Err(self.error_at(start, ParseErrorKind::MalformedExponent)),
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(b')') {
                    return Err(self.error(ParseErrorKind::UnbalancedBrackets));
                }
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut w = self.word()?;
                let mut args = 1;
                while self.eat(b',') {
                    let next = self.word()?;
                    w = Word::commutator(&w, &next);
                    args += 1;
                }
                if !self.eat(b']') {
                    return Err(self.error(ParseErrorKind::UnbalancedBrackets));
                }
                if args < 2 {
                    return Err(self.error(ParseErrorKind::Invalid("commutator needs at least two entries".into())));
                }
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                if matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == b'_') {
                    return Err(self.error_at(self.pos - 1, ParseErrorKind::UnknownSymbol("1".into())));
                }
                Ok(Word::empty())
            }
            Some(b')') | Some(b']') | Some(b'>') => Err(self.error(ParseErrorKind::UnbalancedBrackets)),
            Some(_) => {
                let (pos, name) = self.ident().ok_or_else(|| {
                    let c = self.src[self.pos] as char;
                    self.error(ParseErrorKind::UnknownSymbol(c.to_string()))
                })?;
                let (gen, len) = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| name.starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len())
                    .map(|(i, n)| (i, n.len()))
                    .ok_or_else(|| self.error_at(pos, ParseErrorKind::UnknownSymbol(name.clone())))?;
                // an undeclared identifier is read as juxtaposed declared
                // names, longest first: `ab^2` is `a b^2`
                self.pos = pos + len;
                Ok(Word::gen(gen as u32))
            }
            None => Err(self.error(ParseErrorKind::UnbalancedBrackets)),
        }
    }
}

/// Parses `< g1, g2, ... | w1, w2, ... >`. Words juxtapose factors; a factor
/// is a generator, `1`, `(w)` or a left-normed commutator `[x, y, ...]`,
/// optionally followed by `^n` (integer power) or `^x` (conjugation `x^-1 w x`).
/// A relator may be written as an equation `u = v`.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, names: Vec::new() };
    p.presentation()
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, names: generators.to_vec() };
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.error(ParseErrorKind::Expected("end of input")));
    }
    Ok(w)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("coset capacity exceeded: {defined} cosets defined, at most {max} may be live")]
    CapacityExceeded { defined: u64, max: usize },
    #[error("max_cosets must be at least 1")]
    ZeroCapacity,
    #[error("subgroup word mentions generator index {0}, which is not declared")]
    BadSubgroupWord(u32),
    #[error("coset table is incomplete")]
    Incomplete,
    #[error("completed table failed the relator audit at coset {coset}")]
    AuditFailed { coset: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableStatus {
    Complete,
    CapacityExceeded,
}

/// A coset table. Columns are ordered `g0, g0^-1, g1, g1^-1, ...`; row 0 is
/// the subgroup coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    num_generators: usize,
    data: Vec<u32>,
    status: TableStatus,
    regular: bool,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    status: TableStatus,
    generators: usize,
    rows: Vec<Vec<Option<u32>>>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        // with no generators the table is the single coset of the whole group
        self.data.len().checked_div(2 * self.num_generators).unwrap_or(1)
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Image of coset `c` under a column, if defined.
    pub fn get(&self, c: usize, col: usize) -> Option<u32> {
        let v = self.data[c * 2 * self.num_generators + col];
        (v != UNDEF).then_some(v)
    }

    pub fn rows(&self) -> Vec<Vec<Option<u32>>> {
        let cols = 2 * self.num_generators;
        (0..self.num_cosets())
            .map(|c| (0..cols).map(|x| self.get(c, x)).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson { status: self.status, generators: self.num_generators, rows: self.rows() })
            .expect("table serializes")
    }

    /// Loads a table from JSON. The result is marked complete only if it is
    /// total and every row is a consistent pair of inverse columns.
    pub fn from_json(value: &serde_json::Value) -> Result<CosetTable, serde_json::Error> {
        let t: TableJson = serde_json::from_value(value.clone())?;
        let cols = 2 * t.generators;
        let n = t.rows.len();
        let mut data = Vec::with_capacity(n * cols);
        let mut total = n > 0;
        for row in &t.rows {
            if row.len() != cols {
                return Err(serde::de::Error::custom("row length does not match generator count"));
            }
            for v in row {
                match v {
                    Some(x) if (*x as usize) < n => data.push(*x),
                    Some(_) => return Err(serde::de::Error::custom("coset index out of range")),
                    None => {
                        total = false;
                        data.push(UNDEF);
                    }
                }
            }
        }
        let mut table = CosetTable { num_generators: t.generators, data, status: TableStatus::CapacityExceeded, regular: false };
        if total && t.status == TableStatus::Complete && table.columns_consistent() {
            table.status = TableStatus::Complete;
        }
        Ok(table)
    }

    fn columns_consistent(&self) -> bool {
        (0..self.num_cosets()).all(|c| {
            (0..2 * self.num_generators).all(|x| match self.get(c, x) {
                Some(d) => self.get(d as usize, x ^ 1) == Some(c as u32),
                None => true,
            })
        })
    }

    /// Follows `w` from coset `c`; `None` if some entry is undefined.
    pub fn trace(&self, c: usize, w: &Word) -> Option<usize> {
        let mut c = c;
        for l in w.letters() {
            c = self.get(c, l.column())? as usize;
        }
        Some(c)
    }

    /// Checks that every relator closes at every coset.
    pub fn audit(&self, relators: &[Word]) -> Result<(), usize> {
        for c in 0..self.num_cosets() {
            for r in relators {
                if self.trace(c, r) != Some(c) {
                    return Err(c);
                }
            }
        }
        Ok(())
    }
}

/// Permutation action of the generators on the cosets. Returns the group and
/// the permutation of each presentation generator (the group's generators,
/// in the same order).
pub fn regular_representation(table: &CosetTable) -> Result<(PermGroup, Vec<Perm>), EnumError> {
    if !table.is_complete() {
        return Err(EnumError::Incomplete);
    }
    let n = table.num_cosets();
    let perms: Vec<Perm> = (0..table.num_generators)
        .map(|g| {
            let images = (0..n).map(|c| table.get(c, 2 * g).expect("complete table")).collect();
            Perm::from_images(images)
        })
        .collect::<Result<_, _>>()?;
    let group = if table.regular {
        PermGroup::from_semiregular_generators(n, perms.clone())?
    } else {
        PermGroup::with_degree(n, perms.clone())?
    };
    Ok((group, perms))
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    defined: u64,
    max: usize,
    queue: Vec<u32>,
}

enum Scan {
    Done,
    Full,
}

impl Enumerator {
    fn new(cols: usize, max: usize) -> Enumerator {
        Enumerator { cols, table: vec![UNDEF; cols], parent: vec![0], live: 1, defined: 1, max, queue: Vec::new() }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Option<u32> {
        if self.allocated() >= self.max {
            return None;
        }
        let d = self.allocated() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.live += 1;
        self.defined += 1;
        Some(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, UNDEF);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let e1x = self.get(e1, x);
                if e1x != UNDEF {
                    self.merge(f1, e1x);
                } else {
                    let f1x = self.get(f1, x ^ 1);
                    if f1x != UNDEF {
                        self.merge(e1, f1x);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, w: &[usize]) -> Scan {
        if w.is_empty() {
            return Scan::Done;
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j {
                let n = self.get(f, w[i]);
                if n == UNDEF {
                    break;
                }
                f = n;
                i += 1;
            }
            if i > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Scan::Done;
            }
            while j >= i {
                let n = self.get(b, w[j] ^ 1);
                if n == UNDEF {
                    break;
                }
                b = n;
                if j == 0 {
                    // whole word traced backward: i must be 0 here
                    self.coincidence(f, b);
                    return Scan::Done;
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Scan::Done;
            }
            if i == j {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Scan::Done;
            }
            if self.define(f, w[i]).is_none() {
                return Scan::Full;
            }
        }
    }

    /// Renumbers live cosets consecutively, keeping their relative order.
    /// Returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.allocated();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n as u32 {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.cols {
                let v = self.get(c, x);
                table.push(if v == UNDEF { UNDEF } else { map[self.rep(v) as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }

    /// Breadth-first renumbering from coset 0 over the column order. The
    /// table must be complete and compacted.
    fn canonical(&self) -> Vec<u32> {
        let n = self.allocated();
        let mut map = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        map[0] = 0;
        order.push(0u32);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for x in 0..self.cols {
                let d = self.get(c, x);
                if map[d as usize] == UNDEF {
                    map[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut table = Vec::with_capacity(n * self.cols);
        for &c in &order {
            for x in 0..self.cols {
                table.push(map[self.get(c, x) as usize]);
            }
        }
        table
    }
}

fn to_columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Relators prepared for enumeration: cyclically reduced, duplicates up to
/// rotation and inversion removed, shortest first.
fn prepare_relators(relators: &[Word]) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out: Vec<(Word, Word)> = Vec::new();
    for r in relators {
        let w = r.cyclically_reduced();
        if w.is_empty() {
            continue;
        }
        let key = w.cyclic_canonical();
        if seen.insert(key.clone()) {
            out.push((key, w));
        }
    }
    out.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.0.cmp(&b.0)));
    out.into_iter().map(|(_, w)| w).collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`. At most `max_cosets` cosets are live at any time.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, EnumError> {
    if max_cosets == 0 {
        return Err(EnumError::ZeroCapacity);
    }
    let ngens = p.generators().len();
    for w in subgroup {
        if let Some(l) = w.letters().iter().find(|l| l.gen as usize >= ngens) {
            return Err(EnumError::BadSubgroupWord(l.gen));
        }
    }
    let subgroup_words: Vec<Word> = subgroup.iter().map(Word::reduced).filter(|w| !w.is_empty()).collect();
    let regular = subgroup_words.is_empty();
    let cols = 2 * ngens;
    if cols == 0 {
        return Ok(CosetTable { num_generators: 0, data: Vec::new(), status: TableStatus::Complete, regular });
    }
    let relators = prepare_relators(p.relators());
    let rel_cols: Vec<Vec<usize>> = relators.iter().map(to_columns).collect();
    let sub_cols: Vec<Vec<usize>> = subgroup_words.iter().map(to_columns).collect();

    let mut en = Enumerator::new(cols, max_cosets);
    let full = |en: &Enumerator| EnumError::CapacityExceeded { defined: en.defined, max: max_cosets };

    // subgroup generators at coset 0, retried after compaction if needed
    let mut k = 0;
    while k < sub_cols.len() {
        match en.scan_and_fill(0, &sub_cols[k]) {
            Scan::Done => k += 1,
            Scan::Full => {
                if en.live >= max_cosets {
                    return Err(full(&en));
                }
                en.compact();
            }
        }
    }

    let mut alpha: u32 = 0;
    'outer: while (alpha as usize) < en.allocated() {
        if en.is_live(alpha) {
            let mut r = 0;
            while r < rel_cols.len() {
                if !en.is_live(alpha) {
                    break;
                }
                match en.scan_and_fill(alpha, &rel_cols[r]) {
                    Scan::Done => r += 1,
                    Scan::Full => {
                        if en.live >= max_cosets {
                            return Err(full(&en));
                        }
                        let map = en.compact();
                        let mapped = map[alpha as usize];
                        if mapped == UNDEF {
                            // current coset died; continue with the next live one
                            alpha = map[alpha as usize..].iter().copied().find(|&m| m != UNDEF).unwrap_or(en.allocated() as u32);
                            continue 'outer;
                        }
                        alpha = mapped;
                    }
                }
            }
            if en.is_live(alpha) {
                let mut x = 0;
                while x < cols {
                    if en.get(alpha, x) == UNDEF && en.define(alpha, x).is_none() {
                        if en.live >= max_cosets {
                            return Err(full(&en));
                        }
                        let map = en.compact();
                        alpha = map[alpha as usize];
                        continue;
                    }
                    x += 1;
                }
            }
        }
        alpha += 1;
    }

    en.compact();
    let data = en.canonical();
    let table = CosetTable { num_generators: ngens, data, status: TableStatus::Complete, regular };
    if let Err(coset) = table.audit(&relators) {
        return Err(EnumError::AuditFailed { coset });
    }
    if subgroup_words.iter().any(|w| table.trace(0, w) != Some(0)) {
        return Err(EnumError::AuditFailed { coset: 0 });
    }
    if !table.columns_consistent() {
        return Err(EnumError::AuditFailed { coset: 0 });
    }
    Ok(table)
}

/// Presentation with one generator per element of a finite group and the
/// full multiplication table as relators. Element 0 must be the identity
/// and is not a generator.
pub fn cayley_presentation(names: &[String], mul: impl Fn(usize, usize) -> usize) -> Presentation {
    let n = names.len();
    let gens: Vec<String> = names[1..].to_vec();
    let word = |e: usize| if e == 0 { Word::empty() } else { Word::gen(e as u32 - 1) };
    let mut relators = Vec::new();
    for a in 1..n {
        for b in 1..n {
            relators.push(word(a).concat(&word(b)).concat(&word(mul(a, b)).inverse()));
        }
    }
    Presentation::new(gens, relators).expect("generated names are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a3 = p("< a | a^3 >");
        assert_eq!(a3.generators().len(), 1);
        assert_eq!(a3.relators()[0].len(), 3);
        let d = p("< a,b | a^2, b^2, (a b)^2 >");
        assert_eq!(d.generators().len(), 2);
        assert_eq!(d.relators().len(), 3);
        let c = p("< a,b | [a,b] >");
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert_eq!(c.relators()[0].letters(), &[a.inverse(), b.inverse(), a, b]);
    }

    #[test]
    fn parse_sugar() {
        let q = p("< a, b | a^b = a^-1, ab^-1 >");
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        // b^-1 a b a
        assert_eq!(q.relators()[0].letters(), &[b.inverse(), a, b, a]);
        assert_eq!(q.relators()[1].letters(), &[a, b.inverse()]);
        let t = p("< x, y | [x, y, x], 1, (x y^2)^-1 >");
        assert_eq!(t.relators()[0].reduced(), Word::commutator(&Word::commutator(&Word::gen(0), &Word::gen(1)), &Word::gen(0)).reduced());
        assert!(t.relators()[1].is_empty());
        assert_eq!(t.relators()[2].len(), 3);
        let long = p("< ab, a | ab a >");
        assert_eq!(long.relators()[0].letters(), &[Letter::new(0, false), Letter::new(1, false)]);
        assert_eq!(p("< a | >").relators().len(), 0);
        assert_eq!(p("<>").generators().len(), 0);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_presentation("< a | a^3, c >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("c".into()));
        assert_eq!((e.line, e.column), (1, 12));
        let e = parse_presentation("< a |\n  a^x2 >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("x2".into()));
        assert_eq!(e.line, 2);
        let e = parse_presentation("< a | a^ >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedExponent);
        let e = parse_presentation("< a | a^-  >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedExponent);
        let e = parse_presentation("< a | a^99999999999 >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedExponent);
        let e = parse_presentation("< a | (a a >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedBrackets);
        let e = parse_presentation("< a | [a, a >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedBrackets);
        let e = parse_presentation("< a | a) >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedBrackets);
        let e = parse_presentation("< a | a").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedBrackets);
    }

    #[test]
    fn render_round_trip() {
        for text in ["< a | a^3 >", "< a,b | a^2, b^2, (a b)^2 >", "< x, y | [x,y]^x, x^-3 y y >", "< a | 1 >"] {
            let pres = p(text);
            assert_eq!(p(&pres.render()), pres, "{text}");
        }
    }

    #[test]
    fn word_reduction() {
        let w = parse_word("a b b^-1 a^-1 a", &["a".into(), "b".into()]).unwrap();
        assert_eq!(w.reduced(), Word::gen(0));
        let w = parse_word("b a b^-1", &["a".into(), "b".into()]).unwrap();
        assert_eq!(w.cyclically_reduced(), Word::gen(0));
    }

    #[test]
    fn enumerate_examples() {
        let t = todd_coxeter(&p("< a | a^3 >"), &[], 100).unwrap();
        assert_eq!(t.num_cosets(), 3);
        let (g, _) = regular_representation(&t).unwrap();
        assert_eq!(g.order(), 3);

        let t = todd_coxeter(&p("< a,b | a^2, b^3, (a b)^2 >"), &[], 100).unwrap();
        assert_eq!(t.num_cosets(), 6);
        let (g, _) = regular_representation(&t).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.derived_subgroup().order(), 3);

        let err = todd_coxeter(&p("< a | >"), &[], 100).unwrap_err();
        assert!(matches!(err, EnumError::CapacityExceeded { max: 100, .. }));

        let t = todd_coxeter(&p("< a, b | a, b^5, b^3 >"), &[], 10).unwrap();
        assert_eq!(t.num_cosets(), 1);
        assert!(regular_representation(&t).unwrap().0.is_trivial());
    }

    #[test]
    fn enumerate_with_subgroup() {
        let pres = p("< a,b | a^2, b^3, (a b)^2 >");
        let t = todd_coxeter(&pres, &[Word::gen(1)], 100).unwrap();
        assert_eq!(t.num_cosets(), 2);
        let (g, _) = regular_representation(&t).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn compaction_under_pressure() {
        // the index is 24 but HLT needs more room than that on this presentation
        let pres = p("< a, b | a^2, b^3, (a b)^4 >");
        let t = todd_coxeter(&pres, &[], 24).or_else(|_| todd_coxeter(&pres, &[], 40)).unwrap();
        assert_eq!(t.num_cosets(), 24);
        assert_eq!(todd_coxeter(&pres, &[], 1000).unwrap(), t);
    }

    #[test]
    fn incomplete_table_refused() {
        let json = serde_json::json!({"status": "complete", "generators": 1, "rows": [[1, null], [null, 0]]});
        let t = CosetTable::from_json(&json).unwrap();
        assert!(!t.is_complete());
        assert!(matches!(regular_representation(&t), Err(EnumError::Incomplete)));
        let ok = todd_coxeter(&p("< a | a^2 >"), &[], 10).unwrap();
        assert_eq!(CosetTable::from_json(&ok.to_json()).unwrap().rows(), ok.rows());
    }
}
