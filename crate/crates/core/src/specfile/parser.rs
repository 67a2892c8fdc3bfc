use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{
    AlgebraSpecDoc, BracketRule, CocycleDecl, EntryDecl, FamilyDecl, FormDecl, GenPattern,
    IndexPattern, LinearCondition, Located, Poly, RuleTerm, Var,
};
use crate::algebra::{Convention, Element, GeneratorId, IndexKind, Parity};
use crate::linalg::{fmt_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<String>, found: String },
    Semantic(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::Semantic(msg) => f.write_str(msg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Sym(s) => write!(f, "'{s}'"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

const SYMBOLS: [&str; 11] = ["=>", "+", "-", "*", "/", "^", "(", ")", "[", "]", "="];

fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("digits")),
                col,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            out.push(Token {
                tok: Tok::Sym(sym),
                col,
            });
            i += sym.len();
            continue;
        }
        return Err(ParseError {
            line,
            col,
            kind: ParseErrorKind::Syntax {
                expected: vec!["a token".into()],
                found: format!("'{c}'"),
            },
        });
    }
    Ok(out)
}

const RESERVED: [&str; 3] = ["m", "n", "when"];

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col(),
            kind: ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: self
                    .peek()
                    .map_or_else(|| "end of line".to_string(), ToString::to_string),
            },
        }
    }

    fn semantic_at(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col,
            kind: ParseErrorKind::Semantic(msg.into()),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &'static str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{s}'")]))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_ident(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[&format!("'{kw}'")]))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s.clone(), col))
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn expect_one_of(&mut self, options: &[&str]) -> Result<String, ParseError> {
        if let Some(Tok::Ident(s)) = self.peek() {
            if options.contains(&s.as_str()) {
                self.pos += 1;
                return Ok(s.clone());
            }
        }
        let quoted: Vec<String> = options.iter().map(|o| format!("'{o}'")).collect();
        let refs: Vec<&str> = quoted.iter().map(String::as_str).collect();
        Err(self.error(&refs))
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.error(&["end of line"]))
        }
    }

    fn expect_int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(n.clone())
            }
            _ => Err(self.error(&["an integer"])),
        }
    }

    /// `INT ['/' INT]`, unsigned.
    fn unsigned_rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.expect_int()?;
        if self.eat_sym("/") {
            let col = self.col();
            let den = self.expect_int()?;
            if den.is_zero() {
                return Err(self.semantic_at(col, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// `['+'|'-'] INT ['/' INT]`.
    fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        let negative = if self.eat_sym("-") {
            true
        } else {
            self.eat_sym("+");
            false
        };
        let v = self.unsigned_rational()?;
        Ok(if negative { -v } else { v })
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Int(_)) => true,
            Some(Tok::Sym("(")) => true,
            Some(Tok::Ident(s)) => s == "m" || s == "n",
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect_sym(")")?;
                Ok(p)
            }
            Some(Tok::Ident(s)) if s == "m" => {
                self.pos += 1;
                Ok(Poly::var(Var::M))
            }
            Some(Tok::Ident(s)) if s == "n" => {
                self.pos += 1;
                Ok(Poly::var(Var::N))
            }
            _ => Err(self.error(&["a number", "'m'", "'n'", "'('"])),
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat_sym("^") {
            let col = self.col();
            let e = self.expect_int()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.semantic_at(col, "exponent too large"))?;
            if e > 16 {
                return Err(self.semantic_at(col, "exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    /// Juxtaposed or `*`-joined factors, with `/ INT` division.
    fn product(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_sym("*") {
                acc = acc.mul(&self.factor()?);
            } else if self.is_sym("/") {
                self.pos += 1;
                let col = self.col();
                let d = self.expect_int()?;
                if d.is_zero() {
                    return Err(self.semantic_at(col, "division by zero"));
                }
                acc = acc.scale(&Rational::new(BigInt::one(), d));
            } else if self.starts_atom() {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_product(&mut self) -> Result<Poly, ParseError> {
        if self.eat_sym("-") {
            Ok(self.signed_product()?.neg())
        } else {
            self.eat_sym("+");
            self.product()
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.signed_product()?;
        loop {
            if self.eat_sym("+") {
                acc = acc.add(&self.product()?);
            } else if self.eat_sym("-") {
                acc = acc.add(&self.product()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    /// Coefficient of a rule term: an optional sign and juxtaposed factors,
    /// defaulting to 1.
    fn term_coefficient(&mut self) -> Result<Poly, ParseError> {
        let mut negative = false;
        while self.is_sym("-") || self.is_sym("+") {
            if self.eat_sym("-") {
                negative = !negative;
            } else {
                self.pos += 1;
            }
        }
        let p = if self.starts_atom() {
            self.product()?
        } else {
            Poly::constant(Rational::one())
        };
        Ok(if negative { p.neg() } else { p })
    }

    fn condition(&mut self) -> Result<LinearCondition, ParseError> {
        let col = self.col();
        let lhs = self.expr()?;
        self.expect_sym("=")?;
        let rhs = self.expr()?;
        let p = lhs.add(&rhs.neg());
        if p.degree() > 1 {
            return Err(self.semantic_at(col, "condition must be linear in m and n"));
        }
        Ok(LinearCondition(p))
    }

    /// `SYMBOL '[' index ']'`; returns the pattern and the symbol column.
    fn genpat(&mut self, allow_literal: bool) -> Result<(GenPattern, usize), ParseError> {
        let (family, col) = self.expect_ident("a family symbol")?;
        self.expect_sym("[")?;
        let index = match self.peek() {
            Some(Tok::Ident(s)) if s == "m" || s == "n" => {
                let var = if s == "m" { Var::M } else { Var::N };
                self.pos += 1;
                let offset = if self.eat_sym("+") {
                    self.unsigned_rational()?
                } else if self.eat_sym("-") {
                    -self.unsigned_rational()?
                } else {
                    Rational::zero()
                };
                IndexPattern::Var { var, offset }
            }
            Some(Tok::Int(_)) | Some(Tok::Sym("-")) | Some(Tok::Sym("+")) if allow_literal => {
                IndexPattern::Literal(self.signed_rational()?)
            }
            _ => {
                return Err(if allow_literal {
                    self.error(&["'m'", "'n'", "an index"])
                } else {
                    self.error(&["'m'", "'n'"])
                })
            }
        };
        self.expect_sym("]")?;
        Ok((GenPattern { family, index }, col))
    }

    /// `SYMBOL '[' RATIONAL ']'`.
    fn generator(&mut self) -> Result<(String, Rational, usize), ParseError> {
        let (family, col) = self.expect_ident("a family symbol")?;
        self.expect_sym("[")?;
        let idx = self.signed_rational()?;
        self.expect_sym("]")?;
        Ok((family, idx, col))
    }

    /// Result index `m+n[+offset]`.
    fn result_index(&mut self) -> Result<Rational, ParseError> {
        if !self.is_ident("m") {
            return Err(self.error(&["'m+n'"]));
        }
        self.pos += 1;
        self.expect_sym("+")?;
        if !self.is_ident("n") {
            return Err(self.error(&["'n'"]));
        }
        self.pos += 1;
        if self.eat_sym("+") {
            self.unsigned_rational()
        } else if self.eat_sym("-") {
            Ok(-self.unsigned_rational()?)
        } else {
            Ok(Rational::zero())
        }
    }
}

struct Parser {
    doc: Option<AlgebraSpecDoc>,
    family_cols: Vec<(String, IndexKind)>,
    rule_keys: HashSet<(String, String)>,
    entry_keys: HashSet<(GeneratorId, GeneratorId)>,
    product_keys: HashSet<(GeneratorId, GeneratorId)>,
    form_keys: HashSet<(GeneratorId, GeneratorId)>,
    cocycle_keys: HashSet<(String, GenPattern, GenPattern)>,
    basis_set: BTreeSet<GeneratorId>,
}

fn doubled(index: &Rational) -> Option<i64> {
    let d = index * int(2);
    if d.is_integer() {
        i64::try_from(d.to_integer()).ok()
    } else {
        None
    }
}

impl Parser {
    fn kind_of(&self, c: &Cursor, symbol: &str, col: usize) -> Result<IndexKind, ParseError> {
        self.family_cols
            .iter()
            .find(|(s, _)| s == symbol)
            .map(|(_, k)| *k)
            .ok_or_else(|| c.semantic_at(col, format!("undeclared family {symbol}")))
    }

    fn generator_id(
        &self,
        c: &Cursor,
        family: String,
        idx: Rational,
        col: usize,
    ) -> Result<GeneratorId, ParseError> {
        let kind = self.kind_of(c, &family, col)?;
        let d = doubled(&idx).ok_or_else(|| {
            c.semantic_at(col, format!("index {} is not a multiple of 1/2", fmt_rational(&idx)))
        })?;
        if !kind.admits(d) {
            return Err(c.semantic_at(
                col,
                format!(
                    "index {} does not fit {} family {family}",
                    fmt_rational(&idx),
                    kind.keyword()
                ),
            ));
        }
        let g = GeneratorId::new(family, d);
        if !self.basis_set.is_empty() && !self.basis_set.contains(&g) {
            return Err(c.semantic_at(col, format!("generator {g} is not in the basis")));
        }
        Ok(g)
    }

    fn check_pattern(
        &self,
        c: &Cursor,
        pat: &GenPattern,
        col: usize,
        var: Var,
    ) -> Result<(), ParseError> {
        let kind = self.kind_of(c, &pat.family, col)?;
        match &pat.index {
            IndexPattern::Var { var: v, offset } => {
                if *v != var {
                    return Err(c.semantic_at(
                        col,
                        format!("this position uses index variable {}", var.name()),
                    ));
                }
                let ok = match kind {
                    IndexKind::Integer => offset.is_integer(),
                    IndexKind::Half => {
                        doubled(offset).is_some_and(|d| d % 2 != 0)
                    }
                    IndexKind::Mixed => doubled(offset).is_some(),
                };
                if !ok {
                    return Err(c.semantic_at(
                        col,
                        format!(
                            "offset {} does not fit {} family {}",
                            fmt_rational(offset),
                            kind.keyword(),
                            pat.family
                        ),
                    ));
                }
            }
            IndexPattern::Literal(idx) => {
                let d = doubled(idx);
                if !d.is_some_and(|d| kind.admits(d)) {
                    return Err(c.semantic_at(
                        col,
                        format!(
                            "index {} does not fit {} family {}",
                            fmt_rational(idx),
                            kind.keyword(),
                            pat.family
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn line(&mut self, c: &mut Cursor) -> Result<(), ParseError> {
        let (kw, kw_col) = c.expect_ident("a keyword")?;
        if self.doc.is_none() {
            if kw != "algebra" {
                return Err(ParseError {
                    line: c.line,
                    col: kw_col,
                    kind: ParseErrorKind::Syntax {
                        expected: vec!["'algebra'".into()],
                        found: format!("'{kw}'"),
                    },
                });
            }
            let (name, _) = c.expect_ident("an algebra name")?;
            c.expect_keyword("convention")?;
            let conv = match c.expect_one_of(&["plain", "super"])?.as_str() {
                "plain" => Convention::Plain,
                _ => Convention::Super,
            };
            c.expect_end()?;
            self.doc = Some(AlgebraSpecDoc::new(name, conv));
            return Ok(());
        }
        let line = c.line;
        match kw.as_str() {
            "family" => {
                let (symbol, col) = c.expect_ident("a family symbol")?;
                if RESERVED.contains(&symbol.as_str()) {
                    return Err(c.semantic_at(col, format!("'{symbol}' is reserved")));
                }
                if self.family_cols.iter().any(|(s, _)| *s == symbol) {
                    return Err(c.semantic_at(col, format!("family {symbol} declared twice")));
                }
                let kind = match c.expect_one_of(&["integer", "half", "mixed"])?.as_str() {
                    "integer" => IndexKind::Integer,
                    "half" => IndexKind::Half,
                    _ => IndexKind::Mixed,
                };
                let parity = match c.expect_one_of(&["even", "odd"])?.as_str() {
                    "even" => Parity::Even,
                    _ => Parity::Odd,
                };
                c.expect_end()?;
                self.family_cols.push((symbol.clone(), kind));
                self.doc().families.push(Located::new(
                    line,
                    FamilyDecl {
                        symbol,
                        kind,
                        parity,
                    },
                ));
            }
            "basis" => {
                if c.peek().is_none() {
                    return Err(c.error(&["a generator"]));
                }
                while c.peek().is_some() {
                    let (family, idx, col) = c.generator()?;
                    // Basis generators are checked before the set is consulted.
                    let saved = std::mem::take(&mut self.basis_set);
                    let g = self.generator_id(c, family, idx, col);
                    self.basis_set = saved;
                    let g = g?;
                    if !self.basis_set.insert(g.clone()) {
                        return Err(c.semantic_at(col, format!("generator {g} listed twice")));
                    }
                    if !self.doc().entries.is_empty()
                        || !self.doc().products.is_empty()
                        || !self.doc().form.is_empty()
                    {
                        return Err(c.semantic_at(col, "basis must precede entries"));
                    }
                    self.doc().basis.push(Located::new(line, g));
                }
            }
            "rule" => {
                let (left, lcol) = c.genpat(false)?;
                self.check_pattern(c, &left, lcol, Var::M)?;
                let (right, rcol) = c.genpat(false)?;
                self.check_pattern(c, &right, rcol, Var::N)?;
                c.expect_sym("=>")?;
                let mut terms = Vec::new();
                let zero_rhs = matches!(c.peek(), Some(Tok::Int(z)) if z.is_zero())
                    && match c.peek_at(1) {
                        None => true,
                        Some(Tok::Ident(s)) => s == "when",
                        _ => false,
                    };
                if zero_rhs {
                    c.pos += 1;
                } else {
                    loop {
                        let coefficient = c.term_coefficient()?;
                        let (family, col) = c.expect_ident("a family symbol")?;
                        if RESERVED.contains(&family.as_str()) {
                            return Err(c.error(&["a family symbol"]));
                        }
                        self.kind_of(c, &family, col)?;
                        c.expect_sym("[")?;
                        let offset = c.result_index()?;
                        if doubled(&offset).is_none() {
                            return Err(c.semantic_at(col, "result offset must be a multiple of 1/2"));
                        }
                        c.expect_sym("]")?;
                        terms.push(RuleTerm {
                            coefficient,
                            family,
                            offset,
                        });
                        if !(c.is_sym("+") || c.is_sym("-")) {
                            break;
                        }
                        if c.eat_sym("+") {
                            continue;
                        }
                        // A leading '-' belongs to the next coefficient.
                    }
                }
                let when = if c.is_ident("when") {
                    c.pos += 1;
                    Some(c.condition()?)
                } else {
                    None
                };
                c.expect_end()?;
                let key = (left.family.clone(), right.family.clone());
                if !self.rule_keys.insert(key) {
                    return Err(c.semantic_at(
                        lcol,
                        format!("duplicate rule for {} {}", left.family, right.family),
                    ));
                }
                self.doc().rules.push(Located::new(
                    line,
                    BracketRule {
                        left,
                        right,
                        terms,
                        when,
                    },
                ));
            }
            "entry" | "product" => {
                let e = self.entry(c)?;
                let keys = if kw == "entry" {
                    &mut self.entry_keys
                } else {
                    &mut self.product_keys
                };
                if !keys.insert((e.left.clone(), e.right.clone())) {
                    return Err(c.semantic_at(
                        kw_col,
                        format!("duplicate {kw} for ({}, {})", e.left, e.right),
                    ));
                }
                let target = if kw == "entry" {
                    &mut self.doc().entries
                } else {
                    &mut self.doc().products
                };
                target.push(Located::new(line, e));
            }
            "form" => {
                if c.is_ident("standard") {
                    c.pos += 1;
                    c.expect_end()?;
                    if !self.doc().form.is_empty() {
                        return Err(c.semantic_at(kw_col, "form already given"));
                    }
                    self.doc().form.push(Located::new(line, FormDecl::Standard));
                } else {
                    let (lf, li, lcol) = c.generator()?;
                    let left = self.generator_id(c, lf, li, lcol)?;
                    let (rf, ri, rcol) = c.generator()?;
                    let right = self.generator_id(c, rf, ri, rcol)?;
                    c.expect_sym("=>")?;
                    let value = c.signed_rational()?;
                    c.expect_end()?;
                    if self
                        .doc()
                        .form
                        .iter()
                        .any(|f| f.value == FormDecl::Standard)
                    {
                        return Err(c.semantic_at(kw_col, "form already given as standard"));
                    }
                    if !self.form_keys.insert((left.clone(), right.clone())) {
                        return Err(c.semantic_at(
                            kw_col,
                            format!("duplicate form entry for ({left}, {right})"),
                        ));
                    }
                    self.doc()
                        .form
                        .push(Located::new(line, FormDecl::Entry { left, right, value }));
                }
            }
            "cocycle" => {
                let (name, _) = c.expect_ident("a cochain name")?;
                let (left, lcol) = c.genpat(true)?;
                self.check_pattern(c, &left, lcol, Var::M)?;
                let (right, rcol) = c.genpat(true)?;
                self.check_pattern(c, &right, rcol, Var::N)?;
                c.expect_sym("=>")?;
                let value = c.expr()?;
                let when = if c.is_ident("when") {
                    c.pos += 1;
                    Some(c.condition()?)
                } else {
                    None
                };
                c.expect_end()?;
                if !self
                    .cocycle_keys
                    .insert((name.clone(), left.clone(), right.clone()))
                {
                    return Err(c.semantic_at(lcol, format!("duplicate line for cochain {name}")));
                }
                self.doc().cocycles.push(Located::new(
                    line,
                    CocycleDecl {
                        name,
                        left,
                        right,
                        value,
                        when,
                    },
                ));
            }
            "algebra" => {
                return Err(c.semantic_at(kw_col, "header given twice"));
            }
            _ => {
                return Err(ParseError {
                    line,
                    col: kw_col,
                    kind: ParseErrorKind::Syntax {
                        expected: [
                            "'family'", "'basis'", "'rule'", "'entry'", "'product'", "'form'",
                            "'cocycle'",
                        ]
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                        found: format!("'{kw}'"),
                    },
                })
            }
        }
        Ok(())
    }

    fn entry(&mut self, c: &mut Cursor) -> Result<EntryDecl, ParseError> {
        let (lf, li, lcol) = c.generator()?;
        let left = self.generator_id(c, lf, li, lcol)?;
        let (rf, ri, rcol) = c.generator()?;
        let right = self.generator_id(c, rf, ri, rcol)?;
        c.expect_sym("=>")?;
        let mut value = Element::zero();
        if matches!(c.peek(), Some(Tok::Int(z)) if z.is_zero()) && c.peek_at(1).is_none() {
            c.pos += 1;
        }
        while c.peek().is_some() {
            let negative = if c.eat_sym("-") {
                true
            } else {
                c.eat_sym("+");
                false
            };
            let coef = if matches!(c.peek(), Some(Tok::Int(_))) {
                c.unsigned_rational()?
            } else {
                Rational::one()
            };
            let coef = if negative { -coef } else { coef };
            let (f, i, col) = c.generator()?;
            let g = self.generator_id(c, f, i, col)?;
            value.add_term(g, &coef);
        }
        Ok(EntryDecl { left, right, value })
    }

    fn doc(&mut self) -> &mut AlgebraSpecDoc {
        self.doc.as_mut().expect("header parsed")
    }
}

/// Parses a spec document. Errors carry 1-based line and column.
pub fn parse(text: &str) -> Result<AlgebraSpecDoc, ParseError> {
    let mut p = Parser {
        doc: None,
        family_cols: Vec::new(),
        rule_keys: HashSet::new(),
        entry_keys: HashSet::new(),
        product_keys: HashSet::new(),
        form_keys: HashSet::new(),
        cocycle_keys: HashSet::new(),
        basis_set: BTreeSet::new(),
    };
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks = lex_line(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            toks: &toks,
            pos: 0,
            line,
            end_col: raw.chars().count() + 1,
        };
        p.line(&mut c)?;
    }
    p.doc.ok_or(ParseError {
        line: last_line.max(1),
        col: 1,
        kind: ParseErrorKind::Syntax {
            expected: vec!["'algebra'".into()],
            found: "end of input".into(),
        },
    })
}
