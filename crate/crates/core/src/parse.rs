//! The textual query language: lexer, recursive-descent parser, printer,
//! and the schema-aware type check.
//!
//! Grammar (lowercase words are keywords, left-associative infix):
//!
//! ```text
//! query      := expr
//! expr       := term (("union" | "minus") term)*
//! term       := factor (("join" pred | "product") factor)*
//! factor     := "select" pred "(" expr ")"
//!             | "project" items "(" expr ")"
//!             | "(" expr ")"
//!             | IDENT
//! items      := item ("," item)*
//! item       := ("intersect" | "min" | "max") "(" operand "," operand ")" ("as" IDENT)?
//!             | attr ("as" IDENT)?
//! pred       := conj ("or" conj)*
//! conj       := unary ("and" unary)*
//! unary      := "not" unary | "true" | "false" | "(" pred ")" | atom
//! atom       := operand (CMP | TEMPORAL) operand
//! operand    := attr | INT | TEXT | point | "[" point "," point ")"
//! point      := "now" | "from(" tick ")" | "until(" tick ")"
//!             | "point(" tick "," tick ")" | tick
//! tick       := INT | DATE | DATETIME | "-inf" | "+inf"
//! attr       := IDENT ("." IDENT)?
//! ```
//!
//! Dates resolve to day ticks and timestamps to microsecond ticks while
//! lexing; the printer always renders ticks as integers, so
//! `parse(print(plan))` reproduces the plan structurally.

use std::fmt;

use thiserror::Error;

use crate::algebra::{
    output_schema, CompareOp, IntervalOperand, PlanError, Predicate, Projection, QueryPlan,
    ScalarExpr, TemporalOp,
};
use crate::boolean::IntervalSet;
use crate::calendar;
use crate::interval::OngoingInterval;
use crate::point::OngoingTimePoint;
use crate::relation::{AttrName, Catalog, Schema};
use crate::tick::Tick;

/// A syntax or resolution error with a source position.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Word(String),
    Int(i64),
    TickLit(Tick),
    Text(String),
    NegInf,
    PosInf,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "{w}"),
            Tok::Int(v) => write!(f, "{v}"),
            Tok::TickLit(t) => write!(f, "{t}"),
            Tok::Text(t) => write!(f, "'{t}'"),
            Tok::NegInf => f.write_str("-inf"),
            Tok::PosInf => f.write_str("+inf"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::LBracket => f.write_str("["),
            Tok::RBracket => f.write_str("]"),
            Tok::LBrace => f.write_str("{"),
            Tok::RBrace => f.write_str("}"),
            Tok::Comma => f.write_str(","),
            Tok::Dot => f.write_str("."),
            Tok::Lt => f.write_str("<"),
            Tok::Le => f.write_str("<="),
            Tok::Gt => f.write_str(">"),
            Tok::Ge => f.write_str(">="),
            Tok::Eq => f.write_str("="),
            Tok::Ne => f.write_str("!="),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: &[&str] = &[
    "select", "project", "join", "union", "minus", "product", "and", "or", "not", "true", "false",
    "now", "from", "until", "point", "before", "overlaps", "meets", "starts", "during",
    "finishes", "equals", "intersect", "min", "max", "as", "inf",
];

fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

struct Lexer<'a> {
    src: &'a [u8],
    idx: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            idx: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.idx).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.idx + off).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.idx += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, Pos)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
                self.bump();
            }
            let pos = self.pos();
            let Some(c) = self.peek() else {
                out.push((Tok::Eof, pos));
                return Ok(out);
            };
            let tok = match c {
                b'(' => self.single(Tok::LParen),
                b')' => self.single(Tok::RParen),
                b'[' => self.single(Tok::LBracket),
                b']' => self.single(Tok::RBracket),
                b'{' => self.single(Tok::LBrace),
                b'}' => self.single(Tok::RBrace),
                b',' => self.single(Tok::Comma),
                b'.' => self.single(Tok::Dot),
                b'=' => self.single(Tok::Eq),
                b'<' => {
                    self.bump();
                    if self.peek() == Some(b'=') {
                        self.bump();
                        Tok::Le
                    } else {
                        Tok::Lt
                    }
                }
                b'>' => {
                    self.bump();
                    if self.peek() == Some(b'=') {
                        self.bump();
                        Tok::Ge
                    } else {
                        Tok::Gt
                    }
                }
                b'!' => {
                    self.bump();
                    if self.peek() == Some(b'=') {
                        self.bump();
                        Tok::Ne
                    } else {
                        return Err(ParseError::new(pos, "expected != after !"));
                    }
                }
                b'\'' => self.text(pos)?,
                b'-' | b'+' => self.signed(pos)?,
                b'0'..=b'9' => self.number(pos, false)?,
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let word = self.word();
                    if word == "inf" {
                        Tok::PosInf
                    } else {
                        Tok::Word(word)
                    }
                }
                other => {
                    return Err(ParseError::new(
                        pos,
                        format!("unexpected character '{}'", other as char),
                    ))
                }
            };
            out.push((tok, pos));
        }
    }

    fn single(&mut self, tok: Tok) -> Tok {
        self.bump();
        tok
    }

    fn word(&mut self) -> String {
        let start = self.idx;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.idx]).into_owned()
    }

    fn text(&mut self, pos: Pos) -> Result<Tok, ParseError> {
        self.bump(); // opening quote
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(ParseError::new(pos, "unterminated text literal")),
                Some(b'\'') => {
                    if self.peek() == Some(b'\'') {
                        self.bump();
                        out.push('\'');
                    } else {
                        return Ok(Tok::Text(out));
                    }
                }
                Some(c) => out.push(c as char),
            }
        }
    }

    fn signed(&mut self, pos: Pos) -> Result<Tok, ParseError> {
        let sign = self.bump().expect("sign char");
        match self.peek() {
            Some(b'i') => {
                let word = self.word();
                if word == "inf" {
                    Ok(if sign == b'-' { Tok::NegInf } else { Tok::PosInf })
                } else {
                    Err(ParseError::new(pos, format!("unexpected '{word}'")))
                }
            }
            Some(c) if c.is_ascii_digit() => self.number(pos, sign == b'-'),
            _ => Err(ParseError::new(
                pos,
                format!("dangling '{}'", sign as char),
            )),
        }
    }

    fn number(&mut self, pos: Pos, negative: bool) -> Result<Tok, ParseError> {
        let start = self.idx;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        // A '-' straight after digits starts a date (or timestamp) literal.
        if !negative
            && self.peek() == Some(b'-')
            && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit())
        {
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()
                || matches!(c, b'-' | b'T' | b':' | b'.'))
            {
                self.bump();
            }
            let text = String::from_utf8_lossy(&self.src[start..self.idx]).into_owned();
            let tick = if text.contains('T') {
                calendar::parse_timestamp(&text)
            } else {
                calendar::parse_date(&text)
            }
            .map_err(|e| ParseError::new(pos, e.to_string()))?;
            return Ok(Tok::TickLit(tick));
        }
        let digits = String::from_utf8_lossy(&self.src[start..self.idx]);
        let value: i64 = digits
            .parse()
            .map_err(|_| ParseError::new(pos, format!("integer {digits} out of range")))?;
        Ok(Tok::Int(if negative { -value } else { value }))
    }
}

/// Operand forms as written, before an operator decides their role.
enum Operand {
    Attr(AttrName),
    Int(i64),
    Text(String),
    Point(OngoingTimePoint),
    Interval(OngoingInterval),
}

struct Parser {
    tokens: Vec<(Tok, Pos)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.idx].0
    }

    fn peek_pos(&self) -> Pos {
        self.tokens[self.idx].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let item = self.tokens[self.idx].clone();
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        item
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Tok::Word(w) if w == word) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let (got, pos) = self.next();
        if got == tok {
            Ok(())
        } else {
            Err(ParseError::new(pos, format!("expected {tok}, found {got}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        let (got, pos) = self.next();
        match got {
            Tok::Word(w) if !is_keyword(&w) => Ok(w),
            other => Err(ParseError::new(
                pos,
                format!("expected {what}, found {other}"),
            )),
        }
    }

    // ---- plans -----------------------------------------------------------

    fn expr(&mut self) -> Result<QueryPlan, ParseError> {
        let mut plan = self.term()?;
        loop {
            if self.eat_word("union") {
                plan = QueryPlan::union(plan, self.term()?);
            } else if self.eat_word("minus") {
                plan = QueryPlan::difference(plan, self.term()?);
            } else {
                return Ok(plan);
            }
        }
    }

    fn term(&mut self) -> Result<QueryPlan, ParseError> {
        let mut plan = self.factor()?;
        loop {
            if self.eat_word("join") {
                let pred = self.predicate()?;
                plan = QueryPlan::join(pred, plan, self.factor()?);
            } else if self.eat_word("product") {
                plan = QueryPlan::product(plan, self.factor()?);
            } else {
                return Ok(plan);
            }
        }
    }

    fn factor(&mut self) -> Result<QueryPlan, ParseError> {
        if self.eat_word("select") {
            let pred = self.predicate()?;
            self.expect(Tok::LParen)?;
            let input = self.expr()?;
            self.expect(Tok::RParen)?;
            return Ok(QueryPlan::select(pred, input));
        }
        if self.eat_word("project") {
            let items = self.projection_items()?;
            self.expect(Tok::LParen)?;
            let input = self.expr()?;
            self.expect(Tok::RParen)?;
            return Ok(QueryPlan::project(items, input));
        }
        if *self.peek() == Tok::LParen {
            self.next();
            let plan = self.expr()?;
            self.expect(Tok::RParen)?;
            return Ok(plan);
        }
        let name = self.ident("a relation name")?;
        Ok(QueryPlan::Scan(name))
    }

    fn projection_items(&mut self) -> Result<Vec<Projection>, ParseError> {
        let mut items = vec![self.projection_item()?];
        while *self.peek() == Tok::Comma {
            self.next();
            items.push(self.projection_item()?);
        }
        Ok(items)
    }

    fn projection_item(&mut self) -> Result<Projection, ParseError> {
        let pos = self.peek_pos();
        if self.eat_word("intersect") {
            self.expect(Tok::LParen)?;
            let lhs = self.interval_operand_strict()?;
            self.expect(Tok::Comma)?;
            let rhs = self.interval_operand_strict()?;
            self.expect(Tok::RParen)?;
            let alias = self.alias()?;
            return Ok(Projection::Intersect { lhs, rhs, alias });
        }
        if self.eat_word("min") {
            self.expect(Tok::LParen)?;
            let lhs = self.point_scalar()?;
            self.expect(Tok::Comma)?;
            let rhs = self.point_scalar()?;
            self.expect(Tok::RParen)?;
            let alias = self.alias()?;
            return Ok(Projection::PointMin { lhs, rhs, alias });
        }
        if self.eat_word("max") {
            self.expect(Tok::LParen)?;
            let lhs = self.point_scalar()?;
            self.expect(Tok::Comma)?;
            let rhs = self.point_scalar()?;
            self.expect(Tok::RParen)?;
            let alias = self.alias()?;
            return Ok(Projection::PointMax { lhs, rhs, alias });
        }
        match self.peek() {
            Tok::Word(w) if !is_keyword(w) => {
                let attr = self.attr_ref()?;
                let alias = self.alias()?;
                Ok(Projection::Attr { attr, alias })
            }
            other => Err(ParseError::new(
                pos,
                format!("expected a projection item, found {other}"),
            )),
        }
    }

    fn alias(&mut self) -> Result<Option<String>, ParseError> {
        if self.eat_word("as") {
            Ok(Some(self.ident("an alias")?))
        } else {
            Ok(None)
        }
    }

    fn attr_ref(&mut self) -> Result<AttrName, ParseError> {
        let first = self.ident("an attribute")?;
        if *self.peek() == Tok::Dot {
            self.next();
            let name = self.ident("an attribute")?;
            Ok(AttrName::qualified(first, name))
        } else {
            Ok(AttrName::bare(first))
        }
    }

    // ---- predicates ------------------------------------------------------

    fn predicate(&mut self) -> Result<Predicate, ParseError> {
        let mut pred = self.conjunction()?;
        while self.eat_word("or") {
            pred = pred.or(self.conjunction()?);
        }
        Ok(pred)
    }

    fn conjunction(&mut self) -> Result<Predicate, ParseError> {
        let mut pred = self.unary()?;
        while self.eat_word("and") {
            pred = pred.and(self.unary()?);
        }
        Ok(pred)
    }

    fn unary(&mut self) -> Result<Predicate, ParseError> {
        if self.eat_word("not") {
            return Ok(self.unary()?.negate());
        }
        if self.eat_word("true") {
            return Ok(Predicate::Literal(true));
        }
        if self.eat_word("false") {
            return Ok(Predicate::Literal(false));
        }
        if *self.peek() == Tok::LParen {
            self.next();
            let pred = self.predicate()?;
            self.expect(Tok::RParen)?;
            return Ok(pred);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Predicate, ParseError> {
        let lhs_pos = self.peek_pos();
        let lhs = self.operand()?;
        let (op_tok, op_pos) = self.next();
        if let Some(op) = compare_op(&op_tok) {
            let rhs_pos = self.peek_pos();
            let rhs = self.operand()?;
            return Ok(Predicate::Compare {
                op,
                lhs: scalar_of(lhs, lhs_pos)?,
                rhs: scalar_of(rhs, rhs_pos)?,
            });
        }
        if let Some(op) = temporal_op(&op_tok) {
            let rhs_pos = self.peek_pos();
            let rhs = self.operand()?;
            return Ok(Predicate::Temporal {
                op,
                lhs: interval_of(lhs, lhs_pos)?,
                rhs: interval_of(rhs, rhs_pos)?,
            });
        }
        Err(ParseError::new(
            op_pos,
            format!("expected a comparison or temporal predicate, found {op_tok}"),
        ))
    }

    fn operand(&mut self) -> Result<Operand, ParseError> {
        let pos = self.peek_pos();
        match self.peek().clone() {
            Tok::LBracket => Ok(Operand::Interval(self.interval_literal()?)),
            Tok::Int(v) => {
                self.next();
                Ok(Operand::Int(v))
            }
            Tok::Text(t) => {
                self.next();
                Ok(Operand::Text(t))
            }
            Tok::TickLit(_) | Tok::NegInf | Tok::PosInf => {
                let t = self.tick()?;
                Ok(Operand::Point(OngoingTimePoint::fixed(t)))
            }
            Tok::Word(w) if w == "now" || w == "from" || w == "until" || w == "point" => {
                Ok(Operand::Point(self.point_literal()?))
            }
            Tok::Word(w) if !is_keyword(&w) => Ok(Operand::Attr(self.attr_ref()?)),
            other => Err(ParseError::new(
                pos,
                format!("expected an operand, found {other}"),
            )),
        }
    }

    fn point_scalar(&mut self) -> Result<ScalarExpr, ParseError> {
        let pos = self.peek_pos();
        let operand = self.operand()?;
        scalar_of(operand, pos)
    }

    fn interval_operand_strict(&mut self) -> Result<IntervalOperand, ParseError> {
        let pos = self.peek_pos();
        let operand = self.operand()?;
        interval_of(operand, pos)
    }

    fn point_literal(&mut self) -> Result<OngoingTimePoint, ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Word(w) if w == "now" => Ok(OngoingTimePoint::now()),
            Tok::Word(w) if w == "from" => {
                self.expect(Tok::LParen)?;
                let t = self.tick()?;
                self.expect(Tok::RParen)?;
                Ok(OngoingTimePoint::growing(t))
            }
            Tok::Word(w) if w == "until" => {
                self.expect(Tok::LParen)?;
                let t = self.tick()?;
                self.expect(Tok::RParen)?;
                Ok(OngoingTimePoint::limited(t))
            }
            Tok::Word(w) if w == "point" => {
                self.expect(Tok::LParen)?;
                let a = self.tick()?;
                self.expect(Tok::Comma)?;
                let b = self.tick()?;
                self.expect(Tok::RParen)?;
                OngoingTimePoint::new(a, b).map_err(|e| ParseError::new(pos, e.to_string()))
            }
            Tok::Int(_) | Tok::TickLit(_) | Tok::NegInf | Tok::PosInf => {
                self.idx -= 1;
                Ok(OngoingTimePoint::fixed(self.tick()?))
            }
            other => Err(ParseError::new(
                pos,
                format!("expected a time point literal, found {other}"),
            )),
        }
    }

    fn tick(&mut self) -> Result<Tick, ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Int(v) => Tick::checked_new(v).map_err(|e| ParseError::new(pos, e.to_string())),
            Tok::TickLit(t) => Ok(t),
            Tok::NegInf => Ok(Tick::NEG_INF),
            Tok::PosInf => Ok(Tick::POS_INF),
            other => Err(ParseError::new(
                pos,
                format!("expected a tick literal, found {other}"),
            )),
        }
    }

    fn interval_literal(&mut self) -> Result<OngoingInterval, ParseError> {
        self.expect(Tok::LBracket)?;
        let start = self.point_literal()?;
        self.expect(Tok::Comma)?;
        let end = self.point_literal()?;
        self.expect(Tok::RParen)?;
        Ok(OngoingInterval::new(start, end))
    }

    fn interval_set(&mut self) -> Result<IntervalSet, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut spans = Vec::new();
        if *self.peek() != Tok::RBrace {
            loop {
                self.expect(Tok::LBracket)?;
                let start = self.tick()?;
                self.expect(Tok::Comma)?;
                let end = self.tick()?;
                self.expect(Tok::RParen)?;
                spans.push((start, end));
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(IntervalSet::new(spans))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let (tok, pos) = self.next();
        if tok == Tok::Eof {
            Ok(())
        } else {
            Err(ParseError::new(pos, format!("unexpected {tok}")))
        }
    }
}

fn compare_op(tok: &Tok) -> Option<CompareOp> {
    Some(match tok {
        Tok::Lt => CompareOp::Lt,
        Tok::Le => CompareOp::Le,
        Tok::Gt => CompareOp::Gt,
        Tok::Ge => CompareOp::Ge,
        Tok::Eq => CompareOp::Eq,
        Tok::Ne => CompareOp::Ne,
        _ => return None,
    })
}

fn temporal_op(tok: &Tok) -> Option<TemporalOp> {
    let Tok::Word(w) = tok else { return None };
    Some(match w.as_str() {
        "before" => TemporalOp::Before,
        "overlaps" => TemporalOp::Overlaps,
        "meets" => TemporalOp::Meets,
        "starts" => TemporalOp::Starts,
        "during" => TemporalOp::During,
        "finishes" => TemporalOp::Finishes,
        "equals" => TemporalOp::Equals,
        _ => return None,
    })
}

fn scalar_of(operand: Operand, pos: Pos) -> Result<ScalarExpr, ParseError> {
    match operand {
        Operand::Attr(a) => Ok(ScalarExpr::Attr(a)),
        Operand::Int(v) => Ok(ScalarExpr::Int(v)),
        Operand::Text(t) => Ok(ScalarExpr::Text(t)),
        Operand::Point(p) => Ok(ScalarExpr::Point(p)),
        Operand::Interval(_) => Err(ParseError::new(
            pos,
            "interval literals cannot be compared with scalar operators; \
             use a temporal predicate such as overlaps or equals",
        )),
    }
}

fn interval_of(operand: Operand, pos: Pos) -> Result<IntervalOperand, ParseError> {
    match operand {
        Operand::Attr(a) => Ok(IntervalOperand::Attr(a)),
        Operand::Interval(i) => Ok(IntervalOperand::Literal(i)),
        _ => Err(ParseError::new(
            pos,
            "temporal predicates need interval operands",
        )),
    }
}

fn parser_for(text: &str) -> Result<Parser, ParseError> {
    let tokens = Lexer::new(text).tokenize()?;
    Ok(Parser { tokens, idx: 0 })
}

/// Parses a query into a plan. Use [`typecheck`] afterwards to resolve it
/// against a catalog.
pub fn parse_query(text: &str) -> Result<QueryPlan, ParseError> {
    let mut parser = parser_for(text)?;
    if *parser.peek() == Tok::Eof {
        return Err(ParseError::new(parser.peek_pos(), "empty query"));
    }
    let plan = parser.expr()?;
    parser.finish()?;
    Ok(plan)
}

/// Parses a tick literal: integer, ISO date, ISO timestamp, or sentinel.
pub fn parse_tick(text: &str) -> Result<Tick, ParseError> {
    let mut parser = parser_for(text)?;
    let t = parser.tick()?;
    parser.finish()?;
    Ok(t)
}

/// Parses an ongoing time point literal.
pub fn parse_point(text: &str) -> Result<OngoingTimePoint, ParseError> {
    let mut parser = parser_for(text)?;
    let p = parser.point_literal()?;
    parser.finish()?;
    Ok(p)
}

/// Parses an ongoing interval literal `[start,end)`.
pub fn parse_interval(text: &str) -> Result<OngoingInterval, ParseError> {
    let mut parser = parser_for(text)?;
    let i = parser.interval_literal()?;
    parser.finish()?;
    Ok(i)
}

/// Parses an interval-set literal `{[a,b),[c,d)}` (the RT serialization).
pub fn parse_interval_set(text: &str) -> Result<IntervalSet, ParseError> {
    let mut parser = parser_for(text)?;
    let s = parser.interval_set()?;
    parser.finish()?;
    Ok(s)
}

// ---------------------------------------------------------------------------
// Type checking
// ---------------------------------------------------------------------------

/// Resolves and validates a plan against a catalog.
///
/// Returns the annotated plan: integer literals compared against time
/// points are coerced to fixed points, every reference is resolved, and
/// every predicate leaf is classifiable as fixed or ongoing (see
/// [`crate::algebra::predicate_is_ongoing`], which feeds
/// [`crate::algebra::plan_optimize`]).
pub fn typecheck(plan: &QueryPlan, catalog: &Catalog) -> Result<QueryPlan, PlanError> {
    let coerced = coerce_plan(plan, catalog)?;
    output_schema(&coerced, catalog)?;
    Ok(coerced)
}

fn coerce_plan(plan: &QueryPlan, catalog: &Catalog) -> Result<QueryPlan, PlanError> {
    Ok(match plan {
        QueryPlan::Scan(name) => QueryPlan::Scan(name.clone()),
        QueryPlan::Select { pred, input } => {
            let input = coerce_plan(input, catalog)?;
            let schema = output_schema(&input, catalog)?;
            QueryPlan::select(coerce_predicate(pred, &schema), input)
        }
        QueryPlan::Project { items, input } => {
            let input = coerce_plan(input, catalog)?;
            let items = items.iter().map(coerce_projection).collect();
            QueryPlan::project(items, input)
        }
        QueryPlan::Product { left, right } => {
            QueryPlan::product(coerce_plan(left, catalog)?, coerce_plan(right, catalog)?)
        }
        QueryPlan::Join { pred, left, right } => {
            let left = coerce_plan(left, catalog)?;
            let right = coerce_plan(right, catalog)?;
            let schema = output_schema(&left, catalog)?.product(&output_schema(&right, catalog)?)?;
            QueryPlan::join(coerce_predicate(pred, &schema), left, right)
        }
        QueryPlan::Union { left, right } => {
            QueryPlan::union(coerce_plan(left, catalog)?, coerce_plan(right, catalog)?)
        }
        QueryPlan::Difference { left, right } => {
            QueryPlan::difference(coerce_plan(left, catalog)?, coerce_plan(right, catalog)?)
        }
    })
}

/// `T < 5` with a temporal attribute `T` reads the bare integer as a tick:
/// coerce it to the fixed point `⟨5|5⟩`.
fn coerce_predicate(pred: &Predicate, schema: &Schema) -> Predicate {
    match pred {
        Predicate::Compare { op, lhs, rhs } => {
            let lhs_temporal = scalar_is_temporal(lhs, schema);
            let rhs_temporal = scalar_is_temporal(rhs, schema);
            let coerce = |expr: &ScalarExpr, other_temporal: bool| match expr {
                ScalarExpr::Int(v) if other_temporal => match Tick::checked_new(*v) {
                    Ok(t) => ScalarExpr::Point(OngoingTimePoint::fixed(t)),
                    Err(_) => expr.clone(),
                },
                other => other.clone(),
            };
            Predicate::Compare {
                op: *op,
                lhs: coerce(lhs, rhs_temporal),
                rhs: coerce(rhs, lhs_temporal),
            }
        }
        Predicate::And(a, b) => coerce_predicate(a, schema).and(coerce_predicate(b, schema)),
        Predicate::Or(a, b) => coerce_predicate(a, schema).or(coerce_predicate(b, schema)),
        Predicate::Not(a) => coerce_predicate(a, schema).negate(),
        other => other.clone(),
    }
}

fn coerce_projection(item: &Projection) -> Projection {
    let as_point = |expr: &ScalarExpr| match expr {
        ScalarExpr::Int(v) => match Tick::checked_new(*v) {
            Ok(t) => ScalarExpr::Point(OngoingTimePoint::fixed(t)),
            Err(_) => expr.clone(),
        },
        other => other.clone(),
    };
    match item {
        Projection::PointMin { lhs, rhs, alias } => Projection::PointMin {
            lhs: as_point(lhs),
            rhs: as_point(rhs),
            alias: alias.clone(),
        },
        Projection::PointMax { lhs, rhs, alias } => Projection::PointMax {
            lhs: as_point(lhs),
            rhs: as_point(rhs),
            alias: alias.clone(),
        },
        other => other.clone(),
    }
}

fn scalar_is_temporal(expr: &ScalarExpr, schema: &Schema) -> bool {
    match expr {
        ScalarExpr::Point(_) => true,
        ScalarExpr::Attr(name) => schema.resolve(name).is_ok_and(|idx| {
            matches!(
                schema.attr_type_of(idx),
                crate::relation::AttrType::Tick | crate::relation::AttrType::Point
            )
        }),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

/// Renders a plan back into query text; `parse_query` reproduces the plan
/// structurally.
pub fn plan_text(plan: &QueryPlan) -> String {
    let mut out = String::new();
    write_plan(plan, PlanLevel::Expr, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PlanLevel {
    Expr = 1,
    Term = 2,
    Factor = 3,
}

fn plan_level(plan: &QueryPlan) -> PlanLevel {
    match plan {
        QueryPlan::Union { .. } | QueryPlan::Difference { .. } => PlanLevel::Expr,
        QueryPlan::Join { .. } | QueryPlan::Product { .. } => PlanLevel::Term,
        _ => PlanLevel::Factor,
    }
}

fn write_plan(plan: &QueryPlan, required: PlanLevel, out: &mut String) {
    if plan_level(plan) < required {
        out.push('(');
        write_plan(plan, PlanLevel::Expr, out);
        out.push(')');
        return;
    }
    match plan {
        QueryPlan::Scan(name) => out.push_str(name),
        QueryPlan::Select { pred, input } => {
            out.push_str("select ");
            write_pred(pred, 0, out);
            out.push_str(" (");
            write_plan(input, PlanLevel::Expr, out);
            out.push(')');
        }
        QueryPlan::Project { items, input } => {
            out.push_str("project ");
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_projection(item, out);
            }
            out.push_str(" (");
            write_plan(input, PlanLevel::Expr, out);
            out.push(')');
        }
        QueryPlan::Product { left, right } => {
            write_plan(left, PlanLevel::Term, out);
            out.push_str(" product ");
            write_plan(right, PlanLevel::Factor, out);
        }
        QueryPlan::Join { pred, left, right } => {
            write_plan(left, PlanLevel::Term, out);
            out.push_str(" join ");
            write_pred(pred, 0, out);
            out.push(' ');
            write_plan(right, PlanLevel::Factor, out);
        }
        QueryPlan::Union { left, right } => {
            write_plan(left, PlanLevel::Expr, out);
            out.push_str(" union ");
            write_plan(right, PlanLevel::Term, out);
        }
        QueryPlan::Difference { left, right } => {
            write_plan(left, PlanLevel::Expr, out);
            out.push_str(" minus ");
            write_plan(right, PlanLevel::Term, out);
        }
    }
}

fn write_projection(item: &Projection, out: &mut String) {
    use std::fmt::Write;
    let alias = match item {
        Projection::Attr { attr, alias } => {
            let _ = write!(out, "{attr}");
            alias
        }
        Projection::Intersect { lhs, rhs, alias } => {
            let _ = write!(out, "intersect({lhs},{rhs})");
            alias
        }
        Projection::PointMin { lhs, rhs, alias } => {
            let _ = write!(out, "min({lhs},{rhs})");
            alias
        }
        Projection::PointMax { lhs, rhs, alias } => {
            let _ = write!(out, "max({lhs},{rhs})");
            alias
        }
    };
    if let Some(alias) = alias {
        let _ = write!(out, " as {alias}");
    }
}

/// Precedence: or = 1, and = 2, not = 3, leaves = 4. A right operand at the
/// same precedence keeps its parentheses so the tree shape survives the
/// round trip.
fn write_pred(pred: &Predicate, parent: u8, out: &mut String) {
    use std::fmt::Write;
    let prec = match pred {
        Predicate::Or(..) => 1,
        Predicate::And(..) => 2,
        Predicate::Not(..) => 3,
        _ => 4,
    };
    let needs_parens = prec < parent;
    if needs_parens {
        out.push('(');
    }
    match pred {
        Predicate::Literal(v) => out.push_str(if *v { "true" } else { "false" }),
        Predicate::Compare { op, lhs, rhs } => {
            let _ = write!(out, "{lhs} {op} {rhs}");
        }
        Predicate::Temporal { op, lhs, rhs } => {
            let _ = write!(out, "{lhs} {op} {rhs}");
        }
        Predicate::And(a, b) => {
            write_pred(a, 2, out);
            out.push_str(" and ");
            write_pred(b, 3, out);
        }
        Predicate::Or(a, b) => {
            write_pred(a, 1, out);
            out.push_str(" or ");
            write_pred(b, 2, out);
        }
        Predicate::Not(a) => {
            out.push_str("not ");
            write_pred(a, 4, out);
        }
    }
    if needs_parens {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::AttrType;

    #[test]
    fn parses_the_running_example_shape() {
        let q = "select C = 'Spam filter' (B) join B.C = P.C and B.VT before P.VT P";
        let plan = parse_query(q).unwrap();
        match &plan {
            QueryPlan::Join { pred, left, right } => {
                assert!(matches!(**left, QueryPlan::Select { .. }));
                assert!(matches!(**right, QueryPlan::Scan(ref n) if n == "P"));
                assert!(matches!(pred, Predicate::And(..)));
            }
            other => panic!("unexpected plan {other:?}"),
        }
    }

    #[test]
    fn parses_projection_over_scan() {
        let plan = parse_query("project BID (B)").unwrap();
        match &plan {
            QueryPlan::Project { items, input } => {
                assert_eq!(items.len(), 1);
                assert!(matches!(**input, QueryPlan::Scan(ref n) if n == "B"));
            }
            other => panic!("unexpected plan {other:?}"),
        }
    }

    #[test]
    fn empty_and_malformed_input() {
        assert!(parse_query("").is_err());
        let err = parse_query("select (B)").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(parse_query("B junk C").is_err());
        assert!(parse_query("select C = (B)").is_err());
    }

    #[test]
    fn literal_forms() {
        assert_eq!(parse_tick("42").unwrap(), Tick::new(42));
        assert_eq!(parse_tick("-7").unwrap(), Tick::new(-7));
        assert_eq!(parse_tick("-inf").unwrap(), Tick::NEG_INF);
        assert_eq!(parse_tick("+inf").unwrap(), Tick::POS_INF);
        assert_eq!(parse_tick("2019-08-15").unwrap(), Tick::new(737286));
        assert_eq!(parse_point("now").unwrap(), OngoingTimePoint::now());
        assert_eq!(
            parse_point("from(2019-08-15)").unwrap(),
            OngoingTimePoint::growing(Tick::new(737286))
        );
        assert_eq!(
            parse_point("until(9)").unwrap(),
            OngoingTimePoint::limited(Tick::new(9))
        );
        assert_eq!(
            parse_point("point(2,9)").unwrap(),
            OngoingTimePoint::new(Tick::new(2), Tick::new(9)).unwrap()
        );
        assert!(parse_point("point(9,2)").is_err());
        let i = parse_interval("[2019-08-15, now)").unwrap();
        assert_eq!(i.start(), OngoingTimePoint::fixed(Tick::new(737286)));
        assert_eq!(i.end(), OngoingTimePoint::now());
        let s = parse_interval_set("{[-inf,5),[9,+inf)}").unwrap();
        assert_eq!(s.cardinality(), 2);
        assert_eq!(parse_interval_set("{}").unwrap(), IntervalSet::empty());
    }

    #[test]
    fn text_escapes() {
        let plan = parse_query("select C = 'it''s' (B)").unwrap();
        let printed = plan_text(&plan);
        assert_eq!(parse_query(&printed).unwrap(), plan);
        assert!(printed.contains("'it''s'"));
    }

    fn round_trip(q: &str) {
        let plan = parse_query(q).unwrap();
        let printed = plan_text(&plan);
        let reparsed = parse_query(&printed).unwrap_or_else(|e| {
            panic!("printed query failed to reparse: {printed}: {e}");
        });
        assert_eq!(plan, reparsed, "round trip changed the plan for {printed}");
    }

    #[test]
    fn print_parse_round_trips() {
        round_trip("B");
        round_trip("project BID, B.VT as span (B)");
        round_trip("select C = 'Spam filter' (B) join B.C = P.C and B.VT before P.VT P");
        round_trip("select VT overlaps [2019-08-15, 2019-08-24) (B)");
        round_trip("select not (C = 'x' or C = 'y') and BID < 7 (B)");
        round_trip("B union (P minus L)");
        round_trip("(B union P) minus L");
        round_trip("B product P join true L");
        round_trip("project intersect(B.VT,[1,now)) as common, min(S,point(2,9)) (B)");
        round_trip("select T <= now (B)");
        round_trip("select VT equals [until(3), from(9)) (B)");
    }

    #[test]
    fn typecheck_coerces_and_rejects() {
        let mut rel = crate::relation::Relation::new(Schema::bare(&[
            ("K", AttrType::Int),
            ("T", AttrType::Tick),
            ("VT", AttrType::Interval),
        ]));
        rel.push_base(vec![
            crate::relation::AttributeValue::Int(1),
            crate::relation::AttributeValue::Tick(Tick::new(5)),
            crate::relation::AttributeValue::Interval(OngoingInterval::fixed(
                Tick::new(1),
                Tick::new(9),
            )),
        ])
        .unwrap();
        let mut catalog = Catalog::new();
        catalog.insert("R", rel);

        // Bare integer against a tick attribute coerces to a fixed point.
        let plan = typecheck(&parse_query("select T < 7 (R)").unwrap(), &catalog).unwrap();
        match &plan {
            QueryPlan::Select { pred, .. } => match pred {
                Predicate::Compare { rhs, .. } => {
                    assert_eq!(rhs, &ScalarExpr::Point(OngoingTimePoint::fixed(Tick::new(7))))
                }
                other => panic!("unexpected predicate {other:?}"),
            },
            other => panic!("unexpected plan {other:?}"),
        }
        // Fixed comparisons stay untouched.
        assert!(typecheck(&parse_query("select K = 7 (R)").unwrap(), &catalog).is_ok());
        // Int against interval is a type error.
        assert!(typecheck(&parse_query("select K = VT (R)").unwrap(), &catalog).is_err());
        // Unknown attribute or relation.
        assert!(typecheck(&parse_query("select Z = 1 (R)").unwrap(), &catalog).is_err());
        assert!(typecheck(&parse_query("Nope").unwrap(), &catalog).is_err());
    }
}
