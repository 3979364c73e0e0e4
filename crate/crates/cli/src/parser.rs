//! Recursive-descent parser for workbench expressions.
//!
//! Grammar: generators `x1`, `x2`, ... with postfix `'` (repeated) or
//! `^(k)` for the derivation order; `*` is the perm product, left
//! associative and binding tightest; `>`, `<`, `|-`, `-|` are the derived
//! operations, all non-associative (nesting requires parentheses);
//! rational coefficients attach via `*`; `+`/`-` combine at top level.

use std::fmt;

use derperm::{DiffPoly, Generator, MagmaOp, MagmaPoly, PermMonomial, Rational};
use num::BigInt;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Result of evaluating an expression.  A bare rational is only legal as a
/// coefficient, so commands reject `Scalar` at the top level.
#[derive(Debug, Clone)]
pub enum Value {
    Scalar(Rational),
    Magma(MagmaPoly),
    Diff(DiffPoly),
}

impl Value {
    pub fn into_diff(self) -> Result<DiffPoly, String> {
        match self {
            Value::Scalar(_) => Err("expression is a bare coefficient, not an algebra element".into()),
            Value::Magma(p) => Ok(p.eval()),
            Value::Diff(p) => Ok(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Gen { var: u32, der: u32 },
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Op(MagmaOp),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Cursor {
    cs: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.cs.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.i == start {
            return None;
        }
        let s: String = self.cs[start..self.i].iter().collect();
        Some(s.parse().expect("digit run parses as an integer"))
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor {
        cs: src.chars().collect(),
        i: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let (line, col) = (cur.line, cur.col);
        let tok = match c {
            'x' => {
                cur.bump();
                let var = cur
                    .digits()
                    .ok_or_else(|| cur.err("expected a variable index after 'x'"))?;
                let var: u32 = var
                    .try_into()
                    .map_err(|_| cur.err("variable index out of range"))?;
                if var == 0 {
                    return Err(cur.err("variable indices start at 1"));
                }
                let mut der: u32 = 0;
                if cur.peek() == Some('\'') {
                    while cur.peek() == Some('\'') {
                        cur.bump();
                        der += 1;
                    }
                } else if cur.peek() == Some('^') {
                    cur.bump();
                    if cur.bump() != Some('(') {
                        return Err(cur.err("expected '(' after '^'"));
                    }
                    let d = cur
                        .digits()
                        .ok_or_else(|| cur.err("expected a derivation order after '^('"))?;
                    der = d
                        .try_into()
                        .map_err(|_| cur.err("derivation order out of range"))?;
                    if cur.bump() != Some(')') {
                        return Err(cur.err("expected ')' closing '^('"));
                    }
                }
                Tok::Gen { var, der }
            }
            '0'..='9' => Tok::Int(cur.digits().expect("peeked a digit")),
            '+' => {
                cur.bump();
                Tok::Plus
            }
            '-' => {
                cur.bump();
                if cur.peek() == Some('|') {
                    cur.bump();
                    Tok::Op(MagmaOp::Dashv)
                } else {
                    Tok::Minus
                }
            }
            '|' => {
                cur.bump();
                if cur.bump() != Some('-') {
                    return Err(cur.err("expected '-' after '|'"));
                }
                Tok::Op(MagmaOp::Vdash)
            }
            '*' => {
                cur.bump();
                Tok::Star
            }
            '/' => {
                cur.bump();
                Tok::Slash
            }
            '(' => {
                cur.bump();
                Tok::LParen
            }
            ')' => {
                cur.bump();
                Tok::RParen
            }
            '>' => {
                cur.bump();
                Tok::Op(MagmaOp::Succ)
            }
            '<' => {
                cur.bump();
                Tok::Op(MagmaOp::Prec)
            }
            other => return Err(cur.err(format!("unexpected character '{}'", other))),
        };
        out.push(Token { tok, line, col });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.magma_level()?;
        if negate {
            acc = scale(acc, &-Rational::from_integer(1.into()));
        }
        loop {
            let sub = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            let at = self.here();
            self.bump();
            let rhs = self.magma_level()?;
            acc = add(acc, rhs, sub).map_err(|m| ParseError {
                line: at.0,
                col: at.1,
                message: m,
            })?;
        }
        Ok(acc)
    }

    fn magma_level(&mut self) -> Result<Value, ParseError> {
        let lhs = self.product()?;
        let op = match self.peek() {
            Some(Tok::Op(op)) => *op,
            _ => return Ok(lhs),
        };
        let at = self.here();
        self.bump();
        let rhs = self.product()?;
        if let Some(Tok::Op(next)) = self.peek() {
            return Err(self.err_here(format!(
                "'{}' after '{}' is ambiguous; these operators are non-associative, add parentheses",
                next.symbol(),
                op.symbol()
            )));
        }
        apply_op(op, lhs, rhs).map_err(|m| ParseError {
            line: at.0,
            col: at.1,
            message: m,
        })
    }

    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            let at = self.here();
            self.bump();
            let rhs = self.atom()?;
            acc = mul(acc, rhs).map_err(|m| ParseError {
                line: at.0,
                col: at.1,
                message: m,
            })?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let at = self.here();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Gen { var, der }) => {
                if der == 0 {
                    Ok(Value::Magma(MagmaPoly::var(var)))
                } else {
                    Ok(Value::Diff(DiffPoly::monomial(PermMonomial::generator(
                        Generator::new(var, der),
                    ))))
                }
            }
            Some(Tok::Int(n)) => {
                let mut den = BigInt::from(1);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump().map(|t| t.tok) {
                        Some(Tok::Int(d)) => den = d,
                        _ => return Err(self.err_here("expected a denominator after '/'")),
                    }
                    if den == BigInt::from(0) {
                        return Err(self.err_here("zero denominator"));
                    }
                }
                Ok(Value::Scalar(Rational::new(n, den)))
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.bump().map(|t| t.tok) {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(self.err_here("expected ')'")),
                }
            }
            _ => Err(ParseError {
                line: at.0,
                col: at.1,
                message: "expected a generator, a number, or '('".into(),
            }),
        }
    }
}

fn scale(v: Value, c: &Rational) -> Value {
    match v {
        Value::Scalar(a) => Value::Scalar(a * c),
        Value::Magma(p) => Value::Magma(p.scale(c)),
        Value::Diff(p) => Value::Diff(p.scale(c)),
    }
}

fn add(lhs: Value, rhs: Value, sub: bool) -> Result<Value, String> {
    let rhs = if sub {
        scale(rhs, &-Rational::from_integer(1.into()))
    } else {
        rhs
    };
    match (lhs, rhs) {
        (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a + b)),
        (Value::Magma(a), Value::Magma(b)) => Ok(Value::Magma(a.add(&b))),
        (Value::Scalar(_), _) | (_, Value::Scalar(_)) => {
            Err("cannot add a bare coefficient to an algebra element".into())
        }
        (a, b) => Ok(Value::Diff(a.into_diff()?.add(&b.into_diff()?))),
    }
}

fn mul(lhs: Value, rhs: Value) -> Result<Value, String> {
    match (lhs, rhs) {
        (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a * b)),
        (Value::Scalar(a), v) | (v, Value::Scalar(a)) => Ok(scale(v, &a)),
        (a, b) => Ok(Value::Diff(a.into_diff()?.mul(&b.into_diff()?))),
    }
}

fn apply_op(op: MagmaOp, lhs: Value, rhs: Value) -> Result<Value, String> {
    match (lhs, rhs) {
        (Value::Magma(a), Value::Magma(b)) => Ok(Value::Magma(MagmaPoly::apply(op, &a, &b))),
        (Value::Scalar(_), _) | (_, Value::Scalar(_)) => Err(format!(
            "operands of '{}' must be algebra elements",
            op.symbol()
        )),
        (a, b) => {
            let a = a.into_diff()?;
            let b = b.into_diff()?;
            Ok(Value::Diff(match op {
                MagmaOp::Succ => a.succ(&b),
                MagmaOp::Prec => a.prec(&b),
                MagmaOp::Vdash => a.vdash(&b),
                MagmaOp::Dashv => a.dashv(&b),
            }))
        }
    }
}

/// Parses one expression and evaluates it.  The whole input must be consumed.
pub fn parse_expression(src: &str) -> Result<Value, ParseError> {
    let toks = lex(src)?;
    let end = toks
        .last()
        .map(|t| (t.line, t.col + 1))
        .unwrap_or((1, 1));
    let mut p = Parser { toks, pos: 0, end };
    if p.peek().is_none() {
        return Err(p.err_here("empty expression"));
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(v)
}
