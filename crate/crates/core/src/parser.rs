//! Calculator grammar for the `gross`, `lc` and `word` dialects.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' unary)?          right-associative
//! primary := number | symbol | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! Numbers are exact: integers, decimals and scientific literals all become
//! rationals, and `a/b` is ordinary division. `G` is the infinite unit of the
//! `gross` dialect, `d` the infinitesimal of the `lc` dialect and `x` the
//! free variable of derivative expressions.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::grossnum::{Grossnumeral, HEIGHT_UNSUPPORTED};
use crate::levicivita::{self, Elementary, LcNumber};
use crate::lexrank::MedalWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Gross,
    Lc,
    Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    /// Infinite unit.
    G,
    /// Infinitesimal.
    D,
    /// Free variable.
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(Rational),
    /// Symbol with its character position in the source.
    Symbol(Symbol, usize),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Elementary, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Expr(Expr),
    Word(MedalWord),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Gross(Grossnumeral),
    Lc(LcNumber),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Gross(g) => g.fmt(f),
            Value::Lc(x) => x.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00d7}' | '\u{00b7}' => Tok::Star,
            '/' | '\u{00f7}' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '\u{24bc}' => Tok::Ident("G".into()),
            c if c.is_ascii_digit() || c == '.' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                // scientific exponent only when digits follow
                if j < chars.len() && matches!(chars[j], 'e' | 'E') {
                    let mut k = j + 1;
                    if k < chars.len() && matches!(chars[k], '+' | '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let lit: String = chars[i..j].iter().collect();
                let value = crate::exact::rational::parse_decimal(&lit)
                    .ok_or_else(|| syntax(start, format!("malformed number `{lit}`")))?;
                i = j - 1;
                Tok::Num(value)
            }
            c if c.is_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_alphanumeric() {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                i = j - 1;
                Tok::Ident(name)
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    dialect: Dialect,
    exponent_depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        self.exponent_depth += 1;
        let exponent = self.unary();
        self.exponent_depth -= 1;
        Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent?)))
    }

    fn primary(&mut self) -> Result<Expr> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(r) => Ok(Expr::Literal(r)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => self.identifier(&name, pos),
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected {}", describe(&other)))),
        }
    }

    fn identifier(&mut self, name: &str, pos: usize) -> Result<Expr> {
        let func = match name {
            "sin" => Some(Elementary::Sin),
            "cos" => Some(Elementary::Cos),
            "exp" => Some(Elementary::Exp),
            _ => None,
        };
        if let Some(f) = func {
            self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
            let arg = self.expr()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Expr::Call(f, Box::new(arg)));
        }
        let symbol = match (name, self.dialect) {
            ("G", Dialect::Gross) => Symbol::G,
            ("d", Dialect::Lc) => Symbol::D,
            ("x", Dialect::Lc) => Symbol::X,
            _ => {
                return Err(Error::UnknownSymbol {
                    symbol: name.to_owned(),
                    position: pos,
                })
            }
        };
        if symbol == Symbol::G && self.exponent_depth > 0 {
            return Err(Error::HeightUnsupported(HEIGHT_UNSUPPORTED.to_owned()));
        }
        Ok(Expr::Symbol(symbol, pos))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("number `{r}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses an expression in the `gross` or `lc` dialect.
pub fn parse_expr(text: &str, dialect: Dialect) -> Result<Expr> {
    if dialect == Dialect::Word {
        return Err(syntax(0, "the word dialect has no expressions"));
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        dialect,
        exponent_depth: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(e)
}

/// Comma-separated nonnegative counts, e.g. `13,11,9`; optionally wrapped
/// in `<...>`, `⟨...⟩` or `(...)`. Empty text is the empty word.
pub fn parse_word(text: &str) -> Result<MedalWord> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let inner = [('<', '>'), ('\u{27e8}', '\u{27e9}'), ('(', ')')]
        .iter()
        .find_map(|&(l, r)| trimmed.strip_prefix(l)?.strip_suffix(r))
        .unwrap_or(trimmed);
    if inner.trim().is_empty() {
        return Ok(MedalWord::empty());
    }
    let base = offset + trimmed.find(inner).unwrap_or(0);
    let mut letters = Vec::new();
    let mut at = base;
    for field in inner.split(',') {
        let lead = field.len() - field.trim_start().len();
        let f = field.trim();
        let position = text[..at + lead].chars().count();
        if let Some(digits) = f.strip_prefix('-') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Domain(format!("negative medal count {f}")));
            }
        }
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(position, format!("expected a nonnegative integer, found `{f}`")));
        }
        let n = f
            .parse()
            .map_err(|_| Error::Domain(format!("medal count {f} is too large")))?;
        letters.push(n);
        at += field.len() + 1;
    }
    Ok(MedalWord::new(letters))
}

pub fn parse(text: &str, dialect: Dialect) -> Result<Parsed> {
    match dialect {
        Dialect::Word => parse_word(text).map(Parsed::Word),
        _ => parse_expr(text, dialect).map(Parsed::Expr),
    }
}

/// Exact value of a symbol-free expression, as used for exponents.
pub fn eval_constant(e: &Expr) -> Result<Rational> {
    match e {
        Expr::Literal(r) => Ok(r.clone()),
        Expr::Symbol(s, pos) => Err(Error::Domain(format!(
            "exponent at position {pos} must be a rational constant, found {s:?}"
        ))),
        Expr::Neg(a) => Ok(-eval_constant(a)?),
        Expr::Binary(op, a, b) => {
            let (a, b) = (eval_constant(a)?, eval_constant(b)?);
            match op {
                BinOp::Add => Ok(a + b),
                BinOp::Sub => Ok(a - b),
                BinOp::Mul => Ok(a * b),
                BinOp::Div => a.checked_div(&b),
                BinOp::Pow => a
                    .pow_rational(&b)
                    .ok_or_else(|| Error::RationalPowerUnavailable {
                        base: a.to_string(),
                        exponent: b.to_string(),
                    }),
            }
        }
        Expr::Call(f, _) => Err(Error::Domain(format!(
            "{} cannot appear in an exact exponent",
            f.name()
        ))),
    }
}

/// Folds an expression through grossnumeral arithmetic.
pub fn eval_gross(e: &Expr) -> Result<Grossnumeral> {
    match e {
        Expr::Literal(r) => Ok(Grossnumeral::constant(r.clone())),
        Expr::Symbol(Symbol::G, _) => Ok(Grossnumeral::unit()),
        Expr::Symbol(s, pos) => Err(Error::UnknownSymbol {
            symbol: symbol_name(*s).into(),
            position: *pos,
        }),
        Expr::Neg(a) => Ok(-eval_gross(a)?),
        Expr::Binary(BinOp::Pow, a, b) => {
            let q = eval_constant(b)?;
            eval_gross(a)?.pow(&q)
        }
        Expr::Binary(op, a, b) => {
            let (a, b) = (eval_gross(a)?, eval_gross(b)?);
            match op {
                BinOp::Add => Ok(&a + &b),
                BinOp::Sub => Ok(&a - &b),
                BinOp::Mul => Ok(&a * &b),
                BinOp::Div => match b.as_constant() {
                    Some(c) => a.div_constant(&c),
                    None => Err(Error::Undefined(format!(
                        "division by the non-constant grossnumeral {b} is not defined"
                    ))),
                },
                BinOp::Pow => unreachable!("handled above"),
            }
        }
        Expr::Call(f, a) => Err(Error::Undefined(format!(
            "{}({}) is not defined: transcendental functions of grossnumerals have no value",
            f.name(),
            eval_gross(a)?
        ))),
    }
}

fn symbol_name(s: Symbol) -> &'static str {
    match s {
        Symbol::G => "G",
        Symbol::D => "d",
        Symbol::X => "x",
    }
}

/// Folds an expression through Levi-Civita arithmetic at truncation depth
/// `depth`, with `x` bound to `x` if given.
pub fn eval_lc(e: &Expr, depth: usize, x: Option<&LcNumber>) -> Result<LcNumber> {
    match e {
        Expr::Literal(r) => Ok(LcNumber::constant(r.to_f64(), depth)),
        Expr::Symbol(Symbol::D, _) => Ok(LcNumber::d(depth)),
        Expr::Symbol(Symbol::X, pos) => x.cloned().ok_or_else(|| Error::UnknownSymbol {
            symbol: "x".into(),
            position: *pos,
        }),
        Expr::Symbol(s, pos) => Err(Error::UnknownSymbol {
            symbol: symbol_name(*s).into(),
            position: *pos,
        }),
        Expr::Neg(a) => Ok(-eval_lc(a, depth, x)?),
        Expr::Binary(BinOp::Pow, a, b) => {
            let q = eval_constant(b)?;
            eval_lc(a, depth, x)?.power(&q)
        }
        Expr::Binary(op, a, b) => {
            let (a, b) = (eval_lc(a, depth, x)?, eval_lc(b, depth, x)?);
            match op {
                BinOp::Add => Ok(&a + &b),
                BinOp::Sub => Ok(&a - &b),
                BinOp::Mul => Ok(&a * &b),
                BinOp::Div => a.checked_div(&b),
                BinOp::Pow => unreachable!("handled above"),
            }
        }
        Expr::Call(f, a) => eval_lc(a, depth, x)?.apply(*f),
    }
}

pub fn evaluate(e: &Expr, dialect: Dialect, depth: usize) -> Result<Value> {
    match dialect {
        Dialect::Gross => eval_gross(e).map(Value::Gross),
        Dialect::Lc => eval_lc(e, depth, None).map(Value::Lc),
        Dialect::Word => Err(syntax(0, "the word dialect has no expressions")),
    }
}

pub fn eval_gross_str(text: &str) -> Result<Grossnumeral> {
    eval_gross(&parse_expr(text, Dialect::Gross)?)
}

pub fn eval_lc_str(text: &str, depth: usize) -> Result<LcNumber> {
    eval_lc(&parse_expr(text, Dialect::Lc)?, depth, None)
}

/// `n`-th derivative at `a` of an `lc` expression in `x`.
pub fn lc_derivative(f: &Expr, a: &Rational, n: usize, depth: usize) -> Result<f64> {
    levicivita::derivative(|x| eval_lc(f, depth, Some(x)), a.to_f64(), n, depth)
}
