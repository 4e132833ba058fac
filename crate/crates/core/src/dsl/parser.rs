//! Lexer and recursive-descent parser for form expressions.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{ParseError, ParseErrorKind};
use crate::diff_forms::DiffForm;
use crate::scalar::{qi, Ring, Q};
use crate::symbolic::{Monomial, Poly, ScalarExpr};

/// Largest accepted absolute power in `x^n`.
pub const MAX_EXPONENT: i64 = 1000;

/// Largest number of terms an intermediate product may have.
pub const MAX_TERMS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number { value: Q, integer: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number { value, .. } => format!("number `{value}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Wedge => "`/\\`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str, line0: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, line0, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '∧' => Some(Tok::Wedge),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' {
            if chars.get(i + 1) == Some(&'\\') {
                out.push((Tok::Wedge, pos));
                i += 2;
                col += 2;
            } else {
                out.push((Tok::Slash, pos));
                i += 1;
                col += 1;
            }
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().collect();
            let mut frac = String::new();
            let mut integer = true;
            if i < chars.len() && chars[i] == '.' {
                integer = false;
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                frac = chars[fs..i].iter().collect();
            }
            col += i - start;
            let digits = format!("{int_part}{frac}");
            let num: BigInt = digits.parse().unwrap_or_default();
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            out.push((
                Tok::Number {
                    value: Q::new(num, den),
                    integer,
                },
                pos,
            ));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        return Err(ParseError::new(
            pos.line,
            pos.column,
            ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
        ));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

/// A term of the form grammar: coefficient and 0-based differential indices.
struct Term {
    coefficient: ScalarExpr,
    wedge: Vec<usize>,
    pos: Pos,
}

pub(super) struct Parser<'a> {
    coords: &'a [String],
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl<'a> Parser<'a> {
    pub(super) fn new(coords: &'a [String], text: &str, line0: usize) -> Result<Self, ParseError> {
        Ok(Parser {
            coords,
            toks: lex(text, line0)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err_at(&self, pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError::new(pos.line, pos.column, kind)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.err_at(
            self.pos(),
            ParseErrorKind::Syntax(format!("expected {wanted}, found {}", self.peek().describe())),
        )
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn check_size(&self, terms: usize) -> Result<(), ParseError> {
        if terms > MAX_TERMS {
            return Err(self.err_at(
                self.pos(),
                ParseErrorKind::Syntax(format!("expression expands to more than {MAX_TERMS} terms")),
            ));
        }
        Ok(())
    }

    fn coord(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    fn differential(&self, name: &str) -> Option<usize> {
        name.strip_prefix('d').and_then(|rest| self.coord(rest))
    }

    fn is_differential(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if self.coord(s).is_none() && self.differential(s).is_some())
    }

    pub(super) fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("`+`, `-` or end of input"))
        }
    }

    /// `form := ['+'|'-'] term (('+'|'-') term)*`
    pub(super) fn form(&mut self) -> Result<DiffForm, ParseError> {
        let start = self.pos();
        let mut terms: Vec<(Vec<usize>, ScalarExpr)> = Vec::new();
        let mut degree: Option<usize> = None;
        let mut negative = self.sign();
        loop {
            let t = self.term()?;
            match degree {
                None => degree = Some(t.wedge.len()),
                Some(d) if d != t.wedge.len() => {
                    return Err(self.err_at(
                        t.pos,
                        ParseErrorKind::MixedDegree {
                            expected: d,
                            found: t.wedge.len(),
                        },
                    ))
                }
                Some(_) => {}
            }
            let c = if negative { t.coefficient.neg() } else { t.coefficient };
            terms.push((t.wedge, c));
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => break,
            }
            self.bump();
        }
        self.expect_end()?;
        DiffForm::from_terms(self.coords, degree.unwrap_or(0), terms)
            .map_err(|e| self.err_at(start, ParseErrorKind::Form(e.to_string())))
    }

    fn sign(&mut self) -> bool {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        }
    }

    /// `term := factor ('*' factor)* ['*' wedgeprod] | wedgeprod`
    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        let mut coefficient = ScalarExpr::one();
        loop {
            if self.is_differential() {
                let wedge = self.wedge_product()?;
                if *self.peek() == Tok::Star {
                    return Err(self.err_at(
                        self.pos(),
                        ParseErrorKind::Syntax(
                            "a wedge product must be the last factor of a term".into(),
                        ),
                    ));
                }
                return Ok(Term {
                    coefficient,
                    wedge,
                    pos,
                });
            }
            let f = self.factor()?;
            coefficient = coefficient.mul(&f);
            self.check_size(coefficient.num_terms())?;
            if *self.peek() != Tok::Star {
                return Ok(Term {
                    coefficient,
                    wedge: Vec::new(),
                    pos,
                });
            }
            self.bump();
        }
    }

    fn wedge_product(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.bump() {
                (Tok::Ident(s), p) => match self.differential(&s) {
                    Some(j) if self.coord(&s).is_none() => out.push(j),
                    _ => return Err(self.undeclared_differential(&s, p)),
                },
                (t, p) => {
                    return Err(self.err_at(
                        p,
                        ParseErrorKind::Syntax(format!(
                            "expected a differential, found {}",
                            t.describe()
                        )),
                    ))
                }
            }
            if *self.peek() != Tok::Wedge {
                return Ok(out);
            }
            self.bump();
        }
    }

    fn undeclared_differential(&self, s: &str, p: Pos) -> ParseError {
        let name = s.strip_prefix('d').unwrap_or(s);
        self.err_at(p, ParseErrorKind::UndeclaredCoordinate(name.to_string()))
    }

    /// `NUMBER ['/' NUMBER]`, the `/` part only when it is not a wedge.
    fn number(&mut self, first: Q) -> Result<Q, ParseError> {
        if *self.peek() != Tok::Slash {
            return Ok(first);
        }
        self.bump();
        match self.bump() {
            (Tok::Number { value, .. }, p) => {
                if value.is_zero() {
                    return Err(self.err_at(p, ParseErrorKind::Syntax("division by zero".into())));
                }
                Ok(first / value)
            }
            (t, p) => Err(self.err_at(
                p,
                ParseErrorKind::Syntax(format!("expected a denominator, found {}", t.describe())),
            )),
        }
    }

    /// `'^' ['-'|'+'] INT`, bounded by [`MAX_EXPONENT`].
    fn exponent(&mut self) -> Result<i32, ParseError> {
        let neg = self.sign();
        match self.bump() {
            (Tok::Number { value, integer }, p) => {
                if !integer || !value.is_integer() {
                    return Err(self.err_at(p, ParseErrorKind::NonIntegerExponent));
                }
                let v = value.to_integer();
                if v.abs() > BigInt::from(MAX_EXPONENT) {
                    return Err(self.err_at(
                        p,
                        ParseErrorKind::Syntax(format!("exponent exceeds {MAX_EXPONENT}")),
                    ));
                }
                let v = v.to_i32().expect("bounded");
                Ok(if neg { -v } else { v })
            }
            (_, p) => Err(self.err_at(p, ParseErrorKind::NonIntegerExponent)),
        }
    }

    fn factor(&mut self) -> Result<ScalarExpr, ParseError> {
        match self.bump() {
            (Tok::Number { value, .. }, _) => Ok(ScalarExpr::constant(self.number(value)?)),
            (Tok::Ident(s), _) if s == "exp" => {
                self.expect(Tok::LParen, "`(` after exp")?;
                let poly = self.poly_sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ScalarExpr::exp(poly))
            }
            (Tok::Ident(s), p) => {
                let Some(i) = self.coord(&s) else {
                    if self.differential(&s).is_some() {
                        return Err(self.err_at(
                            p,
                            ParseErrorKind::Syntax(
                                "differentials are not allowed inside scalar expressions".into(),
                            ),
                        ));
                    }
                    return Err(self.err_at(p, ParseErrorKind::UndeclaredCoordinate(s)));
                };
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let e = self.exponent()?;
                    Ok(ScalarExpr::power(i, e))
                } else {
                    Ok(ScalarExpr::var(i))
                }
            }
            (Tok::LParen, _) => {
                let s = self.scalar_sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(s)
            }
            (t, p) => Err(self.err_at(
                p,
                ParseErrorKind::Syntax(format!("expected a term, found {}", t.describe())),
            )),
        }
    }

    /// Signed sum of products of factors, no differentials.
    pub(super) fn scalar_sum(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = ScalarExpr::zero();
        let mut negative = self.sign();
        loop {
            let mut prod = self.factor()?;
            while *self.peek() == Tok::Star {
                self.bump();
                prod = prod.mul(&self.factor()?);
                self.check_size(prod.num_terms())?;
            }
            acc = if negative { acc.sub(&prod) } else { acc.add(&prod) };
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn poly_factor(&mut self) -> Result<Poly, ParseError> {
        match self.bump() {
            (Tok::Number { value, .. }, _) => Ok(Poly::constant(self.number(value)?)),
            (Tok::Ident(s), p) => {
                let Some(i) = self.coord(&s) else {
                    if s == "exp" || self.differential(&s).is_some() {
                        return Err(self.err_at(
                            p,
                            ParseErrorKind::Syntax("the argument of exp must be a polynomial".into()),
                        ));
                    }
                    return Err(self.err_at(p, ParseErrorKind::UndeclaredCoordinate(s)));
                };
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let ep = self.pos();
                    let e = self.exponent()?;
                    if e < 0 {
                        return Err(self.err_at(
                            ep,
                            ParseErrorKind::Syntax(
                                "negative powers are not allowed inside exp".into(),
                            ),
                        ));
                    }
                    Ok(Poly::term(qi(1), Monomial::power(i, e)))
                } else {
                    Ok(Poly::var(i))
                }
            }
            (Tok::LParen, _) => {
                let s = self.poly_sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(s)
            }
            (t, p) => Err(self.err_at(
                p,
                ParseErrorKind::Syntax(format!("expected a term, found {}", t.describe())),
            )),
        }
    }

    fn poly_sum(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero();
        let mut negative = self.sign();
        loop {
            let mut prod = self.poly_factor()?;
            while *self.peek() == Tok::Star {
                self.bump();
                prod = prod.mul(&self.poly_factor()?);
                self.check_size(prod.terms().len())?;
            }
            acc = if negative { acc.sub(&prod) } else { acc.add(&prod) };
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }
}

/// Signed rational literal: `[-]NUMBER['/'NUMBER]` with decimals allowed.
pub(super) fn rational(text: &str) -> Result<Q, ParseError> {
    let toks = lex(text, 1)?;
    let mut it = toks.into_iter().peekable();
    let neg = matches!(it.peek(), Some((Tok::Minus, _)));
    if neg || matches!(it.peek(), Some((Tok::Plus, _))) {
        it.next();
    }
    let bad = |p: Pos| {
        ParseError::new(
            p.line,
            p.column,
            ParseErrorKind::Syntax(format!("`{text}` is not a rational number")),
        )
    };
    let (num, p) = match it.next() {
        Some((Tok::Number { value, .. }, p)) => (value, p),
        Some((_, p)) => return Err(bad(p)),
        None => return Err(bad(Pos { line: 1, column: 1 })),
    };
    let mut v = num;
    if matches!(it.peek(), Some((Tok::Slash, _))) {
        it.next();
        match it.next() {
            Some((Tok::Number { value, .. }, _)) if !value.is_zero() => v /= value,
            Some((_, p)) => return Err(bad(p)),
            None => return Err(bad(p)),
        }
    }
    match it.next() {
        Some((Tok::Eof, _)) => Ok(if neg { -v } else { v }),
        Some((_, p)) => Err(bad(p)),
        None => Err(bad(p)),
    }
}
