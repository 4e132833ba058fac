//! Text syntax for differential forms.
//!
//! ```text
//! form     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [scalar '*'] wedgeprod | scalar
//! wedgeprod:= dsym ('/\' dsym)*          ('∧' accepted as well)
//! dsym     := 'd' IDENT
//! scalar   := products of NUMBER ['/' NUMBER], IDENT, IDENT '^' INT,
//!             'exp' '(' poly ')' and parenthesized sums
//! ```
//!
//! A `.form` file starts with `coords: a, b, …` and then has one
//! `name = expr` per line; blank lines and lines starting with `#` are skipped.

mod parser;
mod printer;

use std::fmt;

use crate::diff_forms::{Axis, DiffForm, Grid};
use crate::multi_index::MAX_DIM;
use crate::scalar::Q;
use crate::symbolic::ScalarExpr;

pub use parser::{MAX_EXPONENT, MAX_TERMS};
pub use printer::{print_form, print_poly, print_scalar};

/// Per-axis and total caps for grid specs.
pub const MAX_AXIS_POINTS: usize = 100;
pub const MAX_GRID_POINTS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UndeclaredCoordinate(String),
    MixedDegree { expected: usize, found: usize },
    NonIntegerExponent,
    InvalidCoordinates(String),
    Form(String),
}

/// Parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(s) => write!(f, "{s}"),
            ParseErrorKind::UndeclaredCoordinate(c) => write!(f, "undeclared coordinate `{c}`"),
            ParseErrorKind::MixedDegree { expected, found } => write!(
                f,
                "mixed degrees: term of degree {found} in a form of degree {expected}"
            ),
            ParseErrorKind::NonIntegerExponent => write!(f, "exponent must be an integer"),
            ParseErrorKind::InvalidCoordinates(s) => write!(f, "invalid coordinates: {s}"),
            ParseErrorKind::Form(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Declared coordinates plus expression text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSource {
    pub coords: Vec<String>,
    pub body: String,
}

impl FormSource {
    pub fn new(coords: &[&str], body: &str) -> Self {
        FormSource {
            coords: coords.iter().map(|s| s.to_string()).collect(),
            body: body.to_string(),
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Check a coordinate list: identifiers, distinct, not `exp`, at most 64,
/// and no name equal to `d` followed by another name.
pub fn validate_coords(coords: &[String]) -> Result<(), ParseError> {
    let bad = |msg: String| ParseError::new(1, 1, ParseErrorKind::InvalidCoordinates(msg));
    if coords.is_empty() {
        return Err(bad("no coordinates declared".into()));
    }
    if coords.len() > MAX_DIM {
        return Err(bad(format!("more than {MAX_DIM} coordinates")));
    }
    for (i, c) in coords.iter().enumerate() {
        if !is_ident(c) {
            return Err(bad(format!("`{c}` is not an identifier")));
        }
        if c == "exp" {
            return Err(bad("`exp` is reserved".into()));
        }
        if coords[..i].contains(c) {
            return Err(bad(format!("`{c}` declared twice")));
        }
        if let Some(rest) = c.strip_prefix('d') {
            if coords.iter().any(|o| o == rest) {
                return Err(bad(format!("`{c}` is ambiguous with the differential of `{rest}`")));
            }
        }
    }
    Ok(())
}

/// `"x1, x2, y1"` → coordinate list.
pub fn parse_coords(list: &str) -> Result<Vec<String>, ParseError> {
    let coords: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    validate_coords(&coords)?;
    Ok(coords)
}

fn parse_at(coords: &[String], body: &str, line: usize) -> Result<DiffForm, ParseError> {
    validate_coords(coords)?;
    parser::Parser::new(coords, body, line)?.form()
}

pub fn parse_form(src: &FormSource) -> Result<DiffForm, ParseError> {
    parse_at(&src.coords, &src.body, 1)
}

/// A scalar expression without differentials.
pub fn parse_scalar(coords: &[String], text: &str) -> Result<ScalarExpr, ParseError> {
    validate_coords(coords)?;
    let mut p = parser::Parser::new(coords, text, 1)?;
    let s = p.scalar_sum()?;
    p.expect_end()?;
    Ok(s)
}

/// `[-]NUMBER['/'NUMBER]`, decimals allowed.
pub fn parse_rational(text: &str) -> Result<Q, ParseError> {
    parser::rational(text.trim())
}

/// Named forms sharing one coordinate list.
#[derive(Clone, Debug, PartialEq)]
pub struct FormFile {
    pub coords: Vec<String>,
    pub forms: Vec<(String, DiffForm)>,
}

impl FormFile {
    pub fn get(&self, name: &str) -> Option<&DiffForm> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

pub fn parse_form_file(text: &str) -> Result<FormFile, ParseError> {
    let mut coords: Option<Vec<String>> = None;
    let mut forms: Vec<(String, DiffForm)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(cs) = &coords else {
            let Some(list) = trimmed.strip_prefix("coords:") else {
                return Err(ParseError::new(
                    line,
                    1,
                    ParseErrorKind::Syntax("expected `coords: <comma list>` first".into()),
                ));
            };
            coords = Some(
                parse_coords(list).map_err(|e| ParseError::new(line, e.column, e.kind))?,
            );
            continue;
        };
        let Some(eq) = raw.find('=') else {
            return Err(ParseError::new(
                line,
                1,
                ParseErrorKind::Syntax("expected `<name> = <expr>`".into()),
            ));
        };
        let name = raw[..eq].trim();
        if !is_ident(name) {
            return Err(ParseError::new(
                line,
                1,
                ParseErrorKind::Syntax(format!("`{name}` is not a valid form name")),
            ));
        }
        if forms.iter().any(|(n, _)| n == name) {
            return Err(ParseError::new(
                line,
                1,
                ParseErrorKind::Syntax(format!("form `{name}` defined twice")),
            ));
        }
        // pad so that columns refer to the original line
        let prefix_cols = raw[..=eq].chars().count();
        let body = format!("{}{}", " ".repeat(prefix_cols), &raw[eq + 1..]);
        let form = parse_at(cs, &body, line)?;
        forms.push((name.to_string(), form));
    }
    let Some(coords) = coords else {
        return Err(ParseError::new(
            1,
            1,
            ParseErrorKind::Syntax("missing `coords:` line".into()),
        ));
    };
    Ok(FormFile { coords, forms })
}

/// Grid from `"coord=lo:hi:count"` entries separated by spaces or commas;
/// unlisted coordinates take the defaults (poles at the given 0-based indices).
pub fn parse_grid(coords: &[String], spec: &str, poles: &[usize]) -> Result<Grid, ParseError> {
    let mut grid = Grid::default_for(coords.len(), poles);
    let mut col = 1;
    let err = |col: usize, msg: String| ParseError::new(1, col, ParseErrorKind::Syntax(msg));
    for piece in spec.split([',', ' ', '\t']) {
        let here = col;
        col += piece.chars().count() + 1;
        if piece.is_empty() {
            continue;
        }
        let Some((name, range)) = piece.split_once('=') else {
            return Err(err(here, format!("expected `coord=lo:hi:count`, found `{piece}`")));
        };
        let Some(j) = coords.iter().position(|c| c == name) else {
            return Err(ParseError::new(
                1,
                here,
                ParseErrorKind::UndeclaredCoordinate(name.to_string()),
            ));
        };
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(err(here, format!("expected `lo:hi:count` for `{name}`")));
        }
        let lo = parse_rational(parts[0]).map_err(|e| err(here, e.to_string()))?;
        let hi = parse_rational(parts[1]).map_err(|e| err(here, e.to_string()))?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| err(here, format!("`{}` is not a point count", parts[2])))?;
        if count == 0 || count > MAX_AXIS_POINTS {
            return Err(err(here, format!("point count must be in 1..={MAX_AXIS_POINTS}")));
        }
        grid.axes[j] = Axis::new(lo, hi, count);
    }
    if grid.axes.iter().map(|a| a.count).try_fold(1usize, |acc, c| acc.checked_mul(c)).is_none_or(|n| n > MAX_GRID_POINTS) {
        return Err(err(1, format!("grid exceeds {MAX_GRID_POINTS} points")));
    }
    Ok(grid)
}
