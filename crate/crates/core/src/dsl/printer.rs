//! Canonical text for forms and scalars.
//!
//! Form terms follow the multi-index order; scalar terms are grouped by
//! exponent polynomial and printed with higher monomials first.

use num_traits::Signed;

use crate::diff_forms::DiffForm;
use crate::scalar::{Ring, Q};
use crate::symbolic::{Monomial, Poly, ScalarExpr};

fn monomial_factors(m: &Monomial, coords: &[String]) -> Vec<String> {
    m.exponents()
        .map(|(i, e)| {
            let name = &coords[i];
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect()
}

/// `|c|` and factors joined by `*`, the coefficient omitted when it is 1.
fn product(c: &Q, mut factors: Vec<String>) -> String {
    let a = c.abs();
    if factors.is_empty() || !Ring::is_one(&a) {
        factors.insert(0, a.to_string());
    }
    factors.join("*")
}

/// Signed sum `t1 ± t2 …` from `(negative, body)` pairs.
fn signed_sum(parts: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (n, (neg, body)) in parts.into_iter().enumerate() {
        match (n, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn print_poly(p: &Poly, coords: &[String]) -> String {
    signed_sum(
        p.terms()
            .iter()
            .rev()
            .map(|(m, c)| (c.is_negative(), product(c, monomial_factors(m, coords)))),
    )
}

fn scalar_parts(s: &ScalarExpr, coords: &[String]) -> Vec<(bool, String)> {
    let mut terms: Vec<_> = s.terms().collect();
    // stable: exponent ascending, monomial descending
    terms.sort_by(|a, b| a.exponent.cmp(b.exponent).then(b.monomial.cmp(a.monomial)));
    terms
        .into_iter()
        .map(|t| {
            let mut factors = monomial_factors(t.monomial, coords);
            if !t.exponent.is_zero() {
                factors.push(format!("exp({})", print_poly(t.exponent, coords)));
            }
            (t.coefficient.is_negative(), product(t.coefficient, factors))
        })
        .collect()
}

pub fn print_scalar(s: &ScalarExpr, coords: &[String]) -> String {
    signed_sum(scalar_parts(s, coords))
}

pub fn print_form(omega: &DiffForm) -> String {
    let coords = omega.coords();
    if omega.degree() == 0 {
        return print_scalar(&omega.form().scalar_value(), coords);
    }
    let parts = omega.form().terms().iter().map(|(idx, c)| {
        let wedge: Vec<String> = idx.indices().map(|i| format!("d{}", coords[i - 1])).collect();
        let wedge = wedge.join("/\\");
        let mut parts = scalar_parts(c, coords);
        if parts.len() > 1 {
            (false, format!("({})*{wedge}", signed_sum(parts)))
        } else {
            let (neg, body) = parts.pop().expect("nonzero coefficient");
            if body == "1" {
                (neg, wedge)
            } else {
                (neg, format!("{body}*{wedge}"))
            }
        }
    });
    signed_sum(parts)
}
