//! Text for exact values in reports.

use leeform::dsl::print_form;
use leeform::exterior::{ExtForm, Vector};
use leeform::symbolic::ExpValue;
use leeform::diff_forms::DiffForm;
use leeform::Q;

/// Coefficients that can be shown in report text.
pub trait Show {
    /// Plain text and whether it needs parentheses inside a product.
    fn show(&self) -> (String, bool);
    fn as_q(&self) -> Option<Q>;
}

impl Show for Q {
    fn show(&self) -> (String, bool) {
        (self.to_string(), false)
    }
    fn as_q(&self) -> Option<Q> {
        Some(self.clone())
    }
}

impl Show for ExpValue {
    fn show(&self) -> (String, bool) {
        match self.as_rational() {
            Some(q) => (q.to_string(), false),
            None => {
                let single = self.denominator().as_rational().is_some()
                    && self.numerator().terms().count() == 1;
                (self.to_string(), !single)
            }
        }
    }
    fn as_q(&self) -> Option<Q> {
        self.as_rational()
    }
}

pub fn point(p: &[Q]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn vector<T: Show + leeform::Ring>(v: &Vector<T>) -> String {
    let parts: Vec<String> = v.components().iter().map(|c| c.show().0).collect();
    format!("({})", parts.join(", "))
}

/// Form text in the input syntax when all coefficients are rational,
/// otherwise `coef*dx/\dy` with exact exponential values.
pub fn form<T: Show + leeform::Ring>(f: &ExtForm<T>, coords: &[String]) -> String {
    let rational: Option<ExtForm<Q>> = f
        .terms()
        .iter()
        .map(|(i, c)| c.as_q().map(|q| (*i, q)))
        .collect::<Option<_>>()
        .map(|terms| ExtForm::from_map(f.dim(), f.degree(), terms));
    if let Some(q) = rational {
        let d = DiffForm::from_constant(coords, &q).expect("matching dimension");
        return print_form(&d);
    }
    let mut parts = Vec::new();
    for (idx, c) in f.terms() {
        let (text, paren) = c.show();
        let text = if paren { format!("({text})") } else { text };
        let wedge: Vec<String> = idx.indices().map(|i| format!("d{}", coords[i - 1])).collect();
        if wedge.is_empty() {
            parts.push(text);
        } else {
            parts.push(format!("{text}*{}", wedge.join("/\\")));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Left-aligned text table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}
