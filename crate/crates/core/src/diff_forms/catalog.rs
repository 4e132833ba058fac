//! Built-in worked examples with machine-checkable identities.

use super::DiffForm;
use crate::scalar::{qi, Ring};
use crate::symbolic::{Monomial, Poly, ScalarExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    /// `lhs = rhs` symbolically.
    Equal,
    /// `lhs ≠ 0` symbolically (`rhs` unused).
    NonZero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub label: String,
    pub kind: IdentityKind,
    pub lhs: DiffForm,
    pub rhs: DiffForm,
}

impl Identity {
    pub fn holds(&self) -> bool {
        match self.kind {
            IdentityKind::Equal => self.lhs == self.rhs,
            IdentityKind::NonZero => !self.lhs.is_zero(),
        }
    }

    /// `lhs - rhs` for equalities, `lhs` otherwise.
    pub fn witness(&self) -> DiffForm {
        match self.kind {
            IdentityKind::Equal => self.lhs.sub(&self.rhs).expect("shared coordinates"),
            IdentityKind::NonZero => self.lhs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub coords: Vec<String>,
    pub forms: Vec<(String, DiffForm)>,
    pub identities: Vec<Identity>,
}

impl CatalogEntry {
    pub fn form(&self, name: &str) -> Option<&DiffForm> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn one() -> ScalarExpr {
    ScalarExpr::one()
}

/// `x_a y_a + x_b y_b` as an exponent polynomial.
fn f0(x1: usize, x2: usize, y1: usize, y2: usize) -> Poly {
    Poly::term(qi(1), Monomial::from_exponents([(x1, 1), (y1, 1)]))
        .add(&Poly::term(qi(1), Monomial::from_exponents([(x2, 1), (y2, 1)])))
}

/// `(ω₀, β₀)` on the coordinates `c` with the given positions of x1, x2, y1, y2.
fn omega_beta(c: &[String], x1: usize, x2: usize, y1: usize, y2: usize) -> (DiffForm, DiffForm) {
    let omega = DiffForm::from_terms(
        c,
        2,
        [
            (vec![x1, x2], ScalarExpr::exp(f0(x1, x2, y1, y2))),
            (vec![y1, y2], one()),
        ],
    )
    .expect("valid indices");
    let beta = DiffForm::from_terms(
        c,
        1,
        [(vec![y1], ScalarExpr::var(x1)), (vec![y2], ScalarExpr::var(x2))],
    )
    .expect("valid indices");
    (omega, beta)
}

fn eq(label: &str, lhs: DiffForm, rhs: DiffForm) -> Identity {
    Identity {
        label: label.to_string(),
        kind: IdentityKind::Equal,
        lhs,
        rhs,
    }
}

fn nonzero(label: &str, lhs: DiffForm) -> Identity {
    let rhs = DiffForm::zero(lhs.coords(), lhs.degree());
    Identity {
        label: label.to_string(),
        kind: IdentityKind::NonZero,
        lhs,
        rhs,
    }
}

fn omega_f() -> CatalogEntry {
    let c = names(&["x1", "x2", "y1", "y2"]);
    let (omega, beta) = omega_beta(&c, 0, 1, 2, 3);
    let d_beta = DiffForm::from_terms(&c, 2, [(vec![0, 2], one()), (vec![1, 3], one())])
        .expect("valid indices");
    let w = |a: &DiffForm, b: &DiffForm| a.wedge(b).expect("shared coordinates");
    let identities = vec![
        eq(
            "d(omega0) = beta0 /\\ omega0",
            omega.exterior_derivative(),
            w(&beta, &omega),
        ),
        eq(
            "d(beta0) = dx1/\\dy1 + dx2/\\dy2",
            beta.exterior_derivative(),
            d_beta.clone(),
        ),
        eq(
            "d(beta0) /\\ omega0 = 0",
            w(&beta.exterior_derivative(), &omega),
            DiffForm::zero(&c, 4),
        ),
    ];
    CatalogEntry {
        name: "omega_f",
        coords: c,
        forms: vec![
            ("omega0".into(), omega),
            ("beta0".into(), beta),
            ("dbeta0".into(), d_beta),
        ],
        identities,
    }
}

fn contact_r5() -> CatalogEntry {
    let c = names(&["t", "x1", "x2", "y1", "y2"]);
    let (omega, beta) = omega_beta(&c, 1, 2, 3, 4);
    let eta = DiffForm::differential(&c, 0);
    let phi = omega.scale(&ScalarExpr::var(0));
    let gamma = DiffForm::from_terms(&c, 1, [(vec![0], ScalarExpr::power(0, -1))])
        .expect("valid indices")
        .add(&beta)
        .expect("shared coordinates");
    let w = |a: &DiffForm, b: &DiffForm| a.wedge(b).expect("shared coordinates");
    let dg = gamma.exterior_derivative();
    let contact = w(&w(&gamma, &dg), &dg);
    let expected_contact = DiffForm::from_terms(
        &c,
        5,
        [(vec![0, 1, 3, 2, 4], ScalarExpr::power(0, -1).scale(&qi(2)))],
    )
    .expect("valid indices");
    let identities = vec![
        eq("d(eta) = 0", eta.exterior_derivative(), DiffForm::zero(&c, 2)),
        eq(
            "d(Phi) = gamma /\\ Phi",
            phi.exterior_derivative(),
            w(&gamma, &phi),
        ),
        nonzero("eta /\\ Phi /\\ Phi != 0", w(&w(&eta, &phi), &phi)),
        nonzero("gamma /\\ dgamma /\\ dgamma != 0", contact.clone()),
        eq(
            "gamma /\\ dgamma /\\ dgamma = 2 t^-1 dt/\\dx1/\\dy1/\\dx2/\\dy2",
            contact,
            expected_contact,
        ),
    ];
    CatalogEntry {
        name: "contact_R5",
        coords: c,
        forms: vec![
            ("eta".into(), eta),
            ("Phi".into(), phi),
            ("gamma".into(), gamma),
        ],
        identities,
    }
}

/// The built-in instances `omega_f` (on x1, x2, y1, y2) and `contact_R5` (on t, x1, x2, y1, y2).
pub fn example_catalog() -> Vec<CatalogEntry> {
    vec![omega_f(), contact_r5()]
}
