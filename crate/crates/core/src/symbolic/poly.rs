//! Sparse multivariate polynomials and Laurent monomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{qi, Q};

/// Monomial `Π x_i^{e_i}` with nonzero integer exponents, keyed by variable index.
///
/// Negative exponents are allowed (Laurent monomials); polynomial monomials
/// simply never carry them. Ordered by total degree, then lexicographically
/// with lower variable indices more significant, so `x1*y1 > x2*y2` for
/// coordinates `(x1, x2, y1, y2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<usize, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial::power(i, 1)
    }

    pub fn power(i: usize, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if e != 0 {
            m.insert(i, e);
        }
        Monomial(m)
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut m = Monomial::one();
        for (i, e) in exps {
            m = m.mul(&Monomial::power(i, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, i: usize) -> i32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0.iter().map(|(&i, &e)| (i, e))
    }

    pub fn total_degree(&self) -> i64 {
        self.0.values().map(|&e| e as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.values().any(|&e| e < 0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (&i, &e) in &other.0 {
            let v = m.get(&i).copied().unwrap_or(0) + e;
            if v == 0 {
                m.remove(&i);
            } else {
                m.insert(i, v);
            }
        }
        Monomial(m)
    }

    /// `∂/∂x_i`: coefficient and resulting monomial, `None` when the derivative vanishes.
    pub fn partial(&self, i: usize) -> Option<(i64, Monomial)> {
        let e = self.exponent(i);
        if e == 0 {
            return None;
        }
        Some((e as i64, self.mul(&Monomial::power(i, -1))))
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let mut v = qi(1);
        for (&i, &e) in &self.0 {
            let x = &point[i];
            if e < 0 {
                if x.is_zero() {
                    return None;
                }
                v *= x.recip().pow(-e);
            } else {
                v *= x.pow(e);
            }
        }
        Some(v)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.0
            .iter()
            .map(|(&i, &e)| point[i].powi(e))
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let vars: std::collections::BTreeSet<usize> =
                    self.0.keys().chain(other.0.keys()).copied().collect();
                for v in vars {
                    let o = self.exponent(v).cmp(&other.exponent(v));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients and nonnegative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly(BTreeMap<Monomial, Q>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(i: usize) -> Self {
        Poly::term(qi(1), Monomial::var(i))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        debug_assert!(!m.has_negative());
        let mut p = BTreeMap::new();
        if !c.is_zero() {
            p.insert(m, c);
        }
        Poly(p)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.0
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.0.len() {
            0 => Some(Q::zero()),
            1 => self.0.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let v = self.0.remove(&m).unwrap_or_else(Q::zero) + c;
        if !v.is_zero() {
            self.0.insert(m, v);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(m, c)| (m.clone(), c * k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(Q::one()), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if let Some((k, dm)) = m.partial(i) {
                out.add_term(dm, c * qi(k));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.0
            .iter()
            .map(|(m, c)| c * m.eval(point).expect("polynomial has no poles"))
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.0
            .iter()
            .map(|(m, c)| crate::scalar::q_to_f64(c) * m.eval_f64(point))
            .sum()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.keys().filter_map(Monomial::max_var).max()
    }
}

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(pub Vec<Q>);

impl UPoly {
    pub fn trimmed(mut v: Vec<Q>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        UPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, k: &Q) -> UPoly {
        UPoly::trimmed(self.0.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree();
        let lc = d.leading().recip();
        if r.len() < d.0.len() {
            return (UPoly(Vec::new()), UPoly::trimmed(r));
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        (UPoly::trimmed(q), UPoly::trimmed(r))
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}
