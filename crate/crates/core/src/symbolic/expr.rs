//! Exact coefficient functions: finite sums `c · m(x) · exp(P(x))` with `m` a
//! Laurent monomial and `P` a polynomial.
//!
//! The representation is canonical: terms are keyed by `(P, m)` and never
//! carry zero coefficients. Since `exp` of distinct polynomials (including
//! ones differing by a nonzero rational constant) are linearly independent
//! over rational functions, structural equality is equality of functions.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::exp_value::ExpSum;
use super::poly::{Monomial, Poly};
use crate::scalar::{self, q_to_f64, qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ScalarExpr {
    terms: BTreeMap<(Poly, Monomial), Q>,
}

/// One summand `coefficient · monomial · exp(exponent)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprTerm<'a> {
    pub coefficient: &'a Q,
    pub monomial: &'a Monomial,
    pub exponent: &'a Poly,
}

impl ScalarExpr {
    pub fn constant(c: Q) -> Self {
        ScalarExpr::term(c, Monomial::one(), Poly::zero())
    }

    /// The coordinate function `x_i`.
    pub fn var(i: usize) -> Self {
        ScalarExpr::term(qi(1), Monomial::var(i), Poly::zero())
    }

    /// `x_i^e`, `e` possibly negative.
    pub fn power(i: usize, e: i32) -> Self {
        ScalarExpr::term(qi(1), Monomial::power(i, e), Poly::zero())
    }

    pub fn exp(p: Poly) -> Self {
        ScalarExpr::term(qi(1), Monomial::one(), p)
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut out = ScalarExpr::default();
        for (m, c) in p.terms() {
            out.add_term(c.clone(), m.clone(), Poly::zero());
        }
        out
    }

    pub fn term(c: Q, m: Monomial, exponent: Poly) -> Self {
        let mut out = ScalarExpr::default();
        out.add_term(c, m, exponent);
        out
    }

    pub fn add_term(&mut self, c: Q, m: Monomial, exponent: Poly) {
        if c.is_zero() {
            return;
        }
        let key = (exponent, m);
        let v = self.terms.remove(&key).unwrap_or_else(Q::zero) + c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ExprTerm<'_>> {
        self.terms.iter().map(|((p, m), c)| ExprTerm {
            coefficient: c,
            monomial: m,
            exponent: p,
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let ((p, m), c) = self.terms.iter().next().expect("one term");
                (p.is_zero() && m.is_one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return ScalarExpr::default();
        }
        ScalarExpr {
            terms: self.terms.iter().map(|(key, c)| (key.clone(), c * k)).collect(),
        }
    }

    /// `∂/∂x_i`, using `∂(m e^P) = (∂m + m ∂P) e^P`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = ScalarExpr::default();
        for ((p, m), c) in &self.terms {
            if let Some((k, dm)) = m.partial(i) {
                out.add_term(c * qi(k), dm, p.clone());
            }
            for (pm, pc) in p.partial(i).terms() {
                out.add_term(c * pc, m.mul(pm), p.clone());
            }
        }
        out
    }

    /// Exact quotient by a single-term expression, `None` otherwise.
    pub fn div_exact(&self, divisor: &ScalarExpr) -> Option<ScalarExpr> {
        if divisor.terms.len() != 1 {
            return None;
        }
        let ((dp, dm), dc) = divisor.terms.iter().next().expect("one term");
        let inv_m = Monomial::from_exponents(dm.exponents().map(|(i, e)| (i, -e)));
        let inv = ScalarExpr::term(dc.recip(), inv_m, dp.neg());
        Some(scalar::Ring::mul(self, &inv))
    }

    /// Variables with a negative power somewhere.
    pub fn pole_variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|(_, m)| m.exponents().filter(|&(_, e)| e < 0).map(|(i, _)| i))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .flat_map(|(p, m)| [p.max_var(), m.max_var()])
            .flatten()
            .max()
    }

    /// Exact value at a rational point as a sum of `c · e^a`; `Err(i)` at a pole in `x_i`.
    pub fn eval_exact(&self, point: &[Q]) -> Result<ExpSum, usize> {
        let mut out = ExpSum::default();
        for ((p, m), c) in &self.terms {
            let mv = m.eval(point).ok_or_else(|| {
                m.exponents()
                    .find(|&(i, e)| e < 0 && point[i].is_zero())
                    .map(|(i, _)| i)
                    .unwrap_or(0)
            })?;
            out.add_term(p.eval(point), c * mv);
        }
        Ok(out)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|((p, m), c)| q_to_f64(c) * m.eval_f64(point) * p.eval_f64(point).exp())
            .sum()
    }
}

impl scalar::Ring for ScalarExpr {
    fn zero() -> Self {
        ScalarExpr::default()
    }
    fn one() -> Self {
        ScalarExpr::constant(qi(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, m), c) in &other.terms {
            out.add_term(c.clone(), m.clone(), p.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = ScalarExpr::default();
        for ((pa, ma), ca) in &self.terms {
            for ((pb, mb), cb) in &other.terms {
                out.add_term(ca * cb, ma.mul(mb), pa.add(pb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&qi(-1))
    }
    fn from_int(n: i64) -> Self {
        ScalarExpr::constant(qi(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    #[test]
    fn derivative_of_exp_times_laurent() {
        // d/dx0 (x0^-1 e^{x0 x1}) = -x0^-2 e^{x0x1} + x0^-1 x1 e^{x0x1}
        let p = Poly::term(qi(1), Monomial::from_exponents([(0, 1), (1, 1)]));
        let f = ScalarExpr::term(qi(1), Monomial::power(0, -1), p.clone());
        let d = f.partial(0);
        let mut expect = ScalarExpr::term(qi(-1), Monomial::power(0, -2), p.clone());
        expect.add_term(qi(1), Monomial::from_exponents([(0, -1), (1, 1)]), p);
        assert_eq!(d, expect);
    }

    #[test]
    fn exp_products_merge_exponents() {
        let a = ScalarExpr::exp(Poly::var(0));
        let b = ScalarExpr::exp(Poly::var(0).neg());
        assert_eq!(a.mul(&b), ScalarExpr::one());
        // e^{x+1} and e^x are distinct terms
        let c = ScalarExpr::exp(Poly::var(0).add(&Poly::constant(qi(1))));
        assert_eq!(a.add(&c).num_terms(), 2);
    }

    #[test]
    fn exact_division_by_single_term() {
        let t = ScalarExpr::var(0);
        let f = ScalarExpr::var(0).mul(&ScalarExpr::var(1)).scale(&qi(3));
        assert_eq!(f.div_exact(&t).unwrap(), ScalarExpr::var(1).scale(&qi(3)));
        assert!(f.div_exact(&t.add(&ScalarExpr::one())).is_none());
    }

    #[test]
    fn evaluation_and_poles() {
        let f = ScalarExpr::power(0, -1);
        assert_eq!(f.eval_exact(&[qi(0)]), Err(0));
        let v = f.eval_exact(&[qi(2)]).unwrap();
        assert_eq!(v, ExpSum::constant(crate::scalar::q(1, 2)));
    }
}
