//! Exact values of coefficient functions at rational points.
//!
//! At a rational point every coefficient evaluates to a finite sum
//! `Σ c_i e^{a_i}` with rational `c_i, a_i` ([`ExpSum`]). All exponents
//! involved are multiples of `1/D` for some `D`, so these sums are Laurent
//! polynomials in the transcendental `z = e^{1/D}`; [`ExpValue`] is the
//! fraction field, kept in lowest terms so that equality is structural.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::UPoly;
use crate::scalar::{self, q_to_f64, qi, Q};

/// `Σ coefficient · e^{exponent}`, keyed by exponent, zero-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpSum(BTreeMap<Q, Q>);

impl ExpSum {
    pub fn constant(c: Q) -> Self {
        let mut s = ExpSum::default();
        s.add_term(Q::zero(), c);
        s
    }

    pub fn add_term(&mut self, exponent: Q, c: Q) {
        if c.is_zero() {
            return;
        }
        let v = self.0.remove(&exponent).unwrap_or_else(Q::zero) + c;
        if !v.is_zero() {
            self.0.insert(exponent, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.0.iter()
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.0.len() {
            0 => Some(Q::zero()),
            1 => self.0.get(&Q::zero()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (a, c) in &other.0 {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        let mut out = ExpSum::default();
        for (a, c) in &self.0 {
            for (b, d) in &other.0 {
                out.add_term(a + b, c * d);
            }
        }
        out
    }

    pub fn scale(&self, k: &Q) -> ExpSum {
        if k.is_zero() {
            return ExpSum::default();
        }
        ExpSum(self.0.iter().map(|(a, c)| (a.clone(), c * k)).collect())
    }

    fn shift(&self, by: &Q) -> ExpSum {
        ExpSum(self.0.iter().map(|(a, c)| (a + by, c.clone())).collect())
    }

    pub fn to_f64(&self) -> f64 {
        self.0
            .iter()
            .map(|(a, c)| q_to_f64(c) * q_to_f64(a).exp())
            .sum()
    }

    fn exponent_denominator_lcm(&self, acc: BigInt) -> BigInt {
        self.0.keys().fold(acc, |l, a| l.lcm(a.denom()))
    }

    /// Dense polynomial in `z = e^{1/d}` after dividing by `z^{min exponent}`,
    /// returned with that minimal integer exponent.
    fn to_upoly(&self, d: &BigInt) -> (UPoly, BigInt) {
        let ints: Vec<(BigInt, &Q)> = self
            .0
            .iter()
            .map(|(a, c)| ((a * Q::from_integer(d.clone())).to_integer(), c))
            .collect();
        let min = ints.iter().map(|(e, _)| e.clone()).min().unwrap_or_default();
        let len = ints
            .iter()
            .map(|(e, _)| (e - &min).to_usize().expect("exponent span fits"))
            .max()
            .map_or(0, |m| m + 1);
        let mut v = vec![Q::zero(); len];
        for (e, c) in ints {
            v[(e - &min).to_usize().expect("fits")] = c.clone();
        }
        (UPoly::trimmed(v), min)
    }

    fn from_upoly(p: &UPoly, shift: &BigInt, d: &BigInt) -> ExpSum {
        let mut out = ExpSum::default();
        for (i, c) in p.0.iter().enumerate() {
            out.add_term(Q::new(BigInt::from(i) + shift, d.clone()), c.clone());
        }
        out
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (n, (a, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            if n > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let c = c.abs();
            if a.is_zero() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "exp({a})")?;
            } else {
                write!(f, "{c}*exp({a})")?;
            }
        }
        Ok(())
    }
}

/// Quotient of two [`ExpSum`]s in lowest terms.
///
/// Canonical form: the denominator, viewed as a polynomial in `z = e^{1/D}`,
/// is monic with lowest exponent 0 and coprime to the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpValue {
    num: ExpSum,
    den: ExpSum,
}

impl ExpValue {
    pub fn from_sum(num: ExpSum) -> Self {
        ExpValue {
            num,
            den: ExpSum::constant(qi(1)),
        }
    }

    pub fn rational(c: Q) -> Self {
        ExpValue::from_sum(ExpSum::constant(c))
    }

    pub fn numerator(&self) -> &ExpSum {
        &self.num
    }

    pub fn denominator(&self) -> &ExpSum {
        &self.den
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.den.as_rational().is_some_and(|d| d.is_one()) {
            self.num.as_rational()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den.to_f64()
    }

    fn normalized(num: ExpSum, den: ExpSum) -> ExpValue {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ExpValue::rational(Q::zero());
        }
        if den.0.len() == 1 {
            let (a, c) = den.0.iter().next().expect("one term");
            return ExpValue::from_sum(num.shift(&-a).scale(&c.recip()));
        }
        let d = den.exponent_denominator_lcm(num.exponent_denominator_lcm(BigInt::one()));
        let (np, nshift) = num.to_upoly(&d);
        let (dp, dshift) = den.to_upoly(&d);
        let g = np.gcd(&dp);
        let (np, _) = np.div_rem(&g);
        let (dp, _) = dp.div_rem(&g);
        let lc = dp.leading().recip();
        let (np, dp) = (np.scale(&lc), dp.scale(&lc));
        let num = ExpSum::from_upoly(&np, &(nshift - dshift), &d);
        if dp.degree() == 0 {
            return ExpValue::from_sum(num);
        }
        ExpValue {
            num,
            den: ExpSum::from_upoly(&dp, &BigInt::zero(), &d),
        }
    }
}

impl scalar::Ring for ExpValue {
    fn zero() -> Self {
        ExpValue::rational(qi(0))
    }
    fn one() -> Self {
        ExpValue::rational(qi(1))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return ExpValue::normalized(self.num.add(&other.num), self.den.clone());
        }
        ExpValue::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn mul(&self, other: &Self) -> Self {
        ExpValue::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        ExpValue {
            num: self.num.scale(&qi(-1)),
            den: self.den.clone(),
        }
    }
    fn from_int(n: i64) -> Self {
        ExpValue::rational(qi(n))
    }
}

impl scalar::Field for ExpValue {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(ExpValue::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Display for ExpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_rational().is_some_and(|d| d.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Field, Ring};

    fn e(a: Q) -> ExpValue {
        let mut s = ExpSum::default();
        s.add_term(a, qi(1));
        ExpValue::from_sum(s)
    }

    #[test]
    fn field_identities() {
        let x = e(qi(1)).add(&ExpValue::rational(qi(2)));
        let y = e(q(1, 2)).sub(&ExpValue::one());
        let xy = x.mul(&y);
        assert_eq!(xy.div(&y).unwrap(), x);
        assert_eq!(x.mul(&x.inv().unwrap()), ExpValue::one());
        // (e - 1) / (e^{1/2} - 1) = e^{1/2} + 1
        let num = e(qi(1)).sub(&ExpValue::one());
        let quot = num.div(&y).unwrap();
        assert_eq!(quot, e(q(1, 2)).add(&ExpValue::one()));
        assert!((quot.to_f64() - (0.5f64.exp() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn e_is_not_rational() {
        assert!(!e(qi(1)).sub(&ExpValue::rational(qi(3))).is_zero());
        assert_eq!(e(qi(0)), ExpValue::one());
    }
}
