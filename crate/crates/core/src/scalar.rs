//! Coefficient rings used by forms and matrices.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Commutative ring with exact zero test.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Bring `rows` (dense, row-major) to reduced row echelon form and
    /// return the pivot column of each nonzero row.
    ///
    /// The default is plain Gauss-Jordan with first-nonzero pivoting.
    fn row_reduce(rows: &mut Vec<Vec<Self>>, ncols: usize) -> Vec<usize> {
        crate::linalg::gauss_jordan(rows, ncols)
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn from_int(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn row_reduce(rows: &mut Vec<Vec<Self>>, ncols: usize) -> Vec<usize> {
        crate::linalg::fraction_free_rref(rows, ncols)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
}

/// `n / d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Nearest f64 to a rational.
pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Sign of a permutation given as a slice of distinct keys (+1 / -1), counting inversions.
pub fn permutation_sign<T: Ord>(items: &[T]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `k!` as a rational.
pub fn factorial(k: usize) -> Q {
    (1..=k as i64).fold(qi(1), |acc, i| acc * qi(i))
}
