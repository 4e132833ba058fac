//! Exact coefficient functions and their point values.

pub mod exp_value;
pub mod expr;
pub mod poly;

pub use exp_value::{ExpSum, ExpValue};
pub use expr::{ExprTerm, ScalarExpr};
pub use poly::{Monomial, Poly, UPoly};
