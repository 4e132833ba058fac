//! Exact exterior algebra, the wedge maps `β ↦ Ω∧β` of a 2-form, and
//! symbolic differential forms for the Lee equation `dω = β∧ω`.

pub mod diff_forms;
pub mod dsl;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod multi_index;
pub mod scalar;
pub mod random;
pub mod subspace;
pub mod symbolic;
pub mod wedge_solver;

pub use error::{Error, Result};
pub use exterior::{ExtForm, Vector};
pub use multi_index::MultiIndex;
pub use scalar::{Field, Ring, Q};
