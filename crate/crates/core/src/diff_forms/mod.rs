//! Differential forms on a single chart with exact [`ScalarExpr`] coefficients.
//!
//! Coordinate `j` (0-based in `coords`) owns the differential `d coords[j]`,
//! which is basis covector `j + 1` of the underlying [`ExtForm`].

mod catalog;
mod grid;
mod lee;

pub use catalog::{example_catalog, CatalogEntry, Identity, IdentityKind};
pub use grid::{Axis, Grid};
pub use lee::{
    classify_theorem_sets, cosymplectic_check, frobenius_residual, lee_solve, lee_verify,
    Classification, CosymplecticReport, FactorRecovery, LeeSolveReport, LeeVerification,
    PointClassification, PointSolve,
};

use crate::error::{Error, Result};
use crate::exterior::ExtForm;
use crate::multi_index::{MultiIndex, MAX_DIM};
use crate::scalar::{Ring, Q};
use crate::symbolic::{ExpValue, ScalarExpr};

#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm {
    coords: Vec<String>,
    form: ExtForm<ScalarExpr>,
}

impl DiffForm {
    pub fn new(coords: Vec<String>, form: ExtForm<ScalarExpr>) -> Result<Self> {
        if form.dim() != coords.len() {
            return Err(Error::DimensionMismatch(form.dim(), coords.len()));
        }
        if coords.len() > MAX_DIM {
            return Err(Error::DimensionTooLarge(coords.len()));
        }
        Ok(DiffForm { coords, form })
    }

    pub fn zero(coords: &[String], degree: usize) -> Self {
        DiffForm {
            coords: coords.to_vec(),
            form: ExtForm::zero(coords.len(), degree),
        }
    }

    /// The function `f` as a 0-form.
    pub fn function(coords: &[String], f: ScalarExpr) -> Self {
        DiffForm {
            coords: coords.to_vec(),
            form: ExtForm::constant(coords.len(), f),
        }
    }

    /// `d x_j` for 0-based coordinate `j`.
    pub fn differential(coords: &[String], j: usize) -> Self {
        DiffForm {
            coords: coords.to_vec(),
            form: ExtForm::covector_basis(coords.len(), j + 1),
        }
    }

    /// `Σ c_I dx_I` from 0-based coordinate index lists (any order; sign applied).
    pub fn from_terms(
        coords: &[String],
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, ScalarExpr)>,
    ) -> Result<Self> {
        let n = coords.len();
        let mut form = ExtForm::zero(n, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    len: idx.len(),
                    degree,
                });
            }
            let mut acc = Some((MultiIndex::EMPTY, 1i64));
            for &j in &idx {
                if j >= n {
                    return Err(Error::IndexOutOfRange { index: j, dim: n });
                }
                acc = acc.and_then(|(m, s)| {
                    m.wedge_sign(MultiIndex::single(j + 1))
                        .map(|(m2, s2)| (m2, s * s2))
                });
            }
            if let Some((m, s)) = acc {
                let c = if s < 0 { c.neg() } else { c };
                form.add_term(m, c);
            }
        }
        DiffForm::new(coords.to_vec(), form)
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn form(&self) -> &ExtForm<ScalarExpr> {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// Coefficient of `dx_{idx}` for increasing 0-based indices.
    pub fn coefficient(&self, idx: &[usize]) -> Result<ScalarExpr> {
        let shifted: Vec<usize> = idx.iter().map(|j| j + 1).collect();
        Ok(self.form.coefficient(MultiIndex::new(&shifted, self.dim())?))
    }

    fn same_coords(&self, other: &DiffForm) -> Result<()> {
        if self.coords != other.coords {
            return Err(Error::CoordinateMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.same_coords(other)?;
        Ok(DiffForm {
            coords: self.coords.clone(),
            form: self.form.add(&other.form)?,
        })
    }

    pub fn sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        DiffForm {
            coords: self.coords.clone(),
            form: self.form.neg(),
        }
    }

    /// Multiply by a function.
    pub fn scale(&self, f: &ScalarExpr) -> DiffForm {
        DiffForm {
            coords: self.coords.clone(),
            form: self.form.scale(f),
        }
    }

    pub fn scale_q(&self, c: &Q) -> DiffForm {
        self.scale(&ScalarExpr::constant(c.clone()))
    }

    /// `d(Σ f_I dx_I) = Σ_I Σ_j ∂_j f_I dx_j∧dx_I`.
    pub fn exterior_derivative(&self) -> DiffForm {
        let n = self.dim();
        let mut out = ExtForm::zero(n, self.degree() + 1);
        if self.degree() < n {
            for (idx, f) in self.form.terms() {
                for j in 0..n {
                    if idx.contains(j + 1) {
                        continue;
                    }
                    let df = f.partial(j);
                    if Ring::is_zero(&df) {
                        continue;
                    }
                    let (m, s) = MultiIndex::single(j + 1)
                        .wedge_sign(*idx)
                        .expect("disjoint indices");
                    out.add_term(m, if s < 0 { df.neg() } else { df });
                }
            }
        }
        DiffForm {
            coords: self.coords.clone(),
            form: out,
        }
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        self.same_coords(other)?;
        Ok(DiffForm {
            coords: self.coords.clone(),
            form: self.form.wedge(&other.form)?,
        })
    }

    /// Exact value at a rational point.
    pub fn eval_at(&self, point: &[Q]) -> Result<ExtForm<ExpValue>> {
        self.check_point(point.len())?;
        let mut terms = std::collections::BTreeMap::new();
        for (idx, f) in self.form.terms() {
            let v = f
                .eval_exact(point)
                .map_err(|j| Error::Pole(self.coords[j].clone()))?;
            terms.insert(*idx, ExpValue::from_sum(v));
        }
        Ok(ExtForm::from_map(self.dim(), self.degree(), terms))
    }

    /// Floating-point value; poles give non-finite coefficients.
    pub fn eval_f64(&self, point: &[f64]) -> Result<ExtForm<f64>> {
        self.check_point(point.len())?;
        let terms = self
            .form
            .terms()
            .iter()
            .map(|(idx, f)| (*idx, f.eval_f64(point)))
            .collect();
        Ok(ExtForm::from_map(self.dim(), self.degree(), terms))
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::PointDimension {
                expected: self.dim(),
                got: len,
            });
        }
        Ok(())
    }

    /// The constant form with the same coefficients, if every coefficient is a rational constant.
    pub fn as_constant(&self) -> Option<ExtForm<Q>> {
        let mut terms = std::collections::BTreeMap::new();
        for (idx, f) in self.form.terms() {
            terms.insert(*idx, f.as_constant()?);
        }
        Some(ExtForm::from_map(self.dim(), self.degree(), terms))
    }

    /// Lift a constant form onto the coordinates `coords`.
    pub fn from_constant(coords: &[String], form: &ExtForm<Q>) -> Result<Self> {
        DiffForm::new(coords.to_vec(), form.convert(|c| ScalarExpr::constant(c.clone())))
    }

    /// 0-based coordinates that appear with a negative power in some coefficient.
    pub fn pole_coordinates(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .form
            .terms()
            .values()
            .flat_map(ScalarExpr::pole_variables)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Wedge product that checks the coordinate lists.
pub fn wedge_d(a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    a.wedge(b)
}

pub fn exterior_derivative(omega: &DiffForm) -> DiffForm {
    omega.exterior_derivative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;
    use crate::symbolic::{Monomial, Poly};

    fn coords(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn derivative_of_beta0() {
        let c = coords(&["x1", "x2", "y1", "y2"]);
        let beta = DiffForm::from_terms(
            &c,
            1,
            [(vec![2], ScalarExpr::var(0)), (vec![3], ScalarExpr::var(1))],
        )
        .unwrap();
        let expect = DiffForm::from_terms(
            &c,
            2,
            [(vec![0, 2], ScalarExpr::one()), (vec![1, 3], ScalarExpr::one())],
        )
        .unwrap();
        assert_eq!(beta.exterior_derivative(), expect);
    }

    #[test]
    fn derivative_of_laurent_dt_vanishes() {
        let c = coords(&["t"]);
        let f = DiffForm::from_terms(&c, 1, [(vec![0], ScalarExpr::power(0, -1))]).unwrap();
        assert!(f.exterior_derivative().is_zero());
    }

    #[test]
    fn from_terms_sorts_with_sign() {
        let c = coords(&["a", "b"]);
        let f = DiffForm::from_terms(&c, 2, [(vec![1, 0], ScalarExpr::one())]).unwrap();
        assert_eq!(f.coefficient(&[0, 1]).unwrap(), ScalarExpr::from_int(-1));
        let g = DiffForm::from_terms(&c, 2, [(vec![1, 1], ScalarExpr::one())]).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn eval_at_pole_and_origin() {
        let c = coords(&["t", "x"]);
        let f = DiffForm::from_terms(&c, 1, [(vec![0], ScalarExpr::power(0, -1))]).unwrap();
        assert_eq!(f.eval_at(&[qi(0), qi(1)]), Err(Error::Pole("t".into())));
        let e = DiffForm::function(
            &c,
            ScalarExpr::exp(Poly::term(qi(1), Monomial::from_exponents([(0, 1), (1, 1)]))),
        );
        assert_eq!(
            e.eval_at(&[qi(0), qi(0)]).unwrap().scalar_value(),
            ExpValue::one()
        );
    }

    #[test]
    fn coordinate_mismatch() {
        let a = DiffForm::differential(&coords(&["t"]), 0);
        let b = DiffForm::differential(&coords(&["s"]), 0);
        assert_eq!(wedge_d(&a, &b), Err(Error::CoordinateMismatch));
    }
}
