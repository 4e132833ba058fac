//! Sparse exterior forms on a fixed `n`-dimensional space.
//!
//! Evaluation is normalized so that `(η1∧…∧ηk)(x1,…,xk) = det[ηi(xj)] / k!`.
//! With the interior product scaled by the degree, `ι_v(θ)(u…) = k·θ(v,u…)`,
//! contraction of a basis monomial is the usual alternating deletion and the
//! pairing `ι_{[x1…xk]}θ` equals `(-1)^{k(k-1)/2} k! θ(x1,…,xk)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::multi_index::{MultiIndex, MAX_DIM};
use crate::scalar::{Field, Ring, Q};

/// Homogeneous exterior form with coefficients in `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtForm<T = Q> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, T>,
}

/// A vector of `V` in the working basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<T = Q>(Vec<T>);

impl<T: Ring> Vector<T> {
    pub fn new(components: Vec<T>) -> Self {
        Vector(components)
    }

    /// Standard basis vector `e_i` (1-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        Vector((1..=dim).map(|j| if i == j { T::one() } else { T::zero() }).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Vector(vec![T::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[T] {
        &self.0
    }

    /// Component along `e_i`, 1-based.
    pub fn get(&self, i: usize) -> &T {
        &self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Ring::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Vector(self.0.iter().map(|a| a.mul(c)).collect())
    }
}

impl<T: Ring> ExtForm<T> {
    /// Zero form of the given degree.
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExtForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form with value `c`.
    pub fn constant(dim: usize, c: T) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    /// Basis covector `α_i` (1-based).
    pub fn covector_basis(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.add_term(MultiIndex::single(i), T::one());
        f
    }

    /// Covector `Σ c_i α_i` from its components.
    pub fn covector(components: &[T]) -> Self {
        let mut f = Self::zero(components.len(), 1);
        for (i, c) in components.iter().enumerate() {
            f.add_term(MultiIndex::single(i + 1), c.clone());
        }
        f
    }

    /// Canonical form from a list of terms; duplicates are summed and zeros dropped.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, T)>,
    {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let mut f = Self::zero(dim, degree);
        for (idx, c) in terms {
            let mi = MultiIndex::new(&idx, dim)?;
            if mi.len() != degree {
                return Err(Error::DegreeMismatch {
                    len: mi.len(),
                    degree,
                });
            }
            f.add_term(mi, c);
        }
        if degree > dim {
            return Err(Error::DegreeExceedsDimension { degree, dim });
        }
        Ok(f)
    }

    /// Build from already-validated multi-indices.
    pub fn from_map(dim: usize, degree: usize, terms: BTreeMap<MultiIndex, T>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ExtForm { dim, degree, terms }
    }

    /// Adds `c · α_index`; the caller guarantees `index` has length `degree` and fits `dim`.
    pub fn add_term(&mut self, index: MultiIndex, c: T) {
        debug_assert_eq!(index.len(), self.degree);
        debug_assert!(index.max_index() <= self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&index);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(index, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, T> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, index: MultiIndex) -> T {
        self.terms.get(&index).cloned().unwrap_or_else(T::zero)
    }

    /// Value of a degree-0 form.
    pub fn scalar_value(&self) -> T {
        self.coefficient(MultiIndex::EMPTY)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_coefficients(|x| x.mul(c))
    }

    pub fn map_coefficients(&self, f: impl Fn(&T) -> T) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&i, c)| (i, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        ExtForm {
            dim: self.dim,
            degree: self.degree,
            terms,
        }
    }

    /// Same form with coefficients mapped into another ring.
    pub fn convert<U: Ring>(&self, f: impl Fn(&T) -> U) -> ExtForm<U> {
        let terms = self
            .terms
            .iter()
            .map(|(&i, c)| (i, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        ExtForm {
            dim: self.dim,
            degree: self.degree,
            terms,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    /// Exterior product `self ∧ other`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if let Some((m, sign)) = a.wedge_sign(b) {
                    let c = ca.mul(cb);
                    out.add_term(m, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold wedge power; the 0th power is the constant 1.
    pub fn wedge_power(&self, k: usize) -> Self {
        let mut acc = Self::constant(self.dim, T::one());
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    /// Interior product `ι_v θ`, scaled by `deg θ`.
    pub fn interior(&self, v: &Vector<T>) -> Result<Self> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(v.dim(), self.dim));
        }
        if self.degree == 0 {
            return Ok(Self::zero(self.dim, 0));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (&m, c) in &self.terms {
            for i in m.indices() {
                let vi = v.get(i);
                if vi.is_zero() {
                    continue;
                }
                let t = c.mul(vi);
                let t = if m.position_of(i) % 2 == 0 { t } else { t.neg() };
                out.add_term(m.without(i), t);
            }
        }
        Ok(out)
    }

    /// `ι_{[x1 … xj]} = ι_{x1} ∘ … ∘ ι_{xj}`; over-contraction yields the zero 0-form.
    pub fn iterated_interior(&self, vs: &[Vector<T>]) -> Result<Self> {
        for v in vs {
            if v.dim() != self.dim {
                return Err(Error::DimensionMismatch(v.dim(), self.dim));
            }
        }
        if vs.len() > self.degree {
            return Ok(Self::zero(self.dim, 0));
        }
        let mut acc = self.clone();
        for v in vs.iter().rev() {
            acc = acc.interior(v)?;
        }
        Ok(acc)
    }

    /// `<[x1 … xk], θ>`: the full contraction read as a scalar.
    pub fn pairing(&self, vs: &[Vector<T>]) -> Result<T> {
        if vs.len() != self.degree {
            return Err(Error::ArgumentCount {
                expected: self.degree,
                got: vs.len(),
            });
        }
        Ok(self.iterated_interior(vs)?.scalar_value())
    }

    /// Coefficients of a covector as a dense vector.
    pub fn covector_components(&self) -> Vec<T> {
        (1..=self.dim)
            .map(|i| self.coefficient(MultiIndex::single(i)))
            .collect()
    }

    /// Pull the form back along the linear substitution `α_i ↦ images[i-1]`.
    ///
    /// With `images` the covectors of a new basis written in old coordinates,
    /// a form given in new-basis coordinates comes out in old coordinates.
    pub fn substitute(&self, images: &[ExtForm<T>]) -> Result<Self> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch(images.len(), self.dim));
        }
        let target_dim = images.first().map_or(self.dim, |f| f.dim);
        let mut out = Self::zero(target_dim, self.degree);
        for (&m, c) in &self.terms {
            let mut prod = ExtForm::constant(target_dim, c.clone());
            for i in m.indices() {
                prod = prod.wedge(&images[i - 1])?;
                if prod.is_zero() {
                    break;
                }
            }
            for (&k, v) in &prod.terms {
                out.add_term(k, v.clone());
            }
        }
        Ok(out)
    }

    /// Dense coordinates in the lexicographic basis of `Λ^degree`.
    pub fn to_dense(&self) -> Vec<T> {
        MultiIndex::combinations(self.dim, self.degree)
            .into_iter()
            .map(|m| self.coefficient(m))
            .collect()
    }

    /// Inverse of [`ExtForm::to_dense`].
    pub fn from_dense(dim: usize, degree: usize, coords: &[T]) -> Self {
        let basis = MultiIndex::combinations(dim, degree);
        debug_assert_eq!(basis.len(), coords.len());
        let mut f = Self::zero(dim, degree);
        for (m, c) in basis.into_iter().zip(coords) {
            f.add_term(m, c.clone());
        }
        f
    }

    /// True when every term only involves indices from `allowed`.
    pub fn supported_on(&self, allowed: MultiIndex) -> bool {
        self.terms.keys().all(|m| m.mask() & !allowed.mask() == 0)
    }
}

impl<F: Field> ExtForm<F> {
    /// `θ(x1, …, xk)` under the `det / k!` normalization.
    pub fn evaluate(&self, args: &[Vector<F>]) -> Result<F> {
        if args.len() != self.degree {
            return Err(Error::ArgumentCount {
                expected: self.degree,
                got: args.len(),
            });
        }
        for a in args {
            if a.dim() != self.dim {
                return Err(Error::DimensionMismatch(a.dim(), self.dim));
            }
        }
        let k = self.degree;
        let kf = F::from_int((1..=k as i64).product::<i64>());
        let mut total = F::zero();
        for (&m, c) in &self.terms {
            let idx = m.to_vec();
            let rows = idx
                .iter()
                .map(|&i| args.iter().map(|x| x.get(i).clone()).collect())
                .collect();
            let det = Matrix::from_rows(rows, k).determinant();
            total = total.add(&c.mul(&det));
        }
        Ok(total.div(&kf).expect("k! is invertible"))
    }

    /// A form `ν` with `ι_x ν = μ`, namely `a ∧ μ` for a covector with `a(x) = 1`.
    pub fn interior_division(&self, x: &Vector<F>) -> Result<Self> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch(x.dim(), self.dim));
        }
        let Some(i) = (1..=self.dim).find(|&i| !x.get(i).is_zero()) else {
            return Err(Error::ZeroVector);
        };
        if !self.interior(x)?.is_zero() {
            return Err(Error::NotInKernel);
        }
        let a = Self::covector_basis(self.dim, i).scale(&x.get(i).inv().expect("nonzero"));
        a.wedge(self)
    }
}
