//! Forms relative to a subspace `C ⊂ V`: annihilators, adapted frames,
//! the splitting of a form by the number of `C⁰` factors, main parts, and
//! extraction of a derivative landing in `Λ(C⁰)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::{ExtForm, Vector};
use crate::linalg::Matrix;
use crate::multi_index::MultiIndex;
use crate::scalar::{Field, Q};

/// A proper subspace of `V = F^n`, given by an independent spanning list.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F = Q> {
    ambient: usize,
    basis: Vec<Vector<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(ambient: usize, basis: Vec<Vector<F>>) -> Result<Self> {
        for v in &basis {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch(v.dim(), ambient));
            }
        }
        if basis.len() >= ambient && ambient > 0 {
            return Err(Error::NotProper {
                sub: basis.len(),
                dim: ambient,
            });
        }
        let m = vectors_as_rows(&basis, ambient);
        if m.rank() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Subspace { ambient, basis })
    }

    /// `{0}`.
    pub fn trivial(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    /// Span of standard basis vectors `e_i` for the listed 1-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Result<Self> {
        Self::new(
            ambient,
            indices.iter().map(|&i| Vector::basis(ambient, i)).collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }

    /// Basis of `C⁰ = {α | α(x) = 0 for x ∈ C}`, of size `n - dim C`.
    pub fn annihilator(&self) -> Vec<ExtForm<F>> {
        vectors_as_rows(&self.basis, self.ambient)
            .null_space()
            .into_iter()
            .map(|c| ExtForm::covector(&c))
            .collect()
    }

    pub fn contains(&self, v: &Vector<F>) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        vectors_as_rows(&rows, self.ambient).rank() == self.basis.len()
    }

    /// Adapted frame: `C`'s basis completed greedily by standard basis
    /// vectors, with the dual covectors obtained by inversion.
    pub fn adapted_cobase(&self) -> AdaptedFrame<F> {
        let n = self.ambient;
        let mut chosen = self.basis.clone();
        let mut complement = Vec::new();
        for i in 1..=n {
            if chosen.len() == n {
                break;
            }
            let e = Vector::basis(n, i);
            chosen.push(e.clone());
            if vectors_as_rows(&chosen, n).rank() == chosen.len() {
                complement.push(e);
            } else {
                chosen.pop();
            }
        }
        // dual order: complement first so the annihilator block leads
        let dual_vectors: Vec<Vector<F>> =
            complement.iter().chain(self.basis.iter()).cloned().collect();
        let columns = vectors_as_rows(&dual_vectors, n).transpose();
        let inv = columns.inverse().expect("completed frame is a basis");
        let covectors = inv.rows.iter().map(|r| ExtForm::covector(r)).collect();
        AdaptedFrame {
            dim: n,
            codim: complement.len(),
            dual_vectors,
            covectors,
        }
    }
}

fn vectors_as_rows<F: Field>(vs: &[Vector<F>], n: usize) -> Matrix<F> {
    Matrix::from_rows(vs.iter().map(|v| v.components().to_vec()).collect(), n)
}

/// A basis of `V` adapted to `C` together with its dual basis.
///
/// Covectors are ordered with the `C⁰` block first (`α_1..α_k`, `k = codim C`)
/// followed by the complementary block (`β_1..β_p`). `dual_vectors[j]` is dual
/// to `covectors[j]`, so the last `p` dual vectors are the given basis of `C`.
/// Frame coordinates of a form refer to this covector order.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedFrame<F = Q> {
    dim: usize,
    codim: usize,
    dual_vectors: Vec<Vector<F>>,
    covectors: Vec<ExtForm<F>>,
}

impl<F: Field> AdaptedFrame<F> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `k = dim C⁰`.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn subspace_dim(&self) -> usize {
        self.dim - self.codim
    }

    /// Basis of `V` with the vectors of `C` first.
    pub fn vectors(&self) -> Vec<Vector<F>> {
        self.subspace_vectors()
            .iter()
            .chain(self.complement_vectors())
            .cloned()
            .collect()
    }

    pub fn subspace_vectors(&self) -> &[Vector<F>] {
        &self.dual_vectors[self.codim..]
    }

    pub fn complement_vectors(&self) -> &[Vector<F>] {
        &self.dual_vectors[..self.codim]
    }

    /// Vectors in the order dual to [`AdaptedFrame::covectors`].
    pub fn dual_vectors(&self) -> &[Vector<F>] {
        &self.dual_vectors
    }

    /// All covectors, annihilator block first.
    pub fn covectors(&self) -> &[ExtForm<F>] {
        &self.covectors
    }

    /// Basis of `C⁰`.
    pub fn annihilator_block(&self) -> &[ExtForm<F>] {
        &self.covectors[..self.codim]
    }

    pub fn complement_block(&self) -> &[ExtForm<F>] {
        &self.covectors[self.codim..]
    }

    /// Frame-coordinate bits belonging to the annihilator block.
    pub fn annihilator_mask(&self) -> MultiIndex {
        MultiIndex::from_mask(if self.codim == 64 {
            u64::MAX
        } else {
            (1u64 << self.codim) - 1
        })
    }

    /// Rewrite a form given in standard coordinates in frame coordinates.
    pub fn to_frame(&self, omega: &ExtForm<F>) -> Result<ExtForm<F>> {
        if omega.dim() != self.dim {
            return Err(Error::DimensionMismatch(omega.dim(), self.dim));
        }
        // α_i = Σ_j α_i(v_j) f_j
        let images: Vec<ExtForm<F>> = (1..=self.dim)
            .map(|i| {
                let comps: Vec<F> = self.dual_vectors.iter().map(|v| v.get(i).clone()).collect();
                ExtForm::covector(&comps)
            })
            .collect();
        omega.substitute(&images)
    }

    /// Inverse of [`AdaptedFrame::to_frame`].
    pub fn from_frame(&self, local: &ExtForm<F>) -> Result<ExtForm<F>> {
        local.substitute(&self.covectors)
    }

    /// True when the form lies in `Λ(C⁰)`.
    pub fn in_annihilator_algebra(&self, omega: &ExtForm<F>) -> Result<bool> {
        Ok(self.to_frame(omega)?.supported_on(self.annihilator_mask()))
    }

    /// `|ω*|` of a form already written in frame coordinates.
    pub fn local_main_degree(&self, local: &ExtForm<F>) -> Result<usize> {
        let amask = self.annihilator_mask().mask();
        local
            .terms()
            .keys()
            .map(|m| (m.mask() & amask).count_ones() as usize)
            .min()
            .ok_or(Error::ZeroForm("main part"))
    }

    /// `|ω*|` without building the parts.
    pub fn main_degree(&self, omega: &ExtForm<F>) -> Result<usize> {
        self.local_main_degree(&self.to_frame(omega)?)
    }

    /// Split `ω = μ_{s1} + μ_{s2} + …` by the number of annihilator factors.
    pub fn decompose(&self, omega: &ExtForm<F>) -> Result<Decomposition<F>> {
        if omega.is_zero() {
            return Err(Error::ZeroForm("decomposition"));
        }
        let local = self.to_frame(omega)?;
        let amask = self.annihilator_mask().mask();
        let mut groups: BTreeMap<usize, BTreeMap<MultiIndex, F>> = BTreeMap::new();
        for (&m, c) in local.terms() {
            let s = (m.mask() & amask).count_ones() as usize;
            groups.entry(s).or_default().insert(m, c.clone());
        }
        let parts = groups
            .into_iter()
            .map(|(s, terms)| {
                let local = ExtForm::from_map(self.dim, omega.degree(), terms);
                let form = self.from_frame(&local)?;
                Ok(Part {
                    s,
                    m: omega.degree() - s,
                    local,
                    form,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition { parts })
    }
}

/// One group `μ_s`: terms with exactly `s` annihilator factors and `m` complementary ones.
#[derive(Clone, Debug, PartialEq)]
pub struct Part<F = Q> {
    pub s: usize,
    pub m: usize,
    /// In frame coordinates.
    pub local: ExtForm<F>,
    /// In standard coordinates.
    pub form: ExtForm<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<F = Q> {
    /// Sorted by increasing `s`, never empty.
    pub parts: Vec<Part<F>>,
}

impl<F: Field> Decomposition<F> {
    /// `|ω*|`.
    pub fn main_degree(&self) -> usize {
        self.parts[0].s
    }

    pub fn main_part(&self) -> &Part<F> {
        &self.parts[0]
    }

    /// Everything except the main part, in standard coordinates.
    pub fn remainder(&self) -> ExtForm<F> {
        let main = &self.parts[0].form;
        self.parts[1..]
            .iter()
            .fold(ExtForm::zero(main.dim(), main.degree()), |acc, p| {
                acc.add(&p.form).expect("same shape")
            })
    }

    pub fn reconstruct(&self) -> ExtForm<F> {
        self.remainder()
            .add(&self.parts[0].form)
            .expect("same shape")
    }
}

/// `(ω*, |ω*|)` computed in the canonical adapted frame of `C`.
pub fn main_part<F: Field>(omega: &ExtForm<F>, c: &Subspace<F>) -> Result<(ExtForm<F>, usize)> {
    let mut d = c.adapted_cobase().decompose(omega)?;
    let s = d.main_degree();
    Ok((d.parts.swap_remove(0).form, s))
}

/// Vectors `v_1..v_j ∈ C` and the nonzero contraction `ι_{[v_1…v_j]} ω ∈ Λ^s(C⁰)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivative<F = Q> {
    pub vectors: Vec<Vector<F>>,
    /// Positions of the chosen vectors within the basis of `C`.
    pub basis_positions: Vec<usize>,
    pub result: ExtForm<F>,
}

/// Find `j = deg ω - |ω*|` basis vectors of `C` whose iterated contraction of
/// `ω` is nonzero and lies in `Λ^{|ω*|}(C⁰)`.
///
/// Subsets of the basis are tried in lexicographic order, the first success is returned.
pub fn extract_derivative<F: Field>(omega: &ExtForm<F>, c: &Subspace<F>) -> Result<Derivative<F>> {
    if omega.is_zero() {
        return Err(Error::ZeroForm("derivative"));
    }
    let frame = c.adapted_cobase();
    let s = frame.decompose(omega)?.main_degree();
    let j = omega.degree() - s;
    if j == 0 {
        return Ok(Derivative {
            vectors: Vec::new(),
            basis_positions: Vec::new(),
            result: omega.clone(),
        });
    }
    if j > c.dim() {
        return Err(Error::DerivativeOrder {
            order: j,
            max: c.dim(),
        });
    }
    let amask = frame.annihilator_mask();
    for subset in MultiIndex::combinations(c.dim(), j) {
        let positions: Vec<usize> = subset.indices().map(|i| i - 1).collect();
        let vectors: Vec<Vector<F>> = positions.iter().map(|&i| c.basis()[i].clone()).collect();
        let result = omega.iterated_interior(&vectors)?;
        if result.is_zero() {
            continue;
        }
        if frame.to_frame(&result)?.supported_on(amask) {
            return Ok(Derivative {
                vectors,
                basis_positions: positions,
                result,
            });
        }
    }
    Err(Error::NoDerivative)
}
