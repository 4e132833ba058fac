//! The maps `λ^k: β ↦ Ω∧β` of a 2-form `Ω`: rank, kernel, solving
//! `Ω∧β = κ`, kernel main-degree profiles and the rank-2 pair kernel.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{ExtForm, Vector};
use crate::linalg::{FloatSvd, Matrix};
use crate::multi_index::MultiIndex;
use crate::random;
use crate::scalar::{qi, Field, Ring, Q};
use crate::subspace::Subspace;

fn require_two_form<T: Ring>(omega: &ExtForm<T>) -> Result<()> {
    if omega.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: omega.degree(),
        });
    }
    Ok(())
}

/// Largest `p` with `Ω^{∧p} ≠ 0`.
pub fn rank2<T: Ring>(omega: &ExtForm<T>) -> Result<usize> {
    require_two_form(omega)?;
    let mut p = 0;
    let mut power = ExtForm::constant(omega.dim(), T::one());
    loop {
        power = power.wedge(omega)?;
        if power.is_zero() {
            return Ok(p);
        }
        p += 1;
    }
}

/// Skew matrix `M[i][j]` = coefficient of `α_i∧α_j` (antisymmetrized).
pub fn skew_matrix<T: Ring>(omega: &ExtForm<T>) -> Result<Matrix<T>> {
    require_two_form(omega)?;
    let mut m = Matrix::zeros(omega.dim(), omega.dim());
    for (idx, c) in omega.terms() {
        let v = idx.to_vec();
        let (i, j) = (v[0] - 1, v[1] - 1);
        m.rows[i][j] = c.clone();
        m.rows[j][i] = c.neg();
    }
    Ok(m)
}

/// `C = {x | ι_x Ω = 0}`, the null space of the skew matrix.
///
/// The zero form is rejected since its kernel is all of `V`.
pub fn kernel2<F: Field>(omega: &ExtForm<F>) -> Result<Subspace<F>> {
    let m = skew_matrix(omega)?;
    if omega.is_zero() {
        return Err(Error::ZeroForm("proper kernel"));
    }
    let basis = m.null_space().into_iter().map(Vector::new).collect();
    Subspace::new(omega.dim(), basis)
}

/// Matrix of `λ^k` in the lexicographic bases of `Λ^k` and `Λ^{k+2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMatrix<T = Q> {
    pub omega: ExtForm<T>,
    pub k: usize,
    pub source_basis: Vec<MultiIndex>,
    pub target_basis: Vec<MultiIndex>,
    pub matrix: Matrix<T>,
}

pub fn lambda_matrix<T: Ring>(omega: &ExtForm<T>, k: usize) -> Result<LambdaMatrix<T>> {
    require_two_form(omega)?;
    let n = omega.dim();
    if k > n {
        return Err(Error::DegreeOutOfRange(k));
    }
    let source_basis = MultiIndex::combinations(n, k);
    let target_basis = MultiIndex::combinations(n, k + 2);
    let row_of: BTreeMap<MultiIndex, usize> = target_basis
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let mut matrix: Matrix<T> = Matrix::zeros(target_basis.len(), source_basis.len());
    for (col, &b) in source_basis.iter().enumerate() {
        for (&w, c) in omega.terms() {
            if let Some((m, sign)) = w.wedge_sign(b) {
                let v = if sign < 0 { c.neg() } else { c.clone() };
                let r = row_of[&m];
                matrix.rows[r][col] = matrix.rows[r][col].add(&v);
            }
        }
    }
    Ok(LambdaMatrix {
        omega: omega.clone(),
        k,
        source_basis,
        target_basis,
        matrix,
    })
}

impl<T: Ring> LambdaMatrix<T> {
    pub fn source_dim(&self) -> usize {
        self.source_basis.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_basis.len()
    }

    fn source_form(&self, coords: &[T]) -> ExtForm<T> {
        ExtForm::from_dense(self.omega.dim(), self.k, coords)
    }
}

impl<F: Field> LambdaMatrix<F> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Basis of `ker λ^k` as `k`-forms.
    pub fn kernel(&self) -> Vec<ExtForm<F>> {
        self.matrix
            .null_space()
            .iter()
            .map(|v| self.source_form(v))
            .collect()
    }

    /// A `β` with `Ω∧β = κ` (free coordinates zero), if any.
    pub fn preimage(&self, kappa: &ExtForm<F>) -> Option<ExtForm<F>> {
        self.matrix
            .solve(&kappa.to_dense())
            .map(|x| self.source_form(&x))
    }
}

/// Solutions of `Ω∧β = κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeSolution<T = Q> {
    /// `None` when `κ` is not in the image.
    pub particular: Option<ExtForm<T>>,
    pub kernel: Vec<ExtForm<T>>,
}

impl<T: Ring> WedgeSolution<T> {
    pub fn is_unique(&self) -> bool {
        self.particular.is_some() && self.kernel.is_empty()
    }
}

fn solve_degree<T: Ring>(omega: &ExtForm<T>, kappa: &ExtForm<T>) -> Result<usize> {
    require_two_form(omega)?;
    if kappa.dim() != omega.dim() {
        return Err(Error::DimensionMismatch(kappa.dim(), omega.dim()));
    }
    if kappa.degree() < 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: kappa.degree(),
        });
    }
    Ok(kappa.degree() - 2)
}

/// Solve `Ω∧β = κ` for `β` of degree `deg κ - 2`, exactly.
pub fn solve_wedge<F: Field>(omega: &ExtForm<F>, kappa: &ExtForm<F>) -> Result<WedgeSolution<F>> {
    let k = solve_degree(omega, kappa)?;
    let lm = lambda_matrix(omega, k)?;
    let ech = lm.matrix.echelon();
    let kernel = ech
        .null_space()
        .iter()
        .map(|v| lm.source_form(v))
        .collect();
    Ok(WedgeSolution {
        particular: lm.preimage(kappa),
        kernel,
    })
}

/// Result of the floating-point solve.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatWedgeSolution {
    pub particular: Option<ExtForm<f64>>,
    pub kernel: Vec<ExtForm<f64>>,
    /// `‖Ω∧β - κ‖∞ / max(1, ‖κ‖∞)` for the least-squares `β`.
    pub relative_residual: f64,
    pub rank: usize,
}

/// Acceptance threshold on the relative residual in float mode.
pub const FLOAT_RESIDUAL_TOL: f64 = 1e-9;

/// Float version of [`solve_wedge`]; rank decisions via SVD with relative tolerance 1e-10.
pub fn solve_wedge_f64(omega: &ExtForm<f64>, kappa: &ExtForm<f64>) -> Result<FloatWedgeSolution> {
    let k = solve_degree(omega, kappa)?;
    let lm = lambda_matrix(omega, k)?;
    let svd = FloatSvd::new(&lm.matrix);
    let rhs = kappa.to_dense();
    let x = svd.solve(&rhs);
    let ax = lm.matrix.mul_vec(&x);
    let err = ax
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let scale = rhs.iter().map(|b| b.abs()).fold(1.0, f64::max);
    let relative_residual = err / scale;
    let kernel = svd
        .null_space
        .iter()
        .map(|v| lm.source_form(v))
        .collect();
    Ok(FloatWedgeSolution {
        particular: (relative_residual <= FLOAT_RESIDUAL_TOL).then(|| lm.source_form(&x)),
        kernel,
        relative_residual,
        rank: svd.rank,
    })
}

/// Main-part degrees of kernel elements of `λ^l`, measured against `C = ker Ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelProfile {
    pub l: usize,
    pub p: usize,
    pub kernel_dim: usize,
    /// `(s, number of sampled kernel elements with |β*| = s)`, sorted by `s`.
    pub entries: Vec<(usize, usize)>,
    /// `None` when the kernel is trivial.
    pub min_s: Option<usize>,
}

/// Random combinations sampled on top of the kernel basis by [`kernel_main_profile`].
pub const PROFILE_COMBINATIONS: usize = 20;

/// [`kernel_main_profile_with`] using a fixed seed and [`PROFILE_COMBINATIONS`] combinations.
pub fn kernel_main_profile(omega: &ExtForm, l: usize) -> Result<KernelProfile> {
    kernel_main_profile_with(omega, l, PROFILE_COMBINATIONS, &mut random::rng(0, 0))
}

/// Compute `ker λ^l`, then the main-part degree of every basis element and of
/// `combinations` random rational combinations. Fails with
/// [`Error::LemmaViolation`] if any sampled element has degree below the rank.
pub fn kernel_main_profile_with<R: Rng>(
    omega: &ExtForm,
    l: usize,
    combinations: usize,
    rng: &mut R,
) -> Result<KernelProfile> {
    require_two_form(omega)?;
    let n = omega.dim();
    if l < 1 || l + 2 > n {
        return Err(Error::DegreeOutOfRange(l));
    }
    if omega.is_zero() {
        return Err(Error::ZeroForm("kernel profile"));
    }
    let p = rank2(omega)?;
    let frame = kernel2(omega)?.adapted_cobase();
    let basis = lambda_matrix(omega, l)?.kernel();

    // main degrees are read off in frame coordinates; to_frame is linear,
    // so combinations of the basis are formed after transforming it once
    let local: Vec<ExtForm> = basis
        .iter()
        .map(|b| frame.to_frame(b))
        .collect::<Result<_>>()?;
    let mut samples = local.clone();
    if !local.is_empty() {
        let mut added = 0;
        while added < combinations {
            let combo = local.iter().fold(ExtForm::zero(n, l), |acc, b| {
                acc.add(&b.scale(&random::small_rational(rng, 3))).expect("same shape")
            });
            if !combo.is_zero() {
                samples.push(combo);
                added += 1;
            }
        }
    }

    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for beta in &samples {
        let s = frame.local_main_degree(beta)?;
        if s < p {
            return Err(Error::LemmaViolation { s, p });
        }
        *hist.entry(s).or_default() += 1;
    }
    Ok(KernelProfile {
        l,
        p,
        kernel_dim: basis.len(),
        min_s: hist.keys().next().copied(),
        entries: hist.into_iter().collect(),
    })
}

/// A nonzero `l`-form `β` with `Ω∧β = 0` and `|β*| = s` relative to `ker Ω`.
///
/// Takes a nonzero `β' ∈ Λ^s(C⁰)` killed by `Ω` and wedges it with `l - s`
/// covectors from the complementary block of the adapted frame.
pub fn construct_kernel_element(omega: &ExtForm, l: usize, s: usize) -> Result<ExtForm> {
    require_two_form(omega)?;
    let n = omega.dim();
    if omega.is_zero() {
        return Err(Error::ZeroForm("kernel element"));
    }
    let p = rank2(omega)?;
    let hi = (2 * p).min(l);
    if s < p || s > hi {
        return Err(Error::MainDegreeOutOfRange { s, lo: p, hi });
    }
    let frame = kernel2(omega)?.adapted_cobase();
    let available = frame.subspace_dim();
    if l - s > available {
        return Err(Error::NotEnoughComplement {
            needed: l - s,
            available,
        });
    }
    let codim = frame.codim();
    // Ω lives on the first 2p frame coordinates
    let local = frame.to_frame(omega)?;
    let restricted = ExtForm::from_map(codim, 2, local.terms().clone());
    let seed = lambda_matrix(&restricted, s)?
        .kernel()
        .into_iter()
        .next()
        .ok_or(Error::ZeroForm("restricted kernel"))?;
    let seed = ExtForm::from_map(n, s, seed.terms().clone());
    let tau = (codim + 1..=codim + l - s)
        .fold(ExtForm::constant(n, qi(1)), |acc, i| {
            acc.wedge(&ExtForm::covector_basis(n, i)).expect("same dim")
        });
    frame.from_frame(&tau.wedge(&seed)?)
}

/// Basis of `{ω2 ∈ Λ² | ω1∧ω2 = 0}`.
pub fn rank2_pair_kernel<F: Field>(omega1: &ExtForm<F>) -> Result<Vec<ExtForm<F>>> {
    require_two_form(omega1)?;
    if omega1.is_zero() {
        return Err(Error::ZeroForm("pair kernel"));
    }
    if omega1.dim() < 2 {
        return Ok(Vec::new());
    }
    Ok(lambda_matrix(omega1, 2)?.kernel())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaRow {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub coker_dim: usize,
}

impl LambdaRow {
    pub fn injective(&self) -> bool {
        self.kernel_dim == 0
    }

    pub fn surjective(&self) -> bool {
        self.coker_dim == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaReport {
    pub n: usize,
    pub p: usize,
    pub rows: Vec<LambdaRow>,
}

impl LambdaReport {
    /// `λ^k` injective for every `k ≤ p - 1`.
    pub fn injective_below_rank(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.k < self.p)
            .all(LambdaRow::injective)
    }

    /// Rows with `k ≥ p` that fail to be onto.
    pub fn non_surjective_above_rank(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.k >= self.p && !r.surjective())
            .map(|r| r.k)
            .collect()
    }
}

/// Ranks of `λ^k` for `0 ≤ k ≤ n - 2`.
pub fn lambda_report<F: Field>(omega: &ExtForm<F>) -> Result<LambdaReport> {
    require_two_form(omega)?;
    if omega.is_zero() {
        return Err(Error::ZeroForm("lambda report"));
    }
    let n = omega.dim();
    let rows = (0..=n.saturating_sub(2))
        .map(|k| {
            let lm = lambda_matrix(omega, k)?;
            let rank = lm.rank();
            Ok(LambdaRow {
                k,
                source_dim: lm.source_dim(),
                target_dim: lm.target_dim(),
                rank,
                kernel_dim: lm.source_dim() - rank,
                coker_dim: lm.target_dim() - rank,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LambdaReport {
        n,
        p: rank2(omega)?,
        rows,
    })
}

/// Outcome of one randomized check of the kernel lemma for `λ^l`.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCheck {
    pub n: usize,
    pub p: usize,
    pub l: usize,
    pub kernel_dim: usize,
    pub min_s: Option<usize>,
    /// Main-part degrees `s` for which [`construct_kernel_element`] was validated.
    pub constructed: Vec<usize>,
    pub violations: Vec<String>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Admissible main-part degrees of nonzero kernel elements of `λ^l`:
/// `p ≤ s ≤ min(2p, l)` with `l - s ≤ n - 2p`.
pub fn admissible_main_degrees(n: usize, p: usize, l: usize) -> Vec<usize> {
    (p..=(2 * p).min(l))
        .filter(|&s| l - s <= n - 2 * p)
        .collect()
}

/// Checks that `ker λ^l` is trivial for `l < p`, that every sampled kernel
/// element has main-part degree at least `p`, and that a kernel element of
/// every admissible degree can be built.
pub fn check_lemma<R: Rng>(
    omega: &ExtForm,
    l: usize,
    combinations: usize,
    rng: &mut R,
) -> Result<LemmaCheck> {
    let n = omega.dim();
    let p = rank2(omega)?;
    let mut violations = Vec::new();
    let (kernel_dim, min_s) = match kernel_main_profile_with(omega, l, combinations, rng) {
        Ok(prof) => (prof.kernel_dim, prof.min_s),
        Err(Error::LemmaViolation { s, p }) => {
            violations.push(format!("kernel element with main degree {s} < {p}"));
            (lambda_matrix(omega, l)?.kernel().len(), Some(s))
        }
        Err(e) => return Err(e),
    };
    if l < p && kernel_dim != 0 {
        violations.push(format!("ker λ^{l} has dimension {kernel_dim} although {l} < {p}"));
    }
    let frame = kernel2(omega)?.adapted_cobase();
    let mut constructed = Vec::new();
    for s in admissible_main_degrees(n, p, l) {
        let beta = construct_kernel_element(omega, l, s)?;
        let ok = !beta.is_zero()
            && omega.wedge(&beta)?.is_zero()
            && frame.main_degree(&beta)? == s;
        if ok {
            constructed.push(s);
        } else {
            violations.push(format!("constructed element for s = {s} failed validation"));
        }
    }
    Ok(LemmaCheck {
        n,
        p,
        l,
        kernel_dim,
        min_s,
        constructed,
        violations,
    })
}
