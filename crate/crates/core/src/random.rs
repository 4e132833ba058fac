//! Seeded random instances: forms, vectors, subspaces and 2-forms of prescribed rank.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{ExtForm, Vector};
use crate::linalg::Matrix;
use crate::multi_index::MultiIndex;
use crate::scalar::{q, qi, Ring, Q};
use crate::subspace::Subspace;

/// Generator for a seed; `stream` separates independent trials.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Small nonzero-biased rational: integer in `[-range, range]` divided by 1 or 2.
pub fn small_rational<R: Rng>(rng: &mut R, range: i64) -> Q {
    let n = rng.random_range(-range..=range);
    let d = if rng.random_bool(0.25) { 2 } else { 1 };
    q(n, d)
}

/// Random `k`-form on `F^n`; each basis term is present with probability `density`.
pub fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize, density: f64) -> ExtForm {
    let mut f = ExtForm::zero(n, k);
    for m in MultiIndex::combinations(n, k) {
        if rng.random_bool(density) {
            f.add_term(m, small_rational(rng, 4));
        }
    }
    f
}

/// Random nonzero `k`-form (requires `k <= n`).
pub fn random_nonzero_form<R: Rng>(rng: &mut R, n: usize, k: usize, density: f64) -> ExtForm {
    loop {
        let f = random_form(rng, n, k, density);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::new((0..n).map(|_| small_rational(rng, 3)).collect())
}

/// Random invertible integer matrix with entries in `[-range, range]`.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, range: i64) -> Matrix<Q> {
    loop {
        let m = Matrix::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| qi(rng.random_range(-range..=range))).collect())
                .collect(),
            n,
        );
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Random subspace of dimension `dim < n`.
pub fn random_subspace<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Subspace {
    loop {
        let basis = (0..dim)
            .map(|_| Vector::new((0..n).map(|_| qi(rng.random_range(-2..=2))).collect()))
            .collect();
        if let Ok(s) = Subspace::new(n, basis) {
            return s;
        }
    }
}

/// Standard rank-`p` form `α1∧α2 + … + α_{2p-1}∧α_{2p}` on `F^n`.
pub fn standard_form(n: usize, p: usize) -> ExtForm {
    let mut f = ExtForm::zero(n, 2);
    for i in 0..p {
        f.add_term(MultiIndex::from_mask(0b11 << (2 * i)), qi(1));
    }
    f
}

/// `Aᵀ S A` with `S` the standard rank-`p` form and `A` random invertible,
/// i.e. `Σ a_{2i-1} ∧ a_{2i}` for the rows `a_j` of `A` read as covectors.
pub fn random_rank_form<R: Rng>(rng: &mut R, n: usize, p: usize) -> ExtForm {
    assert!(2 * p <= n, "rank {p} impossible in dimension {n}");
    let a = random_invertible(rng, n, 2);
    let rows: Vec<ExtForm> = a.rows.iter().map(|r| ExtForm::covector(r)).collect();
    standard_form(n, p).substitute(&rows).expect("dimensions agree")
}
