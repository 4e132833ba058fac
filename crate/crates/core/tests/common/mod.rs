#![allow(dead_code)]

use leeform::diff_forms::DiffForm;
use leeform::exterior::{ExtForm, Vector};
use leeform::linalg::Matrix;
use leeform::subspace::Subspace;
use leeform::scalar::{q, qi};
use leeform::symbolic::{Monomial, Poly, ScalarExpr};
use leeform::{MultiIndex, Ring, Q};
use rand::Rng;

pub fn coords(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Determinant by the permutation expansion.
pub fn leibniz_det(m: &[Vec<Q>]) -> Q {
    let k = m.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut total = qi(0);
    permute(&mut perm, 0, &mut |p| {
        let mut inv = 0;
        for i in 0..k {
            for j in i + 1..k {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        let mut prod = qi(if inv % 2 == 0 { 1 } else { -1 });
        for (i, &j) in p.iter().enumerate() {
            prod *= &m[i][j];
        }
        total += prod;
    });
    total
}

fn permute(p: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, f);
        p.swap(start, i);
    }
}

pub fn factorial(k: usize) -> Q {
    qi((1..=k as i64).product())
}

/// `θ(x_1..x_k)` with `α_I(x) = det(α_{i_a}(x_b)) / k!`.
pub fn evaluate_oracle(theta: &ExtForm, xs: &[Vector]) -> Q {
    let k = xs.len();
    let mut total = qi(0);
    for (m, c) in theta.terms() {
        let rows: Vec<Vec<Q>> = m
            .indices()
            .map(|i| xs.iter().map(|x| x.get(i).clone()).collect())
            .collect();
        total += c * leibniz_det(&rows);
    }
    total / factorial(k)
}

pub fn reverse_sign(k: usize) -> Q {
    qi(if (k * k.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 })
}

pub fn small<R: Rng>(rng: &mut R, r: i64) -> Q {
    let n = rng.random_range(-r..=r);
    q(n, if rng.random_bool(0.3) { 2 } else { 1 })
}

pub fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize, density: f64) -> ExtForm {
    let mut f = ExtForm::zero(n, k);
    for m in MultiIndex::combinations(n, k) {
        if rng.random_bool(density) {
            f.add_term(m, small(rng, 3));
        }
    }
    f
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::new((0..n).map(|_| small(rng, 3)).collect())
}

pub fn random_poly<R: Rng>(rng: &mut R, n: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.random_range(0..=2) {
        let mut exps = Vec::new();
        for _ in 0..rng.random_range(0..=2) {
            exps.push((rng.random_range(0..n), 1));
        }
        p.add_term(Monomial::from_exponents(exps), qi(rng.random_range(-2..=2)));
    }
    p
}

/// Random coefficient: a few terms `c · Laurent monomial · exp(P)` with
/// exponents in [-2, 3] and `P` of total degree at most 2.
pub fn random_scalar<R: Rng>(rng: &mut R, n: usize, laurent: bool) -> ScalarExpr {
    let mut f = ScalarExpr::default();
    for _ in 0..rng.random_range(1..=3) {
        let lo = if laurent { -2 } else { 0 };
        let exps: Vec<(usize, i32)> = (0..rng.random_range(0..=2))
            .map(|_| (rng.random_range(0..n), rng.random_range(lo..=3)))
            .collect();
        let p = if rng.random_bool(0.5) {
            random_poly(rng, n)
        } else {
            Poly::zero()
        };
        f.add_term(small(rng, 3), Monomial::from_exponents(exps), p);
    }
    f
}

pub fn random_diff_form<R: Rng>(rng: &mut R, n: usize, k: usize, laurent: bool) -> DiffForm {
    let mut terms: Vec<(Vec<usize>, ScalarExpr)> = Vec::new();
    for m in MultiIndex::combinations(n, k) {
        if rng.random_bool(0.5) {
            terms.push((m.indices().map(|i| i - 1).collect(), random_scalar(rng, n, laurent)));
        }
    }
    DiffForm::from_terms(&coords(n), k, terms).expect("valid terms")
}

pub fn is_zero_q(x: &Q) -> bool {
    Ring::is_zero(x)
}

/// Frame coordinates of `omega` for the basis given by `vectors` (columns).
pub fn in_basis(omega: &ExtForm, vectors: &[Vector]) -> ExtForm {
    let n = omega.dim();
    let images: Vec<ExtForm> = (1..=n)
        .map(|i| {
            let row: Vec<Q> = vectors.iter().map(|v| v.get(i).clone()).collect();
            ExtForm::covector(&row)
        })
        .collect();
    omega.substitute(&images).unwrap()
}

pub fn is_basis(vectors: &[Vector], n: usize) -> bool {
    let m = Matrix::from_rows(vectors.iter().map(|v| v.components().to_vec()).collect(), n);
    !Ring::is_zero(&m.determinant())
}

/// `|ω*|` counted in a random basis whose last `dim C` vectors span `C`.
pub fn main_degree_in_random_frame<R: Rng>(r: &mut R, omega: &ExtForm, c: &Subspace) -> usize {
    let n = omega.dim();
    let k = n - c.dim();
    loop {
        let mut vs: Vec<Vector> = (0..k).map(|_| random_vector(r, n)).collect();
        for _ in 0..c.dim() {
            let v = c.basis().iter().fold(Vector::zero(n), |acc, b| acc.add(&b.scale(&small(r, 2))));
            vs.push(v);
        }
        if !is_basis(&vs, n) {
            continue;
        }
        let local = in_basis(omega, &vs);
        let low = (1u64 << k) - 1;
        return local
            .terms()
            .keys()
            .map(|m| (m.mask() & low).count_ones() as usize)
            .min()
            .unwrap();
    }
}


/// Largest `p` with `Ω^p ≠ 0`.
pub fn rank_oracle(omega: &ExtForm) -> usize {
    let n = omega.dim();
    let mut acc = ExtForm::constant(n, qi(1));
    let mut p = 0;
    while 2 * (p + 1) <= n {
        acc = acc.wedge(omega).unwrap();
        if acc.is_zero() {
            break;
        }
        p += 1;
    }
    p
}
