//! Dense exact linear algebra over a [`Field`], plus an SVD path for floats.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Ring, Q};

/// Reduced row echelon form by Gauss-Jordan; returns pivot columns.
///
/// Pivots are taken in column order, the first nonzero entry at or below the
/// current row. Zero rows are dropped.
pub fn gauss_jordan<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Reduced row echelon form over the rationals via integer row operations.
///
/// Each row is scaled to a primitive integer vector; elimination uses
/// `row_j <- p * row_j - a * row_i` followed by content removal, so no
/// fractions appear until the final normalization of pivots to 1.
pub fn fraction_free_rref(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let mut v: Vec<BigInt> = row.iter().map(|x| (x * &l).to_integer()).collect();
            primitive(&mut v);
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == ints.len() {
            break;
        }
        // smallest magnitude pivot keeps entries small
        let Some(p) = (r..ints.len())
            .filter(|&i| !ints[i][c].is_zero())
            .min_by(|&a, &b| ints[a][c].abs().cmp(&ints[b][c].abs()).then(a.cmp(&b)))
        else {
            continue;
        };
        ints.swap(r, p);
        if ints[r][c].is_negative() {
            for x in ints[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = ints[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in ints.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let mul_self = &pv / &g;
            let mul_piv = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &mul_self - y * &mul_piv;
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    ints.truncate(r);

    *rows = ints
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let pv = row[c].clone();
            row.into_iter().map(|x| Q::new(x, pv.clone())).collect()
        })
        .collect();
    pivots
}

/// Dense matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<T>>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            rows: vec![vec![T::zero(); ncols]; nrows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols).map(|j| self.column(j)).collect();
        Matrix::from_rows(rows, self.nrows)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..other.ncols)
                    .map(|j| {
                        row.iter()
                            .enumerate()
                            .fold(T::zero(), |acc, (k, a)| acc.add(&a.mul(&other.rows[k][j])))
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, other.ncols)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Ring::is_zero)
    }
}

/// Reduced row echelon form of a matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.ncols];
                v[free] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = row[free].neg();
                }
                v
            })
            .collect()
    }
}

impl<F: Field> Matrix<F> {
    pub fn echelon(&self) -> Echelon<F> {
        let mut rows = self.rows.clone();
        let pivots = F::row_reduce(&mut rows, self.ncols);
        Echelon {
            rows,
            pivots,
            ncols: self.ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn null_space(&self) -> Vec<Vec<F>> {
        self.echelon().null_space()
    }

    /// One solution of `self * x = b` with free variables set to zero, or `None`
    /// when `b` is outside the column space.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.nrows);
        let rows: Vec<Vec<F>> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, x)| {
                let mut r = r.clone();
                r.push(x.clone());
                r
            })
            .collect();
        let mut rows = rows;
        let pivots = F::row_reduce(&mut rows, self.ncols + 1);
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![F::zero(); self.ncols];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row[self.ncols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let mut rows: Vec<Vec<F>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
                r
            })
            .collect();
        let pivots = F::row_reduce(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(
            rows.into_iter().map(|r| r[n..].to_vec()).collect(),
            n,
        ))
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut a = self.rows.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return F::zero();
            };
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            det = det.mul(&a[c][c]);
            let inv = a[c][c].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].mul(&inv);
                let (top, rest) = a.split_at_mut(i);
                for (x, p) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        det
    }
}

/// Relative tolerance for numerical rank decisions.
pub const FLOAT_RANK_TOL: f64 = 1e-10;

const SVD_EPS: f64 = 1e-18;
const SVD_MAX_ITER: usize = 10_000;

/// Numerical rank, null space and least-squares solution of a float matrix via SVD.
#[derive(Clone, Debug)]
pub struct FloatSvd {
    pub rank: usize,
    pub null_space: Vec<Vec<f64>>,
    svd: nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>,
    tol: f64,
    ncols: usize,
}

impl FloatSvd {
    /// Singular values below `FLOAT_RANK_TOL * sigma_max` count as zero.
    pub fn new(m: &Matrix<f64>) -> Self {
        let ncols = m.ncols;
        // pad to at least as many rows as columns so V is complete
        let nrows = m.nrows.max(m.ncols).max(1);
        let dm = DMatrix::from_fn(nrows, ncols.max(1), |i, j| {
            if i < m.nrows && j < ncols {
                m.rows[i][j]
            } else {
                0.0
            }
        });
        // the default convergence threshold (machine epsilon) stops early on
        // clustered singular values, leaving errors near 1e-6
        let svd = dm
            .clone()
            .try_svd(true, true, SVD_EPS, SVD_MAX_ITER)
            .unwrap_or_else(|| dm.svd(true, true));
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let tol = FLOAT_RANK_TOL * smax;
        let v_t = svd.v_t.as_ref().expect("computed V^T");
        let mut rank = 0;
        let mut null_space = Vec::new();
        for (i, &s) in svd.singular_values.iter().enumerate() {
            if i >= ncols {
                break;
            }
            if s > tol && smax > 0.0 {
                rank += 1;
            } else {
                null_space.push(v_t.row(i).iter().cloned().collect());
            }
        }
        FloatSvd {
            rank,
            null_space,
            svd,
            tol,
            ncols,
        }
    }

    /// Minimum-norm least-squares solution.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let nrows = self.svd.u.as_ref().map(|u| u.nrows()).unwrap_or(0);
        let rhs = nalgebra::DVector::from_fn(nrows, |i, _| b.get(i).copied().unwrap_or(0.0));
        let eps = self.tol.max(f64::MIN_POSITIVE);
        match self.svd.solve(&rhs, eps) {
            Ok(x) => x.iter().take(self.ncols).cloned().collect(),
            Err(_) => vec![0.0; self.ncols],
        }
    }
}
