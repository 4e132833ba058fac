//! The Lee equation `dω = β∧ω`: pointwise solving, symbolic verification and
//! the pointwise sets `𝒜 = {r(ω) > 2}`, `ℬ = {dβ ≠ 0, ω ≠ 0}`, `𝒞 = {r(ω) ≤ 1}`.

use super::DiffForm;
use crate::error::{Error, Result};
use crate::exterior::ExtForm;
use crate::scalar::{qi, Q};
use crate::symbolic::{ExpValue, ScalarExpr};
use crate::wedge_solver::{rank2, solve_wedge};

fn require_degree(form: &DiffForm, expected: usize) -> Result<()> {
    if form.degree() != expected {
        return Err(Error::WrongDegree {
            expected,
            got: form.degree(),
        });
    }
    Ok(())
}

/// Pointwise solution of `(dω)_p = β_p∧ω_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSolve {
    pub point: Vec<Q>,
    pub rank: usize,
    /// `None` when no 1-form solves the equation at this point.
    pub beta: Option<ExtForm<ExpValue>>,
    pub kernel: Vec<ExtForm<ExpValue>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeeSolveReport {
    pub points: Vec<PointSolve>,
    /// Solvable at every point, and uniquely wherever `r(ω) ≥ 2`.
    pub consistent: bool,
}

pub fn lee_solve(omega: &DiffForm, points: &[Vec<Q>]) -> Result<LeeSolveReport> {
    require_degree(omega, 2)?;
    let d_omega = omega.exterior_derivative();
    let mut out = Vec::with_capacity(points.len());
    let mut consistent = true;
    for p in points {
        let w = omega.eval_at(p)?;
        let k = d_omega.eval_at(p)?;
        let rank = rank2(&w)?;
        let sol = solve_wedge(&w, &k)?;
        if sol.particular.is_none() || (rank >= 2 && !sol.kernel.is_empty()) {
            consistent = false;
        }
        out.push(PointSolve {
            point: p.clone(),
            rank,
            beta: sol.particular,
            kernel: sol.kernel,
        });
    }
    Ok(LeeSolveReport {
        points: out,
        consistent,
    })
}

/// Symbolic pieces of the Lee equation for a candidate `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeeVerification {
    pub d_omega: DiffForm,
    /// `dω - β∧ω`.
    pub residual: DiffForm,
    pub d_beta: DiffForm,
    pub d_beta_wedge_omega: DiffForm,
}

impl LeeVerification {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn lee_verify(omega: &DiffForm, beta: &DiffForm) -> Result<LeeVerification> {
    require_degree(omega, 2)?;
    require_degree(beta, 1)?;
    let d_omega = omega.exterior_derivative();
    let residual = d_omega.sub(&beta.wedge(omega)?)?;
    let d_beta = beta.exterior_derivative();
    let d_beta_wedge_omega = d_beta.wedge(omega)?;
    Ok(LeeVerification {
        d_omega,
        residual,
        d_beta,
        d_beta_wedge_omega,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointClassification {
    pub point: Vec<Q>,
    pub r_omega: usize,
    pub omega_zero: bool,
    pub in_a: bool,
    pub in_b: bool,
    pub in_c: bool,
    pub d_beta_rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub points: Vec<PointClassification>,
    /// Sampled points where `ω` vanishes.
    pub zero_points: usize,
    /// Human-readable failures of the pointwise assertions; empty means pass.
    pub violations: Vec<String>,
}

impl Classification {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count_a(&self) -> usize {
        self.points.iter().filter(|p| p.in_a).count()
    }

    pub fn count_b(&self) -> usize {
        self.points.iter().filter(|p| p.in_b).count()
    }

    pub fn count_c(&self) -> usize {
        self.points.iter().filter(|p| p.in_c).count()
    }
}

fn fmt_point(p: &[Q]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Classify sample points, checking on `𝒜` that `dβ = 0`, on `ℬ` that
/// `1 ≤ r(dβ) ≤ 2` and `r(ω) ≤ 2`, and that no point lies in both.
///
/// Requires `dω = β∧ω` symbolically.
pub fn classify_theorem_sets(
    omega: &DiffForm,
    beta: &DiffForm,
    grid: &[Vec<Q>],
) -> Result<Classification> {
    let v = lee_verify(omega, beta)?;
    if !v.holds() {
        return Err(Error::HypothesisViolated);
    }
    let mut points = Vec::with_capacity(grid.len());
    let mut violations = Vec::new();
    let mut zero_points = 0;
    for p in grid {
        let w = omega.eval_at(p)?;
        let db = v.d_beta.eval_at(p)?;
        let r = rank2(&w)?;
        let d_beta_rank = rank2(&db)?;
        let c = PointClassification {
            point: p.clone(),
            r_omega: r,
            omega_zero: w.is_zero(),
            in_a: r > 2,
            in_b: !db.is_zero() && !w.is_zero(),
            in_c: r <= 1,
            d_beta_rank,
        };
        if c.omega_zero {
            zero_points += 1;
        }
        let at = fmt_point(p);
        if c.in_a && !db.is_zero() {
            violations.push(format!("dbeta != 0 at A-point {at}"));
        }
        if c.in_b && !(1..=2).contains(&d_beta_rank) {
            violations.push(format!("rank(dbeta) = {d_beta_rank} at B-point {at}"));
        }
        if c.in_b && r > 2 {
            violations.push(format!("rank(omega) = {r} at B-point {at}"));
        }
        if c.in_a && c.in_b {
            violations.push(format!("point {at} lies in both A and B"));
        }
        points.push(c);
    }
    Ok(Classification {
        points,
        zero_points,
        violations,
    })
}

/// Outcome of solving `dα = f·η` for `f`.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorRecovery {
    Exact(ScalarExpr),
    NonRepresentable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CosymplecticReport {
    pub d_eta: DiffForm,
    /// `dΦ - 2αη∧Φ`.
    pub residual: DiffForm,
    /// `dα∧η`, only computed when both structure equations hold and there are more than 5 coordinates.
    pub d_alpha_wedge_eta: Option<DiffForm>,
    pub factor: Option<FactorRecovery>,
}

impl CosymplecticReport {
    pub fn passed(&self) -> bool {
        self.d_eta.is_zero()
            && self.residual.is_zero()
            && self.d_alpha_wedge_eta.as_ref().is_none_or(DiffForm::is_zero)
    }
}

fn recover_factor(d_alpha: &DiffForm, eta: &DiffForm) -> FactorRecovery {
    if d_alpha.is_zero() {
        return FactorRecovery::Exact(ScalarExpr::default());
    }
    let Some((idx, c)) = eta.form().terms().iter().next() else {
        return FactorRecovery::NonRepresentable;
    };
    let Some(f) = d_alpha.form().coefficient(*idx).div_exact(c) else {
        return FactorRecovery::NonRepresentable;
    };
    if eta.scale(&f) == *d_alpha {
        FactorRecovery::Exact(f)
    } else {
        FactorRecovery::NonRepresentable
    }
}

/// Checks `dη = 0` and `dΦ = 2αη∧Φ`; in more than 5 coordinates also `dα∧η = 0`
/// and tries to write `dα = f·η`.
pub fn cosymplectic_check(
    phi: &DiffForm,
    eta: &DiffForm,
    alpha: &ScalarExpr,
) -> Result<CosymplecticReport> {
    require_degree(phi, 2)?;
    require_degree(eta, 1)?;
    let d_eta = eta.exterior_derivative();
    let two_alpha = alpha.scale(&qi(2));
    let residual = phi
        .exterior_derivative()
        .sub(&eta.scale(&two_alpha).wedge(phi)?)?;
    let (mut d_alpha_wedge_eta, mut factor) = (None, None);
    if d_eta.is_zero() && residual.is_zero() && phi.dim() > 5 {
        let d_alpha = DiffForm::function(phi.coords(), alpha.clone()).exterior_derivative();
        d_alpha_wedge_eta = Some(d_alpha.wedge(eta)?);
        factor = Some(recover_factor(&d_alpha, eta));
    }
    Ok(CosymplecticReport {
        d_eta,
        residual,
        d_alpha_wedge_eta,
        factor,
    })
}

/// `β∧dβ`; zero means the kernel distribution of `β` is involutive.
pub fn frobenius_residual(beta: &DiffForm) -> Result<DiffForm> {
    require_degree(beta, 1)?;
    beta.wedge(&beta.exterior_derivative())
}
