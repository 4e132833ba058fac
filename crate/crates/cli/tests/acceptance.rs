//! Acceptance checks. Each criterion prints one PASS/FAIL line with its
//! runtime; the process exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use leeform::diff_forms::{
    classify_theorem_sets, cosymplectic_check, example_catalog, lee_verify, DiffForm,
    FactorRecovery, Grid,
};
use leeform::dsl::{parse_form, FormSource};
use leeform::exterior::{ExtForm, Vector};
use leeform::linalg::Matrix;
use leeform::random::{random_rank_form, random_subspace, rng};
use leeform::scalar::{q, qi};
use leeform::subspace::{extract_derivative, main_part, Subspace};
use leeform::symbolic::{Monomial, Poly, ScalarExpr};
use leeform::wedge_solver::{
    check_lemma, lambda_matrix, rank2_pair_kernel, solve_wedge, PROFILE_COMBINATIONS,
};
use leeform::{MultiIndex, Ring, Q};
use leeform_cli::{run_command, Outcome};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

type Check = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- oracles

fn leibniz_det(m: &[Vec<Q>]) -> Q {
    fn go(m: &[Vec<Q>], row: usize, used: &mut Vec<bool>, sign: i64) -> Q {
        if row == m.len() {
            return qi(sign);
        }
        let mut total = qi(0);
        let mut passed = 0;
        for j in 0..m.len() {
            if used[j] {
                continue;
            }
            let s = if passed % 2 == 0 { sign } else { -sign };
            passed += 1;
            if Ring::is_zero(&m[row][j]) {
                continue;
            }
            used[j] = true;
            total += &m[row][j] * go(m, row + 1, used, s);
            used[j] = false;
        }
        total
    }
    go(m, 0, &mut vec![false; m.len()], 1)
}

fn factorial(k: usize) -> Q {
    qi((1..=k as i64).product())
}

fn reverse_sign(k: usize) -> Q {
    qi(if (k * k.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 })
}

fn evaluate_oracle(theta: &ExtForm, xs: &[Vector]) -> Q {
    let mut total = qi(0);
    for (m, c) in theta.terms() {
        let rows: Vec<Vec<Q>> = m
            .indices()
            .map(|i| xs.iter().map(|x| x.get(i).clone()).collect())
            .collect();
        total += c * leibniz_det(&rows);
    }
    total / factorial(xs.len())
}

fn rank_oracle(omega: &ExtForm) -> usize {
    let mut acc = ExtForm::constant(omega.dim(), qi(1));
    let mut p = 0;
    while 2 * (p + 1) <= omega.dim() {
        acc = acc.wedge(omega).unwrap();
        if acc.is_zero() {
            break;
        }
        p += 1;
    }
    p
}

fn small(r: &mut ChaCha8Rng, range: i64) -> Q {
    q(r.random_range(-range..=range), if r.random_bool(0.3) { 2 } else { 1 })
}

fn nonzero_small(r: &mut ChaCha8Rng) -> Q {
    loop {
        let c = small(r, 4);
        if !Ring::is_zero(&c) {
            return c;
        }
    }
}

fn random_form(r: &mut ChaCha8Rng, n: usize, k: usize, density: f64) -> ExtForm {
    let mut f = ExtForm::zero(n, k);
    for m in MultiIndex::combinations(n, k) {
        if r.random_bool(density) {
            f.add_term(m, small(r, 3));
        }
    }
    f
}

fn random_vector(r: &mut ChaCha8Rng, n: usize) -> Vector {
    Vector::new((0..n).map(|_| small(r, 3)).collect())
}

fn is_basis(vs: &[Vector], n: usize) -> bool {
    let m = Matrix::from_rows(vs.iter().map(|v| v.components().to_vec()).collect(), n);
    !Ring::is_zero(&m.determinant())
}

/// `|ω*|` counted in a random basis whose last `dim C` vectors span `C`.
fn main_degree_in_random_frame(r: &mut ChaCha8Rng, omega: &ExtForm, c: &Subspace) -> usize {
    let n = omega.dim();
    let k = n - c.dim();
    loop {
        let mut vs: Vec<Vector> = (0..k).map(|_| random_vector(r, n)).collect();
        for _ in 0..c.dim() {
            vs.push(
                c.basis()
                    .iter()
                    .fold(Vector::zero(n), |acc, b| acc.add(&b.scale(&small(r, 2)))),
            );
        }
        if !is_basis(&vs, n) {
            continue;
        }
        let images: Vec<ExtForm> = (1..=n)
            .map(|i| {
                let row: Vec<Q> = vs.iter().map(|v| v.get(i).clone()).collect();
                ExtForm::covector(&row)
            })
            .collect();
        let local = omega.substitute(&images).unwrap();
        let low = (1u64 << k) - 1;
        return local
            .terms()
            .keys()
            .map(|m| (m.mask() & low).count_ones() as usize)
            .min()
            .unwrap();
    }
}

fn killed_by(mu: &ExtForm, c: &Subspace) -> bool {
    c.basis().iter().all(|v| mu.interior(v).unwrap().is_zero())
}

fn in_span(basis: &[ExtForm], f: &ExtForm) -> bool {
    let rows: Vec<Vec<Q>> = basis.iter().map(ExtForm::to_dense).collect();
    let width = f.to_dense().len();
    let before = Matrix::from_rows(rows.clone(), width).rank();
    let mut with = rows;
    with.push(f.to_dense());
    Matrix::from_rows(with, width).rank() == before
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

// ---------------------------------------------------------------- criteria

/// Nondegenerate 2-forms on a 4-space: λ¹ is invertible and every 3-form has
/// exactly one preimage.
fn c1() -> Check {
    let mut r = rng(SEED, 1);
    let mut solved = 0;
    for _ in 0..100 {
        let omega = random_rank_form(&mut r, 4, 2);
        let lm = lambda_matrix(&omega, 1).map_err(|e| e.to_string())?;
        ensure(!Ring::is_zero(&leibniz_det(&lm.matrix.rows)), || {
            format!("lambda^1 singular for {omega:?}")
        })?;
        for _ in 0..100 {
            let kappa = random_form(&mut r, 4, 3, 0.7);
            let sol = solve_wedge(&omega, &kappa).map_err(|e| e.to_string())?;
            ensure(sol.is_unique(), || format!("non-unique solution for {kappa:?}"))?;
            let beta = sol.particular.unwrap();
            ensure(omega.wedge(&beta).unwrap() == kappa, || {
                format!("nonzero residual for {kappa:?}")
            })?;
            solved += 1;
        }
    }
    Ok(format!("100 forms, {solved} exact unique solves"))
}

/// The 4-dimensional example has a Lee form that is not closed, while
/// conformal multiples of constant symplectic forms on a 6-space have
/// closed Lee forms and every sample point in A.
fn c2() -> Check {
    let cat = example_catalog();
    let entry = cat.iter().find(|e| e.name == "omega_f").ok_or("missing example")?;
    let omega0 = entry.form("omega0").ok_or("missing omega0")?;
    let beta0 = entry.form("beta0").ok_or("missing beta0")?;
    let v = lee_verify(omega0, beta0).map_err(|e| e.to_string())?;
    ensure(v.holds(), || "d(omega0) != beta0 ^ omega0".into())?;
    ensure(!v.d_beta.is_zero(), || "d(beta0) vanished".into())?;
    ensure(v.d_beta_wedge_omega.is_zero(), || "d(beta0) ^ omega0 != 0".into())?;

    let mut r = rng(SEED, 2);
    let c = numbered(6);
    let grid = Grid::default_for(6, &[]).points();
    let families = 8;
    for _ in 0..families {
        let mut g = Poly::zero();
        for _ in 0..3 {
            let exps: Vec<(usize, i32)> = (0..r.random_range(1..=2))
                .map(|_| (r.random_range(0..6), 1))
                .collect();
            g.add_term(Monomial::from_exponents(exps), nonzero_small(&mut r));
        }
        let sigma = DiffForm::from_constant(&c, &random_rank_form(&mut r, 6, 3)).unwrap();
        let omega = sigma.scale(&ScalarExpr::exp(g.clone()));
        let beta = DiffForm::function(&c, ScalarExpr::from_poly(&g)).exterior_derivative();
        let v = lee_verify(&omega, &beta).map_err(|e| e.to_string())?;
        ensure(v.holds() && v.d_beta.is_zero(), || "Lee equation or closedness failed".into())?;
        let cl = classify_theorem_sets(&omega, &beta, &grid).map_err(|e| e.to_string())?;
        ensure(cl.passed() && cl.count_a() == grid.len(), || {
            format!("A = {} of {}; {:?}", cl.count_a(), grid.len(), cl.violations)
        })?;
    }
    Ok(format!(
        "d(beta0) != 0, d(beta0)^omega0 = 0; {families} families x {} points all in A",
        grid.len()
    ))
}

/// Kernel lemma over 200 random forms per rank, cycling through the valid
/// (n, l) pairs.
fn c3() -> Check {
    let mut trials = 0;
    let mut constructed = 0;
    for p in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (4..=8usize)
            .filter(|&n| 2 * p <= n)
            .flat_map(|n| (1..=6.min(n - 2)).map(move |l| (n, l)))
            .collect();
        for t in 0..200 {
            let (n, l) = pairs[t % pairs.len()];
            let mut r = rng(SEED + p as u64, t as u64);
            let omega = random_rank_form(&mut r, n, p);
            let check = check_lemma(&omega, l, PROFILE_COMBINATIONS, &mut r)
                .map_err(|e| format!("n={n} p={p} l={l}: {e}"))?;
            ensure(check.passed(), || format!("n={n} p={p} l={l}: {:?}", check.violations))?;
            ensure(l >= p || check.kernel_dim == 0, || {
                format!("n={n} p={p} l={l}: nontrivial kernel")
            })?;
            ensure(check.min_s.is_none_or(|s| s >= p), || {
                format!("n={n} p={p} l={l}: main degree below rank")
            })?;
            constructed += check.constructed.len();
            trials += 1;
        }
    }
    Ok(format!("{trials} forms, {constructed} constructed kernel elements validated"))
}

/// Derivative extraction agrees with an exhaustive search over basis tuples.
fn c4() -> Check {
    let mut r = rng(SEED, 4);
    for case in 0..500 {
        let n = r.random_range(2..=7);
        let dim_c = r.random_range(1..n);
        let c = random_subspace(&mut r, n, dim_c);
        let k = r.random_range(1..=n);
        let omega = loop {
            let f = random_form(&mut r, n, k, 0.4);
            if !f.is_zero() {
                break f;
            }
        };
        let s = main_degree_in_random_frame(&mut r, &omega, &c);
        let j = k - s;
        let hits: Vec<Vec<usize>> = MultiIndex::combinations(c.dim(), j)
            .into_iter()
            .map(|m| m.indices().map(|i| i - 1).collect::<Vec<_>>())
            .filter(|pos| {
                let vs: Vec<Vector> = pos.iter().map(|&i| c.basis()[i].clone()).collect();
                let mu = omega.iterated_interior(&vs).unwrap();
                !mu.is_zero() && killed_by(&mu, &c)
            })
            .collect();
        let d = extract_derivative(&omega, &c).map_err(|e| format!("case {case}: {e}"))?;
        ensure(!hits.is_empty(), || format!("case {case}: exhaustive search found nothing"))?;
        ensure(d.basis_positions == hits[0], || {
            format!("case {case}: {:?} vs {:?}", d.basis_positions, hits[0])
        })?;
        ensure(
            !d.result.is_zero() && d.result.degree() == s && killed_by(&d.result, &c),
            || format!("case {case}: result not a nonzero {s}-form in the annihilator algebra"),
        )?;
        ensure(main_part(&omega, &c).unwrap().1 == s, || format!("case {case}: degree"))?;
    }
    Ok("500 cases match exhaustive search".into())
}

/// Pairs of 2-forms with vanishing wedge.
fn c5() -> Check {
    let mut r = rng(SEED, 5);
    for t in 0..50 {
        let n = if t % 2 == 0 { 4 } else { 5 };
        let frame = leeform::random::random_invertible(&mut r, n, 2);
        let cov: Vec<ExtForm> = frame.rows.iter().map(|row| ExtForm::covector(row)).collect();
        let (e1, e2, b1, b2) = (&cov[0], &cov[1], &cov[2], &cov[3]);
        let c = nonzero_small(&mut r);
        let ee = e1.wedge(e2).unwrap();
        let bb = b1.wedge(b2).unwrap();
        let omega1 = ee.add(&bb.scale(&c)).unwrap();
        let kernel = rank2_pair_kernel(&omega1).map_err(|e| e.to_string())?;
        ensure(kernel.len() == 5, || format!("kernel dimension {} for n={n}", kernel.len()))?;
        let mut listed = vec![ee.sub(&bb.scale(&c)).unwrap()];
        for e in [e1, e2] {
            for b in [b1, b2] {
                listed.push(e.wedge(b).unwrap().scale(&nonzero_small(&mut r)));
            }
        }
        for f in &listed {
            ensure(omega1.wedge(f).unwrap().is_zero() && in_span(&kernel, f), || {
                format!("listed form {f:?} not in the kernel")
            })?;
        }
        for _ in 0..10 {
            let combo = kernel.iter().fold(ExtForm::zero(n, 2), |acc, b| {
                acc.add(&b.scale(&small(&mut r, 3))).unwrap()
            });
            ensure(rank_oracle(&combo) <= 2, || "kernel element of rank > 2".into())?;
        }
    }
    for _ in 0..50 {
        let omega1 = random_rank_form(&mut r, 6, 3);
        let kernel = rank2_pair_kernel(&omega1).map_err(|e| e.to_string())?;
        ensure(kernel.is_empty(), || "rank-3 form with nontrivial pair kernel".into())?;
    }
    Ok("50 rank-2 families contain the five forms; 50 rank-3 kernels trivial".into())
}

/// Worked examples through the CLI, cross-checked against direct computation.
fn c6() -> Check {
    let (report, code) = match run_command(&["verify-paper"]) {
        Outcome::Report { report, code, .. } => (report, code),
        Outcome::Text { text, .. } => return Err(text),
    };
    ensure(code == 0, || format!("verify-paper exit code {code}"))?;
    let checks = report.results["checks"].as_array().ok_or("no checks")?;
    let labels: Vec<&str> = checks.iter().filter_map(|c| c["identity"].as_str()).collect();
    ensure(checks.len() >= 7 && checks.iter().all(|c| c["holds"] == true), || {
        format!("{labels:?}")
    })?;

    let xy = ["x1", "x2", "y1", "y2"];
    let parse = |coords: &[&str], body: &str| parse_form(&FormSource::new(coords, body)).unwrap();
    let omega0 = parse(&xy, "exp(x1*y1 + x2*y2)*dx1/\\dx2 + dy1/\\dy2");
    let beta0 = parse(&xy, "x1*dy1 + x2*dy2");
    let d_beta0 = beta0.exterior_derivative();
    ensure(omega0.exterior_derivative() == beta0.wedge(&omega0).unwrap(), || {
        "d(omega0) != beta0 ^ omega0".into()
    })?;
    ensure(d_beta0 == parse(&xy, "dx1/\\dy1 + dx2/\\dy2"), || "d(beta0)".into())?;
    ensure(d_beta0.wedge(&omega0).unwrap().is_zero(), || "d(beta0) ^ omega0".into())?;

    let txy = ["t", "x1", "x2", "y1", "y2"];
    let eta = parse(&txy, "dt");
    let phi = parse(&txy, "t*exp(x1*y1 + x2*y2)*dx1/\\dx2 + t*dy1/\\dy2");
    let gamma = parse(&txy, "t^-1*dt + x1*dy1 + x2*dy2");
    ensure(eta.exterior_derivative().is_zero(), || "d(eta)".into())?;
    ensure(phi.exterior_derivative() == gamma.wedge(&phi).unwrap(), || "d(Phi)".into())?;
    ensure(!eta.wedge(&phi).unwrap().wedge(&phi).unwrap().is_zero(), || {
        "eta ^ Phi ^ Phi vanished".into()
    })?;
    let dg = gamma.exterior_derivative();
    let contact = gamma.wedge(&dg).unwrap().wedge(&dg).unwrap();
    ensure(contact == parse(&txy, "2*t^-1*dt/\\dx1/\\dy1/\\dx2/\\dy2"), || {
        "gamma ^ dgamma ^ dgamma".into()
    })?;
    Ok(format!("{} identities hold, exit 0", checks.len()))
}

/// Almost cosymplectic instances on a 7-space.
fn c7() -> Check {
    let c = names(&["t", "x1", "x2", "x3", "x4", "x5", "x6"]);
    let sigma = DiffForm::from_constant(&c, &{
        let mut s = ExtForm::zero(7, 2);
        for i in 0..3 {
            s.add_term(MultiIndex::from_mask(0b110 << (2 * i)), qi(1));
        }
        s
    })
    .unwrap();
    let eta = DiffForm::differential(&c, 0);
    let exp_t = |coef: i64, pow: i32| ScalarExpr::exp(Poly::term(qi(coef), Monomial::power(0, pow)));

    let kenmotsu = cosymplectic_check(&sigma.scale(&exp_t(2, 1)), &eta, &ScalarExpr::one())
        .map_err(|e| e.to_string())?;
    ensure(kenmotsu.passed(), || "alpha = 1 failed".into())?;
    ensure(
        kenmotsu.d_alpha_wedge_eta.as_ref().is_some_and(DiffForm::is_zero),
        || "alpha = 1: d(alpha) ^ eta".into(),
    )?;

    let phi_t2 = sigma.scale(&exp_t(1, 2));
    let linear = cosymplectic_check(&phi_t2, &eta, &ScalarExpr::var(0)).map_err(|e| e.to_string())?;
    ensure(linear.passed(), || "alpha = t failed".into())?;
    ensure(
        linear.d_alpha_wedge_eta.as_ref().is_some_and(DiffForm::is_zero),
        || "alpha = t: d(alpha) ^ eta".into(),
    )?;
    ensure(linear.factor == Some(FactorRecovery::Exact(ScalarExpr::one())), || {
        format!("alpha = t: factor {:?}", linear.factor)
    })?;

    let bad = cosymplectic_check(&phi_t2, &eta, &ScalarExpr::var(1)).map_err(|e| e.to_string())?;
    ensure(!bad.passed() && !bad.residual.is_zero(), || "alpha = x1 passed".into())?;
    Ok("alpha = 1 and alpha = t pass, alpha = x1 fails with a nonzero residual".into())
}

/// 1000 randomized algebraic identities.
fn c8() -> Check {
    let mut r = rng(SEED, 8);
    let mut cases = 0;
    for _ in 0..150 {
        let n = r.random_range(1..=6);
        let k = r.random_range(1..=n);
        let theta = random_form(&mut r, n, k, 0.5);
        let xs: Vec<Vector> = (0..k).map(|_| random_vector(&mut r, n)).collect();
        let expect = reverse_sign(k) * factorial(k) * evaluate_oracle(&theta, &xs);
        ensure(theta.pairing(&xs).unwrap() == expect, || "pairing vs evaluation".into())?;
        cases += 1;
    }
    for _ in 0..150 {
        let n = r.random_range(1..=6);
        let k = r.random_range(1..=n);
        let covs: Vec<Vector> = (0..k).map(|_| random_vector(&mut r, n)).collect();
        let xs: Vec<Vector> = (0..k).map(|_| random_vector(&mut r, n)).collect();
        let theta = covs.iter().fold(ExtForm::constant(n, qi(1)), |acc, a| {
            acc.wedge(&ExtForm::covector(a.components())).unwrap()
        });
        let m: Vec<Vec<Q>> = covs
            .iter()
            .map(|a| {
                xs.iter()
                    .map(|x| a.components().iter().zip(x.components()).map(|(u, v)| u * v).sum())
                    .collect()
            })
            .collect();
        ensure(theta.pairing(&xs).unwrap() == reverse_sign(k) * leibniz_det(&m), || {
            "decomposable pairing vs determinant".into()
        })?;
        cases += 1;
    }
    for _ in 0..150 {
        let n = r.random_range(1..=7);
        let (a, b) = (r.random_range(0..=n), r.random_range(0..=n));
        let mu = random_form(&mut r, n, a, 0.4);
        let nu = random_form(&mut r, n, b, 0.4);
        let v = random_vector(&mut r, n);
        let lhs = mu.wedge(&nu).unwrap().interior(&v).unwrap();
        let expect = if a + b == 0 {
            ExtForm::zero(n, 0)
        } else {
            let mut rhs = ExtForm::zero(n, a + b - 1);
            if a > 0 {
                rhs = rhs.add(&mu.interior(&v).unwrap().wedge(&nu).unwrap()).unwrap();
            }
            if b > 0 {
                let sign = qi(if a % 2 == 0 { 1 } else { -1 });
                rhs = rhs.add(&mu.wedge(&nu.interior(&v).unwrap()).unwrap().scale(&sign)).unwrap();
            }
            rhs
        };
        ensure(lhs == expect, || "interior antiderivation".into())?;
        cases += 1;
    }
    for _ in 0..150 {
        let n = r.random_range(2..=8);
        let k = r.random_range(2..=n);
        let theta = random_form(&mut r, n, k, 0.5);
        let v = random_vector(&mut r, n);
        ensure(theta.interior(&v).unwrap().interior(&v).unwrap().is_zero(), || {
            "interior squared".into()
        })?;
        cases += 1;
    }
    let diff_form = |r: &mut ChaCha8Rng, n: usize, k: usize| {
        let mut terms = Vec::new();
        for m in MultiIndex::combinations(n, k) {
            if r.random_bool(0.5) {
                let mut f = ScalarExpr::default();
                for _ in 0..r.random_range(1..=3) {
                    let exps: Vec<(usize, i32)> = (0..r.random_range(0..=2))
                        .map(|_| (r.random_range(0..n), r.random_range(-2..=3)))
                        .collect();
                    let mut p = Poly::zero();
                    for _ in 0..r.random_range(0..=2) {
                        let pe: Vec<(usize, i32)> = (0..r.random_range(0..=2))
                            .map(|_| (r.random_range(0..n), 1))
                            .collect();
                        p.add_term(Monomial::from_exponents(pe), qi(r.random_range(-2..=2)));
                    }
                    f.add_term(small(r, 3), Monomial::from_exponents(exps), p);
                }
                terms.push((m.indices().map(|i| i - 1).collect(), f));
            }
        }
        DiffForm::from_terms(&numbered(n), k, terms).unwrap()
    };
    for _ in 0..150 {
        let n = r.random_range(1..=5);
        let k = r.random_range(0..n);
        let a = diff_form(&mut r, n, k);
        ensure(a.exterior_derivative().exterior_derivative().is_zero(), || "d^2".into())?;
        cases += 1;
    }
    for _ in 0..150 {
        let n = r.random_range(2..=5);
        let ka = r.random_range(0..n);
        let kb = r.random_range(0..=n - ka);
        let a = diff_form(&mut r, n, ka);
        let b = diff_form(&mut r, n, kb);
        let sign = qi(if ka % 2 == 0 { 1 } else { -1 });
        let rhs = a
            .exterior_derivative()
            .wedge(&b)
            .unwrap()
            .add(&a.wedge(&b.exterior_derivative()).unwrap().scale_q(&sign))
            .unwrap();
        ensure(a.wedge(&b).unwrap().exterior_derivative() == rhs, || "Leibniz".into())?;
        cases += 1;
    }
    let n = 6;
    let c = random_subspace(&mut r, n, 3);
    let omega = random_form(&mut r, n, 3, 0.5);
    let s = main_part(&omega, &c).map_err(|e| e.to_string())?.1;
    for _ in 0..100 {
        ensure(main_degree_in_random_frame(&mut r, &omega, &c) == s, || {
            "main-part degree changed under a frame change".into()
        })?;
        cases += 1;
    }
    ensure(cases == 1000, || format!("{cases} cases"))?;
    Ok(format!("{cases} randomized cases"))
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Two runs of every command give byte-identical reports.
fn c9() -> Check {
    let ex = fixture("examples.form");
    let r6 = fixture("r6.form");
    let runs: Vec<Vec<String>> = [
        vec!["rank".into(), format!("{ex}#Omega4")],
        vec!["rank".into(), format!("{ex}#omega0"), "--point".into(), "1,0,1/2,2".into()],
        vec!["solve".into(), format!("{ex}#Omega4"), format!("{ex}#kappa123")],
        vec!["lee".into(), format!("{ex}#omega0"), "--beta".into(), format!("{ex}#beta0")],
        vec!["classify".into(), format!("{ex}#omega0"), format!("{ex}#beta0")],
        vec!["classify".into(), format!("{r6}#omega"), format!("{r6}#beta")],
        [
            "lemma-check", "--dim", "6", "--rank", "2", "--deg", "3", "--trials", "20", "--seed",
            "7",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        vec!["lambda-report".into(), format!("{r6}#sigma")],
        vec!["verify-paper".into()],
    ]
    .into();
    let bin = env!("CARGO_BIN_EXE_leeform");
    for args in &runs {
        let once = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let twice = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure(!once.stdout.is_empty(), || format!("{args:?}: empty report"))?;
        ensure(once.status.code() == Some(0), || {
            format!("{args:?}: exit {:?}", once.status.code())
        })?;
        ensure(once.stdout == twice.stdout && once.status == twice.status, || {
            format!("{args:?}: reports differ")
        })?;
        serde_json::from_slice::<serde_json::Value>(&once.stdout)
            .map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 wedge isomorphism in dimension 4", Some(Duration::from_secs(5)), c1),
        ("2 Lee form closedness", Some(Duration::from_secs(10)), c2),
        ("3 kernel lemma", Some(Duration::from_secs(60)), c3),
        ("4 derivative extraction", Some(Duration::from_secs(30)), c4),
        ("5 rank-2 pair kernels", Some(Duration::from_secs(20)), c5),
        ("6 worked examples", Some(Duration::from_secs(2)), c6),
        ("7 almost cosymplectic implication", Some(Duration::from_secs(2)), c7),
        ("8 algebraic invariants", Some(Duration::from_secs(30)), c8),
        ("9 report determinism", None, c9),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, limit, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if limit.is_none_or(|l| took <= l) => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        let budget = limit.map_or("no limit".to_string(), |l| format!("limit {}s", l.as_secs()));
        println!(
            "{} criterion {name} [{:.2}s, {budget}]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
