use std::fs;

use rayon::prelude::*;
use serde_json::{json, Value};

use leeform::diff_forms::{
    classify_theorem_sets, example_catalog, lee_solve, lee_verify, DiffForm, Grid, IdentityKind,
};
use leeform::dsl::{parse_form_file, parse_grid, parse_rational, print_form};
use leeform::exterior::{ExtForm, Vector};
use leeform::random::{random_rank_form, rng};
use leeform::wedge_solver::{
    admissible_main_degrees, check_lemma, kernel2, lambda_matrix, lambda_report as report_lambda,
    rank2, solve_wedge, PROFILE_COMBINATIONS,
};
use leeform::{Error, Field, Q};

use crate::render::{self, Show};
use crate::Status;

/// Input and usage problems; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Math(#[from] Error),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

type CmdResult = Result<Done, CommandError>;

pub struct Done {
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    pub table: String,
}

pub const MAX_LEMMA_DIM: usize = 12;
pub const MAX_TRIALS: usize = 100_000;

struct Loaded {
    path: String,
    name: String,
    form: DiffForm,
}

impl Loaded {
    fn echo(&self) -> Value {
        json!({ "file": self.path, "name": self.name, "form": print_form(&self.form) })
    }
}

/// `path#name` → the named form of a `.form` file.
fn load(reference: &str) -> Result<Loaded, CommandError> {
    let Some((path, name)) = reference.rsplit_once('#') else {
        return Err(CommandError::Usage(format!(
            "`{reference}`: expected <file>#<form name>"
        )));
    };
    let input_err = |message: String| CommandError::Input {
        path: path.to_string(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| input_err(e.to_string()))?;
    let file = parse_form_file(&text).map_err(|e| input_err(e.to_string()))?;
    let form = file
        .get(name)
        .cloned()
        .ok_or_else(|| input_err(format!("no form named `{name}`")))?;
    Ok(Loaded {
        path: path.to_string(),
        name: name.to_string(),
        form,
    })
}

fn require_degree(l: &Loaded, degree: usize) -> Result<(), CommandError> {
    if l.form.degree() != degree {
        return Err(CommandError::Usage(format!(
            "`{}` has degree {}, expected {degree}",
            l.name,
            l.form.degree()
        )));
    }
    Ok(())
}

fn parse_point(text: &str, dim: usize) -> Result<Vec<Q>, CommandError> {
    let p = text
        .split(',')
        .map(|s| parse_rational(s).map_err(|e| CommandError::Usage(format!("--point: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if p.len() != dim {
        return Err(CommandError::Usage(format!(
            "--point has {} coordinates, expected {dim}",
            p.len()
        )));
    }
    Ok(p)
}

fn grid_for(forms: &[&DiffForm], spec: Option<&str>) -> Result<Grid, CommandError> {
    let coords = forms[0].coords();
    let mut poles: Vec<usize> = forms.iter().flat_map(|f| f.pole_coordinates()).collect();
    poles.sort_unstable();
    poles.dedup();
    match spec {
        Some(s) => parse_grid(coords, s, &poles).map_err(|e| CommandError::Usage(format!("--grid: {e}"))),
        None => Ok(Grid::default_for(coords.len(), &poles)),
    }
}

fn same_coords(a: &Loaded, b: &Loaded) -> Result<(), CommandError> {
    if a.form.coords() != b.form.coords() {
        return Err(CommandError::Usage(format!(
            "`{}` and `{}` use different coordinates",
            a.name, b.name
        )));
    }
    Ok(())
}

fn non_constant(l: &Loaded) -> CommandError {
    CommandError::Usage(format!(
        "`{}` has non-constant coefficients; pass --point",
        l.name
    ))
}

fn grid_echo(g: &Grid, coords: &[String]) -> Value {
    let axes: Vec<String> = g
        .axes
        .iter()
        .zip(coords)
        .map(|(a, c)| format!("{c}={}:{}:{}", a.lo, a.hi, a.count))
        .collect();
    json!(axes.join(" "))
}

fn rank_payload<F: Field + Show>(w: &ExtForm<F>, coords: &[String]) -> Result<Value, CommandError> {
    let r = rank2(w)?;
    let basis: Vec<String> = if w.is_zero() {
        (1..=w.dim())
            .map(|i| render::vector(&Vector::<F>::basis(w.dim(), i)))
            .collect()
    } else {
        kernel2(w)?.basis().iter().map(render::vector).collect()
    };
    Ok(json!({
        "form": render::form(w, coords),
        "rank": r,
        "kernel_dim": basis.len(),
        "kernel_basis": basis,
    }))
}

pub fn rank(reference: &str, point: Option<&str>, grid: Option<&str>) -> CmdResult {
    let l = load(reference)?;
    require_degree(&l, 2)?;
    let coords = l.form.coords().to_vec();
    let mut inputs = json!({ "form": l.echo() });
    if let Some(spec) = grid {
        let g = grid_for(&[&l.form], Some(spec))?;
        inputs["grid"] = grid_echo(&g, &coords);
        let mut rows = Vec::new();
        let mut ranks = Vec::new();
        for p in g.points() {
            let r = rank2(&l.form.eval_at(&p)?)?;
            rows.push(vec![render::point(&p), r.to_string()]);
            ranks.push(json!({ "point": render::point(&p), "rank": r }));
        }
        let values: Vec<u64> = ranks.iter().map(|v| v["rank"].as_u64().unwrap_or(0)).collect();
        return Ok(Done {
            inputs,
            results: json!({
                "points": ranks,
                "min_rank": values.iter().min(),
                "max_rank": values.iter().max(),
            }),
            status: Status::Pass,
            table: render::table(&["point", "rank"], &rows),
        });
    }
    let results = match point {
        Some(text) => {
            let p = parse_point(text, coords.len())?;
            inputs["point"] = json!(render::point(&p));
            rank_payload(&l.form.eval_at(&p)?, &coords)?
        }
        None => {
            let w = l.form.as_constant().ok_or_else(|| non_constant(&l))?;
            rank_payload(&w, &coords)?
        }
    };
    let table = format!(
        "rank {}\nkernel dimension {}\n",
        results["rank"], results["kernel_dim"]
    );
    Ok(Done {
        inputs,
        results,
        status: Status::Pass,
        table,
    })
}

fn solve_payload<F: Field + Show>(
    w: &ExtForm<F>,
    k: &ExtForm<F>,
    coords: &[String],
) -> Result<(Value, Status), CommandError> {
    let sol = solve_wedge(w, k)?;
    let kernel: Vec<String> = sol.kernel.iter().map(|b| render::form(b, coords)).collect();
    let mut v = json!({
        "degree": k.degree() - 2,
        "beta": sol.particular.as_ref().map(|b| render::form(b, coords)),
        "unique": sol.is_unique(),
        "kernel_dim": kernel.len(),
        "kernel": kernel,
    });
    let status = if sol.particular.is_some() {
        Status::Pass
    } else {
        let lm = lambda_matrix(w, k.degree() - 2)?;
        v["witness"] = json!(format!(
            "kappa is not in the image of beta -> Omega ^ beta (rank {} of {} target dimensions)",
            lm.rank(),
            lm.target_dim()
        ));
        Status::Fail
    };
    Ok((v, status))
}

pub fn solve(omega: &str, kappa: &str, point: Option<&str>) -> CmdResult {
    let lo = load(omega)?;
    let lk = load(kappa)?;
    require_degree(&lo, 2)?;
    same_coords(&lo, &lk)?;
    if lk.form.degree() < 2 {
        return Err(CommandError::Usage(format!(
            "`{}` must have degree at least 2",
            lk.name
        )));
    }
    let coords = lo.form.coords().to_vec();
    let mut inputs = json!({ "omega": lo.echo(), "kappa": lk.echo() });
    let (results, status) = match point {
        Some(text) => {
            let p = parse_point(text, coords.len())?;
            inputs["point"] = json!(render::point(&p));
            solve_payload(&lo.form.eval_at(&p)?, &lk.form.eval_at(&p)?, &coords)?
        }
        None => {
            let w = lo.form.as_constant().ok_or_else(|| non_constant(&lo))?;
            let k = lk.form.as_constant().ok_or_else(|| non_constant(&lk))?;
            solve_payload(&w, &k, &coords)?
        }
    };
    let table = format!(
        "beta = {}\nkernel dimension {}\n",
        results["beta"].as_str().unwrap_or("no solution"),
        results["kernel_dim"]
    );
    Ok(Done {
        inputs,
        results,
        status,
        table,
    })
}

pub fn lee(omega: &str, beta: Option<&str>, grid: Option<&str>) -> CmdResult {
    let lo = load(omega)?;
    require_degree(&lo, 2)?;
    let lb = beta.map(load).transpose()?;
    if let Some(lb) = &lb {
        require_degree(lb, 1)?;
        same_coords(&lo, lb)?;
    }
    let coords = lo.form.coords().to_vec();
    let mut forms = vec![&lo.form];
    if let Some(lb) = &lb {
        forms.push(&lb.form);
    }
    let g = grid_for(&forms, grid)?;
    let mut inputs = json!({ "omega": lo.echo(), "grid": grid_echo(&g, &coords) });
    if let Some(lb) = &lb {
        inputs["beta"] = lb.echo();
    }
    let points = g.points();
    let solved = lee_solve(&lo.form, &points)?;
    let d_omega = lo.form.exterior_derivative();
    let mut rows = Vec::new();
    let mut per_point = Vec::new();
    let mut failures = Vec::new();
    for ps in &solved.points {
        let agrees = match &lb {
            Some(lb) => {
                let b = lb.form.eval_at(&ps.point)?;
                Some(lb_agrees(&lo.form, &d_omega, &b, &ps.point)?)
            }
            None => None,
        };
        let unique = ps.beta.is_some() && ps.kernel.is_empty();
        let beta_text = ps.beta.as_ref().map(|b| render::form(b, &coords));
        if ps.beta.is_none() || (ps.rank >= 2 && !unique) || agrees == Some(false) {
            failures.push(render::point(&ps.point));
        }
        rows.push(vec![
            render::point(&ps.point),
            ps.rank.to_string(),
            beta_text.clone().unwrap_or_else(|| "none".into()),
            ps.kernel.len().to_string(),
        ]);
        per_point.push(json!({
            "point": render::point(&ps.point),
            "rank": ps.rank,
            "beta": beta_text,
            "unique": unique,
            "kernel_dim": ps.kernel.len(),
            "matches_beta": agrees,
        }));
    }
    let mut results = json!({ "consistent": solved.consistent, "points": per_point });
    let mut ok = solved.consistent && failures.is_empty();
    if let Some(lb) = &lb {
        let v = lee_verify(&lo.form, &lb.form)?;
        ok &= v.holds();
        results["verification"] = json!({
            "residual": print_form(&v.residual),
            "holds": v.holds(),
            "d_beta": print_form(&v.d_beta),
            "d_beta_wedge_omega": print_form(&v.d_beta_wedge_omega),
        });
    }
    if !failures.is_empty() {
        results["failing_points"] = json!(failures);
    }
    Ok(Done {
        inputs,
        results,
        status: if ok { Status::Pass } else { Status::Fail },
        table: render::table(&["point", "rank", "beta", "kernel"], &rows),
    })
}

/// `Ω_p∧β(p) = (dΩ)_p`.
fn lb_agrees(
    omega: &DiffForm,
    d_omega: &DiffForm,
    beta_p: &ExtForm<leeform::symbolic::ExpValue>,
    p: &[Q],
) -> Result<bool, CommandError> {
    let w = omega.eval_at(p)?;
    let k = d_omega.eval_at(p)?;
    Ok(beta_p.wedge(&w)? == k)
}

pub fn classify(omega: &str, beta: &str, grid: Option<&str>) -> CmdResult {
    let lo = load(omega)?;
    let lb = load(beta)?;
    require_degree(&lo, 2)?;
    require_degree(&lb, 1)?;
    same_coords(&lo, &lb)?;
    let coords = lo.form.coords().to_vec();
    let g = grid_for(&[&lo.form, &lb.form], grid)?;
    let inputs = json!({
        "omega": lo.echo(),
        "beta": lb.echo(),
        "grid": grid_echo(&g, &coords),
    });
    let c = match classify_theorem_sets(&lo.form, &lb.form, &g.points()) {
        Ok(c) => c,
        Err(Error::HypothesisViolated) => {
            let v = lee_verify(&lo.form, &lb.form)?;
            let residual = print_form(&v.residual);
            return Ok(Done {
                inputs,
                table: format!("hypothesis violated: d(omega) - beta ^ omega = {residual}\n"),
                results: json!({
                    "error": "hypothesis violated: d(omega) != beta ^ omega",
                    "residual": residual,
                }),
                status: Status::Fail,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
    let rows: Vec<Vec<String>> = c
        .points
        .iter()
        .map(|p| {
            vec![
                render::point(&p.point),
                p.r_omega.to_string(),
                yes(p.in_a),
                yes(p.in_b),
                yes(p.in_c),
                p.d_beta_rank.to_string(),
            ]
        })
        .collect();
    let points: Vec<Value> = c
        .points
        .iter()
        .map(|p| {
            json!({
                "point": render::point(&p.point),
                "r_omega": p.r_omega,
                "in_A": p.in_a,
                "in_B": p.in_b,
                "in_C": p.in_c,
                "d_beta_rank": p.d_beta_rank,
            })
        })
        .collect();
    let ranks: Vec<usize> = c.points.iter().map(|p| p.r_omega).collect();
    let results = json!({
        "points": points,
        "count_A": c.count_a(),
        "count_B": c.count_b(),
        "count_C": c.count_c(),
        "zero_points": c.zero_points,
        "min_rank": ranks.iter().min(),
        "max_rank": ranks.iter().max(),
        "violations": c.violations,
        "note": "the zero set of omega is only sampled; nowhere-density is not decided",
    });
    Ok(Done {
        inputs,
        results,
        status: if c.passed() { Status::Pass } else { Status::Fail },
        table: render::table(&["point", "r(omega)", "A", "B", "C", "r(dbeta)"], &rows),
    })
}

pub fn lemma_check(n: usize, p: usize, l: usize, trials: usize, seed: u64) -> CmdResult {
    if !(2..=MAX_LEMMA_DIM).contains(&n) {
        return Err(CommandError::Usage(format!("--dim must be in 2..={MAX_LEMMA_DIM}")));
    }
    if p == 0 || 2 * p > n {
        return Err(CommandError::Usage(format!("--rank must be in 1..={}", n / 2)));
    }
    if l == 0 || l + 2 > n {
        return Err(CommandError::Usage(format!("--deg must be in 1..={}", n - 2)));
    }
    if trials == 0 || trials > MAX_TRIALS {
        return Err(CommandError::Usage(format!("--trials must be in 1..={MAX_TRIALS}")));
    }
    let checks = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut r = rng(seed, t);
            let omega = random_rank_form(&mut r, n, p);
            check_lemma(&omega, l, PROFILE_COMBINATIONS, &mut r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let inputs = json!({ "dim": n, "rank": p, "deg": l, "trials": trials, "seed": seed });
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    let mut per_trial = Vec::new();
    for (t, c) in checks.iter().enumerate() {
        for v in &c.violations {
            violations.push(json!({ "trial": t, "message": v }));
        }
        rows.push(vec![
            t.to_string(),
            c.kernel_dim.to_string(),
            c.min_s.map_or("-".into(), |s| s.to_string()),
            if c.passed() { "pass" } else { "FAIL" }.to_string(),
        ]);
        per_trial.push(json!({
            "trial": t,
            "kernel_dim": c.kernel_dim,
            "min_main_degree": c.min_s,
            "constructed": c.constructed,
        }));
    }
    let results = json!({
        "trials": per_trial,
        "min_main_degree": checks.iter().filter_map(|c| c.min_s).min(),
        "admissible_main_degrees": admissible_main_degrees(n, p, l),
        "combinations_per_trial": PROFILE_COMBINATIONS,
        "violations": violations,
    });
    let status = if violations.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Done {
        inputs,
        results,
        status,
        table: render::table(&["trial", "dim ker", "min |beta*|", "status"], &rows),
    })
}

fn lambda_payload<F: Field>(w: &ExtForm<F>) -> Result<(Value, Status, String), CommandError> {
    let rep = report_lambda(w)?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "source_dim": r.source_dim,
                "target_dim": r.target_dim,
                "rank": r.rank,
                "kernel_dim": r.kernel_dim,
                "coker_dim": r.coker_dim,
                "injective": r.injective(),
                "surjective": r.surjective(),
            })
        })
        .collect();
    let text_rows: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                format!("{}x{}", r.target_dim, r.source_dim),
                r.rank.to_string(),
                r.kernel_dim.to_string(),
                r.coker_dim.to_string(),
            ]
        })
        .collect();
    let injective = rep.injective_below_rank();
    let v = json!({
        "n": rep.n,
        "p": rep.p,
        "rows": rows,
        "injective_below_rank": injective,
        "non_surjective_above_rank": rep.non_surjective_above_rank(),
    });
    let status = if injective { Status::Pass } else { Status::Fail };
    let table = render::table(&["k", "matrix", "rank", "kernel", "cokernel"], &text_rows);
    Ok((v, status, table))
}

pub fn lambda_report(omega: &str, point: Option<&str>) -> CmdResult {
    let lo = load(omega)?;
    require_degree(&lo, 2)?;
    let mut inputs = json!({ "omega": lo.echo() });
    let (results, status, table) = match point {
        Some(text) => {
            let p = parse_point(text, lo.form.dim())?;
            inputs["point"] = json!(render::point(&p));
            lambda_payload(&lo.form.eval_at(&p)?)?
        }
        None => lambda_payload(&lo.form.as_constant().ok_or_else(|| non_constant(&lo))?)?,
    };
    Ok(Done {
        inputs,
        results,
        status,
        table,
    })
}

pub fn verify_paper() -> CmdResult {
    let mut checks = Vec::new();
    let mut lines = String::new();
    let mut all = true;
    for entry in example_catalog() {
        for id in &entry.identities {
            let holds = id.holds();
            all &= holds;
            lines += &format!(
                "{} {}: {}\n",
                if holds { "PASS" } else { "FAIL" },
                entry.name,
                id.label
            );
            let mut c = json!({
                "example": entry.name,
                "identity": id.label,
                "kind": match id.kind {
                    IdentityKind::Equal => "equal",
                    IdentityKind::NonZero => "nonzero",
                },
                "holds": holds,
                "value": print_form(&id.lhs),
            });
            if !holds {
                c["witness"] = json!(print_form(&id.witness()));
            }
            checks.push(c);
        }
    }
    Ok(Done {
        inputs: json!({}),
        results: json!({ "checks": checks }),
        status: if all { Status::Pass } else { Status::Fail },
        table: lines,
    })
}
