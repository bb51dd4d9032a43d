use std::process::ExitCode;

use serde_json::json;

use monogenica::basis::{family_convert, solid_norm};
use monogenica::calculus::{basis_derivative, basis_primitive};
use monogenica::quadrature::{gram_matrix, Domain, QuadratureRule};
use monogenica::series::{
    default_sphere_rule, fourier_expand, l2_residual, laurent_expand_with_rule, taylor_coeffs_with_rule,
    LaurentVariant,
};
use monogenica::{eval_basis, BasisElement, BasisFamily, BasisIndex, Field, Point3, SeriesExpansion};

use crate::error::CliError;
use crate::expr::{parse, Expr};
use crate::output::{csv_text, emit, json_text, quat_cell};
use crate::{EvalArgs, ExpandArgs, ExpandKind, Format, GramArgs, GramDomain, LaurentArgs, LaurentPart, Orders};
use crate::{FamilyArg, TableArgs, TableOp};

// smallest degree the default rules are sized for; keeps non-polynomial specs
// such as shifted kernels well resolved at small n_max
const MIN_RULE_DEGREE: usize = 20;

fn check_rho(rho: f64) -> Result<(), CliError> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--rho must be positive, got {rho}")))
    }
}

fn check_degree(n: usize) -> Result<(), CliError> {
    if n > monogenica::MAX_DEGREE {
        return Err(CliError::Usage(format!("--n-max {n} exceeds {}", monogenica::MAX_DEGREE)));
    }
    Ok(())
}

fn rule(domain: Domain, degree: usize, orders: &Orders) -> Result<QuadratureRule, CliError> {
    Ok(match (orders.orders, domain) {
        (Some([a, b, c]), _) => QuadratureRule::new(domain, a, b, c)?,
        (None, Domain::Sphere { radius }) => default_sphere_rule(degree, radius)?,
        (None, _) => QuadratureRule::for_degree(domain, degree)?,
    })
}

pub fn eval(a: &EvalArgs) -> Result<ExitCode, CliError> {
    let family: BasisFamily = a.family.into();
    let idx = BasisIndex::new(a.k, a.l)?;
    check_degree(idx.degree())?;
    let values = a
        .points
        .iter()
        .map(|p| {
            let v = eval_basis(family, idx, Point3::from_array(*p))?;
            Ok(json!({ "point": p, "value": v.to_array() }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let doc = json!({ "family": family, "k": a.k, "l": a.l, "values": values });
    emit(a.output.as_deref(), &json_text(&doc))?;
    Ok(ExitCode::SUCCESS)
}

pub fn gram(a: &GramArgs) -> Result<ExitCode, CliError> {
    check_rho(a.rho)?;
    check_degree(a.n_max)?;
    let n = a.n_max as i32;
    let (domain, idx) = match a.domain {
        GramDomain::Ball => (Domain::Ball { radius: a.rho }, BasisIndex::range(0, n)),
        GramDomain::Exterior => {
            if n < 2 {
                return Err(CliError::Usage("the exterior Gram matrix needs --n-max >= 2 (outer k <= -2)".into()));
            }
            (Domain::Exterior { radius: a.rho }, BasisIndex::range(-n, -2))
        }
        GramDomain::Sphere => (Domain::Sphere { radius: a.rho }, BasisIndex::range(-n, n)),
    };
    let rule = rule(domain, a.n_max, &a.orders)?;
    let els: Vec<BasisElement> = idx.iter().map(|i| BasisElement::new(BasisFamily::OrthonormalPhi, *i)).collect();
    let refs: Vec<&dyn Field> = els.iter().map(|e| e as &dyn Field).collect();
    let g = gram_matrix(&refs, &rule)?;

    let expected = |i: BasisIndex| match a.domain {
        GramDomain::Sphere => (2 * i.k() + 3).abs() as f64 * a.rho.powi(2 * i.k() + 2),
        _ => a.rho.powi(2 * i.k() + 3),
    };
    let (mut off, mut diag) = (0.0f64, 0.0f64);
    for (r, row) in g.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if r == c {
                diag = diag.max((v.a0 - expected(idx[r])).abs().max(v.vec().max_abs()));
            } else {
                off = off.max(v.norm());
            }
        }
    }
    let labels: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    let text = match a.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = g.iter().map(|r| r.iter().map(|q| quat_cell(*q)).collect()).collect();
            csv_text(&labels, &rows)
        }
        Format::Json => {
            let m: Vec<Vec<[f64; 4]>> = g.iter().map(|r| r.iter().map(|q| q.to_array()).collect()).collect();
            let (nr, nt, np) = rule.orders();
            json_text(&json!({
                "domain": format!("{:?}", a.domain).to_lowercase(),
                "rho": a.rho,
                "orders": [nr, nt, np],
                "indices": labels,
                "matrix": m,
                "max_off_diagonal": off,
                "max_diagonal_deviation": diag,
            }))
        }
    };
    emit(a.output.as_deref(), &text)?;
    let summary = format!("{} elements, max off-diagonal {off:e}, max diagonal deviation {diag:e}", idx.len());
    if a.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(ExitCode::SUCCESS)
}

fn check_singularities(f: &Expr, kind: ExpandKind, rho: f64) -> Result<(), CliError> {
    for p in f.singular_points() {
        let r = p.norm();
        let bad = match kind {
            ExpandKind::Fourier | ExpandKind::Taylor => r <= rho,
            ExpandKind::Laurent => (r - rho).abs() <= 1e-12 * rho,
        };
        if bad {
            let [a, b, c] = p.to_array();
            return Err(CliError::Usage(format!(
                "function spec is singular at ({a}, {b}, {c}), which is not allowed for a {kind:?} expansion with rho {rho}"
            )));
        }
    }
    Ok(())
}

fn truncated(s: &SeriesExpansion, keep: impl Fn(BasisIndex) -> bool) -> Result<SeriesExpansion, CliError> {
    let (lo, hi) = s.truncation();
    let mut t = SeriesExpansion::new(s.kind(), s.family(), lo, hi)?;
    for (i, c) in s.coeffs() {
        if keep(*i) {
            t.set(*i, *c)?;
        }
    }
    Ok(t)
}

/// `(level, residual)` rows for the truncation-error table.
fn truncation_table(
    s: &SeriesExpansion,
    f: &Expr,
    levels: std::ops::RangeInclusive<i32>,
    rule: &QuadratureRule,
) -> Result<Vec<(i32, f64)>, CliError> {
    levels
        .map(|m| {
            let t = truncated(s, |i| i.k().abs() <= m)?;
            Ok((m, l2_residual(&t, f, rule)?))
        })
        .collect()
}

fn write_table(a: &ExpandArgs, rows: &[(i32, f64)]) -> Result<(), CliError> {
    let header = vec!["truncation".to_string(), "l2_residual".to_string()];
    let body: Vec<Vec<String>> = rows.iter().map(|(m, e)| vec![m.to_string(), format!("{e:?}")]).collect();
    let text = csv_text(&header, &body);
    match &a.table {
        Some(p) => emit(Some(p), &text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

pub fn expand(a: &ExpandArgs) -> Result<ExitCode, CliError> {
    check_rho(a.rho)?;
    check_degree(a.n_max)?;
    let f = parse(&a.spec)?;
    if a.kind == ExpandKind::Fourier && a.rho != 1.0 {
        return Err(CliError::Usage("Fourier expansions are taken over the unit ball; --rho does not apply".into()));
    }
    check_singularities(&f, a.kind, a.rho)?;
    let degree = a.n_max.max(MIN_RULE_DEGREE);
    let n = a.n_max as i32;
    let (series, rows) = match a.kind {
        ExpandKind::Fourier | ExpandKind::Taylor => {
            if a.k_min.is_some() || a.k_max.is_some() {
                return Err(CliError::Usage("--k-min and --k-max apply to Laurent expansions".into()));
            }
            let ball = rule(Domain::Ball { radius: a.rho }, degree, &a.orders)?;
            let s = if a.kind == ExpandKind::Fourier {
                fourier_expand(&f, a.n_max, &ball)?
            } else {
                let sphere = rule(Domain::Sphere { radius: a.rho }, degree, &a.orders)?;
                taylor_coeffs_with_rule(&f, a.n_max, &sphere)?
            }
            .to_family(a.family.into());
            let rows = truncation_table(&s, &f, 0..=n, &ball)?;
            (s, rows)
        }
        ExpandKind::Laurent => {
            let (lo, hi) = (a.k_min.unwrap_or(-n), a.k_max.unwrap_or(n));
            if lo > hi {
                return Err(CliError::Usage(format!("--k-min {lo} exceeds --k-max {hi}")));
            }
            let k = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
            check_degree(k)?;
            let sphere = rule(Domain::Sphere { radius: a.rho }, k.max(MIN_RULE_DEGREE), &a.orders)?;
            let variant = laurent_variant(a.family);
            let s = laurent_expand_with_rule(&f, lo, hi, variant, &sphere)?;
            let rows = truncation_table(&s, &f, 0..=k as i32, &sphere)?;
            (s, rows)
        }
    };
    let series = series.pruned(a.prune);
    emit(a.output.as_deref(), &(series.to_json() + "\n"))?;
    write_table(a, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn laurent_variant(f: FamilyArg) -> LaurentVariant {
    match f {
        FamilyArg::Appell => LaurentVariant::Appell,
        FamilyArg::Phi => LaurentVariant::Phi,
    }
}

pub fn laurent(a: &LaurentArgs) -> Result<ExitCode, CliError> {
    if a.k_min > a.k_max {
        return Err(CliError::Usage(format!("--k-min {} exceeds --k-max {}", a.k_min, a.k_max)));
    }
    for &r in &a.rhos {
        check_rho(r)?;
    }
    let k = a.k_min.unsigned_abs().max(a.k_max.unsigned_abs()) as usize;
    check_degree(k)?;
    let f = parse(&a.spec)?;
    for &rho in &a.rhos {
        check_singularities(&f, ExpandKind::Laurent, rho)?;
    }
    let variant = laurent_variant(a.family);
    let mut all = Vec::with_capacity(a.rhos.len());
    for &rho in &a.rhos {
        let sphere = rule(Domain::Sphere { radius: rho }, k.max(MIN_RULE_DEGREE), &a.orders)?;
        all.push(laurent_expand_with_rule(&f, a.k_min, a.k_max, variant, &sphere)?);
    }
    let first = &all[0];
    let spread = all[1..].iter().map(|s| s.max_diff(first)).fold(0.0f64, f64::max);
    let norm = |s: &SeriesExpansion| s.coeffs().values().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let out = match a.part {
        LaurentPart::All => first.clone(),
        LaurentPart::Principal => first.principal_part(),
        LaurentPart::Secondary => first.secondary_part(),
    };
    emit(a.output.as_deref(), &(out.pruned(a.prune).to_json() + "\n"))?;
    eprintln!(
        "principal part l2 {:e}, secondary part l2 {:e}, max coefficient spread over {} radii {spread:e}",
        norm(&first.principal_part()),
        norm(&first.secondary_part()),
        all.len()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn table(a: &TableArgs) -> Result<ExitCode, CliError> {
    check_degree(a.n_max)?;
    let family: BasisFamily = a.family.into();
    let n = a.n_max as i32;
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match a.op {
        TableOp::Derivative | TableOp::Primitive => {
            let mut rows = Vec::new();
            for i in BasisIndex::range(-n, n) {
                let act = if a.op == TableOp::Derivative { basis_derivative(i, family) } else { basis_primitive(i, family) };
                let (target, factor) = match act {
                    Ok(act) => (act.target.map_or("none".to_string(), |t| t.to_string()), format!("{:?}", act.factor)),
                    Err(_) => ("excluded".to_string(), String::new()),
                };
                rows.push(vec![i.to_string(), target, factor]);
            }
            (vec!["index", "target", "factor"], rows)
        }
        TableOp::Norm => {
            let mut rows = Vec::new();
            for deg in 0..=a.n_max {
                for m in 0..=deg + 1 {
                    rows.push(vec![deg.to_string(), m.to_string(), format!("{:?}", solid_norm(deg, m))]);
                }
            }
            (vec!["n", "m", "norm"], rows)
        }
        TableOp::Convert => {
            let rows = BasisIndex::range(-n, n)
                .into_iter()
                .map(|i| {
                    let c = family_convert(i, BasisFamily::AppellA, BasisFamily::OrthonormalPhi);
                    vec![i.to_string(), format!("{c:?}")]
                })
                .collect();
            (vec!["index", "appell_over_phi"], rows)
        }
    };
    let text = match a.format {
        Format::Csv => csv_text(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>(), &rows),
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| {
                            let val = v.parse::<f64>().map(serde_json::Value::from).unwrap_or_else(|_| {
                                if v.is_empty() {
                                    serde_json::Value::Null
                                } else {
                                    serde_json::Value::from(v.clone())
                                }
                            });
                            (h.to_string(), val)
                        })
                        .collect();
                    serde_json::Value::Object(m)
                })
                .collect();
            json_text(&json!({ "op": format!("{:?}", a.op).to_lowercase(), "rows": objs }))
        }
    };
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}
