//! The invariant suite behind `monogenica verify`.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use monogenica::basis::{
    appell_inner, appell_inner_closed, appell_inner_recur, appell_inner_spherical, appell_outer, cauchy_kernel, inner_factor,
    phi_inner, solid_norm, solid_xy, Recurrence, SphericalKind, CLOSED_FORM_MAX_DEGREE,
};
use monogenica::calculus::{basis_derivative, basis_primitive, fd_dbar, fd_hyper_derivative};
use monogenica::quadrature::{gram_matrix, inner_product, Domain, QuadratureRule};
use monogenica::series::{
    cauchy_integral, default_sphere_rule, fourier_expand, fourier_from_taylor, laurent_expand, parseval,
    taylor_coeffs, taylor_coeffs_with_rule, LaurentVariant,
};
use monogenica::{
    eval_basis, BasisElement, BasisFamily, BasisIndex, Field, Point3, Quaternion, SeriesExpansion, SeriesKind,
};

use crate::error::CliError;
use crate::output::{emit, json_text};
use crate::VerifyArgs;

const FD_STEP: f64 = 1e-5;

#[derive(Serialize)]
struct Check {
    name: &'static str,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct Report {
    seed: u64,
    n_max: usize,
    deep: bool,
    passed: bool,
    checks: Vec<Check>,
}

struct Suite {
    rng: ChaCha8Rng,
    n: usize,
    points: usize,
    checks: Vec<Check>,
}

fn rel(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

type Res<T> = Result<T, CliError>;

impl Suite {
    fn record(&mut self, name: &'static str, residual: f64, tolerance: f64) {
        // NaN never passes
        let passed = residual < tolerance;
        self.checks.push(Check { name, residual, tolerance, passed });
    }

    fn q(&mut self) -> Quaternion {
        let mut c = [0.0; 4];
        for v in &mut c {
            *v = self.rng.random_range(-1.0..1.0);
        }
        Quaternion::from_array(c)
    }

    fn point(&mut self, r_min: f64, r_max: f64) -> Point3 {
        loop {
            let p = Point3::new(
                self.rng.random_range(-r_max..r_max),
                self.rng.random_range(-r_max..r_max),
                self.rng.random_range(-r_max..r_max),
            );
            let r = p.norm();
            if r >= r_min && r < r_max {
                return p;
            }
        }
    }

    fn points(&mut self, r_min: f64, r_max: f64) -> Vec<Point3> {
        (0..self.points).map(|_| self.point(r_min, r_max)).collect()
    }

    fn gram_deviation(idx: &[BasisIndex], rule: &QuadratureRule, diag: impl Fn(BasisIndex) -> f64) -> Res<f64> {
        let els: Vec<BasisElement> = idx.iter().map(|i| BasisElement::new(BasisFamily::OrthonormalPhi, *i)).collect();
        let refs: Vec<&dyn Field> = els.iter().map(|e| e as &dyn Field).collect();
        let g = gram_matrix(&refs, rule)?;
        let mut worst = 0.0f64;
        for (a, row) in g.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let want = if a == b { diag(idx[a]) } else { 0.0 };
                worst = worst.max((*v - Quaternion::real(want)).max_abs());
            }
        }
        Ok(worst)
    }

    fn orthonormality(&mut self) -> Res<()> {
        let n = self.n as i32;
        let ball = QuadratureRule::for_degree(Domain::unit_ball(), self.n)?;
        let r = Self::gram_deviation(&BasisIndex::range(0, n), &ball, |_| 1.0)?;
        self.record("orthonormality_ball", r, 1e-10);
        let m = self.n.max(2);
        let ext = QuadratureRule::for_degree(Domain::Exterior { radius: 1.0 }, m)?;
        let r = Self::gram_deviation(&BasisIndex::range(-(m as i32), -2), &ext, |_| 1.0)?;
        self.record("orthonormality_exterior", r, 1e-10);
        let sphere = default_sphere_rule(self.n, 1.0)?;
        let r = Self::gram_deviation(&BasisIndex::range(-n, n), &sphere, |i| (2 * i.k() + 3).abs() as f64)?;
        self.record("sphere_inner_products", r, 1e-9);
        Ok(())
    }

    fn norms(&mut self) -> Res<()> {
        let rule = QuadratureRule::for_degree(Domain::unit_ball(), self.n + 1)?;
        let mut worst = 0.0f64;
        for n in 0..=self.n {
            for m in 0..=n + 1 {
                let kinds: &[SphericalKind] =
                    if m == 0 { &[SphericalKind::X] } else { &[SphericalKind::X, SphericalKind::Y] };
                for &kind in kinds {
                    let f = move |x: Point3| solid_xy(kind, n, m, x);
                    let q = inner_product(&f, &f, &rule)?.a0.sqrt();
                    worst = worst.max((q / solid_norm(n, m) - 1.0).abs());
                }
            }
        }
        self.record("norm_formulas", worst, 1e-10);
        Ok(())
    }

    fn operators(&mut self) -> Res<()> {
        let n = self.n.min(8);
        let pts = self.points(0.3, 1.0);
        let mut worst = 0.0f64;
        for i in BasisIndex::range(0, n as i32) {
            let (d, l) = (i.degree(), i.l());
            let act = basis_derivative(i, BasisFamily::OrthonormalPhi)?;
            for &x in &pts {
                let fd = fd_hyper_derivative(&|y: Point3| phi_inner(d, l, y), x, FD_STEP)?;
                let ex = match act.target {
                    Some(t) => phi_inner(t.degree(), t.l(), x)? * act.factor,
                    None => Quaternion::ZERO,
                };
                // rms of phi_inner(d, .) over the sphere through x keeps zeros of the element from dominating
                let rms = ((2 * d + 3) as f64 / (4.0 * std::f64::consts::PI)).sqrt() * x.norm().powi(d as i32);
                let scale = ex.norm().max(phi_inner(d, l, x)?.norm()).max(rms);
                worst = worst.max((fd - ex).norm() / scale);
            }
        }
        self.record("derivative_factors", worst, 1e-5);

        let phi = BasisFamily::OrthonormalPhi;
        let (mut max, mut comp) = (0.0f64, 0.0f64);
        let k = 2 * self.n as i32 + 4;
        for i in BasisIndex::range(-k, k) {
            let Ok(p) = basis_primitive(i, phi) else { continue };
            if i.is_inner() {
                max = max.max(p.factor.abs());
            }
            let d = basis_derivative(p.target.expect("primitive has a target"), phi)?;
            comp = comp.max((d.factor * p.factor - 1.0).abs());
        }
        let at_origin = basis_primitive(BasisIndex::inner(0, 0)?, phi)?.factor;
        let r = (max - 0.3f64.sqrt()).abs().max((at_origin - max).abs()).max(comp);
        self.record("primitive_norm", r, 1e-14);

        let inner = self.points(0.3, 1.0);
        let outer = self.points(0.5, 1.5);
        let (mut wi, mut wo) = (0.0f64, 0.0f64);
        for d in 0..=n {
            for l in 0..=d {
                for &x in &inner {
                    let fd = fd_hyper_derivative(&|y: Point3| appell_inner(d, l, y), x, FD_STEP)?;
                    let ex = if l < d { appell_inner(d - 1, l, x)? * d as f64 } else { Quaternion::ZERO };
                    let rms = inner_factor(d, l) * ((2 * d + 3) as f64 / (4.0 * std::f64::consts::PI)).sqrt()
                        * x.norm().powi(d as i32);
                    let scale = ex.norm().max(appell_inner(d, l, x)?.norm()).max(rms);
                    wi = wi.max((fd - ex).norm() / scale);
                }
                for &x in &outer {
                    let fd = fd_hyper_derivative(&|y: Point3| appell_outer(d, l, y), x, FD_STEP)?;
                    wo = wo.max(rel(fd, appell_outer(d + 1, l, x)? * -((d + 2) as f64)));
                }
            }
        }
        self.record("appell_property_inner", wi, 1e-5);
        self.record("appell_property_outer", wo, 1e-5);

        let mut worst = 0.0f64;
        for i in BasisIndex::range(-(n as i32) - 2, n as i32) {
            let f = |y: Point3| eval_basis(phi, i, y);
            for &x in if i.is_inner() { &inner } else { &outer } {
                let scale = f(x)?.norm() / x.norm() + 1.0;
                worst = worst.max(fd_dbar(&f, x, FD_STEP)?.norm() / scale);
            }
        }
        self.record("monogenicity", worst, 1e-6);
        Ok(())
    }

    fn paths(&mut self, deep: bool) -> Res<()> {
        let n = self.n.min(CLOSED_FORM_MAX_DEGREE);
        let pts = self.points(0.0, 1.0);
        let mut worst = 0.0f64;
        for &x in &pts {
            for d in 0..=n {
                for l in 0..=d {
                    let c = appell_inner_closed(d, l, x)?;
                    let two = appell_inner_recur(d, l, x, Recurrence::TwoStep)?;
                    let one = appell_inner_recur(d, l, x, Recurrence::OneStep)?;
                    let s = appell_inner_spherical(d, l, x)?;
                    worst = worst.max(rel(c, two)).max(rel(c, one)).max(rel(c, s));
                }
            }
        }
        self.record("triple_path", worst, 1e-11);
        if deep {
            let mut worst = 0.0f64;
            for &x in pts.iter().take(10) {
                for d in (CLOSED_FORM_MAX_DEGREE + 1..=monogenica::MAX_DEGREE).step_by(7) {
                    for l in [0, d / 3, d / 2, d - 1, d] {
                        let a = appell_inner(d, l, x)?;
                        worst = worst
                            .max(rel(a, appell_inner_recur(d, l, x, Recurrence::OneStep)?))
                            .max(rel(a, appell_inner_spherical(d, l, x)?));
                    }
                }
            }
            self.record("high_degree_paths", worst, 1e-10);
        }
        Ok(())
    }

    fn cauchy(&mut self) -> Res<()> {
        let rule = default_sphere_rule(24, 1.0)?;
        let inside = self.points(0.0, 0.6);
        let outside = self.points(1.6, 2.5);
        let (mut wi, mut wo) = (0.0f64, 0.0f64);
        for d in 0..=self.n.min(4) {
            for l in 0..=d {
                let f = move |y: Point3| appell_inner(d, l, y);
                for &x in &inside {
                    wi = wi.max((cauchy_integral(&f, x, &rule)? - f(x)?).max_abs());
                }
                for &x in &outside {
                    wo = wo.max(cauchy_integral(&f, x, &rule)?.max_abs());
                }
            }
        }
        self.record("cauchy_inside", wi, 1e-8);
        self.record("cauchy_outside", wo, 1e-8);
        Ok(())
    }

    fn series(&mut self) -> Res<()> {
        let n = self.n as i32;
        // Appell coefficients spread over many orders of magnitude at high degree, so that
        // family is checked up to degree 8 and the orthonormal one over the full range
        let na = n.min(8);
        let terms: Vec<_> = BasisIndex::range(-na, na).into_iter().map(|i| (i, self.q())).collect();
        let s = SeriesExpansion::from_terms(SeriesKind::Laurent, BasisFamily::AppellA, terms)?;
        let terms: Vec<_> = BasisIndex::range(-n, n).into_iter().map(|i| (i, self.q())).collect();
        let sp = SeriesExpansion::from_terms(SeriesKind::Laurent, BasisFamily::OrthonormalPhi, terms)?;
        let mut rt = 0.0f64;
        for rho in [0.8, 1.0, 1.25] {
            rt = rt.max(laurent_expand(&s, rho, -na, na, LaurentVariant::Appell)?.max_diff(&s));
            rt = rt.max(laurent_expand(&sp, rho, -n, n, LaurentVariant::Phi)?.max_diff(&sp));
        }
        self.record("laurent_roundtrip", rt, 1e-8);

        let f = |x: Point3| cauchy_kernel(x - Point3::new(0.0, 0.0, 1.5));
        let fine = |rho| default_sphere_rule(40, rho);
        let l = monogenica::series::laurent_expand_with_rule(&f, -n, n, LaurentVariant::Appell, &fine(1.0)?)?;
        let t = taylor_coeffs_with_rule(&f, self.n, &fine(0.7)?)?;
        let sec = l.secondary_part();
        let r = t.coeffs().iter().map(|(i, c)| (sec.get(*i) - *c).max_abs()).fold(0.0f64, f64::max);
        self.record("secondary_part_is_taylor", r, 1e-9);

        let ball = QuadratureRule::for_degree(Domain::unit_ball(), self.n)?;
        let (mut route, mut pars) = (0.0f64, 0.0f64);
        for _ in 0..10 {
            let terms: Vec<_> = BasisIndex::range(0, n).into_iter().map(|i| (i, self.q())).collect();
            let f = SeriesExpansion::from_terms(SeriesKind::Taylor, BasisFamily::AppellA, terms)?;
            let a = fourier_expand(&f, self.n, &ball)?;
            route = route.max(a.max_diff(&fourier_from_taylor(&taylor_coeffs(&f, self.n, 1.0)?)?));
            let (lhs, rhs) = parseval(&a, &f, &ball)?;
            pars = pars.max((lhs - rhs).abs() / rhs.max(1.0));
        }
        self.record("fourier_taylor_routes", route, 1e-8);
        self.record("parseval", pars, 1e-9);

        let text = s.to_json();
        let back = SeriesExpansion::from_json(&text)?;
        let exact = back.to_json() == text
            && s.coeffs().iter().zip(back.coeffs()).all(|((i, a), (j, b))| {
                i == j && a.to_array().iter().zip(b.to_array()).all(|(u, v)| u.to_bits() == v.to_bits())
            });
        self.record("json_roundtrip", if exact { 0.0 } else { 1.0 }, 0.5);
        Ok(())
    }
}

pub fn run(a: &VerifyArgs) -> Result<ExitCode, CliError> {
    if a.n_max > monogenica::MAX_DEGREE {
        return Err(CliError::Usage(format!("--n-max {} exceeds {}", a.n_max, monogenica::MAX_DEGREE)));
    }
    let mut suite = Suite {
        rng: ChaCha8Rng::seed_from_u64(a.seed),
        n: a.n_max,
        points: if a.deep { 100 } else { 20 },
        checks: Vec::new(),
    };
    suite.orthonormality()?;
    suite.norms()?;
    suite.operators()?;
    suite.paths(a.deep)?;
    suite.cauchy()?;
    suite.series()?;
    let passed = suite.checks.iter().all(|c| c.passed);
    let report = Report { seed: a.seed, n_max: a.n_max, deep: a.deep, passed, checks: suite.checks };
    emit(a.output.as_deref(), &json_text(&report))?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        eprintln!("all {} checks passed", report.checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failed: {}", failed.join(", "));
        Ok(ExitCode::from(1))
    }
}
