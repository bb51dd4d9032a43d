//! Fourier, Taylor and Laurent expansions in the monogenic bases.

mod json;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{eval_basis, family_convert, BasisElement, BasisFamily, BasisIndex};
use crate::calculus::{basis_derivative, basis_primitive, OperatorAction};
use crate::error::{MonogenicError, Result};
use crate::field::Field;
use crate::quadrature::{default_orders, pairwise_sum, Domain, QuadratureRule};
use crate::quaternion::{Point3, Quaternion};

pub use json::{SeriesDocument, SeriesEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Fourier,
    Taylor,
    Laurent,
}

/// Which coefficients [`laurent_expand`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LaurentVariant {
    /// `γ_{k,l}` against the Appell basis.
    #[default]
    Appell,
    /// `γ*_{k,l}` against the orthonormal basis.
    Phi,
}

/// Finite expansion `Σ B_idx(x) · c_idx` with coefficients acting from the right.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesExpansion {
    kind: SeriesKind,
    family: BasisFamily,
    coeffs: BTreeMap<BasisIndex, Quaternion>,
    truncation: (i32, i32),
}

impl SeriesExpansion {
    /// Empty series admitting `k_min <= k <= k_max`.
    pub fn new(kind: SeriesKind, family: BasisFamily, k_min: i32, k_max: i32) -> Result<Self> {
        if k_min > k_max {
            return Err(MonogenicError::InvalidSeries(format!("empty range {k_min}..={k_max}")));
        }
        if kind != SeriesKind::Laurent && k_min < 0 {
            return Err(MonogenicError::InvalidSeries(format!("{kind:?} series needs k >= 0")));
        }
        Ok(Self { kind, family, coeffs: BTreeMap::new(), truncation: (k_min, k_max) })
    }

    /// Build from `(index, coefficient)` pairs; the range is taken from the indices.
    pub fn from_terms<I>(kind: SeriesKind, family: BasisFamily, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisIndex, Quaternion)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let lo = match kind {
            SeriesKind::Laurent => terms.iter().map(|(i, _)| i.k()).min().unwrap_or(0),
            _ => 0,
        };
        let hi = terms.iter().map(|(i, _)| i.k()).max().unwrap_or(0).max(lo);
        let mut s = Self::new(kind, family, lo, hi)?;
        for (i, c) in terms {
            s.add(i, c)?;
        }
        Ok(s)
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn truncation(&self) -> (i32, i32) {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<BasisIndex, Quaternion> {
        &self.coeffs
    }

    /// Coefficient at `idx`, zero when absent.
    pub fn get(&self, idx: BasisIndex) -> Quaternion {
        self.coeffs.get(&idx).copied().unwrap_or(Quaternion::ZERO)
    }

    fn check_index(&self, idx: BasisIndex) -> Result<()> {
        let (lo, hi) = self.truncation;
        if idx.k() < lo || idx.k() > hi {
            return Err(MonogenicError::InvalidSeries(format!("index {idx} outside {lo}..={hi}")));
        }
        Ok(())
    }

    /// Set the coefficient at `idx`.
    pub fn set(&mut self, idx: BasisIndex, c: Quaternion) -> Result<()> {
        self.check_index(idx)?;
        self.coeffs.insert(idx, c);
        Ok(())
    }

    /// Add to the coefficient at `idx`.
    pub fn add(&mut self, idx: BasisIndex, c: Quaternion) -> Result<()> {
        self.check_index(idx)?;
        *self.coeffs.entry(idx).or_insert(Quaternion::ZERO) += c;
        Ok(())
    }

    /// Drop coefficients with all components `<= tol` in magnitude.
    pub fn pruned(&self, tol: f64) -> Self {
        let mut s = self.clone();
        s.coeffs.retain(|_, c| c.max_abs() > tol);
        s
    }

    /// Terms with `k >= 0`.
    pub fn secondary_part(&self) -> Self {
        let mut s = self.clone();
        s.coeffs.retain(|i, _| i.k() >= 0);
        s
    }

    /// Terms with `k < 0`.
    pub fn principal_part(&self) -> Self {
        let mut s = self.clone();
        s.coeffs.retain(|i, _| i.k() < 0);
        s
    }

    /// Same function in the other family: `c_to = λ c_from` with `B_from = λ B_to`.
    pub fn to_family(&self, family: BasisFamily) -> Self {
        let mut s = self.clone();
        s.family = family;
        for (i, c) in s.coeffs.iter_mut() {
            *c *= family_convert(*i, self.family, family);
        }
        s
    }

    /// Terms in evaluation order: `|k|`, then `k`, then `l`.
    pub fn ordered_terms(&self) -> Vec<(BasisIndex, Quaternion)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(i, c)| (*i, *c)).collect();
        v.sort_by_key(|(i, _)| (i.k().unsigned_abs(), i.k(), i.l()));
        v
    }

    /// Largest coefficient difference over the union of indices.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<BasisIndex> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.iter().map(|i| (self.get(*i) - other.get(*i)).max_abs()).fold(0.0, f64::max)
    }
}

impl Field for SeriesExpansion {
    fn eval(&self, x: Point3) -> Result<Quaternion> {
        evaluate(self, x)
    }
}

/// `Σ B_idx(x) · c_idx`.
pub fn evaluate(series: &SeriesExpansion, x: Point3) -> Result<Quaternion> {
    let mut acc = Quaternion::ZERO;
    for (i, c) in series.ordered_terms() {
        acc += eval_basis(series.family, i, x)? * c;
    }
    Ok(acc)
}

fn shifted_truncation((lo, hi): (i32, i32), by: i32) -> (i32, i32) {
    if by < 0 {
        let d = |k: i32| if k == 0 { 0 } else { k - 1 };
        (d(lo), d(hi))
    } else {
        (if lo >= 0 { lo } else { lo + 1 }, hi + 1)
    }
}

fn apply<F>(series: &SeriesExpansion, by: i32, op: F) -> Result<SeriesExpansion>
where
    F: Fn(BasisIndex, BasisFamily) -> Result<OperatorAction>,
{
    let (lo, hi) = shifted_truncation(series.truncation, by);
    let mut out = SeriesExpansion::new(series.kind, series.family, lo, hi)?;
    for (i, c) in &series.coeffs {
        let act = op(*i, series.family)?;
        if let Some(t) = act.target {
            out.add(t, *c * act.factor)?;
        }
    }
    Ok(out)
}

/// Termwise `∂₀`; monogenic constants drop out.
pub fn derive_series(series: &SeriesExpansion) -> Result<SeriesExpansion> {
    apply(series, -1, basis_derivative)
}

/// Termwise primitive `P_H`.
pub fn primitive_series(series: &SeriesExpansion) -> Result<SeriesExpansion> {
    apply(series, 1, basis_primitive)
}

/// `⟨B_i, f⟩` for every element, with `f` evaluated once per node.
fn projections(elements: &[BasisElement], f: &dyn Field, rule: &QuadratureRule) -> Result<Vec<Quaternion>> {
    let fv = rule.values(f)?;
    let w = rule.weights();
    elements
        .par_iter()
        .map(|e| {
            let terms: Vec<Quaternion> = rule
                .nodes()
                .iter()
                .zip(&fv)
                .zip(w)
                .map(|((&x, fx), w)| Ok(e.eval(x)?.conj() * *fx * *w))
                .collect::<Result<_>>()?;
            Ok(pairwise_sum(&terms))
        })
        .collect()
}

/// Fourier coefficients `α_{n,l} = ⟨φ_n^l, f⟩` over a ball rule, `n <= n_max`.
pub fn fourier_expand<F: Field>(f: &F, n_max: usize, rule: &QuadratureRule) -> Result<SeriesExpansion> {
    if !matches!(rule.domain(), Domain::Ball { .. }) {
        return Err(MonogenicError::InvalidRule("Fourier expansion needs a ball rule".into()));
    }
    let idx = BasisIndex::range(0, n_max as i32);
    let els: Vec<BasisElement> = idx.iter().map(|i| BasisElement::new(BasisFamily::OrthonormalPhi, *i)).collect();
    let c = projections(&els, f, rule)?;
    let mut s = SeriesExpansion::new(SeriesKind::Fourier, BasisFamily::OrthonormalPhi, 0, n_max as i32)?;
    for (i, c) in idx.into_iter().zip(c) {
        s.set(i, c)?;
    }
    Ok(s)
}

/// Sphere rule used when none is supplied: default orders for degree `2 n_max + 8`.
pub fn default_sphere_rule(n_max: usize, rho: f64) -> Result<QuadratureRule> {
    let (_, t, p) = default_orders(2 * n_max + 8);
    QuadratureRule::new(Domain::Sphere { radius: rho }, 1, t, p)
}

/// Appell element dual to `idx` in the Laurent/Taylor coefficient integrals:
/// `A_{-(k+2)}^l`.
fn dual_element(idx: BasisIndex) -> Result<BasisElement> {
    Ok(BasisElement::new(BasisFamily::AppellA, BasisIndex::new(-idx.k() - 2, idx.l() as u32)?))
}

fn laurent_raw(f: &dyn Field, idx: &[BasisIndex], rule: &QuadratureRule) -> Result<Vec<Quaternion>> {
    let duals: Vec<BasisElement> = idx.iter().map(|i| dual_element(*i)).collect::<Result<_>>()?;
    let refs: Vec<&dyn Field> = duals.iter().map(|d| d as &dyn Field).collect();
    let ints = crate::quadrature::surface_integrals_with_elements(&refs, f, rule)?;
    Ok(idx
        .iter()
        .zip(ints)
        .map(|(i, v)| {
            let scale = (i.k() + 1).unsigned_abs() as f64 / (4f64.powi(i.l() as i32 + 1) * std::f64::consts::PI);
            v * scale
        })
        .collect())
}

/// Taylor coefficients `t_{n,l} = (n+1)/(4^{l+1} π) ∫ conj(A_{-(n+2)}^l(ȳ)) (y/|y|) f(y) dσ`.
pub fn taylor_coeffs_with_rule<F: Field>(f: &F, n_max: usize, rule: &QuadratureRule) -> Result<SeriesExpansion> {
    let idx = BasisIndex::range(0, n_max as i32);
    let c = laurent_raw(f, &idx, rule)?;
    let mut s = SeriesExpansion::new(SeriesKind::Taylor, BasisFamily::AppellA, 0, n_max as i32)?;
    for (i, c) in idx.into_iter().zip(c) {
        s.set(i, c)?;
    }
    Ok(s)
}

/// [`taylor_coeffs_with_rule`] on the `ρ`-sphere with [`default_sphere_rule`].
pub fn taylor_coeffs<F: Field>(f: &F, n_max: usize, rho: f64) -> Result<SeriesExpansion> {
    taylor_coeffs_with_rule(f, n_max, &default_sphere_rule(n_max, rho)?)
}

/// `α = c · t` with `A = c φ`.
pub fn fourier_from_taylor(t: &SeriesExpansion) -> Result<SeriesExpansion> {
    if t.family != BasisFamily::AppellA || t.kind != SeriesKind::Taylor {
        return Err(MonogenicError::InvalidSeries("expected an Appell-family Taylor series".into()));
    }
    let mut s = t.to_family(BasisFamily::OrthonormalPhi);
    s.kind = SeriesKind::Fourier;
    Ok(s)
}

/// Inverse of [`fourier_from_taylor`].
pub fn taylor_from_fourier(a: &SeriesExpansion) -> Result<SeriesExpansion> {
    if a.family != BasisFamily::OrthonormalPhi || a.kind != SeriesKind::Fourier {
        return Err(MonogenicError::InvalidSeries("expected an orthonormal Fourier series".into()));
    }
    let mut s = a.to_family(BasisFamily::AppellA);
    s.kind = SeriesKind::Taylor;
    Ok(s)
}

/// Laurent coefficients for `k_min <= k <= k_max`, `k != -1`, from integrals over
/// the sphere of the given rule.
///
/// `Appell`: `γ_{k,l} = |k+1|/(4^{l+1} π) ∫ conj(A_{-(k+2)}^l(ȳ)) (y/|y|) f(y) dσ`.
/// `Phi`: `γ*_{k,l} = ∫ conj(φ_k^l) f dσ / (|2k+3| ρ^{2k+2})`.
pub fn laurent_expand_with_rule<F: Field>(
    f: &F,
    k_min: i32,
    k_max: i32,
    variant: LaurentVariant,
    rule: &QuadratureRule,
) -> Result<SeriesExpansion> {
    let rho = match rule.domain() {
        Domain::Sphere { radius } => radius,
        d => return Err(MonogenicError::InvalidRule(format!("sphere rule required, got {d:?}"))),
    };
    let idx = BasisIndex::range(k_min, k_max);
    let (family, c) = match variant {
        LaurentVariant::Appell => (BasisFamily::AppellA, laurent_raw(f, &idx, rule)?),
        LaurentVariant::Phi => {
            let els: Vec<BasisElement> =
                idx.iter().map(|i| BasisElement::new(BasisFamily::OrthonormalPhi, *i)).collect();
            let raw = projections(&els, f, rule)?;
            let c = idx
                .iter()
                .zip(raw)
                .map(|(i, v)| v / ((2 * i.k() + 3).unsigned_abs() as f64 * rho.powi(2 * i.k() + 2)))
                .collect();
            (BasisFamily::OrthonormalPhi, c)
        }
    };
    let mut s = SeriesExpansion::new(SeriesKind::Laurent, family, k_min, k_max)?;
    for (i, c) in idx.into_iter().zip(c) {
        s.set(i, c)?;
    }
    Ok(s)
}

/// [`laurent_expand_with_rule`] on the `ρ`-sphere with [`default_sphere_rule`]
/// sized for `max(|k_min|, |k_max|)`.
pub fn laurent_expand<F: Field>(
    f: &F,
    rho: f64,
    k_min: i32,
    k_max: i32,
    variant: LaurentVariant,
) -> Result<SeriesExpansion> {
    let n = k_min.unsigned_abs().max(k_max.unsigned_abs()) as usize;
    laurent_expand_with_rule(f, k_min, k_max, variant, &default_sphere_rule(n, rho)?)
}

/// `∫ E2(y - x) (y/|y|) f(y) dσ` over the sphere of the rule: `f(x)` inside, `0` outside.
pub fn cauchy_integral<F: Field>(f: &F, x: Point3, rule: &QuadratureRule) -> Result<Quaternion> {
    match rule.domain() {
        Domain::Sphere { radius } => {
            if (x.norm() - radius).abs() <= 1e-12 * radius {
                return Err(MonogenicError::PointOnSphere);
            }
        }
        d => return Err(MonogenicError::InvalidRule(format!("sphere rule required, got {d:?}"))),
    }
    rule.sum_with(|_, y| {
        let k = crate::basis::cauchy_kernel(y - x)?;
        Ok(k * (y.quat() / y.norm()) * f.eval(y)?)
    })
}

/// `(Σ |α|², Sc ⟨f, f⟩)` over a ball rule.
pub fn parseval<F: Field>(series: &SeriesExpansion, f: &F, rule: &QuadratureRule) -> Result<(f64, f64)> {
    let lhs = series.coeffs.values().map(|c| c.norm_sqr()).sum();
    let rhs = rule.sum_with(|_, x| Ok(Quaternion::real(f.eval(x)?.norm_sqr())))?.a0;
    Ok((lhs, rhs))
}

/// `‖f - S‖` in L² of the rule's domain.
pub fn l2_residual<F: Field>(series: &SeriesExpansion, f: &F, rule: &QuadratureRule) -> Result<f64> {
    let v = rule.sum_with(|_, x| Ok(Quaternion::real((f.eval(x)? - evaluate(series, x)?).norm_sqr())))?;
    Ok(v.a0.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{appell_inner, appell_outer, family_convert};
    use crate::calculus::fd_hyper_derivative;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn idx(k: i32, l: u32) -> BasisIndex {
        BasisIndex::new(k, l).unwrap()
    }

    fn ball(n: usize) -> QuadratureRule {
        QuadratureRule::for_degree(Domain::unit_ball(), n).unwrap()
    }

    fn rand_q(rng: &mut ChaCha8Rng) -> Quaternion {
        Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    }

    fn rand_ball_point(rng: &mut ChaCha8Rng, r: f64) -> Point3 {
        loop {
            let p = Point3::new(rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r));
            if p.norm() < r {
                return p;
            }
        }
    }

    fn single(kind: SeriesKind, family: BasisFamily, i: BasisIndex, c: Quaternion) -> SeriesExpansion {
        SeriesExpansion::from_terms(kind, family, [(i, c)]).unwrap()
    }

    fn others_below(s: &SeriesExpansion, keep: &[BasisIndex], tol: f64) {
        for (i, c) in s.coeffs() {
            if !keep.contains(i) {
                assert!(c.max_abs() < tol, "{i}: {c}");
            }
        }
    }

    #[test]
    fn fourier_examples() {
        let rule = ball(4);
        let c = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        let f = |x: Point3| Ok(crate::basis::phi_inner(2, 1, x)? * c);
        let s = fourier_expand(&f, 4, &rule).unwrap();
        assert!((s.get(idx(2, 1)) - c).max_abs() < 1e-10);
        others_below(&s, &[idx(2, 1)], 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let x = rand_ball_point(&mut rng, 1.0);
            assert!((evaluate(&s, x).unwrap() - f(x).unwrap()).max_abs() < 1e-9);
        }

        let s = fourier_expand(&|x: Point3| appell_inner(1, 0, x), 3, &rule).unwrap();
        let want = 2.0 * (std::f64::consts::PI / 10.0).sqrt();
        assert!((s.get(idx(1, 0)) - Quaternion::real(want)).max_abs() < 1e-10);

        let s = fourier_expand(&|_| Ok(Quaternion::ZERO), 3, &rule).unwrap();
        assert!(s.coeffs().values().all(|c| c.max_abs() == 0.0));
        assert!(fourier_expand(&|_| Ok(Quaternion::ONE), 2, &default_sphere_rule(2, 1.0).unwrap()).is_err());
    }

    #[test]
    fn empty_series_is_zero() {
        let s = SeriesExpansion::new(SeriesKind::Laurent, BasisFamily::AppellA, -4, 4).unwrap();
        assert_eq!(evaluate(&s, Point3::new(0.3, 0.2, 0.1)).unwrap(), Quaternion::ZERO);
    }

    #[test]
    fn derivative_series() {
        let phi = BasisFamily::OrthonormalPhi;
        let s = single(SeriesKind::Fourier, phi, idx(2, 0), Quaternion::ONE);
        let d = derive_series(&s).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.get(idx(1, 0)).a0 - (42.0f64 / 5.0).sqrt()).abs() < 1e-14);

        let s = single(SeriesKind::Fourier, phi, idx(3, 3), Quaternion::ONE);
        assert!(derive_series(&s).unwrap().is_empty());

        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let terms: Vec<_> = BasisIndex::range(0, 5).into_iter().map(|i| (i, rand_q(&mut rng))).collect();
        let s = SeriesExpansion::from_terms(SeriesKind::Fourier, phi, terms).unwrap();
        let d = derive_series(&s).unwrap();
        for _ in 0..10 {
            let x = rand_ball_point(&mut rng, 0.9);
            let fd = fd_hyper_derivative(&s, x, 1e-5).unwrap();
            let ex = evaluate(&d, x).unwrap();
            assert!((fd - ex).norm() < 1e-5 * ex.norm().max(1.0));
        }
    }

    #[test]
    fn primitive_series_examples() {
        let phi = BasisFamily::OrthonormalPhi;
        let s = single(SeriesKind::Fourier, phi, idx(0, 0), Quaternion::ONE);
        let p = primitive_series(&s).unwrap();
        assert!((p.get(idx(1, 0)).a0 - 0.3f64.sqrt()).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let terms: Vec<_> = BasisIndex::range(0, 6).into_iter().map(|i| (i, rand_q(&mut rng))).collect();
            let s = SeriesExpansion::from_terms(SeriesKind::Fourier, phi, terms).unwrap();
            let p = primitive_series(&s).unwrap();
            for (i, c) in p.coeffs() {
                if i.is_diagonal() {
                    assert_eq!(*c, Quaternion::ZERO);
                }
            }
            let back = derive_series(&p).unwrap();
            for (i, c) in s.coeffs() {
                assert!((back.get(*i) - *c).max_abs() < 1e-14);
            }
        }
    }

    #[test]
    fn derived_singletons_are_orthogonal() {
        let rule = ball(6);
        let phi = BasisFamily::OrthonormalPhi;
        let ds: Vec<SeriesExpansion> = BasisIndex::range(1, 5)
            .into_iter()
            .filter(|i| !i.is_diagonal())
            .map(|i| derive_series(&single(SeriesKind::Fourier, phi, i, Quaternion::ONE)).unwrap())
            .collect();
        let refs: Vec<&dyn Field> = ds.iter().map(|s| s as &dyn Field).collect();
        let g = crate::quadrature::gram_matrix(&refs, &rule).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    assert!(v.max_abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn taylor_examples() {
        let s = taylor_coeffs(&|x: Point3| appell_inner(2, 1, x), 4, 1.0).unwrap();
        assert!((s.get(idx(2, 1)) - Quaternion::ONE).max_abs() < 1e-9);
        others_below(&s, &[idx(2, 1)], 1e-9);

        let c = Quaternion::new(0.5, -1.0, 2.0, 0.25);
        let s = taylor_coeffs(&|_| Ok(c), 3, 0.7).unwrap();
        assert!((s.get(idx(0, 0)) - c).max_abs() < 1e-9);
        others_below(&s, &[idx(0, 0)], 1e-9);

        let f = |x: Point3| Ok(appell_inner(1, 0, x)? + appell_inner(3, 3, x)? * Quaternion::E1);
        let s = taylor_coeffs(&f, 4, 1.0).unwrap();
        assert!((s.get(idx(1, 0)) - Quaternion::ONE).max_abs() < 1e-9);
        assert!((s.get(idx(3, 3)) - Quaternion::E1).max_abs() < 1e-9);
        others_below(&s, &[idx(1, 0), idx(3, 3)], 1e-9);
    }

    #[test]
    fn fourier_taylor_link() {
        let t = single(SeriesKind::Taylor, BasisFamily::AppellA, idx(0, 0), Quaternion::ONE);
        let a = fourier_from_taylor(&t).unwrap();
        assert!((a.get(idx(0, 0)).a0 - 2.0 * (std::f64::consts::PI / 3.0).sqrt()).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let terms: Vec<_> = BasisIndex::range(0, 6).into_iter().map(|i| (i, rand_q(&mut rng))).collect();
        let t = SeriesExpansion::from_terms(SeriesKind::Taylor, BasisFamily::AppellA, terms).unwrap();
        let back = taylor_from_fourier(&fourier_from_taylor(&t).unwrap()).unwrap();
        assert!(back.max_diff(&t) < 1e-14);
        assert!(fourier_from_taylor(&fourier_from_taylor(&t).unwrap()).is_err());

        let f = |x: Point3| Ok(appell_inner(2, 0, x)? + appell_inner(2, 2, x)? * Quaternion::E3);
        let a = fourier_expand(&f, 4, &ball(4)).unwrap();
        let b = fourier_from_taylor(&taylor_coeffs(&f, 4, 1.0).unwrap()).unwrap();
        assert!(a.max_diff(&b) < 1e-8);
    }

    #[test]
    fn laurent_examples() {
        let s = laurent_expand(&|x: Point3| appell_outer(0, 0, x), 1.0, -6, 6, LaurentVariant::Appell).unwrap();
        assert!((s.get(idx(-2, 0)) - Quaternion::ONE).max_abs() < 1e-8);
        others_below(&s, &[idx(-2, 0)], 1e-8);
        let x = Point3::new(0.0, 0.8, 0.0);
        assert!((evaluate(&s, x).unwrap() - appell_outer(0, 0, x).unwrap()).max_abs() < 1e-8);

        let f = |x: Point3| Ok(appell_inner(1, 0, x)? + appell_outer(1, 1, x)? * Quaternion::E1);
        let s = laurent_expand(&f, 1.0, -5, 5, LaurentVariant::Appell).unwrap();
        assert!((s.get(idx(1, 0)) - Quaternion::ONE).max_abs() < 1e-8);
        assert!((s.get(idx(-3, 1)) - Quaternion::E1).max_abs() < 1e-8);
        others_below(&s, &[idx(1, 0), idx(-3, 1)], 1e-8);

        // the orthonormal variant carries the family conversion factors
        let sp = laurent_expand(&f, 1.0, -5, 5, LaurentVariant::Phi).unwrap();
        for (i, c) in s.coeffs() {
            let conv = *c * family_convert(*i, BasisFamily::AppellA, BasisFamily::OrthonormalPhi);
            assert!((sp.get(*i) - conv).max_abs() < 1e-12, "{i}");
        }
    }

    #[test]
    fn secondary_part_is_taylor() {
        let f = |x: Point3| crate::basis::cauchy_kernel(x - Point3::new(0.0, 0.0, 1.5)).map(|q| q * 4.0);
        let l = laurent_expand(&f, 1.0, -8, 8, LaurentVariant::Appell).unwrap();
        let t = taylor_coeffs(&f, 8, 1.0).unwrap();
        for (i, c) in l.principal_part().coeffs() {
            assert!(c.max_abs() < 1e-9, "{i}");
        }
        for (i, c) in t.coeffs() {
            assert!((l.get(*i) - *c).max_abs() < 1e-9, "{i}");
        }
    }

    #[test]
    fn laurent_roundtrip_and_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let terms: Vec<_> = BasisIndex::range(-6, 6).into_iter().map(|i| (i, rand_q(&mut rng))).collect();
        let s = SeriesExpansion::from_terms(SeriesKind::Laurent, BasisFamily::AppellA, terms).unwrap();
        for rho in [0.8, 1.0, 1.25] {
            let got = laurent_expand(&s, rho, -6, 6, LaurentVariant::Appell).unwrap();
            assert!(got.max_diff(&s) < 1e-8, "rho={rho} diff={}", got.max_diff(&s));
        }
    }

    #[test]
    fn cauchy_formula() {
        let rule = default_sphere_rule(4, 1.0).unwrap();
        let f = |x: Point3| appell_inner(2, 1, x);
        let x = Point3::new(0.2, 0.1, -0.3);
        assert!((cauchy_integral(&f, x, &rule).unwrap() - f(x).unwrap()).max_abs() < 1e-8);
        assert!(cauchy_integral(&f, Point3::new(2.0, 0.0, 0.0), &rule).unwrap().max_abs() < 1e-8);
        let one = cauchy_integral(&|_| Ok(Quaternion::ONE), Point3::new(-0.1, 0.3, 0.2), &rule).unwrap();
        assert!((one - Quaternion::ONE).max_abs() < 1e-8);
        assert_eq!(cauchy_integral(&f, Point3::new(0.0, 1.0, 0.0), &rule), Err(MonogenicError::PointOnSphere));
    }

    #[test]
    fn parseval_examples() {
        let rule = ball(4);
        let f = |x: Point3| Ok(crate::basis::phi_inner(1, 0, x)? * Quaternion::E3 * 2.0);
        let s = fourier_expand(&f, 4, &rule).unwrap();
        let (l, r) = parseval(&s, &f, &rule).unwrap();
        assert!((l - 4.0).abs() < 1e-10 && (r - 4.0).abs() < 1e-10);

        let z = |_: Point3| Ok(Quaternion::ZERO);
        let s = fourier_expand(&z, 2, &rule).unwrap();
        assert_eq!(parseval(&s, &z, &rule).unwrap(), (0.0, 0.0));

        let f = |x: Point3| appell_inner(2, 0, x);
        let s = fourier_expand(&f, 4, &rule).unwrap();
        let (l, r) = parseval(&s, &f, &rule).unwrap();
        let c = family_convert(idx(2, 0), BasisFamily::AppellA, BasisFamily::OrthonormalPhi);
        assert!((l - c * c).abs() < 1e-9 && (r - c * c).abs() < 1e-9);
    }

    #[test]
    fn truncation_error_decays() {
        let f = |x: Point3| crate::basis::cauchy_kernel(x - Point3::new(0.0, 0.0, 1.5));
        let rule = ball(24);
        let full = fourier_expand(&f, 10, &rule).unwrap();
        let mut prev = f64::INFINITY;
        for n in 2..=10 {
            let cut = SeriesExpansion::from_terms(
                SeriesKind::Fourier,
                BasisFamily::OrthonormalPhi,
                full.coeffs().iter().filter(|(i, _)| i.k() <= n).map(|(i, c)| (*i, *c)),
            )
            .unwrap();
            let e = l2_residual(&cut, &f, &rule).unwrap();
            assert!(e < prev, "n={n} {e} {prev}");
            prev = e;
        }
    }
}
