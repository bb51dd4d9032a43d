//! Product quadrature on balls, spheres, shells and ball exteriors, and the
//! H-valued inner products built on it.
//!
//! Radial rules: Gauss-Jacobi `(0, 2)` on the ball (the `r²` weight is part
//! of the rule), Gauss-Legendre times `r²` on shells, and Gauss-Legendre in
//! `s = ρ/r` on the exterior of a ball. Angular: Gauss-Legendre in `cos θ`,
//! uniform trapezoid in `φ`. Node values are computed in parallel and summed
//! pairwise in a fixed order, so results do not depend on the thread count.

use rayon::prelude::*;

use crate::special::factorial_ratio;
use crate::error::{MonogenicError, Result};
use crate::field::Field;
use crate::quaternion::{Point3, Quaternion};

/// Integration domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// `|x| < radius`.
    Ball { radius: f64 },
    /// `|x| = radius`, surface measure.
    Sphere { radius: f64 },
    /// `r_in < |x| < r_out`.
    Shell { r_in: f64, r_out: f64 },
    /// `|x| > radius`.
    Exterior { radius: f64 },
}

impl Domain {
    pub fn unit_ball() -> Self {
        Domain::Ball { radius: 1.0 }
    }

    pub fn unit_sphere() -> Self {
        Domain::Sphere { radius: 1.0 }
    }

    /// Volume or area; `None` for the exterior.
    pub fn measure(&self) -> Option<f64> {
        let pi = std::f64::consts::PI;
        match *self {
            Domain::Ball { radius } => Some(4.0 * pi * radius.powi(3) / 3.0),
            Domain::Sphere { radius } => Some(4.0 * pi * radius * radius),
            Domain::Shell { r_in, r_out } => Some(4.0 * pi * (r_out.powi(3) - r_in.powi(3)) / 3.0),
            Domain::Exterior { .. } => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Domain::Ball { radius } | Domain::Sphere { radius } | Domain::Exterior { radius } => {
                radius.is_finite() && radius > 0.0
            }
            Domain::Shell { r_in, r_out } => r_in.is_finite() && r_out.is_finite() && 0.0 <= r_in && r_in < r_out,
        };
        if ok {
            Ok(())
        } else {
            Err(MonogenicError::InvalidRule(format!("bad domain {self:?}")))
        }
    }
}

/// Orders exact for products of basis elements up to degree `n_max`.
pub fn default_orders(n_max: usize) -> (usize, usize, usize) {
    (n_max + 4, n_max + 4, 2 * n_max + 4)
}

/// Jacobi `P_n^{(α,β)}(z)`, `P_{n-1}^{(α,β)}(z)` and `d/dz P_n^{(α,β)}(z)`.
fn jacobi(n: usize, alpha: f64, beta: f64, z: f64) -> (f64, f64, f64) {
    let ab = alpha + beta;
    let mut p1 = 0.5 * (alpha - beta + (2.0 + ab) * z);
    let mut p2 = 1.0;
    if n == 0 {
        return (1.0, 0.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        let t = 2.0 * jf + ab;
        let a = 2.0 * jf * (jf + ab) * (t - 2.0);
        let b = (t - 1.0) * (alpha * alpha - beta * beta + t * (t - 2.0) * z);
        let c = 2.0 * (jf - 1.0 + alpha) * (jf - 1.0 + beta) * t;
        p1 = (b * p2 - c * p3) / a;
    }
    let nf = n as f64;
    let t = 2.0 * nf + ab;
    let dp = (nf * (alpha - beta - t * z) * p1 + 2.0 * (nf + alpha) * (nf + beta) * p2) / (t * (1.0 - z * z));
    (p1, p2, dp)
}

/// Gauss-Jacobi nodes and weights on `[-1, 1]` for `(1-u)^α (1+u)^β`,
/// integer `α, β >= 0`. Nodes ascending.
pub fn gauss_jacobi(n: usize, alpha: usize, beta: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(MonogenicError::InvalidRule("order must be at least 1".into()));
    }
    let (a, b) = (alpha as f64, beta as f64);
    let pn = |z: f64| jacobi(n, a, b, z).0;
    // bracket the roots on a grid clustered towards ±1
    let m = 64 * n + 64;
    let grid: Vec<f64> = (0..=m).map(|j| -(std::f64::consts::PI * j as f64 / m as f64).cos()).collect();
    let mut nodes = Vec::with_capacity(n);
    let mut prev = pn(grid[1]);
    for w in grid[1..m].windows(2) {
        let cur = pn(w[1]);
        if prev == 0.0 || prev.signum() != cur.signum() {
            let (mut lo, mut hi) = (w[0], w[1]);
            let mut flo = prev;
            let mut z = 0.5 * (lo + hi);
            for _ in 0..200 {
                let (p, _, dp) = jacobi(n, a, b, z);
                if p == 0.0 {
                    break;
                }
                if p.signum() == flo.signum() {
                    lo = z;
                    flo = p;
                } else {
                    hi = z;
                }
                let newton = z - p / dp;
                let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
                let done = (next - z).abs() <= 1e-15 * z.abs().max(1e-3);
                z = next;
                if done || hi - lo <= 4.0 * f64::EPSILON {
                    break;
                }
            }
            // polish
            for _ in 0..2 {
                let (p, _, dp) = jacobi(n, a, b, z);
                if dp != 0.0 && p != 0.0 {
                    let next = z - p / dp;
                    if next > lo && next < hi {
                        z = next;
                    }
                }
            }
            nodes.push(z);
        }
        prev = cur;
    }
    if nodes.len() != n {
        return Err(MonogenicError::InvalidRule(format!("found {} of {n} Gauss-Jacobi nodes", nodes.len())));
    }
    // w = 2^{α+β+1} (n+α)! (n+β)! / ((n+α+β)! n! (1-z²) P_n'(z)²)
    let c = factorial_ratio(n + alpha, n) * factorial_ratio(n + beta, n + alpha + beta) * 2f64.powi((alpha + beta + 1) as i32);
    let weights = nodes
        .iter()
        .map(|&z| {
            let (_, _, dp) = jacobi(n, a, b, z);
            c / ((1.0 - z) * (1.0 + z) * dp * dp)
        })
        .collect();
    Ok((nodes, weights))
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    gauss_jacobi(n, 0, 0)
}

/// Immutable product rule.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    domain: Domain,
    nodes: Vec<Point3>,
    weights: Vec<f64>,
    orders: (usize, usize, usize),
}

impl QuadratureRule {
    /// Product rule with `n_r` radial, `n_theta` polar and `n_phi` azimuthal points.
    /// `n_r` is ignored on a sphere.
    pub fn new(domain: Domain, n_r: usize, n_theta: usize, n_phi: usize) -> Result<Self> {
        domain.validate()?;
        if n_r == 0 || n_theta == 0 || n_phi == 0 {
            return Err(MonogenicError::InvalidRule(format!("orders ({n_r}, {n_theta}, {n_phi}) must be >= 1")));
        }
        let radial: Vec<(f64, f64)> = match domain {
            Domain::Sphere { radius } => vec![(radius, radius * radius)],
            Domain::Ball { radius } => {
                let (u, w) = gauss_jacobi(n_r, 0, 2)?;
                let s = radius.powi(3) / 8.0;
                u.iter().zip(&w).map(|(u, w)| (0.5 * radius * (1.0 + u), w * s)).collect()
            }
            Domain::Shell { r_in, r_out } => {
                let (u, w) = gauss_legendre(n_r)?;
                let half = 0.5 * (r_out - r_in);
                u.iter()
                    .zip(&w)
                    .map(|(u, w)| {
                        let r = r_in + half * (1.0 + u);
                        (r, w * half * r * r)
                    })
                    .collect()
            }
            Domain::Exterior { radius } => {
                // r = ρ/s, r² dr = ρ³ s⁻⁴ ds, s ∈ (0, 1)
                let (u, w) = gauss_legendre(n_r)?;
                u.iter()
                    .zip(&w)
                    .map(|(u, w)| {
                        let s = 0.5 * (1.0 + u);
                        (radius / s, 0.5 * w * radius.powi(3) / s.powi(4))
                    })
                    .collect()
            }
        };
        let (ct, wt) = gauss_legendre(n_theta)?;
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(radial.len() * n_theta * n_phi);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for &(r, wr) in &radial {
            for (t, w_t) in ct.iter().zip(&wt) {
                let st = (1.0 - t * t).sqrt();
                for k in 0..n_phi {
                    let (sp, cp) = (k as f64 * dphi).sin_cos();
                    nodes.push(Point3::new(r * t, r * st * cp, r * st * sp));
                    weights.push(wr * w_t * dphi);
                }
            }
        }
        let n_r = if matches!(domain, Domain::Sphere { .. }) { 1 } else { n_r };
        Ok(Self { domain, nodes, weights, orders: (n_r, n_theta, n_phi) })
    }

    /// Rule with [`default_orders`] for degree `n_max`.
    pub fn for_degree(domain: Domain, n_max: usize) -> Result<Self> {
        let (a, b, c) = default_orders(n_max);
        Self::new(domain, a, b, c)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nodes(&self) -> &[Point3] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn orders(&self) -> (usize, usize, usize) {
        self.orders
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `f` at every node, in node order.
    pub fn values<F: Field + ?Sized>(&self, f: &F) -> Result<Vec<Quaternion>> {
        self.nodes.par_iter().map(|&x| f.eval(x)).collect()
    }

    /// Weighted pairwise sum of per-node terms.
    pub fn sum_with<T>(&self, term: T) -> Result<Quaternion>
    where
        T: Fn(usize, Point3) -> Result<Quaternion> + Sync,
    {
        let v: Vec<Quaternion> = self
            .nodes
            .par_iter()
            .enumerate()
            .map(|(i, &x)| Ok(term(i, x)? * self.weights[i]))
            .collect::<Result<_>>()?;
        Ok(pairwise_sum(&v))
    }

    /// `∫ f`.
    pub fn integrate<F: Field + ?Sized>(&self, f: &F) -> Result<Quaternion> {
        self.sum_with(|_, x| f.eval(x))
    }

    fn require_sphere(&self) -> Result<()> {
        match self.domain {
            Domain::Sphere { .. } => Ok(()),
            d => Err(MonogenicError::InvalidRule(format!("sphere rule required, got {d:?}"))),
        }
    }
}

/// Sum in a fixed binary-tree order.
pub fn pairwise_sum(v: &[Quaternion]) -> Quaternion {
    match v.len() {
        0 => Quaternion::ZERO,
        1 => v[0],
        n if n <= 8 => v.iter().copied().sum(),
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// `⟨f, g⟩ = ∫ conj(f) g`.
pub fn inner_product<F, G>(f: &F, g: &G, rule: &QuadratureRule) -> Result<Quaternion>
where
    F: Field + ?Sized,
    G: Field + ?Sized,
{
    rule.sum_with(|_, x| Ok(f.eval(x)?.conj() * g.eval(x)?))
}

/// Matrix of `⟨f_i, f_j⟩`, evaluating each function once per node.
pub fn gram_matrix(fs: &[&dyn Field], rule: &QuadratureRule) -> Result<Vec<Vec<Quaternion>>> {
    let vals: Vec<Vec<Quaternion>> = fs.iter().map(|f| rule.values(*f)).collect::<Result<_>>()?;
    let w = rule.weights();
    let n = fs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let entries: Vec<Quaternion> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let terms: Vec<Quaternion> =
                vals[i].iter().zip(&vals[j]).zip(w).map(|((a, b), w)| a.conj() * *b * *w).collect();
            pairwise_sum(&terms)
        })
        .collect();
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(entries.chunks(n).map(|c| c.to_vec()).collect())
}

/// `∫_{|y|=ρ} conj(A(ȳ)) (y/|y|) f(y) dσ`.
pub fn surface_integral_with_element<A, F>(a: &A, f: &F, rule: &QuadratureRule) -> Result<Quaternion>
where
    A: Field + ?Sized,
    F: Field + ?Sized,
{
    rule.require_sphere()?;
    rule.sum_with(|_, y| {
        let normal = y.quat() / y.norm();
        Ok(a.eval(y.conj())?.conj() * normal * f.eval(y)?)
    })
}

/// Several surface integrals sharing one evaluation of `f`.
pub fn surface_integrals_with_elements(
    elements: &[&dyn Field],
    f: &dyn Field,
    rule: &QuadratureRule,
) -> Result<Vec<Quaternion>> {
    rule.require_sphere()?;
    let fv: Vec<Quaternion> = rule
        .nodes()
        .par_iter()
        .map(|&y| Ok(y.quat() / y.norm() * f.eval(y)?))
        .collect::<Result<_>>()?;
    elements
        .par_iter()
        .map(|a| {
            let terms: Vec<Quaternion> = rule
                .nodes()
                .iter()
                .zip(&fv)
                .zip(rule.weights())
                .map(|((&y, nf), w)| Ok(a.eval(y.conj())?.conj() * *nf * *w))
                .collect::<Result<_>>()?;
            Ok(pairwise_sum(&terms))
        })
        .collect()
}
