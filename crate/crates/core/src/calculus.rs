//! Differential operators: finite-difference oracles for `∂̄`, `∂`, `∂₀`, `∂̄_C`,
//! the spherical form of `∂₀`, and the exact index maps of `∂₀` and the
//! primitive `P_H` on both basis families.

use crate::basis::{BasisFamily, BasisIndex};
use crate::error::{MonogenicError, Result};
use crate::field::Field;
use crate::poly::QuatPoly;
use crate::quaternion::{Point3, Quaternion};
use crate::special::factorial;

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Central differences `∂f/∂x_i`, `i = 0, 1, 2`.
pub fn fd_partials<F: Field + ?Sized>(f: &F, x: Point3, h: f64) -> Result<[Quaternion; 3]> {
    let mut out = [Quaternion::ZERO; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let p = f.eval(x.shifted(i, h))?;
        let m = f.eval(x.shifted(i, -h))?;
        *o = (p - m) / (2.0 * h);
    }
    Ok(out)
}

/// `∂̄f = ∂0 f + e1 ∂1 f + e2 ∂2 f` (units act from the left).
pub fn fd_dbar<F: Field + ?Sized>(f: &F, x: Point3, h: f64) -> Result<Quaternion> {
    let d = fd_partials(f, x, h)?;
    Ok(d[0] + Quaternion::E1 * d[1] + Quaternion::E2 * d[2])
}

/// `∂f = ∂0 f - e1 ∂1 f - e2 ∂2 f`.
pub fn fd_d<F: Field + ?Sized>(f: &F, x: Point3, h: f64) -> Result<Quaternion> {
    let d = fd_partials(f, x, h)?;
    Ok(d[0] - Quaternion::E1 * d[1] - Quaternion::E2 * d[2])
}

/// Hypercomplex derivative `∂₀ f = ½ ∂f`.
pub fn fd_hyper_derivative<F: Field + ?Sized>(f: &F, x: Point3, h: f64) -> Result<Quaternion> {
    Ok(fd_d(f, x, h)? * 0.5)
}

/// `∂̄_C f = ½(∂1 f + e3 ∂2 f)`.
pub fn fd_dbar_c<F: Field + ?Sized>(f: &F, x: Point3, h: f64) -> Result<Quaternion> {
    let p1 = (f.eval(x.shifted(1, h))? - f.eval(x.shifted(1, -h))?) / (2.0 * h);
    let p2 = (f.eval(x.shifted(2, h))? - f.eval(x.shifted(2, -h))?) / (2.0 * h);
    Ok((p1 + Quaternion::E3 * p2) * 0.5)
}

/// `∂₀ f = ½(ω̄ ∂_r f + L̄ f / r)` with central differences in `r`, `θ`, `φ`, where
/// `L̄ = (-sinθ - cosθ cosφ e1 - cosθ sinφ e2) ∂_θ + (sinφ e1 - cosφ e2)/sinθ ∂_φ`.
pub fn spherical_hyper_derivative<F>(f: F, r: f64, theta: f64, phi: f64, h: f64) -> Result<Quaternion>
where
    F: Fn(f64, f64, f64) -> Result<Quaternion>,
{
    let pi = std::f64::consts::PI;
    if r <= h || theta < 10.0 * h || theta > pi - 10.0 * h {
        return Err(MonogenicError::PoleProximity);
    }
    let dr = (f(r + h, theta, phi)? - f(r - h, theta, phi)?) / (2.0 * h);
    let dt = (f(r, theta + h, phi)? - f(r, theta - h, phi)?) / (2.0 * h);
    let dp = (f(r, theta, phi + h)? - f(r, theta, phi - h)?) / (2.0 * h);
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let omega_bar = Quaternion::new(ct, -st * cp, -st * sp, 0.0);
    let lt = Quaternion::new(-st, -ct * cp, -ct * sp, 0.0);
    let lp = Quaternion::new(0.0, sp / st, -cp / st, 0.0);
    Ok((omega_bar * dr + (lt * dt + lp * dp) / r) * 0.5)
}

/// Effect of an operator on one basis element: `op(source) = target · factor`,
/// with `target = None` when the element is annihilated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorAction {
    pub source: BasisIndex,
    pub target: Option<BasisIndex>,
    pub factor: f64,
}

fn sign(k: i32) -> f64 {
    if k < 0 {
        -1.0
    } else {
        1.0
    }
}

/// `∂₀` on a basis element: target `(k-1, l)`.
///
/// Orthonormal factor `sign(k) sqrt((2k+3)(k-l)(k+l+1)/(2k+1))`, Appell factor `k`.
/// Inner monogenic constants (`l = k`) are annihilated.
pub fn basis_derivative(idx: BasisIndex, family: BasisFamily) -> Result<OperatorAction> {
    let (k, l) = (idx.k(), idx.l() as i32);
    if k >= 0 && l == k {
        return Ok(OperatorAction { source: idx, target: None, factor: 0.0 });
    }
    let target = BasisIndex::new(k - 1, l as u32)?;
    let kf = k as f64;
    let lf = l as f64;
    let factor = match family {
        BasisFamily::OrthonormalPhi => {
            sign(k) * ((2.0 * kf + 3.0) * (kf - lf) * (kf + lf + 1.0) / (2.0 * kf + 1.0)).sqrt()
        }
        BasisFamily::AppellA => kf,
    };
    Ok(OperatorAction { source: idx, target: Some(target), factor })
}

/// Primitive `P_H` on a basis element: target `(k+1, l)`.
///
/// Orthonormal factor `sign(k) sqrt((2k+3)/((2k+5)(k-l+1)(k+l+2)))`, Appell
/// factor `1/(k+1)`. Outer elements with `k = -2` or `l = -k-2` have no
/// primitive in the basis.
pub fn basis_primitive(idx: BasisIndex, family: BasisFamily) -> Result<OperatorAction> {
    let (k, l) = (idx.k(), idx.l());
    if k < 0 && (k == -2 || l as i32 == -k - 2) {
        return Err(MonogenicError::NoPrimitiveInBasis(idx));
    }
    let target = BasisIndex::new(k + 1, l as u32)?;
    let kf = k as f64;
    let lf = l as f64;
    let factor = match family {
        BasisFamily::OrthonormalPhi => {
            sign(k) * ((2.0 * kf + 3.0) / ((2.0 * kf + 5.0) * (kf - lf + 1.0) * (kf + lf + 2.0))).sqrt()
        }
        BasisFamily::AppellA => 1.0 / (kf + 1.0),
    };
    Ok(OperatorAction { source: idx, target: Some(target), factor })
}

/// Smallest `d` with `∂₀^d` annihilating the inner element: `n - l + 1`.
pub fn kernel_depth(idx: BasisIndex) -> Result<usize> {
    if !idx.is_inner() {
        return Err(MonogenicError::OuterIndexUnsupported(idx));
    }
    Ok(idx.degree() - idx.l() + 1)
}

/// Finite combination `Σ_n ζ^n c_n` of monogenic constants.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZetaPoly {
    coeffs: Vec<Quaternion>,
}

impl ZetaPoly {
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last() == Some(&Quaternion::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `ζ^n c`.
    pub fn monomial(n: usize, c: Quaternion) -> Self {
        let mut v = vec![Quaternion::ZERO; n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Quaternion {
        self.coeffs.get(n).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Decompose a polynomial; fails unless it equals `Σ ζ^n c_n` up to `tol`.
    pub fn from_poly(p: &QuatPoly, tol: f64) -> Result<Self> {
        let mut rest = p.clone();
        let mut coeffs = Vec::new();
        let deg = p.degree().unwrap_or(0);
        for n in 0..=deg {
            let c = p.coefficient([0, n, 0]);
            coeffs.push(c);
            rest = rest - QuatPoly::zeta().pow(n as usize) * c;
        }
        if rest.max_abs() > tol {
            return Err(MonogenicError::NotMonogenicConstant);
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_poly(&self) -> QuatPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(QuatPoly::zero(), |acc, (n, c)| acc + QuatPoly::zeta().pow(n) * *c)
    }

    pub fn eval(&self, x: Point3) -> Quaternion {
        let z = x.zeta();
        let mut acc = Quaternion::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = z * acc + *c;
        }
        acc
    }
}

/// `∂̄_C (ζ^n c) = n ζ^{n-1} c`, termwise.
pub fn dbar_c(p: &ZetaPoly) -> ZetaPoly {
    ZetaPoly::new(p.coeffs.iter().enumerate().skip(1).map(|(n, c)| *c * n as f64).collect())
}

/// `(1/n!) ∂̄_C^l ∂₀^{n-l} p (0)` for a polynomial `p`.
pub fn taylor_functional(n: usize, l: usize, p: &QuatPoly) -> Quaternion {
    let mut q = p.clone();
    for _ in 0..n.saturating_sub(l) {
        q = q.hyper_derivative();
    }
    for _ in 0..l {
        q = q.dbar_c();
    }
    q.coefficient([0, 0, 0]) / factorial(n)
}

/// `(1/n!) ∂̄_C^l ∂₀^{n-l} A_{idx} (0)` through the Appell index map of `∂₀`
/// followed by `∂̄_C` on the resulting element.
pub fn taylor_functional_appell(n: usize, l: usize, idx: BasisIndex) -> Result<f64> {
    if !idx.is_inner() {
        return Err(MonogenicError::OuterIndexUnsupported(idx));
    }
    let mut factor = 1.0;
    let mut cur = idx;
    for _ in 0..n.saturating_sub(l) {
        let act = basis_derivative(cur, BasisFamily::AppellA)?;
        match act.target {
            Some(t) => {
                factor *= act.factor;
                cur = t;
            }
            None => return Ok(0.0),
        }
    }
    // a homogeneous term of degree != l cannot contribute a constant after l steps
    if cur.degree() != l {
        return Ok(0.0);
    }
    let value = if cur.is_diagonal() {
        let mut z = ZetaPoly::monomial(cur.degree(), Quaternion::ONE);
        for _ in 0..l {
            z = dbar_c(&z);
        }
        z.coeff(0)
    } else {
        let mut q = QuatPoly::appell(cur.degree(), cur.l())?;
        for _ in 0..l {
            q = q.dbar_c();
        }
        q.coefficient([0, 0, 0])
    };
    Ok(factor * value.a0 / factorial(n))
}
