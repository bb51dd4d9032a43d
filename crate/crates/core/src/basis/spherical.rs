//! The spherical (Legendre) construction of the inner solid spherical
//! monogenics `r^n X_n^l`, `r^n Y_n^m`. This path is kept for cross-validation
//! of the Cartesian closed form; it is not used for production evaluation.

use crate::error::{MonogenicError, Result};
use crate::legendre::{legendre_table, LegendreTable};
use crate::quaternion::{Point3, Quaternion};
use crate::special::ln_factorial;

use super::index::MAX_DEGREE;

/// Values of the coefficient functions `A^{m,n}(θ)`, `B^{m,n}(θ)`, `C^{m,n}(θ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffFunctions {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Selects `X_n^j` or `Y_n^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphericalKind {
    X,
    Y,
}

/// Coefficient functions from a table holding degrees up to `n + 2`.
///
/// `A = ½(sin²θ P' + (n+1) cosθ P)`, `B = ½(sinθ cosθ P' - (n+1) sinθ P)`,
/// `C = ½ m P / sinθ` with `P = P_{n+1}^m(cos θ)`. The sine-weighted pieces
/// come from [`LegendreTable::sin_derivative`] and [`LegendreTable::m_over_sin`]
/// so nothing is divided by `sin θ`.
pub fn coeff_functions_from_table(tab: &LegendreTable, n: usize, m: usize) -> CoeffFunctions {
    let t = tab.t();
    let s = tab.sin();
    let p = tab.value(n + 1, m);
    let s_dp = tab.sin_derivative(n + 1, m);
    let nf = (n + 1) as f64;
    CoeffFunctions {
        a: 0.5 * (s * s_dp + nf * t * p),
        b: 0.5 * (t * s_dp - nf * s * p),
        c: 0.5 * tab.m_over_sin(n + 1, m),
    }
}

fn check(n: usize, j: usize, j_min: usize) -> Result<()> {
    if n > MAX_DEGREE || j > n + 1 || j < j_min {
        return Err(MonogenicError::SphericalIndex { n, j });
    }
    Ok(())
}

/// `A^{m,n}`, `B^{m,n}`, `C^{m,n}` at `θ ∈ [0, π]`, `0 <= m <= n + 1`.
pub fn coeff_functions(n: usize, m: usize, theta: f64) -> Result<CoeffFunctions> {
    check(n, m, 0)?;
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(MonogenicError::Evaluation(format!("theta {theta} outside [0, pi]")));
    }
    let tab = legendre_table(n + 2, theta.cos())?;
    Ok(coeff_functions_from_table(&tab, n, m))
}

fn assemble(kind: SphericalKind, cf: CoeffFunctions, j: usize, phi: f64) -> Quaternion {
    let (sp, cp) = phi.sin_cos();
    let (sj, cj) = (j as f64 * phi).sin_cos();
    let CoeffFunctions { a, b, c } = cf;
    match kind {
        SphericalKind::X => Quaternion::new(
            a * cj,
            b * cp * cj - c * sp * sj,
            b * sp * cj + c * cp * sj,
            0.0,
        ),
        SphericalKind::Y => Quaternion::new(
            a * sj,
            b * cp * sj + c * sp * cj,
            b * sp * sj - c * cp * cj,
            0.0,
        ),
    }
}

/// Spherical monogenic `X_n^j(θ, φ)` (`0 <= j <= n+1`) or `Y_n^j(θ, φ)` (`1 <= j <= n+1`).
pub fn spherical_xy(kind: SphericalKind, n: usize, j: usize, theta: f64, phi: f64) -> Result<Quaternion> {
    let j_min = if kind == SphericalKind::Y { 1 } else { 0 };
    check(n, j, j_min)?;
    let cf = coeff_functions(n, j, theta)?;
    Ok(assemble(kind, cf, j, phi))
}

/// Solid spherical monogenic `r^n X_n^j` or `r^n Y_n^j` at a Cartesian point.
pub fn solid_xy(kind: SphericalKind, n: usize, j: usize, x: Point3) -> Result<Quaternion> {
    let s = x.spherical();
    Ok(spherical_xy(kind, n, j, s.theta, s.phi)? * s.r.powi(n as i32))
}

/// Closed L²(ball) norm of `r^n X_n^m` (equal to that of `r^n Y_n^m` for `m >= 1`).
pub fn solid_norm(n: usize, m: usize) -> f64 {
    let nf = n as f64;
    let pi = std::f64::consts::PI;
    if m == 0 {
        (pi * (nf + 1.0) / (2.0 * nf + 3.0)).sqrt()
    } else {
        let ratio = (ln_factorial(n + m + 1) - ln_factorial(n + 1 - m)).exp();
        (pi * (nf + 1.0) * ratio / (2.0 * (2.0 * nf + 3.0))).sqrt()
    }
}

/// `c_{n,-l} = sqrt((n+1) / (2(n-l+1)))`.
fn c_minus(n: usize, l: usize) -> f64 {
    ((n as f64 + 1.0) / (2.0 * (n - l + 1) as f64)).sqrt()
}

/// `r^n (X_n^l - Y_n^l e3)` for `l >= 1`, or `r^n X_n^0` for `l = 0`, from a table.
fn xy_combination(tab: &LegendreTable, n: usize, l: usize, r: f64, phi: f64) -> Quaternion {
    let cf = coeff_functions_from_table(tab, n, l);
    let xv = assemble(SphericalKind::X, cf, l, phi);
    let combo = if l == 0 {
        xv
    } else {
        xv - assemble(SphericalKind::Y, cf, l, phi) * Quaternion::E3
    };
    combo * r.powi(n as i32)
}

/// Inner orthonormal `φ_n^l` by the Legendre construction.
pub fn phi_inner_spherical(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    if l > n {
        return Err(MonogenicError::InvalidIndex { k: n as i64, l: l as i64 });
    }
    check(n, l, 0)?;
    let s = x.spherical();
    let tab = legendre_table(n + 2, s.theta.cos())?;
    let combo = xy_combination(&tab, n, l, s.r, s.phi);
    Ok(if l == 0 {
        combo / solid_norm(n, 0)
    } else {
        combo * (c_minus(n, l) / solid_norm(n, l))
    })
}

/// Inner Appell `A_n^l` by the Legendre construction:
/// `2/(n+1) r^n X_n^0` and `2^{l+1} n!/(n+l+1)! r^n (X_n^l - Y_n^l e3)`.
pub fn appell_inner_spherical(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    if l > n {
        return Err(MonogenicError::InvalidIndex { k: n as i64, l: l as i64 });
    }
    check(n, l, 0)?;
    let s = x.spherical();
    let tab = legendre_table(n + 2, s.theta.cos())?;
    let combo = xy_combination(&tab, n, l, s.r, s.phi);
    let factor = if l == 0 {
        2.0 / (n as f64 + 1.0)
    } else {
        ((l + 1) as f64 * std::f64::consts::LN_2 + ln_factorial(n) - ln_factorial(n + l + 1)).exp()
    };
    Ok(combo * factor)
}
