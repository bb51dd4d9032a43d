//! Kelvin transform and the outer (negative-degree) families.

use crate::error::{MonogenicError, Result};
use crate::field::Field;
use crate::quaternion::{Point3, Quaternion};
use crate::special::ln_factorial;

use super::appell::appell_inner;
use super::index::{BasisFamily, BasisIndex, MAX_DEGREE};

fn check(n: usize, l: usize) -> Result<()> {
    if l > n {
        return Err(MonogenicError::InvalidIndex { k: -(n as i64) - 2, l: l as i64 });
    }
    if n > MAX_DEGREE {
        return Err(MonogenicError::DegreeTooLarge { degree: n, max: MAX_DEGREE });
    }
    Ok(())
}

/// `(x̄/|x|³) · f(x̄/|x|²)`.
pub fn kelvin<F: Field + ?Sized>(f: &F, x: Point3) -> Result<Quaternion> {
    let r2 = x.norm_sqr();
    if r2 == 0.0 {
        return Err(MonogenicError::Pole);
    }
    let xb = x.conj();
    let inv = xb.scale(1.0 / r2);
    Ok(xb.quat() * f.eval(inv)? / (r2 * r2.sqrt()))
}

/// `c(n, l)` with `A_n^l = c · φ_n^l` on the inner side.
pub fn inner_factor(n: usize, l: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let ln = (l + 1) as f64 * std::f64::consts::LN_2
        + ln_factorial(n)
        + 0.5 * (pi.ln() - ((2 * n + 3) as f64).ln() - ln_factorial(n - l) - ln_factorial(n + l + 1));
    ln.exp()
}

/// `c(n, l)` with `A_{-(n+2)}^l = c · φ_{-(n+2)}^l`.
pub fn outer_factor(n: usize, l: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let ln = (l + 1) as f64 * std::f64::consts::LN_2 - ln_factorial(n + 1)
        + 0.5 * (pi.ln() + ln_factorial(n - l) + ln_factorial(n + l + 1) - ((2 * n + 1) as f64).ln());
    ln.exp()
}

/// `λ` with `from(idx) = λ · to(idx)`.
pub fn family_convert(idx: BasisIndex, from: BasisFamily, to: BasisFamily) -> f64 {
    if from == to {
        return 1.0;
    }
    let (n, l) = (idx.degree(), idx.l());
    let c = if idx.is_inner() { inner_factor(n, l) } else { outer_factor(n, l) };
    match from {
        BasisFamily::AppellA => c,
        BasisFamily::OrthonormalPhi => 1.0 / c,
    }
}

/// Inner orthonormal `φ_n^l = A_n^l / c(n, l)`.
pub fn phi_inner(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    Ok(appell_inner(n, l, x)? / inner_factor(n, l))
}

/// Outer orthonormal `φ_{-(n+2)}^l = sqrt((2n+1)/(2n+3)) K(φ_n^l)`.
pub fn phi_outer(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    check(n, l)?;
    let s = ((2 * n + 1) as f64 / (2 * n + 3) as f64).sqrt();
    Ok(kelvin(&|y: Point3| phi_inner(n, l, y), x)? * s)
}

fn diagonal_outer(n: usize, x: Point3) -> Result<Quaternion> {
    let r2 = x.norm_sqr();
    if r2 == 0.0 {
        return Err(MonogenicError::Pole);
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let c = (ln_factorial(2 * n + 1) - ln_factorial(n) - ln_factorial(n + 1)).exp();
    let r = r2.sqrt();
    Ok(x.conj().quat() * x.zeta().powi(n as u32) * (sign * c / r.powi(2 * n as i32 + 3)))
}

/// Outer Appell `A_{-(n+2)}^l = (n+l+1)!(n-l)!/(n!(n+1)!) K(A_n^l)`;
/// the diagonal `l = n` uses `(-1)^n (2n+1)!/(n!(n+1)!) x̄ ζ^n / |x|^{2n+3}`.
pub fn appell_outer(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    check(n, l)?;
    if l == n {
        return diagonal_outer(n, x);
    }
    let c = (ln_factorial(n + l + 1) + ln_factorial(n - l) - ln_factorial(n) - ln_factorial(n + 1)).exp();
    Ok(kelvin(&|y: Point3| appell_inner(n, l, y), x)? * c)
}

/// `A_{-(n+2)}^l = (-1)^n (2l+1)!/(l!(n+1)!) [∂_{x0}^{n-l} (x̄/|x|^{2l+3})] ζ^l`,
/// with the `x0`-derivative taken exactly by truncated power series.
pub fn appell_outer_x0_route(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    check(n, l)?;
    let r2 = x.norm_sqr();
    if r2 == 0.0 {
        return Err(MonogenicError::Pole);
    }
    let d = n - l;
    // g(ε) = (r² + 2 x0 ε + ε²)^α
    let alpha = -(2.0 * l as f64 + 3.0) / 2.0;
    let b = [r2, 2.0 * x.x0, 1.0];
    let mut g = vec![0.0; d + 1];
    g[0] = r2.powf(alpha);
    for k in 1..=d {
        let mut s = 0.0;
        for j in 1..=k.min(2) {
            s += ((alpha + 1.0) * j as f64 - k as f64) * b[j] * g[k - j];
        }
        g[k] = s / (k as f64 * b[0]);
    }
    // coefficient of ε^d in (x̄ + ε) g(ε)
    let xb = x.conj().quat();
    let mut coef = xb * g[d];
    if d >= 1 {
        coef += Quaternion::real(g[d - 1]);
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let c = (ln_factorial(2 * l + 1) + ln_factorial(d) - ln_factorial(l) - ln_factorial(n + 1)).exp();
    Ok(coef * x.zeta().powi(l as u32) * (sign * c))
}

/// `E2(x) = x̄ / (4π |x|³)`.
pub fn cauchy_kernel(x: Point3) -> Result<Quaternion> {
    let r2 = x.norm_sqr();
    if r2 == 0.0 {
        return Err(MonogenicError::Pole);
    }
    Ok(x.conj().quat() / (4.0 * std::f64::consts::PI * r2 * r2.sqrt()))
}
