//! Inner Appell polynomials `A_n^l`: closed Cartesian factorization and
//! the recurrences in `n` at fixed `l`.

use std::sync::OnceLock;

use crate::error::{MonogenicError, Result};
use crate::quaternion::{Point3, Quaternion};

use super::index::MAX_DEGREE;

/// Which recurrence drives [`appell_inner_recur`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Recurrence {
    /// Two-step formula in `x`, `x̄`, seeded with `A_l^l`, `A_{l+1}^l`.
    #[default]
    TwoStep,
    /// One-step formula using the hat involution.
    OneStep,
}

// coefficients[n][l][h] of x̄^h x^{n-l-h} in the closed form, built by the
// term ratio in h so no large factorials are formed
fn closed_coefficients() -> &'static Vec<Vec<Vec<f64>>> {
    static TABLE: OnceLock<Vec<Vec<Vec<f64>>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=MAX_DEGREE)
            .map(|n| {
                (0..=n)
                    .map(|l| {
                        let m = n - l;
                        // c_0 = (2n+1)! / (4^{n-l} (n+l+1)! (n-l)!)
                        let mut c = (1..=m).fold(1.0, |acc, j| acc * (n + l + 1 + j) as f64 / (4 * j) as f64);
                        let mut row = Vec::with_capacity(m + 1);
                        row.push(c);
                        for h in 0..m {
                            c *= ((2 * l + 2 * h + 1) * (m - h)) as f64 / ((2 * n - 2 * h + 1) * (h + 1)) as f64;
                            row.push(c);
                        }
                        row
                    })
                    .collect()
            })
            .collect()
    })
}

fn check(n: usize, l: usize) -> Result<()> {
    if l > n {
        return Err(MonogenicError::InvalidIndex { k: n as i64, l: l as i64 });
    }
    if n > MAX_DEGREE {
        return Err(MonogenicError::DegreeTooLarge { degree: n, max: MAX_DEGREE });
    }
    Ok(())
}

/// Closed-form coefficient of `x̄^h x^{n-l-h} ζ^l` in `A_n^l`.
pub fn closed_coefficient(n: usize, l: usize, h: usize) -> Result<f64> {
    check(n, l)?;
    Ok(closed_coefficients()[n][l].get(h).copied().unwrap_or(0.0))
}

fn powers(q: Quaternion, k: usize) -> Vec<Quaternion> {
    let mut v = Vec::with_capacity(k + 1);
    let mut acc = Quaternion::ONE;
    v.push(acc);
    for _ in 0..k {
        acc = acc * q;
        v.push(acc);
    }
    v
}

/// `A_n^l(x)` from the closed factorization
/// `Σ_h c_h x̄^h x^{n-l-h} · ζ^l`, `ζ = x1 - x2 e3`.
pub fn appell_inner_closed(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    check(n, l)?;
    let coef = &closed_coefficients()[n][l];
    let m = n - l;
    let xq = x.quat();
    let xp = powers(xq, m);
    let xbp = powers(xq.conj(), m);
    let mut sum = Quaternion::ZERO;
    for (h, c) in coef.iter().enumerate() {
        sum += xbp[h] * xp[m - h] * *c;
    }
    Ok(sum * x.zeta().powi(l as u32))
}

/// Highest degree evaluated by the closed sum in [`appell_inner`]; above it the
/// alternating terms cancel badly and the two-step recurrence is used.
pub const CLOSED_FORM_MAX_DEGREE: usize = 20;

/// `A_n^l(x)`: closed form up to [`CLOSED_FORM_MAX_DEGREE`], two-step recurrence above.
pub fn appell_inner(n: usize, l: usize, x: Point3) -> Result<Quaternion> {
    if n <= CLOSED_FORM_MAX_DEGREE {
        appell_inner_closed(n, l, x)
    } else {
        appell_inner_recur(n, l, x, Recurrence::TwoStep)
    }
}

/// `A_l^l, A_{l+1}^l, ..., A_{n_max}^l` at `x` by the two-step recurrence.
pub fn appell_column(l: usize, n_max: usize, x: Point3) -> Result<Vec<Quaternion>> {
    check(n_max, l)?;
    let xq = x.quat();
    let xb = xq.conj();
    let zl = x.zeta().powi(l as u32);
    let mut col = Vec::with_capacity(n_max - l + 1);
    col.push(zl);
    if n_max == l {
        return Ok(col);
    }
    let lf = l as f64;
    col.push((xq * (2.0 * lf + 3.0) + xb * (2.0 * lf + 1.0)) * zl * 0.25);
    let xxb = xq.norm_sqr();
    for n in l + 1..n_max {
        let nf = n as f64;
        let f = (nf + 1.0) / (2.0 * (n - l + 1) as f64 * (n + l + 2) as f64);
        let a_n = col[n - l];
        let a_nm1 = col[n - l - 1];
        let next = (xq * (2.0 * nf + 3.0) + xb * (2.0 * nf + 1.0)) * a_n - a_nm1 * (2.0 * nf * xxb);
        col.push(next * f);
    }
    Ok(col)
}

/// One step `A_n^l -> A_{n+1}^l` of the hat-involution recurrence:
/// `A_{n+1} = (n+1)/(2(n-l+1)(n+l+2)) [(2n+3) x A_n + (2l+1) x̄ hat(A_n)]`.
pub fn appell_step(n: usize, l: usize, x: Point3, a_n: Quaternion) -> Quaternion {
    let (nf, lf) = (n as f64, l as f64);
    let f = (nf + 1.0) / (2.0 * (n - l + 1) as f64 * (n + l + 2) as f64);
    let xq = x.quat();
    (xq * a_n * (2.0 * nf + 3.0) + xq.conj() * a_n.hat() * (2.0 * lf + 1.0)) * f
}

/// `A_n^l(x)` by recurrence in `n` from the monogenic constant `ζ^l`.
pub fn appell_inner_recur(n: usize, l: usize, x: Point3, kind: Recurrence) -> Result<Quaternion> {
    check(n, l)?;
    match kind {
        Recurrence::TwoStep => Ok(*appell_column(l, n, x)?.last().unwrap()),
        Recurrence::OneStep => {
            let mut a = x.zeta().powi(l as u32);
            for m in l..n {
                a = appell_step(m, l, x, a);
            }
            Ok(a)
        }
    }
}
