//! Associated Legendre functions `P_n^m(t)` and their `t`-derivatives.
//!
//! Convention: no Condon-Shortley phase, `P_n^m(t) = (1-t²)^{m/2} d^m/dt^m P_n(t)`,
//! so `P_1^1(t) = +sqrt(1-t²)`. Under this sign the relations
//!
//! ```text
//! (I)   (1-t²) P'_{n+1}^m      = (n+m+1) P_n^m - (n+1) t P_{n+1}^m
//! (II)  (1-t²)^½ P'_{n+1}^m    = P_{n+1}^{m+1} - m (1-t²)^{-½} t P_{n+1}^m
//! (III) (1-t²)^½ P_{n+1}^m     = (P_{n+2}^{m+1} - P_n^{m+1}) / (2n+3)
//! (n-m+1) P_{n+1}^m - (2n+1) t P_n^m + (n+m) P_{n-1}^m = 0
//! ```
//!
//! hold literally, and so do the coupling relations between the coefficient
//! functions of the spherical monogenics.

use crate::error::{MonogenicError, Result};

/// Whether the `(-1)^m` Condon-Shortley phase is included. It is not.
pub const CONDON_SHORTLEY_PHASE: bool = false;

/// Largest degree accepted by the Legendre evaluators.
pub const MAX_LEGENDRE_DEGREE: usize = 96;

fn check_args(n: usize, m: usize, t: f64) -> Result<()> {
    if m > n || n > MAX_LEGENDRE_DEGREE {
        return Err(MonogenicError::LegendreIndex { n, m });
    }
    check_t(t)
}

fn check_t(t: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(MonogenicError::LegendreArgument(t));
    }
    Ok(())
}

/// Fills `col[j] = P_{m+j}^m(t)` for `m + j <= n_max` by upward recurrence.
fn column(m: usize, n_max: usize, t: f64, s: f64, col: &mut Vec<f64>) {
    col.clear();
    // P_m^m = (2m-1)!! s^m
    let mut pmm = 1.0;
    for i in 1..=m {
        pmm *= (2 * i - 1) as f64 * s;
    }
    col.push(pmm);
    if m == n_max {
        return;
    }
    col.push((2 * m + 1) as f64 * t * pmm);
    for n in (m + 1)..n_max {
        // (n-m+1) P_{n+1} = (2n+1) t P_n - (n+m) P_{n-1}
        let j = n - m;
        let next = ((2 * n + 1) as f64 * t * col[j] - (n + m) as f64 * col[j - 1])
            / (n - m + 1) as f64;
        col.push(next);
    }
}

/// `dP_n^m/dt` at `t = ±1` as the one-sided limit; infinite for `m = 1`.
fn endpoint_derivative(n: usize, m: usize, t: f64) -> f64 {
    let sigma: f64 = if t > 0.0 { 1.0 } else { -1.0 };
    let sign_pow = |e: usize| if e % 2 == 0 { 1.0 } else { sigma };
    let nf = n as f64;
    match m {
        0 => sign_pow(n + 1) * nf * (nf + 1.0) / 2.0,
        1 => -sign_pow(n) * f64::INFINITY,
        2 => {
            // -σ^{n+1} (n+2)! / (4 (n-2)!)
            let ratio: f64 = ((n - 1)..=(n + 2)).map(|i| i as f64).product();
            -sign_pow(n + 1) * ratio / 4.0
        }
        _ => 0.0,
    }
}

fn derivative_from(n: usize, m: usize, t: f64, pn: f64, pn_minus: f64) -> f64 {
    let w = 1.0 - t * t;
    if w == 0.0 {
        return endpoint_derivative(n, m, t);
    }
    // recurrence (I) with n+1 -> n
    ((n + m) as f64 * pn_minus - n as f64 * t * pn) / w
}

/// `P_n^m(t)` and `dP_n^m/dt`.
///
/// The derivative comes from recurrence (I) solved for `P'`; at `t = ±1` the
/// one-sided limit is returned (`±∞` for `m = 1`).
pub fn assoc_legendre(n: usize, m: usize, t: f64) -> Result<(f64, f64)> {
    check_args(n, m, t)?;
    let s = (1.0 - t * t).max(0.0).sqrt();
    let mut col = Vec::with_capacity(n - m + 1);
    column(m, n, t, s, &mut col);
    let pn = col[n - m];
    let pn_minus = if n > m { col[n - m - 1] } else { 0.0 };
    Ok((pn, derivative_from(n, m, t, pn, pn_minus)))
}

/// All `P_n^m(t)` and derivatives for `0 <= m <= n <= n_max` at a fixed `t`.
#[derive(Clone, Debug)]
pub struct LegendreTable {
    n_max: usize,
    t: f64,
    s: f64,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

#[inline]
fn tri(n: usize, m: usize) -> usize {
    n * (n + 1) / 2 + m
}

/// Builds a [`LegendreTable`].
pub fn legendre_table(n_max: usize, t: f64) -> Result<LegendreTable> {
    if n_max > MAX_LEGENDRE_DEGREE {
        return Err(MonogenicError::LegendreIndex { n: n_max, m: 0 });
    }
    check_t(t)?;
    let s = (1.0 - t * t).max(0.0).sqrt();
    let len = tri(n_max, n_max) + 1;
    let mut values = vec![0.0; len];
    let mut derivs = vec![0.0; len];
    let mut col = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        column(m, n_max, t, s, &mut col);
        for (j, &v) in col.iter().enumerate() {
            values[tri(m + j, m)] = v;
        }
        for n in m..=n_max {
            let pn_minus = if n > m { values[tri(n - 1, m)] } else { 0.0 };
            derivs[tri(n, m)] = derivative_from(n, m, t, values[tri(n, m)], pn_minus);
        }
    }
    Ok(LegendreTable { n_max, t, s, values, derivs })
}

impl LegendreTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `sqrt(1 - t²)`.
    pub fn sin(&self) -> f64 {
        self.s
    }

    /// `P_n^m`; zero for `m > n`. Panics if `n > n_max`.
    pub fn value(&self, n: usize, m: usize) -> f64 {
        assert!(n <= self.n_max, "degree {n} beyond table size {}", self.n_max);
        if m > n {
            0.0
        } else {
            self.values[tri(n, m)]
        }
    }

    /// `dP_n^m/dt`; zero for `m > n`.
    pub fn derivative(&self, n: usize, m: usize) -> f64 {
        assert!(n <= self.n_max, "degree {n} beyond table size {}", self.n_max);
        if m > n {
            0.0
        } else {
            self.derivs[tri(n, m)]
        }
    }

    /// `m P_n^m / sqrt(1-t²)` without dividing by the sine, finite at the poles:
    /// `½ [P_{n+1}^{m+1} + (n-m+1)(n-m+2) P_{n+1}^{m-1}]`. Needs `n + 1 <= n_max`.
    pub fn m_over_sin(&self, n: usize, m: usize) -> f64 {
        if m == 0 {
            return 0.0;
        }
        let c = ((n + 1) as f64 - m as f64) * ((n + 2) as f64 - m as f64);
        0.5 * (self.value(n + 1, m + 1) + c * self.value(n + 1, m - 1))
    }

    /// `sqrt(1-t²) dP_n^m/dt` from recurrence (II), finite at the poles.
    /// Needs `n + 1 <= n_max`.
    pub fn sin_derivative(&self, n: usize, m: usize) -> f64 {
        self.value(n, m + 1) - self.t * self.m_over_sin(n, m)
    }
}
