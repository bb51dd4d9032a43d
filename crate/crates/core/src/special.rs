//! Factorial helpers evaluated in log space so degree-64 coefficients stay finite.

use std::sync::OnceLock;

const LN_FACT_LEN: usize = 512;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // compensated running sum of ln k
        let mut t = Vec::with_capacity(LN_FACT_LEN);
        let (mut acc, mut comp) = (0.0f64, 0.0f64);
        t.push(0.0);
        for k in 1..LN_FACT_LEN {
            let v = (k as f64).ln();
            let s = acc + v;
            comp += if acc.abs() >= v.abs() { (acc - s) + v } else { (v - s) + acc };
            acc = s;
            t.push(acc + comp);
        }
        t
    })
}

/// `ln(k!)`.
pub fn ln_factorial(k: usize) -> f64 {
    ln_factorial_table()[k]
}

/// `k!` as a float; exact up to `k = 22`, overflows past 170.
pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `a! / b!` as a product of at most `|a - b|` factors.
pub fn factorial_ratio(a: usize, b: usize) -> f64 {
    if a >= b {
        (b + 1..=a).fold(1.0, |acc, i| acc * i as f64)
    } else {
        1.0 / factorial_ratio(b, a)
    }
}
