use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MonogenicError, Result};

/// Largest homogeneity degree `n` (inner `k = n`, outer `k = -(n+2)`) supported.
pub const MAX_DEGREE: usize = 64;

/// Inner (`k >= 0`, polynomial) or outer (`k <= -2`, singular at 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Inner,
    Outer,
}

/// The two normalizations of the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisFamily {
    /// Orthonormal in L² of the ball (inner) or of its exterior (outer).
    OrthonormalPhi,
    /// Appell normalization: `∂₀ A_k^l = k A_{k-1}^l`.
    AppellA,
}

impl BasisFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisFamily::OrthonormalPhi => "phi",
            BasisFamily::AppellA => "appell",
        }
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signed homogeneity degree `k ∈ Z \ {-1}` and column `0 <= l <= |k+1| - 1`.
///
/// Ordering is `(k, l)` lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    k: i32,
    l: u32,
}

impl BasisIndex {
    pub fn new(k: i32, l: u32) -> Result<Self> {
        let invalid = MonogenicError::InvalidIndex { k: k as i64, l: l as i64 };
        if k == -1 {
            return Err(invalid);
        }
        let dim = Self::dim(k);
        if l as i64 >= dim as i64 {
            return Err(invalid);
        }
        let idx = Self { k, l };
        if idx.degree() > MAX_DEGREE {
            return Err(MonogenicError::DegreeTooLarge { degree: idx.degree(), max: MAX_DEGREE });
        }
        Ok(idx)
    }

    /// Inner index of degree `n`.
    pub fn inner(n: usize, l: usize) -> Result<Self> {
        Self::new(n as i32, l as u32)
    }

    /// Outer index `k = -(n+2)`.
    pub fn outer(n: usize, l: usize) -> Result<Self> {
        Self::new(-(n as i32) - 2, l as u32)
    }

    /// Number of columns at degree `k`: `|k+1|`.
    pub fn dim(k: i32) -> u32 {
        (k + 1).unsigned_abs()
    }

    /// All valid indices with the given `k`, in `l` order.
    pub fn row(k: i32) -> Vec<Self> {
        if k == -1 {
            return Vec::new();
        }
        (0..Self::dim(k)).filter_map(|l| Self::new(k, l).ok()).collect()
    }

    /// All valid indices with `k_min <= k <= k_max`, sorted.
    pub fn range(k_min: i32, k_max: i32) -> Vec<Self> {
        (k_min..=k_max).flat_map(Self::row).collect()
    }

    pub fn k(self) -> i32 {
        self.k
    }

    pub fn l(self) -> usize {
        self.l as usize
    }

    pub fn side(self) -> Side {
        if self.k >= 0 {
            Side::Inner
        } else {
            Side::Outer
        }
    }

    pub fn is_inner(self) -> bool {
        self.k >= 0
    }

    /// Unsigned degree `n`: `k` for inner, `-(k+2)` for outer.
    pub fn degree(self) -> usize {
        if self.k >= 0 {
            self.k as usize
        } else {
            (-self.k - 2) as usize
        }
    }

    /// Monogenic constant (`l = k`, inner) or its Kelvin image (`l = n`, outer).
    pub fn is_diagonal(self) -> bool {
        self.l() == self.degree()
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.k, self.l)
    }
}
