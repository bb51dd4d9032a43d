use thiserror::Error;

use crate::basis::BasisIndex;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonogenicError {
    #[error("inverse of the zero quaternion")]
    ZeroInverse,

    #[error("invalid basis index k={k}, l={l}")]
    InvalidIndex { k: i64, l: i64 },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("Legendre index out of range: n={n}, m={m}")]
    LegendreIndex { n: usize, m: usize },

    #[error("Legendre argument {0} outside [-1, 1]")]
    LegendreArgument(f64),

    #[error("spherical index out of range: n={n}, j={j}")]
    SphericalIndex { n: usize, j: usize },

    #[error("pole: function is singular at the origin")]
    Pole,

    #[error("point is within the pole exclusion zone of the spherical chart")]
    PoleProximity,

    #[error("{0} has no primitive in the outer basis")]
    NoPrimitiveInBasis(BasisIndex),

    #[error("operation is only defined for inner indices, got {0}")]
    OuterIndexUnsupported(BasisIndex),

    #[error("polynomial is not a combination of monogenic constants")]
    NotMonogenicConstant,

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("point lies on the integration sphere")]
    PointOnSphere,

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("evaluation failed: {0}")]
    Evaluation(String),
}

pub type Result<T> = std::result::Result<T, MonogenicError>;
