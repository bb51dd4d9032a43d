//! Orthogonal bases of inner and outer solid spherical monogenics over the
//! real quaternions, the hypercomplex derivative and primitive acting on them,
//! and Fourier, Taylor and Laurent expansions on balls, exteriors and shells.

pub mod basis;
pub mod calculus;
pub mod error;
pub mod field;
pub mod legendre;
pub mod poly;
pub mod quadrature;
pub mod quaternion;
pub mod series;
pub mod special;

pub use basis::{eval_basis, BasisElement, BasisFamily, BasisIndex, Side, MAX_DEGREE};
pub use error::{MonogenicError, Result};
pub use field::Field;
pub use quadrature::{Domain, QuadratureRule};
pub use quaternion::{Point3, Quaternion, Spherical};
pub use series::{SeriesExpansion, SeriesKind};
