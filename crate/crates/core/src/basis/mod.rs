//! Inner and outer solid spherical monogenics in two normalizations.

pub mod appell;
pub mod index;
pub mod outer;
pub mod spherical;

pub use appell::{appell_column, appell_inner, closed_coefficient, CLOSED_FORM_MAX_DEGREE, appell_inner_closed, appell_inner_recur, appell_step, Recurrence};
pub use index::{BasisFamily, BasisIndex, Side, MAX_DEGREE};
pub use outer::{
    appell_outer, appell_outer_x0_route, cauchy_kernel, family_convert, inner_factor, kelvin, outer_factor,
    phi_inner, phi_outer,
};
pub use spherical::{
    appell_inner_spherical, coeff_functions, phi_inner_spherical, solid_norm, solid_xy, spherical_xy, CoeffFunctions,
    SphericalKind,
};

use crate::error::Result;
use crate::field::Field;
use crate::quaternion::{Point3, Quaternion};

/// Evaluate one basis element of either family and side.
pub fn eval_basis(family: BasisFamily, idx: BasisIndex, x: Point3) -> Result<Quaternion> {
    let (n, l) = (idx.degree(), idx.l());
    match (family, idx.is_inner()) {
        (BasisFamily::AppellA, true) => appell_inner(n, l, x),
        (BasisFamily::OrthonormalPhi, true) => phi_inner(n, l, x),
        (BasisFamily::AppellA, false) => appell_outer(n, l, x),
        (BasisFamily::OrthonormalPhi, false) => phi_outer(n, l, x),
    }
}

/// A basis element as a [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub family: BasisFamily,
    pub index: BasisIndex,
}

impl BasisElement {
    pub fn new(family: BasisFamily, index: BasisIndex) -> Self {
        Self { family, index }
    }

    pub fn phi(k: i32, l: u32) -> Result<Self> {
        Ok(Self::new(BasisFamily::OrthonormalPhi, BasisIndex::new(k, l)?))
    }

    pub fn appell(k: i32, l: u32) -> Result<Self> {
        Ok(Self::new(BasisFamily::AppellA, BasisIndex::new(k, l)?))
    }
}

impl Field for BasisElement {
    fn eval(&self, x: Point3) -> Result<Quaternion> {
        eval_basis(self.family, self.index, x)
    }
}
