use crate::error::Result;
use crate::quaternion::{Point3, Quaternion};

/// A quaternion-valued function of a point in R³.
///
/// Implemented for every `Fn(Point3) -> Result<Quaternion> + Sync` closure.
pub trait Field: Sync {
    fn eval(&self, x: Point3) -> Result<Quaternion>;
}

impl<F> Field for F
where
    F: Fn(Point3) -> Result<Quaternion> + Sync,
{
    fn eval(&self, x: Point3) -> Result<Quaternion> {
        self(x)
    }
}
