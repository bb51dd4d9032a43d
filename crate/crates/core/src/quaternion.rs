//! Real quaternions and reduced quaternions (points of R^3).
//!
//! The basis `{e0, e1, e2, e3}` obeys `e_i e_j + e_j e_i = -2 δ_ij` for
//! `i, j ∈ {1, 2, 3}` and `e1 e2 = e3`. Products are never commutative in
//! general, so every routine in the crate keeps factor order explicit.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{MonogenicError, Result};

/// A real quaternion `a0 + a1 e1 + a2 e2 + a3 e3`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub const fn real(a0: f64) -> Self {
        Self::new(a0, 0.0, 0.0, 0.0)
    }

    /// Basis unit `e_i`, `i ∈ {0, 1, 2, 3}`.
    pub fn unit(i: usize) -> Self {
        match i {
            0 => Self::ONE,
            1 => Self::E1,
            2 => Self::E2,
            3 => Self::E3,
            _ => panic!("quaternion unit index {i} out of range"),
        }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    /// Scalar part `Sc(a)`.
    pub fn sc(self) -> f64 {
        self.a0
    }

    /// Vector part `Vec(a)`.
    pub fn vec(self) -> Self {
        Self::new(0.0, self.a1, self.a2, self.a3)
    }

    pub fn conj(self) -> Self {
        Self::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    pub fn norm(self) -> f64 {
        // hypot chain keeps tiny and huge magnitudes representable
        self.a0.hypot(self.a1).hypot(self.a2.hypot(self.a3))
    }

    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(MonogenicError::ZeroInverse);
        }
        Ok(self.conj() / n2)
    }

    /// The involution `f0 - f1 e1 - f2 e2 + f3 e3` that turns a monogenic
    /// value into an anti-monogenic one when applied pointwise.
    pub fn hat(self) -> Self {
        Self::new(self.a0, -self.a1, -self.a2, self.a3)
    }

    pub fn powi(self, k: u32) -> Self {
        let mut acc = Self::ONE;
        let mut base = self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn max_abs(self) -> f64 {
        self.a0.abs().max(self.a1.abs()).max(self.a2.abs()).max(self.a3.abs())
    }

    pub fn is_finite(self) -> bool {
        self.a0.is_finite() && self.a1.is_finite() && self.a2.is_finite() && self.a3.is_finite()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}e1 {:+}e2 {:+}e3",
            self.a0, self.a1, self.a2, self.a3
        )
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self::new(self.a0 + b.a0, self.a1 + b.a1, self.a2 + b.a2, self.a3 + b.a3)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self::new(self.a0 - b.a0, self.a1 - b.a1, self.a2 - b.a2, self.a3 - b.a3)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
            a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
            a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
            a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.a0 / s, self.a1 / s, self.a2 / s, self.a3 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}

impl MulAssign<f64> for Quaternion {
    fn mul_assign(&mut self, s: f64) {
        *self = *self * s;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, q| acc + q)
    }
}

impl From<f64> for Quaternion {
    fn from(a0: f64) -> Self {
        Self::real(a0)
    }
}

/// A reduced quaternion `x0 + x1 e1 + x2 e2`, i.e. a point of R^3.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

/// Spherical coordinates `x0 = r cos θ`, `x1 = r sin θ cos φ`, `x2 = r sin θ sin φ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spherical {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Point3 {
    pub const ORIGIN: Self = Self::new(0.0, 0.0, 0.0);

    pub const fn new(x0: f64, x1: f64, x2: f64) -> Self {
        Self { x0, x1, x2 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }

    pub fn quat(self) -> Quaternion {
        Quaternion::new(self.x0, self.x1, self.x2, 0.0)
    }

    /// `x̄ = x0 - x1 e1 - x2 e2`, again a reduced quaternion.
    pub fn conj(self) -> Self {
        Self::new(self.x0, -self.x1, -self.x2)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2
    }

    pub fn norm(self) -> f64 {
        self.x0.hypot(self.x1).hypot(self.x2)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s)
    }

    /// Coordinate `i ∈ {0, 1, 2}`.
    pub fn coord(self, i: usize) -> f64 {
        match i {
            0 => self.x0,
            1 => self.x1,
            2 => self.x2,
            _ => panic!("coordinate index {i} out of range"),
        }
    }

    /// Copy with coordinate `i` shifted by `h`.
    pub fn shifted(self, i: usize, h: f64) -> Self {
        let mut a = self.to_array();
        a[i] += h;
        Self::from_array(a)
    }

    /// `ζ = x1 - x2 e3`, the generator of the monogenic constants.
    pub fn zeta(self) -> Quaternion {
        Quaternion::new(self.x1, 0.0, 0.0, -self.x2)
    }

    /// Spherical coordinates; the origin maps to `r = θ = φ = 0`.
    pub fn spherical(self) -> Spherical {
        let r = self.norm();
        if r == 0.0 {
            return Spherical { r, theta: 0.0, phi: 0.0 };
        }
        let rho = self.x1.hypot(self.x2);
        Spherical {
            r,
            theta: rho.atan2(self.x0),
            phi: self.x2.atan2(self.x1),
        }
    }

    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::new(r * ct, r * st * cp, r * st * sp)
    }
}

impl Add for Point3 {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self::new(self.x0 + b.x0, self.x1 + b.x1, self.x2 + b.x2)
    }
}

impl Sub for Point3 {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self::new(self.x0 - b.x0, self.x1 - b.x1, self.x2 - b.x2)
    }
}

impl From<Point3> for Quaternion {
    fn from(x: Point3) -> Self {
        x.quat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn unit_table() {
        let e = [Quaternion::ONE, Quaternion::E1, Quaternion::E2, Quaternion::E3];
        assert_eq!(e[1] * e[2], e[3]);
        assert_eq!(e[2] * e[3], e[1]);
        assert_eq!(e[3] * e[1], e[2]);
        for i in 1..4 {
            for j in 1..4 {
                let anti = e[i] * e[j] + e[j] * e[i];
                let expect = if i == j { Quaternion::real(-2.0) } else { Quaternion::ZERO };
                assert_eq!(anti, expect, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn product_by_table_expansion() {
        let a = Quaternion::ONE + Quaternion::E1;
        let b = Quaternion::ONE + Quaternion::E2;
        assert_eq!(a * b, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_norm_inv() {
        assert_eq!((Quaternion::ONE + Quaternion::E1).conj(), Quaternion::new(1.0, -1.0, 0.0, 0.0));
        assert!((Quaternion::new(1.0, 1.0, 1.0, 1.0).norm() - 2.0).abs() < 1e-15);
        let inv = (Quaternion::E1 * 2.0).inv().unwrap();
        assert_eq!(inv, Quaternion::new(0.0, -0.5, 0.0, 0.0));
        assert_eq!(Quaternion::ZERO.inv(), Err(MonogenicError::ZeroInverse));
        assert_eq!(Quaternion::new(1.0, 2.0, 3.0, 4.0).sc(), 1.0);
        assert_eq!(Quaternion::new(1.0, 2.0, 3.0, 4.0).vec(), Quaternion::new(0.0, 2.0, 3.0, 4.0));
    }

    #[test]
    fn hat_definition() {
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).hat(), Quaternion::new(1.0, -1.0, -1.0, 1.0));
    }

    #[test]
    fn powi_matches_repeated_product() {
        let q = Quaternion::new(0.3, -0.2, 0.5, 0.1);
        let mut acc = Quaternion::ONE;
        for k in 0..7 {
            assert!(close(q.powi(k), acc, 1e-15));
            acc = acc * q;
        }
    }

    #[test]
    fn spherical_roundtrip() {
        let x = Point3::new(0.3, -0.4, 0.5);
        let s = x.spherical();
        let y = Point3::from_spherical(s.r, s.theta, s.phi);
        assert!((x - y).norm() < 1e-15);
        assert_eq!(Point3::ORIGIN.spherical().r, 0.0);
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from_array)
    }

    fn point() -> impl Strategy<Value = Point3> {
        prop::array::uniform3(-10.0f64..10.0).prop_map(Point3::from_array)
    }

    proptest! {
        #[test]
        fn conj_reverses_products(a in quat(), b in quat()) {
            let lhs = (a * b).conj();
            let rhs = b.conj() * a.conj();
            prop_assert!(close(lhs, rhs, 1e-13 * (1.0 + a.norm() * b.norm())));
        }

        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(1e-300));
        }

        #[test]
        fn norm_square_is_scalar(a in quat()) {
            let p = a * a.conj();
            prop_assert!((p.a0 - a.norm_sqr()).abs() <= 1e-14 * a.norm_sqr().max(1.0));
            prop_assert!(p.vec().max_abs() <= 1e-14 * a.norm_sqr().max(1.0));
        }

        #[test]
        fn inverse_both_sides(a in quat()) {
            prop_assume!(a.norm() > 1e-6);
            let inv = a.inv().unwrap();
            prop_assert!(close(inv * a, Quaternion::ONE, 1e-13));
            prop_assert!(close(a * inv, Quaternion::ONE, 1e-13));
        }

        #[test]
        fn unit_element(a in quat()) {
            prop_assert_eq!(Quaternion::ONE * a, a);
            prop_assert_eq!(a * Quaternion::ONE, a);
        }

        #[test]
        fn associative(a in quat(), b in quat(), c in quat()) {
            let scale = 1.0 + a.norm() * b.norm() * c.norm();
            prop_assert!(close((a * b) * c, a * (b * c), 1e-13 * scale));
        }

        #[test]
        fn hat_is_involution(a in quat()) {
            prop_assert_eq!(a.hat().hat(), a);
        }

        #[test]
        fn point_conj_commutes_with_promotion(x in point()) {
            prop_assert_eq!(x.conj().quat(), x.quat().conj());
            prop_assert_eq!(x.quat().a3, 0.0);
        }
    }
}
