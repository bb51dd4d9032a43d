//! Polynomials in `x0, x1, x2` with quaternion coefficients, used as an exact
//! oracle for the Appell polynomials and the differential operators on them.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::basis::appell::closed_coefficient;
use crate::error::Result;
use crate::quaternion::{Point3, Quaternion};

/// Exponent triple `(a, b, c)` of `x0^a x1^b x2^c`.
pub type Monomial = [u32; 3];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuatPoly {
    terms: BTreeMap<Monomial, Quaternion>,
}

impl QuatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Quaternion) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    /// The real coordinate `x_i`.
    pub fn coord(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, Quaternion::ONE);
        p
    }

    /// `x = x0 + x1 e1 + x2 e2`.
    pub fn x() -> Self {
        Self::coord(0) + Self::coord(1) * Quaternion::E1 + Self::coord(2) * Quaternion::E2
    }

    /// `x̄ = x0 - x1 e1 - x2 e2`.
    pub fn x_bar() -> Self {
        Self::coord(0) - Self::coord(1) * Quaternion::E1 - Self::coord(2) * Quaternion::E2
    }

    /// `ζ = x1 - x2 e3`.
    pub fn zeta() -> Self {
        Self::coord(1) - Self::coord(2) * Quaternion::E3
    }

    /// `A_n^l` built from its closed factorization.
    pub fn appell(n: usize, l: usize) -> Result<Self> {
        let (x, xb, z) = (Self::x(), Self::x_bar(), Self::zeta());
        let mut sum = Self::zero();
        for h in 0..=n - l.min(n) {
            let c = closed_coefficient(n, l, h)?;
            sum = sum + xb.pow(h) * x.pow(n - l - h) * Quaternion::real(c);
        }
        Ok(sum * z.pow(l))
    }

    pub fn add_term(&mut self, m: Monomial, c: Quaternion) {
        let e = self.terms.entry(m).or_insert(Quaternion::ZERO);
        *e += c;
        if *e == Quaternion::ZERO {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Quaternion)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> Quaternion {
        self.terms.get(&m).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m[0] + m[1] + m[2]).max()
    }

    /// Largest coefficient magnitude (max-abs over components).
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.max_abs()).fold(0.0, f64::max)
    }

    /// Drop coefficients with `max_abs <= tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self { terms: self.terms.iter().filter(|(_, c)| c.max_abs() > tol).map(|(m, c)| (*m, *c)).collect() }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(Quaternion::ONE);
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn eval(&self, x: Point3) -> Quaternion {
        let v = x.to_array();
        self.terms
            .iter()
            .map(|(m, c)| *c * (v[0].powi(m[0] as i32) * v[1].powi(m[1] as i32) * v[2].powi(m[2] as i32)))
            .sum()
    }

    /// Real partial derivative `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut e = *m;
                e[i] -= 1;
                out.add_term(e, *c * m[i] as f64);
            }
        }
        out
    }

    /// Left multiplication of every coefficient by `q`.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, q * *c);
        }
        out
    }

    /// `∂̄p = ∂0 p + e1 ∂1 p + e2 ∂2 p`.
    pub fn dbar(&self) -> Self {
        self.partial(0) + self.partial(1).left_mul(Quaternion::E1) + self.partial(2).left_mul(Quaternion::E2)
    }

    /// `∂p = ∂0 p - e1 ∂1 p - e2 ∂2 p`.
    pub fn d(&self) -> Self {
        self.partial(0) - self.partial(1).left_mul(Quaternion::E1) - self.partial(2).left_mul(Quaternion::E2)
    }

    /// Hypercomplex derivative `½ ∂`.
    pub fn hyper_derivative(&self) -> Self {
        self.d() * Quaternion::real(0.5)
    }

    /// `∂̄_C p = ½(∂1 p + e3 ∂2 p)`.
    pub fn dbar_c(&self) -> Self {
        (self.partial(1) + self.partial(2).left_mul(Quaternion::E3)) * Quaternion::real(0.5)
    }
}

impl Add for QuatPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for QuatPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for QuatPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for QuatPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], *ca * *cb);
            }
        }
        out
    }
}

/// Right multiplication of every coefficient.
impl Mul<Quaternion> for QuatPoly {
    type Output = Self;
    fn mul(self, q: Quaternion) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms {
            out.add_term(m, c * q);
        }
        out
    }
}
