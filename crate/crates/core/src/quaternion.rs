//! Quaternions over `f64` and the complex helpers used by the surface code.
//!
//! A quaternion is written `w + x i + y j + z k` with `ij = k`. Complex numbers
//! (`Cx`) sit inside as `w + x i`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::Error;

pub type Cx = Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_cx(c: Cx) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// `u + j v`.
    pub fn from_split(u: Cx, v: Cx) -> Self {
        Quaternion::new(u.re, u.im, v.re, -v.im)
    }

    /// `(u, v)` with `self = u + j v`. Note `j z = conj(z) j` for complex `z`.
    pub fn split_c(self) -> (Cx, Cx) {
        (Cx::new(self.w, self.x), Cx::new(self.y, -self.z))
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn inv(self) -> Result<Self, Error> {
        let n = self.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj() * (1.0 / n))
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// `e^{jθ} = cos θ + j sin θ`.
pub fn j_exp(theta: f64) -> Quaternion {
    let (s, c) = theta.sin_cos();
    Quaternion::new(c, 0.0, s, 0.0)
}

/// The gauge factor `e^{jβ/2}`.
pub fn gauge_exp(beta: f64) -> Quaternion {
    j_exp(0.5 * beta)
}

/// Real pairing `<a, b> = Re(conj(a) b)`.
pub fn pair(a: Cx, b: Cx) -> f64 {
    a.re * b.re + a.im * b.im
}

/// `e_δ(z) = exp(2πi <δ, z>)`.
pub fn freq_exp(delta: Cx, z: Cx) -> Cx {
    Cx::from_polar(1.0, 2.0 * PI * pair(delta, z))
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Cx> for Quaternion {
    type Output = Quaternion;
    fn mul(self, c: Cx) -> Quaternion {
        self * Quaternion::from_cx(c)
    }
}

impl Mul<Quaternion> for Cx {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        Quaternion::from_cx(self) * q
    }
}

impl From<Cx> for Quaternion {
    fn from(c: Cx) -> Self {
        Quaternion::from_cx(c)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}
