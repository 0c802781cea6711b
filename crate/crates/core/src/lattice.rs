//! Rank-2 lattices in the plane, their duals under `<a, b> = Re(conj(a) b)`,
//! reduction modulo the dual lattice and point enumeration on disks/circles.

use std::cmp::Ordering;

use crate::quaternion::{pair, Cx};
use crate::Error;

/// Membership tolerance, in dual-basis coordinates.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice {
    pub omega1: Cx,
    pub omega2: Cx,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualLattice {
    pub eta1: Cx,
    pub eta2: Cx,
}

fn det(a: Cx, b: Cx) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Basis `(e1, e2)` with `<e_a, v_b> = δ_ab`.
fn pairing_dual(v1: Cx, v2: Cx) -> Result<(Cx, Cx), Error> {
    let d = det(v1, v2);
    let scale = v1.norm() * v2.norm();
    if !(d.abs() > 1e-14 * scale) || !d.is_finite() {
        return Err(Error::DegenerateLattice);
    }
    // rows of the inverse of the column matrix [v1 v2]
    let e1 = Cx::new(v2.im, -v2.re) / d;
    let e2 = Cx::new(-v1.im, v1.re) / d;
    Ok((e1, e2))
}

impl Lattice {
    pub fn new(omega1: Cx, omega2: Cx) -> Result<Self, Error> {
        pairing_dual(omega1, omega2)?;
        Ok(Lattice { omega1, omega2 })
    }

    /// `ℤ ⊕ iℤ`.
    pub fn square() -> Self {
        Lattice {
            omega1: Cx::new(1.0, 0.0),
            omega2: Cx::new(0.0, 1.0),
        }
    }

    pub fn dual(&self) -> DualLattice {
        dual_basis(self).expect("lattice validated on construction")
    }

    pub fn point(&self, m: i64, n: i64) -> Cx {
        self.omega1 * m as f64 + self.omega2 * n as f64
    }
}

pub fn dual_basis(lattice: &Lattice) -> Result<DualLattice, Error> {
    let (eta1, eta2) = pairing_dual(lattice.omega1, lattice.omega2)?;
    Ok(DualLattice { eta1, eta2 })
}

impl DualLattice {
    /// The lattice this one is dual to.
    pub fn primal(&self) -> Lattice {
        let (omega1, omega2) = pairing_dual(self.eta1, self.eta2).expect("non-degenerate");
        Lattice { omega1, omega2 }
    }

    /// Coordinates `(a, b)` with `z = a eta1 + b eta2`.
    pub fn coords(&self, z: Cx) -> (f64, f64) {
        let p = self.primal();
        (pair(p.omega1, z), pair(p.omega2, z))
    }

    pub fn point(&self, m: i64, n: i64) -> Cx {
        self.eta1 * m as f64 + self.eta2 * n as f64
    }

    pub fn is_dual_point(&self, z: Cx, tol: f64) -> bool {
        let (a, b) = self.coords(z);
        (a - a.round()).abs() <= tol && (b - b.round()).abs() <= tol
    }

    /// Representative of `b + Γ*` with coordinates in `[0, 1)`.
    pub fn reduce(&self, b: Cx) -> Cx {
        let (x, y) = self.coords(b);
        let fx = snap_frac(x);
        let fy = snap_frac(y);
        self.eta1 * fx + self.eta2 * fy
    }

    /// Points of `Γ* + shift` within `radius` of `center`, sorted.
    pub fn enum_translated_disk(&self, shift: Cx, center: Cx, radius: f64) -> Vec<Cx> {
        self.candidates(shift, center, radius + MEMBERSHIP_TOL)
            .into_iter()
            .filter(|p| (p - center).norm() <= radius + MEMBERSHIP_TOL)
            .collect()
    }

    /// Points of `Γ* + shift` at distance `radius ± tol` from `center`, sorted.
    pub fn enum_translated_circle(&self, shift: Cx, center: Cx, radius: f64, tol: f64) -> Vec<Cx> {
        self.candidates(shift, center, radius + tol)
            .into_iter()
            .filter(|p| ((p - center).norm() - radius).abs() <= tol)
            .collect()
    }

    fn candidates(&self, shift: Cx, center: Cx, radius: f64) -> Vec<Cx> {
        let p = self.primal();
        let (a, b) = self.coords(center - shift);
        // |<omega_a, v>| <= |omega_a| |v| bounds each coordinate
        let ra = p.omega1.norm() * radius;
        let rb = p.omega2.norm() * radius;
        let (m0, m1) = ((a - ra).floor() as i64, (a + ra).ceil() as i64);
        let (n0, n1) = ((b - rb).floor() as i64, (b + rb).ceil() as i64);
        let mut out = Vec::new();
        for m in m0..=m1 {
            for n in n0..=n1 {
                out.push(shift + self.point(m, n));
            }
        }
        sort_points(&mut out);
        out
    }
}

fn snap_frac(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= MEMBERSHIP_TOL {
        return 0.0;
    }
    x - x.floor()
}

/// Lexicographic `(Re, Im)` order, treating coordinates within 1e-9 as equal.
pub fn cmp_points(a: &Cx, b: &Cx) -> Ordering {
    if (a.re - b.re).abs() > MEMBERSHIP_TOL {
        return a.re.total_cmp(&b.re);
    }
    if (a.im - b.im).abs() > MEMBERSHIP_TOL {
        return a.im.total_cmp(&b.im);
    }
    Ordering::Equal
}

pub fn sort_points(v: &mut [Cx]) {
    v.sort_by(cmp_points);
}
