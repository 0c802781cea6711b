//! Hamiltonian stationary Lagrangian tori
//! `f = e^{jβ/2} Σ_δ (1 − k λ_δ) e_δ c_δ`, `λ_δ = 2δ/β₀`, `β = 2π<β₀, z>`.

use std::f64::consts::PI;

use crate::lattice::{sort_points, DualLattice, Lattice, MEMBERSHIP_TOL};
use crate::quaternion::{freq_exp, gauge_exp, j_exp, pair, Cx, Quaternion};
use crate::Error;

const BRANCH_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Term {
    pub delta: Cx,
    pub c: Quaternion,
    /// `1 − k λ_δ`, cached.
    factor: Quaternion,
}

#[derive(Clone, Debug)]
pub struct HslTorus {
    lattice: Lattice,
    dual: DualLattice,
    beta0: Cx,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug)]
pub struct SurfaceJet {
    pub f: Quaternion,
    pub fx: Quaternion,
    pub fy: Quaternion,
    pub g: Quaternion,
    pub beta: f64,
    pub n: Quaternion,
    pub r: Quaternion,
    pub h: Quaternion,
}

/// The frequencies `Γ*_{β₀}` and the half set `Γ*_{β₀,+}`.
#[derive(Clone, Debug)]
pub struct Beta0Freqs {
    /// All of `Γ* + β₀/2` on the circle `|δ| = |β₀|/2`, including `±β₀/2`.
    pub circle: Vec<Cx>,
    /// `circle` without `±β₀/2`.
    pub freqs: Vec<Cx>,
    /// The members of `freqs` with `Im(δ/β₀) > 0`.
    pub plus: Vec<Cx>,
}

pub(crate) fn check_beta0(dual: &DualLattice, beta0: Cx) -> Result<(), Error> {
    if beta0.norm() == 0.0 {
        return Err(Error::ZeroBeta0);
    }
    if !dual.is_dual_point(beta0, MEMBERSHIP_TOL) {
        return Err(Error::Beta0NotInDualLattice(beta0));
    }
    Ok(())
}

pub fn admissible_freqs_beta0(lattice: &Lattice, beta0: Cx) -> Result<Beta0Freqs, Error> {
    let dual = lattice.dual();
    check_beta0(&dual, beta0)?;
    let half = beta0 * 0.5;
    let circle = dual.enum_translated_circle(half, Cx::new(0.0, 0.0), half.norm(), MEMBERSHIP_TOL);
    let freqs: Vec<Cx> = circle
        .iter()
        .copied()
        .filter(|d| (d - half).norm() > MEMBERSHIP_TOL && (d + half).norm() > MEMBERSHIP_TOL)
        .collect();
    let plus = freqs
        .iter()
        .copied()
        .filter(|d| (d / beta0).im > 0.0)
        .collect();
    Ok(Beta0Freqs {
        circle,
        freqs,
        plus,
    })
}

fn lambda0(delta: Cx, beta0: Cx) -> Cx {
    delta * 2.0 / beta0
}

fn factor(lambda: Cx) -> Quaternion {
    Quaternion::ONE - Quaternion::K * lambda
}

impl HslTorus {
    /// Validated constructor: every `δ` must lie in `Γ*_{β₀,+}`.
    pub fn new(lattice: Lattice, beta0: Cx, coeffs: Vec<(Cx, Quaternion)>) -> Result<Self, Error> {
        let adm = admissible_freqs_beta0(&lattice, beta0)?;
        for &(d, _) in &coeffs {
            if !adm.plus.iter().any(|p| (p - d).norm() <= MEMBERSHIP_TOL) {
                return Err(Error::FrequencyNotAdmissible(d));
            }
        }
        if coeffs.iter().all(|(_, c)| c.norm() == 0.0) {
            return Err(Error::AllZeroCoefficients);
        }
        Ok(Self::new_unchecked(lattice, beta0, coeffs))
    }

    /// No admissibility checks. The result need not be conformal.
    pub fn new_unchecked(lattice: Lattice, beta0: Cx, coeffs: Vec<(Cx, Quaternion)>) -> Self {
        let terms = coeffs
            .into_iter()
            .map(|(delta, c)| Term {
                delta,
                c,
                factor: factor(lambda0(delta, beta0)),
            })
            .collect();
        HslTorus {
            dual: lattice.dual(),
            lattice,
            beta0,
            terms,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dual(&self) -> &DualLattice {
        &self.dual
    }

    pub fn beta0(&self) -> Cx {
        self.beta0
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn beta(&self, z: Cx) -> f64 {
        2.0 * PI * pair(self.beta0, z)
    }

    pub fn f(&self, z: Cx) -> Quaternion {
        gauge_exp(self.beta(z)) * self.sum(z, |_| Cx::new(1.0, 0.0))
    }

    /// `Σ (1 − kλ) e_δ(z) m(δ) c` for a complex weight `m`.
    fn sum(&self, z: Cx, m: impl Fn(Cx) -> Cx) -> Quaternion {
        let mut s = Quaternion::ZERO;
        for t in &self.terms {
            s += t.factor * (freq_exp(t.delta, z) * m(t.delta)) * t.c;
        }
        s
    }

    /// Analytic partials `(fx, fy)`.
    pub fn df(&self, z: Cx) -> (Quaternion, Quaternion) {
        let gauge = gauge_exp(self.beta(z));
        let s = self.sum(z, |_| Cx::new(1.0, 0.0));
        let sx = self.sum(z, |d| Cx::new(0.0, 2.0 * PI * d.re));
        let sy = self.sum(z, |d| Cx::new(0.0, 2.0 * PI * d.im));
        // ∂ e^{jβ/2} = j (∂β/2) e^{jβ/2}, ∂β/2 = π Re β₀ resp. π Im β₀
        let fx = Quaternion::J * (PI * self.beta0.re) * gauge * s + gauge * sx;
        let fy = Quaternion::J * (PI * self.beta0.im) * gauge * s + gauge * sy;
        (fx, fy)
    }

    /// `g = e^{−jβ/2} fx`.
    pub fn g(&self, z: Cx) -> Quaternion {
        gauge_exp(-self.beta(z)) * self.df(z).0
    }

    pub fn left_normal(&self, z: Cx) -> Quaternion {
        j_exp(self.beta(z)) * Quaternion::I
    }

    pub fn eval_jet(&self, z: Cx) -> Result<SurfaceJet, Error> {
        let beta = self.beta(z);
        let (fx, fy) = self.df(z);
        let g = gauge_exp(-beta) * fx;
        if g.norm() < BRANCH_TOL {
            return Err(Error::BranchPoint(z));
        }
        let gi = g.inv()?;
        let n = j_exp(beta) * Quaternion::I;
        let r = -(gi * Quaternion::I * g);
        let h = gi * Quaternion::from_cx(self.beta0.conj()) * gauge_exp(beta) * Quaternion::K * PI;
        Ok(SurfaceJet {
            f: self.f(z),
            fx,
            fy,
            g,
            beta,
            n,
            r,
            h,
        })
    }
}

/// `f(x, y) = (1/r₁) e^{2πj r₁ x} + i (1/r₂) e^{2πj r₂ y}` on
/// `Γ = (1/r₁)ℤ ⊕ (i/r₂)ℤ`, `β₀ = r₁ − i r₂`.
pub fn homogeneous_target(r1: f64, r2: f64, z: Cx) -> Quaternion {
    j_exp(2.0 * PI * r1 * z.re) * (1.0 / r1)
        + Quaternion::I * j_exp(2.0 * PI * r2 * z.im) * (1.0 / r2)
}

/// The homogeneous torus as a one-term `HslTorus`.
///
/// Only `δ = (r₁ + i r₂)/2` lies in the half set; its coefficient is found by
/// solving `f(z) = e^{jβ/2}(1 − kλ) e_δ(z) c` at two points.
pub fn homogeneous_torus(r1: f64, r2: f64) -> HslTorus {
    assert!(r1 > 0.0 && r2 > 0.0, "homogeneous torus needs r1, r2 > 0");
    let lattice =
        Lattice::new(Cx::new(1.0 / r1, 0.0), Cx::new(0.0, 1.0 / r2)).expect("rectangular");
    let beta0 = Cx::new(r1, -r2);
    let delta = Cx::new(r1, r2) * 0.5;
    let fac = factor(lambda0(delta, beta0));
    let solve = |z: Cx| {
        let beta = 2.0 * PI * pair(beta0, z);
        let lhs = gauge_exp(beta) * fac * freq_exp(delta, z);
        lhs.inv().expect("unit factors") * homogeneous_target(r1, r2, z)
    };
    let c = solve(Cx::new(0.0, 0.0));
    let c2 = solve(Cx::new(0.3 / r1, 0.7 / r2));
    debug_assert!((c - c2).norm() < 1e-12, "coefficient is not constant");
    HslTorus::new(lattice, beta0, vec![(delta, c)]).expect("admissible by construction")
}

pub fn clifford_torus() -> HslTorus {
    homogeneous_torus(1.0, 1.0)
}

/// `Γ = ℤ[i]`, `β₀ = 3 − i`, unit coefficients at `(−1+3i)/2` and `(3+i)/2`.
pub fn castro_urbano_torus() -> HslTorus {
    HslTorus::new(
        Lattice::square(),
        Cx::new(3.0, -1.0),
        vec![
            (Cx::new(-0.5, 1.5), Quaternion::ONE),
            (Cx::new(1.5, 0.5), Quaternion::ONE),
        ],
    )
    .expect("admissible by construction")
}

/// Sorted copy of the torus frequencies.
pub fn frequencies(t: &HslTorus) -> Vec<Cx> {
    let mut v: Vec<Cx> = t.terms.iter().map(|t| t.delta).collect();
    sort_points(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cx {
        Cx::new(re, im)
    }

    fn grid(l: &Lattice, n: usize) -> Vec<Cx> {
        let mut v = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let s = (a as f64 + 0.31) / n as f64;
                let t = (b as f64 + 0.17) / n as f64;
                v.push(l.omega1 * s + l.omega2 * t);
            }
        }
        v
    }

    #[test]
    fn clifford_freqs() {
        let a = admissible_freqs_beta0(&Lattice::square(), c(1.0, -1.0)).unwrap();
        assert_eq!(a.freqs.len(), 2);
        assert!((a.freqs[0] - c(-0.5, -0.5)).norm() < 1e-12);
        assert!((a.freqs[1] - c(0.5, 0.5)).norm() < 1e-12);
        assert_eq!(a.plus.len(), 1);
        assert!((a.plus[0] - c(0.5, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn homogeneous_freqs_generic() {
        let (r1, r2) = (2.5, 1.5);
        let l = Lattice::new(c(1.0 / r1, 0.0), c(0.0, 1.0 / r2)).unwrap();
        let a = admissible_freqs_beta0(&l, c(r1, -r2)).unwrap();
        assert_eq!(a.freqs.len(), 2);
        assert!((a.freqs[0] + c(r1, r2) * 0.5).norm() < 1e-12);
        assert!((a.freqs[1] - c(r1, r2) * 0.5).norm() < 1e-12);
    }

    #[test]
    fn beta0_validation() {
        let l = Lattice::square();
        assert!(matches!(
            admissible_freqs_beta0(&l, c(0.5, 0.0)),
            Err(Error::Beta0NotInDualLattice(_))
        ));
        assert!(matches!(
            admissible_freqs_beta0(&l, c(0.0, 0.0)),
            Err(Error::ZeroBeta0)
        ));
    }

    #[test]
    fn homogeneous_matches_target() {
        for &(r1, r2) in &[(1.0, 1.0), (2.0, 1.0), (1.3, 0.8)] {
            let t = homogeneous_torus(r1, r2);
            assert_eq!(t.beta0(), c(r1, -r2));
            for z in grid(t.lattice(), 12) {
                assert!((t.f(z) - homogeneous_target(r1, r2, z)).norm() < 1e-10);
            }
            assert!(
                (t.f(c(0.0, 0.0)) - Quaternion::new(1.0 / r1, 1.0 / r2, 0.0, 0.0)).norm() < 1e-12
            );
        }
    }

    #[test]
    fn r2_coefficient() {
        let t = homogeneous_torus(2.0, 1.0);
        let cc = t.terms()[0].c;
        assert!((cc - Quaternion::new(0.25, 0.5, 0.5, -0.25)).norm() < 1e-14);
    }

    #[test]
    fn clifford_norm_constant() {
        let t = clifford_torus();
        for z in grid(t.lattice(), 10) {
            assert!((t.f(z).norm() - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn r2_g_closed_form() {
        // df = 2π e^{πj(2x−y)} dz j e^{πj(2x+y)}
        let t = homogeneous_torus(2.0, 1.0);
        for z in grid(t.lattice(), 8) {
            let want = Quaternion::J * j_exp(PI * (2.0 * z.re + z.im)) * (2.0 * PI);
            let jet = t.eval_jet(z).unwrap();
            assert!((jet.g - want).norm() < 1e-11);
            assert!((j_exp(PI * (2.0 * z.re - z.im)) - gauge_exp(jet.beta)).norm() < 1e-12);
        }
    }

    #[test]
    fn jet_identities() {
        for t in [
            clifford_torus(),
            homogeneous_torus(2.0, 1.0),
            castro_urbano_torus(),
        ] {
            for z in grid(t.lattice(), 9) {
                let j = t.eval_jet(z).unwrap();
                let gauge = gauge_exp(j.beta);
                assert!((j.fx - gauge * j.g).norm() < 1e-10 * (1.0 + j.g.norm()));
                assert!((j.fy - gauge * Quaternion::I * j.g).norm() < 1e-10 * (1.0 + j.g.norm()));
                assert!((j.fy - j.n * j.fx).norm() < 1e-10 * j.fx.norm());
                assert!((j.n * j.n + Quaternion::ONE).norm() < 1e-14);
                assert!((j.r * j.r + Quaternion::ONE).norm() < 1e-12);
                assert!((j.r * j.h - j.h * j.n).norm() < 1e-10 * (1.0 + j.h.norm()));
                // *df = −df R
                assert!((j.fy + j.fx * j.r).norm() < 1e-10 * j.fx.norm());
            }
        }
    }

    #[test]
    fn periodic() {
        for t in [
            clifford_torus(),
            homogeneous_torus(2.0, 1.0),
            castro_urbano_torus(),
        ] {
            let l = *t.lattice();
            for z in grid(&l, 5) {
                assert!((t.f(z + l.omega1) - t.f(z)).norm() < 1e-10);
                assert!((t.f(z + l.omega2) - t.f(z)).norm() < 1e-10);
                let db = (t.beta(z + l.omega1) - t.beta(z)) / (2.0 * PI);
                assert!((db - db.round()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn castro_urbano_value_at_origin() {
        let f0 = castro_urbano_torus().f(c(0.0, 0.0));
        assert!((f0 - Quaternion::new(2.0, 0.0, -1.4, -0.2)).norm() < 1e-14);
    }

    #[test]
    fn castro_urbano_reference_g() {
        // g = (4π/5)(3+i+3j−k) e^{πi(3y−x)} + (3π/5)(3+i+j+3k) e^{πi(3x+y)}
        let t = castro_urbano_torus();
        for z in grid(t.lattice(), 6) {
            let want = Quaternion::new(3.0, 1.0, 3.0, -1.0)
                * (4.0 * PI / 5.0)
                * freq_exp(c(-0.5, 1.5), z)
                + Quaternion::new(3.0, 1.0, 1.0, 3.0) * (3.0 * PI / 5.0) * freq_exp(c(1.5, 0.5), z);
            assert!((t.g(z) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_inadmissible() {
        let r = HslTorus::new(
            Lattice::square(),
            c(1.0, -1.0),
            vec![(c(-0.5, -0.5), Quaternion::ONE)],
        );
        assert!(matches!(r, Err(Error::FrequencyNotAdmissible(_))));
        let r = HslTorus::new(
            Lattice::square(),
            c(1.0, -1.0),
            vec![(c(0.5, 0.5), Quaternion::ZERO)],
        );
        assert!(matches!(r, Err(Error::AllZeroCoefficients)));
    }
}
