//! Multipliers `h^{A,B}_γ = e^{2π(<A,γ> − i<B,γ>)}`, their admissible
//! frequencies, double points, the real structure, the map `η` and the
//! dictionary between `μ`, `λ` and `(A, B)`.

use std::f64::consts::PI;

use crate::lattice::{sort_points, DualLattice, Lattice, MEMBERSHIP_TOL};
use crate::quaternion::{pair, Cx};
use crate::torus::check_beta0;
use crate::Error;

/// `|A|` below this is treated as `A = 0`.
pub const ZERO_A_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierKey {
    pub a: Cx,
    /// Reduced modulo `Γ*`.
    pub b: Cx,
    pub beta0: Cx,
    /// `Γ*_{A,B}`, sorted.
    pub freqs: Vec<Cx>,
    /// `λ_δ` for each frequency.
    pub lambdas: Vec<Cx>,
}

impl MultiplierKey {
    pub fn dim(&self) -> usize {
        self.freqs.len()
    }

    /// `r = sqrt(|A|² + |β₀|²/4)`.
    pub fn radius(&self) -> f64 {
        (self.a.norm_sqr() + 0.25 * self.beta0.norm_sqr()).sqrt()
    }

    pub fn value(&self, gamma: Cx) -> Cx {
        multiplier_value(self.a, self.b, gamma)
    }
}

pub fn dim_h0(key: &MultiplierKey) -> usize {
    key.dim()
}

pub fn multiplier_value(a: Cx, b: Cx, gamma: Cx) -> Cx {
    (Cx::new(pair(a, gamma), -pair(b, gamma)) * (2.0 * PI)).exp()
}

/// `λ_δ = (2/β₀)(δ − iA − B)`.
pub fn lambda_of(beta0: Cx, a: Cx, b: Cx, delta: Cx) -> Cx {
    (delta - Cx::i() * a - b) * 2.0 / beta0
}

/// Residuals of `|δ−B|² − |A|² = |β₀|²/4` and `<δ−B, A> = 0`.
pub fn ab_residuals(beta0: Cx, a: Cx, b: Cx, delta: Cx) -> (f64, f64) {
    let d = delta - b;
    (
        (d.norm_sqr() - a.norm_sqr() - 0.25 * beta0.norm_sqr()).abs(),
        pair(d, a).abs(),
    )
}

#[derive(Clone, Debug)]
pub struct DoublePoint {
    pub zeta: Cx,
    pub key: MultiplierKey,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralPoint {
    pub mu: Cx,
    pub lambda: Cx,
    pub a_mu: Cx,
    pub c_mu: Cx,
}

impl SpectralPoint {
    /// `a = (μ + μ⁻¹)/2`.
    pub fn a(&self) -> Cx {
        (self.mu + self.mu.inv()) * 0.5
    }

    /// `b = (μ⁻¹ − μ) i/2`, acting by right multiplication.
    pub fn b(&self) -> Cx {
        (self.mu.inv() - self.mu) * Cx::new(0.0, 0.5)
    }
}

/// Spectral data attached to `(Γ, β₀)`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    dual: DualLattice,
    beta0: Cx,
}

impl Spectrum {
    pub fn new(lattice: &Lattice, beta0: Cx) -> Result<Self, Error> {
        let dual = lattice.dual();
        check_beta0(&dual, beta0)?;
        Ok(Spectrum { dual, beta0 })
    }

    pub fn dual(&self) -> &DualLattice {
        &self.dual
    }

    pub fn beta0(&self) -> Cx {
        self.beta0
    }

    fn in_shifted(&self, p: Cx) -> bool {
        self.dual
            .is_dual_point(p - self.beta0 * 0.5, MEMBERSHIP_TOL)
    }

    /// `Γ*_{A,B}` and the `λ_δ`.
    pub fn admissible_freqs(&self, a: Cx, b: Cx) -> MultiplierKey {
        let b = self.dual.reduce(b);
        let half = self.beta0 * 0.5;
        let (a, mut freqs) = if a.norm() <= ZERO_A_TOL {
            let c = self
                .dual
                .enum_translated_circle(half, b, half.norm(), MEMBERSHIP_TOL);
            (Cx::new(0.0, 0.0), c)
        } else {
            let r = (a.norm_sqr() + half.norm_sqr()).sqrt();
            let dir = Cx::i() * a / a.norm() * r;
            let v: Vec<Cx> = [b - dir, b + dir]
                .into_iter()
                .filter(|&p| self.in_shifted(p))
                .collect();
            (a, v)
        };
        sort_points(&mut freqs);
        let lambdas = freqs
            .iter()
            .map(|&d| lambda_of(self.beta0, a, b, d))
            .collect();
        MultiplierKey {
            a,
            b,
            beta0: self.beta0,
            freqs,
            lambdas,
        }
    }

    /// Points `E = (Γ* + β₀/2) ∩ {|p − β₀/2| ≤ |β₀|}`.
    pub fn disk_points(&self) -> Vec<Cx> {
        let half = self.beta0 * 0.5;
        self.dual
            .enum_translated_disk(half, half, self.beta0.norm())
    }

    /// `A = −(i/2) ζ sqrt(1 − |β₀|²/|ζ|²)`, `B = (β₀ − ζ)/2` for all
    /// `ζ ∈ Γ*` with `|β₀| < |ζ| ≤ max_norm`.
    pub fn double_points(&self, max_norm: f64) -> Vec<DoublePoint> {
        let origin = Cx::new(0.0, 0.0);
        let b0 = self.beta0.norm();
        self.dual
            .enum_translated_disk(origin, origin, max_norm)
            .into_iter()
            .filter(|z| z.norm() > b0 + MEMBERSHIP_TOL)
            .map(|zeta| {
                let s = (1.0 - b0 * b0 / zeta.norm_sqr()).sqrt();
                let a = Cx::new(0.0, -0.5) * zeta * s;
                let key = self.admissible_freqs(a, (self.beta0 - zeta) * 0.5);
                DoublePoint { zeta, key }
            })
            .collect()
    }

    /// `ρ(A, B) = (A, −B)`.
    pub fn real_structure(&self, key: &MultiplierKey) -> MultiplierKey {
        self.admissible_freqs(key.a, -key.b)
    }

    /// `B ∈ ½Γ*`.
    pub fn is_real_multiplier(&self, key: &MultiplierKey) -> bool {
        self.dual.is_dual_point(key.b * 2.0, MEMBERSHIP_TOL)
    }

    /// `A` comes from some `ζ ∈ Γ*` with `|ζ| > |β₀|` via the double point formula.
    pub fn is_double_point(&self, a: Cx) -> bool {
        if a.norm() <= ZERO_A_TOL {
            return false;
        }
        let zn = (4.0 * a.norm_sqr() + self.beta0.norm_sqr()).sqrt();
        let zeta = Cx::i() * a * (zn / a.norm());
        self.dual.is_dual_point(zeta, MEMBERSHIP_TOL)
    }

    /// Reality in the form of the classification: a double point, or `A = 0`
    /// with `B ∈ ½Γ*`.
    pub fn is_real_by_classification(&self, key: &MultiplierKey) -> bool {
        if key.dim() == 0 {
            return false;
        }
        if key.a.norm() <= ZERO_A_TOL {
            return self.dual.is_dual_point(key.b * 2.0, MEMBERSHIP_TOL);
        }
        self.is_double_point(key.a)
    }

    /// `η(λ)`: `A = iβ₀/4 (λ − conj(λ)⁻¹)`, `B = β₀/4 (2 − λ − conj(λ)⁻¹)`.
    pub fn eta(&self, lambda: Cx) -> Result<MultiplierKey, Error> {
        let (a, b) = eta_ab(self.beta0, lambda)?;
        Ok(self.admissible_freqs(a, b))
    }

    /// The monodromy of `d^μ` is scalar iff `|μ| = 1` and `β₀ conj(√μ) ∈ Γ*`.
    pub fn is_degenerate_monodromy(&self, mu: Cx) -> bool {
        if (mu.norm() - 1.0).abs() > MEMBERSHIP_TOL {
            return false;
        }
        self.dual
            .is_dual_point(self.beta0 * mu.sqrt().conj(), MEMBERSHIP_TOL)
    }
}

/// Unreduced `(A, B)` of `η(λ)`.
pub fn eta_ab(beta0: Cx, lambda: Cx) -> Result<(Cx, Cx), Error> {
    if lambda.norm() == 0.0 {
        return Err(Error::ZeroLambda);
    }
    let lb = lambda.conj().inv();
    let a = Cx::i() * beta0 * 0.25 * (lambda - lb);
    let b = beta0 * 0.25 * (Cx::new(2.0, 0.0) - lambda - lb);
    Ok((a, b))
}

/// `A^μ = iβ₀/4 (1/√μ − conj √μ)`, `C^μ = β₀/4 (1/√μ + conj √μ)`, `λ = 1/√μ`.
pub fn mu_dictionary(mu: Cx, beta0: Cx) -> Result<SpectralPoint, Error> {
    if mu.norm() == 0.0 {
        return Err(Error::ZeroMu);
    }
    let s = mu.sqrt();
    let si = s.inv();
    Ok(SpectralPoint {
        mu,
        lambda: si,
        a_mu: Cx::i() * beta0 * 0.25 * (si - s.conj()),
        c_mu: beta0 * 0.25 * (si + s.conj()),
    })
}
