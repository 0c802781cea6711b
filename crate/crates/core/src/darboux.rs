//! Holomorphic sections with multiplier, their prolongation, and the closed
//! form Darboux transforms `f̂ = f + e^{jβ/2} τ g`.

use std::f64::consts::PI;

use crate::lattice::Lattice;
use crate::quaternion::{freq_exp, gauge_exp, j_exp, pair, Cx, Quaternion};
use crate::spectral::{
    lambda_of, mu_dictionary, multiplier_value, MultiplierKey, SpectralPoint, ZERO_A_TOL,
};
use crate::torus::HslTorus;
use crate::Error;

const INFINITY_TOL: f64 = 1e-12;
const SIN_TOL: f64 = 1e-12;
const SINGULAR_REL: f64 = 1e-8;
const R_GRID: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectionTerm {
    pub delta: Cx,
    pub lambda: Cx,
    pub u: Cx,
}

/// `α(z) = e^{jβ/2} [Σ (1 − kλ_δ) u_δ e_{δ−B}(z)] e^{2π<A,z>}`.
#[derive(Clone, Debug)]
pub struct HoloSection {
    pub a: Cx,
    pub b: Cx,
    pub beta0: Cx,
    pub terms: Vec<SectionTerm>,
}

impl HoloSection {
    /// Terms are taken as given; `λ_δ` need not match `(A, B)`.
    pub fn from_terms(beta0: Cx, a: Cx, b: Cx, terms: Vec<SectionTerm>) -> Self {
        HoloSection { a, b, beta0, terms }
    }

    pub fn monochromatic(beta0: Cx, a: Cx, b: Cx, delta: Cx) -> Self {
        let lambda = lambda_of(beta0, a, b, delta);
        Self::from_terms(
            beta0,
            a,
            b,
            vec![SectionTerm {
                delta,
                lambda,
                u: Cx::new(1.0, 0.0),
            }],
        )
    }

    pub fn multiplier(&self, gamma: Cx) -> Cx {
        multiplier_value(self.a, self.b, gamma)
    }

    fn beta(&self, z: Cx) -> f64 {
        2.0 * PI * pair(self.beta0, z)
    }

    fn inner(&self, z: Cx, m: impl Fn(Cx) -> Cx) -> Quaternion {
        let mut s = Quaternion::ZERO;
        for t in &self.terms {
            let w = t.u * freq_exp(t.delta - self.b, z) * m(t.delta - self.b);
            s += (Quaternion::ONE - Quaternion::K * t.lambda) * w;
        }
        s
    }

    fn growth(&self, z: Cx) -> f64 {
        (2.0 * PI * pair(self.a, z)).exp()
    }

    pub fn eval(&self, z: Cx) -> Quaternion {
        gauge_exp(self.beta(z)) * self.inner(z, |_| Cx::new(1.0, 0.0)) * self.growth(z)
    }

    /// Analytic partials `(∂x α, ∂y α)`.
    pub fn d(&self, z: Cx) -> (Quaternion, Quaternion) {
        let gauge = gauge_exp(self.beta(z));
        let e = self.growth(z);
        let s = self.inner(z, |_| Cx::new(1.0, 0.0));
        let sx = self.inner(z, |d| Cx::new(0.0, 2.0 * PI * d.re));
        let sy = self.inner(z, |d| Cx::new(0.0, 2.0 * PI * d.im));
        let ax = (Quaternion::J * (PI * self.beta0.re) * gauge * s + gauge * sx) * e
            + gauge * s * (2.0 * PI * self.a.re * e);
        let ay = (Quaternion::J * (PI * self.beta0.im) * gauge * s + gauge * sy) * e
            + gauge * s * (2.0 * PI * self.a.im * e);
        (ax, ay)
    }

    /// Triangle-inequality bound on `|α(z)|`.
    fn bound(&self, z: Cx) -> f64 {
        let s: f64 = self
            .terms
            .iter()
            .map(|t| t.u.norm() * (1.0 + t.lambda.norm()))
            .sum();
        s * self.growth(z)
    }
}

/// The section `Σ u_δ α_δ` for the frequencies of `key`.
pub fn build_section(key: &MultiplierKey, coeffs: &[Cx]) -> Result<HoloSection, Error> {
    if key.dim() == 0 {
        return Err(Error::EmptyKey);
    }
    if coeffs.len() != key.dim() {
        return Err(Error::CoefficientCount {
            expected: key.dim(),
            got: coeffs.len(),
        });
    }
    if coeffs.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::AllZeroCoefficients);
    }
    let terms = key
        .freqs
        .iter()
        .zip(&key.lambdas)
        .zip(coeffs)
        .filter(|(_, u)| u.norm() > 0.0)
        .map(|((&delta, &lambda), &u)| SectionTerm { delta, lambda, u })
        .collect();
    Ok(HoloSection::from_terms(key.beta0, key.a, key.b, terms))
}

/// `T̂ = −fx⁻¹ (∂x α) α⁻¹`, checked against the y-derivative.
pub fn prolongation_hat(s: &HoloSection, t: &HslTorus, z: Cx) -> Result<Quaternion, Error> {
    let alpha = s.eval(z);
    if alpha.norm() < 1e-12 * s.bound(z) {
        return Err(Error::ZeroSection(z));
    }
    let jet = t.eval_jet(z)?;
    let ai = alpha.inv()?;
    let (ax, ay) = s.d(z);
    let hx = -(jet.fx.inv()? * ax * ai);
    let hy = -(jet.fy.inv()? * ay * ai);
    if hx.norm() < INFINITY_TOL && hy.norm() < INFINITY_TOL {
        return Ok(Quaternion::ZERO);
    }
    if (hx - hy).norm() > 1e-9 * hx.norm().max(hy.norm()) {
        return Err(Error::NotHolomorphic(z));
    }
    Ok(hx)
}

/// `T = T̂⁻¹`, so that `f̂ = f + T`.
pub fn prolongation_t(s: &HoloSection, t: &HslTorus, z: Cx) -> Result<Quaternion, Error> {
    let h = prolongation_hat(s, t, z)?;
    if h.norm() < INFINITY_TOL {
        return Err(Error::TransformAtInfinity);
    }
    h.inv()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DarbouxKind {
    Monochromatic,
    Polychromatic,
    PointAtInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyTerm {
    pub angle: f64,
    pub u: Cx,
    pub delta: Cx,
}

#[derive(Clone, Debug)]
enum Tau {
    Constant(Quaternion),
    Poly(Vec<PolyTerm>),
    Section(HoloSection),
    Infinity,
}

#[derive(Clone, Debug)]
pub struct DarbouxSurface {
    base: HslTorus,
    kind: DarbouxKind,
    tau: Tau,
    r_min: f64,
    r_max: f64,
}

/// `τ` of the monochromatic transform given by `δ ∈ Γ*_{A,B}`, or `None` at infinity.
pub fn mono_tau(beta0: Cx, a: Cx, b: Cx, delta: Cx) -> Option<Quaternion> {
    if a.norm() > ZERO_A_TOL {
        let a2 = a.norm_sqr();
        let p = pair(beta0, a);
        let den = PI * (4.0 * a2 * a2 + p * p);
        let q = (Quaternion::real(2.0 * a2) - Quaternion::J * p) * a;
        return Some(-q * (1.0 / den));
    }
    let e = (b - delta) * 2.0 / beta0;
    let e = e / e.norm();
    if e.im.abs() < SIN_TOL {
        return None;
    }
    Some(Quaternion::K * (e / (beta0.conj() * PI * e.im)))
}

/// `e^{it}` with `δ = B − (β₀/2) e^{it}`.
fn unit_of_angle(angle: f64) -> Cx {
    Cx::from_polar(1.0, angle)
}

impl DarbouxSurface {
    fn finish(base: &HslTorus, kind: DarbouxKind, tau: Tau) -> Self {
        let mut d = DarbouxSurface {
            base: base.clone(),
            kind,
            tau,
            r_min: 1.0,
            r_max: 1.0,
        };
        if let Tau::Poly(_) = d.tau {
            let l = *base.lattice();
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for z in grid(&l, R_GRID, 0.0) {
                let r = d.r(z);
                lo = lo.min(r);
                hi = hi.max(r);
            }
            d.r_min = lo;
            d.r_max = hi;
        }
        d
    }

    pub fn base(&self) -> &HslTorus {
        &self.base
    }

    pub fn kind(&self) -> DarbouxKind {
        self.kind
    }

    /// `min |r|` and `max |r|` over the 64×64 grid (both 1 unless polychromatic).
    pub fn r_range(&self) -> (f64, f64) {
        (self.r_min, self.r_max)
    }

    pub fn is_singular(&self) -> bool {
        self.r_min < SINGULAR_REL * self.r_max
    }

    /// `r = |Σ u_t sin t e_{δ_t}|² + |Σ u_t e^{it} sin t e_{δ_t}|²` (1 unless polychromatic).
    pub fn r(&self, z: Cx) -> f64 {
        match &self.tau {
            Tau::Poly(terms) => {
                let (mut p, mut q) = (Cx::new(0.0, 0.0), Cx::new(0.0, 0.0));
                for w in terms {
                    let v = w.u * w.angle.sin() * freq_exp(w.delta, z);
                    p += v;
                    q += v * unit_of_angle(w.angle);
                }
                p.norm_sqr() + q.norm_sqr()
            }
            _ => 1.0,
        }
    }

    /// The double sum `Σ_{s,t} (1 + k e^{is}) u_s ū_t e_{δ_s−δ_t} (1 + k e^{it}) sin t`.
    pub fn poly_numerator(&self, z: Cx) -> Option<Quaternion> {
        let Tau::Poly(terms) = &self.tau else {
            return None;
        };
        let mut acc = Quaternion::ZERO;
        for s in terms {
            let left = Quaternion::ONE + Quaternion::K * unit_of_angle(s.angle);
            for t in terms {
                let right = Quaternion::ONE + Quaternion::K * unit_of_angle(t.angle);
                let c = s.u * t.u.conj() * freq_exp(s.delta - t.delta, z) * t.angle.sin();
                acc += left * c * right;
            }
        }
        Some(acc)
    }

    /// `τ(z)` with `f̂ = f + e^{jβ/2} τ g`.
    pub fn tau(&self, z: Cx) -> Result<Quaternion, Error> {
        match &self.tau {
            Tau::Constant(q) => Ok(*q),
            Tau::Poly(_) => {
                let r = self.r(z);
                if r <= SINGULAR_REL * self.r_max {
                    return Err(Error::SingularDenominator(z));
                }
                let num = self.poly_numerator(z).expect("poly");
                Ok(num * (Cx::new(1.0, 0.0) / (self.base.beta0().conj() * (PI * r))))
            }
            Tau::Section(s) => {
                let t = prolongation_t(s, &self.base, z)?;
                let gauge = gauge_exp(self.base.beta(z));
                let g = self.base.g(z);
                Ok(gauge.conj() * t * g.inv()?)
            }
            Tau::Infinity => Err(Error::TransformAtInfinity),
        }
    }

    pub fn eval(&self, z: Cx) -> Result<Quaternion, Error> {
        if let Tau::Section(s) = &self.tau {
            return Ok(self.base.f(z) + prolongation_t(s, &self.base, z)?);
        }
        let tau = self.tau(z)?;
        let gauge = gauge_exp(self.base.beta(z));
        Ok(self.base.f(z) + gauge * tau * self.base.g(z))
    }

    /// Numerically constant map, as for the transforms coming from
    /// `span_H{1, f}`.
    pub fn is_constant(&self) -> bool {
        if self.kind == DarbouxKind::PointAtInfinity {
            return true;
        }
        let l = *self.base.lattice();
        let h = 1e-4;
        for z in grid(&l, 3, 0.37) {
            let (Ok(a), Ok(b)) = (self.eval(z + l.omega1 * h), self.eval(z - l.omega1 * h)) else {
                continue;
            };
            let (Ok(c), Ok(d)) = (self.eval(z + l.omega2 * h), self.eval(z - l.omega2 * h)) else {
                continue;
            };
            let fa = self.base.f(z + l.omega1 * h) - self.base.f(z - l.omega1 * h);
            let fb = self.base.f(z + l.omega2 * h) - self.base.f(z - l.omega2 * h);
            let scale = fa.norm() + fb.norm();
            if (a - b).norm() + (c - d).norm() > 1e-8 * scale {
                return false;
            }
        }
        true
    }
}

/// Monochromatic transform for the frequency `key.freqs[which]`.
pub fn darboux_mono(
    t: &HslTorus,
    key: &MultiplierKey,
    which: usize,
) -> Result<DarbouxSurface, Error> {
    if key.dim() == 0 {
        return Err(Error::EmptyKey);
    }
    let delta = *key.freqs.get(which).ok_or(Error::FrequencyIndex {
        index: which,
        len: key.dim(),
    })?;
    Ok(match mono_tau(t.beta0(), key.a, key.b, delta) {
        Some(q) => DarbouxSurface::finish(t, DarbouxKind::Monochromatic, Tau::Constant(q)),
        None => DarbouxSurface::finish(t, DarbouxKind::PointAtInfinity, Tau::Infinity),
    })
}

/// Frequencies `δ = B − (β₀/2) e^{it}` of `Γ*_{0,B}` as angles in `[0, 2π)`, sorted.
pub fn admissible_angles(t: &HslTorus, b: Cx) -> Vec<f64> {
    let half = t.beta0() * 0.5;
    let mut v: Vec<f64> = t
        .dual()
        .enum_translated_circle(half, b, half.norm(), crate::lattice::MEMBERSHIP_TOL)
        .into_iter()
        .map(|d| {
            let a = ((b - d) / half).arg();
            if a < 0.0 {
                a + 2.0 * PI
            } else {
                a
            }
        })
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Polychromatic transform over weights `(t, u_t)` with `t ∈ I_B`.
pub fn darboux_poly(t: &HslTorus, b: Cx, weights: &[(f64, Cx)]) -> Result<DarbouxSurface, Error> {
    let half = t.beta0() * 0.5;
    let mut terms = Vec::with_capacity(weights.len());
    for &(angle, u) in weights {
        let delta = b - half * unit_of_angle(angle);
        if !t
            .dual()
            .is_dual_point(delta - half, crate::lattice::MEMBERSHIP_TOL)
        {
            return Err(Error::AngleNotAdmissible(angle));
        }
        terms.push(PolyTerm { angle, u, delta });
    }
    if terms.iter().all(|w| w.u.norm() == 0.0) {
        return Err(Error::AllZeroCoefficients);
    }
    Ok(DarbouxSurface::finish(
        t,
        DarbouxKind::Polychromatic,
        Tau::Poly(terms),
    ))
}

/// Transform computed through the prolongation of `s`.
pub fn darboux_from_section(t: &HslTorus, s: &HoloSection) -> DarbouxSurface {
    let kind = if s.terms.len() == 1 {
        DarbouxKind::Monochromatic
    } else {
        DarbouxKind::Polychromatic
    };
    DarbouxSurface::finish(t, kind, Tau::Section(s.clone()))
}

/// `N̂ = e^{jβ/2} τ i τ⁻¹ e^{−jβ/2}`.
pub fn dt_left_normal(d: &DarbouxSurface, z: Cx) -> Result<Quaternion, Error> {
    let tau = d.tau(z)?;
    if tau.norm() < 1e-14 {
        return Err(Error::ZeroTau(z));
    }
    let gauge = gauge_exp(d.base.beta(z));
    Ok(gauge * tau * Quaternion::I * tau.inv()? * gauge.conj())
}

/// `|Im(conj(τ₀) τ₁)| / (|τ₀|² + |τ₁|²)` with `τ = τ₀ + j τ₁`.
pub fn lagrangian_violation(tau: Quaternion) -> f64 {
    let (t0, t1) = tau.split_c();
    (t0.conj() * t1).im.abs() / (t0.norm_sqr() + t1.norm_sqr())
}

/// `(passed, max violation)` over an `n × n` grid.
pub fn is_lagrangian(d: &DarbouxSurface, n: usize) -> Result<(bool, f64), Error> {
    let mut worst = 0.0f64;
    for z in grid(d.base.lattice(), n, 0.5) {
        worst = worst.max(lagrangian_violation(d.tau(z)?));
    }
    Ok((worst < 1e-9, worst))
}

#[derive(Clone, Copy, Debug)]
pub struct AngleShift {
    pub beta_h: f64,
    pub stddev: f64,
    pub max_dev: f64,
}

/// `β_h` from `τ = (τ₀ + jτ₁)c`, `e^{jβ_h} = (τ₀ + jτ₁)²/(τ₀² + τ₁²)`.
pub fn angle_of_tau(tau: Quaternion, c: Cx) -> Result<f64, Error> {
    let q = tau * c.conj();
    let (t0, t1) = q.split_c();
    if t0.im.abs() + t1.im.abs() > 1e-9 * q.norm() {
        return Err(Error::NotMonochromatic);
    }
    Ok(2.0 * t1.re.atan2(t0.re))
}

/// Unit complex `c` making `τ c⁻¹` lie in span{1, j}.
pub fn tau_phase(tau: Quaternion) -> Cx {
    let (t0, t1) = tau.split_c();
    if t0.norm() >= t1.norm() {
        t0 / t0.norm()
    } else {
        t1 / t1.norm()
    }
}

pub fn lagrangian_angle_shift(d: &DarbouxSurface, n: usize) -> Result<AngleShift, Error> {
    if d.kind != DarbouxKind::Monochromatic {
        return Err(Error::NotMonochromatic);
    }
    let pts = grid(d.base.lattice(), n, 0.5);
    let c = tau_phase(d.tau(pts[0])?);
    let first = angle_of_tau(d.tau(pts[0])?, c)?;
    let mut vals = Vec::with_capacity(pts.len());
    for &z in &pts {
        let a = angle_of_tau(d.tau(z)?, c)?;
        let k = ((a - first) / (2.0 * PI)).round();
        vals.push(a - 2.0 * PI * k);
    }
    let m = vals.iter().sum::<f64>() / vals.len() as f64;
    let var = vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / vals.len() as f64;
    let max_dev = vals.iter().map(|v| (v - m).abs()).fold(0.0, f64::max);
    let beta_h = m - 2.0 * PI * ((m + PI) / (2.0 * PI)).floor();
    Ok(AngleShift {
        beta_h,
        stddev: var.sqrt(),
        max_dev,
    })
}

#[derive(Clone, Debug)]
pub struct MuSections {
    pub point: SpectralPoint,
    pub alpha_plus: HoloSection,
    pub alpha_minus: HoloSection,
}

impl MuSections {
    pub fn mu(&self) -> Cx {
        self.point.mu
    }
}

/// `α^μ_± = e^{jβ/2}(1 ∓ k/√μ) e^{±2π(<A^μ,z> + i<C^μ,z>)}`.
pub fn mu_sections(t: &HslTorus, mu: Cx) -> Result<MuSections, Error> {
    let beta0 = t.beta0();
    let p = mu_dictionary(mu, beta0)?;
    let half = beta0 * 0.5;
    let plus = HoloSection::monochromatic(beta0, p.a_mu, half - p.c_mu, half);
    let minus = HoloSection::monochromatic(beta0, -p.a_mu, half + p.c_mu, half);
    Ok(MuSections {
        point: p,
        alpha_plus: plus,
        alpha_minus: minus,
    })
}

/// `h^μ_±(γ) = e^{±2π(<A^μ,γ> + i<∓β₀/2 + C^μ, γ>)}`.
pub fn mu_multiplier(p: &SpectralPoint, beta0: Cx, plus: bool, gamma: Cx) -> Cx {
    let sgn = if plus { 1.0 } else { -1.0 };
    let c = p.c_mu - beta0 * 0.5 * sgn;
    (Cx::new(pair(p.a_mu, gamma), pair(c, gamma)) * (2.0 * PI * sgn)).exp()
}

/// `z = ((i + off)/n) ω₁ + ((j + off)/n) ω₂`, row-major.
pub fn grid(l: &Lattice, n: usize, off: f64) -> Vec<Cx> {
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let s = (i as f64 + off) / n as f64;
            let t = (j as f64 + off) / n as f64;
            v.push(l.omega1 * s + l.omega2 * t);
        }
    }
    v
}

/// `e^{jθ} i`, the left normal with Lagrangian angle `θ`.
pub fn normal_of_angle(theta: f64) -> Quaternion {
    j_exp(theta) * Quaternion::I
}
