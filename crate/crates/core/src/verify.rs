//! Finite-difference checks of the differential identities.
//!
//! Every derivative here is a central difference of point evaluations; none
//! of the analytic derivative code in `torus` or `darboux` is reused.

use std::f64::consts::PI;
use std::fmt;

use crate::darboux::{
    build_section, darboux_from_section, darboux_mono, dt_left_normal, grid, is_lagrangian,
    lagrangian_angle_shift, mu_multiplier, mu_sections, normal_of_angle, DarbouxKind,
    DarbouxSurface, HoloSection,
};
use crate::quaternion::{gauge_exp, pair, Cx, Quaternion};
use crate::spectral::{ab_residuals, MultiplierKey, Spectrum};
use crate::torus::HslTorus;
use crate::Error;

pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_GRID: usize = 16;

#[derive(Clone, Copy, Debug)]
pub struct FdReport {
    pub grid_n: usize,
    pub step: f64,
    pub tol: f64,
    pub max_rel_residual: f64,
    pub worst_point: Cx,
    pub passed: bool,
}

fn central<F: Fn(Cx) -> Quaternion>(f: &F, z: Cx, dir: Cx, h: f64) -> Quaternion {
    (f(z + dir * h) - f(z - dir * h)) * (0.5 / h)
}

fn partials<F: Fn(Cx) -> Quaternion>(f: &F, z: Cx, h: f64) -> (Quaternion, Quaternion) {
    (
        central(f, z, Cx::new(1.0, 0.0), h),
        central(f, z, Cx::new(0.0, 1.0), h),
    )
}

struct Acc {
    worst: f64,
    at: Cx,
}

impl Acc {
    fn new() -> Self {
        Acc {
            worst: 0.0,
            at: Cx::new(0.0, 0.0),
        }
    }

    fn push(&mut self, r: f64, z: Cx) {
        let r = if r.is_nan() { f64::INFINITY } else { r };
        if r > self.worst || (r.is_infinite() && self.worst.is_finite()) {
            self.worst = r;
            self.at = z;
        }
    }

    fn report(self, n: usize, h: f64, tol: f64) -> FdReport {
        FdReport {
            grid_n: n,
            step: h,
            tol,
            max_rel_residual: self.worst,
            worst_point: self.at,
            passed: self.worst < tol,
        }
    }
}

/// `fx = e^{jβ/2} g`, `fy = e^{jβ/2} i g` and `fy = N fx`, relative to `1 + |g|`.
pub fn check_conformal_lagrangian(t: &HslTorus, n: usize, h: f64, tol: f64) -> FdReport {
    let f = |z| t.f(z);
    let mut acc = Acc::new();
    for z in grid(t.lattice(), n, 0.5) {
        let (fx, fy) = partials(&f, z, h);
        let r = match t.eval_jet(z) {
            Ok(j) => {
                let gauge = gauge_exp(j.beta);
                let a = (fx - gauge * j.g).norm();
                let b = (fy - gauge * Quaternion::I * j.g).norm();
                let c = (fy - j.n * fx).norm();
                a.max(b).max(c) / (1.0 + j.g.norm())
            }
            Err(_) => f64::INFINITY,
        };
        acc.push(r, z);
    }
    acc.report(n, h, tol)
}

/// `∂y α = N ∂x α`.
pub fn check_holomorphic(s: &HoloSection, t: &HslTorus, n: usize, h: f64, tol: f64) -> FdReport {
    let f = |z| s.eval(z);
    let mut acc = Acc::new();
    for z in grid(t.lattice(), n, 0.5) {
        let (ax, ay) = partials(&f, z, h);
        let r = (ay - t.left_normal(z) * ax).norm() / (ax.norm() + s.eval(z).norm());
        acc.push(r, z);
    }
    acc.report(n, h, tol)
}

/// `dα + ½ df H (N α (a − 1) + α b) = 0` in both coordinate directions.
pub fn check_dmu_parallel(
    s: &HoloSection,
    t: &HslTorus,
    mu: Cx,
    n: usize,
    h: f64,
    tol: f64,
) -> Result<FdReport, Error> {
    if mu.norm() == 0.0 {
        return Err(Error::ZeroMu);
    }
    let a1 = (mu + mu.inv()) * 0.5 - 1.0;
    let b = (mu.inv() - mu) * Cx::new(0.0, 0.5);
    let fs = |z| t.f(z);
    let al = |z| s.eval(z);
    let mut acc = Acc::new();
    for z in grid(t.lattice(), n, 0.5) {
        let (fx, fy) = partials(&fs, z, h);
        let (ax, ay) = partials(&al, z, h);
        let alpha = s.eval(z);
        let gauge = gauge_exp(2.0 * PI * pair(t.beta0(), z));
        let r = match (gauge.conj() * fx).inv() {
            Ok(gi) => {
                let hq = gi * Quaternion::from_cx(t.beta0().conj()) * gauge * Quaternion::K * PI;
                let tail = t.left_normal(z) * alpha * a1 + alpha * b;
                let rx = ax + fx * hq * tail * 0.5;
                let ry = ay + fy * hq * tail * 0.5;
                rx.norm().max(ry.norm()) / (ax.norm() + ay.norm() + alpha.norm())
            }
            Err(_) => f64::INFINITY,
        };
        acc.push(r, z);
    }
    Ok(acc.report(n, h, tol))
}

#[derive(Clone, Copy, Debug)]
pub struct HslReport {
    /// `|f̂x| = |f̂y|`, `<f̂x, f̂y> = 0`.
    pub conformal: FdReport,
    /// `f̂y f̂x⁻¹` against the closed-form left normal.
    pub normal: FdReport,
    /// `f̂y f̂x⁻¹` against `e^{j(β+β_h)} i`; monochromatic only.
    pub angle: Option<FdReport>,
    pub beta_h: Option<f64>,
    pub beta_h_stddev: Option<f64>,
    pub lagrangian: bool,
    pub lagrangian_violation: f64,
}

impl HslReport {
    pub fn passed(&self) -> bool {
        self.conformal.passed
            && self.normal.passed
            && self.angle.is_none_or(|a| a.passed)
            && self.beta_h_stddev.is_none_or(|s| s < 1e-8)
    }
}

fn dot(a: Quaternion, b: Quaternion) -> f64 {
    a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z
}

pub fn check_hsl_preservation(
    d: &DarbouxSurface,
    n: usize,
    h: f64,
    tol: f64,
) -> Result<HslReport, Error> {
    let f = |z| {
        d.eval(z)
            .unwrap_or(Quaternion::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN))
    };
    let shift = if d.kind() == DarbouxKind::Monochromatic {
        Some(lagrangian_angle_shift(d, n)?)
    } else {
        None
    };
    let (mut ci, mut cii, mut ciii) = (Acc::new(), Acc::new(), Acc::new());
    for z in grid(d.base().lattice(), n, 0.5) {
        let (fx, fy) = partials(&f, z, h);
        let (nx, ny) = (fx.norm_sqr(), fy.norm_sqr());
        ci.push(((nx - ny).abs() + 2.0 * dot(fx, fy).abs()) / (nx + ny), z);
        let nfd = fx.inv().map(|i| fy * i);
        let r = match (&nfd, dt_left_normal(d, z)) {
            (Ok(a), Ok(b)) => (*a - b).norm(),
            _ => f64::INFINITY,
        };
        cii.push(r, z);
        if let Some(s) = shift {
            let want = normal_of_angle(d.base().beta(z) + s.beta_h);
            ciii.push(nfd.map_or(f64::INFINITY, |a| (a - want).norm()), z);
        }
    }
    let (lag, viol) = is_lagrangian(d, n)?;
    Ok(HslReport {
        conformal: ci.report(n, h, tol),
        normal: cii.report(n, h, tol),
        angle: shift.map(|_| ciii.report(n, h, tol)),
        beta_h: shift.map(|s| s.beta_h),
        beta_h_stddev: shift.map(|s| s.stddev),
        lagrangian: lag,
        lagrangian_violation: viol,
    })
}

/// `residual(h) / residual(h/2)` of the conformal-Lagrangian check.
pub fn convergence_ratio(t: &HslTorus, n: usize, h: f64) -> f64 {
    let a = check_conformal_lagrangian(t, n, h, f64::INFINITY).max_rel_residual;
    let b = check_conformal_lagrangian(t, n, 0.5 * h, f64::INFINITY).max_rel_residual;
    a / b
}

/// Same ratio for the holomorphicity check of a section.
pub fn section_convergence_ratio(s: &HoloSection, t: &HslTorus, n: usize, h: f64) -> f64 {
    let a = check_holomorphic(s, t, n, h, f64::INFINITY).max_rel_residual;
    let b = check_holomorphic(s, t, n, 0.5 * h, f64::INFINITY).max_rel_residual;
    a / b
}

/// One line of the `verify` report.
#[derive(Clone, Debug)]
pub struct SuiteLine {
    pub passed: bool,
    pub identity: String,
    pub detail: String,
}

impl fmt::Display for SuiteLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.identity, self.detail)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub grid_n: usize,
    pub step: f64,
    pub tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            grid_n: DEFAULT_GRID,
            step: DEFAULT_STEP,
            tol: DEFAULT_TOL,
        }
    }
}

struct Suite {
    lines: Vec<SuiteLine>,
}

impl Suite {
    fn fd(&mut self, identity: &str, what: &str, r: &FdReport) {
        self.lines.push(SuiteLine {
            passed: r.passed,
            identity: identity.to_string(),
            detail: format!(
                "{what} max_rel={:.3e} tol={:.1e} at z={:.4}{:+.4}i",
                r.max_rel_residual, r.tol, r.worst_point.re, r.worst_point.im
            ),
        });
    }

    fn flag(&mut self, passed: bool, identity: &str, detail: String) {
        self.lines.push(SuiteLine {
            passed,
            identity: identity.to_string(),
            detail,
        });
    }

    fn error(&mut self, identity: &str, what: &str, e: Error) {
        self.flag(false, identity, format!("{what}: {e}"));
    }
}

const ID_DF: &str = "conformal Lagrangian df = e^{jβ/2} dz g, *df = N df";
const ID_ANALYTIC: &str = "analytic normals *df = N df = −df R, RH = HN, periodicity";
const ID_HOLO: &str = "holomorphicity *dα = N dα";
const ID_MULT: &str = "multiplier α(z+γ) = α(z) h_γ";
const ID_AB: &str = "admissible frequencies |δ−B|² − |A|² = |β₀|²/4, <δ−B, A> = 0";
const ID_ETA: &str = "normalization η(λ_δ) = h";
const ID_PRO: &str = "prolongation f̂ = f + T̂⁻¹ equals closed-form Darboux transform";
const ID_HSL: &str = "Darboux transform is Hamiltonian stationary, β̂ = β + β_h";
const ID_LAG: &str = "Lagrangian criterion Im(conj(τ₀) τ₁) = 0";
const ID_DMU: &str = "d^μ-parallel dα + ½ df H (N α (a−1) + α b) = 0";
const ID_MU_MULT: &str = "eigen-section multiplier h^μ_±";
const ID_MU_ETA: &str = "spectral parameter η(1/√μ) = multiplier of α^μ_+";
const ID_FD: &str = "second-order finite differences (ratio under h → h/2)";

/// Test keys used by the suite: a generic point of the `A = 0` circle, a
/// generic `A ≠ 0` point from `η`, and the first double point.
pub fn sample_keys(sp: &Spectrum) -> Vec<MultiplierKey> {
    let b0 = sp.beta0();
    let mut keys = vec![sp.admissible_freqs(
        Cx::new(0.0, 0.0),
        b0 * 0.5 * (Cx::new(1.0, 0.0) + Cx::from_polar(1.0, 1.1)),
    )];
    if let Ok(k) = sp.eta(Cx::from_polar(1.3, 0.4)) {
        keys.push(k);
    }
    if let Some(dp) = sp.double_points(3.0 * b0.norm()).into_iter().next() {
        keys.push(dp.key);
    }
    keys.retain(|k| k.dim() > 0);
    keys
}

pub const SUITE_MUS: [(f64, f64); 3] = [(0.5, 0.0), (2.0, PI / 3.0), (-1.0, 0.0)];

pub fn suite_mus() -> Vec<Cx> {
    SUITE_MUS
        .iter()
        .map(|&(r, a)| {
            if r < 0.0 {
                Cx::new(r, 0.0)
            } else {
                Cx::from_polar(r, a)
            }
        })
        .collect()
}

/// Every check the `verify` command runs on one torus.
pub fn run_suite(t: &HslTorus, opt: SuiteOptions) -> Vec<SuiteLine> {
    let (n, h, tol) = (opt.grid_n, opt.step, opt.tol);
    let mut s = Suite { lines: Vec::new() };
    let l = *t.lattice();
    let b0 = t.beta0();

    s.fd(ID_DF, "torus", &check_conformal_lagrangian(t, n, h, tol));

    let mut worst = 0.0f64;
    for z in grid(&l, n, 0.5) {
        match t.eval_jet(z) {
            Ok(j) => {
                let sc = j.fx.norm();
                worst = worst
                    .max((j.fy - j.n * j.fx).norm() / sc)
                    .max((j.fy + j.fx * j.r).norm() / sc)
                    .max((j.r * j.h - j.h * j.n).norm() / (1.0 + j.h.norm()))
                    .max((t.f(z + l.omega1) - t.f(z)).norm())
                    .max((t.f(z + l.omega2) - t.f(z)).norm());
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    s.flag(
        worst < 1e-10,
        ID_ANALYTIC,
        format!("max={worst:.3e} tol=1.0e-10"),
    );

    let sp = match Spectrum::new(&l, b0) {
        Ok(sp) => sp,
        Err(e) => {
            s.error(ID_AB, "spectrum", e);
            return s.lines;
        }
    };

    let trivial = sp.admissible_freqs(Cx::new(0.0, 0.0), Cx::new(0.0, 0.0));
    let constant = HoloSection::monochromatic(b0, Cx::new(0.0, 0.0), Cx::new(0.0, 0.0), b0 * 0.5);
    s.fd(
        ID_HOLO,
        "constant section 1 − k",
        &check_holomorphic(&constant, t, n, h, tol),
    );

    let mut ab = 0.0f64;
    let mut sweep = Vec::new();
    for i in 0..24 {
        let th = 2.0 * PI * (i as f64 + 0.5) / 24.0;
        sweep.push(sp.admissible_freqs(
            Cx::new(0.0, 0.0),
            b0 * 0.5 * (Cx::new(1.0, 0.0) + Cx::from_polar(1.0, th)),
        ));
    }
    sweep.push(trivial);
    sweep.extend(sp.double_points(3.0 * b0.norm()).into_iter().map(|d| d.key));
    let keys = sample_keys(&sp);
    sweep.extend(keys.iter().cloned());
    for k in &sweep {
        for &d in &k.freqs {
            let (r1, r2) = ab_residuals(b0, k.a, k.b, d);
            ab = ab.max(r1).max(r2);
        }
    }
    s.flag(
        ab < 1e-9,
        ID_AB,
        format!("{} keys max={ab:.3e} tol=1.0e-9", sweep.len()),
    );

    let mut eta = 0.0f64;
    let mut count = 0;
    for k in sweep.iter().filter(|k| k.dim() == 1) {
        match sp.eta(k.lambdas[0]) {
            Ok(e) => {
                for g in [l.omega1, l.omega2] {
                    eta = eta.max((e.value(g) - k.value(g)).norm());
                }
                count += 1;
            }
            Err(_) => eta = f64::INFINITY,
        }
    }
    s.flag(
        eta < 1e-9,
        ID_ETA,
        format!("{count} keys max={eta:.3e} tol=1.0e-9"),
    );

    for (ki, key) in keys.iter().enumerate() {
        let tag = format!(
            "key {ki} A={:.4}{:+.4}i B={:.4}{:+.4}i",
            key.a.re, key.a.im, key.b.re, key.b.im
        );
        for w in 0..key.dim() {
            let mut u = vec![Cx::new(0.0, 0.0); key.dim()];
            u[w] = Cx::new(1.0, 0.0);
            let sec = match build_section(key, &u) {
                Ok(x) => x,
                Err(e) => {
                    s.error(ID_HOLO, &tag, e);
                    continue;
                }
            };
            let what = format!("{tag} δ#{w}");
            s.fd(ID_HOLO, &what, &check_holomorphic(&sec, t, n, h, tol));

            let mut qp = 0.0f64;
            for z in grid(&l, 4, 0.5) {
                for g in [l.omega1, l.omega2] {
                    let rhs = sec.eval(z) * sec.multiplier(g);
                    qp = qp.max((sec.eval(z + g) - rhs).norm() / rhs.norm());
                }
            }
            s.flag(
                qp < 1e-9,
                ID_MULT,
                format!("{what} max_rel={qp:.3e} tol=1.0e-9"),
            );

            let closed = match darboux_mono(t, key, w) {
                Ok(d) => d,
                Err(e) => {
                    s.error(ID_PRO, &what, e);
                    continue;
                }
            };
            if closed.kind() == DarbouxKind::PointAtInfinity || closed.is_constant() {
                continue;
            }
            let pro = darboux_from_section(t, &sec);
            let mut dev = 0.0f64;
            for z in grid(&l, n, 0.5) {
                dev = match (closed.eval(z), pro.eval(z)) {
                    (Ok(a), Ok(b)) => dev.max((a - b).norm() / (1.0 + a.norm())),
                    _ => f64::INFINITY,
                };
            }
            s.flag(
                dev < 1e-8,
                ID_PRO,
                format!("{what} max_rel={dev:.3e} tol=1.0e-8"),
            );

            match check_hsl_preservation(&pro, n, h, tol) {
                Ok(r) => {
                    let angle = r.angle.map_or(0.0, |a| a.max_rel_residual);
                    s.flag(
                        r.passed(),
                        ID_HSL,
                        format!(
                            "{what} conformal={:.3e} normal={:.3e} angle={:.3e} β_h={:.6} stddev={:.1e}",
                            r.conformal.max_rel_residual,
                            r.normal.max_rel_residual,
                            angle,
                            r.beta_h.unwrap_or(f64::NAN),
                            r.beta_h_stddev.unwrap_or(f64::NAN)
                        ),
                    );
                    s.flag(
                        r.lagrangian,
                        ID_LAG,
                        format!("{what} max={:.3e} tol=1.0e-9", r.lagrangian_violation),
                    );
                }
                Err(e) => s.error(ID_HSL, &what, e),
            }
        }
    }

    for mu in suite_mus() {
        let ms = match mu_sections(t, mu) {
            Ok(m) => m,
            Err(e) => {
                s.error(ID_DMU, "mu", e);
                continue;
            }
        };
        for (plus, sec) in [(true, &ms.alpha_plus), (false, &ms.alpha_minus)] {
            let what = format!(
                "μ={:.4}{:+.4}i sheet {}",
                mu.re,
                mu.im,
                if plus { "+" } else { "−" }
            );
            s.fd(ID_HOLO, &what, &check_holomorphic(sec, t, n, h, tol));
            match check_dmu_parallel(sec, t, mu, n, h, tol) {
                Ok(r) => s.fd(ID_DMU, &what, &r),
                Err(e) => s.error(ID_DMU, &what, e),
            }
            let mut dev = 0.0f64;
            for g in [l.omega1, l.omega2] {
                dev = dev.max((sec.multiplier(g) - mu_multiplier(&ms.point, b0, plus, g)).norm());
            }
            s.flag(
                dev < 1e-9,
                ID_MU_MULT,
                format!("{what} max={dev:.3e} tol=1.0e-9"),
            );
        }
        match sp.eta(ms.point.lambda) {
            Ok(k) => {
                let mut dev = 0.0f64;
                for g in [l.omega1, l.omega2] {
                    dev = dev.max((k.value(g) - ms.alpha_plus.multiplier(g)).norm());
                }
                s.flag(
                    dev < 1e-9,
                    ID_MU_ETA,
                    format!("μ={:.4}{:+.4}i max={dev:.3e} tol=1.0e-9", mu.re, mu.im),
                );
            }
            Err(e) => s.error(ID_MU_ETA, "eta", e),
        }
    }

    let ratio = convergence_ratio(t, n.min(8), 1e-3);
    s.flag(
        (3.0..=5.0).contains(&ratio),
        ID_FD,
        format!("torus ratio={ratio:.3} range=[3,5]"),
    );
    if let Some(key) = keys.first() {
        let mut u = vec![Cx::new(0.0, 0.0); key.dim()];
        u[0] = Cx::new(1.0, 0.0);
        if let Ok(sec) = build_section(key, &u) {
            let ratio = section_convergence_ratio(&sec, t, n.min(8), 1e-3);
            s.flag(
                (3.0..=5.0).contains(&ratio),
                ID_FD,
                format!("section ratio={ratio:.3} range=[3,5]"),
            );
        }
    }
    s.lines
}
