//! Acceptance criteria. Run with `cargo test -p hsl-tori-acceptance`; prints one
//! PASS/FAIL line per criterion followed by its sub-checks.

use std::cell::Cell;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use hsl_tori::cli::{build_darboux, run, Cli};
use hsl_tori::config::DarbouxSpec;
use hsl_tori::darboux::{
    admissible_angles, darboux_from_section, darboux_mono, darboux_poly, grid, is_lagrangian,
    lagrangian_angle_shift, lagrangian_violation, mono_tau, mu_sections, DarbouxKind,
    DarbouxSurface,
};
use hsl_tori::lattice::sort_points;
use hsl_tori::quaternion::{gauge_exp, j_exp};
use hsl_tori::spectral::{
    ab_residuals, eta_ab, lambda_of, mu_dictionary, MultiplierKey, Spectrum, ZERO_A_TOL,
};
use hsl_tori::torus::{
    admissible_freqs_beta0, castro_urbano_torus, clifford_torus, homogeneous_torus, HslTorus,
};
use hsl_tori::verify::{
    check_conformal_lagrangian, check_dmu_parallel, check_holomorphic, convergence_ratio,
    section_convergence_ratio, suite_mus,
};
use hsl_tori::{Cx, Quaternion};

fn c(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

struct Criterion {
    num: u8,
    name: &'static str,
    checks: Vec<(bool, String)>,
}

impl Criterion {
    fn new(num: u8, name: &'static str) -> Self {
        Criterion {
            num,
            name,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        self.checks.push((ok, detail.into()));
    }

    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.0)
    }

    fn print(&self) {
        let failed = self.checks.iter().filter(|c| !c.0).count();
        println!(
            "{} criterion {} {}: {} checks, {} failed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.num,
            self.name,
            self.checks.len(),
            failed
        );
        for (ok, d) in &self.checks {
            println!("    {} {d}", if *ok { "ok  " } else { "FAIL" });
        }
    }
}

fn fixtures() -> Vec<(&'static str, HslTorus)> {
    vec![
        ("clifford", clifford_torus()),
        ("r2", homogeneous_torus(2.0, 1.0)),
        ("castro_urbano", castro_urbano_torus()),
    ]
}

fn spectrum(t: &HslTorus) -> Spectrum {
    Spectrum::new(t.lattice(), t.beta0()).unwrap()
}

fn same_sets(mut got: Vec<Cx>, mut want: Vec<Cx>, tol: f64) -> bool {
    sort_points(&mut got);
    sort_points(&mut want);
    got.len() == want.len() && got.iter().zip(&want).all(|(a, b)| (a - b).norm() < tol)
}

fn a_zero_key(sp: &Spectrum, t: f64) -> MultiplierKey {
    let half = sp.beta0() * 0.5;
    sp.admissible_freqs(c(0.0, 0.0), half * (c(1.0, 0.0) + Cx::from_polar(1.0, t)))
}

fn criterion_1() -> Criterion {
    let mut cr = Criterion::new(1, "clifford spectrum");
    let start = Instant::now();
    let t = clifford_torus();
    let sp = spectrum(&t);
    let half = t.beta0() * 0.5;
    let offsets = [
        c(0.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(0.0, 1.0),
        c(0.0, -1.0),
        c(1.0, 1.0),
        c(-1.0, -1.0),
        c(1.0, -1.0),
        c(-1.0, 1.0),
    ];
    let disk = sp.disk_points();
    let n = disk.len();
    cr.check(
        same_sets(disk, offsets.iter().map(|o| half + o).collect(), 1e-12),
        format!("disk enumeration returns {n} points, the 9 of E"),
    );
    for b in [c(0.0, 0.0), c(1.0, 0.0), c(0.0, -1.0), c(1.0, -1.0)] {
        let d = sp.admissible_freqs(c(0.0, 0.0), b).dim();
        cr.check(d == 4, format!("dim H0 at B = {b}: {d}"));
    }
    let generic: Vec<usize> = (0..20)
        .map(|k| a_zero_key(&sp, 2.0 * PI * (k as f64 + 0.37) / 20.0).dim())
        .collect();
    cr.check(
        generic.iter().all(|&d| d == 1),
        format!("dim H0 at 20 generic circle points: {generic:?}"),
    );
    let el = start.elapsed().as_secs_f64();
    cr.check(el < 1.0, format!("runtime {el:.4} s < 1 s"));
    cr
}

/// `25·(τ₀, τ₁)` and `25·r` of the r₁=2 polychromatic transform at `z`.
fn r2_poly(t: &HslTorus, angles: &[f64], u1: Cx, u2: Cx, z: Cx) -> (Cx, Cx, f64) {
    let d = darboux_poly(t, c(0.5, 0.5), &[(angles[0], u1), (angles[1], u2)]).unwrap();
    let (t0, t1) = d.poly_numerator(z).unwrap().split_c();
    (t0 * 25.0, t1 * 25.0, d.r(z) * 25.0)
}

struct R2Coeffs {
    /// `[|u₁|², |u₂|², u₁ū₂ e^{−4πiy}, ū₁u₂ e^{4πiy}]` for τ₀ and τ₁.
    tau0: [Cx; 4],
    tau1: [Cx; 4],
    /// `[|u₁|², |u₂|²]` and the complex `w` with cross term `Re(w ū₁u₂ e^{4πiy})`.
    r: [f64; 2],
    r_cross: Cx,
}

/// Polarizes in `(u₁, u₂)` at `z` and strips the `y`-exponentials.
fn r2_coeffs(t: &HslTorus, angles: &[f64], z: Cx) -> R2Coeffs {
    let (o, zero, i) = (c(1.0, 0.0), c(0.0, 0.0), Cx::i());
    let p = r2_poly(t, angles, o, zero, z);
    let q = r2_poly(t, angles, zero, o, z);
    let s = r2_poly(t, angles, o, o, z);
    let m = r2_poly(t, angles, o, i, z);
    let e = Cx::from_polar(1.0, 4.0 * PI * z.im);
    // with u = (1, i): u₁ū₂ = −i and ū₁u₂ = i
    let split = |d11: Cx, d1i: Cx| [(d11 + i * d1i) * 0.5 * e, (d11 - i * d1i) * 0.5 / e];
    let a = split(s.0 - p.0 - q.0, m.0 - p.0 - q.0);
    let b = split(s.1 - p.1 - q.1, m.1 - p.1 - q.1);
    // Re(w e) at u = (1,1) and u = (1,i) gives Re(w e) and Re(i w e)
    let (x1, x2) = (s.2 - p.2 - q.2, m.2 - p.2 - q.2);
    let we = c(x1, -x2) * 0.5;
    R2Coeffs {
        tau0: [p.0, q.0, a[0], a[1]],
        tau1: [p.1, q.1, b[0], b[1]],
        r: [p.2, q.2],
        r_cross: we * 2.0 / e,
    }
}

fn criterion_2() -> Criterion {
    let mut cr = Criterion::new(2, "r1=2 polychromatic");
    let t = homogeneous_torus(2.0, 1.0);
    let sp = spectrum(&t);
    let b = c(0.5, 0.5);
    let half = t.beta0() * 0.5;
    let key = sp.admissible_freqs(c(0.0, 0.0), b);
    cr.check(
        same_sets(key.freqs.clone(), vec![half, half + c(0.0, 2.0)], 1e-12),
        format!("admissible set at B = (1+i)/2: {:?}", key.freqs),
    );
    let angles = admissible_angles(&t, b);
    let want = [PI - 0.75f64.atan(), 1.5 * PI];
    let err = if angles.len() == 2 {
        (angles[0] - want[0]).abs().max((angles[1] - want[1]).abs())
    } else {
        f64::INFINITY
    };
    cr.check(
        err < 1e-12,
        format!("I_B = {angles:?}, max error {err:.2e}"),
    );

    let ref0 = [c(0.0, 0.0), c(0.0, 0.0), c(-16.0, 12.0), c(0.0, 20.0)];
    let ref1 = [c(18.0, 24.0), c(50.0, 0.0), c(-24.0, -32.0), c(10.0, 0.0)];
    let labels = [
        "|u1|^2",
        "|u2|^2",
        "u1 conj(u2) e^{-4 pi i y}",
        "conj(u1) u2 e^{4 pi i y}",
    ];
    let ys = [0.0, 0.1, 0.37, 0.81];
    let samples: Vec<R2Coeffs> = ys
        .iter()
        .map(|&y| r2_coeffs(&t, &angles, c(0.13, y)))
        .collect();
    for (name, got_of, want) in [
        (
            "tau0",
            (|k: &R2Coeffs| k.tau0) as fn(&R2Coeffs) -> [Cx; 4],
            ref0,
        ),
        ("tau1", |k: &R2Coeffs| k.tau1, ref1),
    ] {
        for idx in 0..4 {
            let err = samples
                .iter()
                .map(|k| (got_of(k)[idx] - want[idx]).norm())
                .fold(0.0, f64::max);
            cr.check(
                err < 1e-10,
                format!(
                    "25 {name} coefficient of {}: got {:.12}, reference {}, max error {err:.2e}",
                    labels[idx],
                    got_of(&samples[0])[idx],
                    want[idx]
                ),
            );
        }
    }
    let r_err = samples
        .iter()
        .map(|k| {
            (k.r[0] - 18.0)
                .abs()
                .max((k.r[1] - 50.0).abs())
                .max((k.r_cross - c(-12.0, -24.0)).norm())
        })
        .fold(0.0, f64::max);
    cr.check(
        r_err < 1e-10,
        format!(
            "25 r = {:.12} |u1|^2 + {:.12} |u2|^2 + Re(({:.12}) conj(u1) u2 e^{{4 pi i y}}), max error {r_err:.2e}",
            samples[0].r[0], samples[0].r[1], samples[0].r_cross
        ),
    );

    let d = darboux_poly(&t, b, &[(angles[0], c(1.0, 0.0)), (angles[1], c(1.0, 0.0))]).unwrap();
    let worst = grid(t.lattice(), 32, 0.5)
        .into_iter()
        .map(|z| {
            let tau = d.poly_numerator(z).unwrap();
            lagrangian_violation(tau) / tau.norm_sqr()
        })
        .fold(0.0, f64::max);
    cr.check(
        worst > 1e-3,
        format!(
            "u1 = u2 = 1: max |Im(conj(tau0) tau1)| / (|tau0|^2 + |tau1|^2) = {worst:.4} > 1e-3"
        ),
    );
    cr
}

fn criterion_3() -> Criterion {
    let mut cr = Criterion::new(3, "castro-urbano");
    let t = castro_urbano_torus();
    let fr = admissible_freqs_beta0(t.lattice(), t.beta0()).unwrap();
    let want = vec![
        c(0.5, 1.5),
        c(0.5, -1.5),
        c(-0.5, 1.5),
        c(-0.5, -1.5),
        c(1.5, 0.5),
        c(-1.5, -0.5),
    ];
    cr.check(
        same_sets(fr.freqs.clone(), want, 1e-12),
        format!("admissible_freqs_beta0 = {:?}", fr.freqs),
    );
    let f0 = t.f(c(0.0, 0.0));
    let want = Quaternion::new(0.4, 0.0, -1.4, 1.4);
    let err = (f0 - want).norm();
    cr.check(
        err < 1e-12,
        format!("f(0) = {f0}, reference (2 - 7j + 7k)/5, error {err:.3e}"),
    );
    let rep = check_conformal_lagrangian(&t, 16, 1e-5, 1e-6);
    cr.check(
        rep.passed,
        format!(
            "conformal-Lagrangian FD check 16x16, h = 1e-5: max residual {:.3e} < 1e-6",
            rep.max_rel_residual
        ),
    );
    cr
}

fn criterion_4() -> Criterion {
    let mut cr = Criterion::new(4, "identity suite");
    let cases = 64;
    let runner = || {
        TestRunner::new_with_rng(
            Config {
                cases,
                failure_persistence: None,
                ..Config::default()
            },
            TestRng::deterministic_rng(RngAlgorithm::ChaCha),
        )
    };
    let fx: Vec<HslTorus> = fixtures().into_iter().map(|f| f.1).collect();
    let keys = (0..3usize, 0.2f64..5.0, 0.0f64..2.0 * PI);

    // η(λ) contains β₀/2 (shifted with B) with λ_δ = λ
    let eta_err = Cell::new(0.0f64);
    let res = runner().run(&keys, |(i, m, a)| {
        let t = &fx[i];
        let sp = spectrum(t);
        let lam = Cx::from_polar(m, a);
        let (_, b) = eta_ab(t.beta0(), lam).unwrap();
        let key = sp.eta(lam).unwrap();
        let delta = t.beta0() * 0.5 + (key.b - b);
        let idx = key.freqs.iter().position(|d| (d - delta).norm() < 1e-9);
        let Some(idx) = idx else {
            return Err(TestCaseError::fail(format!(
                "{delta} not in {:?}",
                key.freqs
            )));
        };
        let e = (key.lambdas[idx] - lam).norm() / lam.norm();
        eta_err.set(eta_err.get().max(e));
        if e < 1e-12 {
            Ok(())
        } else {
            Err(TestCaseError::fail(format!("lambda {lam}: {e:.2e}")))
        }
    });
    cr.check(
        res.is_ok(),
        format!(
            "eta/lambda round trip on {cases} keys: max relative error {:.2e} {res:?}",
            eta_err.get()
        ),
    );

    let pair_err = Cell::new(0.0f64);
    let ab_err = Cell::new(0.0f64);
    let max_dim = Cell::new(0usize);
    let emitted = Cell::new(0usize);
    let res = runner().run(&(keys.clone(), 0.0f64..2.0 * PI), |((i, m, a), s)| {
        let t = &fx[i];
        let sp = spectrum(t);
        let b0 = t.beta0();
        let mut ks = vec![sp.eta(Cx::from_polar(m, a)).unwrap(), a_zero_key(&sp, s)];
        ks.extend(sp.double_points(3.0 * b0.norm()).into_iter().map(|d| d.key));
        for k in &ks {
            for &d in &k.freqs {
                let l = lambda_of(b0, k.a, k.b, d) * lambda_of(b0, k.a, k.b, 2.0 * k.b - d).conj();
                pair_err.set(pair_err.get().max((l + 1.0).norm()));
                let (r1, r2) = ab_residuals(b0, k.a, k.b, d);
                ab_err.set(ab_err.get().max(r1).max(r2));
                emitted.set(emitted.get() + 1);
            }
            if k.a.norm() > ZERO_A_TOL {
                max_dim.set(max_dim.get().max(k.dim()));
            }
        }
        Ok(())
    });
    let ok = res.is_ok() && pair_err.get() < 1e-12;
    cr.check(
        ok,
        format!("lambda pair product = -1: max error {:.2e}", pair_err.get()),
    );
    cr.check(
        ab_err.get() < 1e-9,
        format!(
            "admissibility residuals on {} emitted frequencies: max {:.2e}",
            emitted.get(),
            ab_err.get()
        ),
    );
    cr.check(
        max_dim.get() <= 2,
        format!("max dim H0 with A != 0: {}", max_dim.get()),
    );

    let mu_err = Cell::new(0.0f64);
    let res = runner().run(&(0..3usize, 0.1f64..10.0, -PI..PI), |(i, r, a)| {
        let b0 = fx[i].beta0();
        let mu = Cx::from_polar(r, a);
        let p = mu_dictionary(mu, b0).unwrap();
        let (am, bm) = eta_ab(b0, p.lambda).unwrap();
        let e = (p.a_mu - am)
            .norm()
            .max((b0 * 0.5 - p.c_mu - bm).norm())
            .max((p.lambda * p.lambda * mu - 1.0).norm());
        mu_err.set(mu_err.get().max(e));
        if e < 1e-12 {
            Ok(())
        } else {
            Err(TestCaseError::fail(format!("mu {mu}: {e:.2e}")))
        }
    });
    cr.check(
        res.is_ok(),
        format!("A^mu = A_lambda, beta0/2 - C^mu = B_lambda under mu = 1/lambda^2 on {cases} mu: max {:.2e}", mu_err.get()),
    );
    cr
}

/// `f + e^{jβ/2} τ g` for the monochromatic closed form.
fn closed_form(t: &HslTorus, tau: Quaternion, z: Cx) -> Quaternion {
    t.f(z) + gauge_exp(t.beta(z)) * tau * t.g(z)
}

fn criterion_5() -> Criterion {
    let mut cr = Criterion::new(5, "mu-darboux");
    for (name, t) in fixtures() {
        let sp = spectrum(&t);
        for mu in suite_mus() {
            let ms = match mu_sections(&t, mu) {
                Ok(m) => m,
                Err(e) => {
                    cr.check(false, format!("{name} mu = {mu}: {e}"));
                    continue;
                }
            };
            for (sheet, s) in [("+", &ms.alpha_plus), ("-", &ms.alpha_minus)] {
                let h = check_holomorphic(s, &t, 16, 1e-5, 1e-6);
                let p = check_dmu_parallel(s, &t, mu, 16, 1e-5, 1e-6).unwrap();
                cr.check(
                    h.passed && p.passed,
                    format!(
                        "{name} mu = {mu:.4} {sheet}: holomorphic {:.2e}, d^mu parallel {:.2e}",
                        h.max_rel_residual, p.max_rel_residual
                    ),
                );
                let d = s.terms[0].delta;
                let route = darboux_from_section(&t, s);
                let err = match mono_tau(t.beta0(), s.a, s.b, d) {
                    Some(tau) => grid(t.lattice(), 16, 0.5)
                        .into_iter()
                        .map(|z| {
                            route
                                .eval(z)
                                .map_or(f64::INFINITY, |q| (q - closed_form(&t, tau, z)).norm())
                        })
                        .fold(0.0, f64::max),
                    None => {
                        if route.eval(c(0.1, 0.2)).is_err() {
                            0.0
                        } else {
                            f64::INFINITY
                        }
                    }
                };
                cr.check(
                    s.terms.len() == 1 && err < 1e-8,
                    format!("{name} mu = {mu:.4} {sheet}: prolongation vs closed form {err:.2e}"),
                );
            }
        }
        let deg = sp.is_degenerate_monodromy(c(-1.0, 0.0));
        if name == "clifford" {
            cr.check(deg, "clifford mu = -1 flagged degenerate");
        }
    }
    cr
}

fn mono_transforms(t: &HslTorus) -> Vec<(String, DarbouxSurface)> {
    let sp = spectrum(t);
    let mut keys: Vec<(String, MultiplierKey)> = Vec::new();
    for th in [0.4, 1.1, 2.0, 2.9, 3.7, 4.6, 5.5] {
        keys.push((format!("A=0 t={th}"), a_zero_key(&sp, th)));
    }
    for (m, a) in [(1.3, 0.4), (0.6, 2.0), (2.5, -1.0), (0.3, 3.0)] {
        let lam = Cx::from_polar(m, a);
        keys.push((format!("eta({lam:.3})"), sp.eta(lam).unwrap()));
    }
    for dp in sp.double_points(3.0 * t.beta0().norm()).into_iter().take(4) {
        keys.push((format!("double point {}", dp.zeta), dp.key));
    }
    let mut out = Vec::new();
    for (label, k) in keys {
        for w in 0..k.dim() {
            let d = darboux_mono(t, &k, w).unwrap();
            if d.kind() == DarbouxKind::Monochromatic && !d.is_constant() {
                out.push((format!("{label} #{w}"), d));
            }
        }
    }
    out
}

/// `(λ₁, λ₂, residual of the homogeneous form)` from `f̂(x,y) = e^{2πj r₁x}λ₁ + i e^{2πj r₂y}λ₂ + const`.
fn homogeneous_lambdas(d: &DarbouxSurface, r1: f64, r2: f64) -> (Quaternion, Quaternion, f64) {
    let jm1 = (Quaternion::J - Quaternion::ONE).inv().unwrap();
    let f0 = d.eval(c(0.0, 0.0)).unwrap();
    let l1 = jm1 * (d.eval(c(0.25 / r1, 0.0)).unwrap() - f0);
    let l2 = jm1 * (-Quaternion::I) * (d.eval(c(0.0, 0.25 / r2)).unwrap() - f0);
    let res = grid(d.base().lattice(), 8, 0.3)
        .into_iter()
        .map(|z| {
            let model = (j_exp(2.0 * PI * r1 * z.re) - Quaternion::ONE) * l1
                + Quaternion::I * (j_exp(2.0 * PI * r2 * z.im) - Quaternion::ONE) * l2;
            (d.eval(z).unwrap() - f0 - model).norm()
        })
        .fold(0.0, f64::max);
    (l1, l2, res)
}

fn criterion_6() -> Criterion {
    let mut cr = Criterion::new(6, "hsl preservation");
    for (name, t) in fixtures() {
        let ds = mono_transforms(&t);
        let mut worst_sd = 0.0f64;
        let mut worst_viol = 0.0f64;
        let mut all = !ds.is_empty();
        for (label, d) in &ds {
            let (lag, viol) = is_lagrangian(d, 32).unwrap();
            let sh = lagrangian_angle_shift(d, 32).unwrap();
            worst_sd = worst_sd.max(sh.stddev);
            worst_viol = worst_viol.max(viol);
            if !(lag && sh.stddev < 1e-8) {
                all = false;
                cr.check(
                    false,
                    format!(
                        "{name} {label}: lagrangian {lag}, beta_h stddev {:.2e}",
                        sh.stddev
                    ),
                );
            }
        }
        cr.check(
            all,
            format!(
                "{name}: {} monochromatic transforms Lagrangian, max violation {worst_viol:.2e}, max beta_h stddev {worst_sd:.2e} over 32x32",
                ds.len()
            ),
        );
    }

    for (r1, r2) in [(1.0, 1.0), (2.0, 1.0), (1.5, 0.8)] {
        let t = homogeneous_torus(r1, r2);
        let sp = spectrum(&t);
        let (s1, s2) = (r1 * r1, r2 * r2);
        let mut err = 0.0f64;
        let mut ratio = 0.0f64;
        let mut n = 0;
        for th in [0.7, 1.3, 2.2, 4.0, 5.1] {
            let d = build_darboux(&t, &DarbouxSpec::MonoAngle { t: th }).unwrap();
            let (l1, l2, res) = homogeneous_lambdas(&d, r1, r2);
            let cot = 1.0 / th.tan();
            let w1 = (s2 - s1 + 2.0 * r1 * r2 * cot) / (r1 * (s1 + s2));
            let w2 = (s1 - s2 - 2.0 * r1 * r2 * cot) / (r2 * (s1 + s2));
            err = err
                .max((l1 - Quaternion::real(w1)).norm())
                .max((l2 - Quaternion::real(w2)).norm())
                .max(res);
            ratio = ratio.max((l1.norm() / l2.norm() - r2 / r1).abs());
            n += 1;
        }
        for (m, a) in [(1.7, 0.4), (0.6, 2.0), (2.2, -2.5)] {
            let key = sp.eta(Cx::from_polar(m, a)).unwrap();
            let am = key.a;
            let p = t.beta0().re * am.re + t.beta0().im * am.im;
            let den = 4.0 * am.norm_sqr().powi(2) + p * p;
            let w = Quaternion::new(2.0 * p / den, 0.0, 4.0 * am.norm_sqr() / den, 0.0);
            for which in 0..key.dim() {
                let d = darboux_mono(&t, &key, which).unwrap();
                let (l1, l2, res) = homogeneous_lambdas(&d, r1, r2);
                let w1 = Quaternion::real(1.0 / r1) - w * am.re;
                let w2 = Quaternion::real(1.0 / r2) + w.conj() * am.im;
                err = err.max((l1 - w1).norm()).max((l2 - w2).norm()).max(res);
                ratio = ratio.max((l1.norm() / l2.norm() - r2 / r1).abs());
                n += 1;
            }
        }
        cr.check(
            err < 1e-8 && ratio < 1e-8,
            format!(
                "homogeneous r1 = {r1}, r2 = {r2}: lambda1, lambda2 of {n} transforms, max error {err:.2e}, | |l1|/|l2| - r2/r1 | {ratio:.2e}"
            ),
        );
    }
    cr
}

fn criterion_7() -> Criterion {
    let mut cr = Criterion::new(7, "fd convergence");
    for (name, t) in fixtures() {
        let r = convergence_ratio(&t, 16, 1e-3);
        cr.check(
            (3.0..=5.0).contains(&r),
            format!("{name}: conformal residual ratio {r:.4}"),
        );
        let s = mu_sections(&t, c(0.5, 0.0)).unwrap().alpha_plus;
        let r = section_convergence_ratio(&s, &t, 16, 1e-3);
        cr.check(
            (3.0..=5.0).contains(&r),
            format!("{name}: holomorphic residual ratio {r:.4}"),
        );
    }
    cr
}

fn criterion_8() -> Criterion {
    let mut cr = Criterion::new(8, "end-to-end verify");
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let start = Instant::now();
    for name in ["clifford", "r2", "castro_urbano"] {
        let report =
            std::env::temp_dir().join(format!("hsl-acceptance-{}-{name}.txt", std::process::id()));
        let cli = Cli::try_parse_from([
            "hsl".as_ref(),
            "verify".as_ref(),
            "--config".as_ref(),
            dir.join(format!("{name}.cfg")).as_os_str(),
            "--out".as_ref(),
            report.as_os_str(),
        ] as [&std::ffi::OsStr; 6])
        .expect("arguments");
        let mut log = Vec::new();
        let code = run(cli, &mut log);
        let text = std::fs::read_to_string(&report).unwrap_or_default();
        let _ = std::fs::remove_file(&report);
        let last = text.lines().last().unwrap_or("").to_string();
        cr.check(
            code == 0,
            format!(
                "hsl verify {name}.cfg: exit {code}, {last}{}",
                String::from_utf8_lossy(&log).trim_end()
            ),
        );
    }
    let el = start.elapsed().as_secs_f64();
    cr.check(el < 60.0, format!("runtime {el:.3} s < 60 s"));
    cr
}

fn main() {
    let all = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    for cr in &all {
        cr.print();
    }
    let failed = all.iter().filter(|c| !c.passed()).count();
    println!("{} criteria, {} failed", all.len(), failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
