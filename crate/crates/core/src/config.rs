//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! [torus]
//! omega1 = 1 0
//! omega2 = 0 1
//! beta0 = 1 -1
//! coeff = 0.5 0.5 : 0.5 0.5 0.5 -0.5
//! ```
//!
//! Complex values are two decimals, quaternions four. `homogeneous = r1 r2`
//! may replace the explicit lattice. See the README for all keys.

use std::fmt;

use crate::export::Projection;
use crate::lattice::Lattice;
use crate::quaternion::{Cx, Quaternion};
use crate::torus::{homogeneous_torus, HslTorus};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum TorusSpec {
    Explicit {
        omega1: Cx,
        omega2: Cx,
        beta0: Cx,
        coeffs: Vec<(Cx, Quaternion)>,
    },
    Homogeneous {
        r1: f64,
        r2: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum DarbouxSpec {
    /// Frequency `which` of `Γ*_{A,B}`.
    Mono { a: Cx, b: Cx, which: usize },
    /// `A = 0`, `B = β₀/2 (1 + e^{it})`, frequency `β₀/2`.
    MonoAngle { t: f64 },
    /// `weights` are explicit `(t, u)`; otherwise `u` is matched to the sorted `I_B`.
    Poly {
        b: Cx,
        weights: Vec<(f64, Cx)>,
        u: Vec<Cx>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MuSpec {
    pub mu: Cx,
    pub plus: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub torus: TorusSpec,
    pub spectrum_steps: usize,
    pub spectrum_max_norm: Option<f64>,
    pub darboux: Option<DarbouxSpec>,
    pub mu: Option<MuSpec>,
    pub export_grid: usize,
    pub projection: Projection,
    pub verify_grid: usize,
    pub fd_step: f64,
    pub tol: f64,
}

impl RunConfig {
    pub fn torus(&self) -> Result<HslTorus, Error> {
        match &self.torus {
            TorusSpec::Homogeneous { r1, r2 } => Ok(homogeneous_torus(*r1, *r2)),
            TorusSpec::Explicit {
                omega1,
                omega2,
                beta0,
                coeffs,
            } => HslTorus::new(Lattice::new(*omega1, *omega2)?, *beta0, coeffs.clone()),
        }
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)?;
        text.parse()
    }
}

#[derive(Default)]
struct Raw {
    omega1: Option<Cx>,
    omega2: Option<Cx>,
    beta0: Option<Cx>,
    coeffs: Vec<(Cx, Quaternion)>,
    homogeneous: Option<(f64, f64)>,
    steps: Option<usize>,
    max_norm: Option<f64>,
    mode: Option<String>,
    a: Option<Cx>,
    b: Option<Cx>,
    which: Option<usize>,
    t: Option<f64>,
    weights: Vec<(f64, Cx)>,
    u: Vec<Cx>,
    mu: Option<Cx>,
    sheet: Option<bool>,
    export_grid: Option<usize>,
    projection: Option<Projection>,
    verify_grid: Option<usize>,
    fd_step: Option<f64>,
    tol: Option<f64>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Config {
        line,
        msg: msg.into(),
    }
}

fn reals(line: usize, s: &str, n: usize) -> Result<Vec<f64>, Error> {
    let v: Result<Vec<f64>, _> = s.split_whitespace().map(str::parse::<f64>).collect();
    let v = v.map_err(|e| err(line, format!("bad number in '{s}': {e}")))?;
    if v.len() != n {
        return Err(err(line, format!("expected {n} numbers, got {}", v.len())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(err(line, "numbers must be finite"));
    }
    Ok(v)
}

fn cx(line: usize, s: &str) -> Result<Cx, Error> {
    let v = reals(line, s, 2)?;
    Ok(Cx::new(v[0], v[1]))
}

fn real(line: usize, s: &str) -> Result<f64, Error> {
    Ok(reals(line, s, 1)?[0])
}

fn count(line: usize, s: &str) -> Result<usize, Error> {
    s.trim()
        .parse()
        .map_err(|e| err(line, format!("bad integer '{s}': {e}")))
}

fn set<T>(line: usize, slot: &mut Option<T>, v: T, key: &str) -> Result<(), Error> {
    if slot.is_some() {
        return Err(err(line, format!("duplicate key '{key}'")));
    }
    *slot = Some(v);
    Ok(())
}

impl std::str::FromStr for RunConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let mut raw = Raw::default();
        let mut section = String::new();
        for (idx, full) in text.lines().enumerate() {
            let ln = idx + 1;
            let line = full.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| err(ln, "unterminated section"))?;
                section = name.trim().to_string();
                if !["torus", "spectrum", "darboux", "mu", "export", "verify"]
                    .contains(&section.as_str())
                {
                    return Err(err(ln, format!("unknown section [{section}]")));
                }
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| err(ln, "expected 'key = value'"))?;
            let (key, val) = (key.trim(), val.trim());
            match (section.as_str(), key) {
                ("torus", "omega1") => set(ln, &mut raw.omega1, cx(ln, val)?, key)?,
                ("torus", "omega2") => set(ln, &mut raw.omega2, cx(ln, val)?, key)?,
                ("torus", "beta0") => set(ln, &mut raw.beta0, cx(ln, val)?, key)?,
                ("torus", "coeff") => {
                    let (d, q) = val
                        .split_once(':')
                        .ok_or_else(|| err(ln, "coeff needs 'd_re d_im : w x y z'"))?;
                    let q = reals(ln, q, 4)?;
                    raw.coeffs
                        .push((cx(ln, d)?, Quaternion::new(q[0], q[1], q[2], q[3])));
                }
                ("torus", "homogeneous") => {
                    let v = reals(ln, val, 2)?;
                    if v[0] <= 0.0 || v[1] <= 0.0 {
                        return Err(err(ln, "homogeneous radii must be positive"));
                    }
                    set(ln, &mut raw.homogeneous, (v[0], v[1]), key)?
                }
                ("spectrum", "steps") => set(ln, &mut raw.steps, count(ln, val)?, key)?,
                ("spectrum", "max_norm") => set(ln, &mut raw.max_norm, real(ln, val)?, key)?,
                ("darboux", "mode") => set(ln, &mut raw.mode, val.to_string(), key)?,
                ("darboux", "A") => set(ln, &mut raw.a, cx(ln, val)?, key)?,
                ("darboux", "B") => set(ln, &mut raw.b, cx(ln, val)?, key)?,
                ("darboux", "which") => set(ln, &mut raw.which, count(ln, val)?, key)?,
                ("darboux", "t") => set(ln, &mut raw.t, real(ln, val)?, key)?,
                ("darboux", "weight") => {
                    let v = reals(ln, val, 3)?;
                    raw.weights.push((v[0], Cx::new(v[1], v[2])));
                }
                ("darboux", "u") => raw.u.push(cx(ln, val)?),
                ("mu", "mu") => set(ln, &mut raw.mu, cx(ln, val)?, key)?,
                ("mu", "sheet") => {
                    let p = match val {
                        "plus" | "+" => true,
                        "minus" | "-" => false,
                        _ => return Err(err(ln, "sheet is 'plus' or 'minus'")),
                    };
                    set(ln, &mut raw.sheet, p, key)?
                }
                ("export", "grid") => set(ln, &mut raw.export_grid, count(ln, val)?, key)?,
                ("export", "projection") => {
                    let p = val.parse::<Projection>().map_err(|e| err(ln, e))?;
                    set(ln, &mut raw.projection, p, key)?
                }
                ("verify", "grid") => set(ln, &mut raw.verify_grid, count(ln, val)?, key)?,
                ("verify", "fd_step") => set(ln, &mut raw.fd_step, real(ln, val)?, key)?,
                ("verify", "tol") => set(ln, &mut raw.tol, real(ln, val)?, key)?,
                ("", _) => return Err(err(ln, format!("key '{key}' outside any section"))),
                (s, _) => return Err(err(ln, format!("unknown key '{key}' in [{s}]"))),
            }
        }
        raw.finish()
    }
}

impl Raw {
    fn finish(self) -> Result<RunConfig, Error> {
        let bad = |m: &str| Error::ConfigInvalid(m.to_string());
        let torus = match self.homogeneous {
            Some((r1, r2)) => {
                if self.omega1.is_some()
                    || self.omega2.is_some()
                    || self.beta0.is_some()
                    || !self.coeffs.is_empty()
                {
                    return Err(bad("'homogeneous' excludes omega1/omega2/beta0/coeff"));
                }
                TorusSpec::Homogeneous { r1, r2 }
            }
            None => TorusSpec::Explicit {
                omega1: self.omega1.ok_or_else(|| bad("[torus] needs omega1"))?,
                omega2: self.omega2.ok_or_else(|| bad("[torus] needs omega2"))?,
                beta0: self.beta0.ok_or_else(|| bad("[torus] needs beta0"))?,
                coeffs: if self.coeffs.is_empty() {
                    return Err(bad("[torus] needs at least one coeff"));
                } else {
                    self.coeffs
                },
            },
        };
        let darboux = match self.mode.as_deref() {
            None => {
                if self.a.is_some()
                    || self.b.is_some()
                    || self.t.is_some()
                    || !self.weights.is_empty()
                    || !self.u.is_empty()
                {
                    return Err(bad("[darboux] needs 'mode'"));
                }
                None
            }
            Some("mono") => {
                if !self.weights.is_empty() || !self.u.is_empty() {
                    return Err(bad("mono mode takes no weight/u"));
                }
                match (self.t, self.a, self.b) {
                    (Some(t), None, None) if self.which.is_none() => {
                        Some(DarbouxSpec::MonoAngle { t })
                    }
                    (None, a, Some(b)) => Some(DarbouxSpec::Mono {
                        a: a.unwrap_or(Cx::new(0.0, 0.0)),
                        b,
                        which: self.which.unwrap_or(0),
                    }),
                    _ => return Err(bad("mono mode takes either 't' or 'A'/'B'/'which'")),
                }
            }
            Some("poly") => {
                if self.a.is_some() || self.t.is_some() || self.which.is_some() {
                    return Err(bad("poly mode takes B and weight or u"));
                }
                let b = self.b.ok_or_else(|| bad("poly mode needs B"))?;
                if self.weights.is_empty() == self.u.is_empty() {
                    return Err(bad("poly mode takes either weight lines or u lines"));
                }
                Some(DarbouxSpec::Poly {
                    b,
                    weights: self.weights,
                    u: self.u,
                })
            }
            Some(m) => return Err(bad(&format!("unknown darboux mode '{m}'"))),
        };
        let mu = match self.mu {
            Some(mu) => Some(MuSpec {
                mu,
                plus: self.sheet.unwrap_or(true),
            }),
            None if self.sheet.is_some() => return Err(bad("[mu] sheet without mu")),
            None => None,
        };
        let cfg = RunConfig {
            torus,
            spectrum_steps: self.steps.unwrap_or(64),
            spectrum_max_norm: self.max_norm,
            darboux,
            mu,
            export_grid: self.export_grid.unwrap_or(128),
            projection: self.projection.unwrap_or(Projection::Stereo),
            verify_grid: self.verify_grid.unwrap_or(crate::verify::DEFAULT_GRID),
            fd_step: self.fd_step.unwrap_or(crate::verify::DEFAULT_STEP),
            tol: self.tol.unwrap_or(crate::verify::DEFAULT_TOL),
        };
        if cfg.export_grid < 2 || cfg.verify_grid < 1 || cfg.spectrum_steps < 1 {
            return Err(bad(
                "grid sizes and steps must be positive (export grid ≥ 2)",
            ));
        }
        if !(cfg.fd_step > 0.0) || !(cfg.tol > 0.0) {
            return Err(bad("fd_step and tol must be positive"));
        }
        cfg.torus()
            .map_err(|e| Error::ConfigInvalid(format!("torus: {e}")))?;
        Ok(cfg)
    }
}

struct C(Cx);

impl fmt::Display for C {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {:?}", self.0.re, self.0.im)
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[torus]")?;
        match &self.torus {
            TorusSpec::Homogeneous { r1, r2 } => writeln!(f, "homogeneous = {r1:?} {r2:?}")?,
            TorusSpec::Explicit {
                omega1,
                omega2,
                beta0,
                coeffs,
            } => {
                writeln!(f, "omega1 = {}", C(*omega1))?;
                writeln!(f, "omega2 = {}", C(*omega2))?;
                writeln!(f, "beta0 = {}", C(*beta0))?;
                for (d, q) in coeffs {
                    writeln!(
                        f,
                        "coeff = {} : {:?} {:?} {:?} {:?}",
                        C(*d),
                        q.w,
                        q.x,
                        q.y,
                        q.z
                    )?;
                }
            }
        }
        writeln!(f, "[spectrum]")?;
        writeln!(f, "steps = {}", self.spectrum_steps)?;
        if let Some(m) = self.spectrum_max_norm {
            writeln!(f, "max_norm = {m:?}")?;
        }
        if let Some(d) = &self.darboux {
            writeln!(f, "[darboux]")?;
            match d {
                DarbouxSpec::Mono { a, b, which } => writeln!(
                    f,
                    "mode = mono\nA = {}\nB = {}\nwhich = {which}",
                    C(*a),
                    C(*b)
                )?,
                DarbouxSpec::MonoAngle { t } => writeln!(f, "mode = mono\nt = {t:?}")?,
                DarbouxSpec::Poly { b, weights, u } => {
                    writeln!(f, "mode = poly\nB = {}", C(*b))?;
                    for (t, w) in weights {
                        writeln!(f, "weight = {t:?} {:?} {:?}", w.re, w.im)?;
                    }
                    for w in u {
                        writeln!(f, "u = {}", C(*w))?;
                    }
                }
            }
        }
        if let Some(m) = &self.mu {
            writeln!(
                f,
                "[mu]\nmu = {}\nsheet = {}",
                C(m.mu),
                if m.plus { "plus" } else { "minus" }
            )?;
        }
        let proj = match self.projection {
            Projection::Stereo => "stereo".to_string(),
            Projection::Ortho(k) => format!("ortho{k}"),
        };
        writeln!(
            f,
            "[export]\ngrid = {}\nprojection = {proj}",
            self.export_grid
        )?;
        writeln!(
            f,
            "[verify]\ngrid = {}\nfd_step = {:?}\ntol = {:?}",
            self.verify_grid, self.fd_step, self.tol
        )
    }
}
