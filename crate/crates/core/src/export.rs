//! Grid sampling, projection to ℝ³ and the OBJ / CSV writers.

use std::io::Write;

use crate::darboux::DarbouxSurface;
use crate::lattice::Lattice;
use crate::quaternion::{Cx, Quaternion};
use crate::spectral::{MultiplierKey, Spectrum};
use crate::torus::HslTorus;
use crate::Error;

const POLE_TOL: f64 = 1e-9;

/// Anything that can be evaluated over the torus.
pub trait Surface {
    fn lattice(&self) -> &Lattice;
    fn eval(&self, z: Cx) -> Result<Quaternion, Error>;
}

impl Surface for HslTorus {
    fn lattice(&self) -> &Lattice {
        HslTorus::lattice(self)
    }
    fn eval(&self, z: Cx) -> Result<Quaternion, Error> {
        Ok(self.f(z))
    }
}

impl Surface for DarbouxSurface {
    fn lattice(&self) -> &Lattice {
        self.base().lattice()
    }
    fn eval(&self, z: Cx) -> Result<Quaternion, Error> {
        DarbouxSurface::eval(self, z)
    }
}

#[derive(Clone, Debug)]
pub struct MeshSample {
    pub n: usize,
    pub m: usize,
    /// Row-major, `points[i * m + j]` at `z = (i/n) ω₁ + (j/m) ω₂`.
    pub points: Vec<[f64; 4]>,
    /// Vertices where evaluation failed; their coordinates are NaN.
    pub flags: Vec<bool>,
}

pub fn sample(s: &dyn Surface, n: usize, m: usize) -> Result<MeshSample, Error> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidGrid(n, m));
    }
    let l = *s.lattice();
    let mut points = Vec::with_capacity(n * m);
    let mut flags = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let z = l.omega1 * (i as f64 / n as f64) + l.omega2 * (j as f64 / m as f64);
            match s.eval(z) {
                Ok(q) if q.is_finite() => {
                    points.push(q.to_array());
                    flags.push(false);
                }
                _ => {
                    points.push([f64::NAN; 4]);
                    flags.push(true);
                }
            }
        }
    }
    Ok(MeshSample {
        n,
        m,
        points,
        flags,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Drop coordinate `k` (1-based).
    Ortho(u8),
    Stereo,
}

impl std::str::FromStr for Projection {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "stereo" => Ok(Projection::Stereo),
            "ortho1" | "ortho_1" => Ok(Projection::Ortho(1)),
            "ortho2" | "ortho_2" => Ok(Projection::Ortho(2)),
            "ortho3" | "ortho_3" => Ok(Projection::Ortho(3)),
            "ortho4" | "ortho_4" => Ok(Projection::Ortho(4)),
            _ => Err(format!("unknown projection '{s}' (stereo, ortho1..ortho4)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Mesh3 {
    pub n: usize,
    pub m: usize,
    pub points: Vec<[f64; 3]>,
    pub flags: Vec<bool>,
}

/// `(x₁, x₂, x₃)/(1 − x₄)`, `None` at the pole.
pub fn stereographic(x: [f64; 4]) -> Option<[f64; 3]> {
    let d = 1.0 - x[3];
    if d.abs() < POLE_TOL {
        return None;
    }
    Some([x[0] / d, x[1] / d, x[2] / d])
}

pub fn project(mesh: &MeshSample, mode: Projection) -> Mesh3 {
    let mut flags = mesh.flags.clone();
    let points = match mode {
        Projection::Ortho(k) => {
            let k = (k as usize).clamp(1, 4) - 1;
            mesh.points
                .iter()
                .map(|p| {
                    let mut out = [0.0; 3];
                    let mut c = 0;
                    for (i, &v) in p.iter().enumerate() {
                        if i != k {
                            out[c] = v;
                            c += 1;
                        }
                    }
                    out
                })
                .collect()
        }
        Projection::Stereo => {
            let good: Vec<&[f64; 4]> = mesh
                .points
                .iter()
                .zip(&mesh.flags)
                .filter(|(_, f)| !**f)
                .map(|(p, _)| p)
                .collect();
            let cnt = good.len().max(1) as f64;
            let mut centroid = [0.0; 4];
            for p in &good {
                for k in 0..4 {
                    centroid[k] += p[k] / cnt;
                }
            }
            let radius = good
                .iter()
                .map(|p| {
                    (0..4)
                        .map(|k| (p[k] - centroid[k]).powi(2))
                        .sum::<f64>()
                        .sqrt()
                })
                .sum::<f64>()
                / cnt;
            let radius = if radius > 0.0 { radius } else { 1.0 };
            mesh.points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let mut x = [0.0; 4];
                    for k in 0..4 {
                        x[k] = (p[k] - centroid[k]) / radius;
                    }
                    stereographic(x).unwrap_or_else(|| {
                        flags[i] = true;
                        [f64::NAN; 3]
                    })
                })
                .collect()
        }
    };
    Mesh3 {
        n: mesh.n,
        m: mesh.m,
        points,
        flags,
    }
}

fn num(v: f64) -> String {
    // no "-0" in output
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// `v x y z` lines, then 1-based quads with periodic wrap. Flagged vertices
/// are listed in trailing comments.
pub fn write_obj<W: Write + ?Sized>(mesh: &Mesh3, out: &mut W) -> Result<(), Error> {
    for p in &mesh.points {
        writeln!(out, "v {} {} {}", num(p[0]), num(p[1]), num(p[2]))?;
    }
    let (n, m) = (mesh.n, mesh.m);
    for i in 0..n {
        for j in 0..m {
            let a = i * m + j + 1;
            let b = ((i + 1) % n) * m + j + 1;
            let c = ((i + 1) % n) * m + (j + 1) % m + 1;
            let d = i * m + (j + 1) % m + 1;
            writeln!(out, "f {a} {b} {c} {d}")?;
        }
    }
    for (k, _) in mesh.flags.iter().enumerate().filter(|(_, f)| **f) {
        writeln!(out, "# flagged {}", k + 1)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub a: Cx,
    pub b: Cx,
    pub dim: usize,
    pub deltas: Vec<Cx>,
    pub lambdas: Vec<Cx>,
}

impl From<&MultiplierKey> for SpectrumRow {
    fn from(k: &MultiplierKey) -> Self {
        SpectrumRow {
            a: k.a,
            b: k.b,
            dim: k.dim(),
            deltas: k.freqs.clone(),
            lambdas: k.lambdas.clone(),
        }
    }
}

fn cnum(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

fn clist(v: &[Cx]) -> String {
    v.iter()
        .map(|c| format!("{} {}", cnum(c.re), cnum(c.im)))
        .collect::<Vec<_>>()
        .join(";")
}

pub const CSV_HEADER: &str = "A_re,A_im,B_re,B_im,dim,delta_list,lambda_list";

pub fn write_spectrum_csv<W: Write + ?Sized>(
    rows: &[SpectrumRow],
    out: &mut W,
) -> Result<(), Error> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            cnum(r.a.re),
            cnum(r.a.im),
            cnum(r.b.re),
            cnum(r.b.im),
            r.dim,
            clist(&r.deltas),
            clist(&r.lambdas)
        )?;
    }
    Ok(())
}

/// Rows for the `A = 0` circle `B = β₀/2 (1 + e^{it})` at `steps` uniform
/// angles, the circle points where two or more frequency circles meet, and
/// the double points with `|ζ| ≤ max_norm`.
pub fn spectrum_rows(sp: &Spectrum, steps: usize, max_norm: f64) -> Vec<SpectrumRow> {
    let b0 = sp.beta0();
    let half = b0 * 0.5;
    let zero = Cx::new(0.0, 0.0);
    let mut rows = Vec::new();
    for i in 0..steps {
        let t = 2.0 * std::f64::consts::PI * i as f64 / steps as f64;
        let key = sp.admissible_freqs(zero, half * (Cx::new(1.0, 0.0) + Cx::from_polar(1.0, t)));
        rows.push(SpectrumRow::from(&key));
    }
    // B on both circles |B − β₀/2| = |B − ε| = |β₀|/2, ε ∈ E \ {β₀/2}
    let rad = half.norm();
    let mut special: Vec<Cx> = Vec::new();
    for e in sp.disk_points() {
        let d = e - half;
        let dn = d.norm();
        if dn < 1e-9 || dn > 2.0 * rad + 1e-9 {
            continue;
        }
        let mid = half + d * 0.5;
        let hgt = (rad * rad - 0.25 * dn * dn).max(0.0).sqrt();
        let perp = Cx::new(-d.im, d.re) / dn;
        for s in [-1.0, 1.0] {
            let b = sp.dual().reduce(mid + perp * (hgt * s));
            if !special.iter().any(|p| (p - b).norm() < 1e-9) {
                special.push(b);
            }
        }
    }
    crate::lattice::sort_points(&mut special);
    for b in special {
        rows.push(SpectrumRow::from(&sp.admissible_freqs(zero, b)));
    }
    for dp in sp.double_points(max_norm) {
        rows.push(SpectrumRow::from(&dp.key));
    }
    rows
}
