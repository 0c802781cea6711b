//! The `hsl` command line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{DarbouxSpec, RunConfig};
use crate::darboux::{
    admissible_angles, darboux_from_section, darboux_mono, darboux_poly, prolongation_t,
    DarbouxKind, DarbouxSurface,
};
use crate::export::{
    project, sample, spectrum_rows, write_obj, write_spectrum_csv, Projection, Surface,
};
use crate::quaternion::Cx;
use crate::spectral::Spectrum;
use crate::torus::HslTorus;
use crate::verify::{run_suite, SuiteOptions};
use crate::Error;

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hsl",
    version,
    about = "Hamiltonian stationary tori, spectra and Darboux transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep the multiplier spectrum; write CSV
    Spectrum(Common),
    /// Sample the torus; write OBJ
    Synth(Common),
    /// Darboux transform from [darboux]; write OBJ
    Darboux(Common),
    /// μ-Darboux transform from [mu]; write OBJ
    Mu(Common),
    /// Run every finite-difference and spectral check
    Verify(Common),
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long)]
    pub config: PathBuf,
    /// Output file (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub grid: Option<usize>,
    /// stereo | ortho1 | ortho2 | ortho3 | ortho4
    #[arg(long)]
    pub projection: Option<Projection>,
    #[arg(long = "fd-step")]
    pub fd_step: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

/// Runs the command, writing reports to `log`. Returns the exit code.
pub fn run<L: Write>(cli: Cli, log: &mut L) -> i32 {
    let (cmd, common) = match &cli.command {
        Command::Spectrum(c) => ("spectrum", c),
        Command::Synth(c) => ("synth", c),
        Command::Darboux(c) => ("darboux", c),
        Command::Mu(c) => ("mu", c),
        Command::Verify(c) => ("verify", c),
    };
    let cfg = match RunConfig::from_file(&common.config) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(log, "error: {}: {e}", common.config.display());
            return exit_code(&e);
        }
    };
    match dispatch(cmd, common, &cfg, log) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(log, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch<L: Write>(cmd: &str, c: &Common, cfg: &RunConfig, log: &mut L) -> Result<i32, Error> {
    let t = cfg.torus()?;
    match cmd {
        "spectrum" => {
            let sp = Spectrum::new(t.lattice(), t.beta0())?;
            let steps = c.grid.unwrap_or(cfg.spectrum_steps);
            let max_norm = cfg.spectrum_max_norm.unwrap_or(3.0 * t.beta0().norm());
            let rows = spectrum_rows(&sp, steps, max_norm);
            emit(c, |w| write_spectrum_csv(&rows, w))?;
            Ok(0)
        }
        "synth" => {
            export(c, cfg, &t)?;
            Ok(0)
        }
        "darboux" => {
            let spec = cfg
                .darboux
                .as_ref()
                .ok_or_else(|| Error::ConfigInvalid("darboux needs a [darboux] section".into()))?;
            let d = build_darboux(&t, spec)?;
            if d.kind() == DarbouxKind::PointAtInfinity {
                writeln!(log, "point_at_infinity")?;
                return Ok(0);
            }
            if d.is_singular() {
                let (lo, hi) = d.r_range();
                writeln!(log, "singular: min|r| = {lo:.3e}, max|r| = {hi:.3e}")?;
            }
            if d.is_constant() {
                writeln!(log, "constant transform")?;
            }
            export(c, cfg, &d)?;
            Ok(0)
        }
        "mu" => {
            let m = cfg
                .mu
                .ok_or_else(|| Error::ConfigInvalid("mu needs a [mu] section".into()))?;
            let sp = Spectrum::new(t.lattice(), t.beta0())?;
            if sp.is_degenerate_monodromy(m.mu) {
                writeln!(log, "degenerate monodromy at mu = {} {}", m.mu.re, m.mu.im)?;
            }
            let ms = crate::darboux::mu_sections(&t, m.mu)?;
            let sec = if m.plus {
                ms.alpha_plus
            } else {
                ms.alpha_minus
            };
            let probe = t.lattice().omega1 * 0.25 + t.lattice().omega2 * 0.25;
            if let Err(Error::TransformAtInfinity) = prolongation_t(&sec, &t, probe) {
                writeln!(log, "point_at_infinity")?;
                return Ok(0);
            }
            export(c, cfg, &darboux_from_section(&t, &sec))?;
            Ok(0)
        }
        _ => {
            let opt = SuiteOptions {
                grid_n: c.grid.unwrap_or(cfg.verify_grid),
                step: c.fd_step.unwrap_or(cfg.fd_step),
                tol: c.tol.unwrap_or(cfg.tol),
            };
            let lines = run_suite(&t, opt);
            let mut failed = 0;
            let mut text = String::new();
            for l in &lines {
                failed += usize::from(!l.passed);
                text.push_str(&format!("{l}\n"));
            }
            text.push_str(&format!("{} checks, {} failed\n", lines.len(), failed));
            emit(c, |w| Ok(w.write_all(text.as_bytes())?))?;
            Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
        }
    }
}

pub fn build_darboux(t: &HslTorus, spec: &DarbouxSpec) -> Result<DarbouxSurface, Error> {
    let sp = Spectrum::new(t.lattice(), t.beta0())?;
    match spec {
        DarbouxSpec::Mono { a, b, which } => darboux_mono(t, &sp.admissible_freqs(*a, *b), *which),
        DarbouxSpec::MonoAngle { t: angle } => {
            let half = t.beta0() * 0.5;
            let e = Cx::from_polar(1.0, *angle);
            let key = sp.admissible_freqs(Cx::new(0.0, 0.0), half * (Cx::new(1.0, 0.0) + e));
            let want = key.b - half * e;
            let which = key
                .freqs
                .iter()
                .enumerate()
                .min_by(|x, y| (x.1 - want).norm().total_cmp(&(y.1 - want).norm()))
                .map(|(i, _)| i)
                .ok_or(Error::EmptyKey)?;
            darboux_mono(t, &key, which)
        }
        DarbouxSpec::Poly { b, weights, u } => {
            if !weights.is_empty() {
                return darboux_poly(t, *b, weights);
            }
            let angles = admissible_angles(t, *b);
            if angles.len() != u.len() {
                return Err(Error::CoefficientCount {
                    expected: angles.len(),
                    got: u.len(),
                });
            }
            let w: Vec<(f64, Cx)> = angles.into_iter().zip(u.iter().copied()).collect();
            darboux_poly(t, *b, &w)
        }
    }
}

fn export(c: &Common, cfg: &RunConfig, s: &dyn Surface) -> Result<(), Error> {
    let n = c.grid.unwrap_or(cfg.export_grid);
    let mesh = project(&sample(s, n, n)?, c.projection.unwrap_or(cfg.projection));
    emit(c, |w| write_obj(&mesh, w))
}

fn emit(c: &Common, f: impl FnOnce(&mut dyn Write) -> Result<(), Error>) -> Result<(), Error> {
    match &c.out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}
