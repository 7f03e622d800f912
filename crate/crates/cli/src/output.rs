//! CSV tables, the `simulate` driver and its manifest.
//!
//! Numbers are written as `{:.16e}` (17 significant digits), which round-trips
//! every binary64 value.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use relaxwave::diagnostics::DiagnosticsRecord;
use relaxwave::riemann::{centered_wave_at_speed, riemann_invariants};
use relaxwave::solver::{Background, FieldSet, Grid1D, Observer};
use relaxwave::SmoothWave;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

pub const DIAGNOSTICS_HEADER: &str =
    "t,l2_phi,l2_psi,l2_theta,l2_q,l2_S,linf_phi,linf_psi,linf_theta,linf_q,linf_S,\
h1_all,h2_all,eta_total,E_running,D_t,GR,sup_centered,mass_balance_error";
pub const PROFILE_HEADER: &str = "x,v,u,theta,q,S,vR,uR,thetaR,qR,SR";
pub const WAVE_HEADER: &str = "x,vR,uR,thetaR,qR,SR,vRx,uRx,thetaRx,w";
pub const RIEMANN_HEADER: &str = "xi,v,u,theta,z1,s";

pub fn write_row<W: Write + ?Sized>(out: &mut W, values: &[f64]) -> std::io::Result<()> {
    let line: Vec<String> = values.iter().map(|x| format!("{x:.16e}")).collect();
    writeln!(out, "{}", line.join(","))
}

pub fn diagnostics_row(r: &DiagnosticsRecord) -> Vec<f64> {
    let mut row = vec![r.t];
    row.extend(r.l2);
    row.extend(r.linf);
    row.extend([
        r.h1_all,
        r.h2_all,
        r.eta_total,
        r.e_running,
        r.d_t,
        r.gr,
        r.sup_centered,
        r.mass_balance_error,
    ]);
    row
}

/// Smooth wave at time `t` on `n` evenly spaced points of `[x_min, x_max]`.
pub fn write_wave<W: Write + ?Sized>(
    out: &mut W,
    wave: &SmoothWave,
    t: f64,
    x_min: f64,
    x_max: f64,
    n: usize,
) -> Result<(), CliError> {
    let io = |e| io_error("wave table", e);
    writeln!(out, "{WAVE_HEADER}").map_err(io)?;
    for x in linspace(x_min, x_max, n) {
        let p = wave.wave_eval(t, x)?;
        write_row(
            out,
            &[
                x, p.v, p.u, p.theta, p.q_ref, p.s_ref, p.vx, p.ux, p.thetax, p.w,
            ],
        )
        .map_err(io)?;
    }
    Ok(())
}

/// Centered fan by self-similar speed, with a quarter of the fan width of
/// constant state on each side.
pub fn write_riemann<W: Write + ?Sized>(
    out: &mut W,
    wave: &SmoothWave,
    n: usize,
) -> Result<(), CliError> {
    let io = |e| io_error("riemann table", e);
    let (gas, data) = (wave.gas(), wave.riemann());
    let pad = 0.25 * (data.w_plus - data.w_minus);
    writeln!(out, "{RIEMANN_HEADER}").map_err(io)?;
    for xi in linspace(data.w_minus - pad, data.w_plus + pad, n) {
        let state = centered_wave_at_speed(gas, data, xi);
        let (z1, s) = riemann_invariants(gas, &state, &data.right)?;
        write_row(out, &[xi, state.v, state.u, state.theta, z1, s]).map_err(io)?;
    }
    Ok(())
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| {
        if i + 1 == n && n > 1 {
            b
        } else {
            a + step * i as f64
        }
    })
}

fn io_error(path: impl Into<String>, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.into(),
        source,
    }
}

/// Everything plots needs to read a run back.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub config: RunConfig,
    pub version: String,
    pub platform: String,
    pub started: String,
    pub finished: String,
    pub diagnostics: PathBuf,
    pub profiles: Vec<ProfileEntry>,
}

#[derive(Debug, Serialize)]
pub struct ProfileEntry {
    pub t: f64,
    pub path: PathBuf,
}

struct RunWriter<'a> {
    dir: &'a Path,
    grid: Grid1D,
    background: Background,
    diagnostics: BufWriter<File>,
    profile_times: Vec<f64>,
    profiles: Vec<ProfileEntry>,
}

impl RunWriter<'_> {
    fn write_profile(&mut self, fields: &FieldSet) -> Result<(), CliError> {
        let name = format!("profiles_{}.csv", self.profiles.len());
        let path = self.dir.join(&name);
        let io = |e| io_error(path.display().to_string(), e);
        let mut out = BufWriter::new(File::create(&path).map_err(io)?);
        writeln!(out, "{PROFILE_HEADER}").map_err(io)?;
        for i in 0..fields.n() {
            let x = self.grid.center(i);
            let s = fields.cell(i);
            let r = self.background.reference(fields.t, x)?.state;
            write_row(
                &mut out,
                &[x, s.v, s.u, s.theta, s.q, s.s, r.v, r.u, r.theta, r.q, r.s],
            )
            .map_err(io)?;
        }
        out.flush().map_err(io)?;
        self.profiles.push(ProfileEntry {
            t: fields.t,
            path: name.into(),
        });
        Ok(())
    }
}

impl Observer for RunWriter<'_> {
    fn observe(
        &mut self,
        record: &DiagnosticsRecord,
        fields: &FieldSet,
        _: Option<usize>,
    ) -> relaxwave::Result<()> {
        let internal = |e: CliError| relaxwave::Error::Internal(e.to_string());
        write_row(&mut self.diagnostics, &diagnostics_row(record))
            .map_err(|e| internal(io_error("diagnostics.csv", e)))?;
        let due = self.profile_times.iter().position(|t| *t == fields.t);
        if let Some(k) = due {
            self.profile_times.remove(k);
            self.write_profile(fields).map_err(internal)?;
        }
        Ok(())
    }
}

/// Runs the solver and writes `diagnostics.csv`, `profiles_<k>.csv` and
/// `manifest.json` into `dir`.
pub fn simulate(config: &RunConfig, dir: &Path) -> Result<RunManifest, CliError> {
    let sim = config.to_sim()?;
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir.display().to_string(), e))?;
    let started = now();
    let diag_path = dir.join("diagnostics.csv");
    let io = |e| io_error(diag_path.display().to_string(), e);
    let mut diagnostics = BufWriter::new(File::create(&diag_path).map_err(io)?);
    writeln!(diagnostics, "{DIAGNOSTICS_HEADER}").map_err(io)?;

    let mut profile_times = config.profile_times();
    profile_times.dedup();
    let mut writer = RunWriter {
        dir,
        grid: sim.grid,
        background: sim.background.clone(),
        diagnostics,
        profile_times,
        profiles: Vec::new(),
    };
    relaxwave::solver::run(sim, &mut writer)?;
    writer.diagnostics.flush().map_err(io)?;

    let manifest = RunManifest {
        config: config.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        platform: format!("{}-{}", std::env::consts::ARCH, std::env::consts::OS),
        started,
        finished: now(),
        diagnostics: "diagnostics.csv".into(),
        profiles: writer.profiles,
    };
    let path = dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&path, json + "\n").map_err(|e| io_error(path.display().to_string(), e))?;
    Ok(manifest)
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339()
}
