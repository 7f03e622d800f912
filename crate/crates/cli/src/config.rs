//! TOML experiment recipes.
//!
//! Every section is optional except the right end state and left volume of
//! `[riemann]`. Parsing fills in defaults, so serializing a parsed config
//! writes the fully resolved recipe.

use std::path::Path;

use relaxwave::riemann::build_riemann;
use relaxwave::solver::{Background, Component, Grid1D, Perturbation, SimConfig};
use relaxwave::{CellState, EndState, GasParams, SmoothWave};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GasSection {
    pub gamma: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub mu: f64,
    pub kappa: f64,
    pub tau1: f64,
    pub tau2: f64,
}

impl Default for GasSection {
    fn default() -> Self {
        let g = GasParams::default();
        Self {
            gamma: g.gamma,
            r: g.r,
            a: g.a_entropy,
            mu: g.mu,
            kappa: g.kappa,
            tau1: g.tau1,
            tau2: g.tau2,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RiemannSection {
    pub v_plus: Option<f64>,
    pub u_plus: Option<f64>,
    pub theta_plus: Option<f64>,
    pub v_minus: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WaveSection {
    pub epsilon: f64,
    pub q_exp: f64,
}

impl Default for WaveSection {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            q_exp: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            x_min: -60.0,
            x_max: 140.0,
            n: 2000,
        }
    }
}

/// Which reference the flow is compared against.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackgroundKind {
    /// Smooth rarefaction wave joining the two end states.
    #[default]
    Wave,
    /// The right end state at rest in the relaxation variables.
    Constant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub t_end: f64,
    pub cfl: f64,
    pub relaxation_split: bool,
    pub output_every: usize,
    pub profiles: usize,
    pub sample_times: Vec<f64>,
    pub background: BackgroundKind,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            t_end: 100.0,
            cfl: 0.4,
            relaxation_split: true,
            output_every: 100,
            profiles: 10,
            sample_times: Vec::new(),
            background: BackgroundKind::Wave,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PerturbationSection {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
    pub components: Vec<String>,
}

impl Default for PerturbationSection {
    fn default() -> Self {
        Self {
            amplitude: 0.0,
            center: 0.0,
            width: 2.0,
            components: vec!["v".into(), "u".into(), "theta".into()],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub gas: GasSection,
    pub riemann: RiemannSection,
    pub wave: WaveSection,
    pub grid: GridSection,
    pub run: RunSection,
    pub perturbation: PerturbationSection,
}

/// Reads, defaults and validates a recipe.
pub fn parse_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<RunConfig, CliError> {
    let config: RunConfig =
        toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
    config.to_sim()?;
    Ok(config)
}

impl RunConfig {
    /// Weak rarefaction used when a command runs without a recipe.
    pub fn demo() -> Self {
        Self {
            riemann: RiemannSection {
                v_plus: Some(1.2),
                u_plus: Some(0.0),
                theta_plus: Some(1.0),
                v_minus: Some(1.0),
            },
            ..Self::default()
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn gas(&self) -> Result<GasParams, CliError> {
        let g = &self.gas;
        GasParams::new(g.r, g.gamma, g.a, g.mu, g.kappa, g.tau1, g.tau2).map_err(config_error)
    }

    pub fn right_state(&self) -> Result<EndState, CliError> {
        let r = &self.riemann;
        Ok(EndState::new(
            required(r.v_plus, "v_plus")?,
            required(r.u_plus, "u_plus")?,
            required(r.theta_plus, "theta_plus")?,
        ))
    }

    pub fn wave(&self) -> Result<SmoothWave, CliError> {
        let gas = self.gas()?;
        let right = self.right_state()?;
        let v_minus = required(self.riemann.v_minus, "v_minus")?;
        let data = build_riemann(&gas, right, v_minus).map_err(config_error)?;
        SmoothWave::new(gas, data, self.wave.epsilon, self.wave.q_exp).map_err(config_error)
    }

    /// Profile snapshot times, evenly spread over `[0, t_end]`.
    pub fn profile_times(&self) -> Vec<f64> {
        let k = self.run.profiles;
        let t_end = self.run.t_end;
        match k {
            0 => Vec::new(),
            1 => vec![t_end],
            _ => (0..k).map(|i| t_end * i as f64 / (k - 1) as f64).collect(),
        }
    }

    pub fn to_sim(&self) -> Result<SimConfig, CliError> {
        let gas = self.gas()?;
        let wave = self.wave()?;
        let background = match self.run.background {
            BackgroundKind::Wave => Background::Wave(wave),
            BackgroundKind::Constant => {
                let r = self.right_state()?;
                Background::Constant(CellState::new(r.v, r.u, r.theta, 0.0, 0.0))
            }
        };
        let g = &self.grid;
        let grid = Grid1D::new(g.x_min, g.x_max, g.n).map_err(config_error)?;

        let p = &self.perturbation;
        let mut mask = [false; 5];
        for name in &p.components {
            let c = Component::from_name(name).ok_or_else(|| {
                CliError::Config(format!(
                    "perturbation.components: unknown component {name:?} (expected v, u, theta, q or S)"
                ))
            })?;
            mask[c as usize] = true;
        }

        let mut sample_times = self.run.sample_times.clone();
        sample_times.extend(self.profile_times());
        let config = SimConfig {
            gas,
            background,
            grid,
            t_end: self.run.t_end,
            cfl: self.run.cfl,
            perturbation: Perturbation {
                amplitude: p.amplitude,
                center: p.center,
                width: p.width,
                mask,
            },
            output_every: self.run.output_every,
            sample_times,
            relaxation_split: self.run.relaxation_split,
        };
        config.validate().map_err(config_error)?;
        Ok(config)
    }
}

fn required(value: Option<f64>, key: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Config(format!("riemann.{key} required")))
}

fn config_error(e: relaxwave::Error) -> CliError {
    match e {
        relaxwave::Error::Config(msg) => CliError::Config(msg),
        other => CliError::Config(other.to_string()),
    }
}
