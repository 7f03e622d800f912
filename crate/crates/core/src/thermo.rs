//! Gas model for the relaxed system: gamma-law pressure, the Cattaneo-modified
//! internal energy `e = Cv*theta + a(theta)*q^2`, entropy and characteristic speeds.

use crate::error::{positive, Error, Result};

/// Physical constants of the fluid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams {
    pub r: f64,
    pub gamma: f64,
    /// Entropy normalization; only shifts `s` by a constant.
    pub a_entropy: f64,
    pub mu: f64,
    pub kappa: f64,
    pub tau1: f64,
    pub tau2: f64,
}

impl Default for GasParams {
    fn default() -> Self {
        Self {
            r: 1.0,
            gamma: 5.0 / 3.0,
            a_entropy: 1.0,
            mu: 1.0,
            kappa: 1.0,
            tau1: 0.1,
            tau2: 0.1,
        }
    }
}

/// Pointwise state `(v, u, theta, q, S)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellState {
    pub v: f64,
    pub u: f64,
    pub theta: f64,
    pub q: f64,
    pub s: f64,
}

impl CellState {
    pub fn new(v: f64, u: f64, theta: f64, q: f64, s: f64) -> Self {
        Self { v, u, theta, q, s }
    }
}

impl GasParams {
    pub fn new(
        r: f64,
        gamma: f64,
        a_entropy: f64,
        mu: f64,
        kappa: f64,
        tau1: f64,
        tau2: f64,
    ) -> Result<Self> {
        let gas = Self {
            r,
            gamma,
            a_entropy,
            mu,
            kappa,
            tau1,
            tau2,
        };
        gas.validate()?;
        Ok(gas)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("R", self.r),
            ("A", self.a_entropy),
            ("mu", self.mu),
            ("kappa", self.kappa),
            ("tau1", self.tau1),
            ("tau2", self.tau2),
        ];
        for (name, value) in fields {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::Config(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if !(self.gamma > 1.0 && self.gamma.is_finite()) {
            return Err(Error::Config(format!(
                "gamma must exceed 1, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// Specific heat at constant volume, `R / (gamma - 1)`.
    pub fn cv(&self) -> f64 {
        self.r / (self.gamma - 1.0)
    }

    pub fn pressure(&self, v: f64, theta: f64) -> Result<f64> {
        positive("specific volume", v)?;
        Ok(self.r * theta / v)
    }

    /// Returns `(a(theta), a'(theta))` with `a(theta) = tau1 / (2 kappa theta)`.
    pub fn relax_coeff_a(&self, theta: f64) -> Result<(f64, f64)> {
        positive("temperature", theta)?;
        let a = self.tau1 / (2.0 * self.kappa * theta);
        Ok((a, -a / theta))
    }

    pub fn internal_energy(&self, theta: f64, q: f64) -> Result<f64> {
        let (a, _) = self.relax_coeff_a(theta)?;
        Ok(self.cv() * theta + a * q * q)
    }

    /// `Cv + a'(theta) q^2` without the positivity check.
    pub fn heat_capacity_raw(&self, theta: f64, q: f64) -> f64 {
        self.cv() - self.tau1 * q * q / (2.0 * self.kappa * theta * theta)
    }

    /// Coefficient of `theta_t` in the temperature equation. A non-positive
    /// value is a model breakdown and is reported, never clamped.
    pub fn effective_heat_capacity(&self, theta: f64, q: f64) -> Result<f64> {
        positive("temperature", theta)?;
        let capacity = self.heat_capacity_raw(theta, q);
        if capacity > 0.0 {
            Ok(capacity)
        } else {
            Err(Error::ModelBreakdown { theta, q, capacity })
        }
    }

    pub fn entropy(&self, v: f64, theta: f64) -> Result<f64> {
        positive("specific volume", v)?;
        positive("temperature", theta)?;
        Ok(self.cv() * (self.r / self.a_entropy * theta * v.powf(self.gamma - 1.0)).ln())
    }

    /// First characteristic speed of the Euler system, `-sqrt(gamma p / v)`.
    pub fn lambda1(&self, v: f64, theta: f64) -> Result<f64> {
        positive("specific volume", v)?;
        positive("temperature", theta)?;
        Ok(-(self.gamma * self.r * theta).sqrt() / v)
    }

    pub fn lambda3(&self, v: f64, theta: f64) -> Result<f64> {
        Ok(-self.lambda1(v, theta)?)
    }

    /// Upper bound on the characteristic speeds of the full 5x5 system.
    ///
    /// With `c = Cv + a'(theta) q^2` the bound is
    /// `sqrt(R theta (1 + R/c))/v + sqrt(kappa/(tau1 c)) + sqrt(mu/tau2) + |q|/(theta c)`,
    /// which is `|lambda1| + sqrt(kappa/(tau1 Cv)) + sqrt(mu/tau2)` when `q = 0`.
    pub fn max_wave_speed(&self, state: &CellState) -> Result<f64> {
        positive("specific volume", state.v)?;
        let c = self.effective_heat_capacity(state.theta, state.q)?;
        let sound = (self.r * state.theta * (1.0 + self.r / c)).sqrt() / state.v;
        let heat = (self.kappa / (self.tau1 * c)).sqrt();
        let shear = (self.mu / self.tau2).sqrt();
        let drift = state.q.abs() / (state.theta * c);
        Ok(sound + heat + shear + drift)
    }
}
