//! Perturbation norms, relative entropy, energy and dissipation functionals,
//! and the uniform distance to the centered rarefaction fan.
//!
//! Perturbations are taken against the smooth wave `(vR, uR, thetaR, qR, SR)`.
//! Integrals use the trapezoid rule over interior cell centers. First and
//! second derivatives are second-order central differences, one-sided
//! second-order at the first and last interior cells.

use crate::error::{positive, Result};
use crate::solver::{Background, Component, FieldSet, Grid1D, SimConfig};
use crate::thermo::{CellState, GasParams};

/// `phi(z) = z - 1 - ln z`.
pub fn phi_func(z: f64) -> Result<f64> {
    positive("argument of phi", z)?;
    Ok(z - 1.0 - z.ln())
}

/// Pointwise relative entropy of `state` with respect to `reference`:
/// `Cv thR phi(th/thR) + R thR phi(v/vR) + psi^2/2 + tau1/(2 kappa th) q~^2 + tau2/(2 mu) S~^2`.
pub fn relative_entropy_density(
    gas: &GasParams,
    state: &CellState,
    reference: &CellState,
) -> Result<f64> {
    positive("specific volume", state.v)?;
    positive("temperature", state.theta)?;
    positive("reference specific volume", reference.v)?;
    positive("reference temperature", reference.theta)?;
    let psi = state.u - reference.u;
    let dq = state.q - reference.q;
    let ds = state.s - reference.s;
    Ok(
        gas.cv() * reference.theta * phi_func(state.theta / reference.theta)?
            + gas.r * reference.theta * phi_func(state.v / reference.v)?
            + 0.5 * psi * psi
            + gas.tau1 / (2.0 * gas.kappa * state.theta) * dq * dq
            + gas.tau2 / (2.0 * gas.mu) * ds * ds,
    )
}

/// `(phi, psi, theta~, q~, S~)` on interior cells and the weights `|vR_x|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationFields {
    pub comps: [Vec<f64>; 5],
    pub weights: Vec<f64>,
    pub references: Vec<CellState>,
}

impl PerturbationFields {
    pub fn build(grid: &Grid1D, fields: &FieldSet, background: &Background) -> Result<Self> {
        let n = fields.n();
        let mut comps: [Vec<f64>; 5] = std::array::from_fn(|_| Vec::with_capacity(n));
        let mut weights = Vec::with_capacity(n);
        let mut references = Vec::with_capacity(n);
        for i in 0..n {
            let reference = background.reference(fields.t, grid.center(i))?;
            let state = fields.cell(i);
            for c in Component::ALL {
                comps[c as usize].push(c.of(&state) - c.of(&reference.state));
            }
            weights.push(reference.vx_abs);
            references.push(reference.state);
        }
        Ok(Self {
            comps,
            weights,
            references,
        })
    }

    pub fn of(&self, c: Component) -> &[f64] {
        &self.comps[c as usize]
    }
}

/// Trapezoid rule on a uniform grid (end points at half weight).
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0] * dx,
        len => {
            let inner: f64 = values[1..len - 1].iter().sum();
            (inner + 0.5 * (values[0] + values[len - 1])) * dx
        }
    }
}

fn squared_l2(values: &[f64], dx: f64) -> f64 {
    let sq: Vec<f64> = values.iter().map(|x| x * x).collect();
    trapezoid(&sq, dx)
}

/// First derivative, needs at least 3 points.
pub fn derivative(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = Vec::with_capacity(n);
    out.push((-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx));
    for i in 1..n - 1 {
        out.push((f[i + 1] - f[i - 1]) / (2.0 * dx));
    }
    out.push((3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx));
    out
}

/// Second derivative, needs at least 4 points.
pub fn second_derivative(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len();
    let h2 = dx * dx;
    let mut out = Vec::with_capacity(n);
    out.push((2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2);
    for i in 1..n - 1 {
        out.push((f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2);
    }
    out.push((2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2);
    out
}

/// One time sample of every monitored functional.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// Indexed by [`Component`].
    pub l2: [f64; 5],
    pub linf: [f64; 5],
    pub h1_all: f64,
    pub h2_all: f64,
    pub eta_total: f64,
    /// Running maximum of `h2_all^2` over emitted samples.
    pub e_running: f64,
    pub d_t: f64,
    pub gr: f64,
    pub sup_centered: f64,
    /// `(M(t) - M(0) - int_0^t flux) / M(t)` with `M = sum v_i dx`.
    pub mass_balance_error: f64,
    /// `int (v/(kappa theta)) q~^2 + (v/mu) S~^2`, reported alongside `d_t`.
    pub relax_dissipation: f64,
    pub mass: f64,
}

impl DiagnosticsRecord {
    pub fn linf_max(&self) -> f64 {
        self.linf.iter().copied().fold(0.0, f64::max)
    }
}

/// Stateless evaluation of all functionals at the time stamp of `fields`.
/// `e_running` is this sample's energy and the mass error is zero.
pub fn totals(
    gas: &GasParams,
    grid: &Grid1D,
    fields: &FieldSet,
    background: &Background,
) -> Result<DiagnosticsRecord> {
    let dx = grid.dx();
    let pert = PerturbationFields::build(grid, fields, background)?;

    let mut l2 = [0.0; 5];
    let mut linf = [0.0; 5];
    let mut h1_sq = 0.0;
    let mut h2_sq = 0.0;
    let mut d_t = 0.0;
    for c in Component::ALL {
        let f = pert.of(c);
        let fx = derivative(f, dx);
        let fxx = second_derivative(f, dx);
        let (n0, n1, n2) = (squared_l2(f, dx), squared_l2(&fx, dx), squared_l2(&fxx, dx));
        l2[c as usize] = n0.sqrt();
        linf[c as usize] = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        h1_sq += n0 + n1;
        h2_sq += n0 + n1 + n2;
        d_t += match c {
            Component::V | Component::U | Component::Theta => n1 + n2,
            Component::Q | Component::S => n0 + n1 + n2,
        };
    }

    let n = fields.n();
    let mut eta = Vec::with_capacity(n);
    let mut weighted = Vec::with_capacity(n);
    let mut relax = Vec::with_capacity(n);
    let mut sup: f64 = 0.0;
    let (phi, th, dq, ds) = (
        pert.of(Component::V),
        pert.of(Component::Theta),
        pert.of(Component::Q),
        pert.of(Component::S),
    );
    for i in 0..n {
        let state = fields.cell(i);
        eta.push(relative_entropy_density(gas, &state, &pert.references[i])?);
        weighted.push(pert.weights[i] * (phi[i] * phi[i] + th[i] * th[i]));
        relax.push(
            state.v / (gas.kappa * state.theta) * dq[i] * dq[i] + state.v / gas.mu * ds[i] * ds[i],
        );
        let limit = background.limit_profile(fields.t, grid.center(i))?;
        sup = sup
            .max((state.v - limit.v).abs())
            .max((state.u - limit.u).abs())
            .max((state.theta - limit.theta).abs())
            .max(state.q.abs())
            .max(state.s.abs());
    }
    let gr = trapezoid(&weighted, dx);
    let mass: f64 = fields.interior(Component::V).iter().sum::<f64>() * dx;

    Ok(DiagnosticsRecord {
        t: fields.t,
        l2,
        linf,
        h1_all: h1_sq.sqrt(),
        h2_all: h2_sq.sqrt(),
        eta_total: trapezoid(&eta, dx),
        e_running: h2_sq,
        d_t: d_t + gr,
        gr,
        sup_centered: sup,
        mass_balance_error: 0.0,
        relax_dissipation: trapezoid(&relax, dx),
        mass,
    })
}

/// Adds the running energy supremum and the volume balance to [`totals`].
#[derive(Debug, Clone)]
pub struct DiagnosticsTracker {
    gas: GasParams,
    grid: Grid1D,
    background: Background,
    e_running: f64,
    initial_mass: f64,
}

impl DiagnosticsTracker {
    pub fn new(config: &SimConfig, initial: &FieldSet) -> Self {
        let dx = config.grid.dx();
        Self {
            gas: config.gas,
            grid: config.grid,
            background: config.background.clone(),
            e_running: 0.0,
            initial_mass: initial.interior(Component::V).iter().sum::<f64>() * dx,
        }
    }

    /// `flux_integral` is the time integral of the boundary volume flux
    /// since `t = 0`.
    pub fn record(&mut self, fields: &FieldSet, flux_integral: f64) -> Result<DiagnosticsRecord> {
        let mut rec = totals(&self.gas, &self.grid, fields, &self.background)?;
        self.e_running = self.e_running.max(rec.e_running);
        rec.e_running = self.e_running;
        rec.mass_balance_error = (rec.mass - self.initial_mass - flux_integral) / rec.mass;
        Ok(rec)
    }
}
