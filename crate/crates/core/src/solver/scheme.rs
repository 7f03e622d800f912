//! Spatial operator, boundary fill, time step bound and the split SSP-RK2 step.
//!
//! Space: central differences for every derivative plus a local
//! Lax-Friedrichs (Rusanov) term on each unknown, in flux form
//! `(alpha_{j+1/2} [w]_{j+1/2} - alpha_{j-1/2} [w]_{j-1/2}) / (2 dx)` with
//! `alpha_{j+1/2} = max(c_j, c_{j+1})` and `[w]` the jump between MC-limited
//! linear reconstructions. The jump is `O(dx^2)` where the data is smooth and
//! falls back to the first-order cell jump at extrema; the flux form keeps
//! the volume equation telescoping. Time: Heun (SSP-RK2), with the
//! linear relaxation damping optionally integrated exactly in a Strang split.

use super::fields::{Component, FieldSet, Grid1D, GHOST};
use super::Background;
use crate::error::{Error, Result};
use crate::thermo::{CellState, GasParams};

/// Rates of the five unknowns on interior cells, plus the net volume flux
/// through the two domain edges (right minus left) implied by the
/// discrete volume equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Rates {
    pub data: [Vec<f64>; 5],
    pub boundary_flux: f64,
}

impl Rates {
    pub fn of(&self, c: Component) -> &[f64] {
        &self.data[c as usize]
    }
}

fn invariant(cell: usize, t: f64, detail: String) -> Error {
    Error::Invariant {
        step: 0,
        t,
        cell,
        detail,
    }
}

/// `(z1, z3, s)`: the Riemann invariants `u +- 2/(gamma-1) sqrt(gamma R theta)`
/// and `ln(theta v^(gamma-1))`.
fn invariants(gas: &GasParams, v: f64, u: f64, theta: f64) -> [f64; 3] {
    let c = 2.0 / (gas.gamma - 1.0) * (gas.gamma * gas.r * theta).sqrt();
    [u + c, u - c, (theta * v.powf(gas.gamma - 1.0)).ln()]
}

fn from_invariants(gas: &GasParams, [z1, z3, s]: [f64; 3]) -> (f64, f64, f64) {
    let u = 0.5 * (z1 + z3);
    let c = 0.25 * (gas.gamma - 1.0) * (z1 - z3);
    let theta = c * c / (gas.gamma * gas.r);
    let v = ((s - theta.ln()) / (gas.gamma - 1.0)).exp();
    (v, u, theta)
}

/// Deviations of `(z1, z3, s, q, S)` of `cell` from `reference`.
fn invariant_deviation(gas: &GasParams, reference: &[f64; 5], cell: &CellState) -> [f64; 5] {
    let r = invariants(gas, reference[0], reference[1], reference[2]);
    let c = invariants(gas, cell.v, cell.u, cell.theta);
    [
        c[0] - r[0],
        c[1] - r[1],
        c[2] - r[2],
        cell.q - reference[3],
        cell.s - reference[4],
    ]
}

/// Fills the ghost slots at time `t`.
///
/// A wave background gives non-reflecting ghosts built on the smooth wave:
/// the incoming Riemann invariant takes its smooth-wave value, while the
/// deviations of the outgoing invariant, the entropy, `q` and `S` are
/// extrapolated linearly from the two boundary cells. A constant background
/// gives zero-gradient copies.
pub fn apply_bc(
    gas: &GasParams,
    fields: &mut FieldSet,
    grid: &Grid1D,
    background: &Background,
    t: f64,
) -> Result<()> {
    let n = fields.n();
    let len = n + 2 * GHOST;
    match background {
        Background::Wave(wave) => {
            let reference = |j: usize| -> Result<[f64; 5]> {
                let pt = wave.wave_eval(t, grid.slot_center(j))?;
                Ok([pt.v, pt.u, pt.theta, pt.q_ref, pt.s_ref])
            };
            // the invariant entering the domain keeps its reference value:
            // z1 (carried rightward) on the left, z3 on the right
            let sides = [(GHOST, GHOST + 1, 0), (n + GHOST - 1, n + GHOST - 2, 1)];
            for (edge, inner, incoming) in sides {
                let dev_edge =
                    invariant_deviation(gas, &reference(edge)?, &fields.slot_state(edge));
                let dev_inner =
                    invariant_deviation(gas, &reference(inner)?, &fields.slot_state(inner));
                for k in 1..=GHOST {
                    let j = if incoming == 0 { edge - k } else { edge + k };
                    let mut dev: [f64; 5] = std::array::from_fn(|m| {
                        dev_edge[m] + k as f64 * (dev_edge[m] - dev_inner[m])
                    });
                    dev[incoming] = 0.0;
                    let at_ghost = reference(j)?;
                    let z = invariants(gas, at_ghost[0], at_ghost[1], at_ghost[2]);
                    let (v, u, theta) =
                        from_invariants(gas, [z[0] + dev[0], z[1] + dev[1], z[2] + dev[2]]);
                    let state =
                        CellState::new(v, u, theta, at_ghost[3] + dev[3], at_ghost[4] + dev[4]);
                    fields.set_slot(j, &state);
                }
            }
        }
        Background::Constant(_) => {
            for k in 0..5 {
                let slots = &mut fields.data_mut()[k];
                for j in 0..GHOST {
                    slots[j] = slots[GHOST];
                    slots[len - 1 - j] = slots[len - 1 - GHOST];
                }
            }
        }
    }
    Ok(())
}

/// Monotonized-central limited slope.
fn mc_slope(back: f64, fwd: f64) -> f64 {
    if back * fwd <= 0.0 {
        return 0.0;
    }
    let limited = (2.0 * back.abs())
        .min(2.0 * fwd.abs())
        .min(0.5 * (back + fwd).abs());
    limited.copysign(back)
}

/// `w_R - w_L` at the interface between slots `j` and `j + 1` from limited
/// linear reconstructions; zero where a slope is unavailable.
fn interface_jumps(w: &[f64]) -> Vec<f64> {
    let len = w.len();
    let mut slope = vec![0.0; len];
    for j in 1..len - 1 {
        slope[j] = mc_slope(w[j] - w[j - 1], w[j + 1] - w[j]);
    }
    let mut jumps = vec![0.0; len - 1];
    for j in 1..len - 2 {
        jumps[j] = (w[j + 1] - 0.5 * slope[j + 1]) - (w[j] + 0.5 * slope[j]);
    }
    jumps
}

/// Semi-discrete right-hand side. Ghosts must be current. With
/// `split_damping` the terms `-v q / tau1` and `-v S / tau2` are left out
/// (they are integrated exactly by the splitting instead).
pub fn rhs(
    gas: &GasParams,
    grid: &Grid1D,
    fields: &FieldSet,
    split_damping: bool,
) -> Result<Rates> {
    let n = fields.n();
    let dx = grid.dx();
    let [v, u, theta, q, s] = fields.data();

    // speeds on slots 1..=n+2 (every slot touched by an interior stencil)
    let len = n + 2 * GHOST;
    let mut speed = vec![0.0; len];
    let mut pressure = vec![0.0; len];
    for j in 1..len - 1 {
        let state = fields.slot_state(j);
        let cell = j as isize - GHOST as isize;
        if !(state.v > 0.0 && state.theta > 0.0) {
            return Err(invariant(
                cell.max(0) as usize,
                fields.t,
                format!("non-positive v or theta in slot {j}: {state:?}"),
            ));
        }
        speed[j] = gas
            .max_wave_speed(&state)
            .map_err(|e| invariant(cell.max(0) as usize, fields.t, format!("slot {j}: {e}")))?;
        pressure[j] = gas.r * state.theta / state.v;
    }
    // alpha[j] lives on the interface between slots j and j+1
    let alpha: Vec<f64> = (0..len - 1).map(|j| speed[j].max(speed[j + 1])).collect();

    let jumps = fields.data().each_ref().map(|w| interface_jumps(w));

    let inv_2dx = 0.5 / dx;
    let cv = gas.cv();
    let mut out: [Vec<f64>; 5] = std::array::from_fn(|_| Vec::with_capacity(n));
    for j in GHOST..GHOST + n {
        let (vj, thj, qj, sj) = (v[j], theta[j], q[j], s[j]);
        let ux = (u[j + 1] - u[j - 1]) * inv_2dx;
        let px = (pressure[j + 1] - pressure[j - 1]) * inv_2dx;
        let sx = (s[j + 1] - s[j - 1]) * inv_2dx;
        let thx = (theta[j + 1] - theta[j - 1]) * inv_2dx;
        let qx = (q[j + 1] - q[j - 1]) * inv_2dx;

        let capacity = cv - gas.tau1 * qj * qj / (2.0 * gas.kappa * thj * thj);

        let r_v = ux;
        let r_u = -px + sx;
        let r_theta = (qj * thx / thj - pressure[j] * ux - qx
            + vj * qj * qj / (gas.kappa * thj)
            + vj * sj * sj / gas.mu)
            / capacity;
        let mut r_q = -gas.kappa * thx / gas.tau1;
        let mut r_s = gas.mu * ux / gas.tau2;
        if !split_damping {
            r_q -= vj * qj / gas.tau1;
            r_s -= vj * sj / gas.tau2;
        }

        let diss = |k: usize| (alpha[j] * jumps[k][j] - alpha[j - 1] * jumps[k][j - 1]) * inv_2dx;

        out[0].push(r_v + diss(0));
        out[1].push(r_u + diss(1));
        out[2].push(r_theta + diss(2));
        out[3].push(r_q + diss(3));
        out[4].push(r_s + diss(4));
    }

    let (lo, hi) = (GHOST - 1, GHOST + n - 1);
    let edge = |j: usize| 0.5 * (u[j] + u[j + 1]) + 0.5 * alpha[j] * jumps[0][j];
    Ok(Rates {
        data: out,
        boundary_flux: edge(hi) - edge(lo),
    })
}

/// Largest stable step: CFL bound on the fastest characteristic, plus the
/// explicit relaxation caps `tau / (2 max v)` when damping is not split.
pub fn stable_dt(
    gas: &GasParams,
    grid: &Grid1D,
    fields: &FieldSet,
    cfl: f64,
    split_damping: bool,
) -> Result<f64> {
    let mut max_speed: f64 = 0.0;
    let mut max_v: f64 = 0.0;
    for i in 0..fields.n() {
        let state = fields.cell(i);
        max_speed = max_speed.max(gas.max_wave_speed(&state)?);
        max_v = max_v.max(state.v);
    }
    let mut dt = cfl * grid.dx() / max_speed;
    if !split_damping {
        dt = dt.min(0.5 * gas.tau1 / max_v).min(0.5 * gas.tau2 / max_v);
    }
    Ok(dt)
}

/// Exact solution of `tau1 q_t = -v q`, `tau2 S_t = -v S` over `dt` with `v` frozen.
pub fn damp(gas: &GasParams, fields: &mut FieldSet, dt: f64) {
    let n = fields.n();
    let data = fields.data_mut();
    let (head, tail) = data.split_at_mut(3);
    let v = &head[0];
    let (q, s) = tail.split_at_mut(1);
    for j in GHOST..GHOST + n {
        q[0][j] *= (-v[j] * dt / gas.tau1).exp();
        s[0][j] *= (-v[j] * dt / gas.tau2).exp();
    }
}

fn axpy_interior(target: &mut FieldSet, scale: f64, rates: &Rates) {
    for c in Component::ALL {
        for (x, r) in target.interior_mut(c).iter_mut().zip(rates.of(c)) {
            *x += scale * r;
        }
    }
}

/// Checks `v > 0`, `theta > 0` and positive effective heat capacity on
/// every interior cell.
pub fn check_state(gas: &GasParams, fields: &FieldSet) -> Result<()> {
    for i in 0..fields.n() {
        let state = fields.cell(i);
        if !(state.v > 0.0) || !(state.theta > 0.0) {
            return Err(invariant(
                i,
                fields.t,
                format!("non-positive v or theta: {state:?}"),
            ));
        }
        let capacity = gas.heat_capacity_raw(state.theta, state.q);
        if !(capacity > 0.0) {
            return Err(invariant(
                i,
                fields.t,
                format!("effective heat capacity {capacity} <= 0 in {state:?}"),
            ));
        }
    }
    Ok(())
}

/// Advances `fields` by `dt` and returns the time integral of the boundary
/// volume flux over the step.
pub fn step(
    gas: &GasParams,
    grid: &Grid1D,
    background: &Background,
    split_damping: bool,
    fields: &mut FieldSet,
    dt: f64,
) -> Result<f64> {
    let t0 = fields.t;
    if split_damping {
        damp(gas, fields, 0.5 * dt);
    }

    apply_bc(gas, fields, grid, background, t0)?;
    let k0 = rhs(gas, grid, fields, split_damping)?;
    let mut stage = fields.clone();
    axpy_interior(&mut stage, dt, &k0);
    stage.t = t0 + dt;
    apply_bc(gas, &mut stage, grid, background, t0 + dt)?;
    let k1 = rhs(gas, grid, &stage, split_damping)?;
    axpy_interior(&mut stage, dt, &k1);
    for c in Component::ALL {
        let (old, new) = (fields.interior_mut(c), stage.interior(c));
        for (x, y) in old.iter_mut().zip(new) {
            *x = 0.5 * (*x + y);
        }
    }
    fields.t = t0 + dt;

    if split_damping {
        damp(gas, fields, 0.5 * dt);
    }
    apply_bc(gas, fields, grid, background, fields.t)?;
    check_state(gas, fields)?;
    Ok(0.5 * dt * (k0.boundary_flux + k1.boundary_flux))
}
