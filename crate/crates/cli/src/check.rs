//! Invariant suite runnable outside the test harness.
//!
//! Each property samples the configured gas and wave on fixed deterministic
//! grids and returns the worst deviation it saw.

use relaxwave::diagnostics::{phi_func, relative_entropy_density, totals, trapezoid};
use relaxwave::riemann::{
    centered_wave_at_speed, centered_wave_eval, isentrope_theta, riemann_invariants,
};
use relaxwave::smoothwave::incomplete_integral;
use relaxwave::solver::{
    initial_fields, rhs, stable_dt, Background, Component, FieldSet, Grid1D, Perturbation,
    SimConfig,
};
use relaxwave::{CellState, EndState, GasParams, SmoothWave};

use crate::config::RunConfig;
use crate::error::CliError;

pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&Ctx) -> Result<String, String>;

struct Ctx {
    gas: GasParams,
    wave: SmoothWave,
}

impl Ctx {
    fn right(&self) -> EndState {
        self.wave.riemann().right
    }

    fn left(&self) -> EndState {
        self.wave.riemann().left
    }

    /// States along the fan, including both edges.
    fn fan(&self) -> Vec<EndState> {
        let d = self.wave.riemann();
        (0..=40)
            .map(|k| {
                centered_wave_at_speed(
                    &self.gas,
                    d,
                    d.w_minus + (d.w_plus - d.w_minus) * k as f64 / 40.0,
                )
            })
            .collect()
    }

    fn sample_states(&self) -> Vec<CellState> {
        let mut out = Vec::new();
        for v in [0.5, 1.0, 2.0] {
            for theta in [0.5, 1.0, 2.0] {
                for q in [-0.2, 0.0, 0.3] {
                    out.push(CellState::new(v, 0.3, theta, q, -0.1));
                }
            }
        }
        out
    }

    fn wave_points(&self, t: f64) -> Vec<f64> {
        let (lo, hi) = self.wave.fan_edges(t);
        (0..=60)
            .map(|k| lo - 10.0 + (hi - lo + 20.0) * k as f64 / 60.0)
            .collect()
    }
}

fn within(label: &str, worst: f64, tol: f64) -> Result<String, String> {
    let detail = format!("{label} {worst:.3e} (tol {tol:.0e})");
    if worst <= tol {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn holds(detail: &str, ok: bool) -> Result<String, String> {
    if ok {
        Ok(detail.to_string())
    } else {
        Err(format!("violated: {detail}"))
    }
}

fn run_err(e: relaxwave::Error) -> String {
    e.to_string()
}

const CHECKS: &[(&str, Check)] = &[
    ("gas parameters valid", |c| {
        c.gas.validate().map(|_| "ok".into()).map_err(run_err)
    }),
    ("Cv = R/(gamma-1)", |c| {
        within(
            "gap",
            (c.gas.cv() * (c.gas.gamma - 1.0) - c.gas.r).abs(),
            1e-14,
        )
    }),
    ("pressure law p = R theta / v", |c| {
        let worst = c.sample_states().iter().fold(0.0f64, |m, s| {
            m.max((c.gas.pressure(s.v, s.theta).unwrap() * s.v - c.gas.r * s.theta).abs())
        });
        within("gap", worst, 1e-14)
    }),
    ("heat capacity splits into Cv and the flux term", |c| {
        let worst = c.sample_states().iter().fold(0.0f64, |m, s| {
            let raw = c.gas.heat_capacity_raw(s.theta, s.q);
            m.max(
                (raw + c.gas.tau1 * s.q * s.q / (2.0 * c.gas.kappa * s.theta * s.theta)
                    - c.gas.cv())
                .abs(),
            )
        });
        within("gap", worst, 1e-13)
    }),
    ("lambda1 = -lambda3 < 0", |c| {
        let ok = c.sample_states().iter().all(|s| {
            let (l1, l3) = (
                c.gas.lambda1(s.v, s.theta).unwrap(),
                c.gas.lambda3(s.v, s.theta).unwrap(),
            );
            l1 < 0.0 && l1 == -l3
        });
        holds("sign and symmetry on sampled states", ok)
    }),
    (
        "speed bound dominates acoustic + heat + shear speeds",
        |c| {
            let ok = c.sample_states().iter().all(|s| {
                let floor = c.gas.lambda3(s.v, s.theta).unwrap()
                    + (c.gas.kappa / (c.gas.tau1 * c.gas.cv())).sqrt()
                    + (c.gas.mu / c.gas.tau2).sqrt();
                c.gas.max_wave_speed(s).unwrap() >= floor * (1.0 - 1e-14)
            });
            holds("bound >= sum of speeds", ok)
        },
    ),
    ("isentrope keeps entropy", |c| {
        let r = c.right();
        let s0 = c.gas.entropy(r.v, r.theta).map_err(run_err)?;
        let mut worst: f64 = 0.0;
        for k in 1..=40 {
            let v = 0.1 * k as f64;
            let th = isentrope_theta(&c.gas, &r, v).map_err(run_err)?;
            worst = worst.max((c.gas.entropy(v, th).map_err(run_err)? - s0).abs());
        }
        within("entropy drift", worst, 1e-12)
    }),
    ("end speeds are lambda1 at the end states", |c| {
        let d = c.wave.riemann();
        let gap = (c.gas.lambda1(d.left.v, d.left.theta).map_err(run_err)? - d.w_minus)
            .abs()
            .max((c.gas.lambda1(d.right.v, d.right.theta).map_err(run_err)? - d.w_plus).abs());
        within("gap", gap, 1e-12)
    }),
    ("fan is a rarefaction (w- < w+)", |c| {
        let d = c.wave.riemann();
        holds(
            &format!("w- = {:.6}, w+ = {:.6}", d.w_minus, d.w_plus),
            d.w_minus < d.w_plus,
        )
    }),
    ("fan keeps z1 and entropy", |c| {
        let r = c.right();
        let s0 = c.gas.entropy(r.v, r.theta).map_err(run_err)?;
        let mut worst: f64 = 0.0;
        for state in c.fan() {
            let (z1, s) = riemann_invariants(&c.gas, &state, &r).map_err(run_err)?;
            worst = worst.max((z1 - r.u).abs()).max((s - s0).abs());
        }
        within("invariant drift", worst, 1e-11)
    }),
    ("fan is monotone", |c| {
        let fan = c.fan();
        let ok = fan
            .windows(2)
            .all(|w| w[1].v >= w[0].v && w[1].u >= w[0].u && w[1].theta <= w[0].theta);
        holds("v, u increase and theta decreases across the fan", ok)
    }),
    ("centered wave equals end states outside the fan", |c| {
        let d = c.wave.riemann();
        let t = 3.0;
        let a = centered_wave_eval(&c.gas, d, t, (d.w_minus - 1.0) * t).map_err(run_err)?;
        let b = centered_wave_eval(&c.gas, d, t, (d.w_plus + 1.0) * t).map_err(run_err)?;
        holds("exact end states", a == c.left() && b == c.right())
    }),
    ("normalized tail integral tends to 1", |c| {
        within(
            "gap",
            (c.wave.kq() * incomplete_integral(c.wave.q_exp(), 1e8) - 1.0).abs(),
            1e-6,
        )
    }),
    ("w0 is antisymmetric about the mean speed", |c| {
        let d = c.wave.riemann();
        let worst = (0..50).fold(0.0f64, |m, k| {
            let x = 0.5 * k as f64;
            m.max((c.wave.w0(x) + c.wave.w0(-x) - d.w_minus - d.w_plus).abs())
        });
        within("gap", worst, 1e-13)
    }),
    ("w0 is increasing", |c| {
        holds(
            "w0' > 0 on [-50, 50]",
            (0..=100).all(|k| c.wave.w0_prime(k as f64 - 50.0) > 0.0),
        )
    }),
    ("characteristic foot solves x = x0 + w0(x0) tau", |c| {
        let mut worst: f64 = 0.0;
        for tau in [0.5, 5.0, 50.0] {
            for k in 0..=20 {
                let x = -40.0 + 4.0 * k as f64;
                let x0 = c.wave.characteristic_foot(tau, x).map_err(run_err)?;
                worst = worst.max((x0 + c.wave.w0(x0) * tau - x).abs());
            }
        }
        within("residual", worst, 1e-9)
    }),
    ("smooth wave matches end states far away", |c| {
        let (a, b) = (
            c.wave.wave_eval(5.0, -1e6).map_err(run_err)?,
            c.wave.wave_eval(5.0, 1e6).map_err(run_err)?,
        );
        let (l, r) = (c.left(), c.right());
        let gap = [
            a.v - l.v,
            a.u - l.u,
            a.theta - l.theta,
            b.v - r.v,
            b.u - r.u,
            b.theta - r.theta,
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
        within("gap", gap, 1e-9)
    }),
    ("smooth wave gradient signs", |c| {
        let mut ok = true;
        for t in [0.0, 10.0] {
            for x in c.wave_points(t) {
                let p = c.wave.wave_eval(t, x).map_err(run_err)?;
                ok &= p.ux > 0.0 && p.vx > 0.0 && p.thetax < 0.0;
            }
        }
        holds("u_x > 0, v_x > 0, theta_x < 0", ok)
    }),
    ("smooth wave stays on the isentrope", |c| {
        let r = c.right();
        let s0 = c.gas.entropy(r.v, r.theta).map_err(run_err)?;
        let mut worst: f64 = 0.0;
        for x in c.wave_points(10.0) {
            let p = c.wave.wave_eval(10.0, x).map_err(run_err)?;
            worst = worst.max((c.gas.entropy(p.v, p.theta).map_err(run_err)? - s0).abs());
        }
        within("entropy drift", worst, 1e-9)
    }),
    ("reference fluxes follow Fourier and Newton laws", |c| {
        let mut worst: f64 = 0.0;
        for x in c.wave_points(10.0) {
            let p = c.wave.wave_eval(10.0, x).map_err(run_err)?;
            worst = worst
                .max((p.q_ref * p.v + c.gas.kappa * p.thetax).abs())
                .max((p.s_ref * p.v - c.gas.mu * p.ux).abs());
        }
        within("gap", worst, 1e-14)
    }),
    ("Euler defect vanishes in the constant region", |c| {
        let d = c.wave.euler_defect(3.0, -1e5).map_err(run_err)?;
        within("max residual", d.max_residual(), 1e-10)
    }),
    ("phi(1) = 0 and phi >= 0", |c| {
        let _ = c;
        let ok =
            phi_func(1.0) == Ok(0.0) && (1..100).all(|k| phi_func(0.05 * k as f64).unwrap() >= 0.0);
        holds("sampled on (0, 5)", ok)
    }),
    (
        "relative entropy is nonnegative and vanishes on the reference",
        |c| {
            let states = c.sample_states();
            let mut ok = true;
            for a in &states {
                ok &= relative_entropy_density(&c.gas, a, a).unwrap() == 0.0;
                for b in &states {
                    ok &= relative_entropy_density(&c.gas, a, b).unwrap() >= 0.0;
                }
            }
            holds("all sampled pairs", ok)
        },
    ),
    ("trapezoid rule is exact on lines", |_| {
        let values: Vec<f64> = (0..11).map(|i| 2.0 * i as f64 * 0.1 + 1.0).collect();
        within("gap", (trapezoid(&values, 0.1) - 2.0).abs(), 1e-14)
    }),
    ("unperturbed wave has zero perturbation functionals", |c| {
        let config = sim(c, Grid1D::new(-40.0, 40.0, 200).map_err(run_err)?);
        let fields = initial_fields(&config).map_err(run_err)?;
        let rec = totals(&c.gas, &config.grid, &fields, &config.background).map_err(run_err)?;
        within("largest", rec.h2_all.max(rec.eta_total).max(rec.gr), 0.0)
    }),
    ("constant state is a steady state of the scheme", |c| {
        let grid = Grid1D::new(0.0, 1.0, 32).map_err(run_err)?;
        let r = c.right();
        let fields = uniform(&grid, CellState::new(r.v, r.u, r.theta, 0.0, 0.0));
        let rates = rhs(&c.gas, &grid, &fields, false).map_err(run_err)?;
        let worst = Component::ALL
            .iter()
            .flat_map(|k| rates.of(*k).iter().copied())
            .fold(0.0f64, |m, x| m.max(x.abs()));
        within("largest rate", worst, 0.0)
    }),
    ("stable step is linear in the mesh width", |c| {
        let r = c.right();
        let state = CellState::new(r.v, r.u, r.theta, 0.0, 0.0);
        let (a, b) = (
            Grid1D::new(0.0, 2.0, 40).map_err(run_err)?,
            Grid1D::new(0.0, 2.0, 80).map_err(run_err)?,
        );
        let dt_a = stable_dt(&c.gas, &a, &uniform(&a, state), 0.4, true).map_err(run_err)?;
        let dt_b = stable_dt(&c.gas, &b, &uniform(&b, state), 0.4, true).map_err(run_err)?;
        within("relative gap", (dt_a - 2.0 * dt_b).abs() / dt_a, 1e-14)
    }),
];

fn uniform(grid: &Grid1D, state: CellState) -> FieldSet {
    let mut fields = FieldSet::zeros(grid, 0.0);
    for j in 0..grid.len_with_ghosts() {
        fields.set_slot(j, &state);
    }
    fields
}

fn sim(c: &Ctx, grid: Grid1D) -> SimConfig {
    SimConfig {
        gas: c.gas,
        background: Background::Wave(c.wave.clone()),
        grid,
        t_end: 0.0,
        cfl: 0.4,
        perturbation: Perturbation::none(),
        output_every: 1,
        sample_times: Vec::new(),
        relaxation_split: true,
    }
}

/// Runs every property against the configured gas and wave.
pub fn run_checks(config: &RunConfig) -> Result<Vec<Outcome>, CliError> {
    let ctx = Ctx {
        gas: config.gas()?,
        wave: config.wave()?,
    };
    Ok(CHECKS
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = match check(&ctx) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome {
                name,
                passed,
                detail,
            }
        })
        .collect())
}

pub fn check_count() -> usize {
    CHECKS.len()
}
