//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Standard setup: gamma = 5/3, R = A = 1, mu = kappa = 1, tau1 = tau2 = 0.1,
//! epsilon = 1, q_exp = 2, right state (1.2, 0, 1), left volume 1.0.

use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaxwave::diagnostics::{totals, DiagnosticsRecord};
use relaxwave::riemann::{build_riemann, centered_wave_eval, r1_curve_u, riemann_invariants};
use relaxwave::solver::{
    initial_fields, run, Background, Component, FieldSet, Grid1D, Perturbation, SimConfig, Solver,
};
use relaxwave::{CellState, EndState, GasParams, RiemannData, SmoothWave};

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!(
        "criterion {id:>2} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn gas() -> GasParams {
    GasParams::default()
}

fn riemann_data() -> RiemannData {
    build_riemann(&gas(), EndState::new(1.2, 0.0, 1.0), 1.0).unwrap()
}

fn wave() -> SmoothWave {
    SmoothWave::new(gas(), riemann_data(), 1.0, 2.0).unwrap()
}

fn wave_config(
    grid: Grid1D,
    t_end: f64,
    perturbation: Perturbation,
    sample_times: Vec<f64>,
) -> SimConfig {
    SimConfig {
        gas: gas(),
        background: Background::Wave(wave()),
        grid,
        t_end,
        cfl: 0.4,
        perturbation,
        output_every: 500,
        sample_times,
        relaxation_split: true,
    }
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| a + (b - a) * k as f64 / (n - 1) as f64)
}

#[test]
fn c01_riemann_invariants_constant_on_fan() {
    const TOL: f64 = 1e-10;
    let start = Instant::now();
    let (gas, data) = (gas(), riemann_data());
    let s_plus = gas.entropy(data.right.v, data.right.theta).unwrap();
    let (mut dz, mut ds) = (0.0f64, 0.0f64);
    for xi in linspace(data.w_minus, data.w_plus, 1000) {
        let state = centered_wave_eval(&gas, &data, 1.0, xi).unwrap();
        let (z1, s) = riemann_invariants(&gas, &state, &data.right).unwrap();
        dz = dz.max((z1 - data.right.u).abs());
        ds = ds.max((s - s_plus).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = dz < TOL && ds < TOL && elapsed < 1.0;
    report(
        1,
        "Riemann invariants on the fan",
        pass,
        format!("max|dz1| = {dz:.2e}, max|ds| = {ds:.2e}, {elapsed:.3} s"),
    );
    assert!(pass);
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn level<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            left + right + diff / 15.0
        } else {
            level(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + level(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    level(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[test]
fn c02_curve_matches_quadrature() {
    const TOL: f64 = 1e-9;
    let (gas, data) = (gas(), riemann_data());
    let right = data.right;
    // lambda1 along the isentrope through the right state
    let lambda = |v: f64| {
        let theta = right.theta * (right.v / v).powf(gas.gamma - 1.0);
        -(gas.gamma * gas.r * theta).sqrt() / v
    };
    let mut worst = 0.0f64;
    for v in linspace(data.left.v, right.v, 100) {
        let oracle = right.u + adaptive_simpson(&lambda, v, right.v, 1e-14);
        let closed = r1_curve_u(&gas, &right, v).unwrap();
        let rel = if oracle == 0.0 {
            closed.abs()
        } else {
            ((closed - oracle) / oracle).abs()
        };
        worst = worst.max(rel);
    }
    let pass = worst < TOL;
    report(
        2,
        "rarefaction curve vs quadrature",
        pass,
        format!("max relative error {worst:.2e}"),
    );
    assert!(pass);
}

#[test]
fn c03_burgers_characteristics() {
    let w = wave();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let tau = rng.random_range(0.0..=100.0);
        let x = rng.random_range(-200.0..=200.0);
        let x0 = w.characteristic_foot(tau, x).unwrap();
        let residual = (x - x0 - w.w0(x0) * tau).abs() / f64::max(1.0, x.abs());
        worst = worst.max(residual);
    }
    let mut monotone = true;
    for k in 0..20 {
        let tau = 5.0 * k as f64;
        let mut prev = f64::NEG_INFINITY;
        for x in linspace(-200.0, 200.0, 2001) {
            let (value, _) = w.burgers_w(tau, x).unwrap();
            monotone &= value >= prev;
            prev = value;
        }
    }
    let pass = worst < 1e-11 && monotone;
    report(
        3,
        "Burgers characteristic solve",
        pass,
        format!("max scaled residual {worst:.2e}, monotone = {monotone}"),
    );
    assert!(pass);
}

#[test]
fn c04_derivative_identities() {
    let (gas, w) = (gas(), wave());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut identity, mut fd) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let t = rng.random_range(0.0..=100.0);
        let (lo, hi) = w.fan_edges(t);
        let x = rng.random_range(lo - 10.0..=hi + 10.0);
        let p = w.wave_eval(t, x).unwrap();
        let checks = [
            (p.ux, 2.0 * p.v * p.wx / (gas.gamma + 1.0)),
            (p.vx, p.v * p.ux / (gas.r * gas.gamma * p.theta).sqrt()),
            (p.thetax, -(gas.gamma - 1.0) * p.theta * p.vx / p.v),
        ];
        for (lhs, rhs) in checks {
            identity = identity.max((lhs - rhs).abs());
        }
        let h = 1e-4;
        let fdv = (w.wave_eval(t, x + h).unwrap().v - w.wave_eval(t, x - h).unwrap().v) / (2.0 * h);
        fd = fd.max(((fdv - p.vx) / p.vx).abs());
    }
    let pass = identity == 0.0 && fd < 1e-6;
    report(
        4,
        "smooth-wave derivative identities",
        pass,
        format!("identity gap {identity:.1e}, finite-difference relative error {fd:.2e}"),
    );
    assert!(pass);
}

#[test]
fn c05_smooth_wave_approaches_fan() {
    let w = wave();
    let times = [10.0, 20.0, 40.0, 80.0];
    let sups: Vec<f64> = times
        .iter()
        .map(|&t| w.sup_distance_to_centered(t, 10_000, 50.0).unwrap())
        .collect();
    let decreasing = sups.windows(2).all(|p| p[1] < p[0]);
    let pass = decreasing && sups[3] < 0.5 * sups[0];
    report(
        5,
        "smooth wave -> centered wave",
        pass,
        format!("sup distance at t = 10, 20, 40, 80: {sups:?}"),
    );
    assert!(pass);
}

#[test]
fn c06_euler_defect_second_order() {
    let w = wave();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst, mut min_ratio) = (0.0f64, f64::INFINITY);
    for _ in 0..100 {
        let t = rng.random_range(1.0..=50.0);
        let (lo, hi) = w.fan_edges(t);
        let pad = 0.1 * (hi - lo);
        let x = rng.random_range(lo + pad..=hi - pad);
        let coarse = w
            .euler_defect_with_steps(t, x, 1e-5, 1e-5)
            .unwrap()
            .max_residual();
        let fine = w
            .euler_defect_with_steps(t, x, 5e-6, 1e-5)
            .unwrap()
            .max_residual();
        worst = worst.max(coarse);
        min_ratio = min_ratio.min(coarse / fine);
    }
    let pass = worst < 1e-7 && min_ratio >= 3.5;
    report(
        6,
        "Euler defect of the smooth wave",
        pass,
        format!("max residual {worst:.2e}, min drop ratio {min_ratio:.3}"),
    );
    assert!(pass);
}

fn constant_config(state: CellState, n: usize) -> SimConfig {
    SimConfig {
        gas: gas(),
        background: Background::Constant(state),
        grid: Grid1D::new(0.0, 1.0, n).unwrap(),
        t_end: 1.0,
        cfl: 0.4,
        perturbation: Perturbation::none(),
        output_every: 1,
        sample_times: Vec::new(),
        relaxation_split: true,
    }
}

#[test]
fn c07_equilibrium_is_preserved() {
    let state = CellState::new(1.0, 0.0, 1.0, 0.0, 0.0);
    let mut solver = Solver::new(constant_config(state, 200)).unwrap();
    for _ in 0..1000 {
        let dt = solver.stable_dt().unwrap();
        solver.step(dt).unwrap();
    }
    let fields = solver.fields();
    let mut change = 0.0f64;
    for c in Component::ALL {
        for value in fields.interior(c) {
            change = change.max((value - c.of(&state)).abs());
        }
    }
    let pass = change < 1e-12;
    report(
        7,
        "constant equilibrium",
        pass,
        format!("max change after 1000 steps {change:.1e}"),
    );
    assert!(pass);
}

#[test]
fn c08_relaxation_decay() {
    let state = CellState::new(1.0, 0.0, 1.0, 0.1, 0.0);
    let mut config = constant_config(state, 200);
    config.t_end = 0.1;
    let fields = run(config, &mut Vec::<DiagnosticsRecord>::new()).unwrap();
    let expected = 0.1 * (-1.0f64).exp();
    let gap = fields
        .interior(Component::Q)
        .iter()
        .fold(0.0f64, |m, q| m.max((q - expected).abs()));
    let pass = gap < 1e-4;
    report(
        8,
        "heat-flux relaxation",
        pass,
        format!("max |q - 0.1/e| = {gap:.2e} at t = {}", fields.t),
    );
    assert!(pass);
}

/// Sample times of the main experiment. `t = 1` (ten relaxation times)
/// stands for `0+`: the end of the initial layer in which the smooth wave,
/// not an exact solution, adjusts to the viscous flow.
const T_INITIAL_LAYER: f64 = 1.0;
const MAIN_SAMPLES: [f64; 5] = [T_INITIAL_LAYER, 25.0, 50.0, 75.0, 100.0];

struct MainRun {
    records: Vec<DiagnosticsRecord>,
    error: Option<String>,
    seconds: f64,
}

fn main_run() -> &'static MainRun {
    static RUN: OnceLock<MainRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let perturbation = Perturbation {
            amplitude: 0.01,
            center: 0.0,
            width: 2.0,
            mask: [true, true, true, false, false],
        };
        let config = wave_config(
            Grid1D::new(-60.0, 140.0, 4000).unwrap(),
            100.0,
            perturbation,
            MAIN_SAMPLES.to_vec(),
        );
        let start = Instant::now();
        let mut records = Vec::new();
        let error = run(config, &mut records).err().map(|e| e.to_string());
        MainRun {
            records,
            error,
            seconds: start.elapsed().as_secs_f64(),
        }
    })
}

fn at(records: &[DiagnosticsRecord], t: f64) -> &DiagnosticsRecord {
    records
        .iter()
        .find(|r| r.t == t)
        .unwrap_or_else(|| panic!("no record at t = {t}"))
}

#[test]
fn c09_perturbed_rarefaction_is_stable() {
    let main = main_run();
    let completed = main.error.is_none();
    if let Some(e) = &main.error {
        report(
            9,
            "main stability experiment",
            false,
            format!("aborted: {e}"),
        );
        panic!("{e}");
    }
    let r = &main.records;
    let (first, layer, last) = (at(r, 0.0), at(r, T_INITIAL_LAYER), at(r, 100.0));
    let linf_ok = last.linf_max() <= 0.5 * layer.linf_max();
    let eta_ok = last.eta_total <= layer.eta_total;
    let sups: Vec<f64> = [25.0, 50.0, 75.0, 100.0]
        .iter()
        .map(|&t| at(r, t).sup_centered)
        .collect();
    let sup_ok = sups.windows(2).all(|p| p[1] < p[0]);
    let fast = main.seconds <= 300.0;
    let pass = completed && linf_ok && eta_ok && sup_ok && fast;
    report(
        9,
        "main stability experiment",
        pass,
        format!(
            "Linf {:.3e} -> {:.3e} (t=0: {:.3e}), eta {:.3e} -> {:.3e} (t=0: {:.3e}), sup_centered at 25/50/75/100 {sups:?}, {:.0} s",
            layer.linf_max(),
            last.linf_max(),
            first.linf_max(),
            layer.eta_total,
            last.eta_total,
            first.eta_total,
            main.seconds
        ),
    );
    assert!(pass);
}

fn restrict(fine: &[f64]) -> Vec<f64> {
    fine.chunks(2)
        .map(|pair| 0.5 * (pair[0] + pair[1]))
        .collect()
}

fn l1_gap(coarse: &FieldSet, fine: &FieldSet, dx: f64) -> f64 {
    Component::ALL
        .iter()
        .map(|&c| {
            let averaged = restrict(fine.interior(c));
            coarse
                .interior(c)
                .iter()
                .zip(&averaged)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>()
                * dx
        })
        .sum()
}

#[test]
fn c10_self_convergence() {
    let solutions: Vec<(FieldSet, f64)> = [1000, 2000, 4000]
        .iter()
        .map(|&n| {
            let grid = Grid1D::new(-60.0, 140.0, n).unwrap();
            let config = wave_config(grid, 5.0, Perturbation::none(), Vec::new());
            (
                run(config, &mut Vec::<DiagnosticsRecord>::new()).unwrap(),
                grid.dx(),
            )
        })
        .collect();
    let e1 = l1_gap(&solutions[0].0, &solutions[1].0, solutions[0].1);
    let e2 = l1_gap(&solutions[1].0, &solutions[2].0, solutions[1].1);
    let order = (e1 / e2).log2();
    let pass = order >= 1.0;
    report(
        10,
        "self-convergence",
        pass,
        format!("L1 gaps {e1:.3e}, {e2:.3e}, observed order {order:.3}"),
    );
    assert!(pass);
}

#[test]
fn c11_mass_balance() {
    let main = main_run();
    assert!(main.error.is_none(), "main run aborted");
    let worst = main
        .records
        .iter()
        .fold(0.0f64, |m, r| m.max(r.mass_balance_error.abs()));
    let pass = worst <= 1e-5;
    report(
        11,
        "volume balance",
        pass,
        format!(
            "max |relative error| {worst:.2e} over {} records",
            main.records.len()
        ),
    );
    assert!(pass);
}

#[test]
fn c12_relative_entropy_is_quadratic() {
    let (gas, w) = (gas(), wave());
    let grid = Grid1D::new(-60.0, 140.0, 4000).unwrap();
    let background = Background::Wave(w);
    let config = wave_config(grid, 0.0, Perturbation::none(), Vec::new());
    let base = initial_fields(&config).unwrap();
    let eta = |delta: f64| {
        let mut fields = base.clone();
        for c in Component::ALL {
            for value in fields.interior_mut(c) {
                *value += delta;
            }
        }
        totals(&gas, &grid, &fields, &background).unwrap().eta_total
    };
    let ratio = eta(1e-3) / eta(1e-4);
    let pass = (ratio / 100.0 - 1.0).abs() <= 0.02;
    report(
        12,
        "relative entropy scaling",
        pass,
        format!("eta(1e-3)/eta(1e-4) = {ratio:.4}"),
    );
    assert!(pass);
}
