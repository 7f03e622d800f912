//! Method-of-lines solver for the relaxed system on a uniform Lagrangian grid.

mod fields;
mod scheme;

pub use fields::{Component, FieldSet, Grid1D, GHOST};
pub use scheme::{apply_bc, check_state, damp, rhs, stable_dt, step, Rates};

use crate::diagnostics::{DiagnosticsRecord, DiagnosticsTracker};
use crate::error::{Error, Result};
use crate::riemann::{self, EndState};
use crate::smoothwave::SmoothWave;
use crate::thermo::{CellState, GasParams};

/// The flow the perturbation sits on.
#[derive(Debug, Clone, PartialEq)]
pub enum Background {
    /// Smooth rarefaction wave; also supplies time-dependent boundary data.
    Wave(SmoothWave),
    /// Spatially uniform state with zero-gradient boundaries.
    Constant(CellState),
}

/// Reference state at one point, with the weight `|vR_x|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub state: CellState,
    pub vx_abs: f64,
}

impl Background {
    pub fn reference(&self, t: f64, x: f64) -> Result<Reference> {
        match self {
            Background::Wave(wave) => {
                let pt = wave.wave_eval(t, x)?;
                Ok(Reference {
                    state: CellState::new(pt.v, pt.u, pt.theta, pt.q_ref, pt.s_ref),
                    vx_abs: pt.vx.abs(),
                })
            }
            Background::Constant(state) => Ok(Reference {
                state: *state,
                vx_abs: 0.0,
            }),
        }
    }

    /// Limit profile `(v, u, theta)` the solution should approach: the
    /// centered fan at `t > 0`, the smooth wave at `t = 0`.
    pub fn limit_profile(&self, t: f64, x: f64) -> Result<EndState> {
        match self {
            Background::Wave(wave) if t > 0.0 => {
                riemann::centered_wave_eval(wave.gas(), wave.riemann(), t, x)
            }
            Background::Wave(wave) => {
                let pt = wave.wave_eval(0.0, x)?;
                Ok(EndState::new(pt.v, pt.u, pt.theta))
            }
            Background::Constant(state) => Ok(EndState::new(state.v, state.u, state.theta)),
        }
    }
}

/// Additive Gaussian bump `a exp(-(x - xc)^2 / sigma^2)` on selected components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
    /// Indexed by [`Component`].
    pub mask: [bool; 5],
}

impl Perturbation {
    pub fn none() -> Self {
        Self {
            amplitude: 0.0,
            center: 0.0,
            width: 1.0,
            mask: [false; 5],
        }
    }

    pub fn bump(&self, x: f64) -> f64 {
        let z = (x - self.center) / self.width;
        self.amplitude * (-z * z).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub gas: GasParams,
    pub background: Background,
    pub grid: Grid1D,
    pub t_end: f64,
    pub cfl: f64,
    pub perturbation: Perturbation,
    /// Emit a diagnostics record every this many steps.
    pub output_every: usize,
    /// Times the step size is clipped to hit; a record is emitted at each.
    pub sample_times: Vec<f64>,
    pub relaxation_split: bool,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.gas.validate()?;
        if let Background::Wave(wave) = &self.background {
            if wave.gas() != &self.gas {
                return Err(Error::Config(
                    "smooth wave built for a different gas".into(),
                ));
            }
        }
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::Config(format!(
                "cfl must lie in (0, 1), got {}",
                self.cfl
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::Config(format!(
                "t_end must be non-negative, got {}",
                self.t_end
            )));
        }
        if !(self.perturbation.width > 0.0) {
            return Err(Error::Config(format!(
                "perturbation width must be positive, got {}",
                self.perturbation.width
            )));
        }
        if self.output_every == 0 {
            return Err(Error::Config("output_every must be at least 1".into()));
        }
        if self.sample_times.iter().any(|t| !(*t >= 0.0)) {
            return Err(Error::Config("sample times must be non-negative".into()));
        }
        Ok(())
    }
}

/// Cell-wise reference state plus the configured bump, with ghosts filled.
pub fn initial_fields(config: &SimConfig) -> Result<FieldSet> {
    config.validate()?;
    let grid = &config.grid;
    let mut fields = FieldSet::zeros(grid, 0.0);
    let pert = &config.perturbation;
    for i in 0..grid.n {
        let x = grid.center(i);
        let base = config.background.reference(0.0, x)?.state;
        let bump = pert.bump(x);
        let mut values = Component::ALL.map(|c| c.of(&base));
        for (value, on) in values.iter_mut().zip(pert.mask) {
            if on {
                *value += bump;
            }
        }
        let state = CellState::new(values[0], values[1], values[2], values[3], values[4]);
        if !(state.v > 0.0 && state.theta > 0.0) {
            return Err(Error::Config(format!(
                "perturbation makes v or theta non-positive at x = {x}"
            )));
        }
        config
            .gas
            .effective_heat_capacity(state.theta, state.q)
            .map_err(|e| Error::Config(format!("initial state at x = {x}: {e}")))?;
        fields.set_cell(i, &state);
    }
    apply_bc(&config.gas, &mut fields, grid, &config.background, 0.0)?;
    Ok(fields)
}

/// Receives every diagnostics record together with the fields it was
/// computed from. `sample` is the index into `sample_times` when the record
/// falls on one of them.
pub trait Observer {
    fn observe(
        &mut self,
        record: &DiagnosticsRecord,
        fields: &FieldSet,
        sample: Option<usize>,
    ) -> Result<()>;
}

impl Observer for Vec<DiagnosticsRecord> {
    fn observe(
        &mut self,
        record: &DiagnosticsRecord,
        _: &FieldSet,
        _: Option<usize>,
    ) -> Result<()> {
        self.push(record.clone());
        Ok(())
    }
}

/// Time integrator state.
pub struct Solver {
    config: SimConfig,
    fields: FieldSet,
    steps: usize,
    flux_integral: f64,
    tracker: DiagnosticsTracker,
}

impl Solver {
    pub fn new(config: SimConfig) -> Result<Self> {
        let fields = initial_fields(&config)?;
        let tracker = DiagnosticsTracker::new(&config, &fields);
        Ok(Self {
            config,
            fields,
            steps: 0,
            flux_integral: 0.0,
            tracker,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn fields(&self) -> &FieldSet {
        &self.fields
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn stable_dt(&self) -> Result<f64> {
        let c = &self.config;
        stable_dt(&c.gas, &c.grid, &self.fields, c.cfl, c.relaxation_split)
    }

    /// One split step of size `dt`; failures carry the step number.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        let c = &self.config;
        let flux = step(
            &c.gas,
            &c.grid,
            &c.background,
            c.relaxation_split,
            &mut self.fields,
            dt,
        )
        .map_err(|e| match e {
            Error::Invariant {
                t, cell, detail, ..
            } => Error::Invariant {
                step: self.steps + 1,
                t,
                cell,
                detail,
            },
            other => other,
        })?;
        self.flux_integral += flux;
        self.steps += 1;
        Ok(())
    }

    pub fn record(&mut self) -> Result<DiagnosticsRecord> {
        self.tracker.record(&self.fields, self.flux_integral)
    }

    /// Integrates to `t_end`, emitting records at `t = 0`, every
    /// `output_every` steps and at each sample time.
    pub fn run<O: Observer + ?Sized>(&mut self, observer: &mut O) -> Result<()> {
        let t_end = self.config.t_end;
        let mut targets: Vec<(f64, Option<usize>)> = self
            .config
            .sample_times
            .iter()
            .enumerate()
            .filter(|(_, t)| **t <= t_end)
            .map(|(k, t)| (*t, Some(k)))
            .collect();
        if !targets.iter().any(|(t, _)| *t == t_end) {
            targets.push((t_end, None));
        }
        targets.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut next = 0;
        let mut initial_sample = None;
        while next < targets.len() && targets[next].0 <= self.fields.t {
            initial_sample = initial_sample.or(targets[next].1);
            next += 1;
        }
        let record = self.record()?;
        observer.observe(&record, &self.fields, initial_sample)?;

        while next < targets.len() {
            let (target, sample) = targets[next];
            let dt = self.stable_dt().map_err(|e| self.tag(e))?;
            let landing = self.fields.t + dt >= target;
            let dt = if landing { target - self.fields.t } else { dt };
            self.step(dt)?;
            if landing {
                self.fields.t = target;
                while next < targets.len() && targets[next].0 <= target {
                    next += 1;
                }
            }
            if landing || self.steps.is_multiple_of(self.config.output_every) {
                let record = self.record()?;
                observer.observe(&record, &self.fields, if landing { sample } else { None })?;
            }
        }
        Ok(())
    }

    fn tag(&self, e: Error) -> Error {
        match e {
            Error::ModelBreakdown { theta, q, capacity } => Error::Invariant {
                step: self.steps,
                t: self.fields.t,
                cell: 0,
                detail: format!("effective heat capacity {capacity} at theta = {theta}, q = {q}"),
            },
            other => other,
        }
    }

    pub fn into_fields(self) -> FieldSet {
        self.fields
    }
}

/// Runs `config` to completion and returns the final fields.
pub fn run<O: Observer + ?Sized>(config: SimConfig, observer: &mut O) -> Result<FieldSet> {
    let mut solver = Solver::new(config)?;
    solver.run(observer)?;
    Ok(solver.into_fields())
}
