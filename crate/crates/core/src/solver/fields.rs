use crate::error::{Error, Result};
use crate::thermo::CellState;

/// Ghost cells on each side of the interior.
pub const GHOST: usize = 2;

/// The five unknowns, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    V = 0,
    U = 1,
    Theta = 2,
    Q = 3,
    S = 4,
}

impl Component {
    pub const ALL: [Component; 5] = [
        Component::V,
        Component::U,
        Component::Theta,
        Component::Q,
        Component::S,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::V => "v",
            Component::U => "u",
            Component::Theta => "theta",
            Component::Q => "q",
            Component::S => "S",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn of(self, state: &CellState) -> f64 {
        match self {
            Component::V => state.v,
            Component::U => state.u,
            Component::Theta => state.theta,
            Component::Q => state.q,
            Component::S => state.s,
        }
    }
}

/// Uniform cell-centered grid on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Config(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < 16 {
            return Err(Error::Config(format!("grid needs n >= 16 cells, got {n}")));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    /// Center of interior cell `i`.
    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }

    /// Center of storage slot `j` (ghosts included, slot `GHOST` is cell 0).
    pub fn slot_center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 - GHOST as f64 + 0.5) * self.dx()
    }

    pub fn len_with_ghosts(&self) -> usize {
        self.n + 2 * GHOST
    }
}

/// Solution on a grid at time `t`, `GHOST` extra slots on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSet {
    pub t: f64,
    n: usize,
    data: [Vec<f64>; 5],
}

impl FieldSet {
    pub fn zeros(grid: &Grid1D, t: f64) -> Self {
        let len = grid.len_with_ghosts();
        Self {
            t,
            n: grid.n,
            data: std::array::from_fn(|_| vec![0.0; len]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whole component including ghosts.
    pub fn slots(&self, c: Component) -> &[f64] {
        &self.data[c as usize]
    }

    pub fn slots_mut(&mut self, c: Component) -> &mut [f64] {
        &mut self.data[c as usize]
    }

    pub fn interior(&self, c: Component) -> &[f64] {
        &self.data[c as usize][GHOST..GHOST + self.n]
    }

    pub fn interior_mut(&mut self, c: Component) -> &mut [f64] {
        let n = self.n;
        &mut self.data[c as usize][GHOST..GHOST + n]
    }

    pub(crate) fn data(&self) -> &[Vec<f64>; 5] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Vec<f64>; 5] {
        &mut self.data
    }

    pub fn slot_state(&self, j: usize) -> CellState {
        CellState {
            v: self.data[0][j],
            u: self.data[1][j],
            theta: self.data[2][j],
            q: self.data[3][j],
            s: self.data[4][j],
        }
    }

    /// State of interior cell `i`.
    pub fn cell(&self, i: usize) -> CellState {
        self.slot_state(i + GHOST)
    }

    pub fn set_slot(&mut self, j: usize, state: &CellState) {
        for c in Component::ALL {
            self.data[c as usize][j] = c.of(state);
        }
    }

    pub fn set_cell(&mut self, i: usize, state: &CellState) {
        self.set_slot(i + GHOST, state);
    }
}
