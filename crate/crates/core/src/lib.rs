//! Simulation and exact-solution toolkit for rarefaction waves of the
//! one-dimensional compressible gas system with Maxwell viscous stress and
//! Cattaneo heat flux, written in Lagrangian coordinates:
//!
//! ```text
//! v_t - u_x = 0
//! u_t + p(v, theta)_x = S_x
//! (Cv + a'(theta) q^2) theta_t - (2 a kappa / tau1) q theta_x + p u_x + q_x
//!     = (2 a v / tau1) q^2 + (v / mu) S^2
//! tau1 q_t + v q + kappa theta_x = 0
//! tau2 S_t + v S = mu u_x
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod quadrature;
pub mod riemann;
pub mod smoothwave;
pub mod solver;
pub mod thermo;

pub use error::{Error, Result};
pub use riemann::{EndState, RiemannData};
pub use smoothwave::{SmoothWave, WavePoint};
pub use thermo::{CellState, GasParams};
