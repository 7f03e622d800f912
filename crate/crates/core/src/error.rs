use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a closed-form expression.
    #[error("{what} must be positive, got {value}")]
    Domain { what: &'static str, value: f64 },

    /// The coefficient of the temperature rate, `Cv + a'(theta) q^2`, lost positivity.
    #[error(
        "effective heat capacity {capacity} <= 0 at theta = {theta}, q = {q}: temperature equation is degenerate"
    )]
    ModelBreakdown { theta: f64, q: f64, capacity: f64 },

    #[error("not a 1-rarefaction: need 0 < v_minus < v_plus, got v_minus = {v_minus}, v_plus = {v_plus}")]
    NotRarefaction { v_minus: f64, v_plus: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A solver invariant failed on an interior cell.
    #[error("invariant violated at step {step}, t = {t}, cell {cell}: {detail}")]
    Invariant {
        step: usize,
        t: f64,
        cell: usize,
        detail: String,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub(crate) fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain { what, value })
    }
}
