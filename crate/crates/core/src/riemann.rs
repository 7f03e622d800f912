//! Exact 1-rarefaction curve of the Euler system and the self-similar
//! centered rarefaction fan.
//!
//! Everything here is closed form for the gamma-law gas: along the isentrope
//! through the right state, `theta = theta+ (v+/v)^(gamma-1)` and
//! `lambda1 = lambda1(v+, theta+) (v+/v)^((gamma+1)/2)`, so the curve
//! integral and the fan inversion are explicit power laws.

use crate::error::{positive, Error, Result};
use crate::thermo::GasParams;

/// Far-field Euler state `(v, u, theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndState {
    pub v: f64,
    pub u: f64,
    pub theta: f64,
}

impl EndState {
    pub fn new(v: f64, u: f64, theta: f64) -> Self {
        Self { v, u, theta }
    }
}

/// Left/right states joined by a 1-rarefaction, with the fan edge speeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannData {
    pub left: EndState,
    pub right: EndState,
    pub w_minus: f64,
    pub w_plus: f64,
}

impl RiemannData {
    /// Wave strength `|v+ - v-|`.
    pub fn strength(&self) -> f64 {
        (self.right.v - self.left.v).abs()
    }
}

pub fn isentrope_theta(gas: &GasParams, right: &EndState, v: f64) -> Result<f64> {
    positive("specific volume", v)?;
    Ok(right.theta * (right.v / v).powf(gas.gamma - 1.0))
}

/// Velocity on the 1-rarefaction curve through `right`:
/// `u+ - 2/(gamma-1) sqrt(gamma R theta+) ((v+/v)^((gamma-1)/2) - 1)`.
pub fn r1_curve_u(gas: &GasParams, right: &EndState, v: f64) -> Result<f64> {
    positive("specific volume", v)?;
    let c_plus = (gas.gamma * gas.r * right.theta).sqrt();
    let g1 = gas.gamma - 1.0;
    Ok(right.u - 2.0 / g1 * c_plus * ((right.v / v).powf(0.5 * g1) - 1.0))
}

/// Places the left state on the 1-rarefaction curve of `right` at `v_minus`.
pub fn build_riemann(gas: &GasParams, right: EndState, v_minus: f64) -> Result<RiemannData> {
    positive("right specific volume", right.v)?;
    positive("right temperature", right.theta)?;
    if !(v_minus > 0.0 && v_minus < right.v) {
        return Err(Error::NotRarefaction {
            v_minus,
            v_plus: right.v,
        });
    }
    let left = EndState {
        v: v_minus,
        u: r1_curve_u(gas, &right, v_minus)?,
        theta: isentrope_theta(gas, &right, v_minus)?,
    };
    Ok(RiemannData {
        left,
        right,
        w_minus: gas.lambda1(left.v, left.theta)?,
        w_plus: gas.lambda1(right.v, right.theta)?,
    })
}

/// Inverts `lambda1` along the isentrope of `right`: the volume whose
/// characteristic speed is `speed` (< 0).
pub fn isentrope_volume_for_speed(gas: &GasParams, data: &RiemannData, speed: f64) -> f64 {
    data.right.v * (data.w_plus / speed).powf(2.0 / (gas.gamma + 1.0))
}

/// Euler state on the fan `x/t`.
pub fn centered_wave_eval(gas: &GasParams, data: &RiemannData, t: f64, x: f64) -> Result<EndState> {
    positive("time", t)?;
    Ok(centered_wave_at_speed(gas, data, x / t))
}

/// Self-similar fan as a function of `xi = x/t`.
pub fn centered_wave_at_speed(gas: &GasParams, data: &RiemannData, xi: f64) -> EndState {
    if xi <= data.w_minus {
        return data.left;
    }
    if xi >= data.w_plus {
        return data.right;
    }
    let v = isentrope_volume_for_speed(gas, data, xi);
    // v > 0 by construction, so the closed forms cannot fail
    EndState {
        v,
        u: r1_curve_u(gas, &data.right, v).expect("positive volume"),
        theta: isentrope_theta(gas, &data.right, v).expect("positive volume"),
    }
}

/// `(z1, s)` of `state`, with `z1 = u + int_{v+}^{v} lambda1(s, v') dv'`
/// taken along the isentrope of `right`.
pub fn riemann_invariants(
    gas: &GasParams,
    state: &EndState,
    right: &EndState,
) -> Result<(f64, f64)> {
    positive("specific volume", state.v)?;
    let s = gas.entropy(state.v, state.theta)?;
    // the integral term is u+ - r1_curve_u(v)
    let integral = right.u - r1_curve_u(gas, right, state.v)?;
    Ok((state.u + integral, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn setup() -> (GasParams, EndState) {
        (GasParams::default(), EndState::new(2.0, 0.0, 1.0))
    }

    #[test]
    fn isentrope_examples() {
        let (gas, right) = setup();
        assert_eq!(isentrope_theta(&gas, &right, 2.0).unwrap(), 1.0);
        let theta = isentrope_theta(&gas, &right, 1.0).unwrap();
        assert_relative_eq!(theta, 1.587401051968, epsilon = 1e-11);
        let s_plus = gas.entropy(2.0, 1.0).unwrap();
        assert!((gas.entropy(1.0, theta).unwrap() - s_plus).abs() < 1e-12);
        assert!(isentrope_theta(&gas, &right, 0.0).is_err());
    }

    #[test]
    fn curve_examples() {
        let (gas, right) = setup();
        assert_eq!(r1_curve_u(&gas, &right, 2.0).unwrap(), 0.0);
        let u = r1_curve_u(&gas, &right, 1.0).unwrap();
        assert!((u + 1.00667).abs() < 1e-5, "{u}");
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=200 {
            let v = 0.01 * k as f64;
            let u = r1_curve_u(&gas, &right, v).unwrap();
            assert!(u > prev);
            prev = u;
        }
    }

    #[test]
    fn build_examples() {
        let (gas, right) = setup();
        assert!(matches!(
            build_riemann(&gas, right, 2.0),
            Err(Error::NotRarefaction { .. })
        ));
        assert!(build_riemann(&gas, right, 2.5).is_err());
        let data = build_riemann(&gas, right, 1.0).unwrap();
        assert_eq!(data.left.v, 1.0);
        assert!((data.left.u + 1.00667).abs() < 1e-5);
        assert_relative_eq!(data.left.theta, 2f64.powf(2.0 / 3.0), epsilon = 1e-14);
        let w_minus = -((5.0 / 3.0) * 2f64.powf(2.0 / 3.0)).sqrt();
        assert_relative_eq!(data.w_minus, w_minus, epsilon = 1e-14);
        assert!((data.w_minus + 1.626551).abs() < 1e-6);
        assert!((data.w_plus + 0.645497).abs() < 1e-6);
        assert_eq!(data.strength(), 1.0);
        let (z_left, s_left) = riemann_invariants(&gas, &data.left, &right).unwrap();
        let (z_right, s_right) = riemann_invariants(&gas, &right, &right).unwrap();
        assert_eq!(z_right, right.u);
        assert!((z_left - z_right).abs() < 1e-14);
        assert!((s_left - s_right).abs() < 1e-14);
    }

    #[test]
    fn fan_examples() {
        let (gas, right) = setup();
        let data = build_riemann(&gas, right, 1.0).unwrap();
        let t = 3.0;
        let outside = centered_wave_eval(&gas, &data, t, (data.w_minus - 1.0) * t).unwrap();
        assert_eq!(outside, data.left);
        let edge = centered_wave_at_speed(&gas, &data, data.w_plus);
        assert_eq!(edge, data.right);
        let xi = 0.5 * (data.w_minus + data.w_plus);
        let mid = centered_wave_at_speed(&gas, &data, xi);
        assert!((gas.lambda1(mid.v, mid.theta).unwrap() - xi).abs() < 1e-10);
        assert!(centered_wave_eval(&gas, &data, 0.0, 1.0).is_err());
    }

    #[test]
    fn fan_edges_are_continuous() {
        let (gas, right) = setup();
        let data = build_riemann(&gas, right, 1.0).unwrap();
        for (edge, state) in [(data.w_minus, data.left), (data.w_plus, data.right)] {
            for side in [-1.0, 1.0] {
                let s = centered_wave_at_speed(&gas, &data, edge + side * 1e-13);
                assert!((s.v - state.v).abs() < 1e-10);
                assert!((s.u - state.u).abs() < 1e-10);
                assert!((s.theta - state.theta).abs() < 1e-10);
            }
        }
    }
}
