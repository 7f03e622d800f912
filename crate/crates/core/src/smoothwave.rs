//! Smooth approximate 1-rarefaction wave.
//!
//! The fan is smoothed by solving the inviscid Burgers equation from the
//! monotone profile
//!
//! ```text
//! w0(x) = (w+ + w-)/2 + (w+ - w-)/2 * Kq * int_0^{eps x} (1 + y^2)^(-q) dy
//! ```
//!
//! and lifting `w(1 + t, x)` back to fluid variables through the isentrope
//! of the right state: `lambda1(vR, thetaR) = w`, `s = s+`, `z1 = u+`.
//! Spatial derivatives are analytic; the relaxed reference fluxes are
//! `qR = -kappa thetaR_x / vR` and `SR = mu uR_x / vR`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::quadrature;
use crate::riemann::{self, RiemannData};
use crate::thermo::GasParams;

const QUAD_TOL: f64 = 1e-12;
const ROOT_TOL: f64 = 1e-13;

/// Everything needed to evaluate the smooth wave. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothWave {
    gas: GasParams,
    riemann: RiemannData,
    epsilon: f64,
    q_exp: f64,
    kq: f64,
}

/// Smooth wave and its first derivatives at one `(t, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePoint {
    pub v: f64,
    pub u: f64,
    pub theta: f64,
    pub q_ref: f64,
    pub s_ref: f64,
    pub vx: f64,
    pub ux: f64,
    pub thetax: f64,
    /// Burgers solution `w(1 + t, x)` and its `x` derivative.
    pub w: f64,
    pub wx: f64,
}

/// Residuals of the Euler system for the smooth wave, and the forcing terms
/// `Q1R = -mu (uR_x / vR)_x`, `Q2R = -kappa (thetaR_x / vR)_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerDefect {
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
    pub q1: f64,
    pub q2: f64,
}

impl EulerDefect {
    pub fn max_residual(&self) -> f64 {
        self.mass
            .abs()
            .max(self.momentum.abs())
            .max(self.energy.abs())
    }
}

/// Norms and tail ratios of the smooth wave at one time, paired with the
/// bound expressions they are compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub t: f64,
    pub p_norm: f64,
    pub lp_ux: f64,
    pub lp_vx: f64,
    pub lp_thetax: f64,
    /// `min(delta, delta^(1/p) (1+t)^(-1+1/p))`.
    pub lp_bound: f64,
    /// `max |state - right| / (delta e^{-2|x - w+ (1+t)|})` right of the fan,
    /// over a window of width [`TAIL_WINDOW`].
    pub tail_ratio_right: f64,
    pub tail_ratio_left: f64,
    /// `sup_x |smooth - centered|`; `None` at `t = 0` where the fan is undefined.
    pub sup_centered: Option<f64>,
}

pub const TAIL_WINDOW: f64 = 10.0;

/// `int_0^z (1 + y^2)^(-q) dy`, evaluated as `int_0^{atan z} cos^(2q-2)(phi) dphi`.
pub fn incomplete_integral(q_exp: f64, z: f64) -> f64 {
    let power = 2.0 * q_exp - 2.0;
    let value = quadrature::integrate(
        |phi: f64| phi.cos().powf(power),
        0.0,
        z.abs().atan(),
        QUAD_TOL,
    );
    value.copysign(z)
}

/// `Kq = 1 / int_0^inf (1 + y^2)^(-q) dy`, so that `w0(+-inf) = w+-`.
pub fn kq_normalizer(q_exp: f64) -> Result<f64> {
    if !(q_exp > 1.5 && q_exp.is_finite()) {
        return Err(Error::Config(format!("q_exp must exceed 1.5, got {q_exp}")));
    }
    let power = 2.0 * q_exp - 2.0;
    Ok(1.0 / quadrature::integrate(|phi: f64| phi.cos().powf(power), 0.0, FRAC_PI_2, QUAD_TOL))
}

impl SmoothWave {
    pub fn new(gas: GasParams, riemann: RiemannData, epsilon: f64, q_exp: f64) -> Result<Self> {
        gas.validate()?;
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if !(riemann.w_minus < riemann.w_plus) {
            return Err(Error::NotRarefaction {
                v_minus: riemann.left.v,
                v_plus: riemann.right.v,
            });
        }
        let kq = kq_normalizer(q_exp)?;
        Ok(Self {
            gas,
            riemann,
            epsilon,
            q_exp,
            kq,
        })
    }

    pub fn gas(&self) -> &GasParams {
        &self.gas
    }

    pub fn riemann(&self) -> &RiemannData {
        &self.riemann
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn q_exp(&self) -> f64 {
        self.q_exp
    }

    pub fn kq(&self) -> f64 {
        self.kq
    }

    fn half_jump(&self) -> f64 {
        0.5 * (self.riemann.w_plus - self.riemann.w_minus)
    }

    pub fn w0(&self, x: f64) -> f64 {
        let mid = 0.5 * (self.riemann.w_plus + self.riemann.w_minus);
        let w =
            mid + self.half_jump() * self.kq * incomplete_integral(self.q_exp, self.epsilon * x);
        // quadrature rounding must not push the far tails past the end speeds
        w.clamp(self.riemann.w_minus, self.riemann.w_plus)
    }

    pub fn w0_prime(&self, x: f64) -> f64 {
        let y = self.epsilon * x;
        self.half_jump() * self.kq * self.epsilon * (1.0 + y * y).powf(-self.q_exp)
    }

    /// `w0(x0 + d) - w0(x0)` computed as a short integral, accurate relative
    /// to its own size.
    fn w0_increment(&self, x0: f64, d: f64) -> f64 {
        let y0 = self.epsilon * x0;
        let dy = self.epsilon * d;
        let q = self.q_exp;
        let f = |s: f64| {
            let y = y0 + s * dy;
            (1.0 + y * y).powf(-q)
        };
        let (integral, _) = quadrature::kronrod15(&f, 0.0, 1.0);
        self.half_jump() * self.kq * dy * integral
    }

    /// Foot `x0` of the characteristic through `(tau, x)`: `x = x0 + w0(x0) tau`.
    pub fn characteristic_foot(&self, tau: f64, x: f64) -> Result<f64> {
        if !(tau >= 0.0) {
            return Err(Error::Domain {
                what: "shifted time",
                value: tau,
            });
        }
        if tau == 0.0 {
            return Ok(x);
        }
        let residual = |x0: f64| x0 + self.w0(x0) * tau - x;
        let mut lo = x - self.riemann.w_plus * tau;
        let mut hi = x - self.riemann.w_minus * tau;
        // the analytic bracket can miss by rounding when w0 saturates
        let mut pad = f64::EPSILON * (x.abs() + tau * self.riemann.w_minus.abs()).max(1.0);
        for _ in 0..8 {
            if residual(lo) <= 0.0 && residual(hi) >= 0.0 {
                break;
            }
            lo -= pad;
            hi += pad;
            pad *= 16.0;
        }
        if residual(lo) > 0.0 || residual(hi) < 0.0 {
            return Err(Error::Internal(format!(
                "characteristic root not bracketed at tau = {tau}, x = {x}"
            )));
        }
        for _ in 0..200 {
            if hi - lo <= ROOT_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if residual(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut x0 = 0.5 * (lo + hi);
        for _ in 0..2 {
            x0 -= residual(x0) / (1.0 + tau * self.w0_prime(x0));
        }
        Ok(x0)
    }

    /// Burgers solution `(w, w_x)` at shifted time `tau >= 0`.
    pub fn burgers_w(&self, tau: f64, x: f64) -> Result<(f64, f64)> {
        let x0 = self.characteristic_foot(tau, x)?;
        let slope = self.w0_prime(x0);
        Ok((self.w0(x0), slope / (1.0 + tau * slope)))
    }

    /// Fluid state on the isentrope whose characteristic speed is `w`.
    fn lift(&self, w: f64) -> (f64, f64, f64) {
        let v = riemann::isentrope_volume_for_speed(&self.gas, &self.riemann, w);
        let right = &self.riemann.right;
        let theta = right.theta * (right.v / v).powf(self.gas.gamma - 1.0);
        let u = riemann::r1_curve_u(&self.gas, right, v).expect("positive volume");
        (v, u, theta)
    }

    pub fn wave_eval(&self, t: f64, x: f64) -> Result<WavePoint> {
        if !(t >= 0.0) {
            return Err(Error::Domain {
                what: "time",
                value: t,
            });
        }
        let (w, wx) = self.burgers_w(1.0 + t, x)?;
        Ok(self.point_from_burgers(w, wx))
    }

    fn point_from_burgers(&self, w: f64, wx: f64) -> WavePoint {
        let gas = &self.gas;
        let (v, u, theta) = self.lift(w);
        let ux = 2.0 * v * wx / (gas.gamma + 1.0);
        let vx = v * ux / (gas.r * gas.gamma * theta).sqrt();
        let thetax = -(gas.gamma - 1.0) * theta * vx / v;
        WavePoint {
            v,
            u,
            theta,
            q_ref: -gas.kappa * thetax / v,
            s_ref: gas.mu * ux / v,
            vx,
            ux,
            thetax,
            w,
            wx,
        }
    }

    /// `(v, u, theta)` at shifted time `tau_hi` minus the same at `tau_lo`,
    /// for fixed `x`. Increments are propagated without subtracting two
    /// nearly equal states, so they stay accurate relative to their size
    /// even when `tau_hi - tau_lo` is tiny.
    pub fn time_increment(&self, tau_lo: f64, tau_hi: f64, x: f64) -> Result<(f64, f64, f64)> {
        let x0 = self.characteristic_foot(tau_lo, x)?;
        let w_lo = self.w0(x0);
        let dtau = tau_hi - tau_lo;
        let mut d = -w_lo * dtau / (1.0 + tau_hi * self.w0_prime(x0));
        for _ in 0..8 {
            let g = d + tau_hi * self.w0_increment(x0, d) + w_lo * dtau;
            let step = g / (1.0 + tau_hi * self.w0_prime(x0 + d));
            d -= step;
            if step.abs() <= 1e-17 * d.abs() {
                break;
            }
        }
        let dw = self.w0_increment(x0, d);

        let gas = &self.gas;
        let (v_lo, _, theta_lo) = self.lift(w_lo);
        let g1 = gas.gamma - 1.0;
        let log_v = -2.0 / (gas.gamma + 1.0) * (dw / w_lo).ln_1p();
        let dv = v_lo * log_v.exp_m1();
        let dtheta = theta_lo * (-g1 * log_v).exp_m1();
        let right = &self.riemann.right;
        let c_plus = (gas.gamma * gas.r * right.theta).sqrt();
        let du =
            -2.0 / g1 * c_plus * (right.v / v_lo).powf(0.5 * g1) * (-0.5 * g1 * log_v).exp_m1();
        Ok((dv, du, dtheta))
    }

    pub fn euler_defect(&self, t: f64, x: f64) -> Result<EulerDefect> {
        self.euler_defect_with_steps(t, x, 1e-5, 1e-5)
    }

    /// Euler residuals with centered time differences of step `h_t` and the
    /// `Q` terms from centered space differences of step `h_x`.
    pub fn euler_defect_with_steps(
        &self,
        t: f64,
        x: f64,
        h_t: f64,
        h_x: f64,
    ) -> Result<EulerDefect> {
        let gas = &self.gas;
        let here = self.wave_eval(t, x)?;
        let tau = 1.0 + t;
        let (tau_lo, tau_hi) = (tau - h_t, tau + h_t);
        let (dv, du, dtheta) = self.time_increment(tau_lo, tau_hi, x)?;
        let dt = tau_hi - tau_lo;
        let (v_t, u_t, theta_t) = (dv / dt, du / dt, dtheta / dt);

        let p = gas.r * here.theta / here.v;
        let p_x = gas.r * (here.thetax * here.v - here.theta * here.vx) / (here.v * here.v);

        let right = self.wave_eval(t, x + h_x)?;
        let left = self.wave_eval(t, x - h_x)?;
        let q1 = -gas.mu * (right.ux / right.v - left.ux / left.v) / (2.0 * h_x);
        let q2 = -gas.kappa * (right.thetax / right.v - left.thetax / left.v) / (2.0 * h_x);

        Ok(EulerDefect {
            mass: v_t - here.ux,
            momentum: u_t + p_x,
            energy: gas.cv() * theta_t + p * here.ux,
            q1,
            q2,
        })
    }

    /// Edges of the smooth fan at time `t`, `(w- (1+t), w+ (1+t))`.
    pub fn fan_edges(&self, t: f64) -> (f64, f64) {
        (
            self.riemann.w_minus * (1.0 + t),
            self.riemann.w_plus * (1.0 + t),
        )
    }

    /// `sup_x max(|uR - ur|, |vR - vr|, |thetaR - thetar|)` over `n` uniform
    /// points covering both fans widened by `margin`.
    pub fn sup_distance_to_centered(&self, t: f64, n: usize, margin: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain {
                what: "time",
                value: t,
            });
        }
        let (lo, hi) = self.fan_edges(t);
        let x_min = lo.min(self.riemann.w_minus * t) - margin;
        let x_max = hi.max(self.riemann.w_plus * t) + margin;
        let mut sup: f64 = 0.0;
        for k in 0..n {
            let x = x_min + (x_max - x_min) * k as f64 / (n - 1) as f64;
            let smooth = self.wave_eval(t, x)?;
            let exact = riemann::centered_wave_eval(&self.gas, &self.riemann, t, x)?;
            sup = sup
                .max((smooth.v - exact.v).abs())
                .max((smooth.u - exact.u).abs())
                .max((smooth.theta - exact.theta).abs());
        }
        Ok(sup)
    }

    /// Discrete `L^p` norms of the first derivatives, tail ratios outside the
    /// fan and the distance to the centered wave at time `t`.
    pub fn bounds_report(&self, t: f64, p_norm: f64) -> Result<BoundsReport> {
        if !(t >= 0.0) {
            return Err(Error::Domain {
                what: "time",
                value: t,
            });
        }
        if !(p_norm >= 1.0 && p_norm.is_finite()) {
            return Err(Error::Domain {
                what: "norm exponent",
                value: p_norm,
            });
        }
        const MARGIN: f64 = 50.0;
        const N: usize = 20_001;
        let (lo, hi) = self.fan_edges(t);
        let x_min = lo - MARGIN;
        let x_max = hi + MARGIN;
        let dx = (x_max - x_min) / (N - 1) as f64;
        let delta = self.riemann.strength();
        let (left, right) = (self.riemann.left, self.riemann.right);

        let mut sums = [0.0f64; 3];
        let mut tail_right: f64 = 0.0;
        let mut tail_left: f64 = 0.0;
        for k in 0..N {
            let x = x_min + dx * k as f64;
            let pt = self.wave_eval(t, x)?;
            let weight = if k == 0 || k == N - 1 { 0.5 } else { 1.0 };
            for (sum, value) in sums.iter_mut().zip([pt.ux, pt.vx, pt.thetax]) {
                *sum += weight * value.abs().powf(p_norm) * dx;
            }
            let gap = |end: &riemann::EndState| {
                (pt.u - end.u)
                    .abs()
                    .max((pt.v - end.v).abs())
                    .max((pt.theta - end.theta).abs())
            };
            if x >= hi && x - hi <= TAIL_WINDOW {
                let envelope = delta * (-2.0 * (x - hi)).exp();
                tail_right = tail_right.max(gap(&right) / envelope);
            }
            if x <= lo && lo - x <= TAIL_WINDOW {
                let envelope = delta * (-2.0 * (lo - x)).exp();
                tail_left = tail_left.max(gap(&left) / envelope);
            }
        }
        let inv_p = 1.0 / p_norm;
        let lp_bound = delta.min(delta.powf(inv_p) * (1.0 + t).powf(-1.0 + inv_p));
        let sup_centered = if t > 0.0 {
            Some(self.sup_distance_to_centered(t, 10_000, MARGIN)?)
        } else {
            None
        };
        Ok(BoundsReport {
            t,
            p_norm,
            lp_ux: sums[0].powf(inv_p),
            lp_vx: sums[1].powf(inv_p),
            lp_thetax: sums[2].powf(inv_p),
            lp_bound,
            tail_ratio_right: tail_right,
            tail_ratio_left: tail_left,
            sup_centered,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riemann::{build_riemann, EndState};
    use approx::assert_relative_eq;

    fn wave() -> SmoothWave {
        let gas = GasParams::default();
        let data = build_riemann(&gas, EndState::new(1.2, 0.0, 1.0), 1.0).unwrap();
        SmoothWave::new(gas, data, 1.0, 2.0).unwrap()
    }

    #[test]
    fn kq_examples() {
        assert_relative_eq!(
            kq_normalizer(2.0).unwrap(),
            4.0 / std::f64::consts::PI,
            epsilon = 1e-13
        );
        assert!(kq_normalizer(1.0).is_err());
        assert!(kq_normalizer(1.5).is_err());
        let err = kq_normalizer(1.2).unwrap_err().to_string();
        assert!(err.contains("q_exp must exceed 1.5"), "{err}");
    }

    #[test]
    fn incomplete_integral_matches_closed_form_for_q2() {
        for z in [-30.0, -2.0, -0.3, 0.0, 0.1, 1.0, 4.5, 1e3] {
            let closed = z / (2.0 * (1.0 + z * z)) + 0.5 * f64::atan(z);
            assert!(
                (incomplete_integral(2.0, z) - closed).abs() < 1e-14,
                "z = {z}"
            );
        }
    }

    #[test]
    fn w0_shape() {
        let s = wave();
        let r = s.riemann();
        assert_eq!(s.w0(0.0), 0.5 * (r.w_plus + r.w_minus));
        for x in [0.1, 1.0, 3.7, 20.0] {
            assert!((s.w0(x) + s.w0(-x) - (r.w_plus + r.w_minus)).abs() < 1e-15);
        }
        // tail of int (1+y^2)^-2 beyond z is about z^-3 / 3
        let x = 1e3;
        let gap = r.w_plus - s.w0(x);
        let tail = 0.5 * (r.w_plus - r.w_minus) * s.kq() * x.powi(-3) / 3.0;
        assert!(
            gap > 0.0 && (gap - tail).abs() < 1e-3 * tail,
            "{gap} vs {tail}"
        );
        assert!(s.w0_prime(-4.0) > 0.0);
    }

    #[test]
    fn burgers_at_zero_time_is_initial_profile() {
        let s = wave();
        for x in [-3.0, 0.0, 0.7] {
            let (w, wx) = s.burgers_w(0.0, x).unwrap();
            assert_eq!(w, s.w0(x));
            assert_eq!(wx, s.w0_prime(x));
        }
        assert!(s.burgers_w(-0.1, 0.0).is_err());
        let (w, _) = s.burgers_w(7.0, -1e4).unwrap();
        assert!((w - s.riemann().w_minus).abs() < 1e-9);
    }

    #[test]
    fn time_increment_matches_plain_difference() {
        let s = wave();
        let (dv, du, dth) = s.time_increment(2.0, 2.5, -2.0).unwrap();
        let a = s.wave_eval(1.0, -2.0).unwrap();
        let b = s.wave_eval(1.5, -2.0).unwrap();
        assert!((dv - (b.v - a.v)).abs() < 1e-12);
        assert!((du - (b.u - a.u)).abs() < 1e-12);
        assert!((dth - (b.theta - a.theta)).abs() < 1e-12);
    }

    #[test]
    fn far_left_is_constant_state() {
        let s = wave();
        let pt = s.wave_eval(2.0, -1e5).unwrap();
        let left = s.riemann().left;
        assert!((pt.v - left.v).abs() < 1e-12);
        assert!((pt.u - left.u).abs() < 1e-12);
        assert!((pt.theta - left.theta).abs() < 1e-12);
        assert!(pt.q_ref.abs() < 1e-12 && pt.s_ref.abs() < 1e-12);
        let defect = s.euler_defect(2.0, -1e5).unwrap();
        assert!(defect.max_residual() < 1e-10);
        assert!(defect.q1.abs() < 1e-10 && defect.q2.abs() < 1e-10);
    }

    #[test]
    fn reference_flux_identities() {
        let s = wave();
        let gas = *s.gas();
        let pt = s.wave_eval(3.0, -4.0).unwrap();
        assert!((pt.q_ref * pt.v + gas.kappa * pt.thetax).abs() < 1e-16);
        assert!((pt.v * pt.s_ref - gas.mu * pt.ux).abs() < 1e-16);
    }

    #[test]
    fn invalid_parameters() {
        let gas = GasParams::default();
        let data = build_riemann(&gas, EndState::new(1.2, 0.0, 1.0), 1.0).unwrap();
        assert!(SmoothWave::new(gas, data, 0.0, 2.0).is_err());
        assert!(SmoothWave::new(gas, data, 1.0, 1.4).is_err());
        assert!(wave().wave_eval(-1.0, 0.0).is_err());
    }
}
