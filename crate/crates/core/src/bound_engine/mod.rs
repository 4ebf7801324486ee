//! The lower-bound iteration that forces blow-up, made computable.
//!
//! In the blow-up set `Σ_δ = {(t, r) : r - t >= max(2t/δ_m, δ)}` the solution
//! satisfies `u >= C_k t^{a_k} / (r^m (r+t)^{b_k})` for every `k`, with
//!
//! ```text
//! a_{k+1} = p(a_k - μ/2) + 2 + μ/2,         a_1 = m + 1
//! b_{k+1} = p b_k + m(p - 1),               b_1 = k̄ + 1
//! C_{k+1} = (C_k/2)^p / (2 (p a_k + 2)²),   C_1 = C_0
//! ```
//!
//! `C_k` behaves like `exp(± p^k)`, so it is only ever stored as `log C_k`.
//! The constant `δ_m` of the free-wave comparison lemma is not computed here;
//! every bound produced by this module is conditional on the configured value.

mod iteration;
mod lifespan;
mod verify;

pub use iteration::{closed_form, derive_k, derive_k_auto, iterate, IterationConstants, IterationState};
pub use lifespan::{j_functional, lifespan_upper_bound, ray_point, ray_threshold, LifespanBound};
pub use verify::{free_lower_bound, sigma_samples, verify_iteration_step, StepReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::ModelParams;

/// Default for the comparison-lemma constant `δ_m`.
pub const DEFAULT_DELTA_M: f64 = 1.0;
pub const DEFAULT_DELTA: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConfig {
    delta: f64,
    delta_m: f64,
    params: ModelParams,
}

impl BoundConfig {
    pub fn new(params: ModelParams, delta: f64, delta_m: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::field("delta", format!("blow-up set margin must be > 0, got {delta}")));
        }
        if !(delta_m.is_finite() && delta_m > 0.0) {
            return Err(Error::field("delta_m", format!("must be > 0, got {delta_m}")));
        }
        Ok(Self { delta, delta_m, params })
    }

    pub fn with_defaults(params: ModelParams) -> Self {
        Self { delta: DEFAULT_DELTA, delta_m: DEFAULT_DELTA_M, params }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta_m(&self) -> f64 {
        self.delta_m
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn with_params(&self, params: ModelParams) -> Self {
        Self { params, ..*self }
    }

    /// Leading growth rate `m + 1 - μ/2 + 2/(p-1)` of `a_k / p^{k-1}`.
    pub fn growth_a(&self) -> f64 {
        let prm = &self.params;
        prm.m() as f64 + 1.0 - 0.5 * prm.mu() + 2.0 / (prm.p() - 1.0)
    }

    /// Leading growth rate `k̄ + 1 + m` of `b_k / p^{k-1}`.
    pub fn growth_b(&self) -> f64 {
        let prm = &self.params;
        prm.kbar() + 1.0 + prm.m() as f64
    }
}

/// Membership in the blow-up set `Σ_δ`.
pub fn in_sigma(t: f64, r: f64, cfg: &BoundConfig) -> bool {
    t > 0.0 && r > 0.0 && r - t >= sigma_edge(t, cfg)
}

/// `max(2t/δ_m, δ)`, the least admissible `r - t` at time `t`.
pub fn sigma_edge(t: f64, cfg: &BoundConfig) -> f64 {
    (2.0 * t / cfg.delta_m).max(cfg.delta)
}

/// `log C_0` with `C_0 = ε 2^{m-2} M δ_m^{-m} (δ/(1+δ))^{k̄+1}`.
pub fn seed_constant(cfg: &BoundConfig) -> f64 {
    let prm = &cfg.params;
    let m = prm.m() as f64;
    prm.eps().ln() + (m - 2.0) * std::f64::consts::LN_2 + prm.amplitude().ln() - m * cfg.delta_m.ln()
        + (prm.kbar() + 1.0) * (cfg.delta / (1.0 + cfg.delta)).ln()
}

/// `log(C t^a / (r^m (r+t)^b))`, the lower-bound envelope of one iteration state.
pub fn log_envelope(state: &IterationState, t: f64, r: f64, m: u32) -> f64 {
    state.log_c + state.a * t.ln() - m as f64 * r.ln() - state.b * (r + t).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u32, mu: f64, p: f64, kbar: f64, amp: f64, eps: f64, delta: f64, delta_m: f64) -> BoundConfig {
        let prm = ModelParams::new(n, mu, 0.0, p, kbar, amp, eps).unwrap();
        BoundConfig::new(prm, delta, delta_m).unwrap()
    }

    #[test]
    fn sigma_membership() {
        let c = cfg(3, 2.0, 2.0, 0.0, 1.0, 1.0, 1.0, 1.0);
        assert!(in_sigma(1.0, 3.5, &c));
        assert!(!in_sigma(1.0, 2.9, &c));
        for t in [0.1, 1.0, 7.0] {
            assert!(!in_sigma(t, t, &c));
        }
        assert!(!in_sigma(0.0, 5.0, &c));
    }

    #[test]
    fn seed_constant_value() {
        let c = cfg(2, 0.0, 2.0, 0.0, 4.0, 1.0, 1.0, 2.0);
        assert!((seed_constant(&c).exp() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn seed_constant_linear_in_eps() {
        let c1 = cfg(3, 2.0, 1.5, 0.5, 1.3, 0.7, 0.4, 1.7);
        let c2 = cfg(3, 2.0, 1.5, 0.5, 1.3, 1.4, 0.4, 1.7);
        let ratio = (seed_constant(&c2) - seed_constant(&c1)).exp();
        assert!((ratio - 2.0).abs() < 1e-14);
    }

    #[test]
    fn seed_constant_large_delta_limit() {
        let c = cfg(5, 2.0, 1.5, 0.5, 1.3, 0.7, 1e12, 1.7);
        let m = 2.0;
        let limit = 0.7 * 2f64.powf(m - 2.0) * 1.3 / 1.7f64.powf(m);
        assert!((seed_constant(&c).exp() / limit - 1.0).abs() < 1e-10);
    }

    #[test]
    fn config_validation() {
        let prm = ModelParams::new(3, 2.0, 0.0, 2.0, 0.0, 1.0, 1.0).unwrap();
        assert!(BoundConfig::new(prm, 0.0, 1.0).is_err());
        assert!(BoundConfig::new(prm, 1.0, -1.0).is_err());
        assert!(BoundConfig::new(prm, 1.0, 1.0).is_ok());
    }
}
