use std::f64::consts::LN_2;

use serde::Serialize;

use super::{derive_k_auto, sigma_edge, BoundConfig, IterationConstants};
use crate::error::{Error, Result};
use crate::exponents::{failed_hypotheses, fujita, lifespan_exponent};

/// `T(ε) <= C ε^{-exponent}`, conditional on the configured `δ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LifespanBound {
    pub c: f64,
    pub log_c: f64,
    pub exponent: f64,
    /// `C ε^{-exponent}`; may overflow to infinity, `log_t_upper` never does.
    pub t_upper: f64,
    pub log_t_upper: f64,
    pub constants: IterationConstants,
}

/// `J(t, r) = log C_0 - S_{p,K} + A log t - (k̄ + 1 + m) log(r + t)`, for `t > 1`.
pub fn j_functional(t: f64, r: f64, consts: &IterationConstants, cfg: &BoundConfig) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::domain("time t", format!("J is defined for t > 1, got {t}")));
    }
    if !(r > 0.0) {
        return Err(Error::domain("radius r", format!("need r > 0, got {r}")));
    }
    Ok(consts.log_c0 - consts.s_bound + cfg.growth_a() * t.ln() - cfg.growth_b() * (r + t).ln())
}

/// The point `(t, t + max(2t/δ_m, δ))` on the inner edge of `Σ_δ`.
pub fn ray_point(t: f64, cfg: &BoundConfig) -> (f64, f64) {
    let edge = sigma_edge(t, cfg);
    let mut r = t + edge;
    // keep the rounded point inside the set
    while r - t < edge {
        r = r.next_up();
    }
    (t, r)
}

/// Smallest `t > 1` on the edge ray where `J > 0`, by bisection.
///
/// `J` is increasing along the ray whenever `2/(p-1) - μ/2 - k̄ > 0`.
pub fn ray_threshold(consts: &IterationConstants, cfg: &BoundConfig) -> Result<f64> {
    let j_at = |t: f64| {
        let (t, r) = ray_point(t, cfg);
        j_functional(t, r, consts, cfg)
    };
    let lo_start = 1.0 + 1e-12;
    if j_at(lo_start)? > 0.0 {
        return Ok(lo_start);
    }
    let mut lo = lo_start;
    let mut hi = 2.0;
    while j_at(hi)? <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NotConverged(
                "J is still non-positive at t = f64::MAX along the ray; compare log_t_upper instead".into(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if j_at(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The explicit lifespan bound `T(ε) <= C ε^{-1/γ}` with `γ = 2/(p-1) - μ/2 - k̄` and
///
/// ```text
/// C = ( e^{S} δ_m^m / (2^{m-2} M) ((1+δ)/δ)^{k̄+1} (2 + 2/δ_m)^{1+k̄+m} )^{1/γ}
/// ```
pub fn lifespan_upper_bound(cfg: &BoundConfig) -> Result<LifespanBound> {
    let prm = cfg.params();
    let (p, mu, kbar) = (prm.p(), prm.mu(), prm.kbar());
    let gamma = 2.0 / (p - 1.0) - 0.5 * mu - kbar;
    if !(gamma > 0.0) {
        return Err(Error::Hypothesis(format!(
            "-1 < kbar < 2/(p-1) - mu/2 (kbar = {kbar}, 2/(p-1) - mu/2 = {})",
            2.0 / (p - 1.0) - 0.5 * mu
        )));
    }
    if mu > 2.0 {
        let cap = fujita(0.5 * mu - 1.0)?;
        if !(p < cap) {
            return Err(Error::Hypothesis(format!("p < p_F(mu/2 - 1) = {cap} for mu > 2 (p = {p})")));
        }
    }
    if let Some(h) = failed_hypotheses(prm).first() {
        return Err(Error::Hypothesis(h.to_string()));
    }
    let exponent = lifespan_exponent(prm)?;
    let constants = derive_k_auto(cfg)?;

    let m = prm.m() as f64;
    let (delta, delta_m) = (cfg.delta(), cfg.delta_m());
    let log_inner = constants.s_bound + m * delta_m.ln() - (m - 2.0) * LN_2 - prm.amplitude().ln()
        + (kbar + 1.0) * ((1.0 + delta) / delta).ln()
        + (1.0 + kbar + m) * (2.0 + 2.0 / delta_m).ln();
    let log_c = log_inner / gamma;
    let log_t_upper = log_c - exponent * prm.eps().ln();
    Ok(LifespanBound {
        c: log_c.exp(),
        log_c,
        exponent,
        t_upper: log_t_upper.exp(),
        log_t_upper,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::ModelParams;

    fn cfg(mu: f64, nu: f64, p: f64, kbar: f64, amp: f64, eps: f64) -> BoundConfig {
        BoundConfig::new(ModelParams::new(3, mu, nu, p, kbar, amp, eps).unwrap(), 1.0, 1.0).unwrap()
    }

    #[test]
    fn exponent_matches_exponents_module() {
        let c = cfg(2.0, 0.0, 1.8, 0.5, 1.0, 3.0);
        let b = lifespan_upper_bound(&c).unwrap();
        let a = lifespan_exponent(c.params()).unwrap();
        assert!((b.exponent - a).abs() < 1e-12);
        assert!((b.exponent - 1.0).abs() < 1e-12);
    }

    #[test]
    fn c_is_independent_of_eps() {
        let c1 = cfg(2.0, 0.0, 1.8, 0.5, 1.0, 3.0);
        let c2 = cfg(2.0, 0.0, 1.8, 0.5, 1.0, 6.0);
        let b1 = lifespan_upper_bound(&c1).unwrap();
        let b2 = lifespan_upper_bound(&c2).unwrap();
        assert_eq!(b1.log_c, b2.log_c);
        let ratio = (b2.log_t_upper - b1.log_t_upper).exp();
        assert!((ratio - 2f64.powf(-b1.exponent)).abs() < 1e-12);
    }

    #[test]
    fn doubling_amplitude_divides_c() {
        let b1 = lifespan_upper_bound(&cfg(0.0, 0.0, 1.8, 0.5, 1.0, 1.0)).unwrap();
        let b2 = lifespan_upper_bound(&cfg(0.0, 0.0, 1.8, 0.5, 2.0, 1.0)).unwrap();
        let gamma = 2.0 / 0.8 - 0.5;
        assert!(((b1.log_c - b2.log_c) - LN_2 / gamma).abs() < 1e-12);
    }

    #[test]
    fn preconditions_named() {
        let e = lifespan_upper_bound(&cfg(2.0, 0.0, 2.5, 0.5, 1.0, 1.0)).unwrap_err();
        assert!(e.to_string().contains("2/(p-1) - mu/2"), "{e}");
        let e = lifespan_upper_bound(&cfg(2.0, 0.5, 1.5, 0.5, 1.0, 1.0)).unwrap_err();
        assert!(e.to_string().contains("nu"), "{e}");
    }

    #[test]
    fn j_domain_and_monotonicity() {
        let c = cfg(2.0, 0.0, 1.8, 0.5, 1.0, 3.0);
        let consts = derive_k_auto(&c).unwrap();
        assert!(j_functional(1.0, 5.0, &consts, &c).is_err());
        assert!(j_functional(0.5, 5.0, &consts, &c).is_err());
        let j1 = j_functional(2.0, 5.0, &consts, &c).unwrap();
        let j2 = j_functional(2.0, 6.0, &consts, &c).unwrap();
        assert!(j2 < j1);
        let mut shifted = consts;
        shifted.log_c0 += 1.5;
        let j3 = j_functional(2.0, 5.0, &shifted, &c).unwrap();
        assert!((j3 - j1 - 1.5).abs() < 1e-12);
    }

    #[test]
    fn ray_threshold_equals_t_upper_when_far_out() {
        let c = cfg(2.0, 0.0, 1.8, 0.5, 1.0, 0.5);
        let b = lifespan_upper_bound(&c).unwrap();
        let t = ray_threshold(&b.constants, &c).unwrap();
        assert!(b.t_upper > 1.0);
        assert!((t / b.t_upper - 1.0).abs() < 1e-9, "{t} vs {}", b.t_upper);
    }
}
