//! Quadrature checks of the integral inequalities behind the iteration.

use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::Serialize;

use super::{in_sigma, sigma_edge, BoundConfig, IterationState};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_2d, QuadOptions};

const SINGLE_REL_TOL: f64 = 1e-10;
const DOUBLE_REL_TOL: f64 = 1e-8;
/// A ratio below `1 - RATIO_SLACK` counts as a violated inequality.
pub const RATIO_SLACK: f64 = 1e-6;

/// Free-wave lower bound `ε/(8 r^m) ∫_{r-t}^{r+t} λ^m M (1+λ)^{-(k̄+1)} dλ` on `Σ_δ`.
pub fn free_lower_bound(t: f64, r: f64, cfg: &BoundConfig) -> Result<f64> {
    if !in_sigma(t, r, cfg) {
        return Err(Error::domain("(t, r)", format!("({t}, {r}) lies outside the blow-up set")));
    }
    let prm = cfg.params();
    let m = prm.m() as i32;
    let decay = prm.kbar() + 1.0;
    let est = integrate(
        |lam: f64| lam.powi(m) * (1.0 + lam).powf(-decay),
        r - t,
        r + t,
        QuadOptions::relative(SINGLE_REL_TOL),
    )?;
    Ok(prm.eps() * prm.amplitude() * est.value / (8.0 * r.powi(m)))
}

/// Deterministic, well-spread points of `Σ_δ` with `t ∈ [t_lo, t_hi]`.
///
/// Distances from the edge of the set grow geometrically along the sequence so
/// that both tight and slack regions are sampled.
pub fn sigma_samples(cfg: &BoundConfig, count: usize, t_lo: f64, t_hi: f64) -> Vec<(f64, f64)> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    (0..count)
        .map(|i| {
            let u = ((i as f64 + 0.5) * GOLDEN).fract();
            let v = ((i as f64 + 0.5) * GOLDEN * GOLDEN).fract();
            let t = t_lo + (t_hi - t_lo) * u;
            let edge = sigma_edge(t, cfg);
            // r - t between the edge and 8x the edge
            (t, t + edge * 8f64.powf(v))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub state: IterationState,
    /// `(t, r, ratio)` per sample: Duhamel integral over the starred envelope.
    pub ratios: Vec<(f64, f64, f64)>,
    pub worst_ratio: f64,
    pub passed: bool,
}

/// Plug the envelope `C t^a / (r^m (r+t)^b)` into the Duhamel term and compare
/// against the next envelope `C* t^{a*} / (r^m (r+t)^{b*})`.
///
/// Both sides carry `C^p`, so the ratio does not depend on `C`. The weight
/// `(1+τ)^{-μ(p-1)/2}` is used in the time integral.
pub fn verify_iteration_step(
    state: &IterationState,
    samples: &[(f64, f64)],
    cfg: &BoundConfig,
) -> Result<StepReport> {
    for &(t, r) in samples {
        if !(t > 1.0 && in_sigma(t, r, cfg)) {
            return Err(Error::domain("sample", format!("({t}, {r}) needs t > 1 and to lie in the blow-up set")));
        }
    }
    let ratios = samples
        .par_iter()
        .map(|&(t, r)| step_ratio(state, t, r, cfg).map(|q| (t, r, q)))
        .collect::<Result<Vec<_>>>()?;
    let worst_ratio = ratios.iter().map(|x| x.2).fold(f64::INFINITY, f64::min);
    Ok(StepReport { state: *state, passed: worst_ratio >= 1.0 - RATIO_SLACK, ratios, worst_ratio })
}

fn step_ratio(state: &IterationState, t: f64, r: f64, cfg: &BoundConfig) -> Result<f64> {
    let prm = cfg.params();
    let (p, mu, m) = (prm.p(), prm.mu(), prm.m() as f64);
    let (a, b) = (state.a, state.b);
    let pa = p * a;
    let time_weight = 0.5 * mu * (p - 1.0);
    let rt = r + t;
    // normalised by t^{pa} (r+t)^{-b*}, so every factor is O(1)
    let integrand = |tau: f64, lam: f64| {
        let log = pa * (tau / t).ln() - time_weight * (1.0 + tau).ln() + m * (1.0 - p) * (lam / rt).ln()
            - p * b * ((lam + tau) / rt).ln();
        log.exp()
    };
    let est = integrate_2d(
        integrand,
        0.0,
        t,
        |tau| r - t + tau,
        |tau| r + t - tau,
        QuadOptions::relative(DOUBLE_REL_TOL),
    )?;
    let a_star = p * (a - 0.5 * mu) + 2.0 + 0.5 * mu;
    let log_prefactor = -(8f64.ln()) + (p + 1.0) * LN_2 + 2.0 * (pa + 2.0).ln() + (pa - a_star) * t.ln();
    Ok(est.value * log_prefactor.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound_engine::{iterate, seed_constant};
    use crate::exponents::ModelParams;

    fn cfg(n: u32, mu: f64, p: f64, kbar: f64) -> BoundConfig {
        BoundConfig::new(ModelParams::new(n, mu, 0.0, p, kbar, 1.0, 1.0).unwrap(), 1.0, 1.0).unwrap()
    }

    #[test]
    fn free_bound_dominates_seed_envelope() {
        for (n, kbar) in [(3, 0.5), (2, -0.5), (4, 1.5), (7, 0.0)] {
            let c = cfg(n, 2.0, 1.5, kbar);
            let s = IterationState::seed(&c);
            for (t, r) in sigma_samples(&c, 100, 0.05, 20.0) {
                let lower = free_lower_bound(t, r, &c).unwrap();
                let env = super::super::log_envelope(&s, t, r, c.params().m()).exp();
                assert!(lower >= env * (1.0 - 1e-10), "n={n} t={t} r={r}: {lower} < {env}");
            }
        }
    }

    #[test]
    fn free_bound_rejects_points_outside() {
        let c = cfg(3, 2.0, 1.5, 0.5);
        assert!(free_lower_bound(1.0, 2.0, &c).is_err());
    }

    #[test]
    fn free_bound_scales_linearly() {
        let prm = ModelParams::new(3, 2.0, 0.0, 1.5, 0.5, 1.0, 1.0).unwrap();
        let c1 = BoundConfig::with_defaults(prm);
        let c2 = BoundConfig::with_defaults(prm.with_eps(3.0).unwrap().with_amplitude(2.0).unwrap());
        let (t, r) = (2.0, 9.0);
        let q = free_lower_bound(t, r, &c2).unwrap() / free_lower_bound(t, r, &c1).unwrap();
        assert!((q - 6.0).abs() < 1e-9);
    }

    #[test]
    fn free_bound_grows_with_t() {
        let c = cfg(3, 2.0, 1.5, 0.5);
        let r = 30.0;
        let mut last = 0.0;
        for i in 1..=9 {
            let t = i as f64;
            let v = free_lower_bound(t, r, &c).unwrap();
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn seed_step_holds_in_three_dims() {
        let c = cfg(3, 2.0, 2.0, 0.0);
        let samples = sigma_samples(&c, 8, 1.1, 10.0);
        let rep = verify_iteration_step(&IterationState::seed(&c), &samples, &c).unwrap();
        assert!(rep.passed, "worst {}", rep.worst_ratio);
        assert_eq!(rep.ratios.len(), 8);
    }

    #[test]
    fn second_step_holds_too() {
        let c = cfg(3, 0.0, 2.0, 0.0);
        let s2 = iterate(&IterationState::seed(&c), &c);
        let samples = sigma_samples(&c, 6, 1.1, 6.0);
        let rep = verify_iteration_step(&s2, &samples, &c).unwrap();
        assert!(rep.passed, "worst {}", rep.worst_ratio);
    }

    #[test]
    fn ratio_does_not_depend_on_c() {
        let c = cfg(3, 2.0, 2.0, 0.0);
        let mut s = IterationState::seed(&c);
        let samples = [(2.0, 8.0)];
        let r1 = verify_iteration_step(&s, &samples, &c).unwrap().worst_ratio;
        s.log_c = seed_constant(&c) + 10.0;
        let r2 = verify_iteration_step(&s, &samples, &c).unwrap().worst_ratio;
        assert_eq!(r1, r2);
    }

    #[test]
    fn samples_outside_rejected() {
        let c = cfg(3, 2.0, 2.0, 0.0);
        let s = IterationState::seed(&c);
        assert!(verify_iteration_step(&s, &[(0.5, 10.0)], &c).is_err());
        assert!(verify_iteration_step(&s, &[(2.0, 5.0)], &c).is_err());
    }
}
