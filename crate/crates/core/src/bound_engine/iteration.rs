use std::f64::consts::LN_2;

use serde::Serialize;

use super::{seed_constant, BoundConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationState {
    pub k: u32,
    pub a: f64,
    pub b: f64,
    /// `log C_k`
    pub log_c: f64,
}

impl IterationState {
    /// `(a_1, b_1, C_1) = (m + 1, k̄ + 1, C_0)`.
    pub fn seed(cfg: &BoundConfig) -> Self {
        let prm = cfg.params();
        Self { k: 1, a: prm.m() as f64 + 1.0, b: prm.kbar() + 1.0, log_c: seed_constant(cfg) }
    }
}

/// One step of the recursion.
pub fn iterate(state: &IterationState, cfg: &BoundConfig) -> IterationState {
    let prm = cfg.params();
    let (p, half_mu, m) = (prm.p(), 0.5 * prm.mu(), prm.m() as f64);
    IterationState {
        k: state.k + 1,
        a: p * (state.a - half_mu) + 2.0 + half_mu,
        b: p * state.b + m * (p - 1.0),
        log_c: p * state.log_c - p * LN_2 - LN_2 - 2.0 * (p * state.a + 2.0).ln(),
    }
}

/// `(a_k, b_k)` from the closed forms; `k = 1` returns the seeds.
pub fn closed_form(k: u32, cfg: &BoundConfig) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::domain("iteration index k", "indices start at 1"));
    }
    let prm = cfg.params();
    let p = prm.p();
    let m = prm.m() as f64;
    if k == 1 {
        // exact seeds, not their rounded reconstruction
        return Ok((m + 1.0, prm.kbar() + 1.0));
    }
    let scale = p.powi(k as i32 - 1);
    let shift = 0.5 * prm.mu() - 2.0 / (p - 1.0);
    Ok((scale * cfg.growth_a() + shift, scale * cfg.growth_b() - m))
}

/// Constants that turn the recursion into the closed lower bound
/// `log C_{k+1} >= p^k (log C_0 - S_{p,K})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationConstants {
    /// `K` with `C_{k+1} >= K C_k^p / p^{2k}` for every `k >= 1`.
    pub k_const: f64,
    pub log_k: f64,
    /// `Σ_{j>=1} (j log p² - log K) / p^j`
    pub s_limit: f64,
    /// Supremum of the partial sums; equals `s_limit` whenever `K <= p²`.
    pub s_bound: f64,
    /// Index where the minimum defining `K` is attained, `None` for the tail limit.
    pub k_star: Option<u32>,
    pub log_c0: f64,
}

fn log_minimand(k: u32, a_k: f64, p: f64) -> f64 {
    2.0 * k as f64 * p.ln() - (p + 1.0) * LN_2 - 2.0 * (p * a_k + 2.0).ln()
}

/// Build `K` as the infimum over `k` of `p^{2k} / (2^{p+1} (p a_k + 2)²)`.
///
/// The minimand tends to `1 / (2^{p+1} A²)` with `A = m + 1 - μ/2 + 2/(p-1)`
/// and is monotone in `k` (direction set by the sign of `p(μ/2 - 2/(p-1)) + 2`).
/// The first `k_max` terms are evaluated directly; the tail limit joins the
/// minimum once the terms have visibly settled on it.
pub fn derive_k(cfg: &BoundConfig, k_max: u32) -> Result<IterationConstants> {
    let prm = cfg.params();
    let p = prm.p();
    if k_max < 10 {
        return Err(Error::domain("k_max", format!("need k_max >= 10, got {k_max}")));
    }
    let growth = cfg.growth_a();
    if growth <= 0.0 {
        return Err(Error::domain(
            "iteration growth",
            format!("m + 1 - mu/2 + 2/(p-1) = {growth} <= 0; a_k does not grow"),
        ));
    }
    let tail = -(p + 1.0) * LN_2 - 2.0 * growth.ln();

    let mut best = f64::INFINITY;
    let mut k_star = None;
    let mut history = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let (a, _) = closed_form(k, cfg)?;
        let v = log_minimand(k, a, p);
        if v < best {
            best = v;
            k_star = Some(k);
        }
        history.push(v);
    }
    let last = &history[history.len() - 4..];
    // once on the limit, successive values differ only by rounding of the
    // cancelling terms 2k log p and 2 log(p a_k + 2)
    let noise = 64.0 * f64::EPSILON * (2.0 * k_max as f64 * p.ln() + tail.abs()).max(1.0);
    let increasing = last.windows(2).all(|w| w[1] >= w[0] - noise);
    let decreasing = last.windows(2).all(|w| w[1] <= w[0] + noise);
    let settled = (last[3] - tail).abs() <= 1e-8 * tail.abs().max(1.0);
    if !(settled && (increasing || decreasing)) {
        return Err(Error::NotConverged(format!(
            "K minimand not settled on its tail limit by k_max = {k_max} \
             (last {:e}, limit {:e}); increase k_max",
            last[3], tail
        )));
    }
    if tail < best {
        best = tail;
        k_star = None;
    }
    let log_k = best;
    let (s_limit, s_bound) = series(p, log_k)?;
    Ok(IterationConstants {
        k_const: log_k.exp(),
        log_k,
        s_limit,
        s_bound,
        k_star,
        log_c0: seed_constant(cfg),
    })
}

/// [`derive_k`] with `k_max` large enough for the minimand to settle.
pub fn derive_k_auto(cfg: &BoundConfig) -> Result<IterationConstants> {
    let prm = cfg.params();
    let p = prm.p();
    let growth = cfg.growth_a();
    let offset = (p * (0.5 * prm.mu() - 2.0 / (p - 1.0)) + 2.0).abs();
    // relative deviation from the tail is about 2·offset/(A p^k)
    let need = ((1e10 * (offset / growth.abs().max(1e-300)).max(1.0)).ln() / p.ln()).ceil();
    let k_max = if need.is_finite() { (need as u64).clamp(30, 5_000_000) as u32 } else { 5_000_000 };
    derive_k(cfg, k_max)
}

/// Sum `d_j = (j log p² - log K) / p^j` to convergence; also the supremum of
/// the partial sums.
fn series(p: f64, log_k: f64) -> Result<(f64, f64)> {
    let x = 1.0 / p;
    let lp2 = 2.0 * p.ln();
    let mut sum = 0.0;
    let mut sup = f64::NEG_INFINITY;
    let mut comp = 0.0;
    let mut xj = 1.0;
    let mut j: u64 = 0;
    loop {
        j += 1;
        xj *= x;
        let d = (j as f64 * lp2 - log_k) * xj;
        // Kahan summation
        let y = d - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        sup = sup.max(sum);
        let ratio = x * (j as f64 + 1.0) / j as f64;
        if ratio < 1.0 {
            // remaining terms are dominated by a geometric series with this ratio
            let tail = d.abs() * ratio / (1.0 - ratio);
            if tail < 1e-16 * sum.abs().max(1.0) {
                break;
            }
        }
        if j > 200_000_000 {
            return Err(Error::NotConverged(format!("S_(p,K) series at p = {p}")));
        }
    }
    Ok((sum, sup.max(sum)))
}
