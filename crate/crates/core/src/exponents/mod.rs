//! Critical exponents, the blow-up region classifier and the region atlas.
//!
//! Two families of critical powers compete for the damped problem:
//!
//! - the Fujita type exponent `p_F(h) = 1 + 2/h`, here evaluated at the shift
//!   `h = k̄ + μ/2` that mixes damping and data decay;
//! - the Strauss exponent `p_S(d)`, positive root of `(d-1)p² - (d+1)p - 2 = 0`,
//!   evaluated at the shifted dimension `d = n + μ`.
//!
//! The classifier decides for a point `(k̄, p)` whether the finite-lifespan
//! theorem applies, whether a known small-data global existence result covers
//! it, or neither.

mod atlas;
mod cases;
mod classify;
mod params;
pub mod surd;
mod svg;

pub use atlas::{atlas, Atlas, AtlasNode, AxisRange, BoundaryPoint, DEFAULT_CURVE_SAMPLES};
pub use cases::{admissible_range, AdmissibleRange, LiteratureCase};
pub use classify::{classify, Constraint, RegionVerdict, VerdictKind};
pub use params::ModelParams;
pub use svg::render_svg;

use crate::error::{Error, Result};

/// Fujita type exponent `1 + 2/h`.
pub fn fujita(h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::domain("fujita shift h", format!("need h > 0, got {h}")));
    }
    Ok(1.0 + 2.0 / h)
}

/// Strauss exponent: the positive root of `(d-1)p² - (d+1)p - 2 = 0`.
pub fn strauss(d: f64) -> Result<f64> {
    if !(d.is_finite() && d > 1.0) {
        return Err(Error::domain("strauss dimension d", format!("need d > 1, got {d}")));
    }
    let b = d + 1.0;
    let disc = b * b + 8.0 * (d - 1.0);
    // b + sqrt(disc) has no cancellation; the root is the larger one.
    Ok((b + disc.sqrt()) / (2.0 * (d - 1.0)))
}

/// Residual of the Strauss quadratic at `p`.
pub fn strauss_residual(d: f64, p: f64) -> f64 {
    (d - 1.0) * p * p - (d + 1.0) * p - 2.0
}

/// Decay level `k̄₀` at which the modified Fujita curve crosses the Strauss line:
/// `p_F(k̄₀ + μ/2) = p_S(n + μ)`.
pub fn kbar_zero(n: u32, mu: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("dimension n", format!("need n >= 2, got {n}")));
    }
    let ps = strauss(n as f64 + mu)?;
    Ok(2.0 / (ps - 1.0) - 0.5 * mu)
}

/// Upper end `M(n)` of the damping range covered by the global existence literature.
pub fn mu_max(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("dimension n", format!("need n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(0.5 * (nf - 1.0) * (1.0 + ((nf + 7.0) / (nf - 1.0)).sqrt()))
}

/// Upper cap `min{p_F(μ), p_F((n+μ-1)/2)}` of the global existence range.
pub fn p_bar(n: u32, mu: f64) -> Result<f64> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::domain("damping mu", format!("need mu > 0, got {mu}")));
    }
    let a = fujita(mu)?;
    let b = fujita(0.5 * (n as f64 + mu - 1.0))?;
    Ok(a.min(b))
}

/// One of the three hypotheses of the finite-lifespan theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Hypothesis {
    /// `k̄ + μ/2 > 0`
    PositiveShift,
    /// `(μ/2)(μ/2 - 1) >= ν`
    MassBound,
    /// `1 < p < p_F(k̄ + μ/2)`
    BelowFujita,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Hypothesis::PositiveShift => "kbar + mu/2 > 0",
            Hypothesis::MassBound => "(mu/2)(mu/2 - 1) >= nu",
            Hypothesis::BelowFujita => "1 < p < p_F(kbar + mu/2)",
        })
    }
}

/// Hypotheses of the finite-lifespan theorem that fail for `params`, in a fixed order.
pub fn failed_hypotheses(params: &ModelParams) -> Vec<Hypothesis> {
    let mut failed = Vec::new();
    let shift = params.fujita_shift();
    if shift <= 0.0 {
        failed.push(Hypothesis::PositiveShift);
    }
    if params.critical_mass() < params.nu() {
        failed.push(Hypothesis::MassBound);
    }
    match fujita(shift) {
        Ok(pf) if params.p() < pf => {}
        _ => failed.push(Hypothesis::BelowFujita),
    }
    failed
}

/// Lifespan exponent `α = 2(p-1) / (4 - (μ + 2k̄)(p-1))`, so that `T(ε) <= C ε^-α`.
pub fn lifespan_exponent(params: &ModelParams) -> Result<f64> {
    let failed = failed_hypotheses(params);
    if let Some(h) = failed.first() {
        return Err(Error::Hypothesis(h.to_string()));
    }
    let pm1 = params.p() - 1.0;
    // the denominator cancels near the Fujita curve; one rounding via fma
    Ok(2.0 * pm1 / (-(params.mu() + 2.0 * params.kbar())).mul_add(pm1, 4.0))
}

/// The same exponent written as `1 / (2/(p-1) - μ/2 - k̄)`.
///
/// No hypothesis check; callers compare it against [`lifespan_exponent`].
pub fn lifespan_exponent_reciprocal_form(p: f64, mu: f64, kbar: f64) -> f64 {
    let pm1 = p - 1.0;
    // 2/(p-1) - h = (2 - h (p-1)) / (p-1)
    let gamma = (-(kbar + 0.5 * mu)).mul_add(pm1, 2.0) / pm1;
    1.0 / gamma
}
