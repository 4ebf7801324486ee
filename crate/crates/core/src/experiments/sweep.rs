use rayon::prelude::*;
use serde::Serialize;

use super::fit::fit_power_law;
use crate::error::{Error, Result};
use crate::exponents::{lifespan_exponent, ModelParams};
use crate::solver::{run, Form, GridSpec, Problem};

/// Allowed relative deviation of the fitted slope from `-α`.
pub const SLOPE_TOLERANCE: f64 = 0.25;
pub const MIN_R_SQUARED: f64 = 0.95;
/// Allowed relative change of `T_num` under refinement.
pub const REFINEMENT_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct SweepSpec {
    /// `eps` is ignored.
    pub params_base: ModelParams,
    pub eps_values: Vec<f64>,
    pub grid: GridSpec,
    pub refinement_levels: u32,
    pub form: Form,
}

impl SweepSpec {
    pub fn new(params_base: ModelParams, eps_values: Vec<f64>, grid: GridSpec, refinement_levels: u32) -> Result<Self> {
        let spec = Self { params_base, eps_values, grid, refinement_levels, form: Form::UForm };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_form(self, form: Form) -> Self {
        Self { form, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.eps_values.len() < 4 {
            return Err(Error::field("eps_values", format!("need at least 4 values, got {}", self.eps_values.len())));
        }
        if self.eps_values.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::field("eps_values", "all values must be finite and > 0"));
        }
        if self.eps_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::field("eps_values", "must be strictly increasing"));
        }
        if self.refinement_levels < 1 {
            return Err(Error::field("refinement_levels", "must be >= 1"));
        }
        self.grid.validate(self.params_base.n())
    }
}

/// `count` values from `lo` to `hi` with constant ratio.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::field("eps range", format!("need 0 < lo < hi, got [{lo}, {hi}]")));
    }
    if count < 2 {
        return Err(Error::field("eps count", "need at least 2 values"));
    }
    let ratio = (hi / lo).ln() / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo * (ratio * i as f64).exp() })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub eps: f64,
    /// `None` when the run survived `t_max`.
    pub t_num: Option<f64>,
    /// `|T - T_refined| / T_refined` against the finest refinement level.
    pub refinement_agreement: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub alpha_theory: f64,
    /// ε values that survived `t_max` on some level.
    pub survived: Vec<f64>,
    pub pass: bool,
}

impl SweepResult {
    pub fn slope_ok(&self) -> bool {
        (self.slope + self.alpha_theory).abs() <= SLOPE_TOLERANCE * self.alpha_theory
    }

    pub fn refinement_ok(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.refinement_agreement.is_some_and(|a| a < REFINEMENT_TOLERANCE))
    }

    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "eps,T_num,refinement_agreement")?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for p in &self.points {
            writeln!(out, "{},{},{}", p.eps, opt(p.t_num), opt(p.refinement_agreement))?;
        }
        Ok(())
    }

    /// `{slope, intercept, r_squared, alpha_theory, pass}` plus the survivors.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "alpha_theory": self.alpha_theory,
            "pass": self.pass,
            "survived": self.survived,
        })
    }
}

/// Blow-up times for every ε on the base grid and on `grid.refined(refinement_levels)`.
///
/// Runs are independent; they are spread over the current rayon pool and
/// reassembled in ε order. Survivors are reported in the result, and the fit
/// uses the remaining points. With fewer than two blown-up points the sweep
/// fails with a message asking for a larger `t_max` or ε.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let alpha_theory = lifespan_exponent(&spec.params_base)?;
    let fine = spec.grid.refined(spec.refinement_levels);
    let jobs: Vec<(f64, GridSpec)> = spec.eps_values.iter().flat_map(|&e| [(e, spec.grid), (e, fine)]).collect();
    let times: Vec<Option<f64>> = jobs
        .par_iter()
        .map(|&(eps, grid)| {
            let params = spec.params_base.with_eps(eps)?;
            Ok(run(spec.form, Problem::new(params), &grid)?.outcome.blow_up_time())
        })
        .collect::<Result<_>>()?;

    let mut points = Vec::with_capacity(spec.eps_values.len());
    let mut survived = Vec::new();
    for (i, &eps) in spec.eps_values.iter().enumerate() {
        let (coarse, refined) = (times[2 * i], times[2 * i + 1]);
        let refinement_agreement = match (coarse, refined) {
            (Some(c), Some(f)) => Some(((c - f) / f).abs()),
            _ => None,
        };
        if coarse.is_none() || refined.is_none() {
            survived.push(eps);
        }
        points.push(SweepPoint { eps, t_num: coarse, refinement_agreement });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().filter_map(|p| Some((p.eps, p.t_num?))).unzip();
    if xs.len() < 2 {
        return Err(Error::NotConverged(format!(
            "eps values {survived:?} survived t_max = {}; increase t_max or eps",
            spec.grid.t_max
        )));
    }
    let fit = fit_power_law(&xs, &ys)?;
    let mut result = SweepResult {
        points,
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        alpha_theory,
        survived,
        pass: false,
    };
    result.pass = result.survived.is_empty()
        && result.slope_ok()
        && result.r_squared >= MIN_R_SQUARED
        && result.refinement_ok();
    Ok(result)
}
