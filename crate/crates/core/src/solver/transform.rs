use serde::Serialize;

use super::{Form, GridSpec, Problem, Solver};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct TransformReport {
    /// `max |u - (1+t)^{μ/2} v| / max |u|` over the sampled levels and `[0, r_obs]`.
    pub max_relative_discrepancy: f64,
    /// `(t, discrepancy at t)`
    pub samples: Vec<(f64, f64)>,
    /// Last compared time.
    pub t_end: f64,
}

/// Integrate `UForm` and `VForm` on the same grid up to `t_max` and compare
/// `u` with `(1+t)^{μ/2} v`, sampling every `stride` steps.
pub fn transform_check(problem: Problem, grid: &GridSpec, stride: usize) -> Result<TransformReport> {
    if stride == 0 {
        return Err(Error::field("stride", "must be >= 1"));
    }
    let half_mu = 0.5 * problem.params().mu();
    let mut u = Solver::new(Form::UForm, problem.clone(), grid)?;
    let mut v = Solver::new(Form::VForm, problem, grid)?;
    let obs = grid.obs_index();
    let steps = grid.steps();
    let start = u.previous().iter().zip(v.previous()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let mut samples = vec![(0.0, start)];
    let mut worst_abs = start;
    let mut u_scale = 0.0f64;
    let mut t_end = 0.0;
    loop {
        let j = u.step_index();
        if j % stride == 0 {
            let (Some(mu_max), Some(_)) = (u.max_abs(obs), v.max_abs(obs)) else { break };
            if mu_max >= grid.u_threshold {
                break;
            }
            let t = u.time();
            let w = (1.0 + t).powf(half_mu);
            let d = u.values()[..=obs]
                .iter()
                .zip(&v.values()[..=obs])
                .map(|(a, b)| (a - w * b).abs())
                .fold(0.0, f64::max);
            u_scale = u_scale.max(mu_max);
            worst_abs = worst_abs.max(d);
            samples.push((t, d));
            t_end = t;
        }
        if j >= steps {
            break;
        }
        u.advance();
        v.advance();
    }
    let scale = if u_scale > 0.0 { u_scale } else { 1.0 };
    Ok(TransformReport {
        max_relative_discrepancy: worst_abs / scale,
        samples: samples.into_iter().map(|(t, d)| (t, d / scale)).collect(),
        t_end,
    })
}
