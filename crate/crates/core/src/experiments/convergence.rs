use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::{run, Form, GridSpec, Problem, Solver};

const ORDER_RANGE: (f64, f64) = (1.5, 2.5);
const T_NUM_AGREEMENT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelResult {
    pub dr: f64,
    pub dt: f64,
    pub t_num: Option<f64>,
    /// Max error against the exact solution, when one was supplied.
    pub exact_error: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub form: Form,
    /// Time at which profiles are compared; a multiple of the coarsest step.
    pub compare_time: f64,
    pub levels: Vec<LevelResult>,
    /// Max differences of successive profiles on the coarsest nodes.
    pub profile_differences: Vec<f64>,
    /// Observed orders from consecutive errors (exact) or differences (Richardson).
    pub profile_orders: Vec<f64>,
    pub t_num_order: Option<f64>,
    /// `|T_{L-1} - T_L| / T_L` for the two finest levels.
    pub t_num_agreement: Option<f64>,
    pub pass: bool,
}

type Exact<'a> = &'a (dyn Fn(f64, f64) -> f64 + Sync);

/// Halve `(Δr, Δt)` per level and report observed orders via Richardson ratios.
pub fn convergence_study(
    form: Form,
    problem: &Problem,
    grid: &GridSpec,
    levels: u32,
    compare_time: f64,
) -> Result<ConvergenceReport> {
    study(form, problem, grid, levels, compare_time, None)
}

/// As [`convergence_study`], with orders measured against an exact solution `u(t, r)`.
pub fn convergence_study_exact(
    form: Form,
    problem: &Problem,
    grid: &GridSpec,
    levels: u32,
    compare_time: f64,
    exact: Exact<'_>,
) -> Result<ConvergenceReport> {
    study(form, problem, grid, levels, compare_time, Some(exact))
}

fn study(
    form: Form,
    problem: &Problem,
    grid: &GridSpec,
    levels: u32,
    compare_time: f64,
    exact: Option<Exact<'_>>,
) -> Result<ConvergenceReport> {
    if levels < 3 {
        return Err(Error::field("levels", format!("need at least 3, got {levels}")));
    }
    if !(compare_time > 0.0 && compare_time <= grid.t_max) {
        return Err(Error::field("compare_time", format!("must lie in (0, t_max], got {compare_time}")));
    }
    grid.validate(problem.params().n())?;
    let coarse_steps = (compare_time / grid.dt()).round().max(1.0) as usize;
    let compare_time = coarse_steps as f64 * grid.dt();
    let obs = grid.obs_index();

    let runs = (0..levels)
        .into_par_iter()
        .map(|l| {
            let g = grid.refined(l);
            let factor = 1usize << l;
            let mut s = Solver::new(form, problem.clone(), &g)?;
            let mut profile = None;
            while s.step_index() < coarse_steps * factor {
                s.advance();
                match s.max_abs(g.obs_index()) {
                    Some(m) if m < g.u_threshold => {}
                    _ => break,
                }
            }
            if s.step_index() == coarse_steps * factor {
                // restrict to the coarsest nodes
                profile = Some((0..=obs).map(|i| s.values()[i * factor]).collect::<Vec<f64>>());
            }
            let exact_error = match (&profile, exact) {
                (Some(p), Some(f)) => Some(
                    p.iter()
                        .enumerate()
                        .map(|(i, u)| (u - f(s.time(), i as f64 * grid.dr)).abs())
                        .fold(0.0, f64::max),
                ),
                _ => None,
            };
            let t_num = run(form, problem.clone(), &g)?.outcome.blow_up_time();
            Ok((LevelResult { dr: g.dr, dt: g.dt(), t_num, exact_error }, profile))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut profiles = Vec::with_capacity(runs.len());
    let mut level_results = Vec::with_capacity(runs.len());
    for (lr, p) in runs {
        let Some(p) = p else {
            return Err(Error::NotConverged(format!(
                "blow-up before the comparison time {compare_time} at dr = {}; use a smaller comparison time",
                lr.dr
            )));
        };
        level_results.push(lr);
        profiles.push(p);
    }
    let profile_differences: Vec<f64> = profiles
        .windows(2)
        .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .collect();
    let profile_orders: Vec<f64> = match exact {
        Some(_) => {
            let errs: Vec<f64> = level_results.iter().filter_map(|l| l.exact_error).collect();
            errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
        }
        None => profile_differences.windows(2).map(|w| (w[0] / w[1]).log2()).collect(),
    };

    let times: Option<Vec<f64>> = level_results.iter().map(|l| l.t_num).collect();
    let (t_num_order, t_num_agreement) = match &times {
        Some(t) => {
            let k = t.len();
            let order = (t[k - 3] - t[k - 2]).abs() / (t[k - 2] - t[k - 1]).abs();
            (Some(order.log2()), Some(((t[k - 2] - t[k - 1]) / t[k - 1]).abs()))
        }
        None => (None, None),
    };
    let orders_ok = profile_orders.iter().all(|o| (ORDER_RANGE.0..=ORDER_RANGE.1).contains(o));
    let t_ok = t_num_agreement.is_none_or(|a| a < T_NUM_AGREEMENT);
    Ok(ConvergenceReport {
        form,
        compare_time,
        levels: level_results,
        profile_differences,
        profile_orders,
        t_num_order,
        t_num_agreement,
        pass: orders_ok && t_ok,
    })
}
