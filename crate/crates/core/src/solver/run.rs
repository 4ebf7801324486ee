use serde::Serialize;

use super::{Form, GridSpec, Problem};
use crate::error::Result;
use crate::exponents::ModelParams;

/// Leapfrog integrator holding two time levels.
#[derive(Clone)]
pub struct Solver {
    form: Form,
    problem: Problem,
    dr: f64,
    dt: f64,
    radii: Vec<f64>,
    lower: Vec<f64>,
    centre: Vec<f64>,
    upper: Vec<f64>,
    prev: Vec<f64>,
    cur: Vec<f64>,
    next: Vec<f64>,
    step: usize,
}

impl Solver {
    /// Set up levels `t = 0` and `t = dt`.
    pub fn new(form: Form, problem: Problem, grid: &GridSpec) -> Result<Self> {
        let n = problem.params().n();
        grid.validate(n)?;
        let stencil = grid.stencil_for(n);
        let cells = grid.cells();
        let dr = grid.dr;
        let dt = grid.dt();
        let inv = 1.0 / (dr * dr);
        let mut lower = Vec::with_capacity(cells + 1);
        let mut centre = Vec::with_capacity(cells + 1);
        let mut upper = Vec::with_capacity(cells + 1);
        for i in 0..=cells {
            let (lo, c, hi) = stencil.coefficients(n, i);
            lower.push(lo * inv);
            centre.push(c * inv);
            upper.push(hi * inv);
        }
        let radii: Vec<f64> = (0..=cells).map(|i| i as f64 * dr).collect();
        let scale = problem.data_scale();
        // u(dt) = dt ε g + O(dt³) because u_tt(0) = 0; in VForm v_tt(0) = -μ ε g.
        let first = match form {
            Form::UForm => dt,
            Form::VForm => dt - 0.5 * problem.params().mu() * dt * dt,
        };
        let cur: Vec<f64> = radii.iter().map(|&r| scale * first * problem.datum(r)).collect();
        Ok(Self {
            form,
            problem,
            dr,
            dt,
            radii,
            lower,
            centre,
            upper,
            prev: vec![0.0; cells + 1],
            cur,
            next: vec![0.0; cells + 1],
            step: 1,
        })
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.dt
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Values at the current time level.
    pub fn values(&self) -> &[f64] {
        &self.cur
    }

    /// Linear interpolation of the current level at radius `r`.
    pub fn value_at(&self, r: f64) -> Option<f64> {
        if !(0.0..=*self.radii.last()?).contains(&r) {
            return None;
        }
        let i = ((r / self.dr).floor() as usize).min(self.cur.len() - 2);
        let w = r / self.dr - i as f64;
        Some((1.0 - w) * self.cur[i] + w * self.cur[i + 1])
    }

    /// Values one level back.
    pub fn previous(&self) -> &[f64] {
        &self.prev
    }

    /// Advance one step. The outer node keeps its first-step value.
    pub fn advance(&mut self) {
        let t = self.time();
        let dt2 = self.dt * self.dt;
        let last = self.cur.len() - 1;
        let params = *self.problem.params();
        let free = self.problem.is_free();
        let p = params.p();
        match self.form {
            Form::UForm => {
                let decay = (-0.5 * params.mu() * (p - 1.0) * (1.0 + t).ln()).exp();
                let pot = params.potential_coefficient() / ((1.0 + t) * (1.0 + t));
                for i in 0..last {
                    let u = self.cur[i];
                    let left = if i == 0 { 0.0 } else { self.cur[i - 1] };
                    let lap = self.lower[i] * left + self.centre[i] * u + self.upper[i] * self.cur[i + 1];
                    let src = if free { 0.0 } else { decay * super::abs_pow(u, p) + pot * u };
                    self.next[i] = 2.0 * u - self.prev[i] + dt2 * (lap + src);
                }
            }
            Form::VForm => {
                let beta = 0.5 * params.mu() * self.dt / (1.0 + t);
                let mass = params.nu() / ((1.0 + t) * (1.0 + t));
                let denom = 1.0 / (1.0 + beta);
                for i in 0..last {
                    let v = self.cur[i];
                    let left = if i == 0 { 0.0 } else { self.cur[i - 1] };
                    let lap = self.lower[i] * left + self.centre[i] * v + self.upper[i] * self.cur[i + 1];
                    let src = if free { 0.0 } else { super::abs_pow(v, p) };
                    self.next[i] = (2.0 * v - (1.0 - beta) * self.prev[i] + dt2 * (lap - mass * v + src)) * denom;
                }
            }
        }
        self.next[last] = self.cur[last];
        std::mem::swap(&mut self.prev, &mut self.cur);
        std::mem::swap(&mut self.cur, &mut self.next);
        self.step += 1;
    }

    /// `max |u|` over nodes `0..=upto`, or `None` when a value is not finite.
    pub fn max_abs(&self, upto: usize) -> Option<f64> {
        let mut m = 0.0f64;
        for &v in &self.cur[..=upto.min(self.cur.len() - 1)] {
            if !v.is_finite() {
                return None;
            }
            m = m.max(v.abs());
        }
        Some(m)
    }

    /// Discrete energy `Σ r^{n-1} (u_t² + u_r²) dr` at the current level.
    /// `u_t` is a centred difference, so the level after the current one is
    /// passed in (advance a clone to get it).
    pub fn energy_centered(&self, next: &[f64]) -> f64 {
        let n = self.problem.params().n() as i32;
        let last = self.cur.len() - 1;
        let mut e = 0.0;
        for i in 1..last {
            let ut = (next[i] - self.prev[i]) / (2.0 * self.dt);
            let ur = (self.cur[i + 1] - self.cur[i - 1]) / (2.0 * self.dr);
            e += self.radii[i].powi(n - 1) * (ut * ut + ur * ur);
        }
        e * self.dr
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    BlewUp { t_num: f64 },
    Survived { t_max: f64 },
}

impl Outcome {
    pub fn blow_up_time(&self) -> Option<f64> {
        match self {
            Outcome::BlewUp { t_num } => Some(*t_num),
            Outcome::Survived { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Snapshot {
    pub t: f64,
    pub u: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Record the profile over `[0, r_obs]` every this many steps.
    pub snapshot_stride: Option<usize>,
    /// Record `max |u|` over `[0, r_obs]` every this many steps.
    pub history_stride: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverRun {
    pub form: Form,
    pub params: ModelParams,
    pub grid: GridSpec,
    pub outcome: Outcome,
    /// Radii of the snapshot columns.
    #[serde(skip)]
    pub snapshot_radii: Vec<f64>,
    #[serde(skip)]
    pub snapshots: Vec<Snapshot>,
    pub max_amplitude_history: Vec<(f64, f64)>,
}

impl SolverRun {
    /// Snapshot rows `t,r,u`.
    pub fn write_snapshots_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,r,u")?;
        for s in &self.snapshots {
            for (r, u) in self.snapshot_radii.iter().zip(&s.u) {
                writeln!(out, "{},{},{}", s.t, r, u)?;
            }
        }
        Ok(())
    }
}

/// Integrate until `t_max` or until `max |u|` over `[0, r_obs]` reaches the threshold.
pub fn run(form: Form, problem: Problem, grid: &GridSpec) -> Result<SolverRun> {
    run_with(form, problem, grid, RunOptions::default())
}

pub fn run_with(form: Form, problem: Problem, grid: &GridSpec, opts: RunOptions) -> Result<SolverRun> {
    let params = *problem.params();
    let mut solver = Solver::new(form, problem, grid)?;
    let obs = grid.obs_index();
    let steps = grid.steps();
    let threshold = grid.u_threshold;
    let mut snapshots = Vec::new();
    let mut history = Vec::new();
    let record = |solver: &Solver, snapshots: &mut Vec<Snapshot>, history: &mut Vec<(f64, f64)>| {
        let j = solver.step_index();
        if opts.snapshot_stride.is_some_and(|s| j % s == 0) {
            snapshots.push(Snapshot { t: solver.time(), u: solver.values()[..=obs].to_vec() });
        }
        if opts.history_stride.is_some_and(|s| j % s == 0) {
            history.push((solver.time(), solver.max_abs(obs).unwrap_or(f64::INFINITY)));
        }
    };

    let mut last_max = solver.max_abs(obs).unwrap_or(f64::INFINITY);
    let mut outcome = None;
    if last_max >= threshold {
        outcome = Some(Outcome::BlewUp { t_num: solver.time() });
    }
    record(&solver, &mut snapshots, &mut history);
    while outcome.is_none() && solver.step_index() < steps {
        let t_before = solver.time();
        solver.advance();
        let now = solver.max_abs(solver.values().len() - 1).map(|_| solver.max_abs(obs).unwrap_or(0.0));
        match now {
            None => outcome = Some(Outcome::BlewUp { t_num: solver.time() }),
            Some(m) if m >= threshold => {
                // linear interpolation of the crossing between the last two levels
                let frac = ((threshold - last_max) / (m - last_max)).clamp(0.0, 1.0);
                outcome = Some(Outcome::BlewUp { t_num: t_before + frac * solver.dt() });
            }
            Some(m) => last_max = m,
        }
        record(&solver, &mut snapshots, &mut history);
    }
    let outcome = outcome.unwrap_or(Outcome::Survived { t_max: grid.t_max });
    Ok(SolverRun {
        form,
        params,
        grid: *grid,
        outcome,
        snapshot_radii: solver.radii()[..=obs].to_vec(),
        snapshots,
        max_amplitude_history: history,
    })
}
