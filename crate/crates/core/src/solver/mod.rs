//! Explicit leapfrog solver for radial solutions.
//!
//! Two equivalent formulations are integrated:
//!
//! - `UForm`: `u_tt - u_rr - (n-1)/r u_r = (1+t)^{-μ(p-1)/2} |u|^p + ((μ/2)(μ/2-1) - ν) u/(1+t)²`
//! - `VForm`: `v_tt - v_rr - (n-1)/r v_r + μ/(1+t) v_t + ν/(1+t)² v = |v|^p`
//!
//! related by `u = (1+t)^{μ/2} v`. Both start from `(0, ε g)`.

mod grid;
mod run;
mod stencil;
mod transform;

pub use grid::{default_cfl, GridSpec, DEFAULT_CFL_FRACTION, DEFAULT_THRESHOLD};
pub use run::{run, run_with, Outcome, RunOptions, Snapshot, Solver, SolverRun};
pub use stencil::Stencil;
pub use transform::{transform_check, TransformReport};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exponents::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    UForm,
    VForm,
}

impl Form {
    pub fn as_str(&self) -> &'static str {
        match self {
            Form::UForm => "u",
            Form::VForm => "v",
        }
    }
}

impl std::str::FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "u" | "UForm" => Ok(Form::UForm),
            "v" | "VForm" => Ok(Form::VForm),
            other => Err(format!("unknown form {other:?}, expected u or v")),
        }
    }
}

/// `g(r) = M (1+r)^{-(k̄+1)}`.
pub fn initial_data(r: f64, params: &ModelParams) -> f64 {
    params.amplitude() * (1.0 + r).powf(-(params.kbar() + 1.0))
}

/// `|u|^p`, zero at `u = 0`.
#[inline]
pub fn abs_pow(u: f64, p: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        (p * u.abs().ln()).exp()
    }
}

/// Source term. For `UForm` the full `F(t, u)`; for `VForm` only `|v|^p`,
/// the damping and mass terms live in the time stencil.
pub fn rhs(form: Form, t: f64, u: f64, params: &ModelParams) -> f64 {
    let p = params.p();
    match form {
        Form::UForm => {
            let decay = (-0.5 * params.mu() * (p - 1.0) * (1.0 + t).ln()).exp();
            let pot = params.potential_coefficient();
            decay * abs_pow(u, p) + if pot == 0.0 { 0.0 } else { pot * u / ((1.0 + t) * (1.0 + t)) }
        }
        Form::VForm => abs_pow(u, p),
    }
}

type Datum = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Everything the solver integrates: parameters, datum and source.
#[derive(Clone)]
pub struct Problem {
    params: ModelParams,
    datum: Option<Datum>,
    free: bool,
    data_scale: f64,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("params", &self.params)
            .field("custom_datum", &self.datum.is_some())
            .field("free", &self.free)
            .field("data_scale", &self.data_scale)
            .finish()
    }
}

impl Problem {
    pub fn new(params: ModelParams) -> Self {
        Self { params, datum: None, free: false, data_scale: params.eps() }
    }

    /// Replace `g` by an arbitrary radial profile.
    pub fn with_datum(mut self, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.datum = Some(Arc::new(g));
        self
    }

    /// Drop the source: the free wave `u_tt = Δu` (`UForm`) or the linear damped wave (`VForm`).
    pub fn free(mut self) -> Self {
        self.free = true;
        self
    }

    /// Multiplier of `g` in `u_t(0)`; defaults to `ε`. Zero is allowed here.
    pub fn with_data_scale(mut self, scale: f64) -> Self {
        self.data_scale = scale;
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn data_scale(&self) -> f64 {
        self.data_scale
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    pub fn datum(&self, r: f64) -> f64 {
        match &self.datum {
            Some(g) => g(r),
            None => initial_data(r, &self.params),
        }
    }
}
