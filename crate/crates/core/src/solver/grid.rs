use serde::{Deserialize, Serialize};

use super::Stencil;
use crate::error::{Error, Result};

pub const DEFAULT_THRESHOLD: f64 = 1e8;
/// Default Courant number as a fraction of the stability limit.
pub const DEFAULT_CFL_FRACTION: f64 = 0.9;

/// Radial grid on `[0, r_max]` and the time horizon.
///
/// The observed region is `[0, r_obs]`. With `r_max >= r_obs + t_max` its
/// domain of dependence never reaches the outer boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dr: f64,
    /// Courant number `dt/dr`.
    pub cfl: f64,
    pub r_obs: f64,
    pub r_max: f64,
    pub t_max: f64,
    pub u_threshold: f64,
    /// `None` picks [`Stencil::for_dimension`].
    pub stencil: Option<Stencil>,
}

impl GridSpec {
    /// Grid whose outer radius also covers the numerical domain of dependence
    /// (one cell per step), so values in `[0, r_obs]` are exactly those of an
    /// unbounded grid.
    pub fn covering(dr: f64, cfl: f64, r_obs: f64, t_max: f64) -> Self {
        let r_max = r_obs + t_max / cfl + 4.0 * dr;
        Self { dr, cfl, r_obs, r_max, t_max, u_threshold: DEFAULT_THRESHOLD, stencil: None }
    }

    /// [`GridSpec::covering`] with the default Courant number for dimension `n`.
    pub fn covering_default(n: u32, dr: f64, r_obs: f64, t_max: f64) -> Result<Self> {
        Ok(Self::covering(dr, default_cfl(n)?, r_obs, t_max))
    }

    pub fn with_threshold(self, u_threshold: f64) -> Self {
        Self { u_threshold, ..self }
    }

    pub fn with_stencil(self, stencil: Stencil) -> Self {
        Self { stencil: Some(stencil), ..self }
    }

    /// Same grid with `dr` and `dt` halved `levels` times.
    pub fn refined(self, levels: u32) -> Self {
        let f = 0.5f64.powi(levels as i32);
        let mut g = Self { dr: self.dr * f, ..self };
        if g.r_max < g.r_obs + g.t_max / g.cfl + 4.0 * g.dr {
            g.r_max = g.r_obs + g.t_max / g.cfl + 4.0 * g.dr;
        }
        g
    }

    pub fn dt(&self) -> f64 {
        self.cfl * self.dr
    }

    pub fn stencil_for(&self, n: u32) -> Stencil {
        self.stencil.unwrap_or_else(|| Stencil::for_dimension(n))
    }

    /// Number of cells; nodes are `0..=cells`.
    pub fn cells(&self) -> usize {
        (self.r_max / self.dr).ceil() as usize
    }

    pub fn obs_index(&self) -> usize {
        ((self.r_obs / self.dr).floor() as usize).min(self.cells())
    }

    /// Number of steps to reach `t_max`.
    pub fn steps(&self) -> usize {
        (self.t_max / self.dt() - 1e-9).ceil().max(0.0) as usize
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        if !(self.dr.is_finite() && self.dr > 0.0) {
            return Err(Error::field("dr", format!("must be > 0, got {}", self.dr)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::field("t_max", format!("must be > 0, got {}", self.t_max)));
        }
        if !(self.r_obs.is_finite() && self.r_obs >= 0.0) {
            return Err(Error::field("r_obs", format!("must be >= 0, got {}", self.r_obs)));
        }
        if !(self.u_threshold.is_finite() && self.u_threshold > 0.0) {
            return Err(Error::field("u_threshold", format!("must be > 0, got {}", self.u_threshold)));
        }
        if !(self.cfl.is_finite() && self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::field("cfl", format!("must lie in (0, 1], got {}", self.cfl)));
        }
        let limit = self.stencil_for(n).stability_limit(n)?;
        if self.cfl > limit {
            return Err(Error::field(
                "cfl",
                format!(
                    "{} exceeds the stability limit {limit:.6} of the {} stencil in dimension {n}",
                    self.cfl,
                    self.stencil_for(n).as_str()
                ),
            ));
        }
        if !(self.r_max >= self.r_obs + self.t_max) {
            return Err(Error::field(
                "r_max",
                format!(
                    "domain of dependence: need r_max >= r_obs + t_max = {}, got {}",
                    self.r_obs + self.t_max,
                    self.r_max
                ),
            ));
        }
        if self.cells() < 2 {
            return Err(Error::field("dr", "grid needs at least two cells"));
        }
        Ok(())
    }
}

/// `DEFAULT_CFL_FRACTION` of the stability limit of the default stencil.
pub fn default_cfl(n: u32) -> Result<f64> {
    Ok(DEFAULT_CFL_FRACTION * Stencil::for_dimension(n).stability_limit(n)?)
}
