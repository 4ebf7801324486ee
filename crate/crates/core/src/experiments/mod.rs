//! ε-sweeps, power-law fits, bound comparisons and convergence studies.

mod bound_check;
mod convergence;
mod fit;
mod oracle;
mod sweep;

pub use bound_check::{check_upper_bound, BoundCheck, BoundComparison, ComparisonStatus};
pub use convergence::{convergence_study, convergence_study_exact, ConvergenceReport, LevelResult};
pub use fit::{fit_power_law, PowerFit};
pub use oracle::{free_wave_3d, free_wave_3d_bump, smooth_bump};
pub use sweep::{geometric_grid, sweep, SweepPoint, SweepResult, SweepSpec, SLOPE_TOLERANCE};

use crate::error::{Error, Result};

/// Run `f` on a rayon pool with `jobs` workers, or the available parallelism.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == Some(0) {
        return Err(Error::field("jobs", "must be >= 1"));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
