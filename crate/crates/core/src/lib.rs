//! Numerical laboratory for the scale-invariant damped semilinear wave equation
//!
//! ```text
//! v_tt - Δv + μ/(1+t) v_t + ν/(1+t)² v = |v|^p,   v(0,x) = 0,   v_t(0,x) = ε g(|x|)
//! ```
//!
//! with radial data `g(r) = M (1+r)^-(k̄+1)`.
//!
//! - [`exponents`]: Fujita and Strauss exponents, the region classifier and atlas.
//! - [`bound_engine`]: the lower-bound iteration behind the lifespan estimate
//!   `T(ε) <= C ε^-α`, with quadrature checks of each step.
//! - [`solver`]: explicit radial finite differences for the undamped `u`-form and
//!   the damped `v`-form, with blow-up detection.
//! - [`experiments`]: ε-sweeps, power-law fits and convergence studies.
//! - [`cli`]: the `blowuplab` command line front end.

pub mod error;
pub mod bound_engine;
pub mod cli;
pub mod experiments;
pub mod exponents;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
pub use exponents::ModelParams;
