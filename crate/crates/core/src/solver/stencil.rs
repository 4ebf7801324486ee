//! Discretisations of the radial Laplacian `u_rr + (n-1)/r u_r`.
//!
//! Both stencils use the limit operator `n u_rr` at the origin, with the even
//! reflection `u_{-1} = u_1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stencil {
    /// Central differences for `u_rr` and `u_r` separately.
    Central,
    /// Conservative form `r^{1-n} (r^{n-1} u_r)_r` with half-point fluxes.
    Flux,
}

impl Stencil {
    /// Central for `n <= 5`; beyond that its spectrum leaves the real axis near
    /// the origin and leapfrog is unstable for every step size.
    pub fn for_dimension(n: u32) -> Self {
        if n <= 5 {
            Stencil::Central
        } else {
            Stencil::Flux
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Stencil::Central => "central",
            Stencil::Flux => "flux",
        }
    }

    /// `(lower, centre, upper)` coefficients at node `i`, in units of `1/dr²`.
    pub fn coefficients(&self, n: u32, i: usize) -> (f64, f64, f64) {
        let nf = n as f64;
        if i == 0 {
            return (0.0, -2.0 * nf, 2.0 * nf);
        }
        let fi = i as f64;
        match self {
            Stencil::Central => {
                let w = (nf - 1.0) / (2.0 * fi);
                (1.0 - w, -2.0, 1.0 + w)
            }
            Stencil::Flux => {
                let lo = ((fi - 0.5) / fi).powi(n as i32 - 1);
                let hi = ((fi + 0.5) / fi).powi(n as i32 - 1);
                (lo, -(lo + hi), hi)
            }
        }
    }

    /// Largest Courant number `dt/dr` for which leapfrog on the free radial wave
    /// equation is stable.
    ///
    /// The spectral radius of the discrete operator is set by modes localised at
    /// the origin, so a truncated operator gives it independently of the grid size.
    pub fn stability_limit(&self, n: u32) -> Result<f64> {
        if *self == Stencil::Central && n > 5 {
            return Err(Error::Config(format!(
                "central stencil is unstable in dimension {n} (complex spectrum); use the flux stencil"
            )));
        }
        Ok(2.0 / self.spectral_radius(n).sqrt())
    }

    fn spectral_radius(&self, n: u32) -> f64 {
        const SIZE: usize = 256;
        const ITERS: usize = 4000;
        let coeffs: Vec<_> = (0..SIZE).map(|i| self.coefficients(n, i)).collect();
        let apply = |x: &[f64], y: &mut [f64]| {
            for i in 0..SIZE {
                let (lo, c, hi) = coeffs[i];
                let left = if i > 0 { x[i - 1] } else { 0.0 };
                let right = if i + 1 < SIZE { x[i + 1] } else { 0.0 };
                y[i] = lo * left + c * x[i] + hi * right;
            }
        };
        // alternating start so the dominant (most negative) mode is present
        let mut x: Vec<f64> = (0..SIZE).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } / (1.0 + i as f64)).collect();
        let mut y = vec![0.0; SIZE];
        let mut estimate = 0.0;
        for _ in 0..ITERS {
            apply(&x, &mut y);
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            let xnorm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            estimate = norm / xnorm;
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi = yi / norm;
            }
        }
        estimate
    }
}
