use crate::quadrature::{integrate, QuadOptions};

/// `(1 - r²)⁴` on `[0, 1)`, zero beyond. Smooth as an even function of `r`.
pub fn smooth_bump(r: f64) -> f64 {
    if r < 1.0 {
        (1.0 - r * r).powi(4)
    } else {
        0.0
    }
}

/// Free 3D wave with `u(0) = 0`, `u_t(0) = g`:
/// `u(t, r) = (1/(2r)) ∫_{|r-t|}^{r+t} λ g(λ) dλ`, and `t g(t)` at the origin.
///
/// `support` is an upper bound for the support of `g`; the integrand is cut there.
pub fn free_wave_3d(g: impl Fn(f64) -> f64, support: f64, t: f64, r: f64) -> f64 {
    if r == 0.0 {
        return t * g(t);
    }
    let lo = (r - t).abs();
    let hi = (r + t).min(support);
    if hi <= lo {
        return 0.0;
    }
    let opts = QuadOptions { rel_tol: 1e-13, abs_tol: 1e-16, max_intervals: 20_000 };
    match integrate(|l| l * g(l), lo, hi, opts) {
        Ok(est) => est.value / (2.0 * r),
        Err(_) => f64::NAN,
    }
}

/// [`free_wave_3d`] for [`smooth_bump`].
pub fn free_wave_3d_bump(t: f64, r: f64) -> f64 {
    free_wave_3d(smooth_bump, 1.0, t, r)
}
