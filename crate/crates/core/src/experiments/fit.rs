use serde::Serialize;

use crate::error::{Error, Result};

/// `log y = slope log x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl PowerFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Unweighted least squares on `(ln x, ln y)`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerFit> {
    if xs.len() != ys.len() {
        return Err(Error::field("fit", "x and y lengths differ"));
    }
    if xs.len() < 2 {
        return Err(Error::field("fit", "need at least two points"));
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::field("fit", "values must be finite and positive"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::field("fit", "x values are all equal"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(PowerFit { slope, intercept, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_laws() {
        let xs = [0.5, 1.0, 2.0, 3.0, 7.5];
        for a in [0.5, 1.0, 2.0] {
            let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-a)).collect();
            let fit = fit_power_law(&xs, &ys).unwrap();
            assert!((fit.slope + a).abs() < 1e-12);
            assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
            assert_eq!(fit.r_squared, 1.0);
        }
    }

    #[test]
    fn doubling_x_scales_prediction() {
        let xs = [1.0, 2.0, 3.0, 5.0];
        let ys = [4.0, 2.2, 1.3, 0.9];
        let fit = fit_power_law(&xs, &ys).unwrap();
        for x in xs {
            assert!((fit.predict(2.0 * x) / fit.predict(x) - 2f64.powf(fit.slope)).abs() < 1e-12);
        }
        assert!(fit.r_squared > 0.0 && fit.r_squared < 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_power_law(&[1.0], &[1.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0], &[1.0, -1.0]).is_err());
        assert!(fit_power_law(&[2.0, 2.0], &[1.0, 3.0]).is_err());
    }
}
