//! Decay windows `[k₁, k₂]` of the known radial global existence results.
//!
//! The table is closed: parameter combinations outside the listed cases are
//! reported as [`Error::UncoveredCase`] instead of being extrapolated.

use serde::Serialize;

use super::{mu_max, p_bar};
use crate::error::{Error, Result};

const MU_TWO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LiteratureCase {
    /// `n = 3`, `μ = 2`
    ThreeDimMuTwo,
    /// odd `n >= 5`, `μ = 2`
    OddMuTwo,
    /// even `n >= 4`, `μ = 2`
    EvenMuTwo,
    /// even `n >= 4`, `μ ∈ (2, M(n)]`
    EvenGeneralMu,
    /// odd `n >= 3`, `μ ∈ (2, M(n)]`
    OddGeneralMu,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibleRange {
    pub k1: f64,
    pub k2: f64,
    pub case: LiteratureCase,
}

impl LiteratureCase {
    /// Upper cap on `p` of the existence zone, with whether the cap itself is included.
    pub fn p_cap(&self, n: u32, mu: f64) -> Option<(f64, bool)> {
        let nf = n as f64;
        match self {
            LiteratureCase::ThreeDimMuTwo => None,
            LiteratureCase::OddMuTwo if n == 5 => Some((2.0, true)),
            LiteratureCase::OddMuTwo => Some(((nf + 1.0) / (nf - 3.0), true)),
            LiteratureCase::EvenMuTwo | LiteratureCase::EvenGeneralMu => {
                p_bar(n, mu).ok().map(|c| (c, false))
            }
            LiteratureCase::OddGeneralMu if n == 3 => None,
            LiteratureCase::OddGeneralMu => p_bar(n, mu).ok().map(|c| (c, false)),
        }
    }

    /// Extra cap on `k̄` listed alongside the `p` cap for odd `n >= 5`, `μ = 2`.
    pub fn kbar_cap(&self, n: u32) -> Option<f64> {
        let nf = n as f64;
        match self {
            LiteratureCase::OddMuTwo if n == 5 => Some(3.0),
            LiteratureCase::OddMuTwo => Some((nf * nf - 2.0 * nf + 13.0) / (2.0 * (nf - 3.0))),
            _ => None,
        }
    }
}

/// Select the literature case for `(n, μ)`.
pub fn literature_case(n: u32, mu: f64) -> Result<LiteratureCase> {
    let odd = n % 2 == 1;
    if (mu - 2.0).abs() <= MU_TWO_TOL {
        return match n {
            3 => Ok(LiteratureCase::ThreeDimMuTwo),
            _ if odd && n >= 5 => Ok(LiteratureCase::OddMuTwo),
            _ if !odd && n >= 4 => Ok(LiteratureCase::EvenMuTwo),
            _ => Err(Error::UncoveredCase(format!("n={n}, mu=2"))),
        };
    }
    let top = mu_max(n)?;
    if !(mu > 2.0 && mu <= top) {
        return Err(Error::UncoveredCase(format!(
            "n={n}, mu={mu}: damping outside [2, M(n)] = [2, {top}]"
        )));
    }
    match n {
        _ if odd && n >= 3 => Ok(LiteratureCase::OddGeneralMu),
        _ if !odd && n >= 4 => Ok(LiteratureCase::EvenGeneralMu),
        _ => Err(Error::UncoveredCase(format!("n={n}, mu={mu}"))),
    }
}

/// Decay window `(k₁, k₂)` for which the literature proves small-data global
/// existence at power `p`.
pub fn admissible_range(n: u32, p: f64, mu: f64) -> Result<AdmissibleRange> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::domain("power p", format!("need p > 1, got {p}")));
    }
    if n < 2 {
        return Err(Error::domain("dimension n", format!("need n >= 2, got {n}")));
    }
    let case = literature_case(n, mu)?;
    let nf = n as f64;
    let pm1 = p - 1.0;
    let half = 0.5 * (nf - 1.0);
    // k₂ of the general-μ results; also the μ=2 even formula.
    let k2_general = (nf - 1.0).min(0.5 * (nf + mu - 1.0) * p - 0.5 * (mu + 2.0));
    let (k1, k2) = match case {
        LiteratureCase::ThreeDimMuTwo => (((3.0 - p) / pm1).max(1.0 / pm1), 2.0 * pm1),
        LiteratureCase::OddMuTwo => (
            ((3.0 - p) / pm1).max(half),
            (0.5 * (nf + 1.0) * p - 2.0).min((nf * nf - 2.0 * nf + 13.0) / (2.0 * (nf - 3.0))),
        ),
        LiteratureCase::EvenMuTwo => (
            ((3.0 - p) / pm1).max(half),
            (0.5 * (nf + 1.0) * p - 2.0).min(nf - 1.0),
        ),
        LiteratureCase::EvenGeneralMu => (half.max(2.0 / pm1 - 0.5 * mu), k2_general),
        LiteratureCase::OddGeneralMu => {
            let k1 = if n == 3 {
                1f64.max(2.0 / pm1 - 0.5 * mu).max(1.0 / pm1)
            } else if mu <= nf - 1.0 {
                half.max(2.0 / pm1 - 0.5 * mu)
            } else {
                half.max(2.0 / pm1 - 0.5 * mu).max(1.0 / pm1)
            };
            (k1, k2_general)
        }
    };
    Ok(AdmissibleRange { k1, k2, case })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_dim_mu_two() {
        let r = admissible_range(3, 2.0, 2.0).unwrap();
        assert_eq!(r.case, LiteratureCase::ThreeDimMuTwo);
        assert_eq!(r.k1, 1.0);
        assert_eq!(r.k2, 2.0);
    }

    #[test]
    fn even_mu_two() {
        let r = admissible_range(4, 2.0, 2.0).unwrap();
        assert_eq!(r.case, LiteratureCase::EvenMuTwo);
        assert_eq!(r.k2, 3.0);
        assert_eq!(r.k1, 1.5);
    }

    #[test]
    fn odd_mu_two() {
        let r = admissible_range(5, 2.0, 2.0).unwrap();
        assert_eq!(r.case, LiteratureCase::OddMuTwo);
        assert_eq!(r.k1, 2.0);
        assert_eq!(r.k2, 4.0);
        let r = admissible_range(7, 3.0, 2.0).unwrap();
        assert_eq!(r.k2, 6.0);
    }

    #[test]
    fn general_mu_cases() {
        let r = admissible_range(4, 1.5, 3.0).unwrap();
        assert_eq!(r.case, LiteratureCase::EvenGeneralMu);
        assert_eq!(r.k1, 2.5);
        assert_eq!(r.k2, 3.0f64.min(3.0 * 1.5 - 2.5));

        let r = admissible_range(3, 1.5, 3.0).unwrap();
        assert_eq!(r.case, LiteratureCase::OddGeneralMu);
        assert_eq!(r.k1, 2.5);

        // n = 5, μ ∈ (n-1, M(n)] adds the 1/(p-1) term
        let top = mu_max(5).unwrap();
        let mu = 0.5 * (4.0 + top);
        let p = 3.5;
        let r = admissible_range(5, p, mu).unwrap();
        let expect = 2f64.max(2.0 / (p - 1.0) - 0.5 * mu).max(1.0 / (p - 1.0));
        assert_eq!(r.k1, expect);
        let r = admissible_range(5, p, 3.0).unwrap();
        assert_eq!(r.k1, 2f64.max(2.0 / (p - 1.0) - 1.5));
    }

    #[test]
    fn mu_two_rows_agree_with_general_k1_shape() {
        // (3-p)/(p-1) is 2/(p-1) - μ/2 at μ = 2
        for p in [1.2f64, 1.5, 2.0, 2.7] {
            assert!(((3.0 - p) / (p - 1.0) - (2.0 / (p - 1.0) - 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn uncovered_cases_are_errors() {
        for (n, mu) in [(2, 2.0), (3, 1.0), (3, 0.0), (4, 10.0), (2, 2.5)] {
            let err = admissible_range(n, 2.0, mu).unwrap_err();
            assert!(matches!(err, Error::UncoveredCase(_)), "n={n} mu={mu}: {err}");
        }
    }

    #[test]
    fn caps() {
        assert_eq!(LiteratureCase::OddMuTwo.p_cap(5, 2.0), Some((2.0, true)));
        assert_eq!(LiteratureCase::OddMuTwo.p_cap(7, 2.0), Some((2.0, true)));
        assert_eq!(LiteratureCase::OddMuTwo.kbar_cap(5), Some(3.0));
        assert_eq!(LiteratureCase::OddMuTwo.kbar_cap(7), Some(6.0));
        let (c, incl) = LiteratureCase::EvenMuTwo.p_cap(4, 2.0).unwrap();
        assert!((c - 9.0 / 5.0).abs() < 1e-15 && !incl);
        assert_eq!(LiteratureCase::ThreeDimMuTwo.p_cap(3, 2.0), None);
    }
}
