use serde::Serialize;

use super::cases::{admissible_range, literature_case};
use super::{failed_hypotheses, fujita, lifespan_exponent, strauss, Hypothesis, ModelParams};

const MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    /// All hypotheses of the finite-lifespan theorem hold.
    BlowUpTheorem1,
    /// A known small-data global existence result applies.
    GlobalExistenceLiterature,
    Unknown,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::BlowUpTheorem1 => "BlowUpTheorem1",
            VerdictKind::GlobalExistenceLiterature => "GlobalExistenceLiterature",
            VerdictKind::Unknown => "Unknown",
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named boundary curves and side conditions that decide a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Constraint {
    /// `k̄ + μ/2 > 0`
    PositiveShift,
    /// `(μ/2)(μ/2-1) >= ν`
    MassBound,
    /// `p` versus `p_F(k̄ + μ/2)`
    FujitaCurve,
    /// `ν = (μ/2)(μ/2-1)`, required by every existence result
    CriticalMass,
    /// `(n, μ)` outside the literature case table
    UncoveredCase,
    /// `p` versus `p_S(n + μ)`
    StraussLine,
    /// upper cap on `p` of the existence zone
    PowerCap,
    /// `k̄ >= k₁`
    DecayLower,
    /// `k̄` above `k₂` (or the listed `k̄` cap), replaced by it
    DecayUpperDowngraded,
}

impl From<Hypothesis> for Constraint {
    fn from(h: Hypothesis) -> Self {
        match h {
            Hypothesis::PositiveShift => Constraint::PositiveShift,
            Hypothesis::MassBound => Constraint::MassBound,
            Hypothesis::BelowFujita => Constraint::FujitaCurve,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionVerdict {
    pub kind: VerdictKind,
    /// Lifespan exponent, present exactly for [`VerdictKind::BlowUpTheorem1`].
    pub lifespan_exponent: Option<f64>,
    pub active_constraints: Vec<Constraint>,
}

impl RegionVerdict {
    fn unknown(active_constraints: Vec<Constraint>) -> Self {
        Self { kind: VerdictKind::Unknown, lifespan_exponent: None, active_constraints }
    }
}

/// Classify `(k̄, p)` for the problem described by `params`.
///
/// Points exactly on a boundary curve are `Unknown`: both the blow-up and the
/// existence statements use strict inequalities there. `M` and `ε` never
/// influence the verdict.
pub fn classify(params: &ModelParams) -> RegionVerdict {
    let failed = failed_hypotheses(params);
    if failed.is_empty() {
        let alpha = lifespan_exponent(params).expect("hypotheses checked");
        return RegionVerdict {
            kind: VerdictKind::BlowUpTheorem1,
            lifespan_exponent: Some(alpha),
            active_constraints: vec![
                Constraint::PositiveShift,
                Constraint::MassBound,
                Constraint::FujitaCurve,
            ],
        };
    }
    let mut why: Vec<Constraint> = failed.iter().copied().map(Constraint::from).collect();

    let (n, mu, p, kbar) = (params.n(), params.mu(), params.p(), params.kbar());
    let cm = params.critical_mass();
    if (params.nu() - cm).abs() > MASS_TOL * cm.abs().max(1.0) || cm < 0.0 {
        why.push(Constraint::CriticalMass);
        return RegionVerdict::unknown(why);
    }
    let Ok(case) = literature_case(n, mu) else {
        why.push(Constraint::UncoveredCase);
        return RegionVerdict::unknown(why);
    };
    let mut active = vec![Constraint::CriticalMass];

    let ps = strauss(n as f64 + mu).expect("n + mu > 1 for mu >= 2");
    if p <= ps {
        why.push(Constraint::StraussLine);
        return RegionVerdict::unknown(why);
    }
    active.push(Constraint::StraussLine);

    match fujita(params.fujita_shift()) {
        Ok(pf) if p > pf => active.push(Constraint::FujitaCurve),
        _ => return RegionVerdict::unknown(why),
    }

    if let Some((cap, inclusive)) = case.p_cap(n, mu) {
        let inside = if inclusive { p <= cap } else { p < cap };
        if !inside {
            why.push(Constraint::PowerCap);
            return RegionVerdict::unknown(why);
        }
        active.push(Constraint::PowerCap);
    }

    let range = admissible_range(n, p, mu).expect("case already selected");
    let mut upper = range.k2;
    if let Some(cap) = case.kbar_cap(n) {
        upper = upper.min(cap);
    }
    let effective = if kbar > upper {
        active.push(Constraint::DecayUpperDowngraded);
        upper
    } else {
        kbar
    };
    if effective < range.k1 {
        why.push(Constraint::DecayLower);
        return RegionVerdict::unknown(why);
    }
    active.push(Constraint::DecayLower);

    RegionVerdict {
        kind: VerdictKind::GlobalExistenceLiterature,
        lifespan_exponent: None,
        active_constraints: active,
    }
}
