use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::surd::{kbar_zero_surd, strauss_surd};
use super::{classify, fujita, kbar_zero, strauss, ModelParams, RegionVerdict, VerdictKind};
use crate::error::{Error, Result};

pub const DEFAULT_CURVE_SAMPLES: usize = 512;

/// Inclusive, evenly spaced sample range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(start: f64, end: f64, count: usize) -> Self {
        Self { start, end, count }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            c => {
                let h = (self.end - self.start) / (c - 1) as f64;
                (0..c).map(|i| if i + 1 == c { self.end } else { self.start + h * i as f64 }).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtlasNode {
    pub kbar: f64,
    pub p: f64,
    pub verdict: RegionVerdict,
}

/// Crossing of the modified Fujita curve with the Strauss line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub kbar: f64,
    pub p: f64,
    /// Exact closed forms when `n + μ` is an integer.
    pub kbar_label: Option<String>,
    pub p_label: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Atlas {
    pub n: u32,
    pub mu: f64,
    pub nu: f64,
    pub k_range: AxisRange,
    pub p_range: AxisRange,
    /// Row-major: `p` outer, `k̄` inner.
    pub nodes: Vec<AtlasNode>,
    pub boundary: Option<BoundaryPoint>,
    /// `p_S(n + μ)`, when defined.
    pub strauss_p: Option<f64>,
    /// Samples `(k̄, p_F(k̄ + μ/2))` across the `k̄` range.
    pub fujita_curve: Vec<(f64, f64)>,
}

/// Classify every node of a `k̄ × p` grid.
pub fn atlas(n: u32, mu: f64, nu: f64, k_range: AxisRange, p_range: AxisRange) -> Result<Atlas> {
    atlas_with_samples(n, mu, nu, k_range, p_range, DEFAULT_CURVE_SAMPLES)
}

pub fn atlas_with_samples(
    n: u32,
    mu: f64,
    nu: f64,
    k_range: AxisRange,
    p_range: AxisRange,
    curve_samples: usize,
) -> Result<Atlas> {
    if k_range.count == 0 {
        return Err(Error::EmptyGrid("kbar axis has no samples"));
    }
    if p_range.count == 0 {
        return Err(Error::EmptyGrid("p axis has no samples"));
    }
    let ks = k_range.values();
    let ps = p_range.values();
    let mut pairs = Vec::with_capacity(ks.len() * ps.len());
    for &p in &ps {
        for &k in &ks {
            pairs.push((k, p));
        }
    }
    // Validate before the parallel section so errors are deterministic.
    let params: Vec<ModelParams> = pairs
        .iter()
        .map(|&(k, p)| ModelParams::new(n, mu, nu, p, k, 1.0, 1.0))
        .collect::<Result<_>>()?;
    let nodes = params
        .par_iter()
        .map(|prm| AtlasNode { kbar: prm.kbar(), p: prm.p(), verdict: classify(prm) })
        .collect();

    let strauss_p = strauss(n as f64 + mu).ok();
    let boundary = match (kbar_zero(n, mu), strauss_p) {
        (Ok(k0), Some(p)) => {
            let exact = mu.fract() == 0.0 && mu.abs() < 1e6;
            let (kbar_label, p_label) = if exact {
                let d = n as i64 + mu as i64;
                (
                    kbar_zero_surd(n as i64, mu as i64).map(|s| s.to_string()),
                    strauss_surd(d).map(|s| s.to_string()),
                )
            } else {
                (None, None)
            };
            Some(BoundaryPoint { kbar: k0, p, kbar_label, p_label })
        }
        _ => None,
    };

    let lo = k_range.start.min(k_range.end);
    let hi = k_range.start.max(k_range.end);
    let fujita_curve = AxisRange::new(lo, hi, curve_samples)
        .values()
        .into_iter()
        .filter_map(|k| fujita(k + 0.5 * mu).ok().map(|p| (k, p)))
        .collect();

    Ok(Atlas { n, mu, nu, k_range, p_range, nodes, boundary, strauss_p, fujita_curve })
}

impl Atlas {
    /// CSV with header `kbar,p,verdict,alpha_or_blank`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "kbar,p,verdict,alpha_or_blank")?;
        for node in &self.nodes {
            let alpha = node.verdict.lifespan_exponent.map(|a| a.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{},{}", node.kbar, node.p, node.verdict.kind, alpha)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn count(&self, kind: VerdictKind) -> usize {
        self.nodes.iter().filter(|n| n.verdict.kind == kind).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT17: f64 = 4.1231056256176605498;

    #[test]
    fn contains_figure_one_boundary_point() {
        let a = atlas(3, 2.0, 0.0, AxisRange::new(0.0, 4.0, 5), AxisRange::new(1.1, 3.5, 5)).unwrap();
        let b = a.boundary.unwrap();
        assert!((b.kbar - (-1.0 + SQRT17) / 2.0).abs() < 1e-12);
        assert!((b.p - (3.0 + SQRT17) / 4.0).abs() < 1e-12);
        assert_eq!(b.kbar_label.as_deref(), Some("(-1+√17)/2"));
        assert_eq!(b.p_label.as_deref(), Some("(3+√17)/4"));
        assert_eq!(a.fujita_curve.len(), DEFAULT_CURVE_SAMPLES);
    }

    #[test]
    fn just_below_fujita_curve_is_blow_up() {
        for (mu, n) in [(2.0, 3u32), (3.0, 4), (0.0, 3), (4.0, 7)] {
            let nu = 0.5 * mu * (0.5 * mu - 1.0);
            for k in AxisRange::new(0.05, 5.0, 40).values() {
                let p = fujita(k + 0.5 * mu).unwrap() - 1e-9;
                if p <= 1.0 {
                    continue;
                }
                let a = atlas(n, mu, nu, AxisRange::new(k, k, 1), AxisRange::new(p, p, 1)).unwrap();
                assert_eq!(a.nodes[0].verdict.kind, VerdictKind::BlowUpTheorem1);
            }
        }
    }

    #[test]
    fn single_node_matches_classify() {
        let a = atlas(3, 2.0, 0.0, AxisRange::new(1.0, 1.0, 1), AxisRange::new(1.6, 1.6, 1)).unwrap();
        let prm = ModelParams::new(3, 2.0, 0.0, 1.6, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(a.nodes.len(), 1);
        assert_eq!(a.nodes[0].verdict, classify(&prm));
    }

    #[test]
    fn empty_grid_rejected() {
        let e = atlas(3, 2.0, 0.0, AxisRange::new(0.0, 1.0, 0), AxisRange::new(1.1, 2.0, 3));
        assert!(matches!(e, Err(Error::EmptyGrid(_))));
        let e = atlas(3, 2.0, 0.0, AxisRange::new(0.0, 1.0, 3), AxisRange::new(1.1, 2.0, 0));
        assert!(matches!(e, Err(Error::EmptyGrid(_))));
    }

    #[test]
    fn out_of_domain_grid_rejected() {
        let e = atlas(3, 2.0, 0.0, AxisRange::new(-2.0, 1.0, 4), AxisRange::new(1.1, 2.0, 3));
        assert!(e.is_err());
    }

    #[test]
    fn csv_layout() {
        let a = atlas(3, 2.0, 0.0, AxisRange::new(1.0, 3.0, 2), AxisRange::new(1.6, 2.2, 2)).unwrap();
        let csv = a.to_csv_string();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "kbar,p,verdict,alpha_or_blank");
        assert_eq!(lines.len(), 5);
        let cols: Vec<_> = lines[1].split(',').collect();
        assert_eq!(&cols[..3], &["1", "1.6", "BlowUpTheorem1"]);
        assert!((cols[3].parse::<f64>().unwrap() - 0.75).abs() < 1e-14);
        assert_eq!(lines[4], "3,2.2,GlobalExistenceLiterature,");
    }
}
