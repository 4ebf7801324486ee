//! Sweep eps, fit T_num against eps on log-log axes and compare with T_upper.

use blowuplab::bound_engine::BoundConfig;
use blowuplab::experiments::{check_upper_bound, geometric_grid, sweep, with_jobs, SweepSpec};
use blowuplab::solver::GridSpec;
use blowuplab::ModelParams;

fn main() -> blowuplab::Result<()> {
    let prm = ModelParams::new(3, 2.0, 0.0, 1.8, 0.5, 1.0, 1.0)?;
    let grid = GridSpec::covering_default(3, 0.02, 10.0, 40.0)?;
    let spec = SweepSpec::new(prm, geometric_grid(2.0, 10.0, 5)?, grid, 1)?;

    let res = with_jobs(Some(4), || sweep(&spec))??;
    println!("{:>8} {:>10} {:>10}", "eps", "T_num", "refine");
    for pt in &res.points {
        println!(
            "{:>8.3} {:>10} {:>10}",
            pt.eps,
            pt.t_num.map_or("-".into(), |t| format!("{t:.4}")),
            pt.refinement_agreement.map_or("-".into(), |a| format!("{a:.2e}")),
        );
    }
    println!("slope {:.4} (theory {:.4}), r^2 {:.4}, pass {}", res.slope, -res.alpha_theory, res.r_squared, res.pass);

    let check = check_upper_bound(&spec, &BoundConfig::new(prm, 1.0, 1.0)?)?;
    for c in &check.comparisons {
        println!("eps {:.3}: T_num {:.4} vs T_upper {:.4e}  {:?}", c.eps, c.t_num.unwrap_or(f64::NAN), c.t_upper, c.status);
    }
    Ok(())
}
