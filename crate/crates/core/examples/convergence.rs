//! Grid refinement study: against the exact 3-D free wave, then Richardson
//! ratios for the nonlinear problem.

use blowuplab::experiments::{convergence_study, convergence_study_exact, free_wave_3d_bump, smooth_bump};
use blowuplab::solver::{Form, GridSpec, Problem};
use blowuplab::ModelParams;

fn main() -> blowuplab::Result<()> {
    let free = ModelParams::new(3, 0.0, 0.0, 2.0, 0.0, 1.0, 1.0)?;
    let grid = GridSpec::covering_default(3, 0.04, 3.0, 2.0)?;
    let problem = Problem::new(free).with_datum(smooth_bump).free();
    let rep = convergence_study_exact(Form::UForm, &problem, &grid, 4, 1.0, &free_wave_3d_bump)?;
    for l in &rep.levels {
        println!("dr={:.4} error={:.3e}", l.dr, l.exact_error.unwrap_or(f64::NAN));
    }
    println!("free wave orders {:?}", rep.profile_orders);

    let prm = ModelParams::new(3, 2.0, 0.0, 1.8, 0.5, 1.0, 5.0)?;
    let grid = GridSpec::covering_default(3, 0.04, 4.0, 6.0)?;
    let rep = convergence_study(Form::UForm, &Problem::new(prm).with_datum(smooth_bump), &grid, 4, 2.0)?;
    println!("nonlinear orders {:?}, T_num order {:?}, pass {}", rep.profile_orders, rep.t_num_order, rep.pass);
    Ok(())
}
