//! Solve the radial problem until blow-up, then compare the u and v forms.

use blowuplab::solver::{run_with, transform_check, Form, GridSpec, Problem, RunOptions};
use blowuplab::ModelParams;

fn main() -> blowuplab::Result<()> {
    let prm = ModelParams::new(3, 2.0, 0.0, 1.8, 0.5, 1.0, 5.0)?;
    let grid = GridSpec::covering_default(3, 0.01, 10.0, 20.0)?;
    println!("dr = {}, dt = {:.5}, {} cells", grid.dr, grid.dt(), grid.cells());

    for form in [Form::UForm, Form::VForm] {
        let opts = RunOptions { snapshot_stride: None, history_stride: Some(50) };
        let res = run_with(form, Problem::new(prm), &grid, opts)?;
        match res.outcome.blow_up_time() {
            Some(t) => println!("{}-form blew up at T_num = {t:.4}", form.as_str()),
            None => println!("{}-form survived to t_max", form.as_str()),
        }
        if let Some((t, m)) = res.max_amplitude_history.last() {
            println!("  last sample t={t:.3} max|u|={m:.3e}");
        }
    }

    // early times, well before blow-up
    let short = GridSpec::covering_default(3, 0.02, 4.0, 1.0)?;
    let rep = transform_check(Problem::new(prm.with_eps(0.5)?), &short, 5)?;
    println!("u vs (1+t)^(mu/2) v: max relative gap {:.3e} over {} samples", rep.max_relative_discrepancy, rep.samples.len());
    Ok(())
}
