//! Run the (a_k, b_k, C_k) recursion and check one step of it by quadrature.

use blowuplab::bound_engine::{
    closed_form, derive_k_auto, free_lower_bound, iterate, log_envelope, sigma_samples, verify_iteration_step,
    BoundConfig, IterationState,
};
use blowuplab::ModelParams;

fn main() -> blowuplab::Result<()> {
    let prm = ModelParams::new(3, 2.0, 0.0, 2.0, 0.0, 1.0, 1.0)?;
    let cfg = BoundConfig::new(prm, 1.0, 1.0)?;

    let mut s = IterationState::seed(&cfg);
    for _ in 0..6 {
        let (a, b) = closed_form(s.k, &cfg)?;
        println!("k={} a={:<8} b={:<8} log C={:>10.4}  closed=({a}, {b})", s.k, s.a, s.b, s.log_c);
        s = iterate(&s, &cfg);
    }

    let consts = derive_k_auto(&cfg)?;
    println!("K = {:.6e} (k* = {:?}), S = {:.6}", consts.k_const, consts.k_star, consts.s_bound);

    // the free wave dominates the first envelope on the blow-up set
    let seed = IterationState::seed(&cfg);
    for (t, r) in sigma_samples(&cfg, 4, 0.5, 8.0) {
        let lower = free_lower_bound(t, r, &cfg)?;
        let env = log_envelope(&seed, t, r, prm.m()).exp();
        println!("t={t:6.3} r={r:7.3}  free={lower:.4e} >= envelope={env:.4e}");
    }

    let samples = sigma_samples(&cfg, 12, 1.1, 10.0);
    let rep = verify_iteration_step(&seed, &samples, &cfg)?;
    println!("step 1 -> 2: worst ratio {:.4} ({})", rep.worst_ratio, if rep.passed { "holds" } else { "fails" });
    Ok(())
}
