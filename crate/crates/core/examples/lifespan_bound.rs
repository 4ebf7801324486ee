//! Explicit lifespan upper bound and how it scales with eps.

use blowuplab::bound_engine::{lifespan_upper_bound, BoundConfig};
use blowuplab::ModelParams;

fn main() -> blowuplab::Result<()> {
    let prm = ModelParams::new(3, 2.0, 0.0, 1.8, 0.5, 1.0, 1.0)?;
    let cfg = BoundConfig::new(prm, 1.0, 1.0)?;
    let b = lifespan_upper_bound(&cfg)?;
    let k = &b.constants;
    println!("C0 = {:.6e}  K = {:.6e}  S = {:.6}", k.log_c0.exp(), k.k_const, k.s_bound);
    println!("T(eps) <= {:.6e} * eps^-{:.6}", b.c, b.exponent);

    println!("{:>8} {:>14} {:>12}", "eps", "T_upper", "log T_upper");
    for eps in [1.0, 0.1, 0.01, 1e-3, 1e-6] {
        let b = lifespan_upper_bound(&cfg.with_params(prm.with_eps(eps)?))?;
        println!("{eps:>8.0e} {:>14.6e} {:>12.4}", b.t_upper, b.log_t_upper);
    }
    Ok(())
}
