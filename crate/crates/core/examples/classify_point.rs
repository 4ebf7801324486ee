//! Critical exponents and the region verdict for a few parameter points.

use blowuplab::exponents::{classify, fujita, kbar_zero, mu_max, strauss};
use blowuplab::ModelParams;

fn main() -> blowuplab::Result<()> {
    let (n, mu) = (3, 2.0);
    println!("p_S({}) = {:.6}", n as f64 + mu, strauss(n as f64 + mu)?);
    println!("kbar_0 = {:.6}", kbar_zero(n, mu)?);
    println!("M({n}) = {:.6}", mu_max(n)?);

    for (kbar, p) in [(0.5, 1.8), (1.0, 1.5), (3.0, 1.3), (2.0, 3.0)] {
        let prm = ModelParams::new(n, mu, 0.0, p, kbar, 1.0, 1.0)?;
        let v = classify(&prm);
        let pf = fujita(prm.fujita_shift())?;
        print!("kbar={kbar:<4} p={p:<4} p_F={pf:.4}  {}", v.kind);
        if let Some(a) = v.lifespan_exponent {
            print!("  alpha={a:.4}");
        }
        println!("  {:?}", v.active_constraints);
    }
    Ok(())
}
