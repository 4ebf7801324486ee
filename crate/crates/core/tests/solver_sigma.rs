use blowuplab::bound_engine::{free_lower_bound, in_sigma, seed_constant, sigma_samples, BoundConfig};
use blowuplab::solver::{Form, GridSpec, Problem, Solver};
use blowuplab::ModelParams;

fn march(params: ModelParams, dr: f64, r_obs: f64, t_max: f64) -> Vec<(f64, Solver)> {
    let grid = GridSpec::covering_default(params.n(), dr, r_obs, t_max).unwrap();
    let mut s = Solver::new(Form::UForm, Problem::new(params), &grid).unwrap();
    let mut levels = Vec::new();
    let stride = (0.25 / grid.dt()).round() as usize;
    while s.step_index() < grid.steps() {
        s.advance();
        if s.step_index() % stride == 0 {
            levels.push((s.time(), s.clone()));
        }
    }
    levels
}

fn configs() -> Vec<ModelParams> {
    vec![
        ModelParams::new(3, 2.0, 0.0, 1.8, 0.5, 1.0, 1.0).unwrap(),
        ModelParams::new(3, 2.0, -0.5, 1.6, 1.0, 1.0, 0.5).unwrap(),
        ModelParams::new(3, 0.0, 0.0, 1.8, 0.5, 1.0, 1.0).unwrap(),
        ModelParams::new(4, 2.0, 0.0, 1.4, 0.2, 2.0, 0.5).unwrap(),
    ]
}

#[test]
fn positive_on_sigma_grid_points() {
    for prm in configs() {
        let cfg = BoundConfig::with_defaults(prm);
        for (t, s) in march(prm, 0.02, 30.0, 4.0) {
            let scale = s.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (r, u) in s.radii().iter().zip(s.values()) {
                if *r <= 30.0 && in_sigma(t, *r, &cfg) {
                    assert!(*u >= -1e-8 * scale, "{prm:?}: u({t}, {r}) = {u}");
                }
            }
        }
    }
}

#[test]
fn dominates_seed_envelope() {
    for prm in configs() {
        let cfg = BoundConfig::with_defaults(prm);
        let levels = march(prm, 0.01, 30.0, 4.0);
        let log_c0 = seed_constant(&cfg);
        let m = prm.m() as f64;
        let mut checked = 0;
        for (t, s) in &levels {
            for (ts, r) in sigma_samples(&cfg, 64, 1.0, 4.0) {
                if (ts - t).abs() > 0.125 || r > 30.0 {
                    continue;
                }
                let r = r.max(*t + (2.0 * t).max(1.0));
                let u = s.value_at(r).unwrap();
                let seed = (log_c0 + (m + 1.0) * t.ln() - m * r.ln() - (prm.kbar() + 1.0) * (r + t).ln()).exp();
                assert!(u >= 0.9 * seed, "{prm:?}: u({t}, {r}) = {u} < seed {seed}");
                let free = free_lower_bound(*t, r, &cfg).unwrap();
                assert!(free >= seed * (1.0 - 1e-9));
                checked += 1;
            }
        }
        assert!(checked > 20, "only {checked} samples");
    }
}
