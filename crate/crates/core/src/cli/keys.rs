/// One configuration key, usable as `--name VALUE` or `name = value` in a config file.
#[derive(Debug, Clone, Copy)]
pub struct Key {
    pub name: &'static str,
    pub unit: &'static str,
    /// `None` means required.
    pub default: Option<&'static str>,
    pub help: &'static str,
}

const fn key(name: &'static str, unit: &'static str, default: Option<&'static str>, help: &'static str) -> Key {
    Key { name, unit, default, help }
}

pub const KEYS: &[Key] = &[
    // model
    key("n", "integer >= 2", None, "space dimension"),
    key("mu", "dimensionless", None, "damping coefficient mu"),
    key("nu", "dimensionless", Some("0"), "mass coefficient nu"),
    key("p", "dimensionless > 1", None, "power of the nonlinearity"),
    key("kbar", "dimensionless > -1", None, "decay rate of the data, g(r) = M (1+r)^-(kbar+1)"),
    key("amplitude", "dimensionless > 0", Some("1"), "amplitude M of the data"),
    key("eps", "dimensionless > 0", Some("1"), "size epsilon of the data"),
    // bound
    key("delta", "length > 0", Some("1"), "margin delta of the blow-up set"),
    key("delta_m", "dimensionless > 0", Some("1"), "free-wave constant delta_m (bounds are conditional on it)"),
    // grid
    key("dr", "length > 0", Some("0.02"), "radial step"),
    key("cfl", "dt/dr", Some("auto"), "Courant ratio; auto = 0.9 x stability limit of the dimension"),
    key("r_obs", "length > 0", Some("10"), "observation radius; blow-up is detected on [0, r_obs]"),
    key("t_max", "time > 0", Some("20"), "final time"),
    key("threshold", "amplitude > 0", Some("1e8"), "blow-up threshold on max |u|"),
    // runs
    key("form", "u | v", Some("u"), "integrated equation: u-form or damped v-form"),
    key("snapshot_every", "steps", Some("0"), "write a profile every this many steps; 0 disables"),
    key("transform", "bool", Some("false"), "also compare u-form with (1+t)^(mu/2) v-form"),
    // sweep
    key("eps_min", "dimensionless > 0", Some("2"), "smallest epsilon of the sweep"),
    key("eps_max", "dimensionless > 0", Some("10"), "largest epsilon of the sweep"),
    key("eps_count", "integer >= 4", Some("5"), "number of geometric epsilon values"),
    key("refine", "levels >= 1", Some("1"), "halvings of (dr, dt) for the refinement check"),
    key("check_bound", "bool", Some("false"), "compare every T_num with the lifespan upper bound"),
    // atlas
    key("k_min", "dimensionless", Some("0"), "smallest kbar of the atlas"),
    key("k_max", "dimensionless", Some("4"), "largest kbar of the atlas"),
    key("k_count", "integer >= 1", Some("100"), "kbar grid points"),
    key("p_min", "dimensionless > 1", Some("1.025"), "smallest p of the atlas"),
    key("p_max", "dimensionless > 1", Some("3.5"), "largest p of the atlas"),
    key("p_count", "integer >= 1", Some("100"), "p grid points"),
    // convergence
    key("levels", "integer >= 3", Some("3"), "refinement levels"),
    key("compare_time", "time > 0", Some("1"), "time at which profiles are compared"),
    key("free_wave", "bool", Some("false"), "free 3D wave with a smooth bump, measured against the exact solution"),
];

pub fn lookup(name: &str) -> Option<&'static Key> {
    KEYS.iter().find(|k| k.name == name)
}

const MODEL: &[&str] = &["n", "mu", "nu", "p", "kbar", "amplitude", "eps"];
const GRID: &[&str] = &["dr", "cfl", "r_obs", "t_max", "threshold"];

/// Keys read by each subcommand.
pub fn keys_for(command: &str) -> Vec<&'static str> {
    let extra: &[&[&str]] = match command {
        "classify" => &[MODEL],
        "bound" => &[MODEL, &["delta", "delta_m"]],
        "simulate" => &[MODEL, GRID, &["form", "snapshot_every", "transform"]],
        "sweep" => &[
            MODEL,
            GRID,
            &["form", "eps_min", "eps_max", "eps_count", "refine", "check_bound", "delta", "delta_m"],
        ],
        "atlas" => &[&["n", "mu", "nu", "k_min", "k_max", "k_count", "p_min", "p_max", "p_count"]],
        "converge" => &[MODEL, GRID, &["form", "levels", "compare_time", "free_wave"]],
        _ => &[],
    };
    extra.iter().flat_map(|g| g.iter().copied()).collect()
}
