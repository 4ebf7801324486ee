use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::config::Config;
use crate::bound_engine::{lifespan_upper_bound, BoundConfig};
use crate::error::{Error, Result};
use crate::experiments::{
    check_upper_bound, convergence_study, convergence_study_exact, free_wave_3d_bump, geometric_grid, smooth_bump,
    sweep, SweepSpec,
};
use crate::exponents::{atlas, classify, failed_hypotheses, render_svg, AxisRange, ModelParams, VerdictKind};
use crate::solver::{default_cfl, run_with, transform_check, Form, GridSpec, Problem, RunOptions};

/// Everything a subcommand needs besides its config.
pub struct Context {
    pub out_dir: PathBuf,
}

impl Context {
    fn create(&self, name: &str) -> Result<BufWriter<File>> {
        let path = self.out_dir.join(name);
        let with_path = |e: std::io::Error| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())));
        fs::create_dir_all(&self.out_dir).map_err(with_path)?;
        Ok(BufWriter::new(File::create(&path).map_err(with_path)?))
    }

    fn write_json(&self, name: &str, value: &Value) -> Result<PathBuf> {
        let mut w = self.create(name)?;
        serde_json::to_writer_pretty(&mut w, value)?;
        writeln!(w)?;
        w.flush()?;
        Ok(self.out_dir.join(name))
    }
}

fn model(cfg: &Config) -> Result<ModelParams> {
    ModelParams::new(
        cfg.get("n")?,
        cfg.get("mu")?,
        cfg.get("nu")?,
        cfg.get("p")?,
        cfg.get("kbar")?,
        cfg.get("amplitude")?,
        cfg.get("eps")?,
    )
}

fn grid(cfg: &Config, n: u32) -> Result<GridSpec> {
    let cfl = match cfg.get_auto("cfl")? {
        Some(c) => c,
        None => default_cfl(n)?,
    };
    let g = GridSpec::covering(cfg.get("dr")?, cfl, cfg.get("r_obs")?, cfg.get("t_max")?).with_threshold(cfg.get("threshold")?);
    g.validate(n)?;
    Ok(g)
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

pub fn classify_cmd(cfg: &Config, _: &Context) -> Result<Value> {
    let params = model(cfg)?;
    let verdict = classify(&params);
    let failed: Vec<String> = failed_hypotheses(&params).iter().map(|h| h.to_string()).collect();
    Ok(json!({
        "verdict": verdict.kind.as_str(),
        "lifespan_exponent": verdict.lifespan_exponent,
        "active_constraints": verdict.active_constraints,
        "failed_hypotheses": failed,
    }))
}

pub fn bound_cmd(cfg: &Config, ctx: &Context) -> Result<Value> {
    let params = model(cfg)?;
    let bcfg = BoundConfig::new(params, cfg.get("delta")?, cfg.get("delta_m")?)?;
    let b = lifespan_upper_bound(&bcfg)?;
    let mut value = json!({
        "C0": b.constants.log_c0.exp(),
        "K": b.constants.k_const,
        "S_limit": b.constants.s_limit,
        "C": b.c,
        "exponent": b.exponent,
        "T_upper": b.t_upper,
        "delta_m": bcfg.delta_m(),
        "conditional": true,
        "log_C": b.log_c,
        "log_T_upper": b.log_t_upper,
        "S_bound": b.constants.s_bound,
        "k_star": b.constants.k_star,
        "delta": bcfg.delta(),
    });
    let path = ctx.write_json("bound.json", &value)?;
    value["file"] = json!(display(&path));
    Ok(value)
}

pub fn simulate_cmd(cfg: &Config, ctx: &Context) -> Result<Value> {
    let params = model(cfg)?;
    let form: Form = cfg.get("form")?;
    let g = grid(cfg, params.n())?;
    let every: usize = cfg.get("snapshot_every")?;
    let opts = RunOptions { snapshot_stride: (every > 0).then_some(every), history_stride: Some(every.max(10)) };
    let run = run_with(form, Problem::new(params), &g, opts)?;

    let mut summary = serde_json::to_value(&run)?;
    summary["T_num"] = json!(run.outcome.blow_up_time());
    if cfg.flag("transform")? {
        summary["transform_check"] = serde_json::to_value(transform_check(Problem::new(params), &g, 10)?)?;
    }
    let stem = format!("simulate_{}", form.as_str());
    if every > 0 {
        let mut w = ctx.create(&format!("{stem}_snapshots.csv"))?;
        run.write_snapshots_csv(&mut w)?;
        w.flush()?;
    }
    let path = ctx.write_json(&format!("{stem}.json"), &summary)?;
    let mut brief = json!({
        "form": form.as_str(),
        "outcome": run.outcome,
        "T_num": run.outcome.blow_up_time(),
        "summary": display(&path),
    });
    if let Some(t) = summary.get("transform_check") {
        brief["transform_discrepancy"] = t["max_relative_discrepancy"].clone();
    }
    Ok(brief)
}

pub fn sweep_cmd(cfg: &Config, ctx: &Context) -> Result<Value> {
    let params = model(cfg)?;
    let g = grid(cfg, params.n())?;
    let eps = geometric_grid(cfg.get("eps_min")?, cfg.get("eps_max")?, cfg.get("eps_count")?)?;
    let spec = SweepSpec::new(params, eps, g, cfg.get("refine")?)?.with_form(cfg.get("form")?);
    let result = sweep(&spec)?;
    let mut w = ctx.create("sweep.csv")?;
    result.write_csv(&mut w)?;
    w.flush()?;
    let mut summary = result.summary_json();
    ctx.write_json("sweep.json", &summary)?;
    if cfg.flag("check_bound")? {
        let bcfg = BoundConfig::new(params, cfg.get("delta")?, cfg.get("delta_m")?)?;
        let check = check_upper_bound(&spec, &bcfg)?;
        let v = serde_json::to_value(&check)?;
        ctx.write_json("bound_check.json", &v)?;
        summary["bound_check_all_pass"] = json!(check.all_pass);
        summary["bound_note"] = json!(check.note);
    }
    Ok(summary)
}

pub fn atlas_cmd(cfg: &Config, ctx: &Context) -> Result<Value> {
    let k_range = AxisRange { start: cfg.get("k_min")?, end: cfg.get("k_max")?, count: cfg.get("k_count")? };
    let p_range = AxisRange { start: cfg.get("p_min")?, end: cfg.get("p_max")?, count: cfg.get("p_count")? };
    let a = atlas(cfg.get("n")?, cfg.get("mu")?, cfg.get("nu")?, k_range, p_range)?;
    let mut w = ctx.create("atlas.csv")?;
    a.write_csv(&mut w)?;
    w.flush()?;
    let mut w = ctx.create("atlas.svg")?;
    w.write_all(render_svg(&a).as_bytes())?;
    w.flush()?;
    Ok(json!({
        "nodes": a.nodes.len(),
        "BlowUpTheorem1": a.count(VerdictKind::BlowUpTheorem1),
        "GlobalExistenceLiterature": a.count(VerdictKind::GlobalExistenceLiterature),
        "Unknown": a.count(VerdictKind::Unknown),
        "boundary": a.boundary,
        "files": [display(&ctx.out_dir.join("atlas.csv")), display(&ctx.out_dir.join("atlas.svg"))],
    }))
}

pub fn converge_cmd(cfg: &Config, ctx: &Context) -> Result<Value> {
    let params = model(cfg)?;
    let form: Form = cfg.get("form")?;
    let g = grid(cfg, params.n())?;
    let levels: u32 = cfg.get("levels")?;
    let compare_time: f64 = cfg.get("compare_time")?;
    let report = if cfg.flag("free_wave")? {
        if params.n() != 3 || params.mu() != 0.0 || params.nu() != 0.0 {
            return Err(Error::Config("free_wave needs n = 3, mu = 0, nu = 0".into()));
        }
        let problem = Problem::new(params).with_datum(smooth_bump).free();
        convergence_study_exact(form, &problem, &g, levels, compare_time, &free_wave_3d_bump)?
    } else {
        convergence_study(form, &Problem::new(params), &g, levels, compare_time)?
    };
    let mut value = serde_json::to_value(&report)?;
    let path = ctx.write_json("converge.json", &value)?;
    value["file"] = json!(display(&path));
    Ok(value)
}
