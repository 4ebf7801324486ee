//! Command-line front end: `blowuplab <command> [--config FILE] [--key value]...`.
//!
//! Values come from key defaults, then the config file, then flags.

mod commands;
mod config;
mod keys;

pub use config::{parse_file, Config};
pub use keys::{keys_for, lookup, Key, KEYS};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Arg, ArgAction, Command};

use crate::error::Error;
use crate::experiments::with_jobs;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const JOBS_ENV: &str = "BLOWUPLAB_JOBS";

const COMMANDS: &[(&str, &str)] = &[
    ("classify", "Classify a parameter point; prints the verdict as JSON"),
    ("bound", "Lifespan upper bound C eps^-alpha; writes bound.json"),
    ("simulate", "Run the radial solver; writes simulate_<form>.json and optional snapshots"),
    ("sweep", "Epsilon sweep with power-law fit; writes sweep.csv and sweep.json"),
    ("atlas", "Classify a kbar x p grid; writes atlas.csv and atlas.svg"),
    ("converge", "Grid refinement study; writes converge.json"),
];

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain { .. }
        | Error::InvalidField { .. }
        | Error::Hypothesis(_)
        | Error::UncoveredCase(_)
        | Error::EmptyGrid(_)
        | Error::Config(_) => EXIT_VALIDATION,
        Error::Io(_) => EXIT_IO,
        Error::NotConverged(_) | Error::Json(_) => EXIT_INTERNAL,
    }
}

fn key_help(k: &Key) -> String {
    match k.default {
        Some(d) => format!("{} [{}] (default: {d})", k.help, k.unit),
        None => format!("{} [{}] (required)", k.help, k.unit),
    }
}

fn all_keys_text() -> String {
    let mut s = String::from("Config keys (flag --KEY or line KEY = VALUE in --config):\n");
    for k in KEYS {
        s.push_str(&format!("  {:<15} {}\n", k.name, key_help(k)));
    }
    s
}

pub fn command() -> Command {
    let mut cmd = Command::new("blowuplab")
        .about("Critical exponents, lifespan bounds and blow-up simulations for damped semilinear waves")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .after_long_help(all_keys_text())
        .after_help(all_keys_text());
    for &(name, about) in COMMANDS {
        let mut sub = Command::new(name)
            .about(about)
            .arg(Arg::new("config").long("config").value_name("FILE").help("key = value file; flags win"))
            .arg(Arg::new("out").long("out").value_name("DIR").default_value(".").help("directory for output files"))
            .arg(
                Arg::new("jobs")
                    .long("jobs")
                    .value_name("N")
                    .value_parser(clap::value_parser!(usize))
                    .help(format!("worker threads; falls back to {JOBS_ENV}, then available parallelism")),
            );
        for key_name in keys_for(name) {
            let k = lookup(key_name).expect("registered key");
            sub = sub.arg(Arg::new(k.name).long(k.name).value_name("VALUE").action(ArgAction::Set).allow_negative_numbers(true).help(key_help(k)));
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

/// Parse `args` (including the program name), run, and return the exit code.
/// `jobs_env` is the value of the jobs environment variable, if any.
pub fn run(args: impl IntoIterator<Item = OsString>, jobs_env: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_VALIDATION;
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let name: &'static str = COMMANDS.iter().find(|(n, _)| *n == name).map(|(n, _)| *n).expect("known command");

    let mut cfg = Config::new(name);
    if let Some(path) = sub.get_one::<String>("config") {
        if let Err(e) = cfg.load_file(path.as_ref()) {
            let _ = writeln!(err, "error: {path}: {e}");
            return exit_code(&e);
        }
    }
    cfg.overlay(keys_for(name).into_iter().filter_map(|k| sub.get_one::<String>(k).map(|v| (k, v.clone()))));

    let jobs = match sub.get_one::<usize>("jobs") {
        Some(j) => Some(*j),
        None => match jobs_env.as_deref().map(str::trim).filter(|s| !s.is_empty()) {
            None => None,
            Some(s) => match s.parse::<usize>() {
                Ok(j) => Some(j),
                Err(_) => {
                    let _ = writeln!(err, "error: {JOBS_ENV} must be a positive integer, got {s:?}");
                    return EXIT_VALIDATION;
                }
            },
        },
    };
    let ctx = commands::Context { out_dir: PathBuf::from(sub.get_one::<String>("out").expect("default")) };
    let result = with_jobs(jobs, || match name {
        "classify" => commands::classify_cmd(&cfg, &ctx),
        "bound" => commands::bound_cmd(&cfg, &ctx),
        "simulate" => commands::simulate_cmd(&cfg, &ctx),
        "sweep" => commands::sweep_cmd(&cfg, &ctx),
        "atlas" => commands::atlas_cmd(&cfg, &ctx),
        "converge" => commands::converge_cmd(&cfg, &ctx),
        _ => unreachable!("unregistered command {name}"),
    })
    .and_then(|r| r);
    match result {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).unwrap_or_else(|_| value.to_string());
            if writeln!(out, "{text}").is_err() {
                return EXIT_IO;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
