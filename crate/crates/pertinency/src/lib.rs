//! Command-line front end: argument handling, result records, the on-disk
//! cache and the reproduction harness.

pub mod args;
pub mod cache;
pub mod commands;
pub mod parallel;
pub mod record;
pub mod table08;
pub mod verify;

use std::fmt;
use std::io::Write;
use std::time::Instant;

use pertinency_core::Error;
use serde_json::{json, Value};

use crate::args::{Cli, Command, GlobalOpts};
use crate::cache::Cache;
use crate::commands::{default_degree, default_hilbert_degree, phi_input, Output, PertinencyArgs};
use crate::record::{ResultRecord, Timings};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Guardrail(String),
    Engine(String),
    Io(String),
}

impl CliError {
    pub fn from_engine(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Context(_) | Error::Parse { .. } | Error::Rational(_) => {
                CliError::Usage(e.to_string())
            }
            Error::Guardrail { .. } => CliError::Guardrail(e.to_string()),
            Error::Derivation { .. } => CliError::Engine(e.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
            CliError::Guardrail(_) | CliError::Engine(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Guardrail(m) | CliError::Engine(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Runs one command, writing the result to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run_with(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.global.threads {
        pool = pool.num_threads(t);
    }
    let mut buf = Vec::new();
    let result = match pool.build() {
        Ok(pool) => pool.install(|| dispatch(&cli.command, &cli.global, &mut buf)),
        Err(e) => Err(CliError::Usage(e.to_string())),
    };
    let result = result.and_then(|()| Ok(out.write_all(&buf)?)).or_else(|e| {
        out.write_all(&buf)?;
        Err(e)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, g: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Sets { n } => emit("sets", json!({ "n": n }), g, out, || commands::sets(*n)),
        Command::Admissible { target, range } => {
            let Some(r) = range.as_ref().or(target.as_ref()) else {
                return Err(CliError::Usage("give an n or --range a..b".into()));
            };
            let r = r.0.clone();
            let inputs = json!({ "from": r.start(), "to": r.end() });
            emit("admissible", inputs, g, out, || Ok(commands::admissible(r.clone())))
        }
        Command::Pertinency { n, max_degree, phi, symbolic_limit, quotient_limit, all_j } => {
            let a = PertinencyArgs {
                n: *n,
                max_degree: max_degree.unwrap_or_else(|| default_degree(*n)),
                phi: phi.clone(),
                symbolic_limit: *symbolic_limit,
                quotient_limit: *quotient_limit,
                all_j: *all_j,
            };
            let inputs = json!({
                "n": a.n, "max_degree": a.max_degree, "phi": phi_input(&a.phi),
                "symbolic_limit": a.symbolic_limit, "quotient_limit": a.quotient_limit, "all_j": a.all_j,
            });
            emit("pertinency", inputs, g, out, || commands::pertinency(&a))
        }
        Command::Table08 { max_degree } => {
            emit("table08", json!({ "max_degree": max_degree }), g, out, || table08::table08(*max_degree))
        }
        Command::Hilbert { n, j, phi, max_degree } => {
            let d = max_degree.unwrap_or_else(|| default_hilbert_degree(*n));
            let inputs = json!({ "n": n, "j": j, "phi": phi_input(phi), "max_degree": d });
            emit("hilbert", inputs, g, out, || commands::hilbert(*n, *j, phi, d))
        }
        Command::Nilpotency { n, i, j, phi, max_degree } => {
            let inputs = json!({ "n": n, "i": i, "j": j, "phi": phi_input(phi), "max_degree": max_degree });
            emit("nilpotency", inputs, g, out, || commands::nilpotency(*n, *i, *j, phi, *max_degree))
        }
        Command::VerifyPaper { case } => {
            let g = GlobalOpts { no_cache: true, ..g.clone() };
            emit("verify-paper", json!({ "case": case }), &g, out, || verify::verify(case.as_deref()))
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("outputs serialize to JSON")
}

fn emit<O, F>(command: &str, inputs: Value, g: &GlobalOpts, out: &mut dyn Write, compute: F) -> Result<(), CliError>
where
    O: Output,
    F: Fn() -> Result<O, CliError>,
{
    let cache = match (&g.cache_dir, g.no_cache) {
        (Some(dir), false) => Some(Cache::open(dir)?),
        _ => None,
    };
    let key = record::record_key(command, &inputs);
    let cached = match &cache {
        Some(c) => c.lookup(&key)?,
        None => None,
    };

    let start = Instant::now();
    let (output, mut rec) = match cached {
        Some(rec) if !g.verify_cache => {
            let output: O = serde_json::from_value(rec.outputs.clone())
                .map_err(|e| CliError::Io(format!("cached record {key} is unreadable: {e}")))?;
            (output, rec)
        }
        cached => {
            let output = compute()?;
            let rec = ResultRecord::new(command, inputs, to_value(&output), output.witnesses());
            match (&cached, &cache) {
                (Some(old), _) if !old.same_results(&rec) => {
                    return Err(CliError::Verification(format!("cached record {key} differs from a fresh run")));
                }
                (None, Some(c)) => c.store(&rec)?,
                _ => {}
            }
            (output, rec)
        }
    };
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    rec.timings = g.timings.then_some(Timings { total_ms });

    if g.json {
        serde_json::to_writer_pretty(&mut *out, &rec).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(out)?;
    } else if let Some(csv) = g.csv.then(|| output.csv()).flatten() {
        out.write_all(csv.as_bytes())?;
    } else {
        if g.csv {
            return Err(CliError::Usage(format!("`{command}` has no CSV form")));
        }
        out.write_all(output.text().as_bytes())?;
        if g.timings {
            writeln!(out, "total {total_ms:.1} ms")?;
        }
    }
    match output.failure() {
        Some(f) => Err(CliError::Verification(f)),
        None => Ok(()),
    }
}
