use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use ars_secrecy::mc::{simulate, McConfig};
use ars_secrecy::presets::{default_grid, figure as figure_preset, table1 as table1_rows};
use ars_secrecy::quadrature::QuadConfig;
use ars_secrecy::secrecy::{
    metric, sop_truncation_error, Engine, EngineOptions, MetricKind, MetricResult,
    SecrecyScenario,
};
use ars_secrecy::Error;
use rayon::prelude::*;
use serde_json::json;

use crate::config::ScenarioConfig;
use crate::{CommonOpts, GridOpts};

/// Truncation-error threshold for the table command.
const TABLE_EPS_TARGET: f64 = 1e-6;
const TABLE_MAX_TERMS: usize = 200;
const MC_SIGMAS: f64 = 3.0;

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Engine(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Config(_) => ExitCode::from(2),
            Failure::Engine(_) => ExitCode::from(3),
            Failure::Io(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) | Failure::Engine(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Result<T> = std::result::Result<T, Failure>;

/// 12 significant digits.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn output(opts: &CommonOpts) -> Result<Box<dyn Write>> {
    Ok(match &opts.out {
        Some(p) => Box::new(File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_writer(opts: &CommonOpts) -> Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new().from_writer(output(opts)?))
}

fn engine_options(opts: &CommonOpts) -> EngineOptions {
    let mut quad = QuadConfig::default();
    if let Some(t) = opts.tol {
        quad.relative_tolerance = t;
    }
    EngineOptions {
        quad,
        n_terms: opts.n_terms,
        foxh_tolerance: opts.tol,
        mc: McConfig { n_samples: opts.n_samples.max(1), seed: opts.seed, ..McConfig::default() },
    }
}

fn engines(opts: &CommonOpts, default: &[Engine]) -> Vec<Engine> {
    let mut e = if opts.engines.is_empty() { default.to_vec() } else { opts.engines.clone() };
    if opts.mc && !e.contains(&Engine::MonteCarlo) {
        e.push(Engine::MonteCarlo);
    }
    e
}

fn load(path: &Path) -> Result<ScenarioConfig> {
    ScenarioConfig::load(path).map_err(Failure::Config)
}

fn engine_failure(kind: MetricKind, engine: Engine, e: Error) -> Failure {
    Failure::Engine(format!("{kind} with engine {engine}: {e}"))
}

/// Every requested (metric, engine) pair; one simulation serves all metrics.
fn evaluate(
    s: &SecrecyScenario,
    kinds: &[MetricKind],
    engines: &[Engine],
    eo: &EngineOptions,
) -> Result<Vec<(MetricKind, MetricResult)>> {
    let mut out = Vec::new();
    for &engine in engines {
        if engine == Engine::MonteCarlo {
            let est = simulate(s, &eo.mc);
            for &k in kinds {
                let (v, se) = match k {
                    MetricKind::Asc => (est.asc, est.stderr_asc),
                    MetricKind::Sop => (est.sop, est.stderr_sop),
                    MetricKind::Pnz => (est.pnz, est.stderr_pnz),
                };
                let note = format!("{} samples, seed {}", est.n_samples, eo.mc.seed);
                out.push((k, MetricResult::new(v, Engine::MonteCarlo, se).with_note(note)));
            }
            continue;
        }
        for &k in kinds {
            let r = metric(k, s, engine, eo).map_err(|e| engine_failure(k, engine, e))?;
            out.push((k, r));
        }
    }
    Ok(out)
}

fn grid(g: &GridOpts, default: &[f64]) -> Result<Vec<f64>> {
    if g.from_db.is_none() && g.to_db.is_none() && g.step_db.is_none() {
        return Ok(default.to_vec());
    }
    let from = g.from_db.unwrap_or(default[0]);
    let to = g.to_db.unwrap_or(default[default.len() - 1]);
    let step = g.step_db.unwrap_or(2.0);
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() || to < from {
        return Err(Failure::Config(format!("invalid grid {from}:{step}:{to} dB")));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| from + i as f64 * step).collect())
}

pub fn compute(path: &Path, opts: &CommonOpts) -> Result<ExitCode> {
    let s = load(path)?.scenario().map_err(Failure::Config)?;
    let eo = engine_options(opts);
    let rows: Vec<_> = evaluate(&s, &opts.metric.kinds(), &engines(opts, &[Engine::Auto]), &eo)?
        .into_iter()
        .map(|(k, r)| {
            json!({
                "metric": k.name(),
                "engine": r.engine.name(),
                "value": r.value,
                "error_estimate": r.error_estimate,
                "notes": r.notes,
            })
        })
        .collect();
    let mut w = output(opts)?;
    serde_json::to_writer_pretty(&mut w, &rows).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(ExitCode::SUCCESS)
}

pub fn sweep(path: &Path, g: &GridOpts, opts: &CommonOpts) -> Result<ExitCode> {
    let config = load(path)?;
    let points = grid(g, &default_grid())?;
    let scenarios = points
        .iter()
        .map(|&db| config.scenario_at(db))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(Failure::Config)?;
    let eo = engine_options(opts);
    let kinds = opts.metric.kinds();
    let engines = engines(opts, &[Engine::Auto]);
    let results: Vec<_> = scenarios
        .par_iter()
        .map(|s| evaluate(s, &kinds, &engines, &eo))
        .collect::<Result<_>>()?;
    let mut w = csv_writer(opts)?;
    w.write_record(["gamma_b_db", "metric", "engine", "value", "error_estimate"])?;
    for (db, rows) in points.iter().zip(results) {
        for (k, r) in rows {
            w.write_record([num(*db), k.name().into(), r.engine.name().into(), num(r.value), num(r.error_estimate)])?;
        }
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// How an engine is compared against quadrature.
#[derive(Clone, Copy)]
enum Measure {
    Relative(f64),
    Absolute(f64),
    Sigmas(f64),
}

fn tolerance(engine: Engine, kind: MetricKind) -> Measure {
    match (engine, kind) {
        (Engine::ExactInteger, MetricKind::Asc) => Measure::Relative(1e-6),
        (Engine::ExactInteger, _) => Measure::Relative(1e-8),
        (Engine::ExactReal, MetricKind::Sop) => Measure::Absolute(1e-5),
        (Engine::ExactReal, _) => Measure::Relative(1e-3),
        (Engine::MonteCarlo, _) => Measure::Sigmas(MC_SIGMAS),
        _ => Measure::Relative(1e-2),
    }
}

fn default_validation_engines(s: &SecrecyScenario) -> Vec<Engine> {
    match (s.main.integer_m(), s.eve.integer_m()) {
        (Some(_), Some(_)) => vec![Engine::ExactInteger],
        (None, None) => vec![Engine::ExactReal],
        _ => vec![],
    }
}

pub fn validate(path: &Path, opts: &CommonOpts) -> Result<ExitCode> {
    let s = load(path)?.scenario().map_err(Failure::Config)?;
    let eo = engine_options(opts);
    let engines: Vec<Engine> = engines(opts, &default_validation_engines(&s))
        .into_iter()
        .map(|e| e.resolve(&s))
        .filter(|&e| e != Engine::Quadrature)
        .collect();
    let mut w = csv_writer(opts)?;
    w.write_record([
        "metric", "engine", "reference", "value", "reference_value", "measure", "delta", "tolerance",
        "status", "note",
    ])?;
    let mut failed = false;
    for kind in opts.metric.kinds() {
        let reference = metric(kind, &s, Engine::Quadrature, &eo)
            .map_err(|e| engine_failure(kind, Engine::Quadrature, e))?
            .value;
        for &engine in &engines {
            let outcome = if engine == Engine::MonteCarlo {
                Ok(evaluate(&s, &[kind], &[engine], &eo)?.remove(0).1)
            } else {
                metric(kind, &s, engine, &eo)
            };
            let r = match outcome {
                Ok(r) => r,
                Err(e @ (Error::NotApplicable(_) | Error::ContourViolation(_) | Error::NonConvergence { .. })) => {
                    w.write_record([
                        kind.name(), engine.name(), "quadrature", "", &num(reference), "", "", "",
                        "SKIP", &e.to_string(),
                    ])?;
                    continue;
                }
                Err(e) => return Err(engine_failure(kind, engine, e)),
            };
            let (measure, delta, tol) = match tolerance(engine, kind) {
                Measure::Relative(t) => ("relative", ((r.value - reference) / reference).abs(), t),
                Measure::Absolute(t) => ("absolute", (r.value - reference).abs(), t),
                Measure::Sigmas(t) => ("sigmas", (r.value - reference).abs() / r.error_estimate, t),
            };
            let pass = delta <= tol;
            failed |= !pass;
            w.write_record([
                kind.name(),
                engine.name(),
                "quadrature",
                &num(r.value),
                &num(reference),
                measure,
                &num(delta),
                &num(tol),
                if pass { "PASS" } else { "FAIL" },
                &r.notes.join("; "),
            ])?;
        }
    }
    w.flush()?;
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

pub fn table1(row: Option<usize>, opts: &CommonOpts) -> Result<ExitCode> {
    let rows: Vec<_> = table1_rows().into_iter().filter(|r| row.is_none_or(|n| r.row == n)).collect();
    if rows.is_empty() {
        return Err(Failure::Config(format!("no table row {}", row.unwrap_or(0))));
    }
    let mut w = csv_writer(opts)?;
    w.write_record([
        "row", "k_b1", "k_b2", "k_e1", "k_e2", "m_b", "m_e", "gamma_b_db", "gamma_e_db", "target_rate",
        "n_l", "epsilon", "reference_n_l", "reference_epsilon",
    ])?;
    for r in rows {
        let s = r.scenario().map_err(|e| Failure::Config(e.to_string()))?;
        let eps = |n| {
            sop_truncation_error(&s, n).map_err(|e| engine_failure(MetricKind::Sop, Engine::ExactReal, e))
        };
        let mut found = None;
        for n in 1..=TABLE_MAX_TERMS {
            let e = eps(n)?;
            if e < TABLE_EPS_TARGET {
                found = Some((n, e));
                break;
            }
        }
        let (n_l, epsilon) = match found {
            Some((n, e)) => (n.to_string(), num(e)),
            None => (String::new(), String::new()),
        };
        w.write_record([
            r.row.to_string(),
            num(r.main.k1),
            num(r.main.k2),
            num(r.eve.k1),
            num(r.eve.k2),
            num(r.main.m),
            num(r.eve.m),
            num(r.main_snr_db),
            num(r.eve_snr_db),
            num(r.target_rate),
            n_l,
            epsilon,
            r.n_l.to_string(),
            num(r.epsilon),
        ])?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn figure(id: &str, g: &GridOpts, opts: &CommonOpts) -> Result<ExitCode> {
    let preset = figure_preset(id).ok_or_else(|| Failure::Config(format!("unknown figure '{id}'")))?;
    let points = grid(g, &preset.grid_db)?;
    let engine = opts.engines.first().copied().unwrap_or(Engine::Auto);
    let eo = engine_options(opts);
    let kind = preset.metric;
    let jobs: Vec<_> = preset
        .curves
        .iter()
        .flat_map(|c| points.iter().map(move |&db| (c, db)))
        .collect();
    let rows: Vec<Vec<String>> = jobs
        .par_iter()
        .map(|&(c, db)| {
            let s = c.scenario(db).map_err(|e| Failure::Config(e.to_string()))?;
            let r = metric(kind, &s, engine, &eo).map_err(|e| engine_failure(kind, engine, e))?;
            let mut row = vec![
                preset.id.to_string(),
                c.label.clone(),
                num(db),
                kind.name().to_string(),
                r.engine.name().to_string(),
                num(r.value),
                num(r.error_estimate),
            ];
            if opts.mc {
                let est = simulate(&s, &eo.mc);
                let (v, se) = match kind {
                    MetricKind::Asc => (est.asc, est.stderr_asc),
                    MetricKind::Sop => (est.sop, est.stderr_sop),
                    MetricKind::Pnz => (est.pnz, est.stderr_pnz),
                };
                row.extend([num(v), num(se), num((r.value - v) / se)]);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut w = csv_writer(opts)?;
    let mut header = vec!["figure", "curve", "gamma_b_db", "metric", "engine", "value", "error_estimate"];
    if opts.mc {
        header.extend(["mc_value", "mc_stderr", "mc_z"]);
    }
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}
