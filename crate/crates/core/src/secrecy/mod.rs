//! Secrecy metrics for a main (Bob) and eavesdropper (Eve) ARS link pair.
//!
//! Every metric is available from several engines; [`metric`] dispatches
//! between them. The quadrature engine evaluates the defining integrals and
//! is valid for every parameter set, so it is the reference the closed forms
//! are tested against.

use std::fmt;
use std::str::FromStr;

use crate::channel::ArsParams;
use crate::mc::{simulate, McConfig};
use crate::quadrature::QuadConfig;
use crate::{Error, Result};

mod asymptotic;
mod integer;
mod mellin;
mod quad;
mod series;

pub use asymptotic::{
    asc_asymptotic, high_snr_slope, log_snr_offset, pnz_asymptotic, pnz_limit,
    ASYMPTOTIC_SERIES_TERMS,
};
pub use integer::{asc_exact_integer, log_moment_g, pnz_exact_integer, sop_exact_integer};
pub use mellin::{asc_exact_real, i3_exact_real, pnz_exact_real};
pub use quad::{asc_components_quadrature, asc_quadrature, pnz_quadrature, sop_quadrature, AscComponents};
pub use series::{
    secrecy_diversity_order, shadowed_moment_g, sop_asymptotic, sop_series_real,
    sop_truncation_error, SopSeries,
};

/// A main link, an eavesdropper link and a target secrecy rate R_t in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyScenario {
    pub main: ArsParams,
    pub eve: ArsParams,
    pub target_rate: f64,
}

impl SecrecyScenario {
    pub fn new(main: ArsParams, eve: ArsParams, target_rate: f64) -> Result<Self> {
        if !(target_rate >= 0.0) || !target_rate.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "target rate {target_rate} must be a finite non-negative number of bits"
            )));
        }
        Ok(SecrecyScenario { main, eve, target_rate })
    }

    /// R_s = 2^{R_t}.
    pub fn rs(&self) -> f64 {
        self.target_rate.exp2()
    }

    /// The same scenario with the links exchanged.
    pub fn swapped(&self) -> Self {
        SecrecyScenario { main: self.eve, eve: self.main, target_rate: self.target_rate }
    }

    pub fn with_main_snr(&self, mean_snr: f64) -> Result<Self> {
        Ok(SecrecyScenario { main: self.main.with_mean_snr(mean_snr)?, ..*self })
    }

    pub fn with_target_rate(&self, target_rate: f64) -> Result<Self> {
        SecrecyScenario::new(self.main, self.eve, target_rate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Asc,
    Sop,
    Pnz,
}

impl MetricKind {
    pub const ALL: [MetricKind; 3] = [MetricKind::Asc, MetricKind::Sop, MetricKind::Pnz];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Asc => "asc",
            MetricKind::Sop => "sop",
            MetricKind::Pnz => "pnz",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "asc" => Ok(MetricKind::Asc),
            "sop" => Ok(MetricKind::Sop),
            "pnz" => Ok(MetricKind::Pnz),
            other => Err(Error::InvalidParameter(format!("unknown metric '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Exact-integer when both m are integers, quadrature otherwise.
    Auto,
    ExactReal,
    ExactInteger,
    Asymptotic,
    Quadrature,
    MonteCarlo,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::ExactReal => "exact-real",
            Engine::ExactInteger => "exact-integer",
            Engine::Asymptotic => "asymptotic",
            Engine::Quadrature => "quadrature",
            Engine::MonteCarlo => "monte-carlo",
        }
    }

    /// The engine [`Engine::Auto`] selects for a scenario.
    pub fn resolve(self, s: &SecrecyScenario) -> Engine {
        match self {
            Engine::Auto if s.main.integer_m().is_some() && s.eve.integer_m().is_some() => {
                Engine::ExactInteger
            }
            Engine::Auto => Engine::Quadrature,
            e => e,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "auto" => Ok(Engine::Auto),
            "exact-real" | "real" => Ok(Engine::ExactReal),
            "exact-integer" | "integer" => Ok(Engine::ExactInteger),
            "asymptotic" => Ok(Engine::Asymptotic),
            "quadrature" | "quad" => Ok(Engine::Quadrature),
            "monte-carlo" | "mc" => Ok(Engine::MonteCarlo),
            other => Err(Error::InvalidParameter(format!("unknown engine '{other}'"))),
        }
    }
}

/// A metric value, the engine that produced it and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricResult {
    pub value: f64,
    pub engine: Engine,
    pub error_estimate: f64,
    pub notes: Vec<String>,
}

/// Overshoot below which a value is clamped into its valid range.
const CLAMP_SLACK: f64 = 1e-9;

impl MetricResult {
    pub fn new(value: f64, engine: Engine, error_estimate: f64) -> Self {
        MetricResult { value, engine, error_estimate: error_estimate.abs(), notes: Vec::new() }
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.notes.push(note);
        self
    }

    pub(crate) fn checked_asc(mut self) -> Self {
        if self.value < 0.0 && self.value > -CLAMP_SLACK {
            self.notes.push(format!("clamped ASC {:e} to 0", self.value));
            self.value = 0.0;
        }
        self
    }

    pub(crate) fn checked_probability(mut self) -> Self {
        if self.value < 0.0 && self.value > -CLAMP_SLACK {
            self.notes.push(format!("clamped probability {:e} to 0", self.value));
            self.value = 0.0;
        } else if self.value > 1.0 && self.value < 1.0 + CLAMP_SLACK {
            self.notes.push(format!("clamped probability 1 + {:e} to 1", self.value - 1.0));
            self.value = 1.0;
        }
        self
    }
}

/// Knobs shared by the engines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EngineOptions {
    pub quad: QuadConfig,
    /// Series truncation for the real-m SOP engines; `None` converges automatically.
    pub n_terms: Option<usize>,
    /// Overrides the per-metric Fox H tolerance.
    pub foxh_tolerance: Option<f64>,
    pub mc: McConfig,
}


/// Evaluates one metric with the requested engine.
pub fn metric(
    kind: MetricKind,
    s: &SecrecyScenario,
    engine: Engine,
    opts: &EngineOptions,
) -> Result<MetricResult> {
    use MetricKind::*;
    match (engine.resolve(s), kind) {
        (Engine::ExactInteger, Asc) => asc_exact_integer(s),
        (Engine::ExactInteger, Sop) => sop_exact_integer(s),
        (Engine::ExactInteger, Pnz) => pnz_exact_integer(s),
        (Engine::ExactReal, Asc) => asc_exact_real(s, opts.foxh_tolerance),
        (Engine::ExactReal, Sop) => sop_series_real(s, opts.n_terms),
        (Engine::ExactReal, Pnz) => pnz_exact_real(s, opts.foxh_tolerance),
        (Engine::Asymptotic, Asc) => asc_asymptotic(s, opts.foxh_tolerance),
        (Engine::Asymptotic, Sop) => {
            sop_asymptotic(s, opts.n_terms.unwrap_or(ASYMPTOTIC_SERIES_TERMS))
        }
        (Engine::Asymptotic, Pnz) => pnz_asymptotic(s, opts.foxh_tolerance),
        (Engine::Quadrature, Asc) => asc_quadrature(s, &opts.quad),
        (Engine::Quadrature, Sop) => sop_quadrature(s, &opts.quad),
        (Engine::Quadrature, Pnz) => pnz_quadrature(s, &opts.quad),
        (Engine::MonteCarlo, k) => {
            let est = simulate(s, &opts.mc);
            let (v, e) = match k {
                Asc => (est.asc, est.stderr_asc),
                Sop => (est.sop, est.stderr_sop),
                Pnz => (est.pnz, est.stderr_pnz),
            };
            Ok(MetricResult::new(v, Engine::MonteCarlo, e).with_note(format!(
                "{} samples, seed {}",
                opts.mc.n_samples, opts.mc.seed
            )))
        }
        (Engine::Auto, _) => unreachable!("resolve never returns Auto"),
    }
}
