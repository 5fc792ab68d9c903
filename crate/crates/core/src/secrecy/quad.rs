//! Definition-level quadrature of the secrecy metrics, valid for any m.

use std::cell::RefCell;

use super::{Engine, MetricResult, SecrecyScenario};
use crate::channel::{ArsParams, PreparedArs};
use crate::quadrature::{integrate_semi_infinite_with_breaks, Integral, QuadConfig};
use crate::{Error, Result};

/// Natural scales of a link: β and the branch scales ρ̄_r.
fn scales(link: &ArsParams) -> Vec<f64> {
    let d = link.derive();
    let mut v = vec![d.beta];
    for r in 0..2 {
        if d.q[r] > 0.0 {
            v.push(d.rho_bar[r]);
        }
    }
    v
}

fn breaks(scales: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = scales
        .iter()
        .flat_map(|s| [1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0].map(|f| f * s))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Integrates `f`, turning the first density error into the result's error.
fn integrate<F>(f: F, cuts: &[f64], config: &QuadConfig) -> Result<Integral>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let g = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let r = integrate_semi_infinite_with_breaks(g, cuts, config);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    r
}

/// The three ASC integrals and J = ∫ ln(1+γ) f_E (1 − F_B) dγ = I₃ − I₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscComponents {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub j: f64,
    pub error_estimate: f64,
}

impl AscComponents {
    /// I₁ + I₂ − I₃, evaluated as I₁ − J.
    pub fn asc(&self) -> f64 {
        self.i1 - self.j
    }
}

/// I₁ = ∫ ln(1+γ) f_B F_E, I₂ = ∫ ln(1+γ) f_E F_B, I₃ = ∫ ln(1+γ) f_E.
pub fn asc_components_quadrature(s: &SecrecyScenario, config: &QuadConfig) -> Result<AscComponents> {
    let (b, e): (PreparedArs, PreparedArs) = (s.main.prepared(), s.eve.prepared());
    let mut sc = scales(&s.main);
    sc.extend(scales(&s.eve));
    let cuts = breaks(&sc);
    let i1 = integrate(|x| Ok(x.ln_1p() * b.pdf(x)? * e.cdf(x)?), &cuts, config)?;
    let j = integrate(|x| Ok(x.ln_1p() * e.pdf(x)? * b.sf(x)), &cuts, config)?;
    let i3 = integrate(|x| Ok(x.ln_1p() * e.pdf(x)?), &cuts, config)?;
    Ok(AscComponents {
        i1: i1.value,
        i2: i3.value - j.value,
        i3: i3.value,
        j: j.value,
        error_estimate: i1.error_estimate + j.error_estimate,
    })
}

pub fn asc_quadrature(s: &SecrecyScenario, config: &QuadConfig) -> Result<MetricResult> {
    let c = asc_components_quadrature(s, config)?;
    Ok(MetricResult::new(c.asc(), Engine::Quadrature, c.error_estimate)
        .with_note(format!(
            "I1 = {:.12e}, I2 = {:.12e}, I3 = {:.12e}",
            c.i1, c.i2, c.i3
        ))
        .checked_asc())
}

/// ∫ F_B(R_s γ + R_s − 1) f_E(γ) dγ.
pub fn sop_quadrature(s: &SecrecyScenario, config: &QuadConfig) -> Result<MetricResult> {
    let (b, e) = (s.main.prepared(), s.eve.prepared());
    let rs = s.rs();
    let mut sc = scales(&s.eve);
    sc.extend(scales(&s.main).iter().map(|x| x / rs));
    let r = integrate(|x| Ok(b.cdf(rs * x + rs - 1.0)? * e.pdf(x)?), &breaks(&sc), config)?;
    Ok(MetricResult::new(r.value, Engine::Quadrature, r.error_estimate).checked_probability())
}

/// ∫ F_E(γ) f_B(γ) dγ.
pub fn pnz_quadrature(s: &SecrecyScenario, config: &QuadConfig) -> Result<MetricResult> {
    let (b, e) = (s.main.prepared(), s.eve.prepared());
    let mut sc = scales(&s.main);
    sc.extend(scales(&s.eve));
    let r = integrate(|x| Ok(e.cdf(x)? * b.pdf(x)?), &breaks(&sc), config)?;
    Ok(MetricResult::new(r.value, Engine::Quadrature, r.error_estimate).checked_probability())
}
