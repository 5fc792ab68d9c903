//! Mellin–Barnes (Fox H) forms for real shadowing parameters.
//!
//! Each density factor contributes one contour variable: the LoS shadowing
//! 1F1 kernel gives Γ(r)Γ(1−m−r)/Γ(1−r) with argument K/m, the eavesdropper
//! CDF's Φ2 kernel gives two variables, and ln(1+γ) gives
//! Γ(1+s)Γ(−s)²/Γ(1−s). The contours sit at the midpoints of their pole gaps,
//! which exist only for m < 1.

use super::{Engine, MetricResult, SecrecyScenario};
use crate::channel::ArsParams;
use crate::specfun::{fox_h_multi, gamma_real, FoxHResult, FoxHSpec, GammaTerm, VariableTerms};
use crate::{Error, Result};

/// Γ(r)Γ(1−m−r)/Γ(1−r): the shadowed-LoS kernel, argument K/m.
pub(super) fn shadow_variable(m: f64) -> (VariableTerms, f64) {
    (
        VariableTerms::new(&[(0.0, 1.0), (1.0 - m, -1.0)], &[(1.0, -1.0)]),
        0.5 * (1.0 - m),
    )
}

/// Γ(1+s)Γ(−s)²/Γ(1−s): ln(1+x) as a Meijer G kernel.
pub(super) fn log_variable() -> (VariableTerms, f64) {
    (
        VariableTerms::new(&[(1.0, 1.0), (0.0, -1.0), (0.0, -1.0)], &[(1.0, -1.0)]),
        -0.5,
    )
}

/// Γ(r)Γ(b−r), contour at b/2.
pub(super) fn beta_variable(b: f64) -> (VariableTerms, f64) {
    (VariableTerms::new(&[(0.0, 1.0), (b, -1.0)], &[]), 0.5 * b)
}

pub(super) fn build(
    vars: Vec<(VariableTerms, f64)>,
    numerator: Vec<GammaTerm>,
    denominator: Vec<GammaTerm>,
    tolerance: f64,
) -> Result<FoxHSpec> {
    let (v, c): (Vec<_>, Vec<_>) = vars.into_iter().unzip();
    Ok(FoxHSpec::new(v, numerator, denominator, c)?.with_tolerance(tolerance))
}

/// Rejects links the straight-contour forms cannot represent.
pub(super) fn require_real_form(link: &ArsParams, role: &str) -> Result<()> {
    if link.integer_m().is_some() {
        return Err(Error::NotApplicable(format!(
            "{role} link has integer m = {}; the real-m forms carry 1/Γ(1−m), use exact-integer",
            link.m
        )));
    }
    if link.m >= 1.0 {
        return Err(Error::ContourViolation(format!(
            "{role} link has m = {} ≥ 1: Γ(1−m−r) and Γ(r) leave no common strip",
            link.m
        )));
    }
    if (link.p > 0.0 && link.k1 == 0.0) || (link.p < 1.0 && link.k2 == 0.0) {
        return Err(Error::NotApplicable(format!(
            "{role} link has an active K = 0 branch; its LoS kernel degenerates (argument K/m = 0)"
        )));
    }
    Ok(())
}

/// Accumulates Fox H evaluations into a weighted sum with diagnostics.
#[derive(Default)]
pub(super) struct Accumulator {
    pub value: f64,
    pub error: f64,
    pub notes: Vec<String>,
}

impl Accumulator {
    pub fn add(&mut self, label: &str, weight: f64, h: &FoxHResult) {
        self.value += weight * h.value;
        self.error += (weight * h.error_estimate).abs();
        self.check(label, h);
    }

    /// Records a refinement warning without accumulating the value.
    pub fn check(&mut self, label: &str, h: &FoxHResult) {
        if !h.tolerance_met {
            self.notes.push(format!(
                "{label}: Fox H refinement difference {:.3e} exceeds tolerance {:.0e}",
                h.relative_error(),
                h.tolerance
            ));
        }
    }
}

/// ∫ ln(1+γ) f(γ) dγ for one real-m branch, as a bivariate Fox H.
pub(super) fn log_mean_branch(m: f64, k: f64, rho: f64, tol: f64) -> Result<(f64, FoxHResult)> {
    let spec = build(
        vec![shadow_variable(m), log_variable()],
        vec![GammaTerm::new(1.0, &[-1.0, -1.0])],
        vec![],
        tol,
    )?;
    let h = fox_h_multi(&spec, &[k / m, rho])?;
    let pref = ((m - 1.0) * (m / (m + k)).ln()).exp() / gamma_real(1.0 - m)?;
    Ok((pref, h))
}

/// I₃ = E[ln(1+γ_E)] for a real-m eavesdropper.
pub fn i3_exact_real(eve: &ArsParams, tolerance: f64) -> Result<MetricResult> {
    require_real_form(eve, "eve")?;
    let d = eve.derive();
    let mut acc = Accumulator::default();
    for j in 0..2 {
        if d.q[j] == 0.0 {
            continue;
        }
        let (pref, h) = log_mean_branch(eve.m, eve.k(j), d.rho_bar[j], tolerance)?;
        acc.add(&format!("I3 branch {}", j + 1), d.q[j] * pref, &h);
    }
    let mut r = MetricResult::new(acc.value, Engine::ExactReal, acc.error);
    r.notes = acc.notes;
    Ok(r)
}

/// Q_Bi·Q_Ej·∫ F_Ej(γ) f_Bi(γ) [ln(1+γ)] dγ as a 3- or 4-variate Fox H.
fn cross_term(
    bob: &ArsParams,
    i: usize,
    eve: &ArsParams,
    j: usize,
    with_log: bool,
    tol: f64,
) -> Result<(f64, FoxHResult)> {
    let (db, de) = (bob.derive(), eve.derive());
    let (mb, me) = (bob.m, eve.m);
    let (rb, re) = (db.rho_bar[i], de.rho_bar[j]);
    let mut vars = vec![
        beta_variable(1.0 - me),
        beta_variable(me),
        shadow_variable(mb),
    ];
    let mut args = vec![rb / de.beta, rb / re, bob.k(i) / mb];
    let mut outer = vec![-1.0, -1.0, -1.0];
    let mut inner = vec![-1.0, -1.0, 0.0];
    if with_log {
        vars.push(log_variable());
        args.push(rb);
        outer.push(-1.0);
        inner.push(0.0);
    }
    let spec = build(
        vars,
        vec![GammaTerm::new(2.0, &outer)],
        vec![GammaTerm::new(2.0, &inner)],
        tol,
    )?;
    let h = fox_h_multi(&spec, &args)?;
    let pref = db.q[i] * de.q[j] * de.c[j] * db.c[i] * rb * rb
        / (de.beta * db.beta * gamma_real(1.0 - me)? * gamma_real(me)? * gamma_real(1.0 - mb)?);
    Ok((pref, h))
}

fn cross_sum(
    bob: &ArsParams,
    eve: &ArsParams,
    with_log: bool,
    tol: f64,
    label: &str,
    acc: &mut Accumulator,
) -> Result<()> {
    let (qb, qe) = ([bob.p, 1.0 - bob.p], [eve.p, 1.0 - eve.p]);
    for i in 0..2 {
        for j in 0..2 {
            if qb[i] == 0.0 || qe[j] == 0.0 {
                continue;
            }
            let (pref, h) = cross_term(bob, i, eve, j, with_log, tol)?;
            acc.add(&format!("{label}({},{})", i + 1, j + 1), pref, &h);
        }
    }
    Ok(())
}

/// PNZ for real m on both links: Σ_{i,j} D_{i,j}, each a trivariate Fox H.
pub fn pnz_exact_real(s: &SecrecyScenario, tolerance: Option<f64>) -> Result<MetricResult> {
    require_real_form(&s.main, "main")?;
    require_real_form(&s.eve, "eve")?;
    let mut acc = Accumulator::default();
    cross_sum(&s.main, &s.eve, false, tolerance.unwrap_or(1e-4), "D", &mut acc)?;
    let mut r = MetricResult::new(acc.value, Engine::ExactReal, acc.error);
    r.notes = acc.notes;
    Ok(r.checked_probability())
}

/// ASC for real m on both links: I₁ = ΣR_{i,j} and I₂ = ΣT_{i,j} as
/// four-variate Fox H functions, I₃ bivariate.
///
/// Experimental: the convergence region of the four-variate instances is not
/// established in general; each term's refinement difference is reported.
pub fn asc_exact_real(s: &SecrecyScenario, tolerance: Option<f64>) -> Result<MetricResult> {
    require_real_form(&s.main, "main")?;
    require_real_form(&s.eve, "eve")?;
    let tol = tolerance.unwrap_or(1e-3);
    let mut i1 = Accumulator::default();
    cross_sum(&s.main, &s.eve, true, tol, "R", &mut i1)?;
    let mut i2 = Accumulator::default();
    cross_sum(&s.eve, &s.main, true, tol, "T", &mut i2)?;
    let i3 = i3_exact_real(&s.eve, 1e-6)?;
    let value = i1.value + i2.value - i3.value;
    let mut r = MetricResult::new(
        value,
        Engine::ExactReal,
        i1.error + i2.error + i3.error_estimate,
    )
    .with_note("experimental four-variate Fox H evaluation".to_string())
    .with_note(format!(
        "I1 = {:.12e}, I2 = {:.12e}, I3 = {:.12e}",
        i1.value, i2.value, i3.value
    ));
    r.notes.extend(i1.notes);
    r.notes.extend(i2.notes);
    r.notes.extend(i3.notes);
    Ok(r.checked_asc())
}
