//! High-SNR forms of the ASC and PNZ.
//!
//! As γ̄_B grows, I₁ → E[ln γ_B] = Σ_i Q_{B,i}(ln ρ̄_{B,i} + δ_i) and
//! I₂ → f_B(0)·E[γ_E ln(1+γ_E)], while I₃ is kept exact. For the PNZ, Eve's
//! CDF is replaced by its leading residue, a Gamma(m_E, ρ̄_{E,j}) CDF.

use super::integer::{gamma_log_moment_integer, log_moment_g};
use super::mellin::{
    build, log_mean_branch, log_variable, shadow_variable, Accumulator,
};
use super::{Engine, MetricResult, SecrecyScenario};
use crate::channel::{b_coefficients, ArsParams};
use crate::specfun::{digamma, fox_h_multi, gamma_real, ln_gamma_real, GammaTerm, VariableTerms};
use crate::{Error, Result};

/// Default truncation order of the high-SNR SOP series.
pub const ASYMPTOTIC_SERIES_TERMS: usize = 30;

/// lim ASC / log₂ γ̄_B.
pub fn high_snr_slope() -> f64 {
    std::f64::consts::LN_2
}

/// lim PNZ as γ̄_B → ∞.
pub fn pnz_limit() -> f64 {
    1.0
}

/// Branch r of a link as a Gamma mixture when m is an integer or K = 0.
fn gamma_mixture(link: &ArsParams, r: usize) -> Option<Vec<f64>> {
    if link.k(r) == 0.0 {
        return Some(vec![1.0]);
    }
    link.integer_m().map(|m| b_coefficients(m, link.k(r)))
}

/// δ_r = E[ln(γ/ρ̄_r)] on branch r of a link.
///
/// Gamma mixtures give Σ_n B_n ψ(m−n); real m uses
/// E[ln(1+x)] − E[ln(1+1/x)] for x = γ/ρ̄_r, both bivariate Fox H.
pub fn log_snr_offset(link: &ArsParams, r: usize, tolerance: f64) -> Result<f64> {
    if let Some(b) = gamma_mixture(link, r) {
        let m = b.len();
        return Ok(b.iter().enumerate().map(|(n, w)| w * digamma((m - n) as f64)).sum());
    }
    let (m, k) = (link.m, link.k(r));
    let z = k / m;
    let pref = ((m - 1.0) * (m / (m + k)).ln()).exp() / gamma_real(1.0 - m)?;
    let (_, near) = log_mean_branch(m, k, 1.0, tolerance)?;
    let (shadow, c1) = shadow_variable(m);
    let inverse_log = (
        VariableTerms::new(&[(0.0, 1.0), (0.0, 1.0), (1.0, -1.0)], &[(1.0, 1.0)]),
        0.5 * (1.0 - c1),
    );
    let spec = build(
        vec![(shadow, c1), inverse_log],
        vec![GammaTerm::new(1.0, &[-1.0, -1.0])],
        vec![],
        tolerance,
    )?;
    let far = fox_h_multi(&spec, &[z, 1.0])?;
    Ok(pref * (near.value - far.value))
}

/// (E[ln(1+γ)], E[γ ln(1+γ)]) on branch r, with refinement notes.
fn eve_branch_moments(link: &ArsParams, r: usize, tol: f64, acc: &mut Accumulator) -> Result<(f64, f64)> {
    let d = link.derive();
    if let Some(b) = gamma_mixture(link, r) {
        let m = b.len();
        let rho = d.rho_bar[r];
        let mut i3 = 0.0;
        for (n, w) in b.iter().enumerate() {
            if *w > 0.0 {
                let a = m - n;
                i3 += w * log_moment_g(rho, a)?.0 / ln_gamma_real(a as f64).exp();
            }
        }
        return Ok((i3, gamma_log_moment_integer(&b, rho)?));
    }
    let (m, k, rho) = (link.m, link.k(r), d.rho_bar[r]);
    let (pref, h) = log_mean_branch(m, k, rho, tol)?;
    acc.check(&format!("I3 branch {}", r + 1), &h);
    let spec = build(
        vec![shadow_variable(m), log_variable()],
        vec![GammaTerm::new(2.0, &[-1.0, -1.0])],
        vec![],
        tol,
    )?;
    let hm = fox_h_multi(&spec, &[k / m, rho])?;
    acc.check(&format!("M branch {}", r + 1), &hm);
    Ok((pref * h.value, pref * rho * hm.value))
}

/// f_B(0) = Σ_i Q_{B,i}·c_{B,i}/β_B.
fn density_at_zero(link: &ArsParams) -> f64 {
    let d = link.derive();
    (0..2).map(|i| d.q[i] * d.c[i]).sum::<f64>() / d.beta
}

/// High-SNR ASC.
pub fn asc_asymptotic(s: &SecrecyScenario, tolerance: Option<f64>) -> Result<MetricResult> {
    let tol = tolerance.unwrap_or(1e-6);
    let (db, de) = (s.main.derive(), s.eve.derive());
    let mut acc = Accumulator::default();
    let mut i1 = 0.0;
    for i in 0..2 {
        if db.q[i] > 0.0 {
            i1 += db.q[i] * (db.rho_bar[i].ln() + log_snr_offset(&s.main, i, tol)?);
        }
    }
    let (mut i3, mut moment) = (0.0, 0.0);
    for j in 0..2 {
        if de.q[j] > 0.0 {
            let (a, m) = eve_branch_moments(&s.eve, j, tol, &mut acc)?;
            i3 += de.q[j] * a;
            moment += de.q[j] * m;
        }
    }
    let i2 = density_at_zero(&s.main) * moment;
    let mut r = MetricResult::new(i1 + i2 - i3, Engine::Asymptotic, 0.0).with_note(format!(
        "I1 = {i1:.12e}, I2 = {i2:.12e}, I3 = {i3:.12e}"
    ));
    r.notes.extend(acc.notes);
    Ok(r.checked_asc())
}

/// High-SNR PNZ: Σ_{i,j} Q_{B,i} Q_{E,j} P(γ_{B,i} > Gamma(m_E, ρ̄_{E,j})),
/// each a bivariate Fox H.
pub fn pnz_asymptotic(s: &SecrecyScenario, tolerance: Option<f64>) -> Result<MetricResult> {
    let (bob, eve) = (&s.main, &s.eve);
    if bob.integer_m().is_some() {
        return Err(Error::NotApplicable(format!(
            "main link has integer m = {}; the asymptotic PNZ carries 1/Γ(1−m_B)",
            bob.m
        )));
    }
    let tol = tolerance.unwrap_or(1e-6);
    let (db, de) = (bob.derive(), eve.derive());
    let (mb, me) = (bob.m, eve.m);
    let mut acc = Accumulator::default();
    for i in 0..2 {
        if db.q[i] == 0.0 {
            continue;
        }
        if bob.k(i) == 0.0 {
            return Err(Error::NotApplicable("main link has an active K = 0 branch".into()));
        }
        for j in 0..2 {
            if de.q[j] == 0.0 {
                continue;
            }
            if eve.k(j) == 0.0 {
                return Err(Error::NotApplicable(
                    "eavesdropper has an active K = 0 branch; its CDF has no Gamma leading term".into(),
                ));
            }
            let ratio = db.rho_bar[i] / de.rho_bar[j];
            let gamma_cdf = (
                VariableTerms::new(&[(0.0, 1.0), (me, -1.0)], &[(1.0 + me, -1.0)]),
                0.5 * me,
            );
            let spec = build(
                vec![gamma_cdf, shadow_variable(mb)],
                vec![GammaTerm::new(1.0 + me, &[-1.0, -1.0])],
                vec![],
                tol,
            )?;
            let h = fox_h_multi(&spec, &[ratio, bob.k(i) / mb])?;
            let pref = db.q[i] * de.q[j] * (me * ratio.ln() + (mb - 1.0) * (mb / (mb + bob.k(i))).ln()).exp()
                / (gamma_real(me)? * gamma_real(1.0 - mb)?);
            acc.add(&format!("D({},{})", i + 1, j + 1), pref, &h);
        }
    }
    let mut r = MetricResult::new(acc.value, Engine::Asymptotic, acc.error);
    r.notes = acc.notes;
    Ok(r.checked_probability())
}
