//! Closed forms for integer shadowing on both links.
//!
//! With integer m every branch density is a finite mixture of Gamma
//! densities, Σ_n B_n·Gamma(m−n, ρ̄), and every integral reduces to finite
//! sums of elementary terms or of G^{1,3}_{3,2} log-moments.

use std::collections::HashMap;

use super::{Engine, MetricResult, SecrecyScenario};
use crate::channel::ArsParams;
use crate::specfun::{ln_factorial, ln_gamma_real, meijer_g_detailed, FoxHSpec};
use crate::{Error, Result};

/// Gamma-mixture view of one link: for each branch, (weight, shape, scale) triples.
struct Mixture {
    terms: Vec<(f64, usize, f64)>,
}

impl Mixture {
    fn new(link: &ArsParams, role: &str) -> Result<Self> {
        let d = link.derive();
        let b = d.b_coeff.ok_or_else(|| {
            Error::NotApplicable(format!(
                "{role} link has non-integer m = {}; use the exact-real or quadrature engine",
                link.m
            ))
        })?;
        let m = b[0].len();
        let mut terms = Vec::new();
        for r in 0..2 {
            if d.q[r] == 0.0 {
                continue;
            }
            for (n, w) in b[r].iter().enumerate() {
                if *w > 0.0 {
                    terms.push((d.q[r] * w, m - n, d.rho_bar[r]));
                }
            }
        }
        Ok(Mixture { terms })
    }
}

/// G^{1,3}_{3,2}(ρ | 1−b, 1, 1; 1, 0) = ρ^{−b} ∫₀^∞ x^{b−1} e^{−x/ρ} ln(1+x) dx.
pub fn log_moment_g(rho: f64, b: usize) -> Result<(f64, f64)> {
    let spec = FoxHSpec::meijer(1, 3, &[1.0 - b as f64, 1.0, 1.0], &[1.0, 0.0])?;
    let v = meijer_g_detailed(&spec, rho)?;
    Ok((v.value, v.error_estimate))
}

#[derive(Default)]
struct GCache {
    values: HashMap<(u64, usize), f64>,
    error: f64,
}

impl GCache {
    fn get(&mut self, rho: f64, b: usize) -> Result<f64> {
        if let Some(v) = self.values.get(&(rho.to_bits(), b)) {
            return Ok(*v);
        }
        let (v, e) = log_moment_g(rho, b)?;
        self.error = self.error.max(e / v.abs().max(f64::MIN_POSITIVE));
        self.values.insert((rho.to_bits(), b), v);
        Ok(v)
    }
}

/// E[ln(1+γ)] of a mixture.
fn log_mean(u: &Mixture, cache: &mut GCache) -> Result<f64> {
    let mut total = 0.0;
    for &(w, a, rho) in &u.terms {
        total += w * cache.get(rho, a)? / ln_gamma_real(a as f64).exp();
    }
    Ok(total)
}

/// ∫ ln(1+γ) f_U(γ) (1 − F_V(γ)) dγ.
fn log_cross(u: &Mixture, v: &Mixture, cache: &mut GCache) -> Result<f64> {
    let mut total = 0.0;
    for &(wu, a, ru) in &u.terms {
        for &(wv, av, rv) in &v.terms {
            let rc = ru * rv / (ru + rv);
            let (lu, lv) = ((rv / (ru + rv)).ln(), (ru / (ru + rv)).ln());
            for k in 0..av {
                let coef = (a as f64 * lu + k as f64 * lv
                    - ln_gamma_real(a as f64)
                    - ln_factorial(k))
                .exp();
                total += wu * wv * coef * cache.get(rc, a + k)?;
            }
        }
    }
    Ok(total)
}

/// ASC for integer m on both links.
pub fn asc_exact_integer(s: &SecrecyScenario) -> Result<MetricResult> {
    let b = Mixture::new(&s.main, "main")?;
    let e = Mixture::new(&s.eve, "eve")?;
    let mut cache = GCache::default();
    let mean_b = log_mean(&b, &mut cache)?;
    let i3 = log_mean(&e, &mut cache)?;
    let cross_be = log_cross(&b, &e, &mut cache)?;
    let cross_eb = log_cross(&e, &b, &mut cache)?;
    let i1 = mean_b - cross_be;
    let i2 = i3 - cross_eb;
    let value = i1 - cross_eb;
    let err = cache.error * (mean_b.abs() + i3.abs() + cross_be.abs() + cross_eb.abs());
    Ok(MetricResult::new(value, Engine::ExactInteger, err)
        .with_note(format!("I1 = {i1:.12e}, I2 = {i2:.12e}, I3 = {i3:.12e}"))
        .checked_asc())
}

/// P(Gamma(a, ρ_B) > Gamma(a', ρ_E)) for integer a, a'.
fn gamma_exceeds(a: usize, rb: f64, ae: usize, re: f64) -> f64 {
    let (lx, ly) = ((re / (rb + re)).ln(), (rb / (rb + re)).ln());
    let aef = ae as f64;
    (0..a)
        .map(|k| {
            let kf = k as f64;
            (ln_gamma_real(aef + kf) - ln_gamma_real(aef) - ln_factorial(k) + kf * lx + aef * ly)
                .exp()
        })
        .sum()
}

/// PNZ for integer m on both links.
pub fn pnz_exact_integer(s: &SecrecyScenario) -> Result<MetricResult> {
    let b = Mixture::new(&s.main, "main")?;
    let e = Mixture::new(&s.eve, "eve")?;
    let mut total = 0.0;
    for &(wb, a, rb) in &b.terms {
        for &(we, ae, re) in &e.terms {
            total += wb * we * gamma_exceeds(a, rb, ae, re);
        }
    }
    Ok(MetricResult::new(total, Engine::ExactInteger, 1e-15 * total).checked_probability())
}

/// SOP for integer m on both links.
///
/// 1 − SOP = E[P(γ_B > R_s γ_E + R_s − 1)], expanded with the binomial
/// theorem into finite sums of exponentials and powers.
pub fn sop_exact_integer(s: &SecrecyScenario) -> Result<MetricResult> {
    let b = Mixture::new(&s.main, "main")?;
    let e = Mixture::new(&s.eve, "eve")?;
    let rs = s.rs();
    let w = rs - 1.0;
    let mut survive = 0.0;
    for &(wb, a, rb) in &b.terms {
        for &(we, ae, re) in &e.terms {
            let aef = ae as f64;
            let ratio = rs * re / rb;
            let l1p = ratio.ln_1p();
            let mut inner = 0.0;
            for k in 0..a {
                for t in 0..=k {
                    let j = k - t;
                    let tf = t as f64;
                    let lw = if j == 0 { 0.0 } else { j as f64 * (w / rb).ln() };
                    let lr = if t == 0 { 0.0 } else { tf * ratio.ln() };
                    let log_term = lw - ln_factorial(j) + lr - ln_factorial(t)
                        + ln_gamma_real(aef + tf)
                        - ln_gamma_real(aef)
                        - (aef + tf) * l1p;
                    inner += log_term.exp();
                }
            }
            survive += wb * we * (-w / rb).exp() * inner;
        }
    }
    Ok(MetricResult::new(1.0 - survive, Engine::ExactInteger, 1e-15).checked_probability())
}

/// ∫ γ ln(1+γ) f(γ) dγ for one integer-m branch (weight excluded).
pub(crate) fn gamma_log_moment_integer(b: &[f64], rho: f64) -> Result<f64> {
    let m = b.len();
    let mut total = 0.0;
    for (n, w) in b.iter().enumerate() {
        if *w > 0.0 {
            let a = m - n;
            // Under Gamma(a, ρ), E[γ ln(1+γ)] = ρ·G(ρ | −a)/Γ(a).
            let (g, _) = log_moment_g(rho, a + 1)?;
            total += w * rho * g / ln_gamma_real(a as f64).exp();
        }
    }
    Ok(total)
}
