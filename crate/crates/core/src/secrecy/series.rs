//! The real-m SOP series, its truncation error and its high-SNR form.
//!
//! Expanding Bob's CDF as a Φ2 double series and integrating term by term
//! against Eve's density gives
//!
//! P_o = Σ_{i,j} Q_{B,i} Q_{E,j} (c_{B,i}/β_B) Σ_{n1,n2} (1−m_B)_{n1}(m_B)_{n2}/(n1! n2!)
//!       (−1/β_B)^{n1} (−1/ρ̄_{B,i})^{n2} Σ_{n3} w^{N−n3} (R_s ρ̄_{E,j})^{n3} h_j(n3)/(N−n3)!
//!
//! with N = 1+n1+n2, w = R_s−1 and E[γ^n] = n!·ρ̄^n·h(n) on branch j. The
//! moments h(n) = 2F1(−n, m; 1; −K/m)/(1+K/m)^n carry the G^{1,2}_{2,2}
//! factors of the closed form.

use super::{Engine, MetricResult, SecrecyScenario};
use crate::specfun::{gamma_real, ln_factorial, ln_gamma_real};
use crate::{Error, Result};

/// h(n) = Σ_k C(n,k) p^k (1−p)^{n−k} (m)_k/k!, p = K/(m+K).
fn moment_table(m: f64, k: f64, n_max: usize) -> Vec<f64> {
    let p = k / (m + k);
    let mut out = Vec::with_capacity(n_max + 1);
    // ln((m)_j/j!)
    let lpoch: Vec<f64> = (0..=n_max)
        .map(|j| ln_gamma_real(m + j as f64) - ln_gamma_real(m) - ln_factorial(j))
        .collect();
    for n in 0..=n_max {
        if p == 0.0 {
            out.push(1.0);
            continue;
        }
        if p == 1.0 {
            out.push(lpoch[n].exp());
            continue;
        }
        let (lp, lq) = (p.ln(), (-p).ln_1p());
        let mut s = 0.0;
        for j in 0..=n {
            let lb = ln_factorial(n) - ln_factorial(j) - ln_factorial(n - j);
            s += (lb + j as f64 * lp + (n - j) as f64 * lq + lpoch[j]).exp();
        }
        out.push(s);
    }
    out
}

/// G^{1,2}_{2,2}(K/m | m, −n; 0, 0) = Γ(1−m)·n!·(1+K/m)^{m−1}·h(n).
pub fn shadowed_moment_g(m: f64, k: f64, n: usize) -> Result<f64> {
    let h = moment_table(m, k, n)[n];
    let z = k / m;
    Ok(gamma_real(1.0 - m)? * ln_factorial(n).exp() * (1.0 + z).powf(m - 1.0) * h)
}

/// One (i, j) block of the double series with its scaled coefficient tables.
struct Block {
    pref: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    t: Vec<f64>,
}

/// The real-m SOP series tabulated up to a maximum truncation order.
pub struct SopSeries {
    /// shells[N] = contribution of the terms with max(n1, n2) = N.
    shells: Vec<f64>,
    /// Largest single scaled term magnitude, for the cancellation diagnostic.
    peak: f64,
}

impl SopSeries {
    pub fn new(s: &SecrecyScenario, n_max: usize) -> Result<Self> {
        let (db, de) = (s.main.derive(), s.eve.derive());
        let rs = s.rs();
        let w = rs - 1.0;
        let mb = s.main.m;
        let mut blocks = Vec::new();
        for j in 0..2 {
            if de.q[j] == 0.0 {
                continue;
            }
            let re = rs * de.rho_bar[j];
            let sigma = w.max(re);
            let (x, y) = (w / sigma, re / sigma);
            let h = moment_table(s.eve.m, s.eve.k(j), 2 * n_max + 1);
            let lx = x.ln();
            let t: Vec<f64> = (0..=2 * n_max + 1)
                .map(|nn| {
                    (0..=nn)
                        .map(|n3| {
                            let d = nn - n3;
                            let xa = if d == 0 { 1.0 } else { (d as f64 * lx - ln_factorial(d)).exp() };
                            xa * y.powi(n3 as i32) * h[n3]
                        })
                        .sum()
                })
                .collect();
            for i in 0..2 {
                if db.q[i] == 0.0 {
                    continue;
                }
                let mut a = vec![1.0; n_max + 1];
                let mut b = vec![1.0; n_max + 1];
                for n in 0..n_max {
                    let nf = n as f64;
                    a[n + 1] = a[n] * (1.0 - mb + nf) / (nf + 1.0) * (-sigma / db.beta);
                    b[n + 1] = b[n] * (mb + nf) / (nf + 1.0) * (-sigma / db.rho_bar[i]);
                }
                blocks.push(Block {
                    pref: db.q[i] * de.q[j] * db.c[i] / db.beta * sigma,
                    a,
                    b,
                    t: t.clone(),
                });
            }
        }
        let mut shells = vec![0.0; n_max + 1];
        let mut peak: f64 = 0.0;
        for blk in &blocks {
            for (nn, shell) in shells.iter_mut().enumerate() {
                let mut acc = blk.a[nn] * blk.b[nn] * blk.t[1 + 2 * nn];
                peak = peak.max(acc.abs() * blk.pref);
                for k in 0..nn {
                    let u = blk.a[nn] * blk.b[k] * blk.t[1 + nn + k];
                    let v = blk.a[k] * blk.b[nn] * blk.t[1 + nn + k];
                    peak = peak.max(u.abs().max(v.abs()) * blk.pref);
                    acc += u + v;
                }
                *shell += blk.pref * acc;
            }
        }
        if shells.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonConvergence { what: "SOP series (terms overflow)", terms: n_max });
        }
        Ok(SopSeries { shells, peak })
    }

    pub fn max_terms(&self) -> usize {
        self.shells.len() - 1
    }

    /// Truncated sum over n1, n2 ≤ n.
    pub fn partial_sum(&self, n: usize) -> f64 {
        let mut acc = 0.0;
        let mut comp = 0.0;
        for v in &self.shells[..=n] {
            let y = v - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        acc
    }

    /// Magnitude of the shell max(n1, n2) = n.
    pub fn shell(&self, n: usize) -> f64 {
        self.shells[n].abs()
    }

    /// Ratio of the largest term to the sum, a measure of lost digits.
    pub fn cancellation(&self, n: usize) -> f64 {
        self.peak / self.partial_sum(n).abs().max(f64::MIN_POSITIVE)
    }
}

const AUTO_START: usize = 40;
const AUTO_CAP: usize = 2560;
/// Shells below this absolute size are treated as converged.
const AUTO_SHELL_TOLERANCE: f64 = 1e-14;
/// Shells above this size mean the series is outside its convergence region.
const DIVERGENCE_LIMIT: f64 = 1e6;

fn result_at(series: &SopSeries, n: usize, engine: Engine) -> MetricResult {
    let value = series.partial_sum(n);
    let mut r = MetricResult::new(value, engine, series.shell(n)).with_note(format!("N = {n}"));
    if series.shell(n) > 1e-6 * value.abs() {
        r.notes.push(format!(
            "last shell {:.3e} exceeds 1e-6 of the sum; increase the term count",
            series.shell(n)
        ));
    }
    let c = series.cancellation(n);
    if c > 1e8 {
        r.notes.push(format!("term cancellation ratio {c:.1e}"));
    }
    r
}

/// The truncated series, with n1, n2 ≤ n_terms; `None` runs until the shells
/// fall below 1e-14.
pub fn sop_series_real(s: &SecrecyScenario, n_terms: Option<usize>) -> Result<MetricResult> {
    if let Some(n) = n_terms {
        let series = SopSeries::new(s, n)?;
        return Ok(result_at(&series, n, Engine::ExactReal).checked_probability());
    }
    let mut n_max = AUTO_START;
    loop {
        let series = SopSeries::new(s, n_max)?;
        let tail = (n_max - 4..=n_max).map(|n| series.shell(n)).fold(0.0, f64::max);
        if tail < AUTO_SHELL_TOLERANCE {
            let n = (0..=n_max)
                .rev()
                .take_while(|&n| series.shell(n) < AUTO_SHELL_TOLERANCE)
                .last()
                .unwrap_or(n_max);
            let mut r = result_at(&series, n_max, Engine::ExactReal);
            r.notes[0] = format!("N = {n_max} (converged from N = {n})");
            return Ok(r.checked_probability());
        }
        if tail > DIVERGENCE_LIMIT || n_max >= AUTO_CAP {
            return Err(Error::NonConvergence { what: "SOP series", terms: n_max });
        }
        n_max *= 2;
    }
}

/// |P(n + 30) − P(n)|, the series' own converged value standing in for the
/// exact SOP.
pub fn sop_truncation_error(s: &SecrecyScenario, n_terms: usize) -> Result<f64> {
    let series = SopSeries::new(s, n_terms + 30)?;
    Ok((series.partial_sum(n_terms + 30) - series.partial_sum(n_terms)).abs())
}

/// The high-SNR SOP: the series truncated at a fixed order (default 30),
/// whose neglected tail vanishes as γ̄_B grows.
pub fn sop_asymptotic(s: &SecrecyScenario, n_terms: usize) -> Result<MetricResult> {
    let series = SopSeries::new(s, n_terms)?;
    Ok(result_at(&series, n_terms, Engine::Asymptotic).checked_probability())
}

/// Negative high-SNR log-log slope of the SOP.
pub fn secrecy_diversity_order() -> f64 {
    1.0
}
