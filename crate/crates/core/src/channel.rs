//! The alternate Rician shadowed (ARS) fading model.
//!
//! A link's received power is X = |V|², where V is a diffuse complex Gaussian
//! of unit power plus a line-of-sight term whose power ξ·K_r fluctuates with a
//! unit-mean Gamma(m, 1/m) law. The Rician factor K_r is K1 with probability p
//! and K2 otherwise. The SNR is γ = γ̄·X/(1+K̄) with K̄ = p·K1 + (1−p)·K2, so
//! E[γ] = γ̄.
//!
//! Densities and CDFs have two closed forms: a Kummer 1F1 / Humbert Φ2 form
//! valid for any m ≥ 0.5, and a finite Gamma mixture when m is an integer.

use std::sync::OnceLock;

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::specfun::{
    gamma_p, humbert_phi2, kummer_1f1_scaled, ln_gamma_real, regularized_gamma, SeriesPolicy,
};
use crate::{Error, Result};

/// Distance from an integer below which m is treated as an integer.
pub const INTEGER_M_THRESHOLD: f64 = 1e-9;

/// Returns `Some(n)` when m is within the integer-dispatch threshold of n.
pub fn integer_m(m: f64) -> Option<usize> {
    let r = m.round();
    if r >= 1.0 && (m - r).abs() < INTEGER_M_THRESHOLD {
        Some(r as usize)
    } else {
        None
    }
}

/// A single Rician shadowed link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicianShadowedParams {
    pub mean_snr: f64,
    pub k: f64,
    pub m: f64,
}

/// One ARS link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArsParams {
    pub p: f64,
    pub k1: f64,
    pub k2: f64,
    pub m: f64,
    /// Linear mean SNR γ̄.
    pub mean_snr: f64,
}

/// Quantities derived once from an [`ArsParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedArs {
    pub k_bar: f64,
    pub omega_bar: f64,
    /// γ̄/(1+K̄), the SNR per unit of diffuse power.
    pub beta: f64,
    /// Branch probabilities (p, 1−p).
    pub q: [f64; 2],
    /// Branch scales ρ̄_r = (K_r+m)·γ̄/(m·(1+K̄)).
    pub rho_bar: [f64; 2],
    /// (m/(m+K_r))^m.
    pub c: [f64; 2],
    /// Integer m only: γ-densities are Σ_n B_n·Gamma(m−n, ρ̄_r).
    pub b_coeff: Option<[Vec<f64>; 2]>,
}

/// A CDF value and whether the Φ2 series was bypassed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub value: f64,
    pub fallback: bool,
}

fn check_common(k: f64, m: f64, mean_snr: f64) -> Result<()> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!("Rician factor {k} must be >= 0")));
    }
    if !(m >= 0.5) || !m.is_finite() {
        return Err(Error::InvalidParameter(format!("shadowing m = {m} must be >= 0.5")));
    }
    if !(mean_snr > 0.0) || !mean_snr.is_finite() {
        return Err(Error::InvalidParameter(format!("mean SNR {mean_snr} must be positive")));
    }
    Ok(())
}

impl RicianShadowedParams {
    pub fn new(mean_snr: f64, k: f64, m: f64) -> Result<Self> {
        check_common(k, m, mean_snr)?;
        Ok(RicianShadowedParams { mean_snr, k, m })
    }

    fn branch(&self) -> Branch {
        Branch::new(self.mean_snr / (1.0 + self.k), self.k, self.m)
    }

    pub fn pdf(&self, gamma: f64) -> Result<f64> {
        self.branch().pdf(gamma)
    }

    pub fn cdf(&self, gamma: f64) -> Result<f64> {
        Ok(self.branch().cdf(gamma)?.value)
    }

    pub fn sf(&self, gamma: f64) -> f64 {
        self.branch().sf(gamma)
    }
}

impl ArsParams {
    pub fn new(p: f64, k1: f64, k2: f64, m: f64, mean_snr: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("probability p = {p} outside [0, 1]")));
        }
        check_common(k1, m, mean_snr)?;
        check_common(k2, m, mean_snr)?;
        Ok(ArsParams {
            p,
            k1,
            k2,
            m,
            mean_snr,
        })
    }

    /// Same link with a different linear mean SNR.
    pub fn with_mean_snr(&self, mean_snr: f64) -> Result<Self> {
        ArsParams::new(self.p, self.k1, self.k2, self.m, mean_snr)
    }

    pub fn k(&self, r: usize) -> f64 {
        if r == 0 {
            self.k1
        } else {
            self.k2
        }
    }

    pub fn k_bar(&self) -> f64 {
        self.p * self.k1 + (1.0 - self.p) * self.k2
    }

    pub fn integer_m(&self) -> Option<usize> {
        integer_m(self.m)
    }

    pub fn derive(&self) -> DerivedArs {
        let k_bar = self.k_bar();
        let beta = self.mean_snr / (1.0 + k_bar);
        let m = self.m;
        let per = |k: f64| {
            (
                beta * (m + k) / m,
                (m * (m / (m + k)).ln()).exp(),
            )
        };
        let (r1, c1) = per(self.k1);
        let (r2, c2) = per(self.k2);
        let b_coeff = self
            .integer_m()
            .map(|mi| [b_coefficients(mi, self.k1), b_coefficients(mi, self.k2)]);
        DerivedArs {
            k_bar,
            omega_bar: 1.0 + k_bar,
            beta,
            q: [self.p, 1.0 - self.p],
            rho_bar: [r1, r2],
            c: [c1, c2],
            b_coeff,
        }
    }

    /// Branch r as a stand-alone Rician shadowed link.
    pub fn branch(&self, r: usize) -> RicianShadowedParams {
        let k = self.k(r);
        RicianShadowedParams {
            mean_snr: self.mean_snr * (1.0 + k) / (1.0 + self.k_bar()),
            k,
            m: self.m,
        }
    }

    /// Branch data precomputed for repeated density evaluation.
    pub fn prepared(&self) -> PreparedArs {
        let beta = self.mean_snr / (1.0 + self.k_bar());
        PreparedArs {
            weights: [self.p, 1.0 - self.p],
            branches: [
                Branch::new(beta, self.k1, self.m),
                Branch::new(beta, self.k2, self.m),
            ],
        }
    }

    /// SNR density.
    pub fn pdf(&self, gamma: f64) -> Result<f64> {
        self.prepared().pdf(gamma)
    }

    /// SNR CDF.
    pub fn cdf(&self, gamma: f64) -> Result<f64> {
        self.prepared().cdf(gamma)
    }

    /// SNR CDF, reporting whether either branch bypassed the Φ2 series.
    pub fn cdf_detailed(&self, gamma: f64) -> Result<CdfValue> {
        self.prepared().cdf_detailed(gamma)
    }

    /// Survival function 1 − CDF, computed without cancellation.
    pub fn sf(&self, gamma: f64) -> f64 {
        self.prepared().sf(gamma)
    }

    /// The 1F1 density form, used even when m is an integer.
    pub fn pdf_real_form(&self, gamma: f64) -> Result<f64> {
        let p = self.prepared();
        let mut total = 0.0;
        for (w, b) in p.active() {
            total += w * b.pdf_real(gamma.max(0.0))?;
        }
        Ok(total)
    }

    /// The Φ2 CDF form (with its mixture fallback), used even when m is an integer.
    pub fn cdf_real_form(&self, gamma: f64) -> Result<f64> {
        let p = self.prepared();
        let mut total = 0.0;
        for (w, b) in p.active() {
            total += w * b.cdf_real(gamma)?.value;
        }
        Ok(total)
    }

    /// One SNR draw from the physical construction.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let k = if rng.random::<f64>() < self.p {
            self.k1
        } else {
            self.k2
        };
        let xi: f64 = Gamma::new(self.m, 1.0 / self.m)
            .expect("validated shape")
            .sample(rng);
        let g1: f64 = StandardNormal.sample(rng);
        let g2: f64 = StandardNormal.sample(rng);
        let re = (xi * k).sqrt() + g1 * std::f64::consts::FRAC_1_SQRT_2;
        let im = g2 * std::f64::consts::FRAC_1_SQRT_2;
        self.mean_snr * (re * re + im * im) / (1.0 + self.k_bar())
    }
}

/// An [`ArsParams`] with its branch data cached.
#[derive(Debug, Clone)]
pub struct PreparedArs {
    weights: [f64; 2],
    branches: [Branch; 2],
}

impl PreparedArs {
    fn active(&self) -> impl Iterator<Item = (f64, &Branch)> {
        self.weights
            .iter()
            .copied()
            .zip(self.branches.iter())
            .filter(|(w, _)| *w > 0.0)
    }

    pub fn pdf(&self, gamma: f64) -> Result<f64> {
        let mut total = 0.0;
        for (w, b) in self.active() {
            total += w * b.pdf(gamma)?;
        }
        Ok(total)
    }

    pub fn cdf(&self, gamma: f64) -> Result<f64> {
        Ok(self.cdf_detailed(gamma)?.value)
    }

    pub fn cdf_detailed(&self, gamma: f64) -> Result<CdfValue> {
        let mut value = 0.0;
        let mut fallback = false;
        for (w, b) in self.active() {
            let v = b.cdf(gamma)?;
            value += w * v.value;
            fallback |= v.fallback;
        }
        Ok(CdfValue {
            value: value.clamp(0.0, 1.0),
            fallback,
        })
    }

    pub fn sf(&self, gamma: f64) -> f64 {
        self.active()
            .map(|(w, b)| w * b.sf(gamma))
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }
}

/// B_n = C(m−1, n)·(m/(m+K))^n·(K/(m+K))^{m−1−n}, n = 0..m−1, with 0^0 = 1.
pub fn b_coefficients(m: usize, k: f64) -> Vec<f64> {
    let mf = m as f64;
    let a = mf / (mf + k);
    let b = k / (mf + k);
    (0..m)
        .map(|n| {
            let binom = (ln_gamma_real(mf) - ln_gamma_real(n as f64 + 1.0)
                - ln_gamma_real((m - n) as f64))
            .exp();
            binom * a.powi(n as i32) * b.powi((m - 1 - n) as i32)
        })
        .collect()
}

/// Gamma(shape, scale) density in the log domain.
pub(crate) fn gamma_density(shape: f64, scale: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if shape == 1.0 {
            1.0 / scale
        } else if shape < 1.0 {
            f64::INFINITY
        } else {
            0.0
        };
    }
    let y = x / scale;
    ((shape - 1.0) * y.ln() - y - ln_gamma_real(shape)).exp() / scale
}

/// Largest x/β for which the Φ2 series is tried before the mixture form.
const PHI2_MAX_ARGUMENT: f64 = 30.0;
/// Largest tolerated Φ2 cancellation ratio.
const PHI2_MAX_CANCELLATION: f64 = 1e4;

/// One Rician shadowed component: γ = β·X with diffuse power 1.
#[derive(Debug, Clone)]
struct Branch {
    beta: f64,
    k: f64,
    m: f64,
    rho: f64,
    c: f64,
    b: Option<Vec<f64>>,
    weights: OnceLock<Vec<(f64, f64)>>,
}

impl Branch {
    fn new(beta: f64, k: f64, m: f64) -> Self {
        Branch {
            beta,
            k,
            m,
            rho: beta * (m + k) / m,
            c: (m * (m / (m + k)).ln()).exp(),
            b: integer_m(m).map(|mi| b_coefficients(mi, k)),
            weights: OnceLock::new(),
        }
    }

    fn pdf(&self, gamma: f64) -> Result<f64> {
        if gamma < 0.0 {
            return Ok(0.0);
        }
        match &self.b {
            Some(b) => {
                let mi = b.len();
                Ok(b.iter()
                    .enumerate()
                    .filter(|(_, w)| **w > 0.0)
                    .map(|(n, w)| w * gamma_density((mi - n) as f64, self.rho, gamma))
                    .sum())
            }
            None => self.pdf_real(gamma),
        }
    }

    fn pdf_real(&self, gamma: f64) -> Result<f64> {
        let z = self.k * gamma / (self.beta * (self.m + self.k));
        let scaled = kummer_1f1_scaled(self.m, 1.0, z, &SeriesPolicy::default())?;
        Ok(self.c / self.beta * (-gamma / self.rho).exp() * scaled)
    }

    fn cdf(&self, gamma: f64) -> Result<CdfValue> {
        if gamma <= 0.0 {
            return Ok(CdfValue {
                value: 0.0,
                fallback: false,
            });
        }
        if let Some(b) = &self.b {
            let mi = b.len();
            let v = b
                .iter()
                .enumerate()
                .map(|(n, w)| w * gamma_p((mi - n) as f64, gamma / self.rho))
                .sum::<f64>();
            return Ok(CdfValue {
                value: v.clamp(0.0, 1.0),
                fallback: false,
            });
        }
        self.cdf_real(gamma)
    }

    fn cdf_real(&self, gamma: f64) -> Result<CdfValue> {
        let x = gamma / self.beta;
        if x <= PHI2_MAX_ARGUMENT {
            if let Ok(phi) = humbert_phi2(
                1.0 - self.m,
                self.m,
                2.0,
                -x,
                -gamma / self.rho,
                &SeriesPolicy::default(),
            ) {
                if phi.cancellation <= PHI2_MAX_CANCELLATION {
                    let v = self.c * x * phi.value;
                    return Ok(CdfValue {
                        value: v.clamp(0.0, 1.0),
                        fallback: false,
                    });
                }
            }
        }
        Ok(CdfValue {
            value: self.mixture(x).0.clamp(0.0, 1.0),
            fallback: true,
        })
    }

    fn sf(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 1.0;
        }
        if let Some(b) = &self.b {
            let mi = b.len();
            return b
                .iter()
                .enumerate()
                .map(|(n, w)| w * regularized_gamma((mi - n) as f64, gamma / self.rho).1)
                .sum::<f64>()
                .clamp(0.0, 1.0);
        }
        self.mixture(gamma / self.beta).1.clamp(0.0, 1.0)
    }

    /// Mixture weights w_k with ln k!, built on first use.
    fn weights(&self) -> &[(f64, f64)] {
        self.weights.get_or_init(|| {
            let ratio = self.k / (self.m + self.k);
            let mut w = vec![(self.c, 0.0)];
            if ratio > 0.0 {
                let sd = (self.k * (self.m + self.k) / self.m).sqrt();
                let floor = (self.k + 12.0 * sd + 30.0) as usize;
                let mut k = 0usize;
                while k < 1_000_000 {
                    let kf = k as f64;
                    let next = w[k].0 * (self.m + kf) / (kf + 1.0) * ratio;
                    w.push((next, w[k].1 + (kf + 1.0).ln()));
                    k += 1;
                    if k >= floor && next < 1e-18 {
                        break;
                    }
                }
            }
            w
        })
    }

    /// (CDF, survival) via the negative-binomial Gamma mixture
    /// X ~ Σ_k w_k·Gamma(k+1, 1), w_0 = c, w_{k+1} = w_k·(m+k)/(k+1)·K/(m+K).
    fn mixture(&self, x: f64) -> (f64, f64) {
        let weights = self.weights();
        let kmax = weights.len() - 1;
        let ln_x = x.ln();
        let term = |k: usize| (k as f64 * ln_x - x - weights[k].1).exp();

        // Survival by the upward recurrence Q(k+2) = Q(k+1) + x^{k+1} e^{−x}/(k+1)!.
        let mut sf = 0.0;
        let mut q = 0.0;
        for (k, (w, _)) in weights.iter().enumerate() {
            q += term(k);
            sf += w * q.min(1.0);
        }
        if sf < 0.5 {
            let total: f64 = weights.iter().map(|(w, _)| w).sum();
            return (total - sf, sf);
        }

        // CDF by the downward recurrence P(k) = P(k+1) + x^k e^{−x}/k!.
        let mut p = gamma_p(kmax as f64 + 1.0, x);
        let mut cdf = 0.0;
        for k in (0..=kmax).rev() {
            cdf += weights[k].0 * p.min(1.0);
            p += term(k);
        }
        (cdf, sf)
    }
}
