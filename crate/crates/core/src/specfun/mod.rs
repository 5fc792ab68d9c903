//! Special functions required by the closed-form secrecy metrics.
//!
//! Everything here is implemented from scratch in double precision: complex
//! log-gamma, Pochhammer symbols, Kummer's 1F1, Humbert's Φ2, generalized
//! Laguerre polynomials, and Mellin–Barnes contour integration for Meijer G
//! and multivariate Fox H functions.

mod contour;
mod foxh;
mod gamma;
mod gauss;
mod hyper;

pub use contour::{meijer_g, meijer_g_detailed, ContourValue, FoxHSpec, GammaTerm, VariableTerms};
pub use foxh::{fox_h_multi, FoxHResult};
pub use gamma::{
    digamma, gamma_p, gamma_q, gamma_real, ln_factorial, ln_gamma, ln_gamma_real, pochhammer,
    regularized_gamma, POLE_GUARD,
};
pub use hyper::{humbert_phi2, kummer_1f1, kummer_1f1_scaled, laguerre_generalized, Phi2Value};

pub(crate) use gauss::gauss_legendre;

/// Truncation controls for the infinite series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    pub relative_tolerance: f64,
    pub max_terms: usize,
    pub consecutive_small_terms_to_stop: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            relative_tolerance: 1e-14,
            max_terms: 100_000,
            consecutive_small_terms_to_stop: 3,
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    pub(crate) fn new(x: f64) -> Self {
        Compensated { sum: x, c: 0.0 }
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.c
    }
}
