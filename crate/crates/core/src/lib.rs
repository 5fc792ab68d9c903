//! Physical-layer secrecy metrics over alternate Rician shadowed (ARS) fading.
//!
//! An ARS link carries a diffuse Gaussian component plus one of two
//! fluctuating line-of-sight components, selected by a Bernoulli draw. Given a
//! legitimate link (Bob) and an eavesdropper link (Eve), this crate evaluates
//!
//! * the average secrecy capacity (ASC),
//! * the secrecy outage probability (SOP),
//! * the probability of non-zero secrecy capacity (PNZ),
//!
//! with several independent engines: closed forms for integer shadowing,
//! Mellin–Barnes (Fox H) representations and a truncated series for real
//! shadowing, high-SNR asymptotics, direct quadrature of the defining
//! integrals, and Monte-Carlo simulation of the physical channel.
//!
//! ```
//! use ars_secrecy::channel::ArsParams;
//! use ars_secrecy::secrecy::{metric, Engine, EngineOptions, MetricKind, SecrecyScenario};
//!
//! let bob = ArsParams::new(0.5, 50.0 / 3.0, 10.0 / 3.0, 1.0, 100.0)?;
//! let eve = ArsParams::new(0.5, 50.0 / 3.0, 10.0 / 3.0, 1.0, 10.0)?;
//! let s = SecrecyScenario::new(bob, eve, 0.5)?;
//!
//! let opts = EngineOptions::default();
//! let exact = metric(MetricKind::Pnz, &s, Engine::ExactInteger, &opts)?;
//! let quad = metric(MetricKind::Pnz, &s, Engine::Quadrature, &opts)?;
//! assert!((exact.value - quad.value).abs() < 1e-9);
//! # Ok::<(), ars_secrecy::Error>(())
//! ```

pub mod channel;
mod error;
pub mod mc;
pub mod presets;
pub mod quadrature;
pub mod secrecy;
pub mod specfun;

pub use error::{Error, Result};

/// Converts decibels to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to decibels.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
