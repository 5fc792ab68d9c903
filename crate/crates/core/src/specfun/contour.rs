use num_complex::Complex64;

use super::gamma::ln_gamma_unchecked;
use super::gauss_legendre;
use crate::{Error, Result};

/// Γ(offset + Σ_k coeffs[k] s_k), a gamma factor coupling several contour variables.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTerm {
    pub offset: f64,
    pub coeffs: Vec<f64>,
}

impl GammaTerm {
    pub fn new(offset: f64, coeffs: &[f64]) -> Self {
        GammaTerm {
            offset,
            coeffs: coeffs.to_vec(),
        }
    }

    fn real_part(&self, abscissas: &[f64]) -> f64 {
        self.offset
            + self
                .coeffs
                .iter()
                .zip(abscissas)
                .map(|(c, x)| c * x)
                .sum::<f64>()
    }
}

/// Gamma factors Γ(offset + slope·s) that depend on a single contour variable.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VariableTerms {
    pub numerator: Vec<(f64, f64)>,
    pub denominator: Vec<(f64, f64)>,
}

impl VariableTerms {
    pub fn new(numerator: &[(f64, f64)], denominator: &[(f64, f64)]) -> Self {
        VariableTerms {
            numerator: numerator.to_vec(),
            denominator: denominator.to_vec(),
        }
    }

    /// Midpoint between the rightmost left-family pole and the leftmost
    /// right-family pole of the numerator factors.
    pub fn midpoint_abscissa(&self) -> Result<f64> {
        let mut left = f64::NEG_INFINITY;
        let mut right = f64::INFINITY;
        for &(o, a) in &self.numerator {
            if a > 0.0 {
                left = left.max(-o / a);
            } else {
                right = right.min(-o / a);
            }
        }
        if left >= right - 2.0 * super::POLE_GUARD {
            return Err(Error::ContourViolation(format!(
                "pole families interleave (left {left}, right {right})"
            )));
        }
        Ok(match (left.is_finite(), right.is_finite()) {
            (true, true) => 0.5 * (left + right),
            (true, false) => left + 0.5,
            (false, true) => right - 0.5,
            (false, false) => 0.0,
        })
    }
}

/// A Meijer G or N-variate Fox H instance: gamma-ratio kernel plus contour.
///
/// The represented value is
/// (2πi)^{−N} ∫…∫ Π Γ(num) / Π Γ(den) · Π_k z_k^{−s_k} ds_1…ds_N · e^{log_scale},
/// integrated along the vertical lines Re s_k = `contour_abscissas[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxHSpec {
    pub dimension: usize,
    pub numerator: Vec<GammaTerm>,
    pub denominator: Vec<GammaTerm>,
    pub variables: Vec<VariableTerms>,
    pub contour_abscissas: Vec<f64>,
    pub truncation_height: f64,
    pub panel_count: usize,
    pub log_scale: f64,
    pub tolerance: Option<f64>,
}

impl FoxHSpec {
    /// Builds and validates a spec.
    pub fn new(
        variables: Vec<VariableTerms>,
        numerator: Vec<GammaTerm>,
        denominator: Vec<GammaTerm>,
        contour_abscissas: Vec<f64>,
    ) -> Result<Self> {
        let spec = FoxHSpec {
            dimension: variables.len(),
            numerator,
            denominator,
            variables,
            contour_abscissas,
            truncation_height: 20.0,
            panel_count: 40,
            log_scale: 0.0,
            tolerance: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The Meijer G^{m,n}_{p,q}(· | a; b) kernel, contour at the pole-family midpoint.
    pub fn meijer(m: usize, n: usize, a: &[f64], b: &[f64]) -> Result<Self> {
        if m > b.len() || n > a.len() {
            return Err(Error::InvalidParameter(format!(
                "G^{{{m},{n}}}_{{{},{}}} has inconsistent orders",
                a.len(),
                b.len()
            )));
        }
        let mut vt = VariableTerms::default();
        for &bj in &b[..m] {
            vt.numerator.push((bj, 1.0));
        }
        for &aj in &a[..n] {
            vt.numerator.push((1.0 - aj, -1.0));
        }
        for &bj in &b[m..] {
            vt.denominator.push((1.0 - bj, -1.0));
        }
        for &aj in &a[n..] {
            vt.denominator.push((aj, 1.0));
        }
        let c = vt.midpoint_abscissa()?;
        FoxHSpec::new(vec![vt], vec![], vec![], vec![c])
    }

    pub fn with_log_scale(mut self, log_scale: f64) -> Self {
        self.log_scale = log_scale;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = Some(tolerance);
        self
    }

    /// Checks dimensions, slopes and contour placement.
    pub fn validate(&self) -> Result<()> {
        let n = self.dimension;
        if n == 0 {
            return Err(Error::InvalidParameter("Fox H dimension must be positive".into()));
        }
        if n > 4 {
            return Err(Error::DimensionLimit(n));
        }
        if self.variables.len() != n || self.contour_abscissas.len() != n {
            return Err(Error::InvalidParameter(
                "variables and contour abscissas must match the dimension".into(),
            ));
        }
        if !(self.truncation_height > 0.0) || self.panel_count == 0 {
            return Err(Error::InvalidParameter(
                "truncation height and panel count must be positive".into(),
            ));
        }
        for t in self.numerator.iter().chain(&self.denominator) {
            if t.coeffs.len() != n || t.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "coupled gamma term {t:?} has a malformed coefficient vector"
                )));
            }
        }
        for (k, vt) in self.variables.iter().enumerate() {
            for &(o, a) in vt.numerator.iter().chain(&vt.denominator) {
                if !a.is_finite() || a == 0.0 || !o.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "variable {k}: gamma term ({o}, {a}) needs a finite nonzero slope"
                    )));
                }
            }
            let c = self.contour_abscissas[k];
            for &(o, a) in &vt.numerator {
                let re = o + a * c;
                if re <= 1e-12 {
                    return Err(Error::ContourViolation(format!(
                        "variable {k}: Γ({o} + {a}·s) has a pole on or right of Re s = {c}"
                    )));
                }
            }
        }
        for t in &self.numerator {
            let re = t.real_part(&self.contour_abscissas);
            if re <= 1e-12 {
                return Err(Error::ContourViolation(format!(
                    "coupled term {t:?} has real part {re} on the contour"
                )));
            }
        }
        Ok(())
    }
}

/// Result of a one-dimensional contour integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourValue {
    pub value: f64,
    pub error_estimate: f64,
    pub height: f64,
    pub panels: usize,
}

fn log_integrand_1d(spec: &FoxHSpec, s: Complex64, ln_z: f64) -> Complex64 {
    let vt = &spec.variables[0];
    let mut acc = Complex64::new(spec.log_scale, 0.0) - s * ln_z;
    for &(o, a) in &vt.numerator {
        acc += ln_gamma_unchecked(s * a + o);
    }
    for &(o, a) in &vt.denominator {
        acc -= ln_gamma_unchecked(s * a + o);
    }
    acc
}

fn integrand_1d(spec: &FoxHSpec, tau: f64, ln_z: f64) -> Complex64 {
    let s = Complex64::new(spec.contour_abscissas[0], tau);
    log_integrand_1d(spec, s, ln_z).exp()
}

fn panels_1d(spec: &FoxHSpec, ln_z: f64, height: f64, panels: usize) -> Complex64 {
    let (x, w) = gauss_legendre();
    let width = 2.0 * height / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = -height + (p as f64 + 0.5) * width;
        let mut part = Complex64::new(0.0, 0.0);
        for (xi, wi) in x.iter().zip(w) {
            part += integrand_1d(spec, mid + 0.5 * width * xi, ln_z) * *wi;
        }
        total += part * (0.5 * width);
    }
    total / (2.0 * std::f64::consts::PI)
}

const MAX_HEIGHT_DOUBLINGS: usize = 10;
const MAX_PANELS: usize = 1 << 16;

/// Meijer G (or any one-variable Fox H instance) with diagnostics.
///
/// Integrates along the vertical contour with composite 20-point
/// Gauss–Legendre panels. The half-height T doubles from the spec's starting
/// value until the integrand at ±iT is below 1e-12 of the integral, then the
/// panel count doubles until successive results agree to the tolerance
/// (default 1e-12 relative).
pub fn meijer_g_detailed(spec: &FoxHSpec, z: f64) -> Result<ContourValue> {
    spec.validate()?;
    if spec.dimension != 1 {
        return Err(Error::InvalidParameter(format!(
            "meijer_g needs a one-variable spec, got dimension {}",
            spec.dimension
        )));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidParameter(format!("meijer_g argument {z} must be positive")));
    }
    let tol = spec.tolerance.unwrap_or(1e-12);
    let ln_z = z.ln();
    let mut height = spec.truncation_height;
    let mut panels = spec.panel_count;
    let mut current;
    let mut doublings = 0;
    loop {
        current = panels_1d(spec, ln_z, height, panels);
        let edge = integrand_1d(spec, height, ln_z)
            .norm()
            .max(integrand_1d(spec, -height, ln_z).norm())
            / (2.0 * std::f64::consts::PI);
        let ratio = edge / current.norm().max(f64::MIN_POSITIVE);
        if ratio <= 1e-12 || edge == 0.0 {
            break;
        }
        doublings += 1;
        if doublings > MAX_HEIGHT_DOUBLINGS {
            return Err(Error::TailTruncation { height, ratio });
        }
        height *= 2.0;
        panels *= 2;
    }
    loop {
        let refined = panels_1d(spec, ln_z, height, 2 * panels);
        let diff = (refined - current).norm();
        panels *= 2;
        if diff <= tol * refined.norm() || diff == 0.0 {
            let value = refined.re;
            if refined.im.abs() > 1e-10 * value.abs().max(f64::MIN_POSITIVE) + 1e-300 {
                return Err(Error::InvalidParameter(format!(
                    "contour integral is not real-valued ({refined})"
                )));
            }
            return Ok(ContourValue {
                value,
                error_estimate: diff,
                height,
                panels,
            });
        }
        if panels >= MAX_PANELS {
            return Err(Error::NonConvergence {
                what: "meijer_g panel refinement",
                terms: panels,
            });
        }
        current = refined;
    }
}

/// Meijer G-function value for a one-variable spec at z > 0.
pub fn meijer_g(spec: &FoxHSpec, z: f64) -> Result<f64> {
    meijer_g_detailed(spec, z).map(|v| v.value)
}
