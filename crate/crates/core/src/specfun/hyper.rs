use super::gamma::{gamma_real, ln_gamma_real, POLE_GUARD};
use super::{Compensated, SeriesPolicy};
use crate::{Error, Result};

/// Returns `Some(n)` when `x` is within the pole guard of the non-positive integer −n.
pub(crate) fn nonpositive_integer(x: f64) -> Option<usize> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() < POLE_GUARD {
        Some((-r) as usize)
    } else {
        None
    }
}

fn check_lower(b: f64) -> Result<()> {
    match nonpositive_integer(b) {
        Some(_) => Err(Error::Pole(format!("lower parameter {b}"))),
        None => Ok(()),
    }
}

/// Γ(b)/Γ(a), signed.
fn gamma_ratio(b: f64, a: f64) -> Result<f64> {
    if a > 0.0 && b > 0.0 {
        Ok((ln_gamma_real(b) - ln_gamma_real(a)).exp())
    } else {
        Ok(gamma_real(b)? / gamma_real(a)?)
    }
}

/// Direct Kummer series Σ (a)_k/(b)_k z^k/k!.
fn series_1f1(a: f64, b: f64, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = Compensated::new(1.0);
    let mut small = 0;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        sum.add(term);
        if term == 0.0 {
            return Ok(sum.value());
        }
        if term.abs() <= policy.relative_tolerance * sum.value().abs() && ratio.abs() < 0.5 {
            small += 1;
            if small >= policy.consecutive_small_terms_to_stop {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "kummer_1f1 series",
        terms: policy.max_terms,
    })
}

/// Terminating series when a = −n.
fn polynomial_1f1(n: usize, b: f64, z: f64) -> f64 {
    let a = -(n as f64);
    let mut term = 1.0;
    let mut sum = Compensated::new(1.0);
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum.add(term);
    }
    sum.value()
}

/// Large positive z: Γ(b)/Γ(a) z^{a−b} Σ (1−a)_s (b−a)_s / s! z^{−s}, i.e. e^{−z} 1F1(a,b,z).
/// This is the large-argument expansion of the Kummer-transformed function
/// 1F1(b−a, b, −z). Returns `None` when the divergent tail is reached before
/// the tolerance.
fn asymptotic_scaled_1f1(a: f64, b: f64, z: f64, policy: &SeriesPolicy) -> Result<Option<f64>> {
    let pre = gamma_ratio(b, a)? * z.powf(a - b);
    let mut term = 1.0;
    let mut sum = Compensated::new(1.0);
    let mut small = 0;
    for s in 0..policy.max_terms {
        let sf = s as f64;
        let next = term * (1.0 - a + sf) * (b - a + sf) / ((sf + 1.0) * z);
        if next == 0.0 {
            return Ok(Some(pre * sum.value()));
        }
        if next.abs() > term.abs() {
            return Ok(None);
        }
        term = next;
        sum.add(term);
        if term.abs() <= policy.relative_tolerance * sum.value().abs() {
            small += 1;
            if small >= policy.consecutive_small_terms_to_stop {
                return Ok(Some(pre * sum.value()));
            }
        } else {
            small = 0;
        }
    }
    Ok(None)
}

/// Threshold above which the Kummer transform is applied for positive arguments.
const KUMMER_SWITCH: f64 = 50.0;

/// Confluent hypergeometric function 1F1(a; b; z).
///
/// Positive arguments above 50 go through 1F1(a,b,z) = e^z 1F1(b−a,b,−z),
/// evaluating the transformed function by its large-argument expansion (or
/// exactly when b−a is a non-positive integer). Negative arguments use the
/// same transform so that the remaining series has one sign.
pub fn kummer_1f1(a: f64, b: f64, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    check_lower(b)?;
    if z == 0.0 {
        return Ok(1.0);
    }
    if let Some(n) = nonpositive_integer(a) {
        return Ok(polynomial_1f1(n, b, z));
    }
    if z < 0.0 {
        return kummer_1f1_scaled(b - a, b, -z, policy);
    }
    if z > KUMMER_SWITCH {
        return Ok(z.exp() * scaled_large(a, b, z, policy)?);
    }
    series_1f1(a, b, z, policy)
}

/// e^{−z} 1F1(a; b; z) for z ≥ 0, free of overflow for large z.
pub fn kummer_1f1_scaled(a: f64, b: f64, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    check_lower(b)?;
    if z < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "scaled 1F1 needs z >= 0, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if let Some(n) = nonpositive_integer(a) {
        return Ok((-z).exp() * polynomial_1f1(n, b, z));
    }
    if z > KUMMER_SWITCH {
        return scaled_large(a, b, z, policy);
    }
    Ok((-z).exp() * series_1f1(a, b, z, policy)?)
}

fn scaled_large(a: f64, b: f64, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    if let Some(n) = nonpositive_integer(b - a) {
        return Ok(polynomial_1f1(n, b, -z));
    }
    if let Some(v) = asymptotic_scaled_1f1(a, b, z, policy)? {
        return Ok(v);
    }
    if z > 700.0 {
        return Err(Error::NonConvergence {
            what: "kummer_1f1 large-argument expansion",
            terms: policy.max_terms,
        });
    }
    Ok((-z).exp() * series_1f1(a, b, z, policy)?)
}

/// Value of Humbert's Φ2 with its cancellation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi2Value {
    pub value: f64,
    /// Σ|terms| / |Σ terms|; about 10^k means k digits were lost to cancellation.
    pub cancellation: f64,
    /// Set when `cancellation` exceeds 1e6.
    pub precision_warning: bool,
    pub diagonals: usize,
}

/// Humbert's confluent function Φ2(b1, b2; c; x1, x2).
///
/// Summed over anti-diagonals n1 + n2 = d with compensated accumulation.
/// A negative argument is first moved to the prefactor with
/// Φ2(b1, b2; c; x1, x2) = e^{x1} Φ2(c−b1−b2, b2; c; −x1, x2−x1)
/// (or its mirror in x2), which leaves both series arguments non-negative.
pub fn humbert_phi2(
    b1: f64,
    b2: f64,
    c: f64,
    x1: f64,
    x2: f64,
    policy: &SeriesPolicy,
) -> Result<Phi2Value> {
    check_lower(c)?;
    let low = x1.min(x2);
    if low >= 0.0 {
        return phi2_series(b1, b2, c, x1, x2, policy);
    }
    let mut v = if x1 <= x2 {
        phi2_series(c - b1 - b2, b2, c, -x1, x2 - x1, policy)?
    } else {
        phi2_series(b1, c - b1 - b2, c, x1 - x2, -x2, policy)?
    };
    v.value *= low.exp();
    Ok(v)
}

fn phi2_series(
    b1: f64,
    b2: f64,
    c: f64,
    x1: f64,
    x2: f64,
    policy: &SeriesPolicy,
) -> Result<Phi2Value> {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    let mut w = 1.0;
    let mut total = Compensated::new(1.0);
    let mut abs_total = 1.0;
    let mut small = 0;
    let mut prev_mag = f64::INFINITY;
    for d in 1..policy.max_terms {
        let df = d as f64;
        let un = u[d - 1] * (b1 + df - 1.0) * x1 / df;
        let vn = v[d - 1] * (b2 + df - 1.0) * x2 / df;
        if !un.is_finite() || !vn.is_finite() || un.abs() > 1e290 || vn.abs() > 1e290 {
            return Err(Error::NonConvergence {
                what: "humbert_phi2 (argument too large)",
                terms: d,
            });
        }
        u.push(un);
        v.push(vn);
        w /= c + df - 1.0;
        let mut diag = Compensated::new(0.0);
        let mut diag_abs = 0.0;
        for n in 0..=d {
            let t = u[n] * v[d - n];
            diag.add(t);
            diag_abs += t.abs();
        }
        let mag = w.abs() * diag_abs;
        total.add(w * diag.value());
        abs_total += mag;
        let tot = total.value().abs();
        if mag <= policy.relative_tolerance * tot && mag <= prev_mag {
            small += 1;
            if small >= policy.consecutive_small_terms_to_stop {
                let cancellation = if tot > 0.0 { abs_total / tot } else { f64::INFINITY };
                return Ok(Phi2Value {
                    value: total.value(),
                    cancellation,
                    precision_warning: cancellation > 1e6,
                    diagonals: d,
                });
            }
        } else {
            small = 0;
        }
        prev_mag = mag;
    }
    Err(Error::NonConvergence {
        what: "humbert_phi2",
        terms: policy.max_terms,
    })
}

/// Generalized Laguerre polynomial L_n^α(x) by the three-term recurrence.
pub fn laguerre_generalized(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
