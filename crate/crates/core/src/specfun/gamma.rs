use num_complex::Complex64;

use crate::{Error, Result};

/// Distance from a non-positive integer below which a gamma argument counts as a pole.
pub const POLE_GUARD: f64 = 1e-9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)), k = 1..9
const STIRLING: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
];

fn near_pole(re: f64, im: f64) -> bool {
    if im.abs() >= POLE_GUARD || re > POLE_GUARD {
        return false;
    }
    let n = re.round();
    n <= 0.0 && ((re - n).powi(2) + im * im).sqrt() < POLE_GUARD
}

/// Principal-branch log-gamma for complex arguments.
///
/// Uses upward recurrence to |z| ≥ 10 followed by the Stirling series. The
/// branch is the one continuous on the plane cut along the negative real axis,
/// so `exp(ln_gamma(z))` reproduces Γ(z) everywhere off the poles.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParameter(format!("ln_gamma argument {z}")));
    }
    if near_pole(z.re, z.im) {
        return Err(Error::Pole(format!("{z}")));
    }
    Ok(ln_gamma_unchecked(z))
}

pub(crate) fn ln_gamma_unchecked(mut z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 0.0 || z.norm_sqr() < 100.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series - shift
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift += x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series - shift
}

/// Γ(x) for real x, with reflection for negative arguments.
pub fn gamma_real(x: f64) -> Result<f64> {
    if near_pole(x, 0.0) {
        return Err(Error::Pole(format!("{x}")));
    }
    if x > 0.0 {
        Ok(ln_gamma_real(x).exp())
    } else {
        let s = (std::f64::consts::PI * x).sin();
        Ok(std::f64::consts::PI / (s * ln_gamma_real(1.0 - x).exp()))
    }
}

/// ln n!.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        ln_gamma_real(n as f64 + 1.0)
    }
}

/// Digamma ψ(x) for real x away from the poles.
pub fn digamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.0 {
        let pi = std::f64::consts::PI;
        return digamma(1.0 - x) - pi / (pi * x).tan();
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 16.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // B_{2k} / (2k)
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    acc + x.ln() - 0.5 / x - tail
}

/// Rising factorial (a)_n = a (a+1) … (a+n−1).
pub fn pochhammer(a: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

/// Regularized incomplete gamma functions (P(a, x), Q(a, x)) for a > 0, x ≥ 0.
///
/// The series is used below x = a + 1 and the Lentz continued fraction above,
/// so the smaller of the two is always computed directly.
pub fn regularized_gamma(a: f64, x: f64) -> (f64, f64) {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return (0.0, 1.0);
    }
    let log_front = -x + a * x.ln() - ln_gamma_real(a);
    if x < a + 1.0 {
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..100_000 {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        let p = (sum.ln() + log_front).exp().min(1.0);
        (p, 1.0 - p)
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..100_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-17 {
                break;
            }
        }
        let q = (h.ln() + log_front).exp().min(1.0);
        (1.0 - q, q)
    }
}

/// Regularized lower incomplete gamma P(a, x).
pub fn gamma_p(a: f64, x: f64) -> f64 {
    regularized_gamma(a, x).0
}

/// Regularized upper incomplete gamma Q(a, x).
pub fn gamma_q(a: f64, x: f64) -> f64 {
    regularized_gamma(a, x).1
}
