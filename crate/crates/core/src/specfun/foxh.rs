use num_complex::Complex64;

use super::contour::{FoxHSpec, GammaTerm};
use super::gamma::ln_gamma_unchecked;
use crate::{Error, Result};

/// Value of a multivariate Fox H integral with its refinement diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoxHResult {
    pub value: f64,
    /// |S_h − S_2h| plus the outer-shell tail estimate.
    pub error_estimate: f64,
    pub tolerance: f64,
    /// False when the error estimate exceeds `tolerance · |value|`.
    pub tolerance_met: bool,
    pub step: f64,
    pub height: f64,
}

impl FoxHResult {
    pub fn relative_error(&self) -> f64 {
        self.error_estimate / self.value.abs().max(f64::MIN_POSITIVE)
    }
}

/// A table over the integer lattice index Σ_k coeffs[k]·j_k.
#[derive(Clone)]
struct Factor {
    coeffs: Vec<i64>,
    min: i64,
    values: Vec<Complex64>,
}

impl Factor {
    fn at(&self, idx: i64) -> Complex64 {
        self.values[(idx - self.min) as usize]
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn involves(&self, v: usize) -> bool {
        self.coeffs[v] != 0
    }

    fn only(&self, v: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, &c)| (k == v) == (c != 0))
    }
}

fn integer_coeffs(term: &GammaTerm) -> Result<Vec<i64>> {
    term.coeffs
        .iter()
        .map(|&c| {
            let r = c.round();
            if (c - r).abs() < 1e-12 {
                Ok(r as i64)
            } else {
                Err(Error::NotApplicable(format!(
                    "coupled gamma slope {c} is not an integer; the lattice evaluator needs integer couplings"
                )))
            }
        })
        .collect()
}

struct Lattice<'a> {
    spec: &'a FoxHSpec,
    ln_z: Vec<f64>,
    coupled: Vec<(Vec<i64>, f64, bool)>,
}

impl<'a> Lattice<'a> {
    fn new(spec: &'a FoxHSpec, args: &[f64]) -> Result<Self> {
        let mut coupled = Vec::new();
        for (t, numer) in spec
            .numerator
            .iter()
            .map(|t| (t, true))
            .chain(spec.denominator.iter().map(|t| (t, false)))
        {
            let c = integer_coeffs(t)?;
            let re = t.offset
                + t.coeffs
                    .iter()
                    .zip(&spec.contour_abscissas)
                    .map(|(a, x)| a * x)
                    .sum::<f64>();
            coupled.push((c, re, numer));
        }
        Ok(Lattice {
            spec,
            ln_z: args.iter().map(|z| z.ln()).collect(),
            coupled,
        })
    }

    /// Trapezoid sum over the lattice s_k = c_k + i j_k h, |j_k| ≤ n, times (h/2π)^N.
    fn sum(&self, h: f64, n: i64) -> Complex64 {
        let dim = self.spec.dimension;
        let mut factors = Vec::with_capacity(dim + self.coupled.len());
        for (k, vt) in self.spec.variables.iter().enumerate() {
            let c = self.spec.contour_abscissas[k];
            let scale = if k == 0 { self.spec.log_scale } else { 0.0 };
            let values = (-n..=n)
                .map(|j| {
                    let s = Complex64::new(c, j as f64 * h);
                    let mut acc = Complex64::new(scale, 0.0) - s * self.ln_z[k];
                    for &(o, a) in &vt.numerator {
                        acc += ln_gamma_unchecked(s * a + o);
                    }
                    for &(o, a) in &vt.denominator {
                        acc -= ln_gamma_unchecked(s * a + o);
                    }
                    acc.exp()
                })
                .collect();
            let mut coeffs = vec![0; dim];
            coeffs[k] = 1;
            factors.push(Factor {
                coeffs,
                min: -n,
                values,
            });
        }
        for (coeffs, re, numer) in &self.coupled {
            let range = n * coeffs.iter().map(|c| c.abs()).sum::<i64>();
            let values = (-range..=range)
                .map(|idx| {
                    let g = ln_gamma_unchecked(Complex64::new(*re, idx as f64 * h));
                    if *numer {
                        g.exp()
                    } else {
                        (-g).exp()
                    }
                })
                .collect();
            factors.push(Factor {
                coeffs: coeffs.clone(),
                min: -range,
                values,
            });
        }
        let remaining: Vec<usize> = (0..dim).collect();
        let total = contract(factors, &remaining, n);
        total * (h / (2.0 * std::f64::consts::PI)).powi(dim as i32)
    }
}

/// Re-indexes a single-variable factor to coefficient 1 on the variable's own index.
fn as_unit_table(f: &Factor, v: usize, n: i64) -> Vec<Complex64> {
    let c = f.coeffs[v];
    (-n..=n).map(|j| f.at(c * j)).collect()
}

/// Multiplies together factors sharing a coefficient vector.
fn merge(factors: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::with_capacity(factors.len());
    for f in factors {
        match out.iter_mut().find(|g| g.coeffs == f.coeffs) {
            Some(g) => {
                for (a, b) in g.values.iter_mut().zip(&f.values) {
                    *a *= b;
                }
            }
            None => out.push(f),
        }
    }
    out
}

/// Sums the product of all factors over the remaining lattice variables.
fn contract(factors: Vec<Factor>, remaining: &[usize], n: i64) -> Complex64 {
    let width = (2 * n + 1) as usize;
    let mut scalar = Complex64::new(1.0, 0.0);
    let mut factors: Vec<Factor> = factors
        .into_iter()
        .filter(|f| {
            if f.is_constant() {
                scalar *= f.at(0);
                false
            } else {
                true
            }
        })
        .collect();
    let mut remaining = remaining.to_vec();

    loop {
        factors = merge(factors);
        let Some(pos) = remaining.iter().position(|&v| {
        factors
            .iter()
            .filter(|f| f.involves(v) && !f.only(v))
            .count()
            <= 1
        }) else {
            break;
        };
        let v = remaining.remove(pos);
        let mut unit = vec![Complex64::new(1.0, 0.0); width];
        let mut coupled: Option<Factor> = None;
        let mut rest = Vec::with_capacity(factors.len());
        for f in factors {
            if !f.involves(v) {
                rest.push(f);
            } else if f.only(v) {
                for (u, x) in unit.iter_mut().zip(as_unit_table(&f, v, n)) {
                    *u *= x;
                }
            } else {
                coupled = Some(f);
            }
        }
        factors = rest;
        match coupled {
            None => scalar *= unit.iter().sum::<Complex64>(),
            Some(f) => {
                let cv = f.coeffs[v];
                let mut coeffs = f.coeffs.clone();
                coeffs[v] = 0;
                let range = n * coeffs.iter().map(|c| c.abs()).sum::<i64>();
                let values = (-range..=range)
                    .map(|i| {
                        unit.iter()
                            .enumerate()
                            .map(|(jj, u)| *u * f.at(i + cv * (jj as i64 - n)))
                            .sum::<Complex64>()
                    })
                    .collect();
                let reduced = Factor {
                    coeffs,
                    min: -range,
                    values,
                };
                if reduced.is_constant() {
                    scalar *= reduced.at(0);
                } else {
                    factors.push(reduced);
                }
            }
        }
        if remaining.is_empty() {
            return scalar;
        }
    }

    if remaining.is_empty() {
        return scalar;
    }
    // No variable can be eliminated by a single correlation: branch on one.
    let v = remaining[0];
    let rest: Vec<usize> = remaining[1..].to_vec();
    let mut total = Complex64::new(0.0, 0.0);
    for j in -n..=n {
        let fixed: Vec<Factor> = factors
            .iter()
            .map(|f| {
                if !f.involves(v) {
                    return f.clone();
                }
                let shift = f.coeffs[v] * j;
                let mut coeffs = f.coeffs.clone();
                coeffs[v] = 0;
                let range = n * coeffs.iter().map(|c| c.abs()).sum::<i64>();
                Factor {
                    values: (-range..=range).map(|i| f.at(i + shift)).collect(),
                    coeffs,
                    min: -range,
                }
            })
            .collect();
        total += contract(fixed, &rest, n);
    }
    scalar * total
}

const MAX_HEIGHT: f64 = 320.0;
const MIN_STEP: f64 = 1.0 / 128.0;

fn default_tolerance(dimension: usize) -> f64 {
    if dimension <= 2 {
        1e-6
    } else {
        1e-3
    }
}

/// N-variate Fox H integral (N ≤ 4) by a trapezoid rule on a shared lattice.
///
/// All contours use the same step h, so every coupled gamma factor becomes a
/// one-dimensional table over an integer combination of the lattice indices
/// and the N-fold sum collapses by successive correlations. The step halves
/// until |S_h − S_2h| meets the tolerance; the height doubles until the outer
/// tenth of the box carries less than 1e-12 of the sum. Failing either within
/// the built-in limits returns the best value with `tolerance_met = false`.
pub fn fox_h_multi(spec: &FoxHSpec, args: &[f64]) -> Result<FoxHResult> {
    spec.validate()?;
    if args.len() != spec.dimension {
        return Err(Error::InvalidParameter(format!(
            "fox_h_multi got {} arguments for dimension {}",
            args.len(),
            spec.dimension
        )));
    }
    if let Some(z) = args.iter().find(|z| !(**z > 0.0) || !z.is_finite()) {
        return Err(Error::InvalidParameter(format!("Fox H argument {z} must be positive")));
    }
    let tol = spec.tolerance.unwrap_or_else(|| default_tolerance(spec.dimension));
    let lattice = Lattice::new(spec, args)?;
    let mut height = spec.truncation_height;
    let mut h = 0.1f64.min(height / spec.panel_count as f64);
    loop {
        let n = (height / h).round() as i64;
        let fine = lattice.sum(h, n);
        let shell = lattice.sum(h, n - (n / 10).max(1));
        let tail = (fine - shell).norm();
        let mag = fine.norm().max(f64::MIN_POSITIVE);
        if tail > 1e-12 * mag && height < MAX_HEIGHT {
            height *= 2.0;
            continue;
        }
        let coarse = lattice.sum(2.0 * h, n / 2);
        let step_err = (fine - coarse).norm();
        let error_estimate = step_err + tail;
        if error_estimate > tol * mag && h > MIN_STEP {
            h *= 0.5;
            continue;
        }
        if fine.im.abs() > 1e-8 * fine.re.abs() + error_estimate {
            return Err(Error::InvalidParameter(format!(
                "Fox H integral is not real-valued ({fine})"
            )));
        }
        return Ok(FoxHResult {
            value: fine.re,
            error_estimate,
            tolerance: tol,
            tolerance_met: error_estimate <= tol * mag,
            step: h,
            height,
        });
    }
}
