use ars_secrecy::quadrature::{integrate_interval, integrate_semi_infinite, QuadConfig};
use ars_secrecy::Error;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

#[test]
fn exponential() {
    let r = integrate_semi_infinite(|x| (-x).exp(), &cfg()).unwrap();
    assert!((r.value - 1.0).abs() < 1e-12);
}

#[test]
fn first_moment_of_exponential() {
    let r = integrate_semi_infinite(|x| x * (-x).exp(), &cfg()).unwrap();
    assert!((r.value - 1.0).abs() < 1e-12);
}

#[test]
fn gamma_three_and_a_half() {
    let r = integrate_semi_infinite(|x| x.powf(2.5) * (-x).exp(), &cfg()).unwrap();
    assert!((r.value - 3.323_350_970_447_842_6).abs() < 1e-9);
}

#[test]
fn log_kink_at_origin() {
    // ∫ ln(1+x) e^{−x} dx = e·E1(1)
    let r = integrate_semi_infinite(|x| x.ln_1p() * (-x).exp(), &cfg()).unwrap();
    assert!((r.value - 0.596_347_362_323_194_1).abs() < 1e-10);
}

#[test]
fn finite_interval() {
    let r = integrate_interval(|x| x.sin(), 0.0, std::f64::consts::PI, &cfg()).unwrap();
    assert!((r.value - 2.0).abs() < 1e-12);
}

#[test]
fn linearity() {
    let f = |x: f64| (-x).exp() * (1.0 + x * x);
    let g = |x: f64| 1.0 / (1.0 + x).powi(3);
    let (a, b) = (2.5, -0.75);
    let fi = integrate_semi_infinite(f, &cfg()).unwrap().value;
    let gi = integrate_semi_infinite(g, &cfg()).unwrap().value;
    let hi = integrate_semi_infinite(|x| a * f(x) + b * g(x), &cfg()).unwrap().value;
    assert!(((a * fi + b * gi) - hi).abs() / hi.abs() < 1e-12);
}

#[test]
fn error_estimate_bounds_true_error() {
    let loose = QuadConfig { relative_tolerance: 1e-6, ..cfg() };
    let tight = QuadConfig { relative_tolerance: 1e-13, ..cfg() };
    let cases: [fn(f64) -> f64; 3] = [
        |x| x.powf(2.5) * (-x).exp(),
        |x| x.ln_1p() * (-0.3 * x).exp(),
        |x| 1.0 / (1.0 + x * x),
    ];
    for f in cases {
        let a = integrate_semi_infinite(f, &loose).unwrap();
        let b = integrate_semi_infinite(f, &tight).unwrap();
        assert!(a.error_estimate >= (a.value - b.value).abs());
    }
}

#[test]
fn nan_integrand_is_reported() {
    let r = integrate_semi_infinite(|x| if x > 1.0 { f64::NAN } else { 1.0 }, &cfg());
    assert!(matches!(r, Err(Error::NanIntegrand(x)) if x > 1.0));
}

#[test]
fn subdivision_limit_is_reported() {
    let c = QuadConfig { max_subdivisions: 3, relative_tolerance: 1e-15, absolute_tolerance: 0.0 };
    let r = integrate_semi_infinite(|x| (10.0 * x).sin().abs() * (-x).exp(), &c);
    assert!(matches!(r, Err(Error::SubdivisionLimit { .. })));
}
