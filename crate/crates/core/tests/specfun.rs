use ars_secrecy::specfun::*;
use ars_secrecy::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn ln_gamma_values() {
    assert_eq!(ln_gamma(Complex64::new(1.0, 0.0)).unwrap().norm(), 0.0);
    let half = ln_gamma(Complex64::new(0.5, 0.0)).unwrap();
    assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
    let z = ln_gamma(Complex64::new(3.7, 2.1)).unwrap();
    assert!((z.re - 0.785_346_958_073_822_4).abs() < 1e-13);
    assert!((z.im - 2.583_012_925_115_262_2).abs() < 1e-13);
}

#[test]
fn ln_gamma_reproduces_gamma_on_negative_axis() {
    let z = ln_gamma(Complex64::new(-2.5, 0.0)).unwrap().exp();
    assert!(rel(z.re, -0.945_308_720_482_941_9) < 1e-13);
    assert!(z.im.abs() < 1e-13);
}

#[test]
fn ln_gamma_poles() {
    for x in [0.0, -1.0, -7.0] {
        assert!(matches!(ln_gamma(Complex64::new(x, 0.0)), Err(Error::Pole(_))));
    }
    assert!(matches!(gamma_real(-3.0 + 1e-12), Err(Error::Pole(_))));
}

#[test]
fn pochhammer_values() {
    assert_eq!(pochhammer(3.3, 0), 1.0);
    assert_eq!(pochhammer(1.0, 5), 120.0);
    assert_eq!(pochhammer(-2.0, 3), 0.0);
}

#[test]
fn kummer_values() {
    let p = SeriesPolicy::default();
    assert_eq!(kummer_1f1(0.3, 1.7, 0.0, &p).unwrap(), 1.0);
    assert!(rel(kummer_1f1(1.0, 1.0, 2.5, &p).unwrap(), 2.5f64.exp()) < 1e-14);
    assert!(rel(kummer_1f1(0.5, 1.0, 3.0, &p).unwrap(), 7.380_101_321_477_4) < 1e-13);
}

#[test]
fn kummer_large_argument() {
    // e^{−z}·1F1(1, 1, z) = 1 and 1F1(0.5, 1.5, −z) has the large-z tail √π/(2√z).
    let p = SeriesPolicy::default();
    assert!(rel(kummer_1f1_scaled(1.0, 1.0, 400.0, &p).unwrap(), 1.0) < 1e-14);
    let v = kummer_1f1(0.5, 1.5, -900.0, &p).unwrap();
    assert!(rel(v, std::f64::consts::PI.sqrt() / 60.0) < 1e-12);
}

#[test]
fn kummer_rejects_lower_pole() {
    assert!(matches!(
        kummer_1f1(0.5, -2.0, 1.0, &SeriesPolicy::default()),
        Err(Error::Pole(_))
    ));
}

#[test]
fn phi2_values() {
    let p = SeriesPolicy::default();
    assert_eq!(humbert_phi2(0.3, 0.4, 2.0, 0.0, 0.0, &p).unwrap().value, 1.0);
    let v = humbert_phi2(0.7, 0.3, 2.0, 1.5, 0.0, &p).unwrap().value;
    assert!(rel(v, kummer_1f1(0.7, 2.0, 1.5, &p).unwrap()) < 1e-14);
    let w = humbert_phi2(-0.5, 0.5, 2.0, -4.0, -1.0, &p).unwrap();
    assert!(rel(w.value, 1.464_327_877_605_618_2) < 1e-12);
    assert!(!w.precision_warning);
}

#[test]
fn phi2_flags_cancellation() {
    let w = humbert_phi2(-40.5, 0.5, 2.0, 30.0, 1.0, &SeriesPolicy::default()).unwrap();
    assert!(w.precision_warning, "cancellation {}", w.cancellation);
    let ok = humbert_phi2(0.5, 0.5, 2.0, -25.0, -25.0, &SeriesPolicy::default()).unwrap();
    assert!(!ok.precision_warning);
    let k = kummer_1f1(1.0, 2.0, -25.0, &SeriesPolicy::default()).unwrap();
    assert!(rel(ok.value, k) < 1e-13);
}

#[test]
fn laguerre_values() {
    assert_eq!(laguerre_generalized(0, 1.3, 2.2), 1.0);
    assert_eq!(laguerre_generalized(1, 2.0, 3.0), 0.0);
    assert!((laguerre_generalized(5, 0.5, 2.0) - 0.435_156_25).abs() < 1e-14);
}

#[test]
fn meijer_g_values() {
    let ln = FoxHSpec::meijer(1, 2, &[1.0, 1.0], &[1.0, 0.0]).unwrap();
    assert!(rel(meijer_g(&ln, 1.0).unwrap(), std::f64::consts::LN_2) < 1e-10);
    let exp = FoxHSpec::meijer(1, 0, &[], &[0.0]).unwrap();
    assert!(rel(meijer_g(&exp, 1.0).unwrap(), (-1.0f64).exp()) < 1e-10);
    let g = FoxHSpec::meijer(1, 3, &[-1.0, 1.0, 1.0], &[1.0, 0.0]).unwrap();
    assert!(rel(meijer_g(&g, 2.0).unwrap(), 1.461_455_316_241_865_2) < 1e-10);
}

#[test]
fn meijer_g_log_identity() {
    let ln = FoxHSpec::meijer(1, 2, &[1.0, 1.0], &[1.0, 0.0]).unwrap();
    for x in [0.1, 1.0, 10.0, 100.0] {
        let v = meijer_g(&ln, x).unwrap();
        assert!(rel(v, f64::ln_1p(x)) < 1e-10, "x = {x}: {v}");
    }
}

#[test]
fn contour_violation_is_reported() {
    let vt = VariableTerms::new(&[(0.0, 1.0), (1.0, -1.0)], &[]);
    let r = FoxHSpec::new(vec![vt], vec![], vec![], vec![-0.2]);
    assert!(matches!(r, Err(Error::ContourViolation(_))));
}

#[test]
fn interleaved_poles_are_rejected() {
    let vt = VariableTerms::new(&[(0.0, 1.0), (-1.0, -1.0)], &[]);
    assert!(matches!(vt.midpoint_abscissa(), Err(Error::ContourViolation(_))));
}

#[test]
fn dimension_limit() {
    let vt = VariableTerms::new(&[(1.0, 1.0)], &[]);
    let r = FoxHSpec::new(vec![vt; 5], vec![], vec![], vec![0.0; 5]);
    assert!(matches!(r, Err(Error::DimensionLimit(5))));
}

#[test]
fn fox_h_one_variable_matches_meijer_g() {
    for (m, n, a, b, z) in [
        (1, 2, vec![1.0, 1.0], vec![1.0, 0.0], 3.0),
        (1, 3, vec![-1.0, 1.0, 1.0], vec![1.0, 0.0], 2.0),
        (1, 0, vec![], vec![0.5], 0.7),
    ] {
        let spec = FoxHSpec::meijer(m, n, &a, &b).unwrap().with_tolerance(1e-12);
        let g = meijer_g(&spec, z).unwrap();
        let h = fox_h_multi(&spec, &[z]).unwrap();
        assert!(h.tolerance_met);
        assert!(rel(h.value, g) < 1e-10, "{g} vs {}", h.value);
    }
}

#[test]
fn fox_h_product_of_independent_variables() {
    // Without coupling terms the integral factorizes: e^{−x}·ln(1+y).
    let e = VariableTerms::new(&[(0.0, 1.0)], &[]);
    let l = VariableTerms::new(&[(1.0, 1.0), (0.0, -1.0), (0.0, -1.0)], &[(1.0, -1.0)]);
    let spec = FoxHSpec::new(vec![e, l], vec![], vec![], vec![0.5, -0.5]).unwrap();
    let h = fox_h_multi(&spec, &[0.8, 4.0]).unwrap();
    assert!(rel(h.value, (-0.8f64).exp() * 5f64.ln()) < 1e-8);
}

#[test]
fn fox_h_rejects_fractional_coupling() {
    let vt = VariableTerms::new(&[(1.0, 1.0)], &[]);
    let spec = FoxHSpec::new(
        vec![vt.clone(), vt],
        vec![GammaTerm::new(2.0, &[0.5, 1.0])],
        vec![],
        vec![0.0, 0.0],
    )
    .unwrap();
    assert!(matches!(fox_h_multi(&spec, &[1.0, 1.0]), Err(Error::NotApplicable(_))));
}

#[test]
fn incomplete_gamma_complements() {
    for (a, x) in [(0.5, 0.1), (3.0, 2.0), (10.0, 30.0), (40.0, 35.0)] {
        let (p, q) = regularized_gamma(a, x);
        assert!((p + q - 1.0).abs() < 1e-14);
    }
    assert!((gamma_q(1.0, 2.0) - (-2.0f64).exp()).abs() < 1e-15);
}

#[test]
fn digamma_values() {
    assert!((digamma(1.0) + 0.577_215_664_901_532_9).abs() < 1e-14);
    assert!((digamma(0.5) + 1.963_510_026_021_423_5).abs() < 1e-14);
}

#[test]
fn kernels_are_deterministic() {
    let p = SeriesPolicy::default();
    let a = humbert_phi2(0.3, 0.7, 2.0, -7.0, -3.0, &p).unwrap();
    let b = humbert_phi2(0.3, 0.7, 2.0, -7.0, -3.0, &p).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    let g = FoxHSpec::meijer(1, 2, &[1.0, 1.0], &[1.0, 0.0]).unwrap();
    assert_eq!(
        meijer_g(&g, 5.0).unwrap().to_bits(),
        meijer_g(&g, 5.0).unwrap().to_bits()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pochhammer_recurrence(a in -5.0f64..5.0, n in 0usize..20) {
        let lhs = pochhammer(a, n + 1);
        let rhs = pochhammer(a, n) * (a + n as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn phi2_collapses_to_kummer(b1 in -2.0f64..3.0, b2 in -2.0f64..3.0, gap in 0.0f64..3.0, x in -20.0f64..20.0) {
        // c ≥ b1 + b2 keeps the transformed series free of sign changes.
        let c = b1 + b2 + gap;
        prop_assume!(c >= 0.5);
        let p = SeriesPolicy::default();
        let phi = humbert_phi2(b1, b2, c, x, 0.0, &p).unwrap().value;
        let k = kummer_1f1(b1, c, x, &p).unwrap();
        prop_assert!((phi - k).abs() <= 1e-12 * k.abs().max(1e-300) + 1e-14 * k.abs().max(1.0), "{phi} vs {k}");
    }

    #[test]
    fn kummer_differential_equation(a in -2.0f64..3.0, b in 0.5f64..4.0, zi in 0usize..3) {
        let z = [0.5, 2.0, 10.0][zi];
        let p = SeriesPolicy::default();
        let h = 1e-4;
        let f = |x: f64| kummer_1f1(a, b, x, &p).unwrap();
        let (fm, f0, fp) = (f(z - h), f(z), f(z + h));
        let d1 = (fp - fm) / (2.0 * h);
        let d2 = (fp - 2.0 * f0 + fm) / (h * h);
        let res = z * d2 + (b - z) * d1 - a * f0;
        let scale = (z * d2).abs() + ((b - z) * d1).abs() + (a * f0).abs();
        // Series rounding at the three stencil points, amplified by 1/h², floors the residual.
        let floor = 64.0 * f64::EPSILON * z * f0.abs().max(fp.abs()).max(fm.abs()) / (h * h);
        prop_assert!(res.abs() <= 1e-8 * scale + floor, "residual {res}");
    }

    #[test]
    fn ln_gamma_recurrence(re in 0.1f64..20.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let lhs = ln_gamma(z + 1.0).unwrap().exp();
        let rhs = ln_gamma(z).unwrap().exp() * z;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }
}
