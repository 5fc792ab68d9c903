use ars_secrecy::channel::ArsParams;
use ars_secrecy::mc::{simulate, McConfig};
use ars_secrecy::presets::fig4;
use ars_secrecy::quadrature::QuadConfig;
use ars_secrecy::secrecy::{sop_quadrature, SecrecyScenario};

fn link(snr: f64) -> ArsParams {
    ArsParams::new(0.5, 50.0 / 3.0, 10.0 / 3.0, 0.5, snr).unwrap()
}

#[test]
fn identical_links_pnz_is_one_half() {
    let s = SecrecyScenario::new(link(5.0), link(5.0), 0.5).unwrap();
    for seed in [1, 2, 3] {
        let e = simulate(&s, &McConfig::new(200_000, seed));
        assert!((e.pnz - 0.5).abs() < 3.0 * e.stderr_pnz);
    }
}

#[test]
fn fixed_seed_is_bitwise_reproducible() {
    let s = SecrecyScenario::new(link(20.0), link(2.0), 0.5).unwrap();
    let c = McConfig::new(150_000, 42);
    assert_eq!(simulate(&s, &c), simulate(&s, &c));
    assert_ne!(simulate(&s, &c), simulate(&s, &McConfig::new(150_000, 43)));
}

#[test]
fn zero_rate_sop_complements_pnz() {
    let s = SecrecyScenario::new(link(8.0), link(3.0), 0.0).unwrap();
    let e = simulate(&s, &McConfig::new(100_000, 9));
    assert_eq!(e.sop + e.pnz, 1.0);
}

#[test]
fn partial_batches_are_counted() {
    let s = SecrecyScenario::new(link(8.0), link(3.0), 0.5).unwrap();
    let c = McConfig { n_samples: 12_345, seed: 1, batch_size: 1000 };
    assert_eq!(simulate(&s, &c).n_samples, 12_345);
}

#[test]
fn stderr_shrinks_by_root_two() {
    let s = SecrecyScenario::new(link(8.0), link(3.0), 0.5).unwrap();
    let mut ratio = 0.0;
    let seeds = 1..=8u64;
    for seed in seeds.clone() {
        let a = simulate(&s, &McConfig::new(100_000, seed));
        let b = simulate(&s, &McConfig::new(200_000, seed));
        ratio += a.stderr_asc / b.stderr_asc;
    }
    ratio /= seeds.count() as f64;
    assert!((ratio / 2f64.sqrt() - 1.0).abs() < 0.1, "{ratio}");
}

#[test]
fn fig4_sop_matches_quadrature() {
    let s = fig4().curves[1].scenario(20.0).unwrap();
    let e = simulate(&s, &McConfig::new(1_000_000, 5));
    let q = sop_quadrature(&s, &QuadConfig::default()).unwrap().value;
    assert!((e.sop - q).abs() < 3.0 * e.stderr_sop, "{} vs {q}", e.sop);
}
