use ars_secrecy::presets::*;
use ars_secrecy::secrecy::MetricKind;

fn shapes(f: &FigurePreset) -> Vec<(LinkShape, LinkShape, f64)> {
    f.curves.iter().map(|c| (c.main, c.eve, c.eve_snr_db)).collect()
}

#[test]
fn fig2_and_fig3_share_links() {
    let l = LinkShape::new(0.5, 50.0 / 3.0, 10.0 / 3.0, 0.5);
    for (f, metric) in [(fig2(), MetricKind::Asc), (fig3(), MetricKind::Pnz)] {
        assert_eq!(f.metric, metric);
        assert_eq!(shapes(&f), vec![(l, l, 0.0), (l, l, 10.0)]);
    }
}

#[test]
fn fig4_manifest() {
    let f = fig4();
    assert_eq!(f.metric, MetricKind::Sop);
    let eve = LinkShape::new(0.5, 50.0, 10.0, 0.5);
    for ((main, e, snr), mb) in shapes(&f).into_iter().zip([1.0, 5.0, 10.0]) {
        assert_eq!(main, LinkShape::new(0.5, 50.0, 10.0, mb));
        assert_eq!((e, snr), (eve, 4.0));
    }
}

#[test]
fn fig5_manifest() {
    let f = fig5();
    assert_eq!(f.metric, MetricKind::Pnz);
    for ((main, eve, snr), p) in shapes(&f).into_iter().zip([0.1, 0.5, 0.9]) {
        assert_eq!(main, LinkShape::new(p, 60.0, 3.0, 0.5));
        assert_eq!((eve, snr), (main, 4.0));
    }
}

#[test]
fn fig6_manifest() {
    let f = fig6();
    assert_eq!(f.metric, MetricKind::Sop);
    for (main, eve, snr) in shapes(&f) {
        assert_eq!((main.p, main.m, main.k1 / main.k2), (0.5, 5.0, 5.0));
        assert_eq!(eve, LinkShape::new(0.5, 10.0, 2.0, 0.5));
        assert_eq!(eve.p * eve.k1 + (1.0 - eve.p) * eve.k2, 6.0);
        assert_eq!(snr, 4.0);
    }
}

#[test]
fn fig7_manifest() {
    let f = fig7();
    assert_eq!(f.metric, MetricKind::Pnz);
    for (main, eve, snr) in shapes(&f) {
        assert_eq!(main, LinkShape::new(0.5, 100.0, 10.0, 0.5));
        assert_eq!((eve.p, eve.m, eve.k1 / eve.k2, snr), (0.5, 0.5, 10.0, 4.0));
    }
}

#[test]
fn grids_and_lookup() {
    for f in figures() {
        assert_eq!(f.grid_db, default_grid());
        assert!(f.curves.iter().all(|c| c.target_rate == FIGURE_TARGET_RATE));
        assert_eq!(figure(&f.id.to_uppercase()).unwrap().id, f.id);
    }
    assert_eq!(default_grid().len(), 21);
    assert!(figure("fig8").is_none());
}

#[test]
fn table_manifest() {
    let rows = table1();
    let n_l: Vec<usize> = rows.iter().map(|r| r.n_l).collect();
    assert_eq!(n_l, [33, 35, 56, 46, 16, 8]);
    for r in &rows {
        assert_eq!((r.eve.m, r.target_rate, r.main.p, r.eve.p), (0.5, 0.5, 0.5, 0.5));
        assert!(r.scenario().is_ok());
    }
}

#[test]
fn validation_sets() {
    let grid = integer_grid();
    assert_eq!(grid.len(), 24);
    assert!(grid.iter().all(|s| s.main.integer_m().is_some() && s.eve.integer_m().is_some()));
    let points = mc_points();
    assert_eq!(points.len(), 12);
    let mut seen: Vec<_> = points.iter().map(|p| (p.figure, p.curve.clone(), p.main_snr_db as i64)).collect();
    seen.dedup();
    assert_eq!(seen.len(), 12);
}
