//! Parameter sets of the reference figures, the truncation table and the
//! validation grids.
//!
//! SNRs are given in dB here and converted once when a scenario is built.

use crate::channel::ArsParams;
use crate::secrecy::{MetricKind, SecrecyScenario};
use crate::{db_to_linear, Result};

/// One link without its mean SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkShape {
    pub p: f64,
    pub k1: f64,
    pub k2: f64,
    pub m: f64,
}

impl LinkShape {
    pub const fn new(p: f64, k1: f64, k2: f64, m: f64) -> Self {
        LinkShape { p, k1, k2, m }
    }

    pub fn at_db(&self, mean_snr_db: f64) -> Result<ArsParams> {
        ArsParams::new(self.p, self.k1, self.k2, self.m, db_to_linear(mean_snr_db))
    }
}

/// One curve of a figure: γ̄_B varies along the x axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub main: LinkShape,
    pub eve: LinkShape,
    pub eve_snr_db: f64,
    pub target_rate: f64,
}

impl Curve {
    pub fn scenario(&self, main_snr_db: f64) -> Result<SecrecyScenario> {
        SecrecyScenario::new(
            self.main.at_db(main_snr_db)?,
            self.eve.at_db(self.eve_snr_db)?,
            self.target_rate,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: &'static str,
    pub metric: MetricKind,
    pub title: &'static str,
    pub curves: Vec<Curve>,
    /// γ̄_B grid in dB.
    pub grid_db: Vec<f64>,
}

/// 0 to 40 dB in 2 dB steps.
pub fn default_grid() -> Vec<f64> {
    (0..=20).map(|i| 2.0 * i as f64).collect()
}

/// Target rate for the SOP figures, whose captions do not state one.
pub const FIGURE_TARGET_RATE: f64 = 0.5;

fn curve(label: String, main: LinkShape, eve: LinkShape, eve_snr_db: f64) -> Curve {
    Curve { label, main, eve, eve_snr_db, target_rate: FIGURE_TARGET_RATE }
}

fn fig2_3(id: &'static str, metric: MetricKind, title: &'static str) -> FigurePreset {
    let link = LinkShape::new(0.5, 50.0 / 3.0, 10.0 / 3.0, 0.5);
    FigurePreset {
        id,
        metric,
        title,
        curves: [0.0, 10.0]
            .iter()
            .map(|&e| curve(format!("eve_snr_db={e}"), link, link, e))
            .collect(),
        grid_db: default_grid(),
    }
}

pub fn fig2() -> FigurePreset {
    fig2_3("fig2", MetricKind::Asc, "ASC vs main-link SNR")
}

pub fn fig3() -> FigurePreset {
    fig2_3("fig3", MetricKind::Pnz, "PNZ vs main-link SNR")
}

pub fn fig4() -> FigurePreset {
    let eve = LinkShape::new(0.5, 50.0, 10.0, 0.5);
    FigurePreset {
        id: "fig4",
        metric: MetricKind::Sop,
        title: "SOP vs main-link SNR for several m_B",
        curves: [1.0, 5.0, 10.0]
            .iter()
            .map(|&m| curve(format!("m_b={m}"), LinkShape::new(0.5, 50.0, 10.0, m), eve, 4.0))
            .collect(),
        grid_db: default_grid(),
    }
}

pub fn fig5() -> FigurePreset {
    FigurePreset {
        id: "fig5",
        metric: MetricKind::Pnz,
        title: "PNZ vs main-link SNR for several p",
        curves: [0.1, 0.5, 0.9]
            .iter()
            .map(|&p| {
                let link = LinkShape::new(p, 60.0, 3.0, 0.5);
                curve(format!("p={p}"), link, link, 4.0)
            })
            .collect(),
        grid_db: default_grid(),
    }
}

pub fn fig6() -> FigurePreset {
    let eve = LinkShape::new(0.5, 10.0, 2.0, 0.5);
    FigurePreset {
        id: "fig6",
        metric: MetricKind::Sop,
        title: "SOP vs main-link SNR for several K_B",
        curves: [5.0, 10.0, 20.0]
            .iter()
            .map(|&k| {
                curve(format!("k_b1={k}"), LinkShape::new(0.5, k, k / 5.0, 5.0), eve, 4.0)
            })
            .collect(),
        grid_db: default_grid(),
    }
}

pub fn fig7() -> FigurePreset {
    let main = LinkShape::new(0.5, 100.0, 10.0, 0.5);
    FigurePreset {
        id: "fig7",
        metric: MetricKind::Pnz,
        title: "PNZ vs main-link SNR for several K_E",
        curves: [10.0, 50.0, 100.0]
            .iter()
            .map(|&k| {
                curve(format!("k_e1={k}"), main, LinkShape::new(0.5, k, k / 10.0, 0.5), 4.0)
            })
            .collect(),
        grid_db: default_grid(),
    }
}

pub fn figures() -> Vec<FigurePreset> {
    vec![fig2(), fig3(), fig4(), fig5(), fig6(), fig7()]
}

pub fn figure(id: &str) -> Option<FigurePreset> {
    figures().into_iter().find(|f| f.id.eq_ignore_ascii_case(id))
}

/// A row of the truncation-error table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub row: usize,
    pub main: LinkShape,
    pub eve: LinkShape,
    pub main_snr_db: f64,
    pub eve_snr_db: f64,
    pub target_rate: f64,
    /// Published number of terms for ε < 1e-6.
    pub n_l: usize,
    /// Published ε at n_l.
    pub epsilon: f64,
}

impl Table1Row {
    pub fn scenario(&self) -> Result<SecrecyScenario> {
        SecrecyScenario::new(
            self.main.at_db(self.main_snr_db)?,
            self.eve.at_db(self.eve_snr_db)?,
            self.target_rate,
        )
    }
}

pub fn table1() -> Vec<Table1Row> {
    let row = |row, kb: (f64, f64), ke: (f64, f64), mb, gb, ge, n_l, epsilon| Table1Row {
        row,
        main: LinkShape::new(0.5, kb.0, kb.1, mb),
        eve: LinkShape::new(0.5, ke.0, ke.1, 0.5),
        main_snr_db: gb,
        eve_snr_db: ge,
        target_rate: 0.5,
        n_l,
        epsilon,
    };
    vec![
        row(1, (30.0, 10.0), (30.0, 10.0), 10.0, 30.0, 10.0, 33, 7.32e-7),
        row(2, (30.0, 10.0), (60.0, 20.0), 10.0, 30.0, 10.0, 35, 3.99e-7),
        row(3, (60.0, 20.0), (30.0, 10.0), 10.0, 30.0, 10.0, 56, 4.28e-7),
        row(4, (30.0, 10.0), (30.0, 10.0), 12.0, 30.0, 10.0, 46, 6.53e-7),
        row(5, (30.0, 10.0), (30.0, 10.0), 10.0, 30.0, 8.0, 16, 4.57e-7),
        row(6, (60.0, 20.0), (30.0, 10.0), 10.0, 35.0, 10.0, 8, 1.06e-7),
    ]
}

/// Integer-m scenarios for closed-form/quadrature agreement: equal m on both
/// links over p ∈ {0, 0.5, 1} and two caption K pairs, plus mixed-m pairs.
pub fn integer_grid() -> Vec<SecrecyScenario> {
    let k_pairs = [(50.0 / 3.0, 10.0 / 3.0), (60.0, 3.0)];
    let snrs = [10.0, 20.0, 30.0];
    let mut pairs = Vec::with_capacity(24);
    for m in [1.0, 2.0, 5.0] {
        for p in [0.0, 0.5, 1.0] {
            for (k1, k2) in k_pairs {
                let link = LinkShape::new(p, k1, k2, m);
                pairs.push((link, link));
            }
        }
    }
    for (mb, me) in [(1.0, 2.0), (2.0, 5.0), (5.0, 1.0)] {
        for (k1, k2) in k_pairs {
            pairs.push((LinkShape::new(0.5, k1, k2, mb), LinkShape::new(0.5, k1, k2, me)));
        }
    }
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, (main, eve))| {
            SecrecyScenario::new(
                main.at_db(snrs[i % 3]).expect("preset parameters are valid"),
                eve.at_db(4.0).expect("preset parameters are valid"),
                0.5,
            )
            .expect("preset parameters are valid")
        })
        .collect()
}

/// A (figure, curve, γ̄_B) point checked against simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct McPoint {
    pub figure: &'static str,
    pub curve: String,
    pub main_snr_db: f64,
    pub metric: MetricKind,
    pub scenario: SecrecyScenario,
}

/// Two points per figure: first curve at 10 dB, last curve at 24 dB.
pub fn mc_points() -> Vec<McPoint> {
    let mut out = Vec::new();
    for fig in figures() {
        let picks = [(0usize, 10.0), (fig.curves.len() - 1, 24.0)];
        for (c, db) in picks {
            let cv = &fig.curves[c];
            out.push(McPoint {
                figure: fig.id,
                curve: cv.label.clone(),
                main_snr_db: db,
                metric: fig.metric,
                scenario: cv.scenario(db).expect("preset parameters are valid"),
            });
        }
    }
    out
}
