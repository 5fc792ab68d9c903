//! Seeded Monte-Carlo estimates of the secrecy metrics from channel draws.
//!
//! Samples are split into batches. Each batch draws Bob and Eve from two
//! independent ChaCha8 streams keyed by (seed, batch index), so results are
//! reproducible and independent of thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::secrecy::SecrecyScenario;

const MAIN_STREAM_KEY: u64 = 0x6d61_696e_5f6c_696e;
const EVE_STREAM_KEY: u64 = 0x6576_655f_6c69_6e6b;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub n_samples: usize,
    pub seed: u64,
    pub batch_size: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { n_samples: 1_000_000, seed: 1, batch_size: 100_000 }
    }
}

impl McConfig {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        McConfig { n_samples: n_samples.max(1), seed, ..McConfig::default() }
    }
}

/// Metric estimates with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub asc: f64,
    pub sop: f64,
    pub pnz: f64,
    pub stderr_asc: f64,
    pub stderr_sop: f64,
    pub stderr_pnz: f64,
    pub n_samples: usize,
}

/// Running sums for one batch.
#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    n: usize,
    mean: f64,
    m2: f64,
    outages: usize,
    positive: usize,
}

impl Tally {
    fn push(&mut self, cs: f64, outage: bool, positive: bool) {
        self.n += 1;
        let d = cs - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (cs - self.mean);
        self.outages += outage as usize;
        self.positive += positive as usize;
    }

    fn merge(self, o: Tally) -> Tally {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        let (na, nb) = (self.n as f64, o.n as f64);
        Tally {
            n,
            mean: self.mean + d * nb / n as f64,
            m2: self.m2 + o.m2 + d * d * na * nb / n as f64,
            outages: self.outages + o.outages,
            positive: self.positive + o.positive,
        }
    }
}

fn stream(seed: u64, key: u64, batch: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ key);
    rng.set_stream(batch as u64);
    rng
}

fn run_batch(s: &SecrecyScenario, config: &McConfig, batch: usize, size: usize) -> Tally {
    let mut rb = stream(config.seed, MAIN_STREAM_KEY, batch);
    let mut re = stream(config.seed, EVE_STREAM_KEY, batch);
    let rs = s.rs();
    let mut t = Tally::default();
    for _ in 0..size {
        let gb = s.main.sample(&mut rb);
        let ge = s.eve.sample(&mut re);
        let cs = (gb.ln_1p() - ge.ln_1p()).max(0.0);
        t.push(cs, gb < rs * ge + rs - 1.0, gb > ge);
    }
    t
}

fn proportion_stderr(p: f64, n: f64) -> f64 {
    (p * (1.0 - p) / n).sqrt()
}

/// Estimates ASC (nats), SOP and PNZ from paired independent draws.
pub fn simulate(s: &SecrecyScenario, config: &McConfig) -> McEstimate {
    let n = config.n_samples.max(1);
    let batch = config.batch_size.max(1);
    let batches = n.div_ceil(batch);
    let tallies: Vec<Tally> = (0..batches)
        .into_par_iter()
        .map(|b| run_batch(s, config, b, batch.min(n - b * batch)))
        .collect();
    let t = tallies.into_iter().fold(Tally::default(), Tally::merge);
    let nf = t.n as f64;
    let sop = t.outages as f64 / nf;
    let pnz = t.positive as f64 / nf;
    let var = if t.n > 1 { t.m2 / (nf - 1.0) } else { 0.0 };
    McEstimate {
        asc: t.mean,
        sop,
        pnz,
        stderr_asc: (var / nf).sqrt(),
        stderr_sop: proportion_stderr(sop, nf),
        stderr_pnz: proportion_stderr(pnz, nf),
        n_samples: t.n,
    }
}
