//! Degree-preserving link randomization (randAll / randSE / randLE).
//!
//! Two eligible links e1(a,b), e2(c,d) are drawn uniformly with replacement;
//! if all four endpoints are distinct and neither e3(a,c) nor e4(b,d) exists
//! anywhere in the network, e3 and e4 replace e1 and e2.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metrics;
use crate::network::{ContactNetwork, Edge};

/// Which link class is eligible for swapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewireMode {
    All,
    SeOnly,
    LeOnly,
}

/// Parameters of one randomization run.
#[derive(Debug, Clone)]
pub struct RewireConfig {
    pub mode: RewireMode,
    pub le_th: u32,
    /// Applied-swap target; `None` means 10x the eligible edge count.
    pub target_swaps: Option<usize>,
    pub seed: u64,
    /// Require both replacement links to stay in the class(es) of the links
    /// they replace.
    pub preserve_class: bool,
}

impl RewireConfig {
    pub fn new(mode: RewireMode, le_th: u32, seed: u64) -> Self {
        RewireConfig {
            mode,
            le_th,
            target_swaps: None,
            seed,
            preserve_class: false,
        }
    }
}

/// Outcome counters of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct RewireStats {
    pub applied: usize,
    pub attempted: usize,
    pub target: usize,
    /// Attempt cap hit with less than half the target applied.
    pub starved: bool,
}

fn is_le(e: &Edge, le_th: u32) -> bool {
    e.seq_dist > le_th
}

/// Randomize the eligible link class of `net`; the input is untouched.
pub fn rewire(net: &ContactNetwork, cfg: &RewireConfig) -> Result<(ContactNetwork, RewireStats)> {
    let mut edges = net.edges.clone();
    let eligible: Vec<usize> = (0..edges.len())
        .filter(|&idx| match cfg.mode {
            RewireMode::All => true,
            RewireMode::SeOnly => !is_le(&edges[idx], cfg.le_th),
            RewireMode::LeOnly => is_le(&edges[idx], cfg.le_th),
        })
        .collect();
    if eligible.len() < 2 {
        return Err(Error::TooFewEligibleEdges(eligible.len()));
    }

    let target = cfg.target_swaps.unwrap_or(10 * eligible.len()).max(1);
    let cap = target.saturating_mul(100);
    let mut existing = net.edge_set();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut applied = 0usize;
    let mut attempted = 0usize;

    while applied < target && attempted < cap {
        attempted += 1;
        let s1 = eligible[rng.gen_range(0..eligible.len())];
        let s2 = eligible[rng.gen_range(0..eligible.len())];
        if s1 == s2 {
            continue;
        }
        let e1 = edges[s1];
        let e2 = edges[s2];
        let (a, b, c, d) = (e1.i, e1.j, e2.i, e2.j);
        if a == c || a == d || b == c || b == d {
            continue;
        }
        let e3 = Edge::new(a, c);
        let e4 = Edge::new(b, d);
        if existing.contains(&e3.key()) || existing.contains(&e4.key()) {
            continue;
        }
        if cfg.preserve_class {
            let mut before = [is_le(&e1, cfg.le_th), is_le(&e2, cfg.le_th)];
            let mut after = [is_le(&e3, cfg.le_th), is_le(&e4, cfg.le_th)];
            before.sort_unstable();
            after.sort_unstable();
            if before != after {
                continue;
            }
        }
        existing.remove(&e1.key());
        existing.remove(&e2.key());
        existing.insert(e3.key());
        existing.insert(e4.key());
        edges[s1] = e3;
        edges[s2] = e4;
        applied += 1;
    }

    let stats = RewireStats {
        applied,
        attempted,
        target,
        starved: applied * 2 < target,
    };
    let rewired = ContactNetwork {
        n: net.n,
        th: net.th,
        source: format!("{}/rand", net.source),
        edges,
    };
    Ok((rewired, stats))
}

/// Metrics of one network as tracked across an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TrialMetrics {
    pub clustering: f64,
    pub assortativity: Option<f64>,
    pub apl: Option<f64>,
    pub hpl: Option<f64>,
    pub diameter: Option<usize>,
}

impl TrialMetrics {
    pub fn of(net: &ContactNetwork) -> Self {
        let paths = metrics::path_summary(net);
        TrialMetrics {
            clustering: metrics::clustering_coefficient(net).mean,
            assortativity: metrics::assortativity(net).ok().flatten(),
            apl: paths.apl,
            hpl: metrics::harmonic_path_length(net).ok(),
            diameter: paths.diameter,
        }
    }

    fn get(&self, name: &str) -> Option<f64> {
        match name {
            "clustering" => Some(self.clustering),
            "assortativity" => self.assortativity,
            "apl" => self.apl,
            "hpl" => self.hpl,
            "diameter" => self.diameter.map(|d| d as f64),
            _ => None,
        }
    }
}

/// Mean ± std of one metric across trials, next to the original value.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MetricDelta {
    pub name: String,
    pub original: Option<f64>,
    pub mean: f64,
    pub std: f64,
    pub samples: usize,
}

/// Ensemble of independently seeded rewires with per-metric summaries.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EnsembleReport {
    pub original: TrialMetrics,
    pub trials: Vec<TrialMetrics>,
    pub stats: Vec<RewireStats>,
    pub summary: Vec<MetricDelta>,
}

pub const ENSEMBLE_METRICS: &[&str] = &["clustering", "assortativity", "apl", "hpl", "diameter"];

/// Run `trials` independent rewires (seed_i = seed + i) and summarise.
pub fn rewire_ensemble(
    net: &ContactNetwork,
    cfg: &RewireConfig,
    trials: usize,
) -> Result<EnsembleReport> {
    let original = TrialMetrics::of(net);
    let mut all = Vec::with_capacity(trials);
    let mut stats = Vec::with_capacity(trials);
    for i in 0..trials {
        let mut trial_cfg = cfg.clone();
        trial_cfg.seed = cfg.seed.wrapping_add(i as u64);
        let (rewired, st) = rewire(net, &trial_cfg)?;
        all.push(TrialMetrics::of(&rewired));
        stats.push(st);
    }
    let summary = ENSEMBLE_METRICS
        .iter()
        .map(|&name| {
            let values: Vec<f64> = all.iter().filter_map(|t| t.get(name)).collect();
            let (mean, std) = metrics::mean_std(&values);
            MetricDelta {
                name: name.to_string(),
                original: original.get(name),
                mean,
                std,
                samples: values.len(),
            }
        })
        .collect();
    Ok(EnsembleReport {
        original,
        trials: all,
        stats,
        summary,
    })
}
