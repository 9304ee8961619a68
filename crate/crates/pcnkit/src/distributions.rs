//! Link sequence-distance spectra and the cross-network density scaling fit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::network::ContactNetwork;
use crate::util::fmt_sig6;

/// One geometric bin [lo, hi) of the histogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct LogBin {
    pub lo: u32,
    pub hi: u32,
    pub count: u64,
}

/// Exact per-distance link counts plus summary and log-binned views.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SeqDistHistogram {
    pub counts: BTreeMap<u32, u64>,
    pub mean: f64,
    pub median: f64,
    pub max_seq_dist: u32,
    /// max_seq_dist / N.
    pub max_ratio: f64,
    /// Geometric bins of ratio 2, for log-log plotting.
    pub log_binned: Vec<LogBin>,
}

impl SeqDistHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn counts_csv(&self) -> String {
        let mut out = String::from("seq_dist,count\n");
        for (&d, &c) in &self.counts {
            out.push_str(&format!("{d},{c}\n"));
        }
        out
    }

    pub fn log_bins_csv(&self) -> String {
        let mut out = String::from("log_bin_lo,log_bin_hi,count\n");
        for b in &self.log_binned {
            out.push_str(&format!("{},{},{}\n", b.lo, b.hi, b.count));
        }
        out
    }
}

/// Tally links by sequence distance.
pub fn seqdist_histogram(net: &ContactNetwork) -> Result<SeqDistHistogram> {
    if net.m() == 0 {
        return Err(Error::NoEdges);
    }
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for e in &net.edges {
        *counts.entry(e.seq_dist).or_insert(0) += 1;
    }
    let total: u64 = counts.values().sum();
    let sum: u128 = counts.iter().map(|(&d, &c)| d as u128 * c as u128).sum();
    let mean = sum as f64 / total as f64;
    let max_seq_dist = *counts.keys().last().unwrap();

    // median with the midpoint convention
    let targets: [u64; 2] = if total % 2 == 1 {
        [total / 2, total / 2]
    } else {
        [total / 2 - 1, total / 2]
    };
    let mut found = [0.0f64; 2];
    let mut cum = 0u64;
    let mut idx = 0;
    for (&d, &c) in &counts {
        cum += c;
        while idx < 2 && targets[idx] < cum {
            found[idx] = d as f64;
            idx += 1;
        }
        if idx == 2 {
            break;
        }
    }
    let median = 0.5 * (found[0] + found[1]);

    let mut log_binned = Vec::new();
    let mut lo = 1u32;
    while lo <= max_seq_dist {
        let hi = lo.saturating_mul(2);
        let count = counts.range(lo..hi).map(|(_, &c)| c).sum();
        log_binned.push(LogBin { lo, hi, count });
        lo = hi;
    }

    Ok(SeqDistHistogram {
        mean,
        median,
        max_seq_dist,
        max_ratio: max_seq_dist as f64 / net.n as f64,
        counts,
        log_binned,
    })
}

/// Least-squares power-law fit of density against size on log-log axes.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ScalingFit {
    /// (N, density) inputs.
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl ScalingFit {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "n_points": self.points.len(),
        })
    }

    pub fn to_json_string(&self) -> String {
        format!(
            "{{\"slope\":{},\"intercept\":{},\"r_squared\":{},\"n_points\":{}}}",
            fmt_sig6(self.slope),
            fmt_sig6(self.intercept),
            fmt_sig6(self.r_squared),
            self.points.len()
        )
    }
}

/// Fit ln(density) = slope * ln(N) + intercept.
pub fn density_scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            need: 3,
            got: points.len(),
        });
    }
    if points.iter().any(|&(n, d)| n <= 0.0 || d <= 0.0) {
        return Err(Error::NonPositiveValue);
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, d)| (n.ln(), d.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs
        .iter()
        .map(|p| {
            let pred = slope * p.0 + intercept;
            (p.1 - pred) * (p.1 - pred)
        })
        .sum();
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(ScalingFit {
        points: points.to_vec(),
        slope,
        intercept,
        r_squared,
    })
}
