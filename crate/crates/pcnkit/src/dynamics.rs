//! Link-addition dynamics: replay long-range links onto the short-range
//! backbone one at a time and track betweenness / path statistics per step.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metrics::betweenness_centrality;
use crate::network::{partition_links, ContactNetwork, Edge};
use crate::util::fmt_sig6;

/// Order in which pending links are added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OrderMode {
    /// Non-decreasing sequence distance, ties shuffled (seeded).
    SeqDist,
    /// Uniform shuffle of all pending links.
    Random,
}

/// Network statistics after the t-th link addition.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TrajectoryRecord {
    pub t: usize,
    /// Link added at this step; `None` for the t=0 baseline.
    pub added: Option<Edge>,
    /// Distance recorded for the added link (placement distance).
    pub added_dist: u32,
    pub edges: usize,
    pub bt_mean: f64,
    pub bt_std: f64,
    pub bt_median: f64,
    pub bt_max: f64,
    pub apl: Option<f64>,
    pub hpl: Option<f64>,
    pub components: usize,
}

/// Time-indexed record of one link-addition run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub records: Vec<TrajectoryRecord>,
    pub order_mode: OrderMode,
    pub seed: u64,
    /// Total number of link additions (final t).
    pub total_steps: usize,
    pub stride: usize,
    snapshots: BTreeMap<usize, Vec<f64>>,
}

impl Trajectory {
    pub fn final_record(&self) -> &TrajectoryRecord {
        self.records.last().expect("trajectory has a t=0 record")
    }

    /// Steps at which full betweenness vectors were stored.
    pub fn snapshot_steps(&self) -> Vec<usize> {
        self.snapshots.keys().copied().collect()
    }

    /// CSV rows matching the documented trajectory header.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("t,seq_dist,edges,bt_mean,bt_std,bt_median,bt_max,apl,hpl,components\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.t,
                r.added_dist,
                r.edges,
                fmt_sig6(r.bt_mean),
                fmt_sig6(r.bt_std),
                fmt_sig6(r.bt_median),
                fmt_sig6(r.bt_max),
                r.apl.map(fmt_sig6).unwrap_or_default(),
                r.hpl.map(fmt_sig6).unwrap_or_default(),
                r.components,
            ));
        }
        out
    }
}

/// Stored per-node betweenness vector for a snapshot step.
pub fn betweenness_distribution_at(traj: &Trajectory, t: usize) -> Result<&[f64]> {
    traj.snapshots
        .get(&t)
        .map(Vec::as_slice)
        .ok_or(Error::SnapshotNotRecorded(t))
}

/// apl over reachable pairs, harmonic path length, component count.
fn path_scan(n: usize, adj: &[Vec<u32>]) -> (Option<f64>, Option<f64>, usize) {
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    let mut reachable: u64 = 0;
    let mut dist_sum: u128 = 0;
    let mut inv_sum = 0.0f64;
    for s in 0..n {
        dist.fill(u32::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s as u32);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize];
            for &w in &adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dv + 1;
                    queue.push_back(w);
                }
            }
        }
        for &d in dist.iter().skip(s + 1) {
            if d != u32::MAX {
                reachable += 1;
                dist_sum += d as u128;
                inv_sum += 1.0 / d as f64;
            }
        }
    }
    let apl = (reachable > 0).then(|| dist_sum as f64 / reachable as f64);
    let hpl = (inv_sum > 0.0).then(|| {
        let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
        pairs / inv_sum
    });

    // component count
    let mut seen = vec![false; n];
    let mut components = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        queue.clear();
        queue.push_back(s as u32);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (apl, hpl, components)
}

/// Shared engine: add `additions` onto `base` one per step, recording
/// statistics every `stride` steps (plus t=0, the final step, and every
/// requested snapshot step).
#[allow(clippy::too_many_arguments)]
pub(crate) fn run_additions(
    n: usize,
    th: f64,
    source: &str,
    base: Vec<Edge>,
    additions: &[(Edge, u32)],
    order_mode: OrderMode,
    seed: u64,
    snapshot_steps: &[usize],
    stride: usize,
) -> Trajectory {
    let stride = stride.max(1);
    let total = additions.len();
    let mut edges = base;
    let mut records = Vec::new();
    let mut snapshots = BTreeMap::new();

    for t in 0..=total {
        let mut added = None;
        let mut added_dist = 0;
        if t > 0 {
            let (edge, dist) = additions[t - 1];
            edges.push(edge);
            added = Some(edge);
            added_dist = dist;
        }
        let want_snapshot = snapshot_steps.contains(&t);
        let record_here = t == 0 || t == total || t % stride == 0 || want_snapshot;
        if !record_here {
            continue;
        }
        let view = ContactNetwork {
            n,
            th,
            source: source.to_string(),
            edges: edges.clone(),
        };
        let (bt_values, bt) = betweenness_centrality(&view);
        let (apl, hpl, components) = path_scan(n, &view.adjacency());
        if want_snapshot {
            snapshots.insert(t, bt_values);
        }
        records.push(TrajectoryRecord {
            t,
            added,
            added_dist,
            edges: edges.len(),
            bt_mean: bt.mean,
            bt_std: bt.std,
            bt_median: bt.median,
            bt_max: bt.max,
            apl,
            hpl,
            components,
        });
    }

    Trajectory {
        records,
        order_mode,
        seed,
        total_steps: total,
        stride,
        snapshots,
    }
}

/// Replay the LE links of `net` onto its SE backbone.
pub fn simulate_folding(
    net: &ContactNetwork,
    le_th: u32,
    order_mode: OrderMode,
    seed: u64,
    snapshot_steps: &[usize],
    stride: usize,
) -> Result<Trajectory> {
    let part = partition_links(net, le_th);
    if part.le.is_empty() {
        return Err(Error::NoLongRangeLinks(le_th));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending: Vec<(Edge, u32)> = part.le.iter().map(|&e| (e, e.seq_dist)).collect();
    match order_mode {
        OrderMode::SeqDist => {
            // random tiebreak keys give a uniform shuffle within each
            // sequence-distance group
            let mut keyed: Vec<(u32, u64, (Edge, u32))> =
                pending.into_iter().map(|p| (p.1, rng.gen(), p)).collect();
            keyed.sort_by_key(|&(d, k, _)| (d, k));
            pending = keyed.into_iter().map(|(_, _, p)| p).collect();
        }
        OrderMode::Random => {
            pending.shuffle(&mut rng);
        }
    }
    Ok(run_additions(
        net.n,
        net.th,
        &format!("{}/folding", net.source),
        part.se.clone(),
        &pending,
        order_mode,
        seed,
        snapshot_steps,
        stride,
    ))
}

/// Transition indicators extracted from a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Transition {
    /// Step with the largest windowed drop in harmonic path length.
    pub hpl_drop_step: usize,
    pub hpl_drop: f64,
    /// Step with the largest forward jump in median betweenness.
    pub median_spike_step: usize,
    pub median_spike: f64,
}

pub const DEFAULT_TRANSITION_WINDOW: usize = 5;

/// Windowed-drop heuristic over the recorded hpl series, with the median
/// betweenness spike as a secondary indicator.
pub fn detect_transition(traj: &Trajectory, window: usize) -> Result<Transition> {
    let len = traj.records.len();
    if window == 0 || len <= 2 * window {
        return Err(Error::TrajectoryTooShort { len, window });
    }
    let hpl: Vec<f64> = traj
        .records
        .iter()
        .map(|r| r.hpl.unwrap_or(f64::NAN))
        .collect();
    let mean = |slice: &[f64]| slice.iter().sum::<f64>() / slice.len() as f64;
    let mut best_idx = window;
    let mut best_drop = f64::NEG_INFINITY;
    for idx in window..=(len - window) {
        let drop = mean(&hpl[idx - window..idx]) - mean(&hpl[idx..(idx + window).min(len)]);
        if drop.is_finite() && drop > best_drop {
            best_drop = drop;
            best_idx = idx;
        }
    }

    let mut spike_idx = 1;
    let mut spike = f64::NEG_INFINITY;
    for idx in 1..len {
        let jump = traj.records[idx].bt_median - traj.records[idx - 1].bt_median;
        if jump > spike {
            spike = jump;
            spike_idx = idx;
        }
    }

    Ok(Transition {
        hpl_drop_step: traj.records[best_idx].t,
        hpl_drop: best_drop,
        median_spike_step: traj.records[spike_idx].t,
        median_spike: spike,
    })
}
