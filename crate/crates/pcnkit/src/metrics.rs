//! Static network statistics: degree, clustering, assortativity, shortest
//! paths, betweenness centrality, hierarchy, and the canonical regular/random
//! reference values.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::network::ContactNetwork;

const UNREACHED: u32 = u32::MAX;

pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub(crate) fn median_of_sorted(values: &[f64]) -> f64 {
    let m = values.len();
    if m == 0 {
        return 0.0;
    }
    if m % 2 == 1 {
        values[m / 2]
    } else {
        0.5 * (values[m / 2 - 1] + values[m / 2])
    }
}

/// Per-node degrees and their summary statistics.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DegreeSummary {
    pub per_node: Vec<usize>,
    pub mean: f64,
    pub std: f64,
    pub median: f64,
    pub min: usize,
    pub max: usize,
    pub histogram: BTreeMap<usize, usize>,
}

pub fn degree_summary(net: &ContactNetwork) -> DegreeSummary {
    let per_node = net.degrees();
    let as_f64: Vec<f64> = per_node.iter().map(|&k| k as f64).collect();
    let (mean, std) = mean_std(&as_f64);
    let mut sorted = as_f64.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut histogram = BTreeMap::new();
    for &k in &per_node {
        *histogram.entry(k).or_insert(0) += 1;
    }
    DegreeSummary {
        mean,
        std,
        median: median_of_sorted(&sorted),
        min: per_node.iter().copied().min().unwrap_or(0),
        max: per_node.iter().copied().max().unwrap_or(0),
        per_node,
        histogram,
    }
}

/// Per-node clustering coefficients plus their mean over all N nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub per_node: Vec<f64>,
    pub mean: f64,
}

/// Watts–Strogatz clustering: c_i = 2 e_i / [k_i (k_i - 1)], zero for k < 2.
pub fn clustering_coefficient(net: &ContactNetwork) -> Clustering {
    let adj = net.adjacency();
    let edges = net.edge_set();
    let mut per_node = vec![0.0f64; net.n];
    for i in 0..net.n {
        let nbrs = &adj[i];
        let k = nbrs.len();
        if k < 2 {
            continue;
        }
        let mut links = 0usize;
        for a in 0..k {
            for b in (a + 1)..k {
                let (u, v) = (nbrs[a].min(nbrs[b]), nbrs[a].max(nbrs[b]));
                if edges.contains(&(u, v)) {
                    links += 1;
                }
            }
        }
        per_node[i] = 2.0 * links as f64 / (k as f64 * (k as f64 - 1.0));
    }
    let mean = if net.n == 0 {
        0.0
    } else {
        per_node.iter().sum::<f64>() / net.n as f64
    };
    Clustering { per_node, mean }
}

/// Theoretical clustering / path-length values for regular and random
/// networks of the same size and mean degree.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CanonicalReferences {
    pub c_random: f64,
    pub c_regular: f64,
    pub l_random: f64,
    pub l_regular: f64,
}

pub fn canonical_references(n: usize, k: f64) -> Result<CanonicalReferences> {
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    if k <= 1.0 {
        return Err(Error::DomainError(k));
    }
    let nf = n as f64;
    Ok(CanonicalReferences {
        c_random: k / nf,
        c_regular: 3.0 * (k - 2.0) / (4.0 * (k - 1.0)),
        l_random: nf.ln() / k.ln(),
        l_regular: nf * (nf + k - 2.0) / (2.0 * k * (nf - 1.0)),
    })
}

/// Degree-degree correlation over the symmetrised edge list.
///
/// `Ok(None)` marks the regular-graph case where the marginal variance is
/// zero and the coefficient is undefined.
pub fn assortativity(net: &ContactNetwork) -> Result<Option<f64>> {
    if net.m() == 0 {
        return Err(Error::NoEdges);
    }
    let deg = net.degrees();
    let mut s1: i128 = 0; // sum of endpoint degrees over both orientations
    let mut s2: i128 = 0; // sum of squared degrees
    let mut s11: i128 = 0; // sum of degree products
    for e in &net.edges {
        let ki = deg[e.i as usize] as i128;
        let kj = deg[e.j as usize] as i128;
        s1 += ki + kj;
        s2 += ki * ki + kj * kj;
        s11 += 2 * ki * kj;
    }
    let samples = 2 * net.m() as i128;
    let num = samples * s11 - s1 * s1;
    let den = samples * s2 - s1 * s1;
    if den == 0 {
        return Ok(None);
    }
    Ok(Some(num as f64 / den as f64))
}

/// Mean (and std) of neighbour degrees, grouped by node degree.
pub fn neighbor_degree_curve(net: &ContactNetwork) -> Result<BTreeMap<usize, (f64, f64)>> {
    if net.m() == 0 {
        return Err(Error::NoEdges);
    }
    let adj = net.adjacency();
    let deg = net.degrees();
    let mut buckets: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for i in 0..net.n {
        if deg[i] == 0 {
            continue;
        }
        let bucket = buckets.entry(deg[i]).or_default();
        for &j in &adj[i] {
            bucket.push(deg[j as usize] as f64);
        }
    }
    Ok(buckets
        .into_iter()
        .map(|(k, samples)| (k, mean_std(&samples)))
        .collect())
}

fn bfs(adj: &[Vec<u32>], src: usize, dist: &mut [u32], queue: &mut VecDeque<u32>) {
    dist.fill(UNREACHED);
    dist[src] = 0;
    queue.clear();
    queue.push_back(src as u32);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize];
        for &w in &adj[v as usize] {
            if dist[w as usize] == UNREACHED {
                dist[w as usize] = dv + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Shortest-path statistics over all unordered reachable pairs.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PathSummary {
    pub apl: Option<f64>,
    pub median: Option<f64>,
    pub std: Option<f64>,
    pub diameter: Option<usize>,
    pub distribution: BTreeMap<usize, u64>,
    pub unreachable_pairs: u64,
}

pub fn path_summary(net: &ContactNetwork) -> PathSummary {
    let adj = net.adjacency();
    let n = net.n;
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    let mut distribution: BTreeMap<usize, u64> = BTreeMap::new();
    for s in 0..n {
        bfs(&adj, s, &mut dist, &mut queue);
        for &d in dist.iter().skip(s + 1) {
            if d != UNREACHED {
                *distribution.entry(d as usize).or_insert(0) += 1;
            }
        }
    }
    let total_pairs = (n as u64 * (n as u64).saturating_sub(1)) / 2;
    let reachable: u64 = distribution.values().sum();
    let unreachable_pairs = total_pairs - reachable;
    if reachable == 0 {
        return PathSummary {
            apl: None,
            median: None,
            std: None,
            diameter: None,
            distribution,
            unreachable_pairs,
        };
    }
    let sum: u128 = distribution
        .iter()
        .map(|(&d, &c)| d as u128 * c as u128)
        .sum();
    let sum_sq: u128 = distribution
        .iter()
        .map(|(&d, &c)| (d as u128 * d as u128) * c as u128)
        .sum();
    let mean = sum as f64 / reachable as f64;
    let var = sum_sq as f64 / reachable as f64 - mean * mean;
    let median = histogram_median(&distribution, reachable);
    let diameter = distribution.keys().max().copied();
    PathSummary {
        apl: Some(mean),
        median: Some(median),
        std: Some(var.max(0.0).sqrt()),
        diameter,
        distribution,
        unreachable_pairs,
    }
}

fn histogram_median(hist: &BTreeMap<usize, u64>, total: u64) -> f64 {
    // midpoint convention: average the two middle values when total is even
    let targets: [u64; 2] = if total % 2 == 1 {
        [total / 2, total / 2]
    } else {
        [total / 2 - 1, total / 2]
    };
    let mut found = [0.0f64; 2];
    let mut cum: u64 = 0;
    let mut idx = 0;
    for (&d, &c) in hist {
        cum += c;
        while idx < 2 && targets[idx] < cum {
            found[idx] = d as f64;
            idx += 1;
        }
        if idx == 2 {
            break;
        }
    }
    0.5 * (found[0] + found[1])
}

/// Harmonic mean path length; unreachable pairs contribute zero.
pub fn harmonic_path_length(net: &ContactNetwork) -> Result<f64> {
    if net.n < 2 {
        return Err(Error::TooFewNodes(net.n));
    }
    let adj = net.adjacency();
    let n = net.n;
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    let mut inv_sum = 0.0f64;
    for s in 0..n {
        bfs(&adj, s, &mut dist, &mut queue);
        for &d in dist.iter().skip(s + 1) {
            if d != UNREACHED {
                inv_sum += 1.0 / d as f64;
            }
        }
    }
    if inv_sum == 0.0 {
        return Err(Error::AllPairsUnreachable);
    }
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    Ok(pairs / inv_sum)
}

/// Summary of the per-node betweenness vector.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BetweennessSummary {
    pub mean: f64,
    pub std: f64,
    pub median: f64,
    pub max: f64,
}

impl BetweennessSummary {
    pub fn from_values(values: &[f64]) -> Self {
        let (mean, std) = mean_std(values);
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        BetweennessSummary {
            mean,
            std,
            median: median_of_sorted(&sorted),
            max: sorted.last().copied().unwrap_or(0.0),
        }
    }
}

/// Brandes betweenness centrality, normalised to [0, 1] by the unordered
/// pair count (N-1)(N-2)/2.
pub fn betweenness_centrality(net: &ContactNetwork) -> (Vec<f64>, BetweennessSummary) {
    let n = net.n;
    let adj = net.adjacency();
    let mut raw = vec![0.0f64; n];

    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![UNREACHED; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(UNREACHED);
        delta.fill(0.0);
        order.clear();
        queue.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s as u32);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let dv = dist[v as usize];
            for &w in &adj[v as usize] {
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = dv + 1;
                    queue.push_back(w);
                }
                if dist[w as usize] == dv + 1 {
                    sigma[w as usize] += sigma[v as usize];
                }
            }
        }
        // dependency accumulation in reverse BFS order
        for &w in order.iter().rev() {
            let dw = dist[w as usize];
            let coeff = (1.0 + delta[w as usize]) / sigma[w as usize];
            for &v in &adj[w as usize] {
                if dist[v as usize] + 1 == dw {
                    delta[v as usize] += sigma[v as usize] * coeff;
                }
            }
            if w as usize != s {
                raw[w as usize] += delta[w as usize];
            }
        }
    }

    let norm = if n >= 3 {
        ((n - 1) as f64) * ((n - 2) as f64) / 2.0
    } else {
        0.0
    };
    let values: Vec<f64> = raw
        .iter()
        .map(|&r| if norm > 0.0 { r / 2.0 / norm } else { 0.0 })
        .collect();
    let summary = BetweennessSummary::from_values(&values);
    (values, summary)
}

fn is_hierarchical(seq: &[usize]) -> bool {
    let mut falling = false;
    for w in seq.windows(2) {
        if w[1] > w[0] {
            if falling {
                return false;
            }
        } else if w[1] < w[0] {
            falling = true;
        }
    }
    true
}

/// Fraction of canonical shortest paths whose degree sequence is monotone or
/// rises then falls. One path per unordered reachable pair: BFS from the
/// lower-index endpoint, stepping to the smallest-index predecessor.
pub fn hierarchy_index(net: &ContactNetwork) -> Result<f64> {
    let n = net.n;
    let adj = net.adjacency();
    let deg = net.degrees();
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    let mut pred = vec![UNREACHED; n];
    let mut pairs: u64 = 0;
    let mut hierarchical: u64 = 0;
    let mut seq: Vec<usize> = Vec::new();

    for s in 0..n {
        bfs(&adj, s, &mut dist, &mut queue);
        // smallest-index predecessor on a shortest path from s
        for v in 0..n {
            pred[v] = UNREACHED;
            if v == s || dist[v] == UNREACHED {
                continue;
            }
            let want = dist[v] - 1;
            let mut best = UNREACHED;
            for &u in &adj[v] {
                if dist[u as usize] == want && u < best {
                    best = u;
                }
            }
            pred[v] = best;
        }
        for (t, &d) in dist.iter().enumerate().skip(s + 1) {
            if d == UNREACHED {
                continue;
            }
            pairs += 1;
            seq.clear();
            let mut cur = t as u32;
            loop {
                seq.push(deg[cur as usize]);
                if cur as usize == s {
                    break;
                }
                cur = pred[cur as usize];
            }
            if is_hierarchical(&seq) {
                hierarchical += 1;
            }
        }
    }
    if pairs == 0 {
        return Err(Error::NoPairs);
    }
    Ok(hierarchical as f64 / pairs as f64)
}

/// Mean per-node clustering grouped by degree.
pub fn clustering_by_degree(net: &ContactNetwork) -> BTreeMap<usize, f64> {
    let clustering = clustering_coefficient(net);
    let deg = net.degrees();
    let mut buckets: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for (&k, &c) in deg.iter().zip(&clustering.per_node) {
        let slot = buckets.entry(k).or_insert((0.0, 0));
        slot.0 += c;
        slot.1 += 1;
    }
    buckets
        .into_iter()
        .map(|(k, (sum, count))| (k, sum / count as f64))
        .collect()
}

/// Correlation flavours for [`correlate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMethod {
    Pearson,
    KendallTauB,
}

/// Pearson r or tie-corrected Kendall tau-b between two per-node vectors.
pub fn correlate(x: &[f64], y: &[f64], method: CorrelationMethod) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(Error::TooFewPoints {
            need: 3,
            got: x.len(),
        });
    }
    match method {
        CorrelationMethod::Pearson => {
            let n = x.len() as f64;
            let mx = x.iter().sum::<f64>() / n;
            let my = y.iter().sum::<f64>() / n;
            let mut sxx = 0.0;
            let mut syy = 0.0;
            let mut sxy = 0.0;
            for (&a, &b) in x.iter().zip(y) {
                sxx += (a - mx) * (a - mx);
                syy += (b - my) * (b - my);
                sxy += (a - mx) * (b - my);
            }
            if sxx == 0.0 || syy == 0.0 {
                return Err(Error::ZeroVariance);
            }
            Ok(sxy / (sxx * syy).sqrt())
        }
        CorrelationMethod::KendallTauB => {
            let n = x.len();
            let mut concordant: i64 = 0;
            let mut discordant: i64 = 0;
            let mut ties_x: u64 = 0;
            let mut ties_y: u64 = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    let dx = x[i].partial_cmp(&x[j]).expect("non-NaN input");
                    let dy = y[i].partial_cmp(&y[j]).expect("non-NaN input");
                    use std::cmp::Ordering::Equal;
                    match (dx, dy) {
                        (Equal, Equal) => {
                            ties_x += 1;
                            ties_y += 1;
                        }
                        (Equal, _) => ties_x += 1,
                        (_, Equal) => ties_y += 1,
                        (a, b) if a == b => concordant += 1,
                        _ => discordant += 1,
                    }
                }
            }
            let n0 = (n as u64 * (n as u64 - 1)) / 2;
            let dx = (n0 - ties_x) as f64;
            let dy = (n0 - ties_y) as f64;
            if dx == 0.0 || dy == 0.0 {
                return Err(Error::ZeroVariance);
            }
            Ok((concordant - discordant) as f64 / (dx * dy).sqrt())
        }
    }
}

/// Every static statistic of one network, as reported per protein.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MetricsReport {
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub degree: DegreeSummary,
    pub clustering: f64,
    pub references: Option<CanonicalReferences>,
    pub assortativity: Option<f64>,
    pub paths: PathSummary,
    pub hpl: Option<f64>,
    pub betweenness: BetweennessSummary,
    pub hierarchy_index: Option<f64>,
}

/// Compute the full static report for one network.
pub fn metrics_report(net: &ContactNetwork) -> Result<MetricsReport> {
    let density = net.density()?;
    let degree = degree_summary(net);
    let clustering = clustering_coefficient(net).mean;
    let references = canonical_references(net.n, degree.mean).ok();
    let assort = match assortativity(net) {
        Ok(r) => r,
        Err(Error::NoEdges) => None,
        Err(e) => return Err(e),
    };
    let paths = path_summary(net);
    let hpl = match harmonic_path_length(net) {
        Ok(v) => Some(v),
        Err(Error::AllPairsUnreachable) => None,
        Err(e) => return Err(e),
    };
    let (_, betweenness) = betweenness_centrality(net);
    let hierarchy = match hierarchy_index(net) {
        Ok(v) => Some(v),
        Err(Error::NoPairs) => None,
        Err(e) => return Err(e),
    };
    Ok(MetricsReport {
        n: net.n,
        m: net.m(),
        density,
        degree,
        clustering,
        references,
        assortativity: assort,
        paths,
        hpl,
        betweenness,
        hierarchy_index: hierarchy,
    })
}

impl MetricsReport {
    /// Column order of [`MetricsReport::csv_row`]; documented in the README.
    pub const CSV_COLUMNS: &'static [&'static str] = &[
        "n",
        "m",
        "density",
        "k_mean",
        "k_std",
        "k_median",
        "k_min",
        "k_max",
        "c",
        "c_random",
        "c_regular",
        "r",
        "apl",
        "path_median",
        "path_std",
        "diameter",
        "unreachable_pairs",
        "l_random",
        "l_regular",
        "hpl",
        "bt_mean",
        "bt_std",
        "bt_median",
        "bt_max",
        "hierarchy_index",
    ];

    /// Flat JSON object keyed by [`MetricsReport::CSV_COLUMNS`].
    pub fn flat_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (name, value) in Self::CSV_COLUMNS.iter().zip(self.values()) {
            map.insert(
                name.to_string(),
                value.map_or(serde_json::Value::Null, |v| serde_json::json!(v)),
            );
        }
        serde_json::Value::Object(map)
    }

    /// CSV row matching [`MetricsReport::CSV_COLUMNS`] (floats at 6
    /// significant digits, empty field for undefined values).
    pub fn csv_row(&self) -> String {
        self.values()
            .iter()
            .map(|v| v.map(crate::util::fmt_sig6).unwrap_or_default())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn values(&self) -> Vec<Option<f64>> {
        vec![
            Some(self.n as f64),
            Some(self.m as f64),
            Some(self.density),
            Some(self.degree.mean),
            Some(self.degree.std),
            Some(self.degree.median),
            Some(self.degree.min as f64),
            Some(self.degree.max as f64),
            Some(self.clustering),
            self.references.map(|r| r.c_random),
            self.references.map(|r| r.c_regular),
            self.assortativity,
            self.paths.apl,
            self.paths.median,
            self.paths.std,
            self.paths.diameter.map(|d| d as f64),
            Some(self.paths.unreachable_pairs as f64),
            self.references.map(|r| r.l_random),
            self.references.map(|r| r.l_regular),
            self.hpl,
            Some(self.betweenness.mean),
            Some(self.betweenness.std),
            Some(self.betweenness.median),
            Some(self.betweenness.max),
            self.hierarchy_index,
        ]
    }
}
