//! Contact-network construction, SE/LE link partition, reference lattices and
//! the on-disk network format.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pdb::CalphaTrace;

/// Default spatial contact threshold in Å.
pub const DEFAULT_TH: f64 = 7.0;
/// Default sequence-distance threshold separating SE from LE links.
pub const DEFAULT_LE_TH: u32 = 9;

/// Undirected link between chain positions `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Edge {
    pub i: u32,
    pub j: u32,
    /// Chain-position separation `j - i`.
    pub seq_dist: u32,
}

impl Edge {
    pub fn new(a: u32, b: u32) -> Self {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        Edge {
            i,
            j,
            seq_dist: j - i,
        }
    }

    pub fn key(&self) -> (u32, u32) {
        (self.i, self.j)
    }
}

/// Simple undirected graph over chain positions `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactNetwork {
    pub n: usize,
    pub th: f64,
    pub source: String,
    pub edges: Vec<Edge>,
}

impl ContactNetwork {
    /// Validating constructor: rejects self-loops, duplicates, out-of-range
    /// endpoints and inconsistent seq_dist fields.
    pub fn new(n: usize, th: f64, source: impl Into<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.i == e.j {
                return Err(Error::InvalidSpec(format!("self-loop at node {}", e.i)));
            }
            if e.i > e.j {
                return Err(Error::InvalidSpec(format!(
                    "edge ({}, {}) not stored as i<j",
                    e.i, e.j
                )));
            }
            if e.j as usize >= n {
                return Err(Error::InvalidSpec(format!(
                    "endpoint {} out of range for n={}",
                    e.j, n
                )));
            }
            if e.seq_dist != e.j - e.i {
                return Err(Error::InvalidSpec(format!(
                    "edge ({}, {}) carries seq_dist {}",
                    e.i, e.j, e.seq_dist
                )));
            }
            if !seen.insert(e.key()) {
                return Err(Error::InvalidSpec(format!(
                    "duplicate edge ({}, {})",
                    e.i, e.j
                )));
            }
        }
        Ok(ContactNetwork {
            n,
            th,
            source: source.into(),
            edges,
        })
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            deg[e.i as usize] += 1;
            deg[e.j as usize] += 1;
        }
        deg
    }

    /// Neighbour lists, sorted so traversal order depends only on the edge
    /// set (not on edge insertion order).
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.i as usize].push(e.j);
            adj[e.j as usize].push(e.i);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        adj
    }

    pub fn edge_set(&self) -> HashSet<(u32, u32)> {
        self.edges.iter().map(Edge::key).collect()
    }

    /// Fraction of realised node pairs: 2M / [N(N-1)].
    pub fn density(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::TooFewNodes(self.n));
        }
        Ok(2.0 * self.m() as f64 / (self.n as f64 * (self.n as f64 - 1.0)))
    }

    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
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
        count
    }

    pub fn max_seq_dist(&self) -> u32 {
        self.edges.iter().map(|e| e.seq_dist).max().unwrap_or(0)
    }
}

/// Place a link wherever two residues sit strictly closer than `th` Å.
pub fn build_contact_network(trace: &CalphaTrace, th: f64) -> Result<ContactNetwork> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    if th.is_nan() || th <= 0.0 {
        return Err(Error::InvalidSpec(format!("th must be positive, got {th}")));
    }
    let n = trace.len();
    let th2 = th * th;
    let mut edges = Vec::new();
    for i in 0..n {
        let pi = trace.residues[i].position;
        for j in (i + 1)..n {
            let pj = trace.residues[j].position;
            let d2 = (pi[0] - pj[0]).powi(2) + (pi[1] - pj[1]).powi(2) + (pi[2] - pj[2]).powi(2);
            if d2 < th2 {
                edges.push(Edge::new(i as u32, j as u32));
            }
        }
    }
    Ok(ContactNetwork {
        n,
        th,
        source: trace.source_id.clone(),
        edges,
    })
}

/// Which side of the SE/LE split to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkClass {
    Se,
    Le,
}

/// SE/LE edge partition of one network at a given `le_th`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkPartition {
    pub le_th: u32,
    pub n: usize,
    pub se: Vec<Edge>,
    pub le: Vec<Edge>,
    /// Endpoints of SE links, sorted ascending.
    pub se_nodes: Vec<u32>,
    /// Endpoints of LE links, sorted ascending.
    pub le_nodes: Vec<u32>,
    source_m: usize,
}

impl LinkPartition {
    pub fn le_ratio(&self) -> f64 {
        ratio(self.le.len(), self.source_m)
    }

    pub fn se_nodes_ratio(&self) -> f64 {
        ratio(self.se_nodes.len(), self.n)
    }

    pub fn le_nodes_ratio(&self) -> f64 {
        ratio(self.le_nodes.len(), self.n)
    }

    /// |SE_nodes ∩ LE_nodes| / N.
    pub fn overlap_ratio(&self) -> f64 {
        let mut k = 0usize;
        let (mut a, mut b) = (
            self.se_nodes.iter().peekable(),
            self.le_nodes.iter().peekable(),
        );
        while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    k += 1;
                    a.next();
                    b.next();
                }
            }
        }
        ratio(k, self.n)
    }

    /// (N - |LE_nodes|) / N.
    pub fn non_le_ratio(&self) -> f64 {
        ratio(self.n - self.le_nodes.len(), self.n)
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Split links into SE (seq_dist <= le_th) and LE (seq_dist > le_th).
pub fn partition_links(net: &ContactNetwork, le_th: u32) -> LinkPartition {
    let mut se = Vec::new();
    let mut le = Vec::new();
    for &e in &net.edges {
        if e.seq_dist > le_th {
            le.push(e);
        } else {
            se.push(e);
        }
    }
    let endpoint_set = |edges: &[Edge]| -> Vec<u32> {
        let mut v: Vec<u32> = edges.iter().flat_map(|e| [e.i, e.j]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    LinkPartition {
        le_th,
        n: net.n,
        se_nodes: endpoint_set(&se),
        le_nodes: endpoint_set(&le),
        se,
        le,
        source_m: net.m(),
    }
}

/// Keep all N nodes but only the chosen link class.
pub fn subnetwork(
    net: &ContactNetwork,
    part: &LinkPartition,
    which: LinkClass,
) -> Result<ContactNetwork> {
    if part.n != net.n || part.source_m != net.m() {
        return Err(Error::PartitionMismatch);
    }
    let all = net.edge_set();
    if !part
        .se
        .iter()
        .chain(part.le.iter())
        .all(|e| all.contains(&e.key()))
    {
        return Err(Error::PartitionMismatch);
    }
    let (edges, tag) = match which {
        LinkClass::Se => (part.se.clone(), "se"),
        LinkClass::Le => (part.le.clone(), "le"),
    };
    Ok(ContactNetwork {
        n: net.n,
        th: net.th,
        source: format!("{}/{}", net.source, tag),
        edges,
    })
}

/// Lattice endpoints wrap around (ring) or not (linear).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Topology {
    Linear,
    Ring,
}

/// 1-D lattice joining each node to its V/2 nearest neighbours per side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    pub n: usize,
    pub v: u32,
    pub topology: Topology,
}

impl LatticeSpec {
    pub fn validate(&self) -> Result<()> {
        if self.v < 2 || !self.v.is_multiple_of(2) {
            return Err(Error::InvalidSpec(format!(
                "coordination V must be even and >= 2, got {}",
                self.v
            )));
        }
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!("need n >= 2, got {}", self.n)));
        }
        if self.topology == Topology::Ring && self.n <= self.v as usize {
            return Err(Error::InvalidSpec(format!(
                "ring lattice needs n > V ({} <= {})",
                self.n, self.v
            )));
        }
        Ok(())
    }
}

/// Build LatticeV on `n` nodes.
pub fn make_lattice(spec: &LatticeSpec) -> Result<ContactNetwork> {
    spec.validate()?;
    let half = spec.v / 2;
    let n = spec.n;
    let mut edges = Vec::new();
    match spec.topology {
        Topology::Linear => {
            for i in 0..n as u32 {
                for d in 1..=half {
                    let j = i + d;
                    if (j as usize) < n {
                        edges.push(Edge::new(i, j));
                    }
                }
            }
        }
        Topology::Ring => {
            for i in 0..n as u32 {
                for d in 1..=half {
                    let j = (i + d) % n as u32;
                    edges.push(Edge::new(i, j));
                }
            }
        }
    }
    edges.sort_unstable();
    ContactNetwork::new(
        n,
        0.0,
        format!(
            "lattice{}-{}",
            spec.v,
            match spec.topology {
                Topology::Linear => "linear",
                Topology::Ring => "ring",
            }
        ),
        edges,
    )
}

const FORMAT_VERSION: &str = "#pcn v1";

/// Serialise a network in the line-oriented text format (bit-exact).
pub fn save_network(net: &ContactNetwork) -> String {
    let mut out = String::new();
    writeln!(out, "{FORMAT_VERSION}").unwrap();
    writeln!(out, "#source {}", net.source).unwrap();
    writeln!(out, "#n {}", net.n).unwrap();
    writeln!(out, "#th {:.3}", net.th).unwrap();
    let mut edges = net.edges.clone();
    edges.sort_unstable();
    for e in edges {
        writeln!(out, "{} {}", e.i, e.j).unwrap();
    }
    out
}

/// Parse a network from the text format produced by [`save_network`].
pub fn load_network(text: &str) -> Result<ContactNetwork> {
    let err = |line: usize, reason: String| Error::ParseError { line, reason };
    let mut lines = text.lines().enumerate();

    let (ln, version) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let version = version.trim_end_matches('\r');
    if version != FORMAT_VERSION {
        if version.starts_with("#pcn ") {
            return Err(Error::VersionMismatch {
                found: version.to_string(),
                expected: FORMAT_VERSION.to_string(),
            });
        }
        return Err(err(ln + 1, format!("expected {FORMAT_VERSION:?} header")));
    }

    let mut header = |prefix: &str| -> Result<(usize, String)> {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| err(0, format!("missing {prefix} header")))?;
        let line = line.trim_end_matches('\r');
        line.strip_prefix(prefix)
            .map(|rest| (ln + 1, rest.trim().to_string()))
            .ok_or_else(|| err(ln + 1, format!("expected {prefix} header, got {line:?}")))
    };

    let (_, source) = header("#source")?;
    let (n_line, n_str) = header("#n")?;
    let n: usize = n_str
        .parse()
        .map_err(|_| err(n_line, format!("bad node count {n_str:?}")))?;
    let (th_line, th_str) = header("#th")?;
    let th: f64 = th_str
        .parse()
        .map_err(|_| err(th_line, format!("bad threshold {th_str:?}")))?;

    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (ln, line) in lines {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(err(ln + 1, format!("expected \"i j\", got {line:?}"))),
        };
        let i: u32 = a
            .parse()
            .map_err(|_| err(ln + 1, format!("bad endpoint {a:?}")))?;
        let j: u32 = b
            .parse()
            .map_err(|_| err(ln + 1, format!("bad endpoint {b:?}")))?;
        if i == j {
            return Err(err(ln + 1, format!("self-loop {i} {j}")));
        }
        if i > j {
            return Err(err(ln + 1, format!("endpoints out of order: {i} {j}")));
        }
        if j as usize >= n {
            return Err(err(ln + 1, format!("endpoint {j} out of range for n={n}")));
        }
        if !seen.insert((i, j)) {
            return Err(err(ln + 1, format!("duplicate edge {i} {j}")));
        }
        edges.push(Edge::new(i, j));
    }

    ContactNetwork::new(n, th, source, edges).map_err(|e| match e {
        Error::InvalidSpec(reason) => Error::ParseError { line: 0, reason },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdb::{CalphaTrace, ResidueRecord};

    fn trace_from_points(points: &[[f64; 3]]) -> CalphaTrace {
        CalphaTrace {
            source_id: "1tst".into(),
            residues: points
                .iter()
                .enumerate()
                .map(|(i, &position)| ResidueRecord {
                    node_index: i,
                    chain_id: 'A',
                    res_seq: i as i32 + 1,
                    insertion_code: ' ',
                    position,
                })
                .collect(),
            model_number: 1,
        }
    }

    fn edge_keys(net: &ContactNetwork) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = net.edges.iter().map(Edge::key).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn collinear_chain_links_only_adjacent_residues() {
        let pts: Vec<[f64; 3]> = (0..4).map(|i| [i as f64 * 3.8, 0.0, 0.0]).collect();
        let net = build_contact_network(&trace_from_points(&pts), 7.0).unwrap();
        assert_eq!(edge_keys(&net), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(net.edges.iter().all(|e| e.seq_dist == 1));
    }

    #[test]
    fn threshold_is_strict() {
        let net =
            build_contact_network(&trace_from_points(&[[0.0, 0.0, 0.0], [7.0, 0.0, 0.0]]), 7.0)
                .unwrap();
        assert_eq!(net.m(), 0);
        let net = build_contact_network(
            &trace_from_points(&[[0.0, 0.0, 0.0], [6.999, 0.0, 0.0]]),
            7.0,
        )
        .unwrap();
        assert_eq!(net.m(), 1);
    }

    #[test]
    fn empty_trace_is_rejected() {
        let trace = trace_from_points(&[]);
        assert!(matches!(
            build_contact_network(&trace, 7.0),
            Err(Error::EmptyTrace)
        ));
    }

    #[test]
    fn construction_commutes_with_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<[f64; 3]> = (0..20)
            .map(|i| {
                let t = i as f64;
                [3.8 * t, 4.0 * (t * 0.7).sin(), 3.5 * (t * 0.3).cos()]
            })
            .collect();
        let base = build_contact_network(&trace_from_points(&pts), 7.0).unwrap();

        let mut perm: Vec<usize> = (0..pts.len()).collect();
        perm.shuffle(&mut rng);
        let permuted: Vec<[f64; 3]> = perm.iter().map(|&k| pts[k]).collect();
        let net_p = build_contact_network(&trace_from_points(&permuted), 7.0).unwrap();

        // un-permute: position p in permuted trace is original node perm[p]
        let mut unpermuted: Vec<(u32, u32)> = net_p
            .edges
            .iter()
            .map(|e| {
                let a = perm[e.i as usize] as u32;
                let b = perm[e.j as usize] as u32;
                (a.min(b), a.max(b))
            })
            .collect();
        unpermuted.sort_unstable();
        assert_eq!(unpermuted, edge_keys(&base));
    }

    #[test]
    fn seq_dist_matches_endpoints() {
        let pts: Vec<[f64; 3]> = (0..30)
            .map(|i| [3.8 * (i % 6) as f64, 3.8 * (i / 6) as f64, 0.0])
            .collect();
        let net = build_contact_network(&trace_from_points(&pts), 7.0).unwrap();
        assert!(net.m() > 30);
        for e in &net.edges {
            assert_eq!(e.seq_dist, e.j - e.i);
        }
    }

    #[test]
    fn partition_respects_threshold() {
        let edges = vec![Edge::new(5, 20), Edge::new(5, 10)];
        let net = ContactNetwork::new(25, 7.0, "t", edges).unwrap();

        let p9 = partition_links(&net, 9);
        assert_eq!(p9.le.len(), 1); // (5,20) has seq_dist 15 > 9
        assert_eq!(p9.le[0].key(), (5, 20));
        assert_eq!(p9.se.len(), 1); // (5,10) has seq_dist 5 <= 9

        let p4 = partition_links(&net, 4);
        assert_eq!(p4.le.len(), 2); // both exceed 4
        assert!(p4.se.is_empty());
    }

    #[test]
    fn partition_counts_and_node_sets() {
        let net = make_lattice(&LatticeSpec {
            n: 40,
            v: 6,
            topology: Topology::Linear,
        })
        .unwrap();
        for le_th in [1u32, 2, 9] {
            let p = partition_links(&net, le_th);
            assert_eq!(p.se.len() + p.le.len(), net.m());
        }
        // above the max seq_dist everything is SE
        let p = partition_links(&net, net.max_seq_dist());
        assert!(p.le.is_empty());
        assert_eq!(p.le_nodes_ratio(), 0.0);
        assert_eq!(p.se_nodes_ratio(), 1.0);
        assert_eq!(p.non_le_ratio(), 1.0);
    }

    #[test]
    fn empty_network_partition_has_zero_ratios() {
        let net = ContactNetwork::new(5, 7.0, "t", vec![]).unwrap();
        let p = partition_links(&net, 9);
        assert_eq!(p.le_ratio(), 0.0);
        assert_eq!(p.se_nodes_ratio(), 0.0);
        assert_eq!(p.overlap_ratio(), 0.0);
    }

    #[test]
    fn density_of_complete_graph_is_one() {
        let mut edges = Vec::new();
        for i in 0..4u32 {
            for j in (i + 1)..4 {
                edges.push(Edge::new(i, j));
            }
        }
        let net = ContactNetwork::new(4, 7.0, "k4", edges).unwrap();
        assert_eq!(net.density().unwrap(), 1.0);
    }

    #[test]
    fn density_of_lattice8_matches_closed_form() {
        let net = make_lattice(&LatticeSpec {
            n: 100,
            v: 8,
            topology: Topology::Linear,
        })
        .unwrap();
        assert_eq!(net.m(), 4 * 100 - 10);
        let expect = 780.0 / 9900.0;
        assert!((net.density().unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn density_needs_two_nodes() {
        let net = ContactNetwork::new(1, 7.0, "t", vec![]).unwrap();
        assert!(matches!(net.density(), Err(Error::TooFewNodes(1))));
    }

    #[test]
    fn lattice6_linear_count() {
        let net = make_lattice(&LatticeSpec {
            n: 385,
            v: 6,
            topology: Topology::Linear,
        })
        .unwrap();
        assert_eq!(net.m(), 3 * 385 - 6);
    }

    #[test]
    fn lattice4_linear_small_enumeration() {
        let net = make_lattice(&LatticeSpec {
            n: 5,
            v: 4,
            topology: Topology::Linear,
        })
        .unwrap();
        assert_eq!(
            edge_keys(&net),
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
        );
    }

    #[test]
    fn lattice6_ring_is_regular() {
        let net = make_lattice(&LatticeSpec {
            n: 10,
            v: 6,
            topology: Topology::Ring,
        })
        .unwrap();
        assert_eq!(net.m(), 30);
        assert!(net.degrees().iter().all(|&k| k == 6));
    }

    #[test]
    fn bad_lattice_specs_are_rejected() {
        for spec in [
            LatticeSpec {
                n: 10,
                v: 3,
                topology: Topology::Linear,
            },
            LatticeSpec {
                n: 10,
                v: 0,
                topology: Topology::Linear,
            },
            LatticeSpec {
                n: 6,
                v: 6,
                topology: Topology::Ring,
            },
            LatticeSpec {
                n: 1,
                v: 2,
                topology: Topology::Linear,
            },
        ] {
            assert!(matches!(make_lattice(&spec), Err(Error::InvalidSpec(_))));
        }
    }

    #[test]
    fn subnetwork_splits_edge_count() {
        let pts: Vec<[f64; 3]> = (0..30)
            .map(|i| [3.8 * (i % 6) as f64, 3.8 * (i / 6) as f64, 0.0])
            .collect();
        let net = build_contact_network(&trace_from_points(&pts), 7.0).unwrap();
        let part = partition_links(&net, 4);
        let se = subnetwork(&net, &part, LinkClass::Se).unwrap();
        let le = subnetwork(&net, &part, LinkClass::Le).unwrap();
        assert_eq!(se.n, net.n);
        assert_eq!(le.n, net.n);
        assert_eq!(se.m() + le.m(), net.m());
    }

    #[test]
    fn backbone_only_network_has_empty_le_subnetwork() {
        let pts: Vec<[f64; 3]> = (0..10).map(|i| [i as f64 * 3.8, 0.0, 0.0]).collect();
        let net = build_contact_network(&trace_from_points(&pts), 7.0).unwrap();
        let part = partition_links(&net, 9);
        let le = subnetwork(&net, &part, LinkClass::Le).unwrap();
        assert_eq!(le.n, 10);
        assert_eq!(le.m(), 0);
    }

    #[test]
    fn partition_from_other_network_is_rejected() {
        let a = make_lattice(&LatticeSpec {
            n: 20,
            v: 4,
            topology: Topology::Linear,
        })
        .unwrap();
        let b = make_lattice(&LatticeSpec {
            n: 20,
            v: 6,
            topology: Topology::Linear,
        })
        .unwrap();
        let part = partition_links(&b, 9);
        assert!(matches!(
            subnetwork(&a, &part, LinkClass::Se),
            Err(Error::PartitionMismatch)
        ));
    }

    #[test]
    fn save_load_round_trip() {
        let net = make_lattice(&LatticeSpec {
            n: 9,
            v: 4,
            topology: Topology::Ring,
        })
        .unwrap();
        let text = save_network(&net);
        let back = load_network(&text).unwrap();
        assert_eq!(back, net);
        // and the serialisation is stable
        assert_eq!(save_network(&back), text);
    }

    #[test]
    fn load_rejects_bad_inputs() {
        assert!(matches!(
            load_network("#pcn v1\n#source t\n#n -5\n#th 7.000\n"),
            Err(Error::ParseError { line: 3, .. })
        ));
        assert!(matches!(
            load_network("#pcn v1\n#source t\n#n 20\n#th 7.000\n12 12\n"),
            Err(Error::ParseError { line: 5, .. })
        ));
        assert!(matches!(
            load_network("#pcn v2\n#source t\n#n 20\n#th 7.000\n"),
            Err(Error::VersionMismatch { .. })
        ));
        assert!(matches!(
            load_network("#pcn v1\n#source t\n#n 20\n#th 7.000\n3 1\n"),
            Err(Error::ParseError { line: 5, .. })
        ));
        assert!(matches!(
            load_network("#pcn v1\n#source t\n#n 20\n#th 7.000\n1 3\n1 3\n"),
            Err(Error::ParseError { .. })
        ));
        assert!(matches!(
            load_network("#pcn v1\n#source t\n#n 4\n#th 7.000\n1 9\n"),
            Err(Error::ParseError { .. })
        ));
    }
}
