//! Shared test helpers: seeded graph generators and brute-force oracles that
//! stay independent of the library's BFS/Brandes code paths.
#![allow(dead_code)] // each test target uses a different subset
#![allow(clippy::needless_range_loop)] // explicit indices read better in matrix code

use pcnkit::{ContactNetwork, Edge};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

pub fn graph(n: usize, pairs: &[(u32, u32)]) -> ContactNetwork {
    let edges = pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect();
    ContactNetwork::new(n, 0.0, "test", edges).unwrap()
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> ContactNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if rng.gen::<f64>() < p {
                pairs.push((i, j));
            }
        }
    }
    graph(n, &pairs)
}

/// Connected graph with 2..=max_n nodes, drawn from a seeded stream.
pub fn random_connected_graph(max_n: usize, rng: &mut ChaCha8Rng) -> ContactNetwork {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.3..0.95);
        let candidate = random_graph(n, p, rng.gen());
        if candidate.m() >= 1 && candidate.component_count() == 1 {
            return candidate;
        }
    }
}

/// All-pairs distances by Floyd–Warshall (independent of the library BFS).
pub fn floyd_warshall(net: &ContactNetwork) -> Vec<Vec<u32>> {
    let n = net.n;
    let mut dist = vec![vec![INF; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in &net.edges {
        dist[e.i as usize][e.j as usize] = 1;
        dist[e.j as usize][e.i as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k].saturating_add(dist[k][j]);
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

pub fn oracle_apl(dist: &[Vec<u32>]) -> Option<f64> {
    let n = dist.len();
    let mut sum = 0u64;
    let mut count = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j] < INF {
                sum += dist[i][j] as u64;
                count += 1;
            }
        }
    }
    (count > 0).then(|| sum as f64 / count as f64)
}

pub fn oracle_hpl(dist: &[Vec<u32>]) -> Option<f64> {
    let n = dist.len();
    let mut inv = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j] < INF && dist[i][j] > 0 {
                inv += 1.0 / dist[i][j] as f64;
            }
        }
    }
    (inv > 0.0).then(|| (n as f64 * (n as f64 - 1.0) / 2.0) / inv)
}

pub fn oracle_clustering(net: &ContactNetwork) -> f64 {
    let n = net.n;
    let mut adj = vec![vec![false; n]; n];
    for e in &net.edges {
        adj[e.i as usize][e.j as usize] = true;
        adj[e.j as usize][e.i as usize] = true;
    }
    let mut total = 0.0;
    for i in 0..n {
        let nbrs: Vec<usize> = (0..n).filter(|&j| adj[i][j]).collect();
        let k = nbrs.len();
        if k < 2 {
            continue;
        }
        let mut links = 0usize;
        for a in 0..k {
            for b in (a + 1)..k {
                if adj[nbrs[a]][nbrs[b]] {
                    links += 1;
                }
            }
        }
        total += 2.0 * links as f64 / (k as f64 * (k as f64 - 1.0));
    }
    total / n as f64
}

/// Exhaustive shortest-path enumeration from the FW distance matrix.
pub fn oracle_betweenness(net: &ContactNetwork) -> Vec<f64> {
    let n = net.n;
    let dist = floyd_warshall(net);
    let adj = net.adjacency();
    let mut raw = vec![0.0f64; n];
    for s in 0..n {
        for t in (s + 1)..n {
            if dist[s][t] >= INF {
                continue;
            }
            let mut complete: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                if last == t {
                    complete.push(path);
                    continue;
                }
                for &w in &adj[last] {
                    let w = w as usize;
                    if dist[s][w] == dist[s][last] + 1
                        && dist[s][w].saturating_add(dist[w][t]) == dist[s][t]
                    {
                        let mut next = path.clone();
                        next.push(w);
                        stack.push(next);
                    }
                }
            }
            let sigma = complete.len() as f64;
            for path in &complete {
                for &v in &path[1..path.len() - 1] {
                    raw[v] += 1.0 / sigma;
                }
            }
        }
    }
    if n < 3 {
        return vec![0.0; n];
    }
    let norm = ((n - 1) * (n - 2)) as f64 / 2.0;
    raw.iter().map(|&x| x / norm).collect()
}

/// Canonical-path hierarchy fraction computed from the FW matrix.
pub fn oracle_hierarchy(net: &ContactNetwork) -> Option<f64> {
    let n = net.n;
    let dist = floyd_warshall(net);
    let adj = net.adjacency();
    let deg = net.degrees();
    let mut pairs = 0u64;
    let mut good = 0u64;
    for s in 0..n {
        for t in (s + 1)..n {
            if dist[s][t] >= INF {
                continue;
            }
            pairs += 1;
            // walk back from t, always taking the smallest-index predecessor
            let mut seq = Vec::new();
            let mut cur = t;
            seq.push(deg[cur]);
            while cur != s {
                let want = dist[s][cur] - 1;
                let next = adj[cur]
                    .iter()
                    .map(|&u| u as usize)
                    .filter(|&u| dist[s][u] == want)
                    .min()
                    .expect("predecessor exists on a shortest path");
                cur = next;
                seq.push(deg[cur]);
            }
            let mut falling = false;
            let mut ok = true;
            for w in seq.windows(2) {
                if w[1] > w[0] {
                    if falling {
                        ok = false;
                        break;
                    }
                } else if w[1] < w[0] {
                    falling = true;
                }
            }
            if ok {
                good += 1;
            }
        }
    }
    (pairs > 0).then(|| good as f64 / pairs as f64)
}
