//! Naive reference implementations. They work on plain edge lists and share
//! no code with the library.
#![allow(dead_code)]

use std::collections::HashSet;

fn edge_set(edges: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e
        })
        .collect()
}

/// Number of injective maps `[pattern_n] -> [host_n]` sending every pattern
/// edge onto a host edge; tries all `host_n^(pattern_n)` falling products.
pub fn brute_force_inj(
    pattern_n: usize,
    pattern_edges: &[Vec<usize>],
    host_n: usize,
    host_edges: &[Vec<usize>],
) -> usize {
    let host = edge_set(host_edges);
    let mut map = Vec::with_capacity(pattern_n);
    let mut used = vec![false; host_n];
    fn rec(
        k: usize,
        pattern_n: usize,
        pattern_edges: &[Vec<usize>],
        host: &HashSet<Vec<usize>>,
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> usize {
        if k == pattern_n {
            let ok = pattern_edges.iter().all(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                img.sort_unstable();
                host.contains(&img)
            });
            return usize::from(ok);
        }
        let mut total = 0;
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                map.push(v);
                total += rec(k + 1, pattern_n, pattern_edges, host, map, used);
                map.pop();
                used[v] = false;
            }
        }
        total
    }
    rec(0, pattern_n, pattern_edges, &host, &mut map, &mut used)
}

/// Largest adjacency eigenvalue by power iteration on `A + I`, which is
/// primitive on each component and so converges for bipartite graphs too.
pub fn power_method_radius(n: usize, edges: &[Vec<usize>]) -> f64 {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    // A slightly non-uniform start avoids starting orthogonal to the top eigenvector.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.01 * i as f64).collect();
    let mut estimate = 0.0;
    for _ in 0..200_000 {
        let w: Vec<f64> = (0..n)
            .map(|i| v[i] + adj[i].iter().map(|&j| v[j]).sum::<f64>())
            .collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
        // Rayleigh quotient of A at the new iterate.
        let av: Vec<f64> = (0..n).map(|i| adj[i].iter().map(|&j| next[j]).sum()).collect();
        let rq: f64 = next.iter().zip(&av).map(|(a, b)| a * b).sum();
        let diff: f64 = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        estimate = rq;
        if diff < 1e-14 {
            break;
        }
    }
    estimate
}

/// `|T^q_{m,n}|` by listing all `q`-subsets of `[n]` and keeping those that
/// meet `q` distinct parts, with vertex `v` placed in part `v mod m`.
pub fn turan_count_by_enumeration(m: usize, q: usize, n: usize) -> u128 {
    fn rec(start: usize, left: usize, n: usize, m: usize, parts: &mut Vec<usize>) -> u128 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for v in start..n {
            let p = v % m;
            if !parts.contains(&p) {
                parts.push(p);
                total += rec(v + 1, left - 1, n, m, parts);
                parts.pop();
            }
        }
        total
    }
    rec(0, q, n, m, &mut Vec::new())
}

/// Binomial coefficient via Pascal's triangle.
pub fn pascal(n: usize, k: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}
