//! Small-`n` check of the spectral pentagon problem: among triangle-free
//! graphs, which maximizes `lambda_{alpha,C_5}`, and is it `C_5`-colorable?

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::{count_copies, is_isomorphic, Pattern};
use crate::error::{Error, Result};
use crate::hypergraph::{c5_blowup, cycle_graph, Hypergraph};
use crate::solver::{reduced_solve, solve_certified, SolverConfig};

use super::family::{blowup_compositions, FamilyTag, GraphFamilySource};
use super::report::{Instance, Quantities, VerifyReport};

/// Largest `n` handled by the internal triangle-free generator.
pub const MAX_GENERATED_N: usize = 9;

/// Exact search for a homomorphism `G -> C_5`.
pub fn colorability_check(g: &Hypergraph) -> Result<bool> {
    if g.r() != 2 {
        return Err(Error::NotAGraph(g.r()));
    }
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let m = g.neighbour_mask(v);
            (0..n).filter(|&u| m >> u & 1 == 1).collect()
        })
        .collect();
    // Breadth-first order so that every vertex after a component root has
    // an already coloured neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
    }
    let mut colour = vec![usize::MAX; n];
    fn rec(k: usize, order: &[usize], adj: &[Vec<usize>], colour: &mut [usize]) -> bool {
        let Some(&v) = order.get(k) else {
            return true;
        };
        let anchor = adj[v].iter().find(|&&u| colour[u] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            // The pentagon is vertex-transitive, so a component root can be fixed.
            None => vec![0],
            Some(&u) => vec![(colour[u] + 1) % 5, (colour[u] + 4) % 5],
        };
        for c in candidates {
            let ok = adj[v].iter().all(|&u| {
                colour[u] == usize::MAX || (colour[u] + 5 - c) % 5 == 1 || (c + 5 - colour[u]) % 5 == 1
            });
            if ok {
                colour[v] = c;
                if rec(k + 1, order, adj, colour) {
                    return true;
                }
                colour[v] = usize::MAX;
            }
        }
        false
    }
    Ok(rec(0, &order, &adj, &mut colour))
}

type Key = (usize, Vec<(usize, Vec<usize>)>);

fn invariant(g: &Hypergraph) -> Key {
    let deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut profile: Vec<(usize, Vec<usize>)> = (0..g.n())
        .map(|v| {
            let m = g.neighbour_mask(v);
            let mut nd: Vec<usize> = (0..g.n()).filter(|&u| m >> u & 1 == 1).map(|u| deg[u]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    profile.sort();
    (g.edge_count(), profile)
}

/// All triangle-free graphs on `n` vertices, one per isomorphism class.
///
/// Built by adding a vertex joined to an independent set of each graph on
/// `n - 1` vertices, which reaches every class.
pub fn triangle_free_graphs(n: usize) -> Result<Vec<Hypergraph>> {
    if n == 0 || n > MAX_GENERATED_N {
        return Err(Error::InvalidConfig(format!(
            "internal triangle-free generator covers 1 <= n <= {MAX_GENERATED_N}, got {n}"
        )));
    }
    let mut level = vec![Hypergraph::empty(1, 2)?];
    for k in 1..n {
        let mut buckets: HashMap<Key, Vec<usize>> = HashMap::new();
        let mut next: Vec<Hypergraph> = Vec::new();
        for g in &level {
            for subset in 0u32..1 << k {
                let set: Vec<usize> = (0..k).filter(|&v| subset >> v & 1 == 1).collect();
                let independent = set
                    .iter()
                    .all(|&v| g.neighbour_mask(v) & u128::from(subset) == 0);
                if !independent {
                    continue;
                }
                let mut edges = g.edges().to_vec();
                edges.extend(set.iter().map(|&v| vec![v, k]));
                let h = Hypergraph::new(k + 1, 2, edges)?;
                let bucket = buckets.entry(invariant(&h)).or_default();
                if bucket.iter().any(|&i| is_isomorphic(&next[i], &h)) {
                    continue;
                }
                bucket.push(next.len());
                next.push(h);
            }
        }
        level = next;
    }
    Ok(level)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PentagonGraph {
    pub name: String,
    pub lambda: f64,
    pub c5_copies: usize,
    pub converged: bool,
    pub certified_global: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PentagonReport {
    pub n: usize,
    pub alpha: f64,
    pub source: String,
    pub graphs: Vec<PentagonGraph>,
    pub rejected: Vec<String>,
    /// Index into `graphs` of the first maximizer.
    pub maximizer: usize,
    #[serde(skip)]
    pub maximizer_graph: Hypergraph,
    /// Graphs within `1e-9` (relative) of the maximum.
    pub tied: usize,
    pub maximizer_colorable: bool,
    pub maximizer_is_pentagon: bool,
    pub best_blowup: Option<[usize; 5]>,
    pub best_blowup_lambda: f64,
    /// Maximizer isomorphic to a blowup attaining `best_blowup_lambda`.
    pub maximizer_is_best_blowup: bool,
    /// Largest number of pentagons over the triangle-free graphs checked.
    pub max_c5_copies: usize,
}

impl PentagonReport {
    pub fn to_verify_report(&self) -> VerifyReport {
        let mut r = VerifyReport::new(
            "pentagon",
            Quantities::new()
                .with("n", self.n as f64)
                .with("alpha", self.alpha),
        );
        for g in &self.graphs {
            r.push(Instance::report(
                g.name.clone(),
                "lambda_{alpha,C5}",
                Quantities::new()
                    .with("lambda", g.lambda)
                    .with("c5_copies", g.c5_copies as f64)
                    .with("converged", f64::from(u8::from(g.converged))),
            ));
        }
        for name in &self.rejected {
            r.push(Instance::error(name.clone(), "triangle-free", "contains a triangle"));
        }
        r.push(Instance::report(
            "maximizer",
            "maximizer is C5-colorable",
            Quantities::new()
                .with("lambda", self.graphs.get(self.maximizer).map_or(0.0, |g| g.lambda))
                .with("colorable", f64::from(u8::from(self.maximizer_colorable)))
                .with("ties", self.tied as f64)
                .with("best_blowup_lambda", self.best_blowup_lambda)
                .with("is_best_blowup", f64::from(u8::from(self.maximizer_is_best_blowup)))
                .with("max_c5_copies", self.max_c5_copies as f64),
        ));
        r
    }
}

/// Runs the check over `source` (default: every triangle-free graph on `n`
/// vertices from the internal generator). Graphs with a triangle or with the
/// wrong order are rejected and listed.
pub fn pentagon_desk_check(
    n: usize,
    alpha: f64,
    source: Option<&GraphFamilySource>,
    cfg: &SolverConfig,
) -> Result<PentagonReport> {
    let default = GraphFamilySource::Generator {
        tag: FamilyTag::TriangleFree,
        sizes: n..=n,
    };
    let source = source.unwrap_or(&default);
    let mut family = source.graphs(true)?;
    family.members.retain(|(name, g)| {
        if g.n() != n {
            family.rejected.push(name.clone());
        }
        g.n() == n
    });
    if family.members.is_empty() {
        return Err(Error::InvalidConfig(format!("no triangle-free graphs on {n} vertices")));
    }
    let cfg = SolverConfig { alpha, ..cfg.clone() };
    let c5 = Pattern::c5();
    let graphs: Vec<PentagonGraph> = family
        .members
        .par_iter()
        .map(|(name, g)| {
            let r = solve_certified(&c5, g, &cfg)?;
            Ok(PentagonGraph {
                name: name.clone(),
                lambda: r.lambda,
                c5_copies: count_copies(&c5, g)?,
                converged: r.converged,
                certified_global: r.certified_global,
            })
        })
        .collect::<Result<_>>()?;
    let best = graphs.iter().map(|g| g.lambda).fold(f64::NEG_INFINITY, f64::max);
    let tie = 1e-9 * best.abs().max(1.0);
    let maximizer = graphs
        .iter()
        .position(|g| g.lambda >= best - tie)
        .expect("nonempty");
    let tied = graphs.iter().filter(|g| g.lambda >= best - tie).count();
    let maximizer_graph = family.members[maximizer].1.clone();

    let mut blowups = Vec::new();
    for sizes in blowup_compositions(n) {
        let h = c5_blowup(&sizes)?;
        let l = reduced_solve(&c5, &h, &cfg)?.lambda;
        blowups.push((sizes, h, l));
    }
    let best_blowup_lambda = blowups.iter().map(|b| b.2).fold(0.0, f64::max);
    let best_blowup = blowups
        .iter()
        .find(|b| b.2 > 0.0 && b.2 >= best_blowup_lambda - tie)
        .map(|b| b.0);
    // Different arrangements of the same part sizes can tie.
    let maximizer_is_best_blowup = blowups
        .iter()
        .filter(|b| b.2 > 0.0 && b.2 >= best_blowup_lambda - tie)
        .any(|b| is_isomorphic(&maximizer_graph, &b.1));
    Ok(PentagonReport {
        n,
        alpha,
        source: match source {
            GraphFamilySource::Generator { .. } => "internal triangle-free generator".into(),
            GraphFamilySource::Stream { descriptor, .. } => descriptor.clone(),
        },
        maximizer_colorable: colorability_check(&maximizer_graph)?,
        maximizer_is_pentagon: n == 5 && is_isomorphic(&maximizer_graph, &cycle_graph(5)?),
        max_c5_copies: graphs.iter().map(|g| g.c5_copies).max().unwrap_or(0),
        graphs,
        rejected: family.rejected,
        maximizer,
        maximizer_graph,
        tied,
        best_blowup,
        best_blowup_lambda,
        maximizer_is_best_blowup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_bipartite, complete_graph, petersen_graph};

    #[test]
    fn colorability_examples() {
        assert!(colorability_check(&cycle_graph(5).unwrap()).unwrap());
        assert!(!colorability_check(&complete_graph(3)).unwrap());
        assert!(!colorability_check(&petersen_graph()).unwrap());
        assert!(colorability_check(&complete_bipartite(3, 3)).unwrap());
        assert!(colorability_check(&c5_blowup(&[1, 2, 3, 1, 2]).unwrap()).unwrap());
        assert!(!colorability_check(&cycle_graph(3).unwrap()).unwrap());
        assert!(colorability_check(&cycle_graph(7).unwrap()).unwrap());
        assert!(colorability_check(&Hypergraph::empty(4, 2).unwrap()).unwrap());
    }

    #[test]
    fn colorability_rejects_hypergraphs() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert!(matches!(colorability_check(&h), Err(Error::NotAGraph(3))));
    }

    #[test]
    fn triangle_free_counts() {
        // Known counts of triangle-free graphs up to isomorphism.
        let expected = [1, 2, 3, 7, 14, 38, 107];
        for (n, &count) in (1..=7).zip(&expected) {
            assert_eq!(triangle_free_graphs(n).unwrap().len(), count, "n={n}");
        }
    }
}
