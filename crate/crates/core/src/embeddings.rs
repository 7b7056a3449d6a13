//! Injective homomorphisms `Inj(Q, H)`, copy counts, `Q`-degrees and ordered `Q`-links.

use std::collections::{BTreeMap, HashSet};
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{complete_hypergraph, cycle_graph, Hypergraph};

/// A pattern hypergraph `Q` together with its automorphism group `Inj(Q, Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pattern {
    graph: Hypergraph,
    #[serde(skip)]
    automorphisms: Vec<Vec<usize>>,
}

impl Pattern {
    pub fn new(graph: Hypergraph) -> Result<Self> {
        if graph.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let automorphisms = Enumerator::new(&graph, &graph).collect_all();
        Ok(Self {
            graph,
            automorphisms,
        })
    }

    /// A single edge `K_2`.
    pub fn k2() -> Self {
        Self::single_edge(2)
    }

    /// The triangle as a graph.
    pub fn k3() -> Self {
        Self::new(complete_hypergraph(3, 2).expect("triangle")).expect("nonempty")
    }

    /// The pentagon `C_5`.
    pub fn c5() -> Self {
        Self::new(cycle_graph(5).expect("pentagon")).expect("nonempty")
    }

    /// The single-edge `r`-graph `K_r^r`.
    pub fn single_edge(r: usize) -> Self {
        Self::new(complete_hypergraph(r, r).expect("single edge")).expect("nonempty")
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    /// Number of vertices of `Q`.
    pub fn q(&self) -> usize {
        self.graph.n()
    }

    pub fn r(&self) -> usize {
        self.graph.r()
    }

    /// `|Aut(Q)|`.
    pub fn aut_count(&self) -> usize {
        self.automorphisms.len()
    }

    /// Automorphisms as images of `0..q`, lexicographically sorted.
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        &self.automorphisms
    }

    /// True when `Q` is a single edge on its `r` vertices.
    pub fn is_single_edge(&self) -> bool {
        self.q() == self.r() && self.graph.edge_count() == 1
    }
}

/// All injective homomorphisms of a pattern into a host, as ordered tuples
/// `(phi(u_1), ..., phi(u_q))` sorted lexicographically.
#[derive(Debug, Clone)]
pub struct EmbeddingList {
    pattern: Pattern,
    host: Hypergraph,
    flat: Vec<usize>,
}

impl EmbeddingList {
    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn q(&self) -> usize {
        self.pattern.q()
    }

    /// `inj(Q, H)`.
    pub fn len(&self) -> usize {
        self.flat.len() / self.q()
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, usize> {
        self.flat.chunks_exact(self.q())
    }

    pub fn get(&self, i: usize) -> &[usize] {
        let q = self.q();
        &self.flat[i * q..(i + 1) * q]
    }

    /// Position of an embedding tuple in the list.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(tuple) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// `N(Q, H) = inj(Q, H) / |Aut(Q)|`.
    pub fn copies(&self) -> usize {
        let aut = self.pattern.aut_count();
        assert_eq!(self.len() % aut, 0, "|Aut(Q)| must divide inj(Q, H)");
        self.len() / aut
    }

    /// `d_{Q,H}(v)`: number of embeddings whose image contains `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.iter().filter(|t| t.contains(&v)).count())
    }

    /// All `Q`-degrees at once.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.host.n()];
        for t in self.iter() {
            for &v in t {
                d[v] += 1;
            }
        }
        d
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.host.n();
        if n == 0 {
            return DegreeStats { min: 0, avg: 0.0 };
        }
        let min = self.degrees().into_iter().min().unwrap_or(0);
        DegreeStats {
            min,
            avg: (self.q() * self.len()) as f64 / n as f64,
        }
    }

    /// The ordered `Q`-link of `v`.
    pub fn link(&self, v: usize) -> Result<QLink> {
        self.check_vertex(v)?;
        let mut tuples = BTreeMap::new();
        for t in self.iter().filter(|t| t.contains(&v)) {
            let rest: Vec<usize> = t.iter().copied().filter(|&u| u != v).collect();
            *tuples.entry(rest).or_insert(0) += 1;
        }
        Ok(QLink { vertex: v, tuples })
    }

    /// `phi o sigma` for an automorphism `sigma` of `Q`.
    pub fn compose(tuple: &[usize], sigma: &[usize]) -> Vec<usize> {
        sigma.iter().map(|&s| tuple[s]).collect()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.host.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.host.n(),
            });
        }
        Ok(())
    }
}

/// Minimum and average `Q`-degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub avg: f64,
}

/// `L^o_{Q,H}(v)` as a multiset of ordered `(q-1)`-tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLink {
    pub vertex: usize,
    pub tuples: BTreeMap<Vec<usize>, usize>,
}

impl QLink {
    /// Total multiplicity, which equals `d_{Q,H}(v)`.
    pub fn total(&self) -> usize {
        self.tuples.values().sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.tuples.values().copied().max().unwrap_or(0)
    }
}

fn check_uniformity(pattern: &Hypergraph, host: &Hypergraph) -> Result<()> {
    if pattern.r() != host.r() {
        return Err(Error::UniformityMismatch {
            pattern: pattern.r(),
            host: host.r(),
        });
    }
    Ok(())
}

/// Enumerates `Inj(Q, H)` by backtracking.
pub fn enumerate_injective(pattern: &Pattern, host: &Hypergraph) -> Result<EmbeddingList> {
    check_uniformity(pattern.graph(), host)?;
    let flat = Enumerator::new(pattern.graph(), host)
        .collect_all()
        .into_iter()
        .flatten()
        .collect();
    Ok(EmbeddingList {
        pattern: pattern.clone(),
        host: host.clone(),
        flat,
    })
}

/// `N(Q, H)`.
pub fn count_copies(pattern: &Pattern, host: &Hypergraph) -> Result<usize> {
    Ok(enumerate_injective(pattern, host)?.copies())
}

pub fn q_degree(pattern: &Pattern, host: &Hypergraph, v: usize) -> Result<usize> {
    enumerate_injective(pattern, host)?.degree(v)
}

pub fn degree_stats(pattern: &Pattern, host: &Hypergraph) -> Result<DegreeStats> {
    Ok(enumerate_injective(pattern, host)?.degree_stats())
}

pub fn q_link(pattern: &Pattern, host: &Hypergraph, v: usize) -> Result<QLink> {
    enumerate_injective(pattern, host)?.link(v)
}

/// Some injective homomorphism `Q -> H`, if one exists.
pub fn find_injective(pattern: &Hypergraph, host: &Hypergraph) -> Result<Option<Vec<usize>>> {
    check_uniformity(pattern, host)?;
    let mut found = None;
    let e = Enumerator::new(pattern, host);
    if pattern.n() <= host.n() {
        let mut image = vec![usize::MAX; pattern.n()];
        let _ = e.search(0, 0, &mut image, &mut |t: &[usize]| {
            found = Some(t.to_vec());
            ControlFlow::Break(())
        });
    }
    Ok(found)
}

/// Isomorphism test for hypergraphs of equal order and size.
pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.n() == b.n()
        && a.r() == b.r()
        && a.edge_count() == b.edge_count()
        && matches!(find_injective(a, b), Ok(Some(_)))
}

/// Backtracking search state shared by enumeration and existence queries.
struct Enumerator<'a> {
    host: &'a Hypergraph,
    q: usize,
    /// Pattern vertices in visiting order.
    order: Vec<usize>,
    /// For each step, the pattern edges (as vertex lists) touching `order[step]`.
    touched: Vec<Vec<Vec<usize>>>,
    /// Subsets of host edges, for pruning partially mapped pattern edges.
    shadow: HashSet<u128>,
    /// Host neighbourhoods when `r = 2`.
    neighbours: Option<Vec<u128>>,
    /// Pattern neighbours already placed before each step (`r = 2` only).
    placed_neighbours: Vec<Vec<usize>>,
}

impl<'a> Enumerator<'a> {
    fn new(pattern: &Hypergraph, host: &'a Hypergraph) -> Self {
        let q = pattern.n();
        let pdeg: Vec<usize> = (0..q).map(|v| pattern.degree(v)).collect();
        let mut placed = vec![false; q];
        let mut order = Vec::with_capacity(q);
        for _ in 0..q {
            // Most constrained first: edges back into the placed set, then degree.
            let next = (0..q)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = pattern
                        .edges()
                        .iter()
                        .filter(|e| e.contains(&v) && e.iter().any(|&u| placed[u]))
                        .count();
                    (back, pdeg[v], std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
        }
        let touched = order
            .iter()
            .map(|&v| {
                pattern
                    .edges()
                    .iter()
                    .filter(|e| e.contains(&v))
                    .cloned()
                    .collect()
            })
            .collect();
        let mut shadow = HashSet::new();
        for e in host.edges() {
            let r = e.len();
            for sub in 1u32..(1 << r) {
                let mask = (0..r)
                    .filter(|&i| sub & (1 << i) != 0)
                    .fold(0u128, |m, i| m | (1u128 << e[i]));
                shadow.insert(mask);
            }
        }
        let (neighbours, placed_neighbours) = if host.r() == 2 {
            let nb = (0..host.n()).map(|v| host.neighbour_mask(v)).collect();
            let pn = order
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    order[..k]
                        .iter()
                        .copied()
                        .filter(|&u| pattern.contains_edge(&[u, v]))
                        .collect()
                })
                .collect();
            (Some(nb), pn)
        } else {
            (None, vec![Vec::new(); q])
        };
        Self {
            host,
            q,
            order,
            touched,
            shadow,
            neighbours,
            placed_neighbours,
        }
    }

    fn collect_all(&self) -> Vec<Vec<usize>> {
        if self.q > self.host.n() {
            return Vec::new();
        }
        let mut out: Vec<Vec<usize>> = (0..self.host.n())
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut found = Vec::new();
                let mut image = vec![usize::MAX; self.q];
                if self.admissible(0, first, 0, &image) {
                    image[self.order[0]] = first;
                    let _ = self.search(1, 1u128 << first, &mut image, &mut |t: &[usize]| {
                        found.push(t.to_vec());
                        ControlFlow::<()>::Continue(())
                    });
                }
                found
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn search<F>(
        &self,
        step: usize,
        used: u128,
        image: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if step == self.q {
            return visit(image);
        }
        let all = if self.host.n() == 128 {
            u128::MAX
        } else {
            (1u128 << self.host.n()) - 1
        };
        let mut candidates = all & !used;
        if let Some(nb) = &self.neighbours {
            for &u in &self.placed_neighbours[step] {
                candidates &= nb[image[u]];
            }
        }
        let pv = self.order[step];
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if self.admissible(step, v, used, image) {
                image[pv] = v;
                self.search(step + 1, used | (1u128 << v), image, visit)?;
                image[pv] = usize::MAX;
            }
        }
        ControlFlow::Continue(())
    }

    /// Can `order[step]` be mapped to `v` given the current partial image?
    fn admissible(&self, step: usize, v: usize, used: u128, image: &[usize]) -> bool {
        if used & (1u128 << v) != 0 {
            return false;
        }
        let pv = self.order[step];
        self.touched[step].iter().all(|e| {
            let mut mask = 0u128;
            let mut complete = true;
            for &u in e {
                let img = if u == pv { v } else { image[u] };
                if img == usize::MAX {
                    complete = false;
                } else {
                    mask |= 1u128 << img;
                }
            }
            if complete {
                self.host.contains_mask(mask)
            } else {
                self.shadow.contains(&mask)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_graph, path_graph, petersen_graph};

    fn star(leaves: usize) -> Hypergraph {
        Hypergraph::new(leaves + 1, 2, (1..=leaves).map(|i| [0, i])).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(Pattern::c5().aut_count(), 10);
        assert_eq!(Pattern::k2().aut_count(), 2);
        assert_eq!(Pattern::k3().aut_count(), 6);
        assert_eq!(Pattern::single_edge(4).aut_count(), 24);
        assert!(matches!(
            Pattern::new(Hypergraph::empty(3, 2).unwrap()),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn enumeration_examples() {
        let k2 = Pattern::k2();
        assert_eq!(enumerate_injective(&k2, &complete_graph(2)).unwrap().len(), 2);
        let c5 = Pattern::c5();
        assert_eq!(enumerate_injective(&c5, c5.graph()).unwrap().len(), 10);
        assert!(enumerate_injective(&Pattern::k3(), c5.graph())
            .unwrap()
            .is_empty());
        let h3 = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert!(matches!(
            enumerate_injective(&k2, &h3),
            Err(Error::UniformityMismatch { .. })
        ));
    }

    #[test]
    fn copy_counts() {
        let c5 = Pattern::c5();
        assert_eq!(count_copies(&c5, c5.graph()).unwrap(), 1);
        for n in 2..8 {
            assert_eq!(
                count_copies(&Pattern::k2(), &complete_graph(n)).unwrap(),
                n * (n - 1) / 2
            );
        }
        assert_eq!(count_copies(&c5, &petersen_graph()).unwrap(), 12);
    }

    #[test]
    fn degrees_and_links() {
        let c5 = Pattern::c5();
        let list = enumerate_injective(&c5, c5.graph()).unwrap();
        assert!((0..5).all(|v| list.degree(v).unwrap() == 10));
        let stats = list.degree_stats();
        assert_eq!((stats.min, stats.avg), (10, 10.0));

        let k2 = Pattern::k2();
        assert_eq!(q_degree(&k2, &star(3), 0).unwrap(), 6);
        let stats = degree_stats(&k2, c5.graph()).unwrap();
        assert_eq!((stats.min, stats.avg), (4, 4.0));
        let stats = degree_stats(&k2, &Hypergraph::empty(4, 2).unwrap()).unwrap();
        assert_eq!((stats.min, stats.avg), (0, 0.0));

        let link = q_link(&k2, &complete_graph(2), 0).unwrap();
        assert_eq!(link.tuples.get(&vec![1]), Some(&2));
        assert_eq!(link.total(), 2);
        let link = list.link(0).unwrap();
        assert_eq!(link.total(), 10);
        assert!(link.tuples.keys().all(|t| t.len() == 4));
        assert!(list.link(5).is_err());
    }

    #[test]
    fn degree_sum_identity() {
        let list = enumerate_injective(&Pattern::k2(), &path_graph(5)).unwrap();
        let total: usize = list.degrees().iter().sum();
        assert_eq!(total, 2 * list.len());
    }

    #[test]
    fn isomorphism_queries() {
        let a = c5_relabelled();
        assert!(is_isomorphic(&a, Pattern::c5().graph()));
        assert!(!is_isomorphic(&path_graph(5), Pattern::c5().graph()));
    }

    fn c5_relabelled() -> Hypergraph {
        Hypergraph::new(5, 2, [[0, 2], [2, 4], [4, 1], [1, 3], [3, 0]]).unwrap()
    }
}
