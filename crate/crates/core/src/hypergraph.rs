//! Uniform hypergraphs on contiguous vertex labels, plus the constructions used
//! throughout the crate (Turán hypergraphs, pentagon blowups, small named graphs).
//!
//! Vertices are `0..n` in the API. The text formats in the CLI crate use
//! `1..=n` and translate at the boundary.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported vertex count; edges are stored as `u128` bitmasks.
pub const MAX_VERTICES: usize = 128;

/// An `r`-uniform hypergraph on the vertex set `0..n`.
///
/// Edges are stored strictly sorted and the edge list itself is kept in
/// lexicographic order, so two hypergraphs with the same edge set compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
    #[serde(skip)]
    masks: Vec<u128>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}

pub(crate) fn edge_mask(edge: &[usize]) -> u128 {
    edge.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

impl Hypergraph {
    /// Builds a hypergraph from 0-based edges, rejecting malformed or repeated edges.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if r == 0 {
            return Err(Error::InvalidUniformity(r));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut sorted = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != r {
                return Err(Error::WrongArity {
                    edge: e.to_vec(),
                    got: e.len(),
                    expected: r,
                });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let mut s = e.to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { edge: e.to_vec() });
            }
            sorted.push(s);
        }
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        Ok(Self::from_sorted_unchecked(n, r, sorted))
    }

    fn from_sorted_unchecked(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut masks: Vec<u128> = edges.iter().map(|e| edge_mask(e)).collect();
        masks.sort_unstable();
        Self { n, r, edges, masks }
    }

    /// The edgeless `r`-graph on `n` vertices.
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, std::iter::empty::<Vec<usize>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniformity.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Membership test for an edge given in any vertex order.
    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        edge.len() == self.r
            && edge.iter().all(|&v| v < self.n)
            && self.contains_mask(edge_mask(edge))
    }

    pub(crate) fn contains_mask(&self, mask: u128) -> bool {
        self.masks.binary_search(&mask).is_ok()
    }

    pub(crate) fn masks(&self) -> &[u128] {
        &self.masks
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Neighbourhood of `v` in a 2-graph, as a bitmask.
    pub(crate) fn neighbour_mask(&self, v: usize) -> u128 {
        let mut m = 0u128;
        for e in self.edges.iter().filter(|e| e.contains(&v)) {
            m |= edge_mask(e);
        }
        m & !(1u128 << v)
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, edge: &[usize]) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(edge.to_vec());
        Self::new(self.n, self.r, edges)
    }

    /// The induced subgraph `H[S]`.
    ///
    /// `S` is sorted and deduplicated; its vertices are relabeled `0..|S|` in
    /// increasing order. The second component maps new labels to old ones.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| old_to_new[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| old_to_new[v]).collect())
            .collect();
        // Relabeling is monotone, so sorted edges stay sorted and in order.
        Ok((Self::from_sorted_unchecked(keep.len(), self.r, edges), keep))
    }

    /// `H - v`, i.e. `H[V \ {v}]`.
    pub fn remove_vertex(&self, v: usize) -> Result<(Self, Vec<usize>)> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Image of the hypergraph under a vertex permutation (`perm[old] = new`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                got: perm.len(),
                expected: self.n,
            });
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Self::new(self.n, self.r, edges)
    }

    /// True iff every edge meets each part (given as `part_of[v]`) at most once.
    pub fn respects_partition(&self, part_of: &[usize]) -> bool {
        part_of.len() == self.n
            && self.edges.iter().all(|e| {
                let mut seen: Vec<usize> = e.iter().map(|&v| part_of[v]).collect();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            })
    }
}

/// Sizes of the parts of a vertex partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSpec {
    part_sizes: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(part_sizes: Vec<usize>) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if part_sizes.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "empty part in {part_sizes:?}"
            )));
        }
        Ok(Self { part_sizes })
    }

    /// Balanced partition of `n` into `m` parts; the `t = n mod m` parts of
    /// size `s + 1` come first. Parts may be empty when `n < m`.
    pub fn balanced(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        let (s, t) = (n / m, n % m);
        Ok(Self {
            part_sizes: (0..m).map(|i| if i < t { s + 1 } else { s }).collect(),
        })
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn parts(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn total(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        let max = self.part_sizes.iter().max().copied().unwrap_or(0);
        let min = self.part_sizes.iter().min().copied().unwrap_or(0);
        max - min <= 1
    }

    /// Contiguous vertex ranges, one per part.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.part_sizes
            .iter()
            .map(|&s| {
                let r = start..start + s;
                start += s;
                r
            })
            .collect()
    }

    /// `part_of[v]` for every vertex.
    pub fn part_map(&self) -> Vec<usize> {
        self.part_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect()
    }
}

/// Binomial coefficient in exact arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// `|T^q_{m,n}|` from the balanced part sizes: with `n = m s + t`,
/// `sum_i C(t,i) C(m-t,q-i) (s+1)^i s^(q-i)`.
pub fn turan_edge_count(m: usize, q: usize, n: usize) -> u128 {
    if m == 0 {
        return 0;
    }
    let (s, t) = ((n / m) as u128, (n % m) as u64);
    let m = m as u64;
    (0..=q as u64)
        .map(|i| {
            binomial(t, i)
                * binomial(m - t, q as u64 - i)
                * (s + 1).pow(i as u32)
                * s.pow((q as u64 - i) as u32)
        })
        .sum()
}

/// The balanced complete `m`-partite `q`-graph `T^q_{m,n}`.
pub fn turan_hypergraph(m: usize, q: usize, n: usize) -> Result<Hypergraph> {
    if q == 0 || m < q {
        return Err(Error::InvalidTuranParameters { m, q });
    }
    let ranges = PartitionSpec::balanced(m, n)?.ranges();
    let mut edges = Vec::new();
    for parts in combinations(m, q) {
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        for &p in &parts {
            stack = stack
                .into_iter()
                .flat_map(|prefix| {
                    ranges[p].clone().map(move |v| {
                        let mut e = prefix.clone();
                        e.push(v);
                        e
                    })
                })
                .collect();
        }
        edges.extend(stack);
    }
    Hypergraph::new(n, q, edges)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Blowup of the pentagon: part `B_i` is joined completely to `B_{i+1 mod 5}`.
pub fn c5_blowup(part_sizes: &[usize]) -> Result<Hypergraph> {
    if part_sizes.len() != 5 {
        return Err(Error::InvalidPartition(format!(
            "a pentagon blowup needs 5 parts, got {}",
            part_sizes.len()
        )));
    }
    let spec = PartitionSpec::new(part_sizes.to_vec())?;
    let ranges = spec.ranges();
    let mut edges = Vec::new();
    for i in 0..5 {
        for a in ranges[i].clone() {
            for b in ranges[(i + 1) % 5].clone() {
                edges.push(vec![a, b]);
            }
        }
    }
    Hypergraph::new(spec.total(), 2, edges)
}

/// Complete `r`-graph `K_n^r`.
pub fn complete_hypergraph(n: usize, r: usize) -> Result<Hypergraph> {
    Hypergraph::new(n, r, combinations(n, r))
}

pub fn complete_graph(n: usize) -> Hypergraph {
    complete_hypergraph(n, 2).expect("complete graph is well formed")
}

/// Cycle `C_n` on `0..n` (`n >= 3`).
pub fn cycle_graph(n: usize) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::InvalidConfig(format!("cycle needs n >= 3, got {n}")));
    }
    Hypergraph::new(n, 2, (0..n).map(|i| [i, (i + 1) % n]))
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path_graph(n: usize) -> Hypergraph {
    Hypergraph::new(n, 2, (1..n).map(|i| [i - 1, i])).expect("path is well formed")
}

/// Complete bipartite graph `K_{a,b}`.
pub fn complete_bipartite(a: usize, b: usize) -> Hypergraph {
    let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| [i, j]));
    Hypergraph::new(a + b, 2, edges).expect("complete bipartite graph is well formed")
}

/// The Petersen graph: outer pentagon `0..5`, inner pentagram `5..10`.
pub fn petersen_graph() -> Hypergraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push([i, (i + 1) % 5]);
        edges.push([i, i + 5]);
        edges.push([5 + i, 5 + (i + 2) % 5]);
    }
    Hypergraph::new(10, 2, edges).expect("Petersen graph is well formed")
}

/// Checks that `map` sends every edge of `from` onto an edge of `to`.
pub fn is_homomorphism(from: &Hypergraph, to: &Hypergraph, map: &[usize]) -> bool {
    map.len() == from.n()
        && from.r() == to.r()
        && map.iter().all(|&v| v < to.n())
        && from.edges().iter().all(|e| {
            let image: Vec<usize> = e.iter().map(|&v| map[v]).collect();
            to.contains_edge(&image)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Hypergraph {
        Hypergraph::new(5, 2, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]).unwrap()
    }

    #[test]
    fn smallest_graphs() {
        let k2 = Hypergraph::new(2, 2, [[0, 1]]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(pentagon().edge_count(), 5);
        let k33 = Hypergraph::new(3, 3, [[2, 0, 1]]).unwrap();
        assert_eq!(k33.edges(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn malformed_edges_are_rejected() {
        assert!(matches!(
            Hypergraph::new(3, 2, [vec![0, 1, 2]]),
            Err(Error::WrongArity { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[0, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[0, 1], [1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[1, 1]]),
            Err(Error::RepeatedVertex { .. })
        ));
        assert!(Hypergraph::new(200, 2, [[0, 1]]).is_err());
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_hypergraph(2, 2, 4).unwrap().edge_count(), 4);
        assert_eq!(turan_hypergraph(3, 2, 6).unwrap().edge_count(), 12);
        assert_eq!(turan_hypergraph(5, 5, 10).unwrap().edge_count(), 32);
        assert!(matches!(
            turan_hypergraph(2, 3, 6),
            Err(Error::InvalidTuranParameters { .. })
        ));
    }

    #[test]
    fn turan_count_matches_enumeration() {
        // Brute force over all q-subsets, independent of the part-product construction.
        for m in 1..=5 {
            for q in 1..=m {
                for n in 1..=14 {
                    let part = PartitionSpec::balanced(m, n).unwrap().part_map();
                    let direct = combinations(n, q)
                        .into_iter()
                        .filter(|s| {
                            let mut p: Vec<usize> = s.iter().map(|&v| part[v]).collect();
                            p.sort_unstable();
                            p.dedup();
                            p.len() == q
                        })
                        .count() as u128;
                    assert_eq!(turan_edge_count(m, q, n), direct, "m={m} q={q} n={n}");
                    assert_eq!(
                        turan_hypergraph(m, q, n).unwrap().edge_count() as u128,
                        direct
                    );
                }
            }
        }
    }

    #[test]
    fn balanced_partition_puts_large_parts_first() {
        let p = PartitionSpec::balanced(3, 8).unwrap();
        assert_eq!(p.part_sizes(), &[3, 3, 2]);
        assert!(p.is_balanced());
        assert!(!PartitionSpec::new(vec![3, 1]).unwrap().is_balanced());
        assert!(PartitionSpec::new(vec![2, 0]).is_err());
    }

    #[test]
    fn c5_blowup_examples() {
        assert_eq!(c5_blowup(&[1; 5]).unwrap(), pentagon());
        let g = c5_blowup(&[2; 5]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 20));
        let g = c5_blowup(&[2, 1, 1, 1, 1]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 7));
        assert!(c5_blowup(&[1, 1, 1, 1]).is_err());
    }

    #[test]
    fn c5_blowup_maps_to_pentagon() {
        let sizes = [3, 1, 2, 2, 1];
        let g = c5_blowup(&sizes).unwrap();
        let map = PartitionSpec::new(sizes.to_vec()).unwrap().part_map();
        assert!(is_homomorphism(&g, &pentagon(), &map));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (p, map) = pentagon().induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert_eq!(map, vec![0, 1, 2]);
        let (k3, _) = complete_graph(4).remove_vertex(2).unwrap();
        assert_eq!(k3, complete_graph(3));
        let single = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let (g, _) = single.remove_vertex(1).unwrap();
        assert_eq!((g.n(), g.r(), g.edge_count()), (2, 3, 0));
        assert!(pentagon().remove_vertex(5).is_err());
        assert!(pentagon().induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn induced_subgraphs_compose() {
        let h = petersen_graph();
        let s = [0, 2, 3, 5, 7, 8, 9];
        let (hs, map) = h.induced_subgraph(&s).unwrap();
        // S' given in the labels of H[S]
        let inner = [1, 2, 4, 6];
        let (twice, _) = hs.induced_subgraph(&inner).unwrap();
        let direct: Vec<usize> = inner.iter().map(|&i| map[i]).collect();
        let (once, _) = h.induced_subgraph(&direct).unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn petersen_is_cubic() {
        let p = petersen_graph();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }
}
