use serde::Serialize;

use crate::embeddings::{find_injective, Pattern};
use crate::error::{Error, Result};
use crate::hypergraph::{
    c5_blowup, complete_graph, cycle_graph, path_graph, turan_hypergraph, Hypergraph,
};

use super::pentagon::triangle_free_graphs;

/// Named generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    /// Every pentagon blowup with nonempty parts, one per dihedral class of part sizes.
    C5Blowups,
    /// `T^q_{m,n}`.
    Turan { m: usize, q: usize },
    Complete,
    /// Paths `P_n` and, for `n >= 3`, cycles `C_n`.
    PathsCycles,
    /// All triangle-free graphs up to isomorphism (internal generator, `n <= 9`).
    TriangleFree,
}

/// Where the graphs of a suite come from.
#[derive(Debug, Clone)]
pub enum GraphFamilySource {
    Generator {
        tag: FamilyTag,
        sizes: std::ops::RangeInclusive<usize>,
    },
    /// Graphs read from an external stream, e.g. a graph6 file.
    Stream {
        descriptor: String,
        graphs: Vec<Hypergraph>,
    },
}

/// Graphs yielded by a source, plus descriptions of rejected ones.
#[derive(Debug, Clone)]
pub struct Family {
    pub members: Vec<(String, Hypergraph)>,
    pub rejected: Vec<String>,
}

impl Family {
    pub fn from_graphs(members: Vec<(String, Hypergraph)>) -> Self {
        Self {
            members,
            rejected: Vec::new(),
        }
    }
}

pub fn has_triangle(g: &Hypergraph) -> bool {
    g.r() == 2
        && find_injective(Pattern::k3().graph(), g)
            .map(|m| m.is_some())
            .unwrap_or(false)
}

/// Part sizes of all pentagon blowups on `n` vertices with nonempty parts,
/// one representative (lexicographically smallest) per rotation/reflection class.
pub fn blowup_compositions(n: usize) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    let mut sizes = [1usize; 5];
    fn rec(idx: usize, left: usize, sizes: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if idx == 4 {
            sizes[4] = left;
            if left >= 1 && is_canonical(sizes) {
                out.push(*sizes);
            }
            return;
        }
        for v in 1..=left.saturating_sub(4 - idx) {
            sizes[idx] = v;
            rec(idx + 1, left - v, sizes, out);
        }
    }
    rec(0, n, &mut sizes, &mut out);
    out
}

fn is_canonical(s: &[usize; 5]) -> bool {
    (0..5).all(|k| {
        let rot: [usize; 5] = std::array::from_fn(|i| s[(i + k) % 5]);
        let refl: [usize; 5] = std::array::from_fn(|i| s[(k + 5 - i) % 5]);
        *s <= rot && *s <= refl
    })
}

impl GraphFamilySource {
    /// Yields the graphs; with `triangle_free`, graphs containing a triangle
    /// are dropped and listed in `rejected`.
    pub fn graphs(&self, triangle_free: bool) -> Result<Family> {
        let mut members = Vec::new();
        match self {
            Self::Generator { tag, sizes } => {
                for n in sizes.clone() {
                    match *tag {
                        FamilyTag::C5Blowups => {
                            for s in blowup_compositions(n) {
                                members.push((format!("blowup{s:?}"), c5_blowup(&s)?));
                            }
                        }
                        FamilyTag::Turan { m, q } => {
                            members.push((format!("T^{q}_{{{m},{n}}}"), turan_hypergraph(m, q, n)?));
                        }
                        FamilyTag::Complete => members.push((format!("K_{n}"), complete_graph(n))),
                        FamilyTag::PathsCycles => {
                            members.push((format!("P_{n}"), path_graph(n)));
                            if n >= 3 {
                                members.push((format!("C_{n}"), cycle_graph(n)?));
                            }
                        }
                        FamilyTag::TriangleFree => {
                            for (k, g) in triangle_free_graphs(n)?.into_iter().enumerate() {
                                members.push((format!("tf{n}#{k}"), g));
                            }
                        }
                    }
                }
            }
            Self::Stream { descriptor, graphs } => {
                for (k, g) in graphs.iter().enumerate() {
                    members.push((format!("{descriptor}#{k}"), g.clone()));
                }
            }
        }
        let mut rejected = Vec::new();
        if triangle_free {
            members.retain(|(name, g)| {
                let bad = g.r() != 2 || has_triangle(g);
                if bad {
                    rejected.push(name.clone());
                }
                !bad
            });
        }
        Ok(Family { members, rejected })
    }
}

/// A part assignment making every edge meet each part at most once, if one
/// with at most `m` parts exists. Exhaustive; intended for small `n`.
pub fn find_partition(h: &Hypergraph, m: usize) -> Option<Vec<usize>> {
    let n = h.n();
    if h.r() > m && !h.is_empty() {
        return None;
    }
    let incident: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            h.edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.contains(&v))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let mut part = vec![usize::MAX; n];
    fn rec(
        v: usize,
        used: usize,
        m: usize,
        h: &Hypergraph,
        incident: &[Vec<usize>],
        part: &mut [usize],
    ) -> bool {
        if v == part.len() {
            return true;
        }
        for p in 0..m.min(used + 1) {
            let clash = incident[v]
                .iter()
                .any(|&k| h.edges()[k].iter().any(|&u| u < v && part[u] == p));
            if clash {
                continue;
            }
            part[v] = p;
            if rec(v + 1, used.max(p + 1), m, h, incident, part) {
                return true;
            }
        }
        part[v] = usize::MAX;
        false
    }
    rec(0, 0, m, h, &incident, &mut part).then_some(part)
}

/// Checks a supplied partition, or searches for one.
pub fn m_partite_witness(h: &Hypergraph, m: usize, given: Option<&[usize]>) -> Result<Vec<usize>> {
    match given {
        Some(p) => {
            if p.len() != h.n() {
                return Err(Error::DimensionMismatch {
                    got: p.len(),
                    expected: h.n(),
                });
            }
            if p.iter().any(|&x| x >= m) || !h.respects_partition(p) {
                return Err(Error::NotPartite(m));
            }
            Ok(p.to_vec())
        }
        None => find_partition(h, m).ok_or(Error::NotPartite(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_bipartite, petersen_graph};

    #[test]
    fn blowup_classes() {
        assert_eq!(blowup_compositions(5), vec![[1, 1, 1, 1, 1]]);
        assert_eq!(blowup_compositions(6), vec![[1, 1, 1, 1, 2]]);
        // 7 = two 2s adjacent or not, or one 3.
        assert_eq!(blowup_compositions(7).len(), 3);
        assert!(blowup_compositions(4).is_empty());
    }

    #[test]
    fn partitions() {
        let c5 = cycle_graph(5).unwrap();
        assert!(find_partition(&c5, 2).is_none());
        let p = find_partition(&c5, 3).unwrap();
        assert!(c5.respects_partition(&p));
        assert!(find_partition(&complete_bipartite(3, 4), 2).is_some());
        assert!(find_partition(&complete_graph(4), 3).is_none());
        let t = turan_hypergraph(4, 3, 8).unwrap();
        assert!(find_partition(&t, 4).is_some());
        assert!(find_partition(&t, 3).is_none());
        assert!(find_partition(&petersen_graph(), 3).is_some());
    }

    #[test]
    fn triangle_filter() {
        let src = GraphFamilySource::Generator {
            tag: FamilyTag::Complete,
            sizes: 2..=4,
        };
        let fam = src.graphs(true).unwrap();
        assert_eq!(fam.members.len(), 1);
        assert_eq!(fam.rejected, vec!["K_3".to_string(), "K_4".to_string()]);
    }
}
