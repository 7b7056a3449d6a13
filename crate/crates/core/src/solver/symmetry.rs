use crate::embeddings::Pattern;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::polynomial::{LagrangianPolynomial, WeightVector};

/// True iff swapping `i` and `j` maps the edge set onto itself.
pub fn is_transposition_automorphism(h: &Hypergraph, i: usize, j: usize) -> bool {
    if i == j {
        return true;
    }
    let (bi, bj) = (1u128 << i, 1u128 << j);
    h.masks().iter().all(|&m| {
        let (has_i, has_j) = (m & bi != 0, m & bj != 0);
        if has_i == has_j {
            return true;
        }
        h.contains_mask(m ^ bi ^ bj)
    })
}

/// Classes of the relation "the transposition `(i j)` is an automorphism",
/// closed transitively, each sorted and listed by smallest member.
pub fn equivalence_classes(h: &Hypergraph) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], v: usize) -> usize {
        let mut root = v;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = v;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) != find(&mut parent, j) && is_transposition_automorphism(h, i, j)
            {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for v in 0..n {
        let root = find(&mut parent, v);
        if index[root] == usize::MAX {
            index[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[index[root]].push(v);
    }
    classes
}

/// Replaces `x_i, x_j` of equivalent vertices by their alpha-power mean.
pub fn symmetrize(
    pattern: &Pattern,
    host: &Hypergraph,
    x: &WeightVector,
    i: usize,
    j: usize,
) -> Result<WeightVector> {
    if x.len() != host.n() {
        return Err(Error::DimensionMismatch {
            got: x.len(),
            expected: host.n(),
        });
    }
    for v in [i, j] {
        if v >= host.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: host.n() });
        }
    }
    if pattern.r() != host.r() {
        return Err(Error::UniformityMismatch {
            pattern: pattern.r(),
            host: host.r(),
        });
    }
    if !is_transposition_automorphism(host, i, j) {
        return Err(Error::NotEquivalent(i, j));
    }
    let a = x.alpha();
    let mut y = x.entries().to_vec();
    let mean = ((y[i].powf(a) + y[j].powf(a)) / 2.0).powf(1.0 / a);
    y[i] = mean;
    y[j] = mean;
    WeightVector::new(a, y)
}

/// `P(symmetrize(x)) - P(x)`, which is never negative.
pub fn symmetrization_gain(
    poly: &LagrangianPolynomial,
    x: &WeightVector,
    y: &WeightVector,
) -> Result<f64> {
    Ok(poly.eval(y.entries())? - poly.eval(x.entries())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_bipartite, complete_graph, cycle_graph};

    #[test]
    fn class_examples() {
        assert_eq!(equivalence_classes(&complete_graph(5)), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(
            equivalence_classes(&complete_bipartite(2, 2)),
            vec![vec![0, 1], vec![2, 3]]
        );
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(equivalence_classes(&c5).len(), 5);
    }

    #[test]
    fn k22_transpositions_exhaustive() {
        let h = complete_bipartite(2, 2);
        let expected = [(0, 1), (2, 3)];
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(
                    is_transposition_automorphism(&h, i, j),
                    expected.contains(&(i, j))
                );
            }
        }
    }

    #[test]
    fn symmetrize_examples() {
        let k2 = Pattern::k2();
        let h = complete_graph(2);
        let x = WeightVector::uniform(2, 2.0).unwrap();
        assert_eq!(symmetrize(&k2, &h, &x, 0, 1).unwrap(), x);

        let eps = 0.05f64;
        let x = WeightVector::normalized(2.0, vec![1.0, eps]).unwrap();
        let y = symmetrize(&k2, &h, &x, 0, 1).unwrap();
        let poly = LagrangianPolynomial::new(&k2, &h).unwrap();
        let before = poly.eval(x.entries()).unwrap();
        let after = poly.eval(y.entries()).unwrap();
        assert!(after > before);
        assert!((after - 1.0).abs() < 1e-12);

        let c5 = cycle_graph(5).unwrap();
        let x = WeightVector::uniform(5, 2.0).unwrap();
        assert!(matches!(
            symmetrize(&k2, &c5, &x, 0, 1),
            Err(Error::NotEquivalent(0, 1))
        ));
    }

    #[test]
    fn repeated_symmetrization_equalizes_class() {
        let h = complete_graph(4);
        let k2 = Pattern::k2();
        let mut x = WeightVector::normalized(3.0, vec![0.9, 0.1, 0.5, 0.3]).unwrap();
        for _ in 0..60 {
            for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
                x = symmetrize(&k2, &h, &x, i, j).unwrap();
            }
        }
        let first = x.entries()[0];
        assert!(x.entries().iter().all(|v| (v - first).abs() < 1e-9));
    }
}
