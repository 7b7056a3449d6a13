//! The Lagrangian `Q`-polynomial `P_{Q,H}(x) = sum over Inj(Q,H) of prod_{i in phi} x_i`,
//! its gradient, and points of the nonnegative part of the alpha-sphere.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::embeddings::{enumerate_injective, EmbeddingList, Pattern};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Exact-membership tolerance for `sum x_i^alpha = 1`.
pub const NORM_TOL: f64 = 1e-12;
/// Vectors this close to the sphere are renormalized instead of rejected.
pub const RENORMALIZE_TOL: f64 = 1e-6;

/// A nonnegative point of `{x : sum |x_i|^alpha = 1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    alpha: f64,
    entries: Vec<f64>,
}

fn alpha_norm_power(alpha: f64, xs: &[f64]) -> f64 {
    xs.iter().map(|x| x.powf(alpha)).sum()
}

impl WeightVector {
    /// Accepts a vector on the sphere, renormalizing small drift.
    pub fn new(alpha: f64, entries: Vec<f64>) -> Result<Self> {
        Self::check_entries(alpha, &entries)?;
        let s = alpha_norm_power(alpha, &entries);
        if (s - 1.0).abs() <= NORM_TOL {
            Ok(Self { alpha, entries })
        } else if (s - 1.0).abs() <= RENORMALIZE_TOL {
            Self::normalized(alpha, entries)
        } else {
            Err(Error::InvalidWeightVector(format!(
                "sum of alpha-powers is {s}, not 1"
            )))
        }
    }

    /// Scales an arbitrary nonnegative, nonzero vector onto the sphere.
    pub fn normalized(alpha: f64, mut entries: Vec<f64>) -> Result<Self> {
        Self::check_entries(alpha, &entries)?;
        let s = alpha_norm_power(alpha, &entries);
        if s <= 0.0 {
            return Err(Error::InvalidWeightVector("zero vector".into()));
        }
        let scale = s.powf(1.0 / alpha);
        for x in &mut entries {
            *x /= scale;
        }
        Ok(Self { alpha, entries })
    }

    /// The point `(n^{-1/alpha}, ..., n^{-1/alpha})`.
    pub fn uniform(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeightVector("empty vector".into()));
        }
        Self::normalized(alpha, vec![1.0; n])
    }

    fn check_entries(alpha: f64, entries: &[f64]) -> Result<()> {
        if !(alpha.is_finite() && alpha >= 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if let Some(x) = entries.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidWeightVector(format!(
                "entry {x} is negative or not finite"
            )));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum x_i^alpha`, which is 1 up to rounding.
    pub fn norm_power(&self) -> f64 {
        alpha_norm_power(self.alpha, &self.entries)
    }
}

/// A monomial `coeff * prod_{v in vertices} x_v` over a set of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub vertices: Vec<usize>,
    pub coeff: u64,
}

impl Monomial {
    fn product(&self, x: &[f64]) -> f64 {
        self.vertices.iter().map(|&v| x[v]).product()
    }

    fn product_without(&self, x: &[f64], skip: usize) -> f64 {
        self.vertices
            .iter()
            .filter(|&&v| v != skip)
            .map(|&v| x[v])
            .product()
    }
}

/// `P_{Q,H}` with embeddings sharing an image set merged into one monomial.
#[derive(Debug, Clone)]
pub struct LagrangianPolynomial {
    n: usize,
    q: usize,
    terms: Vec<Monomial>,
}

impl LagrangianPolynomial {
    pub fn new(pattern: &Pattern, host: &Hypergraph) -> Result<Self> {
        Ok(Self::from_embeddings(&enumerate_injective(pattern, host)?))
    }

    pub fn from_embeddings(list: &EmbeddingList) -> Self {
        let mut merged: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for t in list.iter() {
            let mut set = t.to_vec();
            set.sort_unstable();
            *merged.entry(set).or_insert(0) += 1;
        }
        Self {
            n: list.host().n(),
            q: list.q(),
            terms: merged
                .into_iter()
                .map(|(vertices, coeff)| Monomial { vertices, coeff })
                .collect(),
        }
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree of homogeneity.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// `inj(Q, H)`, the sum of all coefficients.
    pub fn embedding_count(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                got: x.len(),
                expected: self.n,
            });
        }
        Ok(())
    }

    /// Evaluates at an arbitrary (not necessarily normalized) vector.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self
            .terms
            .iter()
            .map(|t| t.coeff as f64 * t.product(x))
            .sum())
    }

    /// `d P / d x_i` for every `i`; equals the link sum `sum_{S in L(i)} x_S`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        let mut g = vec![0.0; self.n];
        for t in &self.terms {
            for &v in &t.vertices {
                g[v] += t.coeff as f64 * t.product_without(x, v);
            }
        }
        Ok(g)
    }

    /// `d_{Q,H}(i)` read off the coefficients.
    pub fn degree(&self, i: usize) -> u64 {
        self.terms
            .iter()
            .filter(|t| t.vertices.contains(&i))
            .map(|t| t.coeff)
            .sum()
    }

    /// The Hölder bound `d(i)^{(alpha-1)/alpha} (sum_{S in L(i)} x_S^alpha)^{1/alpha}`
    /// on `d P / d x_i`.
    pub fn holder_bound(&self, x: &[f64], i: usize, alpha: f64) -> Result<f64> {
        self.check_dim(x)?;
        if !(alpha > 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if i >= self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        let (mut degree, mut power_sum) = (0.0, 0.0);
        for t in self.terms.iter().filter(|t| t.vertices.contains(&i)) {
            degree += t.coeff as f64;
            power_sum += t.coeff as f64 * t.product_without(x, i).powf(alpha);
        }
        Ok(degree.powf((alpha - 1.0) / alpha) * power_sum.powf(1.0 / alpha))
    }

    /// The polynomial of `H - i`, kept in the variables of `H` (so `x_i` is ignored).
    pub fn without_vertex(&self, i: usize) -> Self {
        Self {
            n: self.n,
            q: self.q,
            terms: self
                .terms
                .iter()
                .filter(|t| !t.vertices.contains(&i))
                .cloned()
                .collect(),
        }
    }
}

/// `P_{Q,H}(x)`.
pub fn eval_p(pattern: &Pattern, host: &Hypergraph, x: &WeightVector) -> Result<f64> {
    LagrangianPolynomial::new(pattern, host)?.eval(x.entries())
}

/// The classical Lagrangian `r! sum_{e in H} prod_{i in e} x_i`.
pub fn eval_p_classical(host: &Hypergraph, x: &WeightVector) -> Result<f64> {
    if x.len() != host.n() {
        return Err(Error::DimensionMismatch {
            got: x.len(),
            expected: host.n(),
        });
    }
    let factorial: f64 = (1..=host.r()).map(|k| k as f64).product();
    let xs = x.entries();
    Ok(factorial
        * host
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| xs[v]).product::<f64>())
            .sum::<f64>())
}

/// `grad P_{Q,H}(x)`.
pub fn grad_p(pattern: &Pattern, host: &Hypergraph, x: &WeightVector) -> Result<Vec<f64>> {
    LagrangianPolynomial::new(pattern, host)?.gradient(x.entries())
}

/// Hölder upper bound on `d P / d x_i` at a nonnegative point.
pub fn grad_upper_bound_holder(
    pattern: &Pattern,
    host: &Hypergraph,
    x: &WeightVector,
    i: usize,
) -> Result<f64> {
    LagrangianPolynomial::new(pattern, host)?.holder_bound(x.entries(), i, x.alpha())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_graph, cycle_graph};

    #[test]
    fn weight_vector_validation() {
        let h = 2f64.powf(-0.5);
        assert!(WeightVector::new(2.0, vec![h, h]).is_ok());
        let drift = WeightVector::new(2.0, vec![h + 1e-9, h]).unwrap();
        assert!((drift.norm_power() - 1.0).abs() <= NORM_TOL);
        assert!(WeightVector::new(2.0, vec![0.9, 0.9]).is_err());
        assert!(WeightVector::new(2.0, vec![-0.1, 1.0]).is_err());
        assert!(WeightVector::new(0.5, vec![1.0]).is_err());
        assert!(WeightVector::normalized(2.0, vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn eval_examples() {
        let k2 = Pattern::k2();
        let x = WeightVector::uniform(2, 2.0).unwrap();
        assert!((eval_p(&k2, &complete_graph(2), &x).unwrap() - 1.0).abs() < 1e-15);

        let c5 = Pattern::c5();
        let x = WeightVector::uniform(5, 2.0).unwrap();
        let v = eval_p(&c5, c5.graph(), &x).unwrap();
        assert!((v - 10.0 * 5f64.powf(-2.5)).abs() < 1e-15);
        assert!((v - 0.178885438).abs() < 1e-9);

        let x = WeightVector::uniform(3, 2.0).unwrap();
        assert!(matches!(
            eval_p(&c5, c5.graph(), &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn classical_examples() {
        let x = WeightVector::uniform(2, 1.0).unwrap();
        assert!((eval_p_classical(&complete_graph(2), &x).unwrap() - 0.5).abs() < 1e-15);
        let single = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let x = WeightVector::uniform(3, 1.0).unwrap();
        assert!((eval_p_classical(&single, &x).unwrap() - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn gradient_of_single_edge() {
        let p = LagrangianPolynomial::new(&Pattern::k2(), &complete_graph(2)).unwrap();
        let g = p.gradient(&[0.3, 0.7]).unwrap();
        assert!((g[0] - 1.4).abs() < 1e-15 && (g[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn holder_bound_cases() {
        // Single link tuple: Hölder is tight.
        let p = LagrangianPolynomial::new(&Pattern::single_edge(3), &Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap()).unwrap();
        // One image set with multiplicity 6, so the link of 0 is {(1,2),(2,1)} x3 with equal products.
        let x = [0.5, 0.4, 0.3];
        let g = p.gradient(&x).unwrap()[0];
        let b = p.holder_bound(&x, 0, 2.0).unwrap();
        assert!((g - b).abs() < 1e-12);

        let c5 = cycle_graph(5).unwrap();
        let p = LagrangianPolynomial::new(&Pattern::k2(), &c5).unwrap();
        let x = WeightVector::uniform(5, 2.0).unwrap();
        let g = p.gradient(x.entries()).unwrap();
        for i in 0..5 {
            assert!(p.holder_bound(x.entries(), i, 2.0).unwrap() >= g[i] - 1e-15);
        }
        assert!(p.holder_bound(x.entries(), 0, 1.0).is_err());
    }

    #[test]
    fn vertex_deletion_drops_terms() {
        let p = LagrangianPolynomial::new(&Pattern::k2(), &complete_graph(4)).unwrap();
        let minus = p.without_vertex(3);
        assert_eq!(minus.embedding_count(), 6);
        assert_eq!(p.degree(3), 6);
    }
}
