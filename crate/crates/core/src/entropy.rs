//! Random embeddings, their mixtures and the entropic density
//! `eta_{alpha,Q}(H) = max 2^{H[(X_1..X_q)] - (q/alpha) H[mu(X_1..X_q)]}`.
//!
//! Entropies are in bits. Distributions live on ordered embeddings, indexed
//! like the [`EmbeddingList`] they were built from.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embeddings::{enumerate_injective, EmbeddingList, Pattern};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::polynomial::WeightVector;
use crate::solver::{solve_certified, SolverConfig};

/// Tolerance on the total mass of a distribution.
pub const MASS_TOL: f64 = 1e-12;
/// Tolerance of the `eta = lambda` comparison, relative to `max(1, lambda)`.
pub const EQUALITY_TOL: f64 = 1e-6;
/// Perturbations tried by the hill-climb in [`entropic_density`].
pub const HILL_CLIMB_TRIALS: usize = 1000;

/// Compensated (Neumaier) summation.
pub(crate) fn stable_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn check_distribution(probs: &[f64]) -> Result<()> {
    if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidDistribution(format!("negative or non-finite mass {p}")));
    }
    let total = stable_sum(probs.iter().copied());
    if (total - 1.0).abs() > MASS_TOL {
        return Err(Error::InvalidDistribution(format!("total mass {total}")));
    }
    Ok(())
}

fn entropy_bits(probs: &[f64]) -> f64 {
    -stable_sum(probs.iter().filter(|&&p| p > 0.0).map(|&p| p * p.log2()))
}

/// `-sum p log2 p`, with `0 log2 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    check_distribution(probs)?;
    Ok(entropy_bits(probs).max(0.0))
}

/// A distribution on `Inj(Q, H)` invariant under precomposition with `Aut(Q)`.
#[derive(Debug, Clone)]
pub struct RandomEmbedding {
    list: EmbeddingList,
    probs: Vec<f64>,
}

impl RandomEmbedding {
    /// `probs[k]` is the probability of `list.get(k)`.
    pub fn new(list: EmbeddingList, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != list.len() {
            return Err(Error::DimensionMismatch {
                got: probs.len(),
                expected: list.len(),
            });
        }
        check_distribution(&probs)?;
        let scale = probs.iter().copied().fold(0.0, f64::max);
        for (k, phi) in list.iter().enumerate() {
            for sigma in list.pattern().automorphisms() {
                let image = EmbeddingList::compose(phi, sigma);
                let j = list.index_of(&image).expect("Inj(Q,H) is closed under Aut(Q)");
                if (probs[k] - probs[j]).abs() > MASS_TOL * scale.max(1.0) {
                    return Err(Error::InvalidDistribution(format!(
                        "not Aut(Q)-symmetric at {phi:?} vs {image:?}"
                    )));
                }
            }
        }
        Ok(Self { list, probs })
    }

    /// Builds from explicit `(tuple, probability)` pairs; tuples outside
    /// `Inj(Q, H)` are rejected.
    pub fn from_pairs<I>(pattern: &Pattern, host: &Hypergraph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let list = enumerate_injective(pattern, host)?;
        let mut probs = vec![0.0; list.len()];
        for (tuple, p) in pairs {
            let k = list.index_of(&tuple).ok_or_else(|| {
                Error::InvalidDistribution(format!("{tuple:?} is not an embedding"))
            })?;
            probs[k] += p;
        }
        Self::new(list, probs)
    }

    pub fn embeddings(&self) -> &EmbeddingList {
        &self.list
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn q(&self) -> usize {
        self.list.q()
    }

    /// `P(phi)` for an embedding tuple, zero outside the support.
    pub fn prob(&self, tuple: &[usize]) -> f64 {
        self.list.index_of(tuple).map_or(0.0, |k| self.probs[k])
    }

    /// `q_phi = |Aut(Q)| p_phi`, the probability of the copy of `Q` that `phi` induces.
    pub fn copy_probability(&self, k: usize) -> f64 {
        self.list.pattern().aut_count() as f64 * self.probs[k]
    }

    /// `H[(X_1, ..., X_q)]`.
    pub fn joint_entropy(&self) -> f64 {
        entropy_bits(&self.probs).max(0.0)
    }
}

/// A probability distribution on the host's vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureDistribution {
    weights: Vec<f64>,
}

impl MixtureDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        check_distribution(&weights)?;
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.weights).max(0.0)
    }
}

fn mixture_weights(list: &EmbeddingList, probs: &[f64]) -> Vec<f64> {
    let q = list.q() as f64;
    let mut parts: Vec<Vec<f64>> = vec![Vec::new(); list.host().n()];
    for (phi, &p) in list.iter().zip(probs) {
        if p > 0.0 {
            for &v in phi {
                parts[v].push(p);
            }
        }
    }
    parts.into_iter().map(|ps| stable_sum(ps) / q).collect()
}

/// `y_v = (1/q) sum_i P(X_i = v)`.
pub fn mixture(re: &RandomEmbedding) -> MixtureDistribution {
    MixtureDistribution {
        weights: mixture_weights(&re.list, &re.probs),
    }
}

/// `p_phi = prod_{j in phi} x_j / P(x)`.
pub fn embedding_distribution_from_vector(
    pattern: &Pattern,
    host: &Hypergraph,
    x: &WeightVector,
) -> Result<RandomEmbedding> {
    if x.len() != host.n() {
        return Err(Error::DimensionMismatch {
            got: x.len(),
            expected: host.n(),
        });
    }
    let list = enumerate_injective(pattern, host)?;
    let xs = x.entries();
    let raw: Vec<f64> = list
        .iter()
        .map(|phi| {
            let mut s = phi.to_vec();
            s.sort_unstable();
            s.iter().map(|&v| xs[v]).product()
        })
        .collect();
    let beta = stable_sum(raw.iter().copied());
    if !(beta > 0.0) {
        return Err(Error::ZeroPolynomial);
    }
    let probs = raw.into_iter().map(|p| p / beta).collect();
    RandomEmbedding::new(list, probs)
}

/// `H[(X_1..X_q)] - (q/alpha) H[mu(X_1..X_q)]`.
pub fn entropy_objective(re: &RandomEmbedding, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha < 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let q = re.q() as f64;
    Ok(re.joint_entropy() - q / alpha * mixture(re).entropy())
}

/// Both sides of
/// `H[X] - (q/alpha) H[mu] = log2 beta - (q/alpha) sum_j y_j log2(x_j^alpha / y_j)`
/// for the random embedding induced by `x`, where `beta = P(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub log_beta: f64,
    /// `sum_j y_j log2(x_j^alpha / y_j)`, never positive.
    pub correction: f64,
}

pub fn entropy_difference_identity_check(
    pattern: &Pattern,
    host: &Hypergraph,
    x: &WeightVector,
) -> Result<EntropyIdentity> {
    let re = embedding_distribution_from_vector(pattern, host, x)?;
    let alpha = x.alpha();
    let q = pattern.q() as f64;
    let lhs = entropy_objective(&re, alpha)?;
    let y = mixture(&re);
    let xs = x.entries();
    let beta = stable_sum(
        re.list
            .iter()
            .map(|phi| phi.iter().map(|&v| xs[v]).product::<f64>()),
    );
    let correction = stable_sum(
        y.weights()
            .iter()
            .zip(xs)
            .filter(|(yj, _)| **yj > 0.0)
            .map(|(&yj, &xj)| yj * (alpha * xj.log2() - yj.log2())),
    );
    let log_beta = beta.log2();
    Ok(EntropyIdentity {
        lhs,
        rhs: log_beta - q / alpha * correction,
        log_beta,
        correction,
    })
}

/// Outcome of [`entropic_density`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropicDensity {
    pub eta: f64,
    pub lambda: f64,
    pub objective: f64,
    pub solver_converged: bool,
    pub certified_global: bool,
    /// `|eta - lambda| <= EQUALITY_TOL * max(1, lambda)`.
    pub equality_holds: bool,
    pub hill_climb_trials: usize,
    /// Largest `2^objective` seen among perturbed distributions.
    pub best_perturbed_eta: f64,
    /// No perturbation beat `lambda` by more than the tolerance.
    pub no_improvement: bool,
}

impl EntropicDensity {
    pub fn passed(&self) -> bool {
        self.equality_holds && self.no_improvement
    }
}

/// Aut(Q)-orbits of embeddings, used to keep perturbations symmetric.
struct Orbits {
    /// Member indices of each orbit.
    members: Vec<Vec<usize>>,
}

impl Orbits {
    fn new(list: &EmbeddingList) -> Self {
        let mut seen = vec![false; list.len()];
        let mut members = Vec::new();
        for k in 0..list.len() {
            if seen[k] {
                continue;
            }
            let phi = list.get(k);
            let mut orbit: Vec<usize> = list
                .pattern()
                .automorphisms()
                .iter()
                .map(|s| list.index_of(&EmbeddingList::compose(phi, s)).expect("closed under Aut"))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            members.push(orbit);
        }
        Self { members }
    }

    fn spread(&self, weights: &[f64], len: usize) -> Vec<f64> {
        let total = stable_sum(
            self.members
                .iter()
                .zip(weights)
                .map(|(m, w)| m.len() as f64 * w),
        );
        let mut probs = vec![0.0; len];
        for (m, &w) in self.members.iter().zip(weights) {
            for &k in m {
                probs[k] = w / total;
            }
        }
        probs
    }
}

fn objective_of(list: &EmbeddingList, probs: &[f64], alpha: f64) -> f64 {
    let q = list.q() as f64;
    entropy_bits(probs) - q / alpha * entropy_bits(&mixture_weights(list, probs))
}

/// `eta_{alpha,Q}(H)` at the distribution induced by the solver's optimum,
/// compared with `lambda`, plus a seeded hill-climb over Aut-symmetric
/// perturbations looking for anything larger.
pub fn entropic_density(
    pattern: &Pattern,
    host: &Hypergraph,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<EntropicDensity> {
    let cfg = SolverConfig { alpha, ..cfg.clone() };
    let solved = solve_certified(pattern, host, &cfg)?;
    if solved.lambda <= 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    if !solved.converged {
        return Err(Error::NotConverged(format!(
            "kkt residual {:.3e}",
            solved.kkt_residual
        )));
    }
    let re = embedding_distribution_from_vector(pattern, host, &solved.x_opt)?;
    let objective = entropy_objective(&re, alpha)?;
    let eta = objective.exp2();
    let lambda = solved.lambda;
    let slack = EQUALITY_TOL * lambda.max(1.0);

    let list = re.embeddings();
    let orbits = Orbits::new(list);
    let mut weights: Vec<f64> = orbits.members.iter().map(|m| re.probs[m[0]]).collect();
    let mut best = objective;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5EED_E7A0);
    let mut step = 0.2;
    let mut misses = 0;
    for _ in 0..HILL_CLIMB_TRIALS {
        let floor = step * step / weights.len() as f64;
        let trial: Vec<f64> = weights
            .iter()
            .map(|&w| w * (step * rng.gen_range(-1.0..1.0f64)).exp() + floor * rng.gen::<f64>())
            .collect();
        let probs = orbits.spread(&trial, list.len());
        let value = objective_of(list, &probs, alpha);
        if value > best {
            best = value;
            weights = trial;
            misses = 0;
        } else {
            misses += 1;
            if misses >= 40 {
                step = (step * 0.5).max(1e-4);
                misses = 0;
            }
        }
    }
    let best_perturbed_eta = best.exp2();
    Ok(EntropicDensity {
        eta,
        lambda,
        objective,
        solver_converged: solved.converged,
        certified_global: solved.certified_global,
        equality_holds: (eta - lambda).abs() <= slack,
        hill_climb_trials: HILL_CLIMB_TRIALS,
        best_perturbed_eta,
        no_improvement: best_perturbed_eta <= lambda + slack,
    })
}
