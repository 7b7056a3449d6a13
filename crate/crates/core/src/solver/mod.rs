//! Computing `lambda_{alpha,Q}(H)`.
//!
//! The main route ([`solve_lambda`], [`reduced_solve`]) iterates the rearranged
//! stationarity condition `x_i <- (dP/dx_i)^{1/(alpha-1)}` followed by
//! renormalization, from a uniform start plus seeded random restarts. Every
//! result carries its KKT residual. [`brute_force_lambda`] is an independent
//! grid oracle for instances with few symmetry classes, and the only route for
//! `alpha = 1`.

mod fixed_point;
mod objective;
mod oracle;
mod symmetry;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::Pattern;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::polynomial::{LagrangianPolynomial, WeightVector};

use fixed_point::{Engine, RunOutcome};
use objective::Objective;
use oracle::GridSearch;

pub use oracle::MAX_ORACLE_VARS;
pub use symmetry::{
    equivalence_classes, is_transposition_automorphism, symmetrization_gain, symmetrize,
};

/// Certificate threshold on the KKT residual.
pub const KKT_TOL: f64 = 1e-8;
/// Agreement required between the solver and the grid oracle.
pub const ORACLE_AGREEMENT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FixedPoint,
    ProjectedGradient,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    pub alpha: f64,
    /// Target KKT residual for the iteration.
    pub tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Initial damping in `[0, 1)`; raised automatically on oscillation.
    pub damping: f64,
    /// Subdivisions per unit of the oracle's simplex grid.
    pub grid_resolution: usize,
    /// Local refinement passes of the oracle.
    pub refine_rounds: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            tol: 1e-10,
            max_iter: 10_000,
            restarts: 16,
            seed: 0,
            damping: 0.0,
            grid_resolution: 60,
            refine_rounds: 3,
        }
    }
}

impl SolverConfig {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            ..Self::default()
        }
    }

    fn validate(&self, need_fixed_point: bool) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha < 1.0 || (need_fixed_point && self.alpha <= 1.0)
        {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::InvalidConfig(format!(
                "damping must lie in [0, 1), got {}",
                self.damping
            )));
        }
        if self.restarts == 0 || self.max_iter == 0 || self.grid_resolution == 0 {
            return Err(Error::InvalidConfig(
                "restarts, max_iter and grid_resolution must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a spectral-radius computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub lambda: f64,
    pub x_opt: WeightVector,
    pub kkt_residual: f64,
    pub iterations: usize,
    pub method: Method,
    pub converged: bool,
    pub restarts_used: usize,
    /// Set only when the grid oracle ran and agreed.
    pub certified_global: bool,
}

impl SpectralResult {
    /// Converged with a KKT residual at most [`KKT_TOL`].
    pub fn is_certified(&self) -> bool {
        self.converged && self.kkt_residual <= KKT_TOL
    }
}

fn check_inputs(pattern: &Pattern, host: &Hypergraph) -> Result<()> {
    if pattern.r() != host.r() {
        return Err(Error::UniformityMismatch {
            pattern: pattern.r(),
            host: host.r(),
        });
    }
    if host.n() == 0 {
        return Err(Error::InvalidConfig("host has no vertices".into()));
    }
    Ok(())
}

fn trivial_result(n: usize, alpha: f64, method: Method) -> Result<SpectralResult> {
    Ok(SpectralResult {
        lambda: 0.0,
        x_opt: WeightVector::uniform(n, alpha)?,
        kkt_residual: 0.0,
        iterations: 0,
        method,
        converged: true,
        restarts_used: 0,
        certified_global: method == Method::BruteForce,
    })
}

/// `max_i |dP/dx_i - q P(x) x_i^{alpha-1}|`.
///
/// For `alpha > 1` a coordinate with `x_i = 0` can only be optimal when
/// `dP/dx_i = 0`, so the same expression covers the one-sided condition.
pub fn kkt_residual(pattern: &Pattern, host: &Hypergraph, x: &WeightVector) -> Result<f64> {
    let poly = LagrangianPolynomial::new(pattern, host)?;
    kkt_residual_of(&poly, x)
}

pub fn kkt_residual_of(poly: &LagrangianPolynomial, x: &WeightVector) -> Result<f64> {
    let xs = x.entries();
    let p = poly.eval(xs)?;
    let g = poly.gradient(xs)?;
    let q = poly.q() as f64;
    Ok(g.iter()
        .zip(xs)
        .map(|(gi, xi)| (gi - q * p * xi.powf(x.alpha() - 1.0)).abs())
        .fold(0.0, f64::max))
}

fn restart_start(dim: usize, seed: u64, restart: usize) -> Vec<f64> {
    if restart == 0 {
        return vec![1.0; dim];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed.wrapping_add((restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
    );
    (0..dim).map(|_| rng.gen_range(0.05..1.0)).collect()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn solve_objective(
    poly: &LagrangianPolynomial,
    obj: &Objective,
    cfg: &SolverConfig,
) -> Result<SpectralResult> {
    let engine = Engine {
        obj,
        alpha: cfg.alpha,
        tol: cfg.tol,
        max_iter: cfg.max_iter,
        damping: cfg.damping,
    };
    let runs: Vec<RunOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| engine.run(restart_start(obj.dim(), cfg.seed, k)))
        .collect();
    let candidates: Vec<(RunOutcome, Vec<f64>, bool)> = runs
        .into_iter()
        .map(|r| {
            let x = obj.expand(&r.z);
            let ok = r.residual <= KKT_TOL;
            (r, x, ok)
        })
        .collect();
    let any_converged = candidates.iter().any(|c| c.2);
    let best = candidates
        .iter()
        .filter(|c| c.2 || !any_converged)
        .reduce(|a, b| {
            let scale = a.0.value.abs().max(b.0.value.abs()).max(1.0);
            if (a.0.value - b.0.value).abs() <= 1e-12 * scale {
                if lex_cmp(&b.1, &a.1).is_lt() {
                    b
                } else {
                    a
                }
            } else if b.0.value > a.0.value {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");
    let x_opt = WeightVector::normalized(cfg.alpha, best.1.clone())?;
    let lambda = poly.eval(x_opt.entries())?;
    let kkt = kkt_residual_of(poly, &x_opt)?;
    Ok(SpectralResult {
        lambda,
        x_opt,
        kkt_residual: kkt,
        iterations: best.0.iterations,
        method: best.0.method,
        converged: kkt <= KKT_TOL,
        restarts_used: cfg.restarts,
        certified_global: false,
    })
}

fn singleton_classes(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|v| vec![v]).collect()
}

/// `lambda_{alpha,Q}(H)` over all `n` coordinates.
pub fn solve_lambda(pattern: &Pattern, host: &Hypergraph, cfg: &SolverConfig) -> Result<SpectralResult> {
    check_inputs(pattern, host)?;
    cfg.validate(true)?;
    let poly = LagrangianPolynomial::new(pattern, host)?;
    solve_polynomial(&poly, &singleton_classes(host.n()), cfg)
}

/// Solves over class-constant vectors for the given vertex classes.
pub fn solve_polynomial(
    poly: &LagrangianPolynomial,
    classes: &[Vec<usize>],
    cfg: &SolverConfig,
) -> Result<SpectralResult> {
    cfg.validate(true)?;
    if poly.is_zero() {
        return trivial_result(poly.n(), cfg.alpha, Method::FixedPoint);
    }
    let obj = Objective::new(poly, classes);
    solve_objective(poly, &obj, cfg)
}

/// Same optimum as [`solve_lambda`], with one variable per equivalence class.
pub fn reduced_solve(pattern: &Pattern, host: &Hypergraph, cfg: &SolverConfig) -> Result<SpectralResult> {
    check_inputs(pattern, host)?;
    cfg.validate(true)?;
    let classes = equivalence_classes(host);
    if classes.len() == host.n() {
        return solve_lambda(pattern, host, cfg);
    }
    let poly = LagrangianPolynomial::new(pattern, host)?;
    solve_polynomial(&poly, &classes, cfg)
}

/// Number of class variables the oracle would search over.
pub fn oracle_variables(pattern: &Pattern, host: &Hypergraph) -> Result<usize> {
    check_inputs(pattern, host)?;
    let poly = LagrangianPolynomial::new(pattern, host)?;
    let obj = Objective::new(&poly, &equivalence_classes(host));
    Ok(obj.active().into_iter().filter(|&a| a).count())
}

/// Grid oracle: exhaustive search on the simplex of class weights, then
/// `cfg.refine_rounds` local refinements around the best cell.
pub fn brute_force_lambda(
    pattern: &Pattern,
    host: &Hypergraph,
    cfg: &SolverConfig,
) -> Result<SpectralResult> {
    check_inputs(pattern, host)?;
    cfg.validate(false)?;
    let poly = LagrangianPolynomial::new(pattern, host)?;
    let obj = Objective::new(&poly, &equivalence_classes(host));
    let free: Vec<usize> = obj
        .active()
        .into_iter()
        .enumerate()
        .filter_map(|(c, a)| a.then_some(c))
        .collect();
    if free.len() > MAX_ORACLE_VARS {
        return Err(Error::TooManyVariables {
            got: free.len(),
            max: MAX_ORACLE_VARS,
        });
    }
    if poly.is_zero() {
        return trivial_result(host.n(), cfg.alpha, Method::BruteForce);
    }
    let grid = GridSearch {
        obj: &obj,
        alpha: cfg.alpha,
        free,
    };
    let (z, _) = grid.run(cfg.grid_resolution, cfg.refine_rounds);
    let x_opt = WeightVector::normalized(cfg.alpha, obj.expand(&z))?;
    let lambda = poly.eval(x_opt.entries())?;
    Ok(SpectralResult {
        lambda,
        kkt_residual: kkt_residual_of(&poly, &x_opt)?,
        x_opt,
        iterations: 0,
        method: Method::BruteForce,
        converged: true,
        restarts_used: 0,
        certified_global: true,
    })
}

/// [`reduced_solve`], cross-checked against the oracle when it is affordable.
/// `certified_global` is set when both agree to [`ORACLE_AGREEMENT`].
pub fn solve_certified(
    pattern: &Pattern,
    host: &Hypergraph,
    cfg: &SolverConfig,
) -> Result<SpectralResult> {
    let mut result = reduced_solve(pattern, host, cfg)?;
    if oracle_variables(pattern, host)? <= MAX_ORACLE_VARS {
        let oracle = brute_force_lambda(pattern, host, cfg)?;
        result.certified_global = (result.lambda - oracle.lambda).abs()
            <= ORACLE_AGREEMENT * result.lambda.abs().max(1.0)
            && result.lambda >= oracle.lambda - ORACLE_AGREEMENT * result.lambda.abs().max(1.0);
    }
    Ok(result)
}

/// Both sides of the exact vertex-deletion identity
/// `P_{Q,H-i}(x|_{V-i}) = (1 - q x_i^alpha) lambda` at a certified optimum,
/// and of its consequence
/// `lambda(H-i) >= (1 - x_i^alpha)^{-q/alpha} (1 - q x_i^alpha) lambda`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeletionCheck {
    pub vertex: usize,
    pub weight_power: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub lambda_deleted: f64,
    pub chain_bound: f64,
}

impl DeletionCheck {
    pub fn identity_holds(&self, rel_tol: f64) -> bool {
        (self.lhs - self.rhs).abs() <= rel_tol * self.rhs.abs().max(1.0)
    }

    pub fn chain_holds(&self, rel_tol: f64) -> bool {
        self.lambda_deleted >= self.chain_bound - rel_tol * self.chain_bound.abs().max(1.0)
    }
}

pub fn vertex_deletion_identity(
    pattern: &Pattern,
    host: &Hypergraph,
    result: &SpectralResult,
    vertex: usize,
    cfg: &SolverConfig,
) -> Result<DeletionCheck> {
    if !result.is_certified() {
        return Err(Error::NotCertified(result.kkt_residual));
    }
    if vertex >= host.n() {
        return Err(Error::VertexOutOfRange { vertex, n: host.n() });
    }
    let poly = LagrangianPolynomial::new(pattern, host)?;
    let x = result.x_opt.entries();
    let alpha = result.x_opt.alpha();
    let q = pattern.q() as f64;
    let wp = x[vertex].powf(alpha);
    let lhs = poly.without_vertex(vertex).eval(x)?;
    let rhs = (1.0 - q * wp) * result.lambda;
    let (deleted, _) = host.remove_vertex(vertex)?;
    let lambda_deleted = if deleted.n() == 0 {
        0.0
    } else {
        reduced_solve(pattern, &deleted, cfg)?.lambda
    };
    let chain_bound = if wp < 1.0 {
        (1.0 - wp).powf(-q / alpha) * rhs
    } else {
        0.0
    };
    Ok(DeletionCheck {
        vertex,
        weight_power: wp,
        lhs,
        rhs,
        lambda_deleted,
        chain_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_graph, cycle_graph, path_graph, turan_hypergraph};

    #[test]
    fn single_edge_values() {
        let cfg = SolverConfig::new(2.0);
        let r = solve_lambda(&Pattern::k2(), &complete_graph(2), &cfg).unwrap();
        assert!((r.lambda - 1.0).abs() < 1e-12);
        assert!(r.is_certified());

        for q in 2..=4usize {
            for alpha in [1.5, 2.0, 3.0] {
                let pat = Pattern::single_edge(q);
                let r = solve_lambda(&pat, pat.graph(), &SolverConfig::new(alpha)).unwrap();
                let fact: f64 = (1..=q).map(|k| k as f64).product();
                let expected = fact * (q as f64).powf(-(q as f64) / alpha);
                assert!((r.lambda - expected).abs() < 1e-10, "q={q} alpha={alpha}");
            }
        }
    }

    #[test]
    fn complete_graphs() {
        let cfg = SolverConfig::new(2.0);
        for n in 2..=8 {
            let r = solve_lambda(&Pattern::k2(), &complete_graph(n), &cfg).unwrap();
            assert!((r.lambda - (n - 1) as f64).abs() < 1e-10, "n={n}");
            let red = reduced_solve(&Pattern::k2(), &complete_graph(n), &cfg).unwrap();
            assert!((red.lambda - (n - 1) as f64).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn empty_host_gives_zero() {
        let h = Hypergraph::empty(4, 2).unwrap();
        let r = solve_lambda(&Pattern::k2(), &h, &SolverConfig::new(2.0)).unwrap();
        assert_eq!(r.lambda, 0.0);
        assert!(r.converged);
        let r = solve_lambda(&Pattern::k3(), &cycle_graph(5).unwrap(), &SolverConfig::new(2.0)).unwrap();
        assert_eq!(r.lambda, 0.0);
    }

    #[test]
    fn alpha_one_only_through_oracle() {
        let h = complete_graph(3);
        assert!(matches!(
            solve_lambda(&Pattern::k2(), &h, &SolverConfig::new(1.0)),
            Err(Error::InvalidAlpha(_))
        ));
        // Motzkin-Straus, counted over ordered pairs: 1 - 1/omega.
        let r = brute_force_lambda(&Pattern::k2(), &h, &SolverConfig::new(1.0)).unwrap();
        assert!((r.lambda - 2.0 / 3.0).abs() < 1e-9);
        let r = brute_force_lambda(&Pattern::k2(), &path_graph(4), &SolverConfig::new(1.0)).unwrap();
        assert!((r.lambda - 0.5).abs() < 1e-6);
    }

    #[test]
    fn oracle_examples() {
        let cfg = SolverConfig::new(2.0);
        let r = brute_force_lambda(&Pattern::k2(), &complete_graph(3), &cfg).unwrap();
        assert!((r.lambda - 2.0).abs() < 1e-4);
        let r = brute_force_lambda(&Pattern::k2(), &path_graph(3), &cfg).unwrap();
        assert!((r.lambda - 2f64.sqrt()).abs() < 1e-4);
        let c5 = Pattern::c5();
        let a = brute_force_lambda(&c5, c5.graph(), &cfg).unwrap();
        let b = solve_lambda(&c5, c5.graph(), &cfg).unwrap();
        assert!((a.lambda - b.lambda).abs() < 1e-4);
        assert!(brute_force_lambda(&Pattern::k2(), &path_graph(9), &cfg).is_err());
    }

    #[test]
    fn reduced_matches_full_on_bipartite_turan() {
        let cfg = SolverConfig::new(2.0);
        for n in 2..=9 {
            let h = turan_hypergraph(2, 2, n).unwrap();
            let full = solve_lambda(&Pattern::k2(), &h, &cfg).unwrap();
            let red = reduced_solve(&Pattern::k2(), &h, &cfg).unwrap();
            assert!((full.lambda - red.lambda).abs() < 1e-8, "n={n}");
            let (a, b) = ((n / 2) as f64, n.div_ceil(2) as f64);
            assert!((full.lambda - (a * b).sqrt()).abs() < 1e-8);
        }
    }

    #[test]
    fn kkt_residual_cases() {
        let c5 = cycle_graph(5).unwrap();
        let x = WeightVector::uniform(5, 2.0).unwrap();
        assert!(kkt_residual(&Pattern::k2(), &c5, &x).unwrap() <= 1e-12);
        let x = WeightVector::normalized(2.0, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert!(kkt_residual(&Pattern::k2(), &c5, &x).unwrap() > 1e-3);
    }

    #[test]
    fn deletion_identity_on_pentagon() {
        let c5 = cycle_graph(5).unwrap();
        let cfg = SolverConfig::new(2.0);
        let r = solve_lambda(&Pattern::k2(), &c5, &cfg).unwrap();
        for i in 0..5 {
            let d = vertex_deletion_identity(&Pattern::k2(), &c5, &r, i, &cfg).unwrap();
            assert!(d.identity_holds(1e-8));
            assert!(d.chain_holds(1e-8));
            assert!((d.lhs - (1.0 - 2.0 / 5.0) * r.lambda).abs() < 1e-10);
        }
    }

    #[test]
    fn deletion_of_isolated_vertex() {
        let h = Hypergraph::new(4, 2, [[0, 1], [1, 2], [0, 2]]).unwrap();
        let cfg = SolverConfig::new(2.0);
        let r = solve_lambda(&Pattern::k2(), &h, &cfg).unwrap();
        let d = vertex_deletion_identity(&Pattern::k2(), &h, &r, 3, &cfg).unwrap();
        assert_eq!(d.weight_power, 0.0);
        assert_eq!(d.lhs, r.lambda);
    }

    #[test]
    fn uncertified_results_are_rejected() {
        let c5 = cycle_graph(5).unwrap();
        let cfg = SolverConfig::new(2.0);
        let mut r = solve_lambda(&Pattern::k2(), &c5, &cfg).unwrap();
        r.converged = false;
        assert!(matches!(
            vertex_deletion_identity(&Pattern::k2(), &c5, &r, 0, &cfg),
            Err(Error::NotCertified(_))
        ));
    }
}
