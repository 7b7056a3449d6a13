use nalgebra::DMatrix;

use crate::polynomial::LagrangianPolynomial;

/// `coeff * prod_c z_c^{k_c}`.
#[derive(Debug, Clone)]
pub(crate) struct Term {
    pub factors: Vec<(usize, i32)>,
    pub coeff: f64,
}

/// `P` written in class variables: vertex `v` of class `c` carries weight `z_c`,
/// and the sphere constraint reads `sum_c w_c z_c^alpha = 1` with `w_c = |class c|`.
#[derive(Debug, Clone)]
pub(crate) struct Objective {
    pub weights: Vec<f64>,
    pub terms: Vec<Term>,
    pub q: usize,
    pub class_of: Vec<usize>,
}

impl Objective {
    pub fn new(poly: &LagrangianPolynomial, classes: &[Vec<usize>]) -> Self {
        let mut class_of = vec![0; poly.n()];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                class_of[v] = c;
            }
        }
        let mut merged: std::collections::BTreeMap<Vec<(usize, i32)>, f64> = Default::default();
        for t in poly.terms() {
            let mut counts: std::collections::BTreeMap<usize, i32> = Default::default();
            for &v in &t.vertices {
                *counts.entry(class_of[v]).or_insert(0) += 1;
            }
            *merged.entry(counts.into_iter().collect()).or_insert(0.0) += t.coeff as f64;
        }
        Self {
            weights: classes.iter().map(|c| c.len() as f64).collect(),
            terms: merged
                .into_iter()
                .map(|(factors, coeff)| Term { factors, coeff })
                .collect(),
            q: poly.q(),
            class_of,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Classes that occur in at least one term.
    pub fn active(&self) -> Vec<bool> {
        let mut a = vec![false; self.dim()];
        for t in &self.terms {
            for &(c, _) in &t.factors {
                a[c] = true;
            }
        }
        a
    }

    pub fn value(&self, z: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff * t.factors.iter().map(|&(c, k)| z[c].powi(k)).product::<f64>())
            .sum()
    }

    pub fn gradient(&self, z: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim()];
        for t in &self.terms {
            for (a, &(c, k)) in t.factors.iter().enumerate() {
                let rest: f64 = t
                    .factors
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| b != a)
                    .map(|(_, &(d, l))| z[d].powi(l))
                    .product();
                g[c] += t.coeff * f64::from(k) * z[c].powi(k - 1) * rest;
            }
        }
        g
    }

    pub fn hessian(&self, z: &[f64]) -> DMatrix<f64> {
        let k = self.dim();
        let mut h = DMatrix::zeros(k, k);
        for t in &self.terms {
            let f = &t.factors;
            for a in 0..f.len() {
                let (ca, ka) = f[a];
                for b in 0..f.len() {
                    let (cb, kb) = f[b];
                    let rest: f64 = f
                        .iter()
                        .enumerate()
                        .filter(|&(e, _)| e != a && e != b)
                        .map(|(_, &(d, l))| z[d].powi(l))
                        .product();
                    let part = if a == b {
                        if ka < 2 {
                            continue;
                        }
                        f64::from(ka * (ka - 1)) * z[ca].powi(ka - 2)
                    } else {
                        f64::from(ka) * z[ca].powi(ka - 1) * f64::from(kb) * z[cb].powi(kb - 1)
                    };
                    h[(ca, cb)] += t.coeff * part * rest;
                }
            }
        }
        h
    }

    pub fn norm_power(&self, z: &[f64], alpha: f64) -> f64 {
        z.iter()
            .zip(&self.weights)
            .map(|(x, w)| w * x.powf(alpha))
            .sum()
    }

    pub fn normalize(&self, z: &mut [f64], alpha: f64) {
        let s = self.norm_power(z, alpha);
        if s > 0.0 {
            let scale = s.powf(1.0 / alpha);
            for x in z.iter_mut() {
                *x /= scale;
            }
        }
    }

    /// `max_c |dP/dx_i - q P x_i^{alpha-1}|` for any vertex `i` in class `c`.
    pub fn residual(&self, z: &[f64], alpha: f64) -> f64 {
        let p = self.value(z);
        let g = self.gradient(z);
        self.residual_with(z, alpha, p, &g)
    }

    pub fn residual_with(&self, z: &[f64], alpha: f64, p: f64, g: &[f64]) -> f64 {
        let q = self.q as f64;
        (0..self.dim())
            .map(|c| (g[c] / self.weights[c] - q * p * z[c].powf(alpha - 1.0)).abs())
            .fold(0.0, f64::max)
    }

    /// Vertex weights `x_v = z_{class(v)}`.
    pub fn expand(&self, z: &[f64]) -> Vec<f64> {
        self.class_of.iter().map(|&c| z[c]).collect()
    }
}
