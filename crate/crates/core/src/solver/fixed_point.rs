//! Nonlinear power iteration on the KKT condition `dP/dx_i = q P x_i^{alpha-1}`,
//! with damping, a projected-gradient fallback and a Newton polish.

use nalgebra::{DMatrix, DVector};

use super::objective::Objective;
use super::Method;

/// Residual below which Newton polishing is attempted (relative to `max(1, P)`).
const POLISH_START: f64 = 1e-4;
/// Coordinates below this are treated as off-support by the Newton step.
const SUPPORT_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub(crate) struct RunOutcome {
    pub z: Vec<f64>,
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
    pub method: Method,
}

pub(crate) struct Engine<'a> {
    pub obj: &'a Objective,
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub damping: f64,
}

impl Engine<'_> {
    pub fn run(&self, start: Vec<f64>) -> RunOutcome {
        let mut z = start;
        self.obj.normalize(&mut z, self.alpha);
        let mut out = self.fixed_point(z);
        if out.residual > self.tol {
            let pg = self.projected_gradient(out.z.clone(), out.iterations);
            if pg.value >= out.value && pg.residual < out.residual {
                out = pg;
            }
        }
        out
    }

    fn state(&self, z: &[f64]) -> (f64, Vec<f64>, f64) {
        let p = self.obj.value(z);
        let g = self.obj.gradient(z);
        let r = self.obj.residual_with(z, self.alpha, p, &g);
        (p, g, r)
    }

    fn fixed_point(&self, mut z: Vec<f64>) -> RunOutcome {
        let a1 = self.alpha - 1.0;
        let q = self.obj.q as f64;
        let mut omega = self.damping;
        let (mut p, mut g, mut res) = self.state(&z);
        let mut it = 0;
        let mut polish_failed_at = f64::INFINITY;
        while it < self.max_iter && res > self.tol && p > 0.0 {
            it += 1;
            if res <= POLISH_START * p.max(1.0) && res < 0.5 * polish_failed_at {
                if let Some(zn) = self.newton_polish(&z) {
                    let (pn, gn, rn) = self.state(&zn);
                    if rn < res && pn >= p - 1e-12 * p.max(1.0) {
                        (z, p, g, res) = (zn, pn, gn, rn);
                        continue;
                    }
                }
                polish_failed_at = res;
            }
            let mut zn: Vec<f64> = (0..z.len())
                .map(|c| {
                    let target = (g[c] / (self.obj.weights[c] * q * p)).max(0.0);
                    let t = (1.0 - omega) * target + omega * z[c].powf(a1);
                    t.powf(1.0 / a1)
                })
                .collect();
            self.obj.normalize(&mut zn, self.alpha);
            let (pn, gn, rn) = self.state(&zn);
            let ascent = pn > p * (1.0 + 1e-15);
            let level = pn >= p * (1.0 - 1e-15);
            if ascent || (level && rn < res) {
                (z, p, g, res) = (zn, pn, gn, rn);
            } else {
                // Oscillation or descent: average with the current point.
                omega = 0.5 * (1.0 + omega);
                if omega > 1.0 - 1e-9 {
                    break;
                }
            }
        }
        RunOutcome {
            z,
            value: p,
            residual: res,
            iterations: it,
            method: Method::FixedPoint,
        }
    }

    /// Monotone ascent along the KKT residual direction with step halving.
    fn projected_gradient(&self, mut z: Vec<f64>, used: usize) -> RunOutcome {
        let q = self.obj.q as f64;
        let (mut p, mut g, mut res) = self.state(&z);
        let mut step = 1.0 / (q * p.max(1e-300));
        let mut it = 0;
        while it < self.max_iter && res > self.tol && step > 1e-300 {
            it += 1;
            let mut zn: Vec<f64> = (0..z.len())
                .map(|c| {
                    let d = g[c] / self.obj.weights[c] - q * p * z[c].powf(self.alpha - 1.0);
                    (z[c] + step * d).max(0.0)
                })
                .collect();
            self.obj.normalize(&mut zn, self.alpha);
            let (pn, gn, rn) = self.state(&zn);
            if pn > p {
                (z, p, g, res) = (zn, pn, gn, rn);
                step *= 1.5;
                if res <= POLISH_START * p.max(1.0) {
                    if let Some(zp) = self.newton_polish(&z) {
                        let (pp, gp, rp) = self.state(&zp);
                        if rp < res && pp >= p - 1e-12 * p.max(1.0) {
                            (z, p, g, res) = (zp, pp, gp, rp);
                        }
                    }
                }
            } else {
                step *= 0.5;
            }
        }
        RunOutcome {
            z,
            value: p,
            residual: res,
            iterations: used + it,
            method: Method::ProjectedGradient,
        }
    }

    /// Newton's method on `grad P = mu W z^{alpha-1}`, `sum w z^alpha = 1`,
    /// restricted to the current support.
    fn newton_polish(&self, z0: &[f64]) -> Option<Vec<f64>> {
        let a = self.alpha;
        let w = &self.obj.weights;
        let zmax = z0.iter().copied().fold(0.0, f64::max);
        let support: Vec<usize> = (0..z0.len())
            .filter(|&c| z0[c] > SUPPORT_EPS * zmax)
            .collect();
        let s = support.len();
        if s == 0 {
            return None;
        }
        let mut z = z0.to_vec();
        for c in 0..z.len() {
            if !support.contains(&c) {
                z[c] = 0.0;
            }
        }
        let mut mu = self.obj.q as f64 * self.obj.value(&z);
        let mut best = self.obj.residual(&z, a);
        let mut best_z = None;
        for _ in 0..30 {
            let g = self.obj.gradient(&z);
            let h = self.obj.hessian(&z);
            let mut jac = DMatrix::zeros(s + 1, s + 1);
            let mut rhs = DVector::zeros(s + 1);
            for (i, &c) in support.iter().enumerate() {
                rhs[i] = -(g[c] - mu * w[c] * z[c].powf(a - 1.0));
                for (j, &d) in support.iter().enumerate() {
                    jac[(i, j)] = h[(c, d)];
                }
                jac[(i, i)] -= mu * w[c] * (a - 1.0) * z[c].powf(a - 2.0);
                jac[(i, s)] = -w[c] * z[c].powf(a - 1.0);
                jac[(s, i)] = a * w[c] * z[c].powf(a - 1.0);
            }
            rhs[s] = -(self.obj.norm_power(&z, a) - 1.0);
            let delta = jac.lu().solve(&rhs)?;
            if !delta.iter().all(|d| d.is_finite()) {
                return best_z;
            }
            let mut zn = z.clone();
            for (i, &c) in support.iter().enumerate() {
                zn[c] += delta[i];
                if zn[c] <= 0.0 {
                    return best_z;
                }
            }
            mu += delta[s];
            self.obj.normalize(&mut zn, a);
            let r = self.obj.residual(&zn, a);
            z = zn;
            if r < best {
                best = r;
                best_z = Some(z.clone());
            } else if r > 10.0 * best {
                break;
            }
            if best <= 0.01 * self.tol {
                break;
            }
        }
        best_z
    }
}
