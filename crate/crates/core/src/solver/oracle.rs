//! Grid search over the simplex `y_c = w_c z_c^alpha`, `sum y_c = 1`.

use super::objective::Objective;

/// Largest number of free class variables the grid accepts.
pub const MAX_ORACLE_VARS: usize = 6;
/// Half-width of the refinement window, in new grid steps.
const REFINE_HALF: i64 = 8;

pub(crate) struct GridSearch<'a> {
    pub obj: &'a Objective,
    pub alpha: f64,
    /// Indices of the classes that carry weight.
    pub free: Vec<usize>,
}

impl GridSearch<'_> {
    fn z_from_y(&self, y: &[f64]) -> Vec<f64> {
        let mut z = vec![0.0; self.obj.dim()];
        for (k, &c) in self.free.iter().enumerate() {
            z[c] = (y[k].max(0.0) / self.obj.weights[c]).powf(1.0 / self.alpha);
        }
        z
    }

    fn value(&self, y: &[f64]) -> f64 {
        self.obj.value(&self.z_from_y(y))
    }

    /// Returns the best `z` found and its value.
    pub fn run(&self, resolution: usize, rounds: usize) -> (Vec<f64>, f64) {
        let k = self.free.len();
        let g = resolution.max(1);
        let mut best_y = vec![0.0; k];
        let mut best = f64::NEG_INFINITY;
        let mut counts = vec![0usize; k];
        compositions(g, k, 0, &mut counts, &mut |c| {
            let y: Vec<f64> = c.iter().map(|&v| v as f64 / g as f64).collect();
            let v = self.value(&y);
            if v > best {
                best = v;
                best_y = y;
            }
        });
        let mut h = 1.0 / g as f64;
        for _ in 0..rounds {
            h /= REFINE_HALF as f64;
            if k < 2 {
                break;
            }
            // The largest coordinate absorbs the simplex constraint.
            let dep = (0..k)
                .max_by(|&a, &b| best_y[a].total_cmp(&best_y[b]))
                .unwrap_or(0);
            let free: Vec<usize> = (0..k).filter(|&i| i != dep).collect();
            let centre = best_y.clone();
            let mut offs = vec![-REFINE_HALF; free.len()];
            loop {
                let mut y = centre.clone();
                let mut ok = true;
                for (t, &i) in free.iter().enumerate() {
                    y[i] = centre[i] + offs[t] as f64 * h;
                    if y[i] < -1e-15 {
                        ok = false;
                    }
                    y[i] = y[i].max(0.0);
                }
                let rest: f64 = free.iter().map(|&i| y[i]).sum();
                y[dep] = 1.0 - rest;
                if ok && y[dep] >= -1e-15 {
                    y[dep] = y[dep].max(0.0);
                    let v = self.value(&y);
                    if v > best {
                        best = v;
                        best_y = y;
                    }
                }
                // odometer
                let mut t = 0;
                while t < offs.len() {
                    offs[t] += 1;
                    if offs[t] <= REFINE_HALF {
                        break;
                    }
                    offs[t] = -REFINE_HALF;
                    t += 1;
                }
                if t == offs.len() {
                    break;
                }
            }
        }
        (self.z_from_y(&best_y), best)
    }
}

/// Calls `f` on every composition of `total` into `parts` nonnegative integers.
fn compositions<F: FnMut(&[usize])>(
    total: usize,
    parts: usize,
    idx: usize,
    acc: &mut Vec<usize>,
    f: &mut F,
) {
    if parts == 0 {
        return;
    }
    if idx + 1 == parts {
        acc[idx] = total;
        f(acc);
        return;
    }
    for v in 0..=total {
        acc[idx] = v;
        compositions(total - v, parts, idx + 1, acc, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_count() {
        let mut n = 0;
        let mut acc = vec![0; 3];
        compositions(4, 3, 0, &mut acc, &mut |c| {
            assert_eq!(c.iter().sum::<usize>(), 4);
            n += 1;
        });
        assert_eq!(n, 15);
    }
}
