//! Nelder-Mead minimization with dimension-adaptive coefficients and
//! restarts of the simplex around the incumbent.

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Cap on simplex iterations summed over all cycles.
    pub max_iterations: usize,
    /// A cycle ends when the spread of simplex values falls below this.
    pub cycle_ftol: f64,
    /// The run stops once a whole cycle improves the best value by less.
    pub improvement_tol: f64,
    /// Edge length of the initial simplex of each cycle.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iterations: 20_000,
            cycle_ftol: 1e-13,
            improvement_tol: 1e-10,
            initial_step: 0.25,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &SimplexOptions,
) -> SimplexResult {
    let n = x0.len();
    let nf = n as f64;
    let (alpha, beta, gamma, delta) = if n >= 2 {
        (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut best_x = x0.to_vec();
    let mut best = eval(&best_x, &mut evaluations);
    let mut iterations = 0usize;
    let mut converged = false;

    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut vals: Vec<f64> = Vec::with_capacity(n + 1);
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];

    while iterations < opts.max_iterations {
        let cycle_start = best;

        pts.clear();
        vals.clear();
        pts.push(best_x.clone());
        vals.push(best);
        for i in 0..n {
            let mut p = best_x.clone();
            p[i] += opts.initial_step;
            vals.push(eval(&p, &mut evaluations));
            pts.push(p);
        }

        while iterations < opts.max_iterations {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
            let lo = order[0];
            let hi = order[n];
            let second = order[n - 1];
            if (vals[hi] - vals[lo]).abs() <= opts.cycle_ftol {
                break;
            }
            iterations += 1;

            centroid.iter_mut().for_each(|c| *c = 0.0);
            for (i, p) in pts.iter().enumerate() {
                if i != hi {
                    for (c, v) in centroid.iter_mut().zip(p) {
                        *c += v / nf;
                    }
                }
            }
            let along = |t: f64, out: &mut Vec<f64>, worst: &[f64]| {
                for ((o, c), w) in out.iter_mut().zip(&centroid).zip(worst) {
                    *o = c + t * (c - w);
                }
            };

            along(alpha, &mut trial, &pts[hi]);
            let fr = eval(&trial, &mut evaluations);
            if fr < vals[lo] {
                along(alpha * beta, &mut trial2, &pts[hi]);
                let fe = eval(&trial2, &mut evaluations);
                if fe < fr {
                    pts[hi].copy_from_slice(&trial2);
                    vals[hi] = fe;
                } else {
                    pts[hi].copy_from_slice(&trial);
                    vals[hi] = fr;
                }
                continue;
            }
            if fr < vals[second] {
                pts[hi].copy_from_slice(&trial);
                vals[hi] = fr;
                continue;
            }
            let (t, bound) = if fr < vals[hi] {
                (alpha * gamma, fr)
            } else {
                (-gamma, vals[hi])
            };
            along(t, &mut trial2, &pts[hi]);
            let fc = eval(&trial2, &mut evaluations);
            if fc <= bound {
                pts[hi].copy_from_slice(&trial2);
                vals[hi] = fc;
                continue;
            }
            let anchor = pts[lo].clone();
            for i in 0..=n {
                if i != lo {
                    for (p, a) in pts[i].iter_mut().zip(&anchor) {
                        *p = a + delta * (*p - a);
                    }
                    vals[i] = eval(&pts[i], &mut evaluations);
                }
            }
        }

        let (i_min, &v_min) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("simplex has at least one vertex");
        if v_min < best {
            best = v_min;
            best_x.copy_from_slice(&pts[i_min]);
        }
        if cycle_start - best < opts.improvement_tol {
            converged = true;
            break;
        }
    }

    SimplexResult {
        x: best_x,
        value: best,
        iterations,
        evaluations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = nelder_mead(rosen, &[-1.2, 1.0], &SimplexOptions::default());
        assert!(r.converged);
        assert!(
            (r.x[0] - 1.0).abs() < 1e-5 && (r.x[1] - 1.0).abs() < 1e-5,
            "{:?}",
            r.x
        );
    }

    #[test]
    fn minimizes_shifted_quadratic_in_many_dims() {
        let target: Vec<f64> = (0..12).map(|i| i as f64 * 0.1 - 0.5).collect();
        let f = |x: &[f64]| {
            x.iter()
                .zip(&target)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
        };
        let r = nelder_mead(f, &[0.0; 12], &SimplexOptions::default());
        assert!(r.value < 1e-10, "{}", r.value);
    }

    #[test]
    fn respects_iteration_cap() {
        let opts = SimplexOptions {
            max_iterations: 5,
            ..Default::default()
        };
        let r = nelder_mead(|x: &[f64]| x[0] * x[0] + x[1] * x[1], &[3.0, 4.0], &opts);
        assert!(r.iterations <= 5);
        assert!(!r.converged);
    }
}
