//! BFGS-family quasi-Newton descent on central-difference gradients.
//!
//! Maintains a dense inverse-Hessian approximation, takes Armijo
//! backtracking steps, clamps every iterate to the box, and skips the
//! curvature update when `y.s` is too small. Gradients are approximated
//! with a per-coordinate step `1e-6 * max(1, |x_i|)`.

use crate::problem::BudgetedEvaluator;

use super::{LocalSearcher, SearchOutcome};

const ARMIJO_C: f64 = 1e-4;
const BACKTRACK_FACTOR: f64 = 0.5;
const MAX_BACKTRACKS: usize = 20;
const CURVATURE_FLOOR: f64 = 1e-12;
const GRADIENT_STEP: f64 = 1e-6;

fn gradient_steps(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| GRADIENT_STEP * v.abs().max(1.0)).collect()
}

fn mat_vec(m: &[f64], v: &[f64], out: &mut [f64]) {
    let d = v.len();
    for i in 0..d {
        let row = &m[i * d..(i + 1) * d];
        out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn identity(d: usize) -> Vec<f64> {
    let mut m = vec![0.0; d * d];
    for i in 0..d {
        m[i * d + i] = 1.0;
    }
    m
}

/// Inverse BFGS update: H <- (I - r s y')H(I - r y s') + r s s'.
fn update_inverse(h: &mut [f64], s: &[f64], y: &[f64], rho: f64) {
    let d = s.len();
    let mut hy = vec![0.0; d];
    mat_vec(h, y, &mut hy);
    let yhy = dot(y, &hy);
    let coeff = rho * rho * yhy + rho;
    for i in 0..d {
        for j in 0..d {
            h[i * d + j] += coeff * s[i] * s[j] - rho * (s[i] * hy[j] + hy[i] * s[j]);
        }
    }
}

/// Quasi-Newton local search from `x0`.
pub fn quasi_newton_search(
    ev: &mut BudgetedEvaluator,
    x0: &[f64],
    cfg: &LocalSearcher,
) -> SearchOutcome {
    ev.set_local_call_cap(cfg.call_cap);
    ev.begin_local_call();
    let problem = ev.problem();
    let d = problem.dimension();
    let (lower, upper) = (problem.lower().to_vec(), problem.upper().to_vec());

    let mut x = x0.to_vec();
    crate::problem::clamp_in_place(&mut x, &lower, &upper);
    let mut fx = match ev.evaluate(&x) {
        Ok(v) => v,
        Err(_) => {
            return SearchOutcome {
                x,
                value: f64::INFINITY,
                evals_used: ev.end_local_call(),
                exhausted: true,
            }
        }
    };
    let mut best_x = x.clone();
    let mut best_f = fx;
    let mut exhausted = false;

    let finish = |best_x: Vec<f64>, best_f: f64, ev: &mut BudgetedEvaluator, exhausted: bool| {
        SearchOutcome {
            x: best_x,
            value: best_f,
            evals_used: ev.end_local_call(),
            exhausted,
        }
    };

    let mut grad = match ev.gradient_with_steps(&x, &gradient_steps(&x)) {
        Ok(g) => g,
        Err(_) => return finish(best_x, best_f, ev, true),
    };
    let mut h_inv = identity(d);
    let mut dir = vec![0.0; d];

    'outer: for _ in 0..cfg.call_cap {
        mat_vec(&h_inv, &grad, &mut dir);
        dir.iter_mut().for_each(|v| *v = -*v);
        let mut slope = dot(&dir, &grad);
        if slope >= 0.0 {
            // fall back to steepest descent when the model turns sour
            h_inv = identity(d);
            for i in 0..d {
                dir[i] = -grad[i];
            }
            slope = dot(&dir, &grad);
            if slope == 0.0 {
                break;
            }
        }

        // Armijo backtracking on the clamped iterate; the sufficient-decrease
        // test uses the realized displacement so boundary-truncated steps are
        // judged by what they actually moved.
        let mut step = 1.0;
        let mut accepted: Option<(Vec<f64>, f64)> = None;
        for _ in 0..MAX_BACKTRACKS {
            let mut cand: Vec<f64> = (0..d).map(|i| x[i] + step * dir[i]).collect();
            crate::problem::clamp_in_place(&mut cand, &lower, &upper);
            let fc = match ev.evaluate(&cand) {
                Ok(v) => v,
                Err(_) => {
                    exhausted = true;
                    break 'outer;
                }
            };
            if fc < best_f {
                best_f = fc;
                best_x = cand.clone();
            }
            let moved = dot(
                &grad,
                &cand.iter().zip(&x).map(|(c, o)| c - o).collect::<Vec<_>>(),
            );
            if moved < 0.0 && fc <= fx + ARMIJO_C * moved {
                accepted = Some((cand, fc));
                break;
            }
            step *= BACKTRACK_FACTOR;
        }
        let Some((x_new, f_new)) = accepted else {
            break;
        };

        let delta_x: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let x_small = delta_x
            .iter()
            .zip(&x_new)
            .all(|(dx, xi)| dx.abs() <= cfg.x_tol * (1.0 + xi.abs()));
        let f_small = (fx - f_new).abs() <= cfg.f_tol * (1.0 + fx.abs() + f_new.abs());

        let grad_new = match ev.gradient_with_steps(&x_new, &gradient_steps(&x_new)) {
            Ok(g) => g,
            Err(_) => {
                x = x_new;
                fx = f_new;
                exhausted = true;
                break;
            }
        };
        let y: Vec<f64> = grad_new.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let ys = dot(&y, &delta_x);
        if ys > CURVATURE_FLOOR {
            update_inverse(&mut h_inv, &delta_x, &y, 1.0 / ys);
        }
        x = x_new;
        fx = f_new;
        grad = grad_new;
        if fx < best_f {
            best_f = fx;
            best_x = x.clone();
        }
        if x_small || f_small {
            break;
        }
    }
    finish(best_x, best_f, ev, exhausted)
}
