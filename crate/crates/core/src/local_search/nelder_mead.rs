//! Nelder-Mead simplex search with box clamping.
//!
//! Standard reflect/expand/contract/shrink scheme (coefficients 1, 2, 0.5,
//! 0.5). The initial simplex spans 5% of the box width along each axis and
//! every vertex is clamped before evaluation, so the simplex never leaves
//! the box.

use crate::problem::{clamp_in_place, BudgetedEvaluator};

use super::{LocalSearcher, SearchOutcome};

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const INITIAL_EDGE_FRACTION: f64 = 0.05;

/// Nelder-Mead local search from `x0`.
pub fn nelder_mead_search(
    ev: &mut BudgetedEvaluator,
    x0: &[f64],
    cfg: &LocalSearcher,
) -> SearchOutcome {
    ev.set_local_call_cap(cfg.call_cap);
    ev.begin_local_call();
    let problem = ev.problem();
    let d = problem.dimension();
    let (lower, upper) = (problem.lower(), problem.upper());

    let mut start = x0.to_vec();
    clamp_in_place(&mut start, lower, upper);

    // vertices[0] is the start point; vertex i+1 offsets axis i by 5% of the
    // box width, flipped inward when that would leave the box
    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    vertices.push(start.clone());
    for i in 0..d {
        let mut v = start.clone();
        let edge = INITIAL_EDGE_FRACTION * (upper[i] - lower[i]);
        v[i] = if v[i] + edge <= upper[i] {
            v[i] + edge
        } else {
            v[i] - edge
        };
        clamp_in_place(&mut v, lower, upper);
        vertices.push(v);
    }

    let mut values = Vec::with_capacity(d + 1);
    let mut best_x = start.clone();
    let mut best_f = f64::INFINITY;
    for v in &vertices {
        match ev.evaluate(v) {
            Ok(f) => {
                if f < best_f {
                    best_f = f;
                    best_x = v.clone();
                }
                values.push(f);
            }
            Err(_) => {
                return SearchOutcome {
                    x: best_x,
                    value: best_f,
                    evals_used: ev.end_local_call(),
                    exhausted: true,
                }
            }
        }
    }

    let mut exhausted = false;
    'outer: loop {
        // order: best first, worst last
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[d];
        let second_worst = order[d.saturating_sub(1).max(0)];
        let f_best = values[best];
        let f_worst = values[worst];
        if f_worst - f_best <= cfg.f_tol {
            break;
        }

        // centroid of everything but the worst vertex
        let mut centroid = vec![0.0; d];
        for &idx in order.iter().take(d) {
            for (c, v) in centroid.iter_mut().zip(&vertices[idx]) {
                *c += v;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= d as f64);

        let mut try_point = |coef: f64, ev: &mut BudgetedEvaluator| -> Option<(Vec<f64>, f64)> {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&vertices[worst])
                .map(|(c, w)| c + coef * (c - w))
                .collect();
            clamp_in_place(&mut p, lower, upper);
            let f = ev.evaluate(&p).ok()?;
            Some((p, f))
        };

        let Some((xr, fr)) = try_point(REFLECT, ev) else {
            exhausted = true;
            break;
        };
        let replacement = if fr < f_best {
            match try_point(EXPAND, ev) {
                Some((xe, fe)) if fe < fr => (xe, fe),
                Some(_) => (xr, fr),
                None => {
                    exhausted = true;
                    if fr < best_f {
                        best_f = fr;
                        best_x = xr;
                    }
                    break;
                }
            }
        } else if fr < values[second_worst] {
            (xr, fr)
        } else {
            // contract toward the better of worst/reflected, shrink on failure
            let coef = if fr < f_worst { CONTRACT } else { -CONTRACT };
            match try_point(coef, ev) {
                Some((xc, fc)) if fc < fr.min(f_worst) => (xc, fc),
                Some(_) => {
                    for &idx in order.iter().skip(1) {
                        let mut v: Vec<f64> = vertices[best]
                            .iter()
                            .zip(&vertices[idx])
                            .map(|(b, v)| b + SHRINK * (v - b))
                            .collect();
                        clamp_in_place(&mut v, lower, upper);
                        match ev.evaluate(&v) {
                            Ok(f) => {
                                vertices[idx] = v;
                                values[idx] = f;
                                if f < best_f {
                                    best_f = f;
                                    best_x = vertices[idx].clone();
                                }
                            }
                            Err(_) => {
                                exhausted = true;
                                break 'outer;
                            }
                        }
                    }
                    continue;
                }
                None => {
                    exhausted = true;
                    break;
                }
            }
        };
        if replacement.1 < best_f {
            best_f = replacement.1;
            best_x = replacement.0.clone();
        }
        vertices[worst] = replacement.0;
        values[worst] = replacement.1;
    }
    SearchOutcome {
        x: best_x,
        value: best_f,
        evals_used: ev.end_local_call(),
        exhausted,
    }
}
