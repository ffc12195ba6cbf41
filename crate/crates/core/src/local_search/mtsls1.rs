//! Mtsls1: coordinate-wise line probing.
//!
//! Each pass walks the dimensions in order. A dimension first tries a move
//! of `+step`; if the value drops, the move sticks and the improved point
//! seeds the next dimension. Otherwise the coordinate is restored and a move
//! of `-0.5*step` is tried; the best of the candidates is kept. A pass with
//! no improvement anywhere halves all steps, and steps that underflow snap
//! back to their initial size.

use crate::problem::{BudgetedEvaluator, EvalError};

use super::{LocalSearcher, SearchOutcome};

const STEP_FLOOR: f64 = 1e-14;
const INITIAL_STEP_FACTOR: f64 = 0.4;

/// Per-trial step schedule for Mtsls1. Owned by one trial and carried
/// across local-search calls.
#[derive(Debug, Clone)]
pub struct Mtsls1State {
    step: Vec<f64>,
    initial: Vec<f64>,
    improved_last_pass: bool,
}

impl Mtsls1State {
    /// Initial step is 40% of the box width per coordinate.
    pub fn new(lower: &[f64], upper: &[f64]) -> Self {
        let initial: Vec<f64> = lower
            .iter()
            .zip(upper)
            .map(|(lo, hi)| INITIAL_STEP_FACTOR * (hi - lo))
            .collect();
        Self {
            step: initial.clone(),
            initial,
            improved_last_pass: true,
        }
    }

    pub fn for_problem(problem: &crate::problem::BoundedProblem) -> Self {
        Self::new(problem.lower(), problem.upper())
    }

    pub fn step(&self) -> &[f64] {
        &self.step
    }

    pub fn improved_last_pass(&self) -> bool {
        self.improved_last_pass
    }

    /// Applies the step schedule after a pass: halve everything when the
    /// pass made no progress, snapping underflowed steps back to initial.
    pub fn after_pass(&mut self, improved: bool) {
        self.improved_last_pass = improved;
        if !improved {
            for (s, init) in self.step.iter_mut().zip(&self.initial) {
                *s *= 0.5;
                if *s < STEP_FLOOR {
                    *s = *init;
                }
            }
        }
    }
}

/// Result of a single Mtsls1 pass over all dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PassOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub improved: bool,
    pub exhausted: bool,
}

/// One deterministic pass over the dimensions from `x0` with known value
/// `fx0`. Does not touch the step schedule; call
/// [`Mtsls1State::after_pass`] with the outcome's `improved` flag.
pub fn mtsls1_pass(
    ev: &mut BudgetedEvaluator,
    x0: &[f64],
    fx0: f64,
    state: &Mtsls1State,
) -> PassOutcome {
    let problem = ev.problem();
    let (lower, upper) = (problem.lower(), problem.upper());
    let mut x = x0.to_vec();
    let mut fx = fx0;
    let mut improved = false;
    for i in 0..x.len() {
        let orig = x[i];
        let s = state.step[i];
        x[i] = (orig + s).min(upper[i]);
        let f_fwd = match ev.evaluate(&x) {
            Ok(v) => v,
            Err(EvalError::BudgetExhausted) | Err(EvalError::DimensionMismatch { .. }) => {
                x[i] = orig;
                return PassOutcome {
                    x,
                    value: fx,
                    improved,
                    exhausted: true,
                };
            }
        };
        if f_fwd < fx {
            fx = f_fwd;
            improved = true;
            continue;
        }
        x[i] = (orig - 0.5 * s).max(lower[i]);
        let f_bwd = match ev.evaluate(&x) {
            Ok(v) => v,
            Err(_) => {
                x[i] = orig;
                return PassOutcome {
                    x,
                    value: fx,
                    improved,
                    exhausted: true,
                };
            }
        };
        if f_bwd < fx {
            fx = f_bwd;
            improved = true;
        } else {
            x[i] = orig;
        }
    }
    PassOutcome {
        x,
        value: fx,
        improved,
        exhausted: false,
    }
}

/// A full Mtsls1 local-search call: repeated passes until the per-call
/// window (or the global budget) runs out.
pub fn mtsls1_search(
    ev: &mut BudgetedEvaluator,
    x0: &[f64],
    state: &mut Mtsls1State,
    cfg: &LocalSearcher,
) -> SearchOutcome {
    ev.set_local_call_cap(cfg.call_cap);
    ev.begin_local_call();
    let mut x = x0.to_vec();
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
    loop {
        let pass = mtsls1_pass(ev, &x, fx, state);
        state.after_pass(pass.improved);
        x = pass.x;
        fx = pass.value;
        if pass.exhausted {
            return SearchOutcome {
                x,
                value: fx,
                evals_used: ev.end_local_call(),
                exhausted: true,
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::BoundedProblem;
    use std::sync::Arc;

    fn parabola_1d() -> BoundedProblem {
        BoundedProblem::uniform_box(
            "parabola",
            1,
            -100.0,
            100.0,
            0.0,
            vec![0.0],
            0.0,
            Arc::new(|x: &[f64]| x[0] * x[0]),
        )
        .unwrap()
    }

    fn sphere_2d() -> BoundedProblem {
        BoundedProblem::uniform_box(
            "sphere",
            2,
            -100.0,
            100.0,
            0.0,
            vec![0.0; 2],
            0.0,
            Arc::new(|x: &[f64]| x.iter().map(|v| v * v).sum()),
        )
        .unwrap()
    }

    fn state_with_step(problem: &BoundedProblem, step: &[f64]) -> Mtsls1State {
        let mut st = Mtsls1State::for_problem(problem);
        st.step.copy_from_slice(step);
        st
    }

    #[test]
    fn pass_takes_the_backward_half_step() {
        let p = parabola_1d();
        let mut ev = BudgetedEvaluator::new(&p, 100);
        let st = state_with_step(&p, &[0.5]);
        // forward to 1.5 gives 2.25 and is rejected; backward to 0.75 gives
        // 0.5625 and wins
        let out = mtsls1_pass(&mut ev, &[1.0], 1.0, &st);
        assert_eq!(out.x, vec![0.75]);
        assert_eq!(out.value, 0.5625);
        assert!(out.improved);
        assert_eq!(ev.used(), 2);
    }

    #[test]
    fn pass_is_a_fixed_point_at_the_optimum() {
        let p = parabola_1d();
        let mut ev = BudgetedEvaluator::new(&p, 100);
        let st = state_with_step(&p, &[0.8]);
        let out = mtsls1_pass(&mut ev, &[0.0], 0.0, &st);
        assert_eq!(out.x, vec![0.0]);
        assert_eq!(out.value, 0.0);
        assert!(!out.improved);
        assert_eq!(ev.used(), 2);
    }

    #[test]
    fn pass_chains_dimensions_sequentially() {
        let p = sphere_2d();
        let mut ev = BudgetedEvaluator::new(&p, 100);
        let st = state_with_step(&p, &[1.0, 1.0]);
        // dim 1: forward (2,1) -> 5 rejected, backward (0.5,1) -> 1.25 kept;
        // dim 2: forward (0.5,2) -> 4.25 rejected, backward (0.5,0.5) -> 0.5 kept
        let out = mtsls1_pass(&mut ev, &[1.0, 1.0], 2.0, &st);
        assert_eq!(out.x, vec![0.5, 0.5]);
        assert_eq!(out.value, 0.5);
        assert_eq!(ev.used(), 4);
    }

    #[test]
    fn pass_is_deterministic() {
        let p = sphere_2d();
        let st = state_with_step(&p, &[0.3, 0.7]);
        let mut ev1 = BudgetedEvaluator::new(&p, 100);
        let mut ev2 = BudgetedEvaluator::new(&p, 100);
        let a = mtsls1_pass(&mut ev1, &[2.0, -3.0], 13.0, &st);
        let b = mtsls1_pass(&mut ev2, &[2.0, -3.0], 13.0, &st);
        assert_eq!(a, b);
    }

    #[test]
    fn pass_returns_partial_progress_on_exhaustion() {
        let p = sphere_2d();
        let mut ev = BudgetedEvaluator::new(&p, 3);
        let st = state_with_step(&p, &[1.0, 1.0]);
        let out = mtsls1_pass(&mut ev, &[1.0, 1.0], 2.0, &st);
        assert!(out.exhausted);
        // dim 1 completed (backward accepted), dim 2 ran out mid-probe
        assert_eq!(out.x, vec![0.5, 1.0]);
        assert_eq!(out.value, 1.25);
    }

    #[test]
    fn steps_halve_then_reset() {
        let p = parabola_1d();
        let mut st = state_with_step(&p, &[4e-14]);
        st.after_pass(false);
        assert_eq!(st.step()[0], 2e-14);
        st.after_pass(false);
        assert_eq!(st.step()[0], 1e-14);
        st.after_pass(false); // 5e-15 underflows the floor
        assert_eq!(st.step()[0], st.initial[0]);
        st.after_pass(true);
        assert_eq!(st.step()[0], st.initial[0]);
    }

    #[test]
    fn search_consumes_exactly_the_window() {
        let p = sphere_2d();
        let mut ev = BudgetedEvaluator::new(&p, 10_000);
        let mut st = Mtsls1State::for_problem(&p);
        let cfg = LocalSearcher {
            call_cap: 20,
            ..LocalSearcher::new(super::super::SearcherKind::Mtsls1)
        };
        let out = mtsls1_search(&mut ev, &[50.0, -30.0], &mut st, &cfg);
        let window = (2 * 2 + 1) * 20;
        assert!(out.exhausted);
        assert_eq!(out.evals_used, window);
        assert_eq!(ev.used(), window);
        assert!(out.value <= p.value(&[50.0, -30.0]));
    }

    #[test]
    fn search_converges_on_the_sphere() {
        let p = sphere_2d();
        let mut ev = BudgetedEvaluator::new(&p, 10_000);
        let mut st = Mtsls1State::for_problem(&p);
        let cfg = LocalSearcher::new(super::super::SearcherKind::Mtsls1);
        let out = mtsls1_search(&mut ev, &[37.5, -81.25], &mut st, &cfg);
        assert!(out.value < 1e-20, "value {:e}", out.value);
    }
}
