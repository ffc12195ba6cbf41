//! The pluggable local-search layer.
//!
//! Three searchers sit behind one interface: coordinate-probing Mtsls1, a
//! quasi-Newton descent on central-difference gradients, and a Nelder-Mead
//! simplex. All of them run inside an evaluator window so a single call can
//! never consume more than `(2*D + 1) * call_cap` underlying evaluations,
//! and none of them ever returns a point worse than its start.

mod mtsls1;
mod nelder_mead;
mod quasi_newton;

pub use mtsls1::{mtsls1_pass, mtsls1_search, Mtsls1State, PassOutcome};
pub use nelder_mead::nelder_mead_search;
pub use quasi_newton::quasi_newton_search;

use serde::{Deserialize, Serialize};

use crate::problem::BudgetedEvaluator;

/// Which local searcher to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearcherKind {
    Mtsls1,
    QuasiNewton,
    NelderMead,
}

impl SearcherKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Mtsls1 => "mtsls1",
            Self::QuasiNewton => "bfgs",
            Self::NelderMead => "neldermead",
        }
    }
}

impl std::fmt::Display for SearcherKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Local-searcher configuration shared by all kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSearcher {
    pub kind: SearcherKind,
    /// Per-call allowance: a single invoke may consume at most
    /// `(2*D + 1) * call_cap` evaluations.
    pub call_cap: usize,
    pub x_tol: f64,
    pub f_tol: f64,
}

impl LocalSearcher {
    pub fn new(kind: SearcherKind) -> Self {
        Self {
            kind,
            call_cap: crate::problem::DEFAULT_LOCAL_CALL_CAP,
            x_tol: 1e-7,
            f_tol: 1e-15,
        }
    }
}

/// Result of one local-search call.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub x: Vec<f64>,
    /// Value at `x`; `INFINITY` when the budget died before even the first
    /// evaluation.
    pub value: f64,
    /// Underlying evaluations consumed by this call.
    pub evals_used: usize,
    /// True when the call stopped because a budget ran out.
    pub exhausted: bool,
}

/// Dispatches one local-search call of the configured kind from `x0`.
///
/// `state` carries the per-trial Mtsls1 step schedule; the other searchers
/// ignore it.
pub fn invoke(
    cfg: &LocalSearcher,
    ev: &mut BudgetedEvaluator,
    x0: &[f64],
    state: &mut Mtsls1State,
) -> SearchOutcome {
    match cfg.kind {
        SearcherKind::Mtsls1 => mtsls1_search(ev, x0, state, cfg),
        SearcherKind::QuasiNewton => quasi_newton_search(ev, x0, cfg),
        SearcherKind::NelderMead => nelder_mead_search(ev, x0, cfg),
    }
}
