//! Bounded objective problems and the budget-enforcing evaluator.
//!
//! Every objective call made by an optimizer goes through a
//! [`BudgetedEvaluator`], which charges one unit per call, tracks the best
//! point seen so far, and enforces both the global evaluation budget and the
//! per-local-search-call allowance.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

/// Shared, thread-safe objective function.
pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Errors raised while constructing a [`BoundedProblem`].
#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("problem dimension must be at least 1")]
    EmptyDimension,
    #[error("lower bound is not below upper bound at coordinate {0}")]
    InvalidBounds(usize),
    #[error("optimum location lies outside the box at coordinate {0}")]
    ShiftOutsideBounds(usize),
    #[error("field length mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Errors raised by budgeted evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// The global budget or the open local-search window is spent. The
    /// objective is never called once this fires.
    #[error("evaluation budget exhausted")]
    BudgetExhausted,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Errors raised while reading a shift-data file.
#[derive(Debug, Error)]
pub enum ShiftFileError {
    #[error("cannot read shift file: {0}")]
    Io(#[from] std::io::Error),
    #[error("shift file malformed: {0}")]
    Malformed(String),
    #[error("shift file is {found}-dimensional, requested {requested}")]
    WrongDimension { requested: usize, found: usize },
}

/// An objective with box constraints and a known optimum.
///
/// The struct is immutable after construction and cheap to share across
/// threads; concurrent trials evaluate the same problem through their own
/// evaluators.
#[derive(Clone)]
pub struct BoundedProblem {
    label: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    bias: f64,
    shift: Vec<f64>,
    optimum_value: f64,
    objective: Objective,
}

impl fmt::Debug for BoundedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundedProblem")
            .field("label", &self.label)
            .field("dimension", &self.dimension())
            .field("bias", &self.bias)
            .field("optimum_value", &self.optimum_value)
            .finish_non_exhaustive()
    }
}

impl BoundedProblem {
    /// Builds a problem, validating that bounds are ordered and that the
    /// optimum location sits inside the box.
    pub fn new(
        label: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        bias: f64,
        shift: Vec<f64>,
        optimum_value: f64,
        objective: Objective,
    ) -> Result<Self, ProblemError> {
        let d = lower.len();
        if d == 0 {
            return Err(ProblemError::EmptyDimension);
        }
        if upper.len() != d {
            return Err(ProblemError::DimensionMismatch {
                expected: d,
                got: upper.len(),
            });
        }
        if shift.len() != d {
            return Err(ProblemError::DimensionMismatch {
                expected: d,
                got: shift.len(),
            });
        }
        for i in 0..d {
            if !(lower[i] < upper[i]) {
                return Err(ProblemError::InvalidBounds(i));
            }
            if shift[i] < lower[i] || shift[i] > upper[i] {
                return Err(ProblemError::ShiftOutsideBounds(i));
            }
        }
        Ok(Self {
            label: label.into(),
            lower,
            upper,
            bias,
            shift,
            optimum_value,
            objective,
        })
    }

    /// Convenience constructor for a uniform box `[lo, hi]^d`.
    pub fn uniform_box(
        label: impl Into<String>,
        d: usize,
        lo: f64,
        hi: f64,
        bias: f64,
        shift: Vec<f64>,
        optimum_value: f64,
        objective: Objective,
    ) -> Result<Self, ProblemError> {
        Self::new(
            label,
            vec![lo; d],
            vec![hi; d],
            bias,
            shift,
            optimum_value,
            objective,
        )
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    /// Location of the known global optimum (the shift vector; every shipped
    /// benchmark attains its optimum value exactly here).
    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn optimum_value(&self) -> f64 {
        self.optimum_value
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluates the objective directly, without budget accounting.
    ///
    /// Optimizers must go through [`BudgetedEvaluator::evaluate`] instead;
    /// this is for construction-time checks and tests.
    pub fn value(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    /// Whether `x` lies inside the box (inclusive).
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }
}

/// Projects `x` onto the problem's box, coordinate-wise. Idempotent.
pub fn clamp_to_bounds(x: &[f64], problem: &BoundedProblem) -> Vec<f64> {
    let mut out = x.to_vec();
    clamp_in_place(&mut out, problem.lower(), problem.upper());
    out
}

pub(crate) fn clamp_in_place(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for i in 0..x.len() {
        x[i] = x[i].clamp(lower[i], upper[i]);
    }
}

/// Reads a shift-data file: UTF-8 text, first line the integer dimension,
/// second line that many whitespace-separated reals.
pub fn load_shift_file(path: impl AsRef<Path>, expected_dim: usize) -> Result<Vec<f64>, ShiftFileError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let head = lines
        .next()
        .ok_or_else(|| ShiftFileError::Malformed("empty file".into()))?;
    let found: usize = head
        .trim()
        .parse()
        .map_err(|_| ShiftFileError::Malformed(format!("first line is not an integer: {head:?}")))?;
    if found != expected_dim {
        return Err(ShiftFileError::WrongDimension {
            requested: expected_dim,
            found,
        });
    }
    let body = lines
        .next()
        .ok_or_else(|| ShiftFileError::Malformed("missing data line".into()))?;
    let values: Vec<f64> = body
        .split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| ShiftFileError::Malformed(format!("bad number {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    if values.len() != found {
        return Err(ShiftFileError::Malformed(format!(
            "expected {found} values, found {}",
            values.len()
        )));
    }
    Ok(values)
}

/// Wraps a problem and counts every objective call.
///
/// One evaluator serves exactly one trial; it is never shared. Each call to
/// [`evaluate`](Self::evaluate) charges one unit against the global budget
/// and, while a local-search window is open, against that window as well.
#[derive(Debug)]
pub struct BudgetedEvaluator<'a> {
    problem: &'a BoundedProblem,
    total_cap: usize,
    used: usize,
    local_call_cap: usize,
    window_remaining: Option<usize>,
    window_used: usize,
    best_seen: Option<(Vec<f64>, f64)>,
    out_of_bounds_evals: usize,
}

/// Default per-local-search-call allowance (multiplies `2*D + 1`).
pub const DEFAULT_LOCAL_CALL_CAP: usize = 160;

impl<'a> BudgetedEvaluator<'a> {
    pub fn new(problem: &'a BoundedProblem, total_cap: usize) -> Self {
        Self {
            problem,
            total_cap,
            used: 0,
            local_call_cap: DEFAULT_LOCAL_CALL_CAP,
            window_remaining: None,
            window_used: 0,
            best_seen: None,
            out_of_bounds_evals: 0,
        }
    }

    pub fn with_local_call_cap(mut self, cap: usize) -> Self {
        self.local_call_cap = cap;
        self
    }

    pub fn set_local_call_cap(&mut self, cap: usize) {
        self.local_call_cap = cap;
    }

    pub fn problem(&self) -> &'a BoundedProblem {
        self.problem
    }

    pub fn total_cap(&self) -> usize {
        self.total_cap
    }

    pub fn used(&self) -> usize {
        self.used
    }

    pub fn remaining(&self) -> usize {
        self.total_cap - self.used
    }

    pub fn local_call_cap(&self) -> usize {
        self.local_call_cap
    }

    /// Maximum underlying evaluations a single local-search call may consume.
    pub fn local_call_budget(&self) -> usize {
        (2 * self.problem.dimension() + 1) * self.local_call_cap
    }

    /// Opens a local-search window of `(2*D + 1) * local_call_cap`
    /// evaluations. A previously open window is replaced.
    pub fn begin_local_call(&mut self) {
        self.window_remaining = Some(self.local_call_budget());
        self.window_used = 0;
    }

    /// Closes the window and reports how many evaluations it consumed.
    pub fn end_local_call(&mut self) -> usize {
        self.window_remaining = None;
        std::mem::replace(&mut self.window_used, 0)
    }

    pub fn best_seen(&self) -> Option<(&[f64], f64)> {
        self.best_seen.as_ref().map(|(x, v)| (x.as_slice(), *v))
    }

    pub fn best_value(&self) -> Option<f64> {
        self.best_seen.as_ref().map(|(_, v)| *v)
    }

    /// Best error seen so far, `f(x) - f(x*)`.
    pub fn best_error(&self) -> Option<f64> {
        self.best_value().map(|v| v - self.problem.optimum_value())
    }

    /// True when every evaluated point so far lay inside the box.
    pub fn all_evals_in_bounds(&self) -> bool {
        self.out_of_bounds_evals == 0
    }

    /// Evaluates the objective at `x`, charging exactly one unit.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64, EvalError> {
        let d = self.problem.dimension();
        if x.len() != d {
            return Err(EvalError::DimensionMismatch {
                expected: d,
                got: x.len(),
            });
        }
        if self.used == self.total_cap {
            return Err(EvalError::BudgetExhausted);
        }
        if let Some(w) = self.window_remaining {
            if w == 0 {
                return Err(EvalError::BudgetExhausted);
            }
            self.window_remaining = Some(w - 1);
            self.window_used += 1;
        }
        self.used += 1;
        if !self.problem.contains(x) {
            self.out_of_bounds_evals += 1;
        }
        let value = self.problem.value(x);
        match &mut self.best_seen {
            Some((bx, bv)) => {
                if value < *bv {
                    bx.clear();
                    bx.extend_from_slice(x);
                    *bv = value;
                }
            }
            None => self.best_seen = Some((x.to_vec(), value)),
        }
        Ok(value)
    }

    /// Central-difference gradient with a uniform step `h`.
    ///
    /// Consumes exactly `2*D` evaluations or none at all: if fewer than
    /// `2*D` remain in the budget (or the open window) the call fails
    /// without evaluating anything. Probe points falling outside the box are
    /// pulled back to the boundary, degrading to a one-sided difference.
    pub fn central_difference_gradient(
        &mut self,
        x: &[f64],
        h: f64,
    ) -> Result<Vec<f64>, EvalError> {
        let steps = vec![h; x.len()];
        self.gradient_with_steps(x, &steps)
    }

    /// Central-difference gradient with a per-coordinate step.
    pub fn gradient_with_steps(&mut self, x: &[f64], steps: &[f64]) -> Result<Vec<f64>, EvalError> {
        let d = self.problem.dimension();
        if x.len() != d || steps.len() != d {
            return Err(EvalError::DimensionMismatch {
                expected: d,
                got: x.len().max(steps.len()),
            });
        }
        let need = 2 * d;
        if self.remaining() < need || self.window_remaining.is_some_and(|w| w < need) {
            return Err(EvalError::BudgetExhausted);
        }
        let mut grad = vec![0.0; d];
        let mut probe = x.to_vec();
        for i in 0..d {
            let h = steps[i];
            let hi = (x[i] + h).min(self.problem.upper()[i]);
            let lo = (x[i] - h).max(self.problem.lower()[i]);
            probe[i] = hi;
            let f_hi = self.evaluate(&probe)?;
            probe[i] = lo;
            let f_lo = self.evaluate(&probe)?;
            probe[i] = x[i];
            grad[i] = (f_hi - f_lo) / (hi - lo);
        }
        Ok(grad)
    }
}
