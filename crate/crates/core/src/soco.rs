//! The 19-function SOCO benchmark suite.
//!
//! Functions F1-F11 are shifted classics (sphere, Schwefel variants,
//! Rosenbrock, Rastrigin, Griewank, Ackley, extended f10, Bohachevsky,
//! Schaffer); F12-F19 are weighted two-function combinations. Each problem
//! is built around a shift vector so that the global optimum sits at a known
//! interior point with value `bias`, and errors are reported as
//! `f(x) - f(x*)`.

use std::f64::consts::{E, PI};
use std::path::PathBuf;
use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::{load_shift_file, BoundedProblem, ProblemError, ShiftFileError};

/// Identifier of a SOCO benchmark function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(missing_docs)]
pub enum SocoFunctionId {
    F1, F2, F3, F4, F5, F6, F7, F8, F9, F10,
    F11, F12, F13, F14, F15, F16, F17, F18, F19,
}

/// Whether a function has one basin of attraction or many.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Modality {
    Unimodal,
    Multimodal,
}

/// A weighted two-function combination: `value = part_a + weight_b * part_b`.
///
/// Both parts share the combined function's optimum location, each applying
/// its own internal translation, so the combination's minimum value is the
/// sum of the parts' minima (zero before bias).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridComposition {
    pub part_a: SocoFunctionId,
    pub part_b: SocoFunctionId,
    pub weight_b: f64,
}

/// Where a function's shift vector comes from.
#[derive(Debug, Clone)]
pub enum ShiftSource {
    /// Plain-text data file: first line the dimension, second line the values.
    File(PathBuf),
    /// Seeded generation, uniform in the middle 80% of the box.
    Seed(u64),
    /// Explicit vector (tests and embedders).
    Explicit(Vec<f64>),
}

/// Errors raised while building suite problems.
#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown function id: {0}")]
    UnknownFunction(String),
    #[error("bad shift data: {0}")]
    BadShiftFile(#[from] ShiftFileError),
    #[error("suite functions need dimension >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

impl SocoFunctionId {
    /// All 19 functions in suite order.
    pub const ALL: [SocoFunctionId; 19] = [
        Self::F1, Self::F2, Self::F3, Self::F4, Self::F5, Self::F6, Self::F7,
        Self::F8, Self::F9, Self::F10, Self::F11, Self::F12, Self::F13,
        Self::F14, Self::F15, Self::F16, Self::F17, Self::F18, Self::F19,
    ];

    /// One-based index, `F1 -> 1`.
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&f| f == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        const NAMES: [&str; 19] = [
            "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10",
            "F11", "F12", "F13", "F14", "F15", "F16", "F17", "F18", "F19",
        ];
        NAMES[self.index() - 1]
    }

    /// Parses `"F7"` (case-insensitive) into an id.
    pub fn parse(s: &str) -> Result<Self, SuiteError> {
        let norm = s.trim().to_ascii_uppercase();
        Self::ALL
            .iter()
            .copied()
            .find(|f| f.name() == norm)
            .ok_or_else(|| SuiteError::UnknownFunction(s.to_string()))
    }

    /// Default symmetric search box `[lo, hi]` per coordinate. Combinations
    /// take the tighter of their two parts' boxes.
    pub fn default_box(self) -> (f64, f64) {
        match self {
            Self::F1 | Self::F2 | Self::F3 | Self::F9 | Self::F11 => (-100.0, 100.0),
            Self::F4 => (-5.0, 5.0),
            Self::F5 => (-600.0, 600.0),
            Self::F6 => (-32.0, 32.0),
            Self::F7 => (-10.0, 10.0),
            Self::F8 => (-65.536, 65.536),
            Self::F10 => (-15.0, 15.0),
            _ => {
                let parts = self.hybrid_parts().unwrap();
                let (la, ha) = parts.part_a.default_box();
                let (lb, hb) = parts.part_b.default_box();
                (la.max(lb), ha.min(hb))
            }
        }
    }

    pub fn modality(self) -> Modality {
        match self {
            Self::F1 | Self::F2 | Self::F7 | Self::F8 | Self::F9 | Self::F10 | Self::F11 => {
                Modality::Unimodal
            }
            _ => Modality::Multimodal,
        }
    }

    pub fn separable(self) -> bool {
        matches!(self, Self::F1 | Self::F4 | Self::F6 | Self::F7)
    }

    /// Component pair and weight for F12-F19, `None` for the base functions.
    pub fn hybrid_parts(self) -> Option<HybridComposition> {
        let (a, b, w) = match self {
            Self::F12 => (Self::F9, Self::F1, 0.25),
            Self::F13 => (Self::F9, Self::F3, 0.25),
            Self::F14 => (Self::F9, Self::F4, 0.25),
            Self::F15 => (Self::F10, Self::F7, 0.25),
            Self::F16 => (Self::F9, Self::F1, 0.5),
            Self::F17 => (Self::F9, Self::F3, 0.75),
            Self::F18 => (Self::F9, Self::F4, 0.75),
            Self::F19 => (Self::F10, Self::F7, 0.75),
            _ => return None,
        };
        Some(HybridComposition {
            part_a: a,
            part_b: b,
            weight_b: w,
        })
    }
}

impl std::fmt::Display for SocoFunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The 19-row metadata table: id, modality, separability.
pub fn list_suite() -> Vec<(SocoFunctionId, Modality, bool)> {
    SocoFunctionId::ALL
        .iter()
        .map(|&id| (id, id.modality(), id.separable()))
        .collect()
}

// ---------------------------------------------------------------------------
// Analytic forms. Each takes the raw point and the internal translation and
// evaluates the base (bias-free) function of z = x - t. Grouped cosine terms
// keep the value exactly zero at z = 0 and non-negative everywhere.
// ---------------------------------------------------------------------------

fn sphere(x: &[f64], t: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        let z = x[i] - t[i];
        s += z * z;
    }
    s
}

fn schwefel_2_21(x: &[f64], t: &[f64]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..x.len() {
        m = m.max((x[i] - t[i]).abs());
    }
    m
}

/// Rosenbrock with the minimum at z = 1 (the translation already absorbs
/// the offset, so the built problem's optimum sits at its shift vector).
fn rosenbrock(x: &[f64], t: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() - 1 {
        let zi = x[i] - t[i];
        let zn = x[i + 1] - t[i + 1];
        let a = zi * zi - zn;
        let b = zi - 1.0;
        s += 100.0 * a * a + b * b;
    }
    s
}

fn rastrigin(x: &[f64], t: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        let z = x[i] - t[i];
        s += z * z + 10.0 * (1.0 - (2.0 * PI * z).cos());
    }
    s
}

fn griewank(x: &[f64], t: &[f64]) -> f64 {
    let mut quad = 0.0;
    let mut prod = 1.0;
    for i in 0..x.len() {
        let z = x[i] - t[i];
        quad += z * z;
        prod *= (z / ((i + 1) as f64).sqrt()).cos();
    }
    quad / 4000.0 + (1.0 - prod)
}

fn ackley(x: &[f64], t: &[f64]) -> f64 {
    let d = x.len() as f64;
    let mut quad = 0.0;
    let mut cosine = 0.0;
    for i in 0..x.len() {
        let z = x[i] - t[i];
        quad += z * z;
        cosine += (2.0 * PI * z).cos();
    }
    20.0 * (1.0 - (-0.2 * (quad / d).sqrt()).exp()) + (E - (cosine / d).exp())
}

fn schwefel_2_22(x: &[f64], t: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut prod = 1.0;
    for i in 0..x.len() {
        let a = (x[i] - t[i]).abs();
        sum += a;
        prod *= a;
    }
    sum + prod
}

fn schwefel_1_2(x: &[f64], t: &[f64]) -> f64 {
    let mut prefix = 0.0;
    let mut s = 0.0;
    for i in 0..x.len() {
        prefix += x[i] - t[i];
        s += prefix * prefix;
    }
    s
}

/// Schaffer's pairwise f10 kernel.
pub fn schaffer_f10(x: f64, y: f64) -> f64 {
    let q = x * x + y * y;
    q.powf(0.25) * ((50.0 * q.powf(0.1)).sin().powi(2) + 1.0)
}

/// Sum of the f10 kernel over consecutive pairs with a cyclic wrap:
/// `sum_{i=1}^{D-1} f10(z_i, z_{i+1}) + f10(z_D, z_1)`.
pub fn extended_f10_cyclic(z: &[f64]) -> f64 {
    let d = z.len();
    let mut s = 0.0;
    for i in 0..d - 1 {
        s += schaffer_f10(z[i], z[i + 1]);
    }
    s + schaffer_f10(z[d - 1], z[0])
}

fn extended_f10(x: &[f64], t: &[f64]) -> f64 {
    let d = x.len();
    let mut s = 0.0;
    let mut zi = x[0] - t[0];
    let z0 = zi;
    for i in 0..d - 1 {
        let zn = x[i + 1] - t[i + 1];
        s += schaffer_f10(zi, zn);
        zi = zn;
    }
    s + schaffer_f10(zi, z0)
}

/// Bohachevsky with the pair sum running to D-1 so every `z_{i+1}` exists.
fn bohachevsky(x: &[f64], t: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() - 1 {
        let a = x[i] - t[i];
        let b = x[i + 1] - t[i + 1];
        s += a * a
            + 2.0 * b * b
            + 0.3 * (1.0 - (3.0 * PI * a).cos())
            + 0.4 * (1.0 - (4.0 * PI * b).cos());
    }
    s
}

fn schaffer(x: &[f64], t: &[f64]) -> f64 {
    let mut s = 0.0;
    let mut zi = x[0] - t[0];
    for i in 0..x.len() - 1 {
        let zn = x[i + 1] - t[i + 1];
        s += schaffer_f10(zi, zn);
        zi = zn;
    }
    s
}

type BaseForm = fn(&[f64], &[f64]) -> f64;

fn base_form(id: SocoFunctionId) -> BaseForm {
    use SocoFunctionId::*;
    match id {
        F1 => sphere,
        F2 => schwefel_2_21,
        F3 => rosenbrock,
        F4 => rastrigin,
        F5 => griewank,
        F6 => ackley,
        F7 => schwefel_2_22,
        F8 => schwefel_1_2,
        F9 => extended_f10,
        F10 => bohachevsky,
        F11 => schaffer,
        _ => unreachable!("combinations have no single base form"),
    }
}

/// Internal translation that puts the base function's minimum at `opt`.
/// Rosenbrock's minimum sits at z = 1, so its translation is `opt - 1`.
fn translation_for(id: SocoFunctionId, opt: &[f64]) -> Vec<f64> {
    if id == SocoFunctionId::F3 {
        opt.iter().map(|v| v - 1.0).collect()
    } else {
        opt.to_vec()
    }
}

fn resolve_shift(
    id: SocoFunctionId,
    d: usize,
    lo: f64,
    hi: f64,
    source: &ShiftSource,
) -> Result<Vec<f64>, SuiteError> {
    match source {
        ShiftSource::File(path) => Ok(load_shift_file(path, d)?),
        ShiftSource::Explicit(v) => Ok(v.clone()),
        ShiftSource::Seed(seed) => {
            // Mix the function index into the stream so one master seed
            // yields distinct shifts across the suite.
            let stream = seed ^ (id.index() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let mut rng = ChaCha12Rng::seed_from_u64(stream);
            let center = 0.5 * (lo + hi);
            let span = 0.8 * 0.5 * (hi - lo);
            Ok((0..d)
                .map(|_| rng.random_range(center - span..center + span))
                .collect())
        }
    }
}

/// Builds a suite problem with an explicit box and bias.
pub fn make_soco_in_box(
    id: SocoFunctionId,
    d: usize,
    lo: f64,
    hi: f64,
    bias: f64,
    source: &ShiftSource,
) -> Result<BoundedProblem, SuiteError> {
    if d < 2 {
        return Err(SuiteError::DimensionTooSmall(d));
    }
    let shift = resolve_shift(id, d, lo, hi, source)?;
    if shift.len() != d {
        return Err(SuiteError::Problem(ProblemError::DimensionMismatch {
            expected: d,
            got: shift.len(),
        }));
    }
    let objective: crate::problem::Objective = match id.hybrid_parts() {
        None => {
            let form = base_form(id);
            let t = translation_for(id, &shift);
            Arc::new(move |x: &[f64]| form(x, &t) + bias)
        }
        Some(parts) => {
            let form_a = base_form(parts.part_a);
            let form_b = base_form(parts.part_b);
            let t_a = translation_for(parts.part_a, &shift);
            let t_b = translation_for(parts.part_b, &shift);
            let w = parts.weight_b;
            Arc::new(move |x: &[f64]| form_a(x, &t_a) + w * form_b(x, &t_b) + bias)
        }
    };
    Ok(BoundedProblem::uniform_box(
        id.name(),
        d,
        lo,
        hi,
        bias,
        shift,
        bias,
        objective,
    )?)
}

/// Builds a suite problem with its default box and zero bias.
pub fn make_soco(
    id: SocoFunctionId,
    d: usize,
    source: &ShiftSource,
) -> Result<BoundedProblem, SuiteError> {
    let (lo, hi) = id.default_box();
    make_soco_in_box(id, d, lo, hi, 0.0, source)
}

// ---------------------------------------------------------------------------
// Suite manifest
// ---------------------------------------------------------------------------

/// One function entry in a suite manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub id: String,
    pub dims: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_seed: Option<u64>,
    #[serde(default)]
    pub bias: f64,
}

/// A JSON-serializable description of a problem set, consumed by the
/// harness and the command-line front-end. Third-party problems can bypass
/// the manifest entirely by handing `BoundedProblem`s to the harness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteManifest {
    pub functions: Vec<FunctionSpec>,
}

impl SuiteManifest {
    /// The full 19-function suite at dimension `dims` with seeded shifts.
    pub fn builtin_soco(dims: usize, shift_seed: u64) -> Self {
        Self {
            functions: SocoFunctionId::ALL
                .iter()
                .map(|id| FunctionSpec {
                    id: id.name().to_string(),
                    dims,
                    lower: None,
                    upper: None,
                    shift_file: None,
                    shift_seed: Some(shift_seed),
                    bias: 0.0,
                })
                .collect(),
        }
    }

    /// Resolves every entry into a ready-to-evaluate problem.
    pub fn build(&self) -> Result<Vec<BoundedProblem>, SuiteError> {
        self.functions
            .iter()
            .map(|spec| {
                let id = SocoFunctionId::parse(&spec.id)?;
                let (dl, dh) = id.default_box();
                let lo = spec.lower.unwrap_or(dl);
                let hi = spec.upper.unwrap_or(dh);
                let source = match (&spec.shift_file, spec.shift_seed) {
                    (Some(path), _) => ShiftSource::File(path.clone()),
                    (None, Some(seed)) => ShiftSource::Seed(seed),
                    (None, None) => ShiftSource::Seed(0),
                };
                make_soco_in_box(id, spec.dims, lo, hi, spec.bias, &source)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn seeded(id: SocoFunctionId, d: usize) -> BoundedProblem {
        make_soco(id, d, &ShiftSource::Seed(42)).unwrap()
    }

    #[test]
    fn every_function_is_zero_error_at_its_shift() {
        for &id in &SocoFunctionId::ALL {
            let p = seeded(id, 10);
            let v = p.value(p.shift());
            assert!(
                (v - p.optimum_value()).abs() <= 1e-12,
                "{id}: value at shift deviates by {:e}",
                v - p.optimum_value()
            );
            assert!(v - p.optimum_value() >= 0.0, "{id}: negative error at shift");
        }
    }

    #[test]
    fn rastrigin_and_ackley_hit_bias_exactly() {
        for id in [SocoFunctionId::F4, SocoFunctionId::F6] {
            let (lo, hi) = id.default_box();
            let p = make_soco_in_box(id, 7, lo, hi, 13.5, &ShiftSource::Seed(5)).unwrap();
            assert_eq!(p.value(p.shift()), 13.5);
        }
    }

    #[test]
    fn hybrid_is_exact_weighted_sum_of_parts() {
        let d = 8;
        let shift: Vec<f64> = (0..d).map(|i| (i as f64) - 3.5).collect();
        let src = ShiftSource::Explicit(shift);
        let f12 = make_soco(SocoFunctionId::F12, d, &src).unwrap();
        let f9 = make_soco_in_box(SocoFunctionId::F9, d, -100.0, 100.0, 0.0, &src).unwrap();
        let f1 = make_soco_in_box(SocoFunctionId::F1, d, -100.0, 100.0, 0.0, &src).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..100 {
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-100.0..100.0)).collect();
            assert_eq!(f12.value(&x), f9.value(&x) + 0.25 * f1.value(&x));
        }
    }

    #[test]
    fn extended_f10_examples() {
        assert_eq!(extended_f10_cyclic(&[0.0, 0.0, 0.0]), 0.0);
        // direct scalar evaluation of the kernel at (1, 0), doubled by the wrap
        let expected = 2.0 * (50.0f64.sin().powi(2) + 1.0);
        assert_relative_eq!(extended_f10_cyclic(&[1.0, 0.0]), expected, max_relative = 1e-14);
    }

    #[test]
    fn extended_f10_is_rotation_invariant() {
        let z = [0.3, -1.7, 2.2, 0.05, -0.9];
        let mut rot = z.to_vec();
        rot.rotate_left(1);
        assert_relative_eq!(
            extended_f10_cyclic(&z),
            extended_f10_cyclic(&rot),
            max_relative = 1e-12
        );
    }

    #[test]
    fn suite_metadata_matches_catalogue() {
        let table = list_suite();
        assert_eq!(table.len(), 19);
        assert_eq!(table[0], (SocoFunctionId::F1, Modality::Unimodal, true));
        assert_eq!(table[2].1, Modality::Multimodal); // F3
        assert_eq!(table[4], (SocoFunctionId::F5, Modality::Multimodal, false));
        let hybrids = table
            .iter()
            .filter(|(id, ..)| id.hybrid_parts().is_some())
            .count();
        assert_eq!(hybrids, 8);
        assert!(table[8].1 == Modality::Unimodal && !table[8].2); // F9
    }

    #[test]
    fn hybrid_boxes_take_the_tighter_part() {
        assert_eq!(SocoFunctionId::F12.default_box(), (-100.0, 100.0));
        assert_eq!(SocoFunctionId::F14.default_box(), (-5.0, 5.0));
        assert_eq!(SocoFunctionId::F15.default_box(), (-10.0, 10.0));
        assert_eq!(SocoFunctionId::F18.default_box(), (-5.0, 5.0));
        assert_eq!(SocoFunctionId::F19.default_box(), (-10.0, 10.0));
    }

    #[test]
    fn shift_generation_stays_in_middle_80_percent() {
        for &id in &SocoFunctionId::ALL {
            let p = seeded(id, 20);
            let (lo, hi) = id.default_box();
            let span = 0.8 * 0.5 * (hi - lo);
            let center = 0.5 * (lo + hi);
            for &s in p.shift() {
                assert!(s >= center - span && s <= center + span, "{id}");
            }
        }
    }

    #[test]
    fn seeded_shifts_are_reproducible_and_distinct() {
        let a = seeded(SocoFunctionId::F1, 6);
        let b = seeded(SocoFunctionId::F1, 6);
        assert_eq!(a.shift(), b.shift());
        let c = seeded(SocoFunctionId::F2, 6);
        assert_ne!(a.shift(), c.shift());
    }

    #[test]
    fn shift_invariance() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for &id in &SocoFunctionId::ALL {
            let d = 6;
            let (lo, hi) = id.default_box();
            let shifted = make_soco(id, d, &ShiftSource::Seed(3)).unwrap();
            let origin =
                make_soco_in_box(id, d, lo, hi, 0.0, &ShiftSource::Explicit(vec![0.0; d]))
                    .unwrap();
            for _ in 0..100 {
                let x: Vec<f64> = (0..d).map(|_| rng.random_range(lo..hi)).collect();
                let y: Vec<f64> = x
                    .iter()
                    .zip(shifted.shift())
                    .map(|(a, b)| a - b)
                    .collect();
                let v1 = shifted.value(&x);
                let v2 = origin.value(&y);
                assert_relative_eq!(v1, v2, max_relative = 1e-12, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn values_are_finite_at_box_extremes() {
        for &id in &SocoFunctionId::ALL {
            let p = seeded(id, 50);
            let d = p.dimension();
            for i in 0..d {
                for bound in [p.lower()[i], p.upper()[i]] {
                    let mut x = p.shift().to_vec();
                    x[i] = bound;
                    assert!(p.value(&x).is_finite(), "{id} axis extreme");
                }
            }
            assert!(p.value(p.lower()).is_finite(), "{id} lower corner");
            assert!(p.value(p.upper()).is_finite(), "{id} upper corner");
        }
    }

    #[test]
    fn separable_functions_optimize_coordinate_wise() {
        for id in [
            SocoFunctionId::F1,
            SocoFunctionId::F4,
            SocoFunctionId::F6,
            SocoFunctionId::F7,
        ] {
            let p = seeded(id, 5);
            let d = p.dimension();
            let mut assembled = vec![0.0; d];
            for i in 0..d {
                // dense scan then interval halving, one coordinate at a time
                let (lo, hi) = (p.lower()[i], p.upper()[i]);
                let mut best_t = lo;
                let mut best_v = f64::INFINITY;
                let mut x = p.shift().to_vec();
                for k in 0..=2000 {
                    let t = lo + (hi - lo) * (k as f64) / 2000.0;
                    x[i] = t;
                    let v = p.value(&x);
                    if v < best_v {
                        best_v = v;
                        best_t = t;
                    }
                }
                let mut width = (hi - lo) / 2000.0;
                for _ in 0..60 {
                    for t in [best_t - 0.5 * width, best_t + 0.5 * width] {
                        x[i] = t.clamp(lo, hi);
                        let v = p.value(&x);
                        if v < best_v {
                            best_v = v;
                            best_t = x[i];
                        }
                    }
                    width *= 0.5;
                }
                assembled[i] = best_t;
            }
            let err = p.value(&assembled) - p.optimum_value();
            assert!(err.abs() < 1e-9, "{id}: coordinate-wise error {err:e}");
        }
    }

    #[test]
    fn rosenbrock_form_matches_reference_not_sign_variant() {
        // the sign-flipped pair form reads 100*(z_i^2 + z_{i+1})^2 instead of
        // the reference 100*(z_i^2 - z_{i+1})^2; they must disagree away from
        // trivial points
        fn sign_variant(z: &[f64]) -> f64 {
            let mut s = 0.0;
            for i in 0..z.len() - 1 {
                let a = z[i] * z[i] + z[i + 1];
                let b = z[i] - 1.0;
                s += 100.0 * a * a + b * b;
            }
            s
        }
        let t = vec![0.0; 3];
        let z = [1.0, 1.0, 1.0];
        assert_eq!(rosenbrock(&z, &t), 0.0);
        assert!(sign_variant(&z) > 100.0);
    }

    #[test]
    fn small_dimension_is_rejected() {
        assert!(matches!(
            make_soco(SocoFunctionId::F9, 1, &ShiftSource::Seed(0)),
            Err(SuiteError::DimensionTooSmall(1))
        ));
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(
            SocoFunctionId::parse("F20"),
            Err(SuiteError::UnknownFunction(_))
        ));
        assert_eq!(SocoFunctionId::parse("f13").unwrap(), SocoFunctionId::F13);
    }

    #[test]
    fn manifest_round_trip_and_build() {
        let manifest = SuiteManifest::builtin_soco(5, 7);
        let json = serde_json::to_string(&manifest).unwrap();
        let back: SuiteManifest = serde_json::from_str(&json).unwrap();
        let problems = back.build().unwrap();
        assert_eq!(problems.len(), 19);
        assert_eq!(problems[3].label(), "F4");
        assert_eq!(problems[3].lower()[0], -5.0);
        // a shift file entry builds too
        let dir = std::env::temp_dir();
        let path = dir.join("acor_core_manifest_shift.txt");
        std::fs::write(&path, "4\n0.5 -0.5 1.0 -1.0\n").unwrap();
        let m = SuiteManifest {
            functions: vec![FunctionSpec {
                id: "F1".into(),
                dims: 4,
                lower: None,
                upper: None,
                shift_file: Some(path.clone()),
                shift_seed: None,
                bias: 1.0,
            }],
        };
        let ps = m.build().unwrap();
        assert_eq!(ps[0].shift(), &[0.5, -0.5, 1.0, -1.0]);
        assert_eq!(ps[0].value(ps[0].shift()), 1.0);
        std::fs::remove_file(&path).ok();
    }
}
