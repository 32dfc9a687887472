//! The line-point test: exact and Monte-Carlo rejection probabilities, the
//! plurality self-corrector, contraction experiments, and affine-plane
//! diagnostics.
//!
//! The central object is [`LineSurvey`], one exhaustive pass over all q^(2m)
//! lines that records, for every base point x, the histogram of fitted
//! line-polynomial values at t = 0 together with the total disagreement
//! count. Every exact quantity of interest is a view over that pass:
//!
//! * `exact_delta`   = Pr over (x,h,t) that the fit disagrees with f at t,
//! * `delta_f`       = Pr over (x,h) that the fit at 0 disagrees with f(x),
//! * `corrected`     = pointwise plurality of fits at 0 (ties to the
//!   smallest canonical index),
//! * the two-line disagreement probability at a common point.

use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::frac::{frac, Frac};
use crate::lines::{fit_line_poly_or_exact, orbit_line_fit, Backend, FitError, Line, LineFit};
use crate::poly::{distance, point_from_index, Degree, FunctionTable, MultiPoly, UniPoly};
use crate::report::{ReportParams, TestReport};
use crate::rng::{choose_distinct, substream};

#[derive(Debug, Error, PartialEq)]
pub enum TesterError {
    #[error("exhaustive budget exceeded: {needed} lines needed, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("fit failed: {0}")]
    Fit(#[from] FitError),
    #[error("line oracle failed: {0}")]
    Oracle(String),
    #[error("corruption fraction {0} outside [0, 1]")]
    BadFraction(f64),
    #[error("corruption target {idx} out of range ({limit})")]
    BadCorruptionTarget { idx: u64, limit: u64 },
    #[error("message has total degree {got}, bound is {bound}")]
    MessageDegreeTooLarge { got: Degree, bound: u32 },
}

/// Accept/reject outcome of a single test invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

// ---------------------------------------------------------------------------
// The exhaustive line survey
// ---------------------------------------------------------------------------

/// Aggregated results of fitting every line of F^m.
pub struct LineSurvey {
    q: u64,
    num_points: u64,
    d: u32,
    key: u32,
    m: usize,
    mismatch_total: u64,
    /// votes[x * q + v] = number of directions h with fit(x,h)(0) = v.
    votes: Vec<u32>,
}

/// Fits every line (x, h) of F^m against `f` with degree bound `d` and
/// aggregates the results. Fails if q^(2m) exceeds `budget`.
///
/// Line polynomials are served by the shift-consistent family of
/// [`crate::lines::orbit_line_fit`]: for each direction h != 0, the q lines
/// sharing a point set are fitted once at the smallest-index base point and
/// reparametrized. Degenerate h = 0 lines fit the constant f(x).
pub fn survey(
    field: &Field,
    f: &FunctionTable,
    d: u32,
    backend: Backend,
    budget: u64,
) -> Result<LineSurvey, TesterError> {
    assert!(f.key() == field.key(), "table from a different field");
    let q = field.q();
    if d as u64 > q - 1 {
        return Err(TesterError::Fit(FitError::DegreeOutOfRange { d, q }));
    }
    let np = f.len();
    let lines = np as u128 * np as u128;
    if lines > budget as u128 {
        return Err(TesterError::BudgetExceeded {
            needed: lines,
            budget,
        });
    }
    let m = f.m();
    let qs = q as usize;
    let els: Vec<Fe> = field.elements().collect();
    let mut votes = vec![0u32; (np * q) as usize];
    let mut mismatch_total = 0u64;
    // h = 0: the unique best fit of the constant restriction is f(x) itself;
    // it agrees everywhere and votes f(x) at x.
    for xi in 0..np {
        votes[xi as usize * qs + f.value_at(xi).index() as usize] += 1;
    }
    // h != 0: walk each shift orbit once. Scanning base candidates in
    // increasing point index makes the first unvisited member the canonical
    // one.
    let mut h = vec![field.zero(); m];
    let mut visited: Vec<u32> = vec![u32::MAX; np as usize];
    let mut slot_idx: Vec<u64> = vec![0; qs];
    let mut values: Vec<Fe> = vec![field.zero(); qs];
    for hi in 1..np {
        let stamp = hi as u32;
        for (j, c) in point_from_index(field, hi, m).into_iter().enumerate() {
            h[j] = c;
        }
        for x0 in 0..np {
            if visited[x0 as usize] == stamp {
                continue;
            }
            let x = point_from_index(field, x0, m);
            for (slot, &t) in els.iter().enumerate() {
                let mut acc = 0u64;
                for j in (0..m).rev() {
                    let coord = field.add(x[j], field.mul(t, h[j]));
                    acc = acc * q + coord.index();
                }
                slot_idx[slot] = acc;
                visited[acc as usize] = stamp;
                values[slot] = f.value_at(acc);
            }
            let fit = fit_line_poly_or_exact(field, &values, d, backend);
            // Every one of the q member lines shares this agreement count,
            // and the member based at the slot-u point sees the fit value
            // P*(u) at its own parameter 0.
            mismatch_total += (q - fit.agreement as u64) * q;
            for (slot, &t) in els.iter().enumerate() {
                let v = fit.poly.eval(field, t);
                votes[slot_idx[slot] as usize * qs + v.index() as usize] += 1;
            }
        }
    }
    Ok(LineSurvey {
        q,
        num_points: np,
        d,
        key: field.key(),
        m,
        mismatch_total,
        votes,
    })
}

impl LineSurvey {
    pub fn lines(&self) -> u64 {
        self.num_points * self.num_points
    }

    pub fn degree_bound(&self) -> u32 {
        self.d
    }

    /// Pr over (x, h, t) that the fitted line polynomial disagrees with f at
    /// the sampled parameter.
    pub fn exact_delta(&self) -> Frac {
        frac(self.mismatch_total, self.lines() * self.q)
    }

    /// Pr over (x, h) that the fitted line polynomial at 0 disagrees with
    /// f(x).
    pub fn delta_f(&self, f: &FunctionTable) -> Frac {
        assert!(f.key() == self.key && f.len() == self.num_points, "table mismatch");
        let q = self.q as usize;
        let mut miss = 0u64;
        for xi in 0..self.num_points {
            let v = f.value_at(xi).index() as usize;
            miss += self.num_points - self.votes[xi as usize * q + v] as u64;
        }
        frac(miss, self.lines())
    }

    /// The plurality-corrected function: at each point the most common fit
    /// value at 0 over all directions, ties to the smallest canonical index.
    pub fn corrected(&self, field: &Field) -> FunctionTable {
        assert!(field.key() == self.key, "field mismatch");
        let q = self.q as usize;
        let values: Vec<Fe> = (0..self.num_points as usize)
            .map(|xi| {
                let row = &self.votes[xi * q..(xi + 1) * q];
                let best = row
                    .iter()
                    .enumerate()
                    .max_by_key(|&(v, &c)| (c, std::cmp::Reverse(v)))
                    .unwrap()
                    .0;
                field.el(best as u64)
            })
            .collect();
        FunctionTable::new(field, self.m, values).unwrap()
    }

    /// Exact Pr over (x, h1, h2) that the two fits through x disagree at 0,
    /// computed from the per-point vote histograms.
    pub fn plurality_disagreement_exact(&self) -> Frac {
        let q = self.q as usize;
        let np = self.num_points as u128;
        let mut agree_pairs: u128 = 0;
        for xi in 0..self.num_points as usize {
            for &c in &self.votes[xi * q..(xi + 1) * q] {
                agree_pairs += (c as u128) * (c as u128);
            }
        }
        let total = np * np * np;
        let disagree = total - agree_pairs;
        Frac::new(disagree as i128, total as i128)
    }

    /// Exact Pr over (x, h) that the corrected value at x disagrees with the
    /// fit at 0 (the "first game" of the plurality argument).
    pub fn corr_mismatch_rate(&self) -> Frac {
        let q = self.q as usize;
        let mut miss = 0u64;
        for xi in 0..self.num_points as usize {
            let best = *self.votes[xi * q..(xi + 1) * q].iter().max().unwrap();
            miss += self.num_points - best as u64;
        }
        frac(miss, self.lines())
    }
}

/// Exact rejection probability of the line-point test with fitted line
/// polynomials.
pub fn exact_delta(
    field: &Field,
    f: &FunctionTable,
    d: u32,
    backend: Backend,
    budget: u64,
) -> Result<Frac, TesterError> {
    Ok(survey(field, f, d, backend, budget)?.exact_delta())
}

/// Exact Pr over (x, h) that f(x) differs from the fitted line polynomial
/// at 0.
pub fn delta_f(
    field: &Field,
    f: &FunctionTable,
    d: u32,
    backend: Backend,
    budget: u64,
) -> Result<Frac, TesterError> {
    Ok(survey(field, f, d, backend, budget)?.delta_f(f))
}

/// The plurality self-corrected function.
pub fn corr(
    field: &Field,
    f: &FunctionTable,
    d: u32,
    backend: Backend,
    budget: u64,
) -> Result<FunctionTable, TesterError> {
    Ok(survey(field, f, d, backend, budget)?.corrected(field))
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimators
// ---------------------------------------------------------------------------

/// Seeded Monte-Carlo estimate of the line-point rejection probability.
/// Trial i draws from substream (seed, i), so the result does not depend on
/// evaluation order.
pub fn estimate_delta(
    field: &Field,
    f: &FunctionTable,
    d: u32,
    trials: u64,
    seed: u64,
    backend: Backend,
) -> Result<TestReport, TesterError> {
    if trials == 0 {
        return Err(TesterError::NoTrials);
    }
    if d as u64 > field.q() - 1 {
        return Err(TesterError::Fit(FitError::DegreeOutOfRange {
            d,
            q: field.q(),
        }));
    }
    let np = f.len();
    let mut rejections = 0u64;
    for i in 0..trials {
        let mut rng = substream(seed, i);
        let xi = rng.gen_range(0..np);
        let hi = rng.gen_range(0..np);
        let ti = rng.gen_range(0..field.q());
        let x = point_from_index(field, xi, f.m());
        let h = point_from_index(field, hi, f.m());
        let orbit = orbit_line_fit(field, f, &x, &h, d, backend);
        let t = field.el(ti);
        let line = Line::new(x, h);
        let value = f.value(field, &line.point_at(field, t));
        if orbit.value_at(field, t) != value {
            rejections += 1;
        }
    }
    Ok(TestReport::from_counts(
        trials,
        rejections,
        None,
        seed,
        ReportParams::new(field, f.m(), d, backend),
    ))
}

/// Seeded Monte-Carlo estimate of Pr over (x, h1, h2) that the fits of two
/// random lines through a common point disagree there.
pub fn plurality_disagreement(
    field: &Field,
    f: &FunctionTable,
    d: u32,
    trials: u64,
    seed: u64,
    backend: Backend,
) -> Result<TestReport, TesterError> {
    if trials == 0 {
        return Err(TesterError::NoTrials);
    }
    if d as u64 > field.q() - 1 {
        return Err(TesterError::Fit(FitError::DegreeOutOfRange {
            d,
            q: field.q(),
        }));
    }
    let np = f.len();
    let mut rejections = 0u64;
    for i in 0..trials {
        let mut rng = substream(seed, i);
        let xi = rng.gen_range(0..np);
        let h1 = rng.gen_range(0..np);
        let h2 = rng.gen_range(0..np);
        let x = point_from_index(field, xi, f.m());
        let mut at_zero = [field.zero(); 2];
        for (slot, hi) in [h1, h2].into_iter().enumerate() {
            let h = point_from_index(field, hi, f.m());
            let orbit = orbit_line_fit(field, f, &x, &h, d, backend);
            at_zero[slot] = orbit.value_at_zero(field);
        }
        if at_zero[0] != at_zero[1] {
            rejections += 1;
        }
    }
    Ok(TestReport::from_counts(
        trials,
        rejections,
        None,
        seed,
        ReportParams::new(field, f.m(), d, backend),
    ))
}

// ---------------------------------------------------------------------------
// One-shot tester against an arbitrary line oracle
// ---------------------------------------------------------------------------

/// Serves a degree-bounded polynomial for any requested line.
pub trait LineOracle {
    fn line_poly(&self, field: &Field, line: &Line) -> Result<UniPoly, String>;
}

/// The honest oracle: serves the shift-consistent fitted family on demand.
pub struct FittedOracle<'a> {
    pub table: &'a FunctionTable,
    pub d: u32,
    pub backend: Backend,
}

impl LineOracle for FittedOracle<'_> {
    fn line_poly(&self, field: &Field, line: &Line) -> Result<UniPoly, String> {
        let orbit = orbit_line_fit(field, self.table, &line.x, &line.h, self.d, self.backend);
        Ok(orbit.poly(field))
    }
}

impl<F> LineOracle for F
where
    F: Fn(&Field, &Line) -> Result<UniPoly, String>,
{
    fn line_poly(&self, field: &Field, line: &Line) -> Result<UniPoly, String> {
        self(field, line)
    }
}

/// One round of the line-point test: sample (x, h, t), query the oracle for
/// the line polynomial and f at one point, accept iff they agree.
pub fn line_point_test_once(
    field: &Field,
    f: &FunctionTable,
    oracle: &dyn LineOracle,
    rng: &mut impl Rng,
) -> Result<Verdict, TesterError> {
    let np = f.len();
    let xi = rng.gen_range(0..np);
    let hi = rng.gen_range(0..np);
    let ti = rng.gen_range(0..field.q());
    let line = Line::new(
        point_from_index(field, xi, f.m()),
        point_from_index(field, hi, f.m()),
    );
    let poly = oracle
        .line_poly(field, &line)
        .map_err(TesterError::Oracle)?;
    let t = field.el(ti);
    let value = f.value(field, &line.point_at(field, t));
    if poly.eval(field, t) == value {
        Ok(Verdict::Accept)
    } else {
        Ok(Verdict::Reject)
    }
}

// ---------------------------------------------------------------------------
// Corruption channels
// ---------------------------------------------------------------------------

/// How to corrupt a function table.
#[derive(Debug, Clone)]
pub enum CorruptionMode {
    /// Replace round(eta * q^m) distinct points with uniformly random
    /// different values.
    RandomPoints { eta: f64 },
    /// Set one point to a fixed value.
    SinglePoint { index: u64, value: u64 },
    /// Set an explicit list of (point index, value index).
    Adversarial(Vec<(u64, u64)>),
}

#[derive(Debug, Clone)]
pub struct CorruptionSpec {
    pub mode: CorruptionMode,
    pub seed: u64,
}

impl CorruptionSpec {
    pub fn random(eta: f64, seed: u64) -> CorruptionSpec {
        CorruptionSpec {
            mode: CorruptionMode::RandomPoints { eta },
            seed,
        }
    }

    /// Applies the corruption; deterministic for a fixed seed.
    pub fn apply(&self, field: &Field, table: &FunctionTable) -> Result<FunctionTable, TesterError> {
        let mut out = table.clone();
        let np = table.len();
        match &self.mode {
            CorruptionMode::RandomPoints { eta } => {
                if !(0.0..=1.0).contains(eta) {
                    return Err(TesterError::BadFraction(*eta));
                }
                let k = (eta * np as f64).round() as u64;
                let mut rng = substream(self.seed, 0);
                for idx in choose_distinct(&mut rng, np, k) {
                    let old = out.value_at(idx);
                    let mut nv = field.el(rng.gen_range(0..field.q()));
                    while nv == old {
                        nv = field.el(rng.gen_range(0..field.q()));
                    }
                    out.set_value_at(idx, nv);
                }
            }
            CorruptionMode::SinglePoint { index, value } => {
                self.check_target(*index, np)?;
                self.check_target(*value, field.q())?;
                out.set_value_at(*index, field.el(*value));
            }
            CorruptionMode::Adversarial(list) => {
                for &(index, value) in list {
                    self.check_target(index, np)?;
                    self.check_target(value, field.q())?;
                    out.set_value_at(index, field.el(value));
                }
            }
        }
        Ok(out)
    }

    fn check_target(&self, idx: u64, limit: u64) -> Result<(), TesterError> {
        if idx >= limit {
            return Err(TesterError::BadCorruptionTarget { idx, limit });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Contraction experiment
// ---------------------------------------------------------------------------

/// Exact measurements of one corruption-and-correct round.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ContractionReport {
    #[serde(serialize_with = "crate::frac::serde_frac::serialize")]
    pub exact_delta: Frac,
    #[serde(serialize_with = "crate::frac::serde_frac::serialize")]
    pub delta_f_before: Frac,
    #[serde(serialize_with = "crate::frac::serde_frac::serialize")]
    pub delta_f_after: Frac,
    #[serde(serialize_with = "crate::frac::serde_frac::serialize")]
    pub dist_f_corr: Frac,
    #[serde(serialize_with = "crate::frac::serde_frac::serialize")]
    pub dist_corr_g: Frac,
    #[serde(serialize_with = "crate::frac::serde_frac::serialize")]
    pub dist_f_g: Frac,
    /// delta_Corr < delta_f, observed; None when delta_f = 0.
    pub contraction_ok: Option<bool>,
    /// d(f, Corr_f) <= 2 delta_f.
    pub two_delta_ok: bool,
    /// Corr_f == g, checked when d(f, g) < 1/4; None outside the hypothesis.
    pub quarter_ok: Option<bool>,
    pub corr_equals_g: bool,
    /// Derived epsilon = 1/8 - exact_delta (may be negative).
    pub epsilon: f64,
    /// alpha = 4 / (epsilon^2 q); meaningful only when epsilon > 0.
    pub alpha: f64,
    /// Whether q > 16 / epsilon^2, the field-size hypothesis of the
    /// contraction argument. The experiment reports violations of the
    /// contraction only as observations when this is false.
    pub field_hypothesis_met: bool,
    /// Conjunction of every inequality that is guaranteed at these
    /// parameters.
    pub bounds_ok: bool,
}

/// Corrupts the table of `g`, self-corrects, and measures every quantity of
/// the contraction argument exactly.
pub fn contraction_experiment(
    field: &Field,
    g: &MultiPoly,
    corruption: &CorruptionSpec,
    d: u32,
    backend: Backend,
    budget: u64,
) -> Result<ContractionReport, TesterError> {
    if g.total_degree() > Degree::Finite(d as u64) {
        return Err(TesterError::MessageDegreeTooLarge {
            got: g.total_degree(),
            bound: d,
        });
    }
    let g_table = g.table(field).expect("table within budget");
    let f = corruption.apply(field, &g_table)?;
    let s_f = survey(field, &f, d, backend, budget)?;
    let corrected = s_f.corrected(field);
    let s_c = survey(field, &corrected, d, backend, budget)?;

    let exact = s_f.exact_delta();
    let dfb = s_f.delta_f(&f);
    let dfa = s_c.delta_f(&corrected);
    let dist_f_corr = distance(&f, &corrected);
    let dist_corr_g = distance(&corrected, &g_table);
    let dist_f_g = distance(&f, &g_table);
    let zero = Frac::from_integer(0);
    let quarter = Frac::new(1, 4);

    let contraction_ok = if dfb > zero { Some(dfa < dfb) } else { None };
    let two_delta_ok = dist_f_corr <= dfb * Frac::from_integer(2);
    let corr_equals_g = corrected == g_table;
    let quarter_ok = if dist_f_g < quarter {
        Some(corr_equals_g)
    } else {
        None
    };

    let epsilon = 0.125 - crate::frac::frac_f64(&exact);
    let alpha = if epsilon > 0.0 {
        4.0 / (epsilon * epsilon * field.q() as f64)
    } else {
        f64::INFINITY
    };
    let field_hypothesis_met = epsilon > 0.0 && (field.q() as f64) > 16.0 / (epsilon * epsilon);

    // Guaranteed inequalities: the 2-delta bound always; the quarter lemma
    // with a 1/q safety margin at q >= 2(d+2); the contraction only under
    // the field-size hypothesis.
    let quarter_strict = dist_f_g < quarter - Frac::new(1, field.q() as i128)
        && field.q() >= 2 * (d as u64 + 2);
    let contraction_guaranteed = field_hypothesis_met && dfb > zero;
    let bounds_ok = two_delta_ok
        && (!quarter_strict || corr_equals_g)
        && (!contraction_guaranteed || contraction_ok == Some(true));

    Ok(ContractionReport {
        exact_delta: exact,
        delta_f_before: dfb,
        delta_f_after: dfa,
        dist_f_corr,
        dist_corr_g,
        dist_f_g,
        contraction_ok,
        two_delta_ok,
        quarter_ok,
        corr_equals_g,
        epsilon,
        alpha,
        field_hypothesis_met,
        bounds_ok,
    })
}

// ---------------------------------------------------------------------------
// Affine-plane diagnostics
// ---------------------------------------------------------------------------

/// A q-by-q matrix of f-values on the plane
/// {x + i h1 + j h2 + ij h3 | i, j in F}, with its row and column line fits.
/// Row i is the line (x + i h1, h2 + i h3); column j is (x + j h2, h1 + j h3).
#[derive(Debug, Clone)]
pub struct PlaneSample {
    pub matrix: Vec<Vec<Fe>>,
    pub row_fits: Vec<LineFit>,
    pub col_fits: Vec<LineFit>,
    pub row_deltas: Vec<Frac>,
    pub col_deltas: Vec<Frac>,
}

#[allow(clippy::too_many_arguments)]
pub fn affine_plane_sample(
    field: &Field,
    f: &FunctionTable,
    x: &[Fe],
    h1: &[Fe],
    h2: &[Fe],
    h3: &[Fe],
    d: u32,
    backend: Backend,
) -> PlaneSample {
    let m = f.m();
    assert!(
        x.len() == m && h1.len() == m && h2.len() == m && h3.len() == m,
        "plane parameter arity mismatch"
    );
    assert!((d as u64) < field.q(), "degree bound exceeds q - 1");
    let q = field.q();
    let els: Vec<Fe> = field.elements().collect();
    let combine = |i: Fe, j: Fe| -> Vec<Fe> {
        let ij = field.mul(i, j);
        (0..m)
            .map(|k| {
                let mut acc = x[k];
                acc = field.add(acc, field.mul(i, h1[k]));
                acc = field.add(acc, field.mul(j, h2[k]));
                field.add(acc, field.mul(ij, h3[k]))
            })
            .collect()
    };
    let matrix: Vec<Vec<Fe>> = els
        .iter()
        .map(|&i| els.iter().map(|&j| f.value(field, &combine(i, j))).collect())
        .collect();
    let mut row_fits = Vec::with_capacity(q as usize);
    let mut col_fits = Vec::with_capacity(q as usize);
    for row in &matrix {
        let fit = crate::lines::fit_line_poly(field, row, d, backend).unwrap_or_else(|_| {
            crate::lines::fit_line_poly(field, row, d, Backend::Exact).unwrap()
        });
        row_fits.push(fit);
    }
    let mut col_vals = vec![field.zero(); q as usize];
    for cj in 0..q as usize {
        for (slot, row) in col_vals.iter_mut().zip(&matrix) {
            *slot = row[cj];
        }
        let fit = crate::lines::fit_line_poly(field, &col_vals, d, backend).unwrap_or_else(|_| {
            crate::lines::fit_line_poly(field, &col_vals, d, Backend::Exact).unwrap()
        });
        col_fits.push(fit);
    }
    let to_delta = |fit: &LineFit| frac(q - fit.agreement as u64, q);
    let row_deltas = row_fits.iter().map(to_delta).collect();
    let col_deltas = col_fits.iter().map(to_delta).collect();
    PlaneSample {
        matrix,
        row_fits,
        col_fits,
        row_deltas,
        col_deltas,
    }
}

/// Mean row and column mismatch rates over seeded random planes.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PlaneDiagSummary {
    pub planes: u64,
    pub mean_row_delta: f64,
    pub mean_col_delta: f64,
}

/// Samples `planes` uniformly random affine planes (plane i from substream
/// (seed, i)) and averages the per-row and per-column mismatch rates. Rows
/// of a random plane are uniformly distributed lines, so both means
/// estimate the base-point mismatch rate.
pub fn sampled_plane_diagnostics(
    field: &Field,
    f: &FunctionTable,
    d: u32,
    backend: Backend,
    planes: u64,
    seed: u64,
) -> Result<PlaneDiagSummary, TesterError> {
    if planes == 0 {
        return Err(TesterError::NoTrials);
    }
    let np = f.len();
    let q = field.q() as f64;
    let mut row_sum = 0.0;
    let mut col_sum = 0.0;
    for i in 0..planes {
        let mut rng = substream(seed, i);
        let pt = |rng: &mut rand_chacha::ChaCha8Rng| {
            point_from_index(field, rng.gen_range(0..np), f.m())
        };
        let (x, h1, h2, h3) = (pt(&mut rng), pt(&mut rng), pt(&mut rng), pt(&mut rng));
        let plane = affine_plane_sample(field, f, &x, &h1, &h2, &h3, d, backend);
        row_sum += plane
            .row_deltas
            .iter()
            .map(crate::frac::frac_f64)
            .sum::<f64>()
            / q;
        col_sum += plane
            .col_deltas
            .iter()
            .map(crate::frac::frac_f64)
            .sum::<f64>()
            / q;
    }
    Ok(PlaneDiagSummary {
        planes,
        mean_row_delta: row_sum / planes as f64,
        mean_col_delta: col_sum / planes as f64,
    })
}
