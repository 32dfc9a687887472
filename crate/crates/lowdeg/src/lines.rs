//! Lines in F^m, restriction of functions to lines, and maximum-agreement
//! degree-d line fits.
//!
//! Two backends compute the fit. `Exact` interpolates every (d+1)-subset of
//! positions and keeps the best agreement, breaking ties by the
//! lexicographically smallest coefficient index vector, so it always returns
//! a true maximum-agreement polynomial. `Decode` runs a Berlekamp-Welch
//! style rational fit and succeeds only when a polynomial agrees on more
//! than (q+d)/2 positions, where uniqueness is guaranteed.
//!
//! Both backends first try a few disjoint interpolation windows: any
//! candidate that clears the unique-decoding threshold is already the
//! answer, which keeps lightly corrupted lines cheap.

use thiserror::Error;

use crate::field::{Fe, Field};
use crate::poly::{interpolate, point_index, UniPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("degree bound {d} out of range for field of order {q}")]
    DegreeOutOfRange { d: u32, q: u64 },
    #[error("values length {got} does not equal the field order {q}")]
    BadValuesLength { got: usize, q: u64 },
    #[error("no polynomial of degree <= {d} agrees on more than (q+d)/2 positions")]
    NoUniqueFit { d: u32 },
}

/// A line x + t*h in F^m. h = 0 is allowed and denotes the degenerate line
/// that sits at x for every parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub x: Vec<Fe>,
    pub h: Vec<Fe>,
}

impl Line {
    pub fn new(x: Vec<Fe>, h: Vec<Fe>) -> Line {
        assert_eq!(x.len(), h.len(), "line base and direction arity mismatch");
        Line { x, h }
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.h.iter().all(|c| c.is_zero())
    }

    /// The point x + t*h.
    pub fn point_at(&self, field: &Field, t: Fe) -> Vec<Fe> {
        self.x
            .iter()
            .zip(&self.h)
            .map(|(&x, &h)| field.add(x, field.mul(t, h)))
            .collect()
    }
}

/// Which procedure computes line fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exhaustive subset interpolation; true maximum agreement with a
    /// deterministic tie-break. Cost grows as C(q, d+1) per line.
    Exact,
    /// Unique decoding; fails with `NoUniqueFit` below the (q+d)/2
    /// agreement threshold.
    Decode,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Decode => "decode",
        }
    }
}

/// A fitted line polynomial with its agreement count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFit {
    pub poly: UniPoly,
    pub agreement: u32,
    pub degree_bound: u32,
}

/// Values of f along the line, indexed by the canonical order of t.
pub fn restrict(field: &Field, f: &crate::poly::FunctionTable, line: &Line) -> Vec<Fe> {
    let mut out = Vec::with_capacity(field.q() as usize);
    restrict_into(field, f, line, &mut out);
    out
}

/// `restrict` writing into a caller-owned buffer.
pub fn restrict_into(
    field: &Field,
    f: &crate::poly::FunctionTable,
    line: &Line,
    out: &mut Vec<Fe>,
) {
    restrict_pair_into(field, f, &line.x, &line.h, out);
}

/// Restriction along the line (x, h) without building a `Line`, for hot
/// enumeration loops.
pub fn restrict_pair_into(
    field: &Field,
    f: &crate::poly::FunctionTable,
    x: &[Fe],
    h: &[Fe],
    out: &mut Vec<Fe>,
) {
    assert_eq!(f.m(), x.len(), "table and line arity mismatch");
    assert_eq!(x.len(), h.len(), "line base and direction arity mismatch");
    out.clear();
    for t in field.elements() {
        let mut idx = 0u64;
        for j in (0..x.len()).rev() {
            let coord = field.add(x[j], field.mul(t, h[j]));
            idx = idx * field.q() + coord.index();
        }
        out.push(f.value_at(idx));
    }
}

fn count_agreement(field: &Field, poly: &UniPoly, values: &[Fe]) -> u32 {
    field
        .elements()
        .zip(values)
        .filter(|&(t, &v)| poly.eval(field, t) == v)
        .count() as u32
}

/// Agreement count of the interpolant through the first d+1 positions.
/// Equals q exactly when the values are a degree-<=d function, making this
/// a one-interpolation test for that property.
pub fn interpolate_window_agreement(field: &Field, values: &[Fe], d: u32) -> u32 {
    let k = d as usize + 1;
    assert!(values.len() == field.q() as usize && k <= values.len());
    let points: Vec<Fe> = field.elements().take(k).collect();
    let cand = interpolate(field, &points, &values[..k]).unwrap();
    count_agreement(field, &cand, values)
}

/// Best degree-<=d fit of `values` (one value per field element, canonical
/// order) under the chosen backend.
pub fn fit_line_poly(
    field: &Field,
    values: &[Fe],
    d: u32,
    backend: Backend,
) -> Result<LineFit, FitError> {
    let q = field.q();
    if d as u64 > q - 1 {
        return Err(FitError::DegreeOutOfRange { d, q });
    }
    if values.len() as u64 != q {
        return Err(FitError::BadValuesLength {
            got: values.len(),
            q,
        });
    }
    let points: Vec<Fe> = field.elements().collect();
    let k = d as usize + 1;

    // Fast path: disjoint interpolation windows. Any candidate whose
    // agreement exceeds (q+d)/2 is the unique such polynomial, hence the
    // maximum-agreement fit regardless of backend.
    let windows = ((q as usize) / k).min(4);
    for w in 0..windows {
        let lo = w * k;
        let cand = interpolate(field, &points[lo..lo + k], &values[lo..lo + k]).unwrap();
        let a = count_agreement(field, &cand, values);
        if 2 * a as u64 > q + d as u64 {
            return Ok(LineFit {
                poly: cand,
                agreement: a,
                degree_bound: d,
            });
        }
    }

    match backend {
        Backend::Exact => Ok(fit_exact(field, &points, values, d)),
        Backend::Decode => berlekamp_welch(field, &points, values, d).ok_or(FitError::NoUniqueFit { d }),
    }
}

/// Fit under the requested backend, falling back to the exhaustive search
/// when unique decoding fails. The result is always a true
/// maximum-agreement polynomial with the deterministic tie-break.
pub fn fit_line_poly_or_exact(field: &Field, values: &[Fe], d: u32, backend: Backend) -> LineFit {
    match fit_line_poly(field, values, d, backend) {
        Ok(fit) => fit,
        Err(FitError::NoUniqueFit { .. }) => {
            fit_line_poly(field, values, d, Backend::Exact).unwrap()
        }
        Err(e) => panic!("line fit failed: {e}"),
    }
}

/// Restriction plus fit.
pub fn line_poly(
    field: &Field,
    f: &crate::poly::FunctionTable,
    line: &Line,
    d: u32,
    backend: Backend,
) -> Result<LineFit, FitError> {
    let values = restrict(field, f, line);
    fit_line_poly(field, &values, d, backend)
}

/// A line fit expressed relative to the canonical base point of the line's
/// point set: the polynomial served for the line (x, h) is
/// `fit.poly(u + shift)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitFit {
    /// Fit computed at the member of the orbit {(x + t h, h)} whose base has
    /// the smallest canonical point index.
    pub fit: LineFit,
    /// The slot of x on that canonical parametrization: x = x* + shift * h.
    pub shift: Fe,
}

impl OrbitFit {
    /// Value of the served line polynomial at parameter 0 (that is, at the
    /// base point x).
    pub fn value_at_zero(&self, field: &Field) -> Fe {
        self.fit.poly.eval(field, self.shift)
    }

    /// Value of the served line polynomial at parameter t.
    pub fn value_at(&self, field: &Field, t: Fe) -> Fe {
        self.fit.poly.eval(field, field.add(t, self.shift))
    }

    /// The served polynomial in the (x, h) parametrization.
    pub fn poly(&self, field: &Field) -> UniPoly {
        self.fit.poly.shifted(field, self.shift)
    }
}

/// Fits the line (x, h) consistently across the whole shift orbit
/// {(x + t h, h) : t in F}: the fit is computed once, at the member whose
/// base point has the smallest canonical index, and reparametrized for x.
///
/// Lines in the same orbit restrict to shifts of one value vector, so a
/// family defined this way satisfies P_{x+th,h}(u) = P_{x,h}(u + t)
/// identically. That makes the base-point mismatch probability an exact
/// slot-average of the full mismatch probability, which the measurement
/// module relies on; a per-line tie-break would lose this under ties.
/// Agreement counts are shift-invariant, so `fit.agreement` applies to every
/// member of the orbit.
pub fn orbit_line_fit(
    field: &Field,
    f: &crate::poly::FunctionTable,
    x: &[Fe],
    h: &[Fe],
    d: u32,
    backend: Backend,
) -> OrbitFit {
    assert_eq!(f.m(), x.len(), "table and line arity mismatch");
    let q = field.q() as usize;
    if h.iter().all(|c| c.is_zero()) {
        // Degenerate orbit: the unique best fit of a constant vector is
        // that constant.
        let c = f.value_at(point_index(field, x));
        return OrbitFit {
            fit: LineFit {
                poly: UniPoly::constant(c),
                agreement: q as u32,
                degree_bound: d,
            },
            shift: field.zero(),
        };
    }
    // Point index of x + t h for every slot t.
    let mut idx = Vec::with_capacity(q);
    for t in field.elements() {
        let mut acc = 0u64;
        for j in (0..x.len()).rev() {
            let coord = field.add(x[j], field.mul(t, h[j]));
            acc = acc * field.q() + coord.index();
        }
        idx.push(acc);
    }
    let t0_slot = (0..q).min_by_key(|&t| idx[t]).unwrap();
    let t0 = field.el(t0_slot as u64);
    // Values in the canonical parametrization v*(u) = f(x* + u h), where
    // x* = x + t0 h, so v*(u) = f at slot t0 + u of the original indexing.
    let values: Vec<Fe> = field
        .elements()
        .map(|u| f.value_at(idx[field.add(t0, u).index() as usize]))
        .collect();
    let fit = fit_line_poly_or_exact(field, &values, d, backend);
    OrbitFit {
        fit,
        shift: field.neg(t0),
    }
}

/// Exhaustive maximum-agreement search. Every polynomial of degree <= d with
/// agreement >= d+1 is the interpolant of some (d+1)-subset of positions, and
/// any interpolant has agreement >= d+1, so scanning all subsets finds the
/// maximum. Ties break toward the lexicographically smallest padded
/// coefficient index vector.
fn fit_exact(field: &Field, points: &[Fe], values: &[Fe], d: u32) -> LineFit {
    let n = points.len();
    let k = d as usize + 1;
    let mut best: Option<(u32, Vec<u64>, UniPoly)> = None;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut sub_pts = vec![field.zero(); k];
    let mut sub_vals = vec![field.zero(); k];
    loop {
        for (slot, &i) in idx.iter().enumerate() {
            sub_pts[slot] = points[i];
            sub_vals[slot] = values[i];
        }
        let cand = interpolate(field, &sub_pts, &sub_vals).unwrap();
        let a = count_agreement(field, &cand, values);
        let better = match &best {
            None => true,
            Some((ba, bkey, _)) => {
                a > *ba || (a == *ba && cand.padded_indices(k) < *bkey)
            }
        };
        if better {
            let key = cand.padded_indices(k);
            best = Some((a, key, cand));
        }
        // Advance the combination in lexicographic order.
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    let (agreement, _, poly) = best.unwrap();
    LineFit {
        poly,
        agreement,
        degree_bound: d,
    }
}

/// Berlekamp-Welch unique decoding: finds the polynomial of degree <= d
/// agreeing with the values on more than (q+d)/2 positions, if one exists.
///
/// Solves E(t) v_t = N(t) for monic E of degree e = floor((q-d-1)/2) and N of
/// degree <= d+e; any solution yields the codeword polynomial as N/E when at
/// most e positions are in error.
fn berlekamp_welch(field: &Field, points: &[Fe], values: &[Fe], d: u32) -> Option<LineFit> {
    let q = points.len();
    let e = (q - d as usize - 1) / 2;
    let ne = e; // unknown lower coefficients of monic E
    let nn = d as usize + e + 1; // coefficients of N
    let cols = ne + nn;
    // Augmented matrix rows: sum_i E_i (v t^i) - sum_j N_j t^j = -v t^e.
    let mut mat: Vec<Vec<Fe>> = Vec::with_capacity(q);
    for (idx, (&t, &v)) in points.iter().zip(values).enumerate() {
        let _ = idx;
        let mut row = Vec::with_capacity(cols + 1);
        let mut tp = field.one();
        for _ in 0..ne {
            row.push(field.mul(v, tp));
            tp = field.mul(tp, t);
        }
        // tp is now t^e.
        let rhs = field.neg(field.mul(v, tp));
        let mut tq = field.one();
        for _ in 0..nn {
            row.push(field.neg(tq));
            tq = field.mul(tq, t);
        }
        row.push(rhs);
        mat.push(row);
    }
    let solution = solve_linear(field, &mut mat, cols)?;
    let mut e_coeffs: Vec<Fe> = solution[..ne].to_vec();
    e_coeffs.push(field.one());
    let e_poly = UniPoly::from_coeffs(e_coeffs);
    let n_poly = UniPoly::from_coeffs(solution[ne..].to_vec());
    let (cand, rem) = n_poly.divrem(field, &e_poly);
    if !rem.is_zero() {
        return None;
    }
    if cand.coeffs().len() > d as usize + 1 {
        return None;
    }
    let a = count_agreement(field, &cand, values);
    if 2 * a as u64 > (q as u64) + d as u64 {
        Some(LineFit {
            poly: cand,
            agreement: a,
            degree_bound: d,
        })
    } else {
        None
    }
}

/// Gaussian elimination on an augmented matrix; returns any solution (free
/// variables zero) or None if inconsistent.
#[allow(clippy::needless_range_loop)]
fn solve_linear(field: &Field, mat: &mut [Vec<Fe>], cols: usize) -> Option<Vec<Fe>> {
    let rows = mat.len();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = field.inv(mat[r][c]).unwrap();
        for j in c..=cols {
            mat[r][j] = field.mul(mat[r][j], inv);
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c];
                for j in c..=cols {
                    let t = field.mul(factor, mat[r][j]);
                    mat[i][j] = field.sub(mat[i][j], t);
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if any zero row has nonzero RHS.
    for i in r..rows {
        if mat[i][..cols].iter().all(|v| v.is_zero()) && !mat[i][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![field.zero(); cols];
    for (row, &c) in pivot_col_of_row.iter().enumerate() {
        sol[c] = mat[row][cols];
    }
    Some(sol)
}
