//! Univariate and multivariate polynomial algebra over a [`Field`]:
//! evaluation, degrees, exponent reduction under t^q = t, Lagrange/Newton
//! interpolation, dense function tables, and exact distances.

use std::collections::BTreeMap;

use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::frac::{frac, Frac};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("interpolation points must be pairwise distinct")]
    DuplicatePoints,
    #[error("points and values must have equal length")]
    LengthMismatch,
    #[error("table length {got} does not match q^m = {want}")]
    TableLengthMismatch { got: usize, want: u128 },
    #[error("table of q^m = {0} points exceeds the supported size")]
    TableTooLarge(u128),
}

/// Degree with a dedicated minus-infinity value for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// q^m as u128, for budget checks.
pub fn pow_u128(q: u64, m: u32) -> u128 {
    (0..m).fold(1u128, |acc, _| acc * q as u128)
}

/// Index of a point of F^m: sum of index(x_j) * q^j.
pub fn point_index(field: &Field, point: &[Fe]) -> u64 {
    point
        .iter()
        .rev()
        .fold(0u64, |acc, &x| acc * field.q() + x.index())
}

/// Point of F^m with the given index.
pub fn point_from_index(field: &Field, mut idx: u64, m: usize) -> Vec<Fe> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(field.el(idx % field.q()));
        idx /= field.q();
    }
    out
}

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Univariate polynomial, coefficients low-to-high with no trailing zeros
/// (the zero polynomial has an empty coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Fe>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    /// Normalizes by dropping trailing zero coefficients.
    pub fn from_coeffs(coeffs: Vec<Fe>) -> UniPoly {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Fe) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() as u64 - 1)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, t: Fe) -> Fe {
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, t), c);
        }
        acc
    }

    /// Coefficient indices padded with zeros to `len`, the deterministic
    /// tie-break key for equal-agreement fits.
    pub fn padded_indices(&self, len: usize) -> Vec<u64> {
        let mut out = vec![0u64; len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = c.index();
        }
        out
    }

    /// The polynomial u -> self(u + c), computed by evaluation and
    /// re-interpolation on deg+1 points.
    pub fn shifted(&self, field: &Field, c: Fe) -> UniPoly {
        if self.coeffs.len() <= 1 || c.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let points: Vec<Fe> = field.elements().take(n).collect();
        let values: Vec<Fe> = points
            .iter()
            .map(|&u| self.eval(field, field.add(u, c)))
            .collect();
        interpolate(field, &points, &values).unwrap()
    }

    pub fn add(&self, field: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or_else(|| field.zero());
            let b = other.coeffs.get(i).copied().unwrap_or_else(|| field.zero());
            out.push(field.add(a, b));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, field: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or_else(|| field.zero());
            let b = other.coeffs.get(i).copied().unwrap_or_else(|| field.zero());
            out.push(field.sub(a, b));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn mul(&self, field: &Field, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, field: &Field, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = field.inv(*divisor.coeffs.last().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), UniPoly::from_coeffs(rem));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        while rem.len() > dd {
            let lead = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if !lead.is_zero() {
                let f = field.mul(lead, lead_inv);
                quot[shift] = f;
                for (j, &c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] = field.sub(rem[shift + j], field.mul(f, c));
                }
            }
            rem.pop();
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }
}

/// Unique polynomial of degree < n through n point/value pairs, by Newton's
/// divided differences.
pub fn interpolate(field: &Field, points: &[Fe], values: &[Fe]) -> Result<UniPoly, PolyError> {
    if points.len() != values.len() {
        return Err(PolyError::LengthMismatch);
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(PolyError::DuplicatePoints);
            }
        }
    }
    if n == 0 {
        return Ok(UniPoly::zero());
    }
    let mut dd: Vec<Fe> = values.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = field.sub(dd[i], dd[i - 1]);
            let den = field.sub(points[i], points[i - k]);
            dd[i] = field.mul(num, field.inv(den).unwrap());
        }
    }
    // Expand the Newton form to monomial coefficients.
    let mut acc: Vec<Fe> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // acc = acc * (x - points[i]) + dd[i]
        acc.insert(0, field.zero());
        let neg_x = field.neg(points[i]);
        for j in 0..acc.len() - 1 {
            let t = field.mul(acc[j + 1], neg_x);
            acc[j] = field.add(acc[j], t);
        }
        acc[0] = field.add(acc[0], dd[i]);
    }
    Ok(UniPoly::from_coeffs(acc))
}

// ---------------------------------------------------------------------------
// Multivariate polynomials
// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    m: usize,
    terms: BTreeMap<Vec<u32>, Fe>,
}

impl MultiPoly {
    pub fn zero(m: usize) -> MultiPoly {
        MultiPoly {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: usize, exps: Vec<u32>, coeff: Fe) -> MultiPoly {
        assert_eq!(exps.len(), m, "exponent vector arity mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        MultiPoly { m, terms }
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Vec<u32>, Fe)>) -> MultiPoly {
        let mut map: BTreeMap<Vec<u32>, Fe> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), m, "exponent vector arity mismatch");
            if !c.is_zero() {
                map.insert(e, c);
            }
        }
        MultiPoly { m, terms: map }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Fe)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, field: &Field, point: &[Fe]) -> Fe {
        assert_eq!(point.len(), self.m, "evaluation point arity mismatch");
        let mut acc = field.zero();
        for (exps, &coeff) in &self.terms {
            let mut term = coeff;
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = field.mul(term, field.pow(point[j], e as u64));
                }
            }
            acc = field.add(acc, term);
        }
        acc
    }

    /// Largest sum of exponents over stored terms.
    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u64).sum::<u64>())
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    /// Largest single-variable exponent over stored terms.
    pub fn max_degree(&self) -> Degree {
        self.terms
            .keys()
            .filter_map(|e| e.iter().max())
            .max()
            .map_or(Degree::NegInf, |&e| Degree::Finite(e as u64))
    }

    /// Rewrites every exponent e >= q to e - (q-1) until it lands in
    /// [1, q-1]. This preserves the polynomial as a function on all of F^m
    /// (t^q = t, including t = 0, because positive exponents stay positive).
    pub fn reduce(&self, field: &Field) -> MultiPoly {
        let q = field.q() as u32;
        let mut map: BTreeMap<Vec<u32>, Fe> = BTreeMap::new();
        for (exps, &coeff) in &self.terms {
            let new_exps: Vec<u32> = exps
                .iter()
                .map(|&e| {
                    let mut e = e;
                    while e >= q {
                        e -= q - 1;
                    }
                    e
                })
                .collect();
            let entry = map.entry(new_exps).or_insert_with(|| field.zero());
            *entry = field.add(*entry, coeff);
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { m: self.m, terms: map }
    }

    /// Dense table of values over all of F^m.
    pub fn table(&self, field: &Field) -> Result<FunctionTable, PolyError> {
        let len = pow_u128(field.q(), self.m as u32);
        if len > (1 << 30) {
            return Err(PolyError::TableTooLarge(len));
        }
        let values = (0..len as u64)
            .map(|i| self.eval(field, &point_from_index(field, i, self.m)))
            .collect();
        FunctionTable::new(field, self.m, values)
    }

    /// Uniformly random coefficients on every monomial of total degree <= d.
    pub fn random_total_degree_at_most(
        field: &Field,
        m: usize,
        d: u32,
        rng: &mut impl Rng,
    ) -> MultiPoly {
        let mut terms = Vec::new();
        for exps in monomials_up_to(m, d) {
            let c = field.el(rng.gen_range(0..field.q()));
            terms.push((exps, c));
        }
        MultiPoly::from_terms(m, terms)
    }
}

/// All exponent vectors of arity m with total degree at most d, in
/// lexicographic order.
pub fn monomials_up_to(m: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    rec(&mut out, &mut cur, 0, d);
    out
}

// ---------------------------------------------------------------------------
// Function tables
// ---------------------------------------------------------------------------

/// Dense table of a function F^m -> F, indexed by point index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    m: usize,
    q: u64,
    key: u32,
    values: Vec<Fe>,
}

impl FunctionTable {
    pub fn new(field: &Field, m: usize, values: Vec<Fe>) -> Result<FunctionTable, PolyError> {
        let want = pow_u128(field.q(), m as u32);
        if want > (1 << 30) {
            return Err(PolyError::TableTooLarge(want));
        }
        if values.len() as u128 != want {
            return Err(PolyError::TableLengthMismatch {
                got: values.len(),
                want,
            });
        }
        for &v in &values {
            assert!(v.key() == field.key(), "table value from a different field");
        }
        Ok(FunctionTable {
            m,
            q: field.q(),
            key: field.key(),
            values,
        })
    }

    pub fn constant(field: &Field, m: usize, c: Fe) -> FunctionTable {
        let len = pow_u128(field.q(), m as u32) as usize;
        FunctionTable::new(field, m, vec![c; len]).unwrap()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn key(&self) -> u32 {
        self.key
    }

    #[inline]
    pub fn value_at(&self, point_idx: u64) -> Fe {
        self.values[point_idx as usize]
    }

    pub fn value(&self, field: &Field, point: &[Fe]) -> Fe {
        assert_eq!(point.len(), self.m, "point arity mismatch");
        self.value_at(point_index(field, point))
    }

    pub fn values(&self) -> &[Fe] {
        &self.values
    }

    pub fn set_value_at(&mut self, point_idx: u64, v: Fe) {
        assert!(v.key() == self.key, "value from a different field");
        self.values[point_idx as usize] = v;
    }
}

/// Exact fraction of points where the two tables disagree.
pub fn distance(a: &FunctionTable, b: &FunctionTable) -> Frac {
    assert!(
        a.m == b.m && a.q == b.q && a.key == b.key,
        "distance requires tables of the same shape over the same field"
    );
    let diff = a
        .values
        .iter()
        .zip(&b.values)
        .filter(|(x, y)| x != y)
        .count() as u64;
    frac(diff, a.values.len() as u64)
}

/// The unique reduced polynomial with per-variable degree <= q-1 that agrees
/// with the table everywhere, by iterated per-axis interpolation.
pub fn interpolate_table(field: &Field, f: &FunctionTable) -> MultiPoly {
    assert!(f.key == field.key(), "table from a different field");
    let q = field.q() as usize;
    let m = f.m;
    let points: Vec<Fe> = field.elements().collect();
    let mut tensor: Vec<Fe> = f.values.clone();
    let mut slice_vals = vec![field.zero(); q];
    for axis in 0..m {
        let stride = q.pow(axis as u32);
        let block = stride * q;
        let blocks = tensor.len() / block;
        for bi in 0..blocks {
            for lo in 0..stride {
                let base = bi * block + lo;
                for (t, val) in slice_vals.iter_mut().enumerate() {
                    *val = tensor[base + t * stride];
                }
                let poly = interpolate(field, &points, &slice_vals).unwrap();
                let coeffs = poly.coeffs();
                for t in 0..q {
                    tensor[base + t * stride] = coeffs
                        .get(t)
                        .copied()
                        .unwrap_or_else(|| field.zero());
                }
            }
        }
    }
    let mut terms = Vec::new();
    for (i, &c) in tensor.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut idx = i;
        let mut exps = Vec::with_capacity(m);
        for _ in 0..m {
            exps.push((idx % q) as u32);
            idx /= q;
        }
        terms.push((exps, c));
    }
    MultiPoly::from_terms(m, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5() -> Field {
        Field::new(5, 1).unwrap()
    }

    fn gf4() -> Field {
        Field::new(2, 2).unwrap()
    }

    fn poly(field: &Field, coeffs: &[u64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| field.el(c)).collect())
    }

    #[test]
    fn uni_eval_examples() {
        let f = gf5();
        // (t + 1) at t = 4 -> 0.
        assert_eq!(poly(&f, &[1, 1]).eval(&f, f.el(4)), f.zero());
        assert_eq!(UniPoly::zero().eval(&f, f.el(3)), f.zero());
        // t^2 + t + 1 at omega over GF(4): omega^2 = omega + 1, total 0.
        let f4 = gf4();
        let p = poly(&f4, &[1, 1, 1]);
        assert_eq!(p.eval(&f4, f4.el(2)), f4.zero());
    }

    #[test]
    fn degree_normalization() {
        let f = gf5();
        let p = UniPoly::from_coeffs(vec![f.el(2), f.zero(), f.zero()]);
        assert_eq!(p.degree(), Degree::Finite(0));
        assert_eq!(UniPoly::zero().degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
    }

    #[test]
    fn interpolate_examples() {
        let f = gf5();
        let points: Vec<Fe> = f.elements().collect();
        // Values of t + 1.
        let values: Vec<Fe> = [1, 2, 3, 4, 0].iter().map(|&v| f.el(v)).collect();
        let p = interpolate(&f, &points, &values).unwrap();
        assert_eq!(p, poly(&f, &[1, 1]));
        // Single pair -> constant.
        let c = interpolate(&f, &[f.zero()], &[f.el(3)]).unwrap();
        assert_eq!(c, UniPoly::constant(f.el(3)));
        // Values of t^2 on three points round-trip.
        let pts = [f.el(0), f.el(1), f.el(2)];
        let vals = [f.el(0), f.el(1), f.el(4)];
        let p2 = interpolate(&f, &pts, &vals).unwrap();
        assert_eq!(p2, poly(&f, &[0, 0, 1]));
        assert_eq!(
            interpolate(&f, &[f.el(1), f.el(1)], &[f.el(0), f.el(0)]),
            Err(PolyError::DuplicatePoints)
        );
    }

    #[test]
    fn interpolate_reproduces_inputs_and_degree_bound() {
        let f = Field::new(7, 1).unwrap();
        let points: Vec<Fe> = f.elements().collect();
        let mut rng = crate::rng::substream(42, 0);
        for _ in 0..50 {
            use rand::Rng;
            let n = rng.gen_range(1..=7usize);
            let values: Vec<Fe> = (0..n).map(|_| f.el(rng.gen_range(0..7))).collect();
            let p = interpolate(&f, &points[..n], &values).unwrap();
            assert!(p.degree() < Degree::Finite(n as u64));
            for i in 0..n {
                assert_eq!(p.eval(&f, points[i]), values[i]);
            }
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let f = gf5();
        let a = poly(&f, &[1, 2, 3, 4]);
        let b = poly(&f, &[2, 1]);
        let (q, r) = a.divrem(&f, &b);
        let back = q.mul(&f, &b).add(&f, &r);
        assert_eq!(back, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn multi_eval_examples() {
        let f = gf5();
        // x1 + 2 x2 at (1, 1) -> 3.
        let g = MultiPoly::from_terms(
            2,
            [(vec![1, 0], f.el(1)), (vec![0, 1], f.el(2))],
        );
        assert_eq!(g.eval(&f, &[f.el(1), f.el(1)]), f.el(3));
        // Constant 7 = 2 mod 5.
        let c = MultiPoly::monomial(2, vec![0, 0], f.el(2));
        assert_eq!(c.eval(&f, &[f.el(4), f.el(0)]), f.el(2));
        // x1^2 x2^2 at (omega, omega) over GF(4) -> omega.
        let f4 = gf4();
        let h = MultiPoly::monomial(2, vec![2, 2], f4.one());
        assert_eq!(h.eval(&f4, &[f4.el(2), f4.el(2)]), f4.el(2));
    }

    #[test]
    fn degrees() {
        let f = gf5();
        let g = MultiPoly::monomial(2, vec![2, 2], f.one());
        assert_eq!(g.total_degree(), Degree::Finite(4));
        assert_eq!(g.max_degree(), Degree::Finite(2));
        assert_eq!(MultiPoly::zero(2).total_degree(), Degree::NegInf);
        let h = MultiPoly::from_terms(
            2,
            [(vec![1, 0], f.one()), (vec![0, 3], f.one())],
        );
        assert_eq!(h.max_degree(), Degree::Finite(3));
    }

    #[test]
    fn reduce_preserves_function_values() {
        // x^5 -> x over GF(5); x^4 unchanged.
        let f = gf5();
        let p5 = MultiPoly::monomial(1, vec![5], f.one());
        assert_eq!(p5.reduce(&f), MultiPoly::monomial(1, vec![1], f.one()));
        let p4 = MultiPoly::monomial(1, vec![4], f.one());
        assert_eq!(p4.reduce(&f), p4);
        // x1^4 x2^4 over GF(4) reduces with exponents 4 -> 1; verify equality
        // as functions on all 16 points.
        let f4 = gf4();
        let g = MultiPoly::monomial(2, vec![4, 4], f4.one());
        let r = g.reduce(&f4);
        assert_eq!(r.max_degree(), Degree::Finite(1));
        for idx in 0..16 {
            let pt = point_from_index(&f4, idx, 2);
            assert_eq!(g.eval(&f4, &pt), r.eval(&f4, &pt));
        }
    }

    #[test]
    fn interpolate_table_examples() {
        let f = gf5();
        let g = MultiPoly::from_terms(
            2,
            [(vec![1, 0], f.el(1)), (vec![0, 1], f.el(2))],
        );
        let table = g.table(&f).unwrap();
        assert_eq!(interpolate_table(&f, &table), g);
        let zero = MultiPoly::zero(2).table(&f).unwrap();
        assert!(interpolate_table(&f, &zero).is_zero());
    }

    #[test]
    fn interpolate_table_roundtrip_random() {
        // Identity on reduced polynomials with max degree <= q-1, and the
        // interpolant of any table evaluates back to the table.
        let f = Field::new(3, 1).unwrap();
        let mut rng = crate::rng::substream(7, 0);
        for _ in 0..30 {
            use rand::Rng;
            let vals: Vec<Fe> = (0..9).map(|_| f.el(rng.gen_range(0..3))).collect();
            let t = FunctionTable::new(&f, 2, vals).unwrap();
            let g = interpolate_table(&f, &t);
            assert!(g.max_degree() <= Degree::Finite(2));
            assert_eq!(g.table(&f).unwrap(), t);
        }
    }

    #[test]
    fn distance_examples() {
        let f = gf5();
        let g = MultiPoly::monomial(2, vec![1, 0], f.one());
        let t1 = g.table(&f).unwrap();
        let mut t2 = t1.clone();
        assert_eq!(distance(&t1, &t2), frac(0, 1));
        t2.set_value_at(7, f.add(t2.value_at(7), f.one()));
        assert_eq!(distance(&t1, &t2), frac(1, 25));
        // Shift every value by 1.
        let shifted = FunctionTable::new(
            &f,
            2,
            t1.values().iter().map(|&v| f.add(v, f.one())).collect(),
        )
        .unwrap();
        assert_eq!(distance(&t1, &shifted), frac(1, 1));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(monomials_up_to(2, 2).len(), 6);
    }
}
