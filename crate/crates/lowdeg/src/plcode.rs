//! The polynomial-line code: messages are m-variate polynomials of total
//! degree at most d; the codeword stores, for every line (x, h) of F^m, the
//! d+1 coefficients of the restriction to that line.
//!
//! The two-query local test samples a uniformly random point y, two
//! uniformly random lines through y, and accepts iff the two stored letter
//! polynomials agree at y. The decoder reconstructs each point value as the
//! plurality of letter evaluations over all lines through the point, then
//! interpolates and re-encodes.

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::frac::{frac, Frac};
use crate::poly::{
    interpolate, interpolate_table, point_from_index, point_index, pow_u128, Degree,
    FunctionTable, MultiPoly,
};
use crate::report::{ReportParams, TestReport};
use crate::rng::{choose_distinct, substream};

#[derive(Debug, Error, PartialEq)]
pub enum PlcError {
    #[error("message arity {got} does not match the code arity {want}")]
    ArityMismatch { got: usize, want: usize },
    #[error("message total degree {got} exceeds the bound {bound}")]
    DegreeTooLarge { got: Degree, bound: u32 },
    #[error("degree bound must satisfy d < q: d = {d}, q = {q}")]
    BadDegreeBound { d: u32, q: u64 },
    #[error("letter budget exceeded: {needed} letters with budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("corruption fraction {0} outside [0, 1]")]
    BadFraction(f64),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("decoding failed: {0}")]
    DecodeFailure(String),
}

/// Code parameters for message arity m and degree bound d over a field.
#[derive(Debug, Clone, Serialize)]
pub struct CodeParams {
    pub p: u64,
    pub s: u32,
    pub m: usize,
    pub d: u32,
    /// Message size in field elements: C(m+d, d).
    pub k_elems: String,
    /// Message size in code letters: C(m+d, d) / (d+1).
    pub k_letters: String,
    /// Number of letters: q^(2m).
    pub n_letters: String,
    /// Bits per letter: (d+1) ceil(log2 q).
    pub alphabet_bits: u64,
    /// Analytic lower bound 1 - 2d/q on the relative letter distance between
    /// codewords of distinct messages.
    pub relative_distance_bound: String,
    /// Optional shape exponents (d ~ m^c1, q ~ d^c2) echoed for archival.
    pub c1: Option<f64>,
    pub c2: Option<f64>,
}

/// Exact binomial C(n, k) over big integers.
fn big_binomial(n: u64, k: u64) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

pub fn code_params(
    field: &Field,
    m: usize,
    d: u32,
    c1: Option<f64>,
    c2: Option<f64>,
) -> Result<CodeParams, PlcError> {
    let q = field.q();
    if d as u64 >= q {
        return Err(PlcError::BadDegreeBound { d, q });
    }
    let k_elems = big_binomial(m as u64 + d as u64, d as u64);
    let k_letters = Ratio::new(
        num_bigint::BigInt::from(k_elems.clone()),
        num_bigint::BigInt::from(d + 1),
    );
    let n: u128 = pow_u128(q, 2 * m as u32);
    let bits_per_element = 64 - (q - 1).leading_zeros() as u64;
    let distance_bound = Frac::new(1, 1) - frac(2 * d as u64, q);
    Ok(CodeParams {
        p: field.p(),
        s: field.s(),
        m,
        d,
        k_elems: k_elems.to_string(),
        k_letters: format!("{}/{}", k_letters.numer(), k_letters.denom()),
        n_letters: n.to_string(),
        alphabet_bits: (d as u64 + 1) * bits_per_element,
        relative_distance_bound: crate::frac::frac_str(&distance_bound),
        c1,
        c2,
    })
}

/// A codeword: one coefficient vector of length d+1 per line, indexed by
/// line index = point_index(x) * q^m + point_index(h).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub m: usize,
    pub d: u32,
    pub letters: Vec<Vec<Fe>>,
}

impl Codeword {
    pub fn n(&self) -> u64 {
        self.letters.len() as u64
    }

    /// Evaluates the letter polynomial at parameter t.
    pub fn eval_letter(&self, field: &Field, letter: u64, t: Fe) -> Fe {
        let coeffs = &self.letters[letter as usize];
        let mut acc = field.zero();
        for &c in coeffs.iter().rev() {
            acc = field.add(field.mul(acc, t), c);
        }
        acc
    }

    /// Hamming distance in letters.
    pub fn letter_distance(&self, other: &Codeword) -> u64 {
        assert!(self.m == other.m && self.d == other.d && self.n() == other.n());
        self.letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| a != b)
            .count() as u64
    }
}

/// Index of the line (x, h) in codeword letter order.
pub fn line_index(field: &Field, m: usize, x_idx: u64, h_idx: u64) -> u64 {
    x_idx * pow_u128(field.q(), m as u32) as u64 + h_idx
}

/// Encodes a message polynomial: letter (x, h) holds the d+1 coefficients of
/// the exact restriction of the message to that line, zero-padded.
pub fn encode(
    field: &Field,
    message: &MultiPoly,
    m: usize,
    d: u32,
    budget: u64,
) -> Result<Codeword, PlcError> {
    let q = field.q();
    if d as u64 >= q {
        return Err(PlcError::BadDegreeBound { d, q });
    }
    if message.m() != m {
        return Err(PlcError::ArityMismatch {
            got: message.m(),
            want: m,
        });
    }
    if message.total_degree() > Degree::Finite(d as u64) {
        return Err(PlcError::DegreeTooLarge {
            got: message.total_degree(),
            bound: d,
        });
    }
    let np = pow_u128(q, m as u32);
    let n = np * np;
    if n > budget as u128 {
        return Err(PlcError::BudgetExceeded {
            needed: n,
            budget,
        });
    }
    let np = np as u64;
    let table = message.table(field).expect("table within budget");
    // The restriction of a total-degree-<=d polynomial to any line has
    // degree <= d, so interpolating its first d+1 values is exact.
    let pts: Vec<Fe> = field.elements().take(d as usize + 1).collect();
    let mut letters = Vec::with_capacity(n as usize);
    for xi in 0..np {
        let x = point_from_index(field, xi, m);
        for hi in 0..np {
            let h = point_from_index(field, hi, m);
            let vals: Vec<Fe> = pts
                .iter()
                .map(|&t| {
                    let mut idx = 0u64;
                    for j in (0..m).rev() {
                        let coord = field.add(x[j], field.mul(t, h[j]));
                        idx = idx * q + coord.index();
                    }
                    table.value_at(idx)
                })
                .collect();
            let poly = interpolate(field, &pts, &vals).unwrap();
            let mut coeffs = poly.coeffs().to_vec();
            coeffs.resize(d as usize + 1, field.zero());
            letters.push(coeffs);
        }
    }
    Ok(Codeword { m, d, letters })
}

/// One sampled invocation of the two-query local test.
#[derive(Debug, Clone)]
pub struct LocalTestSample {
    pub y: Vec<Fe>,
    pub h1: Vec<Fe>,
    pub h2: Vec<Fe>,
    pub t1: Fe,
    pub t2: Fe,
    /// Letter indices of the two lines l_i = (y - t_i h_i, h_i), which both
    /// pass through y at parameters t1 and t2 respectively.
    pub letter1: u64,
    pub letter2: u64,
}

/// Samples y, two directions, and two parameters uniformly; the queried
/// lines are the ones through y realizing those parameters.
pub fn sample_local_test(field: &Field, m: usize, rng: &mut impl Rng) -> LocalTestSample {
    let q = field.q();
    let np = pow_u128(q, m as u32) as u64;
    let y = point_from_index(field, rng.gen_range(0..np), m);
    let h1 = point_from_index(field, rng.gen_range(0..np), m);
    let h2 = point_from_index(field, rng.gen_range(0..np), m);
    let t1 = field.el(rng.gen_range(0..q));
    let t2 = field.el(rng.gen_range(0..q));
    let base = |h: &[Fe], t: Fe| -> u64 {
        let x: Vec<Fe> = y
            .iter()
            .zip(h)
            .map(|(&yc, &hc)| field.sub(yc, field.mul(t, hc)))
            .collect();
        point_index(field, &x)
    };
    let letter1 = line_index(field, m, base(&h1, t1), point_index(field, &h1));
    let letter2 = line_index(field, m, base(&h2, t2), point_index(field, &h2));
    LocalTestSample {
        y,
        h1,
        h2,
        t1,
        t2,
        letter1,
        letter2,
    }
}

/// Runs the two-query predicate on a word: accept iff the two letters agree
/// at the common point. Exactly two letter reads.
pub fn local_test_once(field: &Field, word: &Codeword, rng: &mut impl Rng) -> bool {
    let s = sample_local_test(field, word.m, rng);
    word.eval_letter(field, s.letter1, s.t1) == word.eval_letter(field, s.letter2, s.t2)
}

/// Seeded Monte-Carlo rejection rate of the local test.
pub fn local_test(
    field: &Field,
    word: &Codeword,
    trials: u64,
    seed: u64,
) -> Result<TestReport, PlcError> {
    if trials == 0 {
        return Err(PlcError::NoTrials);
    }
    let mut rejections = 0u64;
    for i in 0..trials {
        let mut rng = substream(seed, i);
        if !local_test_once(field, word, &mut rng) {
            rejections += 1;
        }
    }
    Ok(TestReport::from_counts(
        trials,
        rejections,
        None,
        seed,
        ReportParams::new(field, word.m, word.d, crate::lines::Backend::Decode),
    ))
}

/// Exact rejection probability by enumerating the whole sample space
/// (y, h1, h2, t1, t2); q^(3m+2) cells, budget-gated.
pub fn local_test_exhaustive(
    field: &Field,
    word: &Codeword,
    budget: u64,
) -> Result<Frac, PlcError> {
    let q = field.q();
    let m = word.m;
    let np = pow_u128(q, m as u32);
    let space = np * np * np * q as u128 * q as u128;
    if space > budget as u128 {
        return Err(PlcError::BudgetExceeded {
            needed: space,
            budget,
        });
    }
    let np = np as u64;
    let mut rejections: u128 = 0;
    for yi in 0..np {
        let y = point_from_index(field, yi, m);
        // Histogram of the value seen at y over all (h, t) pairs; the two
        // queries are independent draws from it.
        let mut counts = vec![0u64; q as usize];
        for hi in 0..np {
            let h = point_from_index(field, hi, m);
            for t in field.elements() {
                let x: Vec<Fe> = y
                    .iter()
                    .zip(&h)
                    .map(|(&yc, &hc)| field.sub(yc, field.mul(t, hc)))
                    .collect();
                let letter = line_index(field, m, point_index(field, &x), hi);
                counts[word.eval_letter(field, letter, t).index() as usize] += 1;
            }
        }
        let total: u64 = np * q;
        let agree: u128 = counts.iter().map(|&c| c as u128 * c as u128).sum();
        rejections += (total as u128 * total as u128) - agree;
    }
    let den = np as u128 * np as u128 * np as u128 * q as u128 * q as u128;
    Ok(Frac::new(rejections as i128, den as i128))
}

/// Replaces exactly round(fraction * n) distinct letters with uniformly
/// random coefficient vectors different from the originals.
pub fn corrupt_codeword(
    field: &Field,
    word: &Codeword,
    fraction: f64,
    seed: u64,
) -> Result<Codeword, PlcError> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(PlcError::BadFraction(fraction));
    }
    let n = word.n();
    let k = (fraction * n as f64).round() as u64;
    let mut out = word.clone();
    let mut rng = substream(seed, 0);
    for idx in choose_distinct(&mut rng, n, k) {
        let old = &word.letters[idx as usize];
        loop {
            let fresh: Vec<Fe> = (0..=word.d)
                .map(|_| field.el(rng.gen_range(0..field.q())))
                .collect();
            if &fresh != old {
                out.letters[idx as usize] = fresh;
                break;
            }
        }
    }
    Ok(out)
}

/// Decodes by plurality point reconstruction: the value at x is the most
/// common evaluation at x over all lines through x (ties to the smallest
/// canonical index), then the table is interpolated, degree-checked, and
/// re-encoded; success requires the re-encoding to match the word on more
/// than half the letters.
pub fn decode(field: &Field, word: &Codeword, budget: u64) -> Result<MultiPoly, PlcError> {
    let q = field.q();
    let m = word.m;
    let np = pow_u128(q, m as u32);
    if np * np > budget as u128 {
        return Err(PlcError::BudgetExceeded {
            needed: np * np,
            budget,
        });
    }
    let np = np as u64;
    let mut values = Vec::with_capacity(np as usize);
    for xi in 0..np {
        let x = point_from_index(field, xi, m);
        let mut counts = vec![0u64; q as usize];
        // Lines through x: for every direction h and parameter t, the line
        // based at x - t h passes through x at t.
        for hi in 0..np {
            let h = point_from_index(field, hi, m);
            for t in field.elements() {
                let base: Vec<Fe> = x
                    .iter()
                    .zip(&h)
                    .map(|(&xc, &hc)| field.sub(xc, field.mul(t, hc)))
                    .collect();
                let letter = line_index(field, m, point_index(field, &base), hi);
                counts[word.eval_letter(field, letter, t).index() as usize] += 1;
            }
        }
        let best = counts
            .iter()
            .enumerate()
            .max_by_key(|&(v, &c)| (c, std::cmp::Reverse(v)))
            .unwrap()
            .0;
        values.push(field.el(best as u64));
    }
    let table = FunctionTable::new(field, m, values).unwrap();
    let poly = interpolate_table(field, &table);
    if poly.total_degree() > Degree::Finite(word.d as u64) {
        return Err(PlcError::DecodeFailure(format!(
            "reconstructed total degree {} exceeds {}",
            poly.total_degree(),
            word.d
        )));
    }
    let reencoded = encode(field, &poly, m, word.d, budget)?;
    let dist = reencoded.letter_distance(word);
    if 2 * dist >= word.n() {
        return Err(PlcError::DecodeFailure(format!(
            "re-encoding differs on {dist} of {} letters",
            word.n()
        )));
    }
    Ok(poly)
}
