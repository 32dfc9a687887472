//! The exact characterization of total degree by line restrictions: the
//! all-lines test, its executable census at tiny parameters, the tightness
//! counterexample, and the binomial divisibility utility behind the proof.
//!
//! A function g passes the exact line test at degree d when every line
//! restriction t -> g(x + th) is computed by a polynomial of degree at most
//! d. When q - q/p - 1 >= d this forces total degree at most d, and the
//! bound is tight: for q - q/p - 1 < d < q the bivariate function
//! (x1^(p-1) x2)^(q/p) passes the test yet has total degree q.

use serde::Serialize;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::lines::{fit_line_poly, interpolate_window_agreement, Backend, Line};
use crate::poly::{
    interpolate_table, monomials_up_to, point_from_index, pow_u128, Degree, FunctionTable,
    MultiPoly,
};
use crate::rng::substream;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactCharError {
    #[error("exhaustive budget exceeded: {needed} needed, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("census requires q^m <= 9 and q <= 3, got q = {q}, m = {m}")]
    CensusTooLarge { q: u64, m: usize },
    #[error("binomial arguments must satisfy r <= n")]
    InvalidRange,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("sweep requires p^s <= 10^4, got {0}")]
    SweepTooLarge(u64),
    #[error("counterexample degree must satisfy q - q/p - 1 < d < q, got d = {d} for q = {q}")]
    DegreeOutsideInterval { d: u32, q: u64 },
    #[error("degree bound {d} out of range for field of order {q}")]
    DegreeOutOfRange { d: u32, q: u64 },
}

/// A failing line and parameter for the exact line test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub line: Line,
    pub t: Fe,
}

/// Whether q - q/p - 1 >= d, the field-size hypothesis of the
/// characterization.
pub fn hypothesis_holds(field: &Field, d: u32) -> bool {
    let q = field.q();
    q - q / field.p() > d as u64
}

/// True iff every line restriction of g is computed exactly by a polynomial
/// of degree at most d; otherwise returns a witness (line, t) where the
/// maximum-agreement fit still disagrees with g.
///
/// A restriction is a degree-<=d function exactly when the interpolant of
/// any d+1 of its values agrees everywhere, so each line costs one
/// interpolation; the full maximum-agreement fit runs only on failing lines
/// to produce an honest witness.
pub fn passes_exact_line_test(
    field: &Field,
    g: &FunctionTable,
    d: u32,
    budget: u64,
) -> Result<(bool, Option<Witness>), ExactCharError> {
    let q = field.q();
    if d as u64 > q - 1 {
        return Err(ExactCharError::DegreeOutOfRange { d, q });
    }
    let np = g.len();
    let lines = np as u128 * np as u128;
    if lines > budget as u128 {
        return Err(ExactCharError::BudgetExceeded {
            needed: lines,
            budget,
        });
    }
    let m = g.m();
    let mut values = vec![field.zero(); q as usize];
    for hi in 0..np {
        let h = point_from_index(field, hi, m);
        for xi in 0..np {
            let x = point_from_index(field, xi, m);
            let mut idx = 0u64;
            for (slot, t) in field.elements().enumerate() {
                idx = 0;
                for j in (0..m).rev() {
                    let coord = field.add(x[j], field.mul(t, h[j]));
                    idx = idx * q + coord.index();
                }
                values[slot] = g.value_at(idx);
            }
            let _ = idx;
            if interpolate_window_agreement(field, &values, d) == q as u32 {
                continue;
            }
            // Failing line: produce the honest witness from the true fit.
            let fit = fit_line_poly(field, &values, d, Backend::Exact).unwrap();
            let t = field
                .elements()
                .find(|&t| fit.poly.eval(field, t) != values[t.index() as usize])
                .expect("a failing parameter exists when agreement < q");
            return Ok((
                false,
                Some(Witness {
                    line: Line::new(x, h),
                    t,
                }),
            ));
        }
    }
    Ok((true, None))
}

/// Outcome of the characterization check on one table.
#[derive(Debug, Clone, Serialize)]
pub struct CharVerdict {
    pub passes_line_test: bool,
    /// Point and line indices of the witness, when failing.
    pub witness: Option<(u64, u64, u64)>,
    pub total_deg: String,
    #[serde(skip)]
    pub total_degree: Degree,
    pub hypothesis_holds: bool,
    /// False only if a hypothesis-satisfying table passed the line test with
    /// total degree > d, which would falsify the characterization.
    pub theorem_consistent: bool,
}

/// Runs the exact line test, interpolates the table, and evaluates the
/// characterization's consistency flag.
pub fn characterization_check(
    field: &Field,
    g: &FunctionTable,
    d: u32,
    budget: u64,
) -> Result<CharVerdict, ExactCharError> {
    let (passes, witness) = passes_exact_line_test(field, g, d, budget)?;
    let total = interpolate_table(field, g).total_degree();
    let hyp = hypothesis_holds(field, d);
    let exceeds = total > Degree::Finite(d as u64);
    let theorem_consistent = !(hyp && passes && exceeds);
    Ok(CharVerdict {
        passes_line_test: passes,
        witness: witness.map(|w| {
            (
                crate::poly::point_index(field, &w.line.x),
                crate::poly::point_index(field, &w.line.h),
                w.t.index(),
            )
        }),
        total_deg: total.to_string(),
        total_degree: total,
        hypothesis_holds: hyp,
        theorem_consistent,
    })
}

/// The tightness counterexample (x1^(p-1) x2)^(q/p) as a bivariate table,
/// valid for any d with q - q/p - 1 < d < q: it passes the exact line test
/// at degree d while its total degree is q.
pub fn build_counterexample(field: &Field, d: u32) -> Result<FunctionTable, ExactCharError> {
    let q = field.q();
    if hypothesis_holds(field, d) || d as u64 >= q {
        return Err(ExactCharError::DegreeOutsideInterval { d, q });
    }
    let qp = q / field.p();
    let e1 = (field.p() - 1) * qp;
    let g = MultiPoly::monomial(2, vec![e1 as u32, qp as u32], field.one());
    Ok(g.table(field).expect("bivariate table at desk scale"))
}

/// C(n, r) mod p by Lucas decomposition.
pub fn binom_mod_p(n: u64, r: u64, p: u64) -> Result<u64, ExactCharError> {
    if r > n {
        return Err(ExactCharError::InvalidRange);
    }
    if !is_small_prime(p) {
        return Err(ExactCharError::NotPrime(p));
    }
    let (mut n, mut r) = (n, r);
    let mut acc = 1u64;
    while r > 0 || n > 0 {
        let (nd, rd) = (n % p, r % p);
        if rd > nd {
            return Ok(0);
        }
        acc = acc * small_binom_mod_p(nd, rd, p) % p;
        n /= p;
        r /= p;
    }
    Ok(acc)
}

/// C(n, r) mod p for digits n, r < p, by the multiplicative formula.
fn small_binom_mod_p(n: u64, r: u64, p: u64) -> u64 {
    let r = r.min(n - r);
    let mut num = 1u64;
    let mut den = 1u64;
    for j in 1..=r {
        num = num * ((n - r + j) % p) % p;
        den = den * (j % p) % p;
    }
    // den is invertible: all factors are in [1, p).
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Result of sweeping every admissible (n, r) pair.
#[derive(Debug, Clone, Serialize)]
pub struct BinomSweepReport {
    pub p: u64,
    pub s: u32,
    pub pairs_checked: u64,
    /// (n, r) pairs with C(n, r) = 0 mod p; empty when the divisibility
    /// lemma holds.
    pub violations: Vec<(u64, u64)>,
}

/// For every n <= p^s - 1 and every r = k p^(s-1) with 0 < r <= n, checks
/// that C(n, r) is not divisible by p.
pub fn lemma_binom_sweep(p: u64, s: u32) -> Result<BinomSweepReport, ExactCharError> {
    if !is_small_prime(p) {
        return Err(ExactCharError::NotPrime(p));
    }
    let q = (0..s).try_fold(1u64, |acc, _| acc.checked_mul(p)).unwrap_or(u64::MAX);
    if q > 10_000 {
        return Err(ExactCharError::SweepTooLarge(q));
    }
    let step = q / p;
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for n in 1..q {
        let mut r = step;
        while r <= n {
            pairs_checked += 1;
            if binom_mod_p(n, r, p)? == 0 {
                violations.push((n, r));
            }
            r += step;
        }
    }
    Ok(BinomSweepReport {
        p,
        s,
        pairs_checked,
        violations,
    })
}

/// Census of all q^(q^m) functions F^m -> F.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub total_functions: u64,
    /// Functions passing the exact line test at degree d.
    pub passing_count: u64,
    /// Distinct functions equal to some polynomial of total degree <= d.
    pub degree_le_d_count: u64,
    pub equal: bool,
    pub hypothesis_holds: bool,
}

/// Enumerates every function F^m -> F, counts those passing the exact line
/// test and those realized by total-degree-<=d polynomials. Refuses beyond
/// q^m <= 9, q <= 3 rather than sampling; `randomized_search` is the
/// explicitly labeled fallback.
pub fn characterization_census(
    field: &Field,
    m: usize,
    d: u32,
    budget: u64,
) -> Result<CensusReport, ExactCharError> {
    let q = field.q();
    let np = pow_u128(q, m as u32);
    if q > 3 || np > 9 {
        return Err(ExactCharError::CensusTooLarge { q, m });
    }
    let np = np as u64;
    let total = q.pow(np as u32);
    let mut passing = 0u64;
    let mut values = vec![field.zero(); np as usize];
    for code in 0..total {
        let mut c = code;
        for v in values.iter_mut() {
            *v = field.el(c % q);
            c /= q;
        }
        let table = FunctionTable::new(field, m, values.clone()).unwrap();
        let (ok, _) = passes_exact_line_test(field, &table, d, budget)?;
        if ok {
            passing += 1;
        }
    }
    // Distinct tables of total-degree-<=d polynomials, enumerated over all
    // coefficient assignments on monomials with total degree <= min(d, m(q-1)).
    let monos = monomials_up_to(m, d.min(m as u32 * (q as u32 - 1)));
    let mut seen = std::collections::HashSet::new();
    let n_coeffs = monos.len() as u32;
    let assignments = q.checked_pow(n_coeffs).ok_or(ExactCharError::CensusTooLarge { q, m })?;
    for code in 0..assignments {
        let mut c = code;
        let mut terms = Vec::with_capacity(monos.len());
        for exps in &monos {
            terms.push((exps.clone(), field.el(c % q)));
            c /= q;
        }
        let poly = MultiPoly::from_terms(m, terms).reduce(field);
        let table = poly.table(field).unwrap();
        seen.insert(
            table
                .values()
                .iter()
                .map(|v| v.index() as u32)
                .collect::<Vec<u32>>(),
        );
    }
    let degree_le_d_count = seen.len() as u64;
    Ok(CensusReport {
        total_functions: total,
        passing_count: passing,
        degree_le_d_count,
        equal: passing == degree_le_d_count,
        hypothesis_holds: hypothesis_holds(field, d),
    })
}

/// Census restricted to a supplied candidate set, for parameters where the
/// full function space is out of reach. Counts candidates passing the exact
/// line test and candidates realized by total-degree-<=d polynomials; under
/// the hypothesis the two subsets must coincide.
pub fn census_over_candidates(
    field: &Field,
    d: u32,
    candidates: &[FunctionTable],
    budget: u64,
) -> Result<CensusReport, ExactCharError> {
    let mut passing = 0u64;
    let mut low_degree = 0u64;
    let mut coincide = true;
    for table in candidates {
        let (ok, _) = passes_exact_line_test(field, table, d, budget)?;
        let low = interpolate_table(field, table).total_degree() <= Degree::Finite(d as u64);
        passing += ok as u64;
        low_degree += low as u64;
        if ok != low {
            coincide = false;
        }
    }
    Ok(CensusReport {
        total_functions: candidates.len() as u64,
        passing_count: passing,
        degree_le_d_count: low_degree,
        equal: coincide,
        hypothesis_holds: hypothesis_holds(field, d),
    })
}

/// Randomized fallback for parameters beyond the census: checks that no
/// random table passes the line test with total degree > d while the
/// hypothesis holds. Tables are drawn as corrupted low-degree polynomials
/// and as uniform tables.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub trials: u64,
    pub passing: u64,
    /// Tables that passed with total degree > d under the hypothesis;
    /// nonempty would falsify the characterization.
    pub violations: u64,
}

pub fn randomized_search(
    field: &Field,
    m: usize,
    d: u32,
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<SearchReport, ExactCharError> {
    use rand::Rng;
    let mut passing = 0;
    let mut violations = 0;
    let np = pow_u128(field.q(), m as u32) as u64;
    for i in 0..trials {
        let mut rng = substream(seed, i);
        let table = if rng.gen_bool(0.5) {
            let poly = MultiPoly::random_total_degree_at_most(field, m, d, &mut rng);
            let mut t = poly.table(field).unwrap();
            // Perturb a few points.
            for _ in 0..rng.gen_range(0..3) {
                let idx = rng.gen_range(0..np);
                t.set_value_at(idx, field.el(rng.gen_range(0..field.q())));
            }
            t
        } else {
            let values = (0..np).map(|_| field.el(rng.gen_range(0..field.q()))).collect();
            FunctionTable::new(field, m, values).unwrap()
        };
        let (ok, _) = passes_exact_line_test(field, &table, d, budget)?;
        if ok {
            passing += 1;
            let total = interpolate_table(field, &table).total_degree();
            if hypothesis_holds(field, d) && total > Degree::Finite(d as u64) {
                violations += 1;
            }
        }
    }
    Ok(SearchReport {
        trials,
        passing,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn gf(p: u64, s: u32) -> Field {
        Field::new(p, s).unwrap()
    }

    #[test]
    fn degree_d_tables_pass() {
        let f = gf(5, 1);
        let mut rng = substream(2, 0);
        for d in [1u32, 2] {
            let g = MultiPoly::random_total_degree_at_most(&f, 2, d, &mut rng);
            let t = g.table(&f).unwrap();
            let (ok, w) = passes_exact_line_test(&f, &t, d, 1_000_000).unwrap();
            assert!(ok, "degree-{d} table must pass; witness {w:?}");
        }
    }

    #[test]
    fn x_to_the_fourth_fails_at_degree_three() {
        // x1^4 over GF(5) restricted to an axis-parallel line is t^4, which
        // is not a degree-<=3 function.
        let f = gf(5, 1);
        let g = MultiPoly::monomial(2, vec![4, 0], f.one());
        let t = g.table(&f).unwrap();
        let (ok, witness) = passes_exact_line_test(&f, &t, 3, 1_000_000).unwrap();
        assert!(!ok);
        let w = witness.unwrap();
        // The witness line's restriction really disagrees with every cubic:
        // its best fit has agreement < 5.
        let values = crate::lines::restrict(&f, &t, &w.line);
        let fit = fit_line_poly(&f, &values, 3, Backend::Exact).unwrap();
        assert!(fit.agreement < 5);
        assert_ne!(fit.poly.eval(&f, w.t), values[w.t.index() as usize]);
    }

    #[test]
    fn counterexample_gf4() {
        // Over GF(4) with d = 2: g = x1^2 x2^2 passes all 256 lines and has
        // total degree 4.
        let f = gf(2, 2);
        let t = build_counterexample(&f, 2).unwrap();
        let verdict = characterization_check(&f, &t, 2, 1_000_000).unwrap();
        assert!(verdict.passes_line_test);
        assert_eq!(verdict.total_degree, Degree::Finite(4));
        assert!(!verdict.hypothesis_holds);
        assert!(verdict.theorem_consistent);
        // The reduced polynomial is exactly x1^2 x2^2.
        let poly = interpolate_table(&f, &t);
        assert_eq!(poly, MultiPoly::monomial(2, vec![2, 2], f.one()));
    }

    #[test]
    fn counterexample_gf5() {
        // Over GF(5) (prime: q/p = 1) with d = 4: g = x1^4 x2, total degree 5.
        let f = gf(5, 1);
        let t = build_counterexample(&f, 4).unwrap();
        let verdict = characterization_check(&f, &t, 4, 1_000_000).unwrap();
        assert!(verdict.passes_line_test);
        assert_eq!(verdict.total_degree, Degree::Finite(5));
        assert!(!verdict.hypothesis_holds);
        assert!(verdict.theorem_consistent);
    }

    #[test]
    fn counterexample_degree_interval() {
        let f = gf(2, 2);
        // q - q/p - 1 = 1: d = 1 is not strictly above it.
        assert!(matches!(
            build_counterexample(&f, 1),
            Err(ExactCharError::DegreeOutsideInterval { .. })
        ));
        assert!(matches!(
            build_counterexample(&f, 4),
            Err(ExactCharError::DegreeOutsideInterval { .. })
        ));
        assert!(build_counterexample(&f, 2).is_ok());
        assert!(build_counterexample(&f, 3).is_ok());
    }

    #[test]
    fn counterexample_sweep_all_small_fields() {
        // For every built-in field of order at most 8 and every admissible
        // degree bound, the constructed function passes exhaustively and has
        // total degree exactly q.
        for (p, s) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3)] {
            let f = gf(p, s);
            let q = f.q();
            let low = q - q / p - 1;
            for d in (low + 1)..q {
                let t = build_counterexample(&f, d as u32).unwrap();
                let (ok, w) = passes_exact_line_test(&f, &t, d as u32, 1_000_000).unwrap();
                assert!(ok, "q={q} d={d}: {w:?}");
                assert_eq!(
                    interpolate_table(&f, &t).total_degree(),
                    Degree::Finite(q),
                    "q={q} d={d}"
                );
            }
        }
    }

    #[test]
    fn zero_function_check() {
        let f = gf(3, 1);
        let t = MultiPoly::zero(2).table(&f).unwrap();
        let verdict = characterization_check(&f, &t, 1, 1_000_000).unwrap();
        assert!(verdict.passes_line_test);
        assert_eq!(verdict.total_degree, Degree::NegInf);
        assert!(verdict.theorem_consistent);
    }

    #[test]
    fn binom_examples() {
        // C(6,3) = 20 = 2 mod 3; C(3,2) = 3 = 1 mod 2; C(n,0) = 1.
        assert_eq!(binom_mod_p(6, 3, 3).unwrap(), 2);
        assert_eq!(binom_mod_p(3, 2, 2).unwrap(), 1);
        assert_eq!(binom_mod_p(17, 0, 5).unwrap(), 1);
        assert!(matches!(
            binom_mod_p(2, 3, 5),
            Err(ExactCharError::InvalidRange)
        ));
        assert!(matches!(
            binom_mod_p(4, 2, 6),
            Err(ExactCharError::NotPrime(6))
        ));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn lucas_matches_bigint_oracle() {
        // Independent oracle: Pascal's triangle over big integers.
        let n_max = 120usize;
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::from(1u32)];
            for r in 1..n {
                row.push(&prev[r - 1] + &prev[r]);
            }
            row.push(BigUint::from(1u32));
            rows.push(row);
        }
        for p in [2u64, 3, 5, 7] {
            let pb = BigUint::from(p);
            for n in 0..=n_max {
                for r in 0..=n {
                    let want = (&rows[n][r] % &pb).to_u64_digits();
                    let want = want.first().copied().unwrap_or(0);
                    assert_eq!(
                        binom_mod_p(n as u64, r as u64, p).unwrap(),
                        want,
                        "C({n},{r}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn sweep_examples() {
        // p=2, s=3: r in {4} for admissible n; all nonzero.
        let r = lemma_binom_sweep(2, 3).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.pairs_checked, 4); // n in {4,5,6,7}, r = 4
        let r = lemma_binom_sweep(3, 2).unwrap();
        assert!(r.violations.is_empty());
        let r = lemma_binom_sweep(5, 1).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.pairs_checked, 4 + 3 + 2 + 1); // all 0 < r <= n <= 4
        assert!(matches!(
            lemma_binom_sweep(7, 5),
            Err(ExactCharError::SweepTooLarge(_))
        ));
    }

    #[test]
    fn census_gf3_m2_d1() {
        // Hypothesis holds (3 - 1 - 1 = 1 >= 1): exactly the 27 affine
        // functions pass.
        let f = gf(3, 1);
        let r = characterization_census(&f, 2, 1, 1_000_000).unwrap();
        assert_eq!(r.total_functions, 19683);
        assert_eq!(r.passing_count, 27);
        assert_eq!(r.degree_le_d_count, 27);
        assert!(r.equal);
        assert!(r.hypothesis_holds);
    }

    #[test]
    fn census_gf2_m2_d1() {
        // Hypothesis fails (2 - 1 - 1 = 0 < 1): every restriction to a
        // 2-point line is degree <= 1, so all 2^4 = 16 functions pass but
        // only 8 are affine.
        let f = gf(2, 1);
        let r = characterization_census(&f, 2, 1, 1_000_000).unwrap();
        assert_eq!(r.total_functions, 16);
        assert_eq!(r.passing_count, 16);
        assert_eq!(r.degree_le_d_count, 8);
        assert!(!r.equal);
        assert!(!r.hypothesis_holds);
    }

    #[test]
    fn census_gf3_m1_d2() {
        // Every function on 3 points is a degree-<=2 polynomial.
        let f = gf(3, 1);
        let r = characterization_census(&f, 1, 2, 1_000_000).unwrap();
        assert_eq!(r.total_functions, 27);
        assert_eq!(r.passing_count, 27);
        assert_eq!(r.degree_le_d_count, 27);
        assert!(r.equal);
    }

    #[test]
    fn census_refuses_large_parameters() {
        let f = gf(5, 1);
        assert!(matches!(
            characterization_census(&f, 2, 1, 1_000_000),
            Err(ExactCharError::CensusTooLarge { .. })
        ));
    }

    #[test]
    fn randomized_search_finds_no_violations() {
        let f = gf(5, 1);
        let r = randomized_search(&f, 2, 2, 40, 3, 1_000_000).unwrap();
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn candidate_census_partitions_correctly() {
        // Hypothesis holds over GF(5) at d = 2: among the candidates, the
        // low-degree tables pass and the quartic doesn't.
        let f = gf(5, 1);
        let mut rng = substream(12, 0);
        let mut candidates = Vec::new();
        for _ in 0..5 {
            candidates.push(
                MultiPoly::random_total_degree_at_most(&f, 2, 2, &mut rng)
                    .table(&f)
                    .unwrap(),
            );
        }
        candidates.push(MultiPoly::monomial(2, vec![4, 0], f.one()).table(&f).unwrap());
        let rep = census_over_candidates(&f, 2, &candidates, 1_000_000).unwrap();
        assert_eq!(rep.total_functions, 6);
        assert_eq!(rep.passing_count, 5);
        assert_eq!(rep.degree_le_d_count, 5);
        assert!(rep.equal);
        assert!(rep.hypothesis_holds);
    }
}
