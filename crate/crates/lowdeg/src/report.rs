//! Machine-readable experiment reports.
//!
//! Exact rationals serialize as "num/den" strings; floats only appear where
//! nothing is compared exactly. Reports carry the full parameter echo and
//! never include wall-clock data, so identical configurations serialize to
//! identical bytes.

use serde::Serialize;

use crate::field::Field;
use crate::frac::{frac_f64, serde_frac, Frac};
use crate::lines::Backend;

/// Echo of the experiment configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ReportParams {
    pub p: u64,
    pub s: u32,
    pub modulus: Vec<u64>,
    pub m: usize,
    pub d: u32,
    pub backend: String,
}

impl ReportParams {
    pub fn new(field: &Field, m: usize, d: u32, backend: Backend) -> ReportParams {
        ReportParams {
            p: field.p(),
            s: field.s(),
            modulus: field.modulus().to_vec(),
            m,
            d,
            backend: backend.name().to_string(),
        }
    }
}

/// Outcome of a seeded Monte-Carlo experiment, optionally paired with the
/// exact value of the estimated quantity.
#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub trials: u64,
    pub rejections: u64,
    pub estimate: f64,
    #[serde(serialize_with = "serde_frac::opt::serialize")]
    pub exact: Option<Frac>,
    pub stddev_bound: f64,
    pub seed: u64,
    pub params: ReportParams,
}

impl TestReport {
    pub fn from_counts(
        trials: u64,
        rejections: u64,
        exact: Option<Frac>,
        seed: u64,
        params: ReportParams,
    ) -> TestReport {
        assert!(trials > 0 && rejections <= trials);
        let estimate = rejections as f64 / trials as f64;
        let stddev_bound = (estimate * (1.0 - estimate) / trials as f64).sqrt();
        TestReport {
            trials,
            rejections,
            estimate,
            exact,
            stddev_bound,
            seed,
            params,
        }
    }

    /// Whether the estimate lies within 3 binomial standard deviations of
    /// the exact value (None when no exact value is attached).
    pub fn within_3_sigma(&self) -> Option<bool> {
        self.exact
            .as_ref()
            .map(|e| (self.estimate - frac_f64(e)).abs() <= 3.0 * self.stddev_bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::frac;

    #[test]
    fn report_serializes_rationals_as_strings() {
        let field = Field::new(2, 2).unwrap();
        let params = ReportParams::new(&field, 2, 1, Backend::Exact);
        let r = TestReport::from_counts(100, 4, Some(frac(1, 25)), 7, params);
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("\"exact\":\"1/25\""), "{js}");
        assert!(js.contains("\"modulus\":[1,1,1]"), "{js}");
        assert_eq!(r.within_3_sigma(), Some(true));
    }
}
