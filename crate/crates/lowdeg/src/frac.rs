//! Exact rational probabilities and distances.
//!
//! Every measured quantity with an exact definition (distances, rejection
//! probabilities, bad-row fractions) is kept as a reduced fraction so that
//! comparisons against thresholds like `2 * delta_f` are exact.

use num_rational::Ratio;

/// Exact rational value. Denominators stay comfortably inside i128 at desk
/// scale (at most q^(3m) with q^(2m) bounded by the enumeration budget).
pub type Frac = Ratio<i128>;

/// Fraction from unsigned counts.
pub fn frac(num: u64, den: u64) -> Frac {
    assert!(den != 0, "zero denominator");
    Frac::new(num as i128, den as i128)
}

/// Renders as "num/den" in lowest terms (denominator always positive).
pub fn frac_str(f: &Frac) -> String {
    format!("{}/{}", f.numer(), f.denom())
}

/// Approximate float value, for report fields that are not compared exactly.
pub fn frac_f64(f: &Frac) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}

/// Parses "num/den" or a bare integer.
pub fn parse_frac(s: &str) -> Option<Frac> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Frac::new(n, d))
        }
        None => Some(Frac::from_integer(s.trim().parse().ok()?)),
    }
}

pub mod serde_frac {
    //! Serializes `Frac` (and `Option<Frac>`) as "num/den" strings.

    use super::{frac_str, Frac};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Frac, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&frac_str(v))
    }

    pub mod opt {
        use super::{frac_str, Frac};
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<Frac>, ser: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(f) => ser.serialize_some(&frac_str(f)),
                None => ser.serialize_none(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_render() {
        assert_eq!(frac(20, 125), frac(4, 25));
        assert_eq!(frac_str(&frac(20, 125)), "4/25");
        assert_eq!(frac_str(&Frac::from_integer(0)), "0/1");
        assert_eq!(parse_frac("4/25"), Some(frac(4, 25)));
        assert_eq!(parse_frac("3"), Some(Frac::from_integer(3)));
        assert_eq!(parse_frac("1/0"), None);
    }
}
