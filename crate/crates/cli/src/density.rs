//! How often the theorem decides a pair `(p, n)`.
//!
//! `E_N` is the set of pairs with `5 <= p <= N` prime and `3 <= n <= N`;
//! `D_N` is the subset with `(p - 1) | n`, where the theorem says nothing.

use brunnian::factor::primes_up_to;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::CliError;

pub const MIN_N: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityCount {
    #[serde(rename = "N")]
    pub limit: u64,
    pub e_count: u64,
    pub d_count: u64,
    #[serde(serialize_with = "as_fraction")]
    pub ratio: Ratio<u64>,
    /// `N / (4 (N - 2))`
    #[serde(serialize_with = "as_fraction")]
    pub bound: Ratio<u64>,
    #[serde(serialize_with = "as_fraction")]
    pub complement: Ratio<u64>,
    pub within_bound: bool,
}

fn as_fraction<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

pub fn ratio_to_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Counts `E_N` and `D_N` by walking every pair, and cross-checks
/// `|E_N| = (pi(N) - 2)(N - 2)`.
pub fn run_density(limit: u64) -> Result<DensityCount, CliError> {
    if limit < MIN_N {
        return Err(CliError::Invalid(format!("N must be at least {MIN_N}, got {limit}")));
    }
    let primes = primes_up_to(limit);
    let mut e_count = 0u64;
    let mut d_count = 0u64;
    for &p in primes.iter().filter(|&&p| p >= 5) {
        for n in 3..=limit {
            e_count += 1;
            if n % (p - 1) == 0 {
                d_count += 1;
            }
        }
    }
    let closed_form = (primes.len() as u64 - 2) * (limit - 2);
    assert_eq!(e_count, closed_form, "enumerated E_N disagrees with (pi(N)-2)(N-2)");
    let ratio = Ratio::new(d_count, e_count);
    let bound = Ratio::new(limit, 4 * (limit - 2));
    Ok(DensityCount {
        limit,
        e_count,
        d_count,
        ratio,
        bound,
        complement: Ratio::from_integer(1) - ratio,
        within_bound: ratio <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // p = 5, 7; n = 3..7; only (5, 4) and (7, 6)
        let c = run_density(7).unwrap();
        assert_eq!((c.e_count, c.d_count), (10, 2));
        assert!(c.within_bound);
        assert!(run_density(6).is_err());
    }

    #[test]
    fn fractions_serialize_as_text() {
        let text = serde_json::to_string(&run_density(7).unwrap()).unwrap();
        assert!(text.contains("\"N\":7"));
        assert!(text.contains("\"ratio\":\"1/5\""));
        assert!(text.contains("\"bound\":\"7/20\""));
    }
}
