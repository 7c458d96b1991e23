//! First-significant-digit extraction and chi-square goodness of fit
//! against the logarithmic (Benford) and uniform digit references.
//!
//! ```
//! use benford_battery::digits::{benford_expected, first_significant_digit};
//!
//! assert_eq!(first_significant_digit(2005.85).unwrap(), 2);
//! let expected = benford_expected(1).unwrap();
//! assert!((expected.probabilities[0] - 0.3010).abs() < 5e-5);
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{chi_square_critical, chi_square_sf};
use crate::timeseries::TimeSeries;

/// Counts of first significant digits 1..9.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitHistogram {
    /// counts[d - 1] holds the count for digit d.
    pub counts: [u64; 9],
    pub total: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DigitReference {
    Benford,
    Uniform,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpectedCounts {
    pub probabilities: [f64; 9],
    pub counts: [f64; 9],
    pub total: u64,
    pub reference: DigitReference,
}

/// One row of the goodness-of-fit table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GofRow {
    pub digit: u8,
    pub expected: f64,
    pub actual: u64,
    /// actual - expected.
    pub deviation: f64,
    pub contribution: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GofResult {
    pub reference: DigitReference,
    pub statistic: f64,
    pub df: u32,
    pub critical_value: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub per_digit: Vec<GofRow>,
    pub reject: bool,
}

/// Leading nonzero decimal digit of |v|, defined arithmetically:
/// d = floor(|v| / 10^floor(log10 |v|)). Floating-point evaluation at a
/// power-of-ten boundary can land on 10 or 0; both guards snap to the
/// digit on the respective side of the boundary.
pub fn first_significant_digit(v: f64) -> Result<u8> {
    if v == 0.0 || !v.is_finite() {
        return Err(Error::InvalidParameter(format!("first digit undefined for {v}")));
    }
    let a = v.abs();
    let d = (a / 10f64.powi(a.log10().floor() as i32)).floor();
    Ok(match d as i64 {
        0 => 9,
        10 => 1,
        d @ 1..=9 => d as u8,
        _ => unreachable!("mantissa out of range for {v}"),
    })
}

/// Digit histogram over a strictly positive series.
pub fn digit_histogram(ts: &TimeSeries) -> Result<DigitHistogram> {
    let mut counts = [0u64; 9];
    for (index, &value) in ts.values().iter().enumerate() {
        if value <= 0.0 {
            return Err(Error::NonPositiveValue { index, value });
        }
        counts[(first_significant_digit(value)? - 1) as usize] += 1;
    }
    Ok(DigitHistogram { counts, total: ts.len() as u64 })
}

/// Expected counts under the logarithmic first-digit law
/// P(d) = log10(1 + 1/d).
pub fn benford_expected(total: u64) -> Result<ExpectedCounts> {
    if total == 0 {
        return Err(Error::InvalidParameter("total must be >= 1".into()));
    }
    let mut probabilities = [0.0; 9];
    let mut counts = [0.0; 9];
    for d in 1..=9u32 {
        let p = (1.0 + 1.0 / d as f64).log10();
        probabilities[(d - 1) as usize] = p;
        // Reference tables quote the law at four decimals (0.3010,
        // 0.1761, ...; they sum to exactly 1.0000), so expected counts
        // follow that convention to stay comparable digit by digit.
        counts[(d - 1) as usize] = total as f64 * (p * 1e4).round() / 1e4;
    }
    Ok(ExpectedCounts { probabilities, counts, total, reference: DigitReference::Benford })
}

/// Expected counts under a uniform digit distribution (each 1/9).
pub fn uniform_expected(total: u64) -> Result<ExpectedCounts> {
    if total == 0 {
        return Err(Error::InvalidParameter("total must be >= 1".into()));
    }
    let probabilities = [1.0 / 9.0; 9];
    let counts = [total as f64 / 9.0; 9];
    Ok(ExpectedCounts { probabilities, counts, total, reference: DigitReference::Uniform })
}

/// Chi-square goodness of fit of observed digit counts against an
/// expected-count table; df = 8.
pub fn chi_square_gof(hist: &DigitHistogram, expected: &ExpectedCounts, alpha: f64) -> Result<GofResult> {
    if hist.total != expected.total {
        return Err(Error::TotalMismatch {
            observed: hist.total as usize,
            expected: expected.total as usize,
        });
    }
    if hist.total == 0 {
        return Err(Error::InvalidParameter("empty histogram".into()));
    }
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha {alpha} outside (0,1)")));
    }
    let mut per_digit = Vec::with_capacity(9);
    let mut statistic = 0.0;
    for d in 0..9 {
        let e = expected.counts[d];
        let o = hist.counts[d] as f64;
        let contribution = (o - e) * (o - e) / e;
        statistic += contribution;
        per_digit.push(GofRow {
            digit: d as u8 + 1,
            expected: e,
            actual: hist.counts[d],
            deviation: o - e,
            contribution,
        });
    }
    let df = 8;
    let critical_value = chi_square_critical(df, alpha)?;
    let p_value = chi_square_sf(statistic, df)?;
    Ok(GofResult {
        reference: expected.reference,
        statistic,
        df,
        critical_value,
        p_value,
        alpha,
        per_digit,
        reject: statistic > critical_value,
    })
}
