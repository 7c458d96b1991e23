//! IID randomness tests: the Wald-Wolfowitz runs test and the BDS
//! correlation-integral test.
//!
//! The BDS kernel counts close pairs along diagonals of the distance
//! matrix in O(T^2) total for all embedding dimensions; every indicator
//! uses the same strict `|x_i - x_j| < eps` predicate so the counts are
//! bit-identical to a naive triple loop.
//!
//! ```
//! use benford_battery::generators::{generate, GeneratorConfig, GeneratorKind};
//! use benford_battery::randomness::{bds_test, BdsConfig, EpsilonMethod};
//!
//! let chaos = generate(&GeneratorConfig {
//!     kind: GeneratorKind::LogisticMap { r: 4.0, x0: 0.2 },
//!     length: 1000,
//!     seed: 0,
//! }).unwrap();
//! let config = BdsConfig {
//!     epsilon_method: EpsilonMethod::StdMultiple { multiple: 0.5 },
//!     ..Default::default()
//! };
//! let result = bds_test(&chaos, &config).unwrap();
//! assert!(result.rows.iter().all(|row| row.reject));
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::std_normal_cdf;
use crate::timeseries::{summarize, TimeSeries};

// ---------------------------------------------------------------------------
// Runs test
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum CutoffPolicy {
    Mean,
    Median,
    Value { value: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunsConfig {
    pub cutoff: CutoffPolicy,
    pub alpha: f64,
    /// Adds the trailing "+1" to the runs variance. The standard
    /// Wald-Wolfowitz variance has none; this switch exists for
    /// compatibility with sources that print the inflated form.
    pub variance_plus_one: bool,
}

impl Default for RunsConfig {
    fn default() -> Self {
        Self { cutoff: CutoffPolicy::Mean, alpha: 0.05, variance_plus_one: false }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunsResult {
    pub cutoff: f64,
    /// Observations strictly above the cutoff.
    pub n1: usize,
    /// Observations strictly below the cutoff.
    pub n2: usize,
    /// Exact ties with the cutoff, dropped before counting runs.
    pub ties_dropped: usize,
    pub runs: usize,
    pub expected_runs: f64,
    pub variance: f64,
    pub z: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub reject: bool,
    /// True when the series is too short for the normal approximation
    /// to be reliable (fewer than 10 classified observations).
    pub small_sample: bool,
}

/// Expected runs, variance, and Z from the dichotomy counts alone.
pub fn runs_moments(n1: usize, n2: usize, runs: usize, variance_plus_one: bool) -> (f64, f64, f64) {
    let (n1, n2) = (n1 as f64, n2 as f64);
    let n = n1 + n2;
    let expected = 2.0 * n1 * n2 / n + 1.0;
    let mut variance = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n1 - n2) / (n * n * (n - 1.0));
    if variance_plus_one {
        variance += 1.0;
    }
    let z = (runs as f64 - expected) / variance.sqrt();
    (expected, variance, z)
}

pub fn runs_test(ts: &TimeSeries, config: &RunsConfig) -> Result<RunsResult> {
    if ts.len() < 2 {
        return Err(Error::TooShort { needed: 2, got: ts.len() });
    }
    let cutoff = match config.cutoff {
        CutoffPolicy::Mean => summarize(ts)?.mean,
        CutoffPolicy::Median => summarize(ts)?.median,
        CutoffPolicy::Value { value } => value,
    };
    let mut n1 = 0usize;
    let mut n2 = 0usize;
    let mut ties_dropped = 0usize;
    let mut runs = 0usize;
    let mut prev: Option<bool> = None;
    for &v in ts.values() {
        let above = if v > cutoff {
            true
        } else if v < cutoff {
            false
        } else {
            ties_dropped += 1;
            continue;
        };
        if above {
            n1 += 1;
        } else {
            n2 += 1;
        }
        if prev != Some(above) {
            runs += 1;
        }
        prev = Some(above);
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::DegenerateDichotomy);
    }
    let (expected_runs, variance, z) = runs_moments(n1, n2, runs, config.variance_plus_one);
    let p_value = 2.0 * std_normal_cdf(-z.abs());
    Ok(RunsResult {
        cutoff,
        n1,
        n2,
        ties_dropped,
        runs,
        expected_runs,
        variance,
        z,
        p_value,
        alpha: config.alpha,
        reject: p_value < config.alpha,
        small_sample: n1 + n2 < 10,
    })
}

// ---------------------------------------------------------------------------
// Epsilon selection
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum EpsilonMethod {
    /// Smallest eps such that at least this fraction of pairwise
    /// distances falls strictly inside eps.
    FractionOfPairs { target: f64 },
    /// eps = multiple * sample standard deviation.
    StdMultiple { multiple: f64 },
    Raw { value: f64 },
}

fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

pub fn select_epsilon(ts: &TimeSeries, method: &EpsilonMethod) -> Result<f64> {
    match *method {
        EpsilonMethod::Raw { value } => {
            if value <= 0.0 {
                return Err(Error::InvalidParameter(format!("raw epsilon {value} must be positive")));
            }
            Ok(value)
        }
        EpsilonMethod::StdMultiple { multiple } => {
            if multiple <= 0.0 {
                return Err(Error::InvalidParameter(format!("std multiple {multiple} must be positive")));
            }
            Ok(multiple * summarize(ts)?.std_dev)
        }
        EpsilonMethod::FractionOfPairs { target } => {
            if !(target > 0.0 && target <= 1.0) {
                return Err(Error::InvalidParameter(format!("pair fraction {target} outside (0,1]")));
            }
            let x = ts.values();
            let n = x.len();
            if n < 2 {
                return Err(Error::TooShort { needed: 2, got: n });
            }
            let mut distances = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    distances.push((x[i] - x[j]).abs());
                }
            }
            let m = distances.len();
            let k = ((target * m as f64).ceil() as usize).clamp(1, m);
            let (_, kth, _) = distances.select_nth_unstable_by(k - 1, f64::total_cmp);
            // Strict inequality in the indicator: nudge one ulp up so
            // the k-th distance itself is inside.
            Ok(next_up(*kth))
        }
    }
}

// ---------------------------------------------------------------------------
// BDS correlation-integral test
// ---------------------------------------------------------------------------

/// Integer pair/triple counts underlying the BDS statistics, for all
/// dimensions 1..=max_dim at a fixed epsilon.
///
/// For dimension m the sample is the first `T_m = T - m + 1` embedded
/// points, where point t has coordinates `x[t..t+m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdsCounts {
    pub t: usize,
    pub max_dim: usize,
    /// `cm_pairs[m-1]`: embedded pairs with all m coordinate distances
    /// strictly inside eps.
    pub cm_pairs: Vec<u64>,
    /// `c1_pairs[m-1]`: scalar pairs inside eps among the first T_m
    /// observations.
    pub c1_pairs: Vec<u64>,
    /// `k_numerators[m-1]`: ordered distinct triples (i, j, l) with
    /// both |x_i - x_j| < eps and |x_j - x_l| < eps, over the first
    /// T_m observations.
    pub k_numerators: Vec<u128>,
}

impl BdsCounts {
    fn t_m(&self, m: usize) -> usize {
        self.t - m + 1
    }

    /// Correlation integral C_{m,eps}.
    pub fn c_m(&self, m: usize) -> f64 {
        let n = self.t_m(m) as f64;
        2.0 * self.cm_pairs[m - 1] as f64 / (n * (n - 1.0))
    }

    /// C_{1,eps} computed on dimension m's sample.
    pub fn c1_for(&self, m: usize) -> f64 {
        let n = self.t_m(m) as f64;
        2.0 * self.c1_pairs[m - 1] as f64 / (n * (n - 1.0))
    }

    /// Triple statistic k on dimension m's sample.
    pub fn k_for(&self, m: usize) -> f64 {
        let n = self.t_m(m) as f64;
        self.k_numerators[m - 1] as f64 / (n * (n - 1.0) * (n - 2.0))
    }
}

/// O(T^2) pair-count kernel. Results are integer counts, so any
/// parallel or reordered evaluation is exactly reproducible.
pub fn bds_counts(x: &[f64], eps: f64, max_dim: usize) -> Result<BdsCounts> {
    let t = x.len();
    if max_dim < 1 {
        return Err(Error::InvalidParameter("max_dim must be >= 1".into()));
    }
    if t < max_dim + 1 {
        return Err(Error::TooShort { needed: max_dim + 1, got: t });
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon {eps} must be positive")));
    }
    let mut cm_pairs = vec![0u64; max_dim];
    let mut c1_pairs = vec![0u64; max_dim];
    let mut k_numerators = vec![0u128; max_dim];

    // Embedded pairs, walking each diagonal of the distance matrix.
    // A run of `r` consecutive close scalar pairs ending at offset j
    // closes one embedded pair for every dimension m <= r.
    for d in 1..t {
        let len = t - d;
        let mut run = 0usize;
        for j in 0..len {
            if (x[j] - x[j + d]).abs() < eps {
                run += 1;
                for m in 2..=run.min(max_dim) {
                    cm_pairs[m - 1] += 1;
                }
            } else {
                run = 0;
            }
        }
    }

    // Scalar pair and neighbor counts, restricted per dimension to the
    // first T_m observations: the pair (i, j), i < j, belongs to every
    // sample with j <= T - m, i.e. m <= T - j.
    let mut neighbors = vec![vec![0u32; t]; max_dim];
    for i in 0..t {
        for j in (i + 1)..t {
            if (x[i] - x[j]).abs() < eps {
                let top = max_dim.min(t - j);
                for m in 1..=top {
                    c1_pairs[m - 1] += 1;
                    neighbors[m - 1][i] += 1;
                    neighbors[m - 1][j] += 1;
                }
            }
        }
    }
    for m in 1..=max_dim {
        let t_m = t - m + 1;
        k_numerators[m - 1] = neighbors[m - 1][..t_m]
            .iter()
            .map(|&n| n as u128 * (n as u128).saturating_sub(1))
            .sum();
    }
    Ok(BdsCounts { t, max_dim, cm_pairs, c1_pairs, k_numerators })
}

/// Correlation integral C_{m,eps}: the fraction of m-dimensional
/// embedded point pairs with all coordinate distances strictly inside
/// eps.
pub fn correlation_integral(ts: &TimeSeries, m: usize, eps: f64) -> Result<f64> {
    let counts = bds_counts(ts.values(), eps, m)?;
    if m == 1 {
        Ok(counts.c1_for(1))
    } else {
        Ok(counts.c_m(m))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BdsRow {
    pub m: usize,
    pub c_m: f64,
    /// C_1 on this dimension's sample.
    pub c1: f64,
    /// Triple statistic on this dimension's sample.
    pub k: f64,
    /// C_m - C_1^m.
    pub raw_stat: f64,
    pub sigma: f64,
    pub z: f64,
    pub p_value: f64,
    pub reject: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BdsResult {
    pub epsilon: f64,
    pub epsilon_method: EpsilonMethod,
    pub rows: Vec<BdsRow>,
    /// C_1 on the full series.
    pub c1: f64,
    /// Triple statistic on the full series.
    pub k_triple: f64,
    pub alpha: f64,
    /// Set when T < 500, below the sample size the asymptotics need.
    pub small_sample: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BdsConfig {
    pub max_dim: usize,
    pub epsilon_method: EpsilonMethod,
    pub alpha: f64,
}

impl Default for BdsConfig {
    fn default() -> Self {
        Self {
            max_dim: 6,
            epsilon_method: EpsilonMethod::FractionOfPairs { target: 0.7 },
            alpha: 0.05,
        }
    }
}

/// Asymptotic variance of sqrt(n) (C_m - C_1^m) under IID, from the
/// correlation integral c and triple statistic k.
fn bds_sigma_squared(m: usize, c: f64, k: f64) -> f64 {
    let mf = m as f64;
    let mut sum = 0.0;
    for j in 1..m {
        sum += k.powi((m - j) as i32) * c.powi(2 * j as i32);
    }
    4.0 * (k.powi(m as i32) + 2.0 * sum + (mf - 1.0) * (mf - 1.0) * c.powi(2 * m as i32)
        - mf * mf * k * c.powi(2 * m as i32 - 2))
}

pub fn bds_test(ts: &TimeSeries, config: &BdsConfig) -> Result<BdsResult> {
    if !(2..=6).contains(&config.max_dim) {
        return Err(Error::InvalidParameter(format!("max_dim {} outside [2,6]", config.max_dim)));
    }
    let epsilon = select_epsilon(ts, &config.epsilon_method)?;
    let counts = bds_counts(ts.values(), epsilon, config.max_dim)?;
    let mut rows = Vec::with_capacity(config.max_dim - 1);
    for m in 2..=config.max_dim {
        let c_m = counts.c_m(m);
        let c1 = counts.c1_for(m);
        let k = counts.k_for(m);
        if !(c1 > 0.0 && c1 < 1.0) {
            return Err(Error::DegenerateEpsilon(c1));
        }
        let sigma2 = bds_sigma_squared(m, c1, k);
        if !(sigma2 > 0.0) {
            return Err(Error::DegenerateEpsilon(c1));
        }
        let sigma = sigma2.sqrt();
        let t_m = (ts.len() - m + 1) as f64;
        let raw_stat = c_m - c1.powi(m as i32);
        let z = t_m.sqrt() * raw_stat / sigma;
        let p_value = 2.0 * std_normal_cdf(-z.abs());
        rows.push(BdsRow {
            m,
            c_m,
            c1,
            k,
            raw_stat,
            sigma,
            z,
            p_value,
            reject: p_value < config.alpha,
        });
    }
    Ok(BdsResult {
        epsilon,
        epsilon_method: config.epsilon_method,
        rows,
        c1: counts.c1_for(1),
        k_triple: counts.k_for(1),
        alpha: config.alpha,
        small_sample: ts.len() < 500,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rayon::prelude::*;

    use crate::generators::{generate, GeneratorConfig, GeneratorKind, SplitMix64};
    use crate::timeseries::TimeSeries;

    fn ts(values: &[f64]) -> TimeSeries {
        TimeSeries::from_values(values.to_vec(), "test").unwrap()
    }

    #[test]
    fn runs_hand_worked_small_case() {
        let series = ts(&[1.0, 1.0, 1.0, 3.0, 3.0, 3.0]);
        let config = RunsConfig { cutoff: CutoffPolicy::Value { value: 2.0 }, ..Default::default() };
        let r = runs_test(&series, &config).unwrap();
        assert_eq!((r.n1, r.n2, r.runs), (3, 3, 2));
        assert_eq!(r.expected_runs, 4.0);
        assert_abs_diff_eq!(r.variance, 1.2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.z, -1.8257418583505538, epsilon = 1e-9);
        assert!(r.small_sample);
    }

    #[test]
    fn runs_alternating_series_maximal() {
        let values: Vec<f64> = (0..40).map(|i| if i % 2 == 0 { 1.0 } else { 3.0 }).collect();
        let r = runs_test(&ts(&values), &RunsConfig::default()).unwrap();
        assert_eq!(r.runs, 40);
        assert!(r.z > 0.0);
        assert!(r.reject);
    }

    #[test]
    fn runs_published_counts_reproduce_z() {
        let (expected, _, z) = runs_moments(2973, 2784, 38, false);
        assert_abs_diff_eq!(expected, 2876.40, epsilon = 0.05);
        assert_abs_diff_eq!(z, -74.90, epsilon = 0.05);
        let (_, _, z_plus) = runs_moments(2973, 2784, 38, true);
        assert_abs_diff_eq!(z_plus, -74.90, epsilon = 0.05);
    }

    #[test]
    fn runs_degenerate_dichotomy() {
        let series = ts(&[1.0, 2.0, 3.0, 4.0]);
        let config = RunsConfig { cutoff: CutoffPolicy::Value { value: 0.0 }, ..Default::default() };
        assert!(matches!(runs_test(&series, &config), Err(Error::DegenerateDichotomy)));
    }

    #[test]
    fn runs_ties_are_dropped() {
        let series = ts(&[1.0, 2.0, 3.0, 2.0, 1.0, 3.0]);
        let config = RunsConfig { cutoff: CutoffPolicy::Value { value: 2.0 }, ..Default::default() };
        let r = runs_test(&series, &config).unwrap();
        assert_eq!(r.ties_dropped, 2);
        assert_eq!(r.n1 + r.n2, 4);
    }

    #[test]
    fn epsilon_methods() {
        assert_eq!(
            select_epsilon(&ts(&[1.0, 2.0]), &EpsilonMethod::Raw { value: 993.1419 }).unwrap(),
            993.1419
        );
        let series = ts(&[1.0, 2.0, 3.0, 4.0]);
        let std = crate::timeseries::summarize(&series).unwrap().std_dev;
        assert_abs_diff_eq!(
            select_epsilon(&series, &EpsilonMethod::StdMultiple { multiple: 1.0 }).unwrap(),
            std,
            epsilon = 1e-12
        );
        // All pairs inside requires just over the max distance.
        let eps = select_epsilon(&ts(&[0.0, 1.0, 2.0]), &EpsilonMethod::FractionOfPairs { target: 1.0 }).unwrap();
        assert!(eps > 2.0);
        assert!(eps < 2.0 + 1e-12);
        assert!(select_epsilon(&series, &EpsilonMethod::FractionOfPairs { target: 1.5 }).is_err());
        assert!(select_epsilon(&series, &EpsilonMethod::StdMultiple { multiple: -1.0 }).is_err());
    }

    #[test]
    fn fraction_of_pairs_meets_target() {
        let cfg = GeneratorConfig { kind: GeneratorKind::RatioUniform, length: 300, seed: 5 };
        let series = generate(&cfg).unwrap();
        let eps = select_epsilon(&series, &EpsilonMethod::FractionOfPairs { target: 0.7 }).unwrap();
        let x = series.values();
        let mut inside = 0usize;
        let mut total = 0usize;
        for i in 0..x.len() {
            for j in (i + 1)..x.len() {
                total += 1;
                if (x[i] - x[j]).abs() < eps {
                    inside += 1;
                }
            }
        }
        let frac = inside as f64 / total as f64;
        assert!(frac >= 0.7);
        assert!(frac < 0.7 + 2.0 / total as f64 + 0.01);
    }

    #[test]
    fn correlation_integral_tiny_cases() {
        let constant = ts(&[5.0; 10]);
        assert_eq!(correlation_integral(&constant, 2, 0.5).unwrap(), 1.0);
        assert_eq!(correlation_integral(&ts(&[0.0, 10.0, 20.0]), 1, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            correlation_integral(&ts(&[0.0, 0.5, 10.0]), 1, 1.0).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn bds_rejects_logistic_map() {
        let cfg = GeneratorConfig {
            kind: GeneratorKind::LogisticMap { r: 4.0, x0: 0.2 },
            length: 1000,
            seed: 0,
        };
        let series = generate(&cfg).unwrap();
        // A tight epsilon resolves the chaotic structure; a wide one
        // saturates the indicator and washes the signal out.
        let config = BdsConfig {
            epsilon_method: EpsilonMethod::StdMultiple { multiple: 0.5 },
            ..Default::default()
        };
        let result = bds_test(&series, &config).unwrap();
        for row in &result.rows {
            assert!(row.z > 10.0, "m={} z={}", row.m, row.z);
            assert!(row.reject);
        }
    }

    #[test]
    fn bds_degenerate_epsilon_reported() {
        let cfg = GeneratorConfig { kind: GeneratorKind::RatioUniform, length: 50, seed: 1 };
        let series = generate(&cfg).unwrap();
        let config = BdsConfig {
            epsilon_method: EpsilonMethod::Raw { value: 1e9 },
            ..Default::default()
        };
        assert!(matches!(bds_test(&series, &config), Err(Error::DegenerateEpsilon(_))));
    }

    #[test]
    fn bds_raw_stat_shrinks_with_sample_size() {
        let mean_abs = |n: usize| -> f64 {
            (0..200u64)
                .into_par_iter()
                .map(|seed| {
                    let cfg = GeneratorConfig {
                        kind: GeneratorKind::Ar1 { phi: 0.0, sigma: 1.0 },
                        length: n,
                        seed: 9000 + seed,
                    };
                    let series = generate(&cfg).unwrap();
                    let config = BdsConfig {
                        max_dim: 2,
                        epsilon_method: EpsilonMethod::StdMultiple { multiple: 1.5 },
                        alpha: 0.05,
                    };
                    bds_test(&series, &config).unwrap().rows[0].raw_stat.abs()
                })
                .sum::<f64>()
                / 200.0
        };
        assert!(mean_abs(4000) < mean_abs(500));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn correlation_integral_monotone(seed in 0u64..1000) {
            let cfg = GeneratorConfig { kind: GeneratorKind::RatioUniform, length: 60, seed };
            let series = generate(&cfg).unwrap();
            let std = crate::timeseries::summarize(&series).unwrap().std_dev;
            // Non-decreasing in eps at fixed m.
            let mut prev = 0.0;
            for mult in [0.25, 0.5, 1.0, 2.0] {
                let c = correlation_integral(&series, 2, mult * std).unwrap();
                prop_assert!(c >= prev);
                prev = c;
            }
            // Non-increasing in m at fixed eps.
            let mut prev = 1.0;
            for m in 1..=5 {
                let c = correlation_integral(&series, m, std).unwrap();
                prop_assert!(c <= prev + 1e-15);
                prev = c;
            }
        }

        #[test]
        fn runs_invariant_under_monotone_transform(seed in 0u64..1000) {
            let mut rng = SplitMix64::new(seed);
            let values: Vec<f64> = (0..60).map(|_| rng.next_unit_open() * 4.0 + 0.5).collect();
            let series = ts(&values);
            let base = runs_test(&series, &RunsConfig::default()).unwrap();
            // exp is strictly monotone; transform data and cutoff together.
            let mapped = ts(&values.iter().map(|v| v.exp()).collect::<Vec<_>>());
            let config = RunsConfig {
                cutoff: CutoffPolicy::Value { value: base.cutoff.exp() },
                ..Default::default()
            };
            let m = runs_test(&mapped, &config).unwrap();
            prop_assert_eq!((m.n1, m.n2, m.runs), (base.n1, base.n2, base.runs));
            prop_assert!((m.z - base.z).abs() < 1e-12);
            // Median cutoff is itself equivariant under monotone maps.
            let med_cfg = RunsConfig { cutoff: CutoffPolicy::Median, ..Default::default() };
            let base_med = runs_test(&series, &med_cfg).unwrap();
            let mapped_med = runs_test(&mapped, &med_cfg).unwrap();
            prop_assert_eq!(base_med.runs, mapped_med.runs);
        }

        #[test]
        fn runs_reversal_symmetry(seed in 0u64..1000) {
            let mut rng = SplitMix64::new(seed);
            let values: Vec<f64> = (0..50).map(|_| rng.next_unit_open()).collect();
            let series = ts(&values);
            let fwd = runs_test(&series, &RunsConfig::default()).unwrap();
            let mut reversed = values.clone();
            reversed.reverse();
            let rev = runs_test(&ts(&reversed), &RunsConfig::default()).unwrap();
            prop_assert_eq!((fwd.n1, fwd.n2, fwd.runs), (rev.n1, rev.n2, rev.runs));
            prop_assert!((fwd.z - rev.z).abs() < 1e-12);
        }
    }
}
