//! Augmented Dickey-Fuller unit-root test with information-criterion
//! lag selection and finite-sample critical values from the MacKinnon
//! response surface.
//!
//! ```
//! use benford_battery::generators::{generate, GeneratorConfig, GeneratorKind};
//! use benford_battery::unit_root::{adf_test, AdfSpec};
//!
//! let walk = generate(&GeneratorConfig {
//!     kind: GeneratorKind::RandomWalk { x0: 100.0, sigma: 1.0 },
//!     length: 1000,
//!     seed: 21,
//! }).unwrap();
//! let result = adf_test(&walk, &AdfSpec::default()).unwrap();
//! assert!(!result.reject); // a pure random walk keeps its unit root
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ols_fit, OlsFit};
use crate::timeseries::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deterministic {
    None,
    Constant,
    ConstantAndTrend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Aic,
    Sbc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum LagMode {
    Fixed { p: usize },
    Auto { criterion: Criterion, p_max: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdfSpec {
    pub deterministic: Deterministic,
    pub lag_mode: LagMode,
    pub alpha: f64,
}

impl Default for AdfSpec {
    fn default() -> Self {
        Self {
            deterministic: Deterministic::Constant,
            lag_mode: LagMode::Auto { criterion: Criterion::Sbc, p_max: None },
            alpha: 0.05,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdfResult {
    /// DF tau = gamma_hat / SE(gamma_hat).
    pub statistic: f64,
    pub gamma_hat: f64,
    pub gamma_se: f64,
    pub chosen_lag: usize,
    pub deterministic: Deterministic,
    /// Critical values at the 1%, 2.5%, 5%, and 10% levels.
    pub critical_values: CriticalValues,
    pub p_value: f64,
    pub alpha: f64,
    pub reject: bool,
    pub n_effective: usize,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CriticalValues {
    pub pct_1: f64,
    pub pct_2_5: f64,
    pub pct_5: f64,
    pub pct_10: f64,
}

/// Response-surface coefficients (MacKinnon 2010):
/// CV = b_inf + b1/n + b2/n^2 + b3/n^3. The 2.5% row carries the
/// asymptotic Dickey-Fuller value only, which is enough for the +/-0.01
/// p-value precision documented for the interpolation grid.
fn surface(deterministic: Deterministic) -> [[f64; 4]; 4] {
    match deterministic {
        Deterministic::None => [
            [-2.56574, -2.2358, -3.627, 0.0],
            [-2.23, 0.0, 0.0, 0.0],
            [-1.94100, -0.2686, -3.365, 31.223],
            [-1.61682, 0.2656, -2.714, -47.242],
        ],
        Deterministic::Constant => [
            [-3.43035, -6.5393, -16.786, -79.433],
            [-3.12, 0.0, 0.0, 0.0],
            [-2.86154, -2.8903, -4.234, -40.040],
            [-2.56677, -1.5384, -2.809, 0.0],
        ],
        Deterministic::ConstantAndTrend => [
            [-3.95877, -9.0531, -28.428, -134.155],
            [-3.66, 0.0, 0.0, 0.0],
            [-3.41049, -4.3904, -9.036, -45.374],
            [-3.12705, -2.5856, -3.925, -22.380],
        ],
    }
}

pub fn adf_critical_values(deterministic: Deterministic, n_effective: usize) -> Result<CriticalValues> {
    if n_effective < 25 {
        return Err(Error::TooShort { needed: 25, got: n_effective });
    }
    let n = n_effective as f64;
    let eval = |row: &[f64; 4]| row[0] + row[1] / n + row[2] / (n * n) + row[3] / (n * n * n);
    let s = surface(deterministic);
    Ok(CriticalValues {
        pct_1: eval(&s[0]),
        pct_2_5: eval(&s[1]),
        pct_5: eval(&s[2]),
        pct_10: eval(&s[3]),
    })
}

/// Left-tail p-value by monotone linear interpolation through the
/// critical-value grid, clamped to [0.001, 0.999].
pub fn adf_p_value(statistic: f64, cv: &CriticalValues) -> f64 {
    let grid = [
        (cv.pct_1, 0.01),
        (cv.pct_2_5, 0.025),
        (cv.pct_5, 0.05),
        (cv.pct_10, 0.10),
    ];
    let p = if statistic <= grid[0].0 {
        // Extrapolate below the 1% point with the first segment slope.
        let slope = (grid[1].1 - grid[0].1) / (grid[1].0 - grid[0].0);
        grid[0].1 + slope * (statistic - grid[0].0)
    } else if statistic >= grid[3].0 {
        let slope = (grid[3].1 - grid[2].1) / (grid[3].0 - grid[2].0);
        grid[3].1 + slope * (statistic - grid[3].0)
    } else {
        let mut p = 0.10;
        for w in grid.windows(2) {
            if statistic >= w[0].0 && statistic <= w[1].0 {
                let t = (statistic - w[0].0) / (w[1].0 - w[0].0);
                p = w[0].1 + t * (w[1].1 - w[0].1);
                break;
            }
        }
        p
    };
    p.clamp(0.001, 0.999)
}

/// Regression sample for lag order p: response dy_t for t = p..T-1,
/// regressors y_{t-1}, then p-1 lagged differences, then deterministic
/// columns.
pub fn build_adf_design(
    ts: &TimeSeries,
    deterministic: Deterministic,
    p: usize,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    build_adf_design_from(ts, deterministic, p, p)
}

/// Same as [`build_adf_design`] but starting the sample at `start >= p`,
/// so candidate lag orders can share a common sample.
fn build_adf_design_from(
    ts: &TimeSeries,
    deterministic: Deterministic,
    p: usize,
    start: usize,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if p < 1 {
        return Err(Error::InvalidParameter("lag order p must be >= 1".into()));
    }
    debug_assert!(start >= p);
    let y = ts.values();
    let t = y.len();
    let n_det = match deterministic {
        Deterministic::None => 0,
        Deterministic::Constant => 1,
        Deterministic::ConstantAndTrend => 2,
    };
    // At least one residual degree of freedom: rows > p + n_det params.
    if t < start + p + n_det + 1 {
        return Err(Error::TooShort { needed: start + p + n_det + 1, got: t });
    }
    let mut design = Vec::with_capacity(t - start);
    let mut response = Vec::with_capacity(t - start);
    for time in start..t {
        let mut row = Vec::with_capacity(p + n_det);
        row.push(y[time - 1]);
        for lag in 1..p {
            row.push(y[time - lag] - y[time - lag - 1]);
        }
        match deterministic {
            Deterministic::None => {}
            Deterministic::Constant => row.push(1.0),
            Deterministic::ConstantAndTrend => {
                row.push(1.0);
                row.push(time as f64);
            }
        }
        design.push(row);
        response.push(y[time] - y[time - 1]);
    }
    Ok((design, response))
}

fn fit_adf(ts: &TimeSeries, deterministic: Deterministic, p: usize, start: usize) -> Result<OlsFit> {
    let (design, response) = build_adf_design_from(ts, deterministic, p, start)?;
    ols_fit(&design, &response)
}

/// Schwert rule default lag bound: floor(12 (T/100)^{1/4}).
pub fn schwert_p_max(t: usize) -> usize {
    ((12.0 * (t as f64 / 100.0).powf(0.25)).floor() as usize).max(1)
}

/// Information-criterion lag selection. All candidate regressions share
/// the sample t = p_max..T-1 so criteria are comparable; ties break
/// toward the smaller lag.
pub fn select_lag(ts: &TimeSeries, deterministic: Deterministic, criterion: Criterion, p_max: usize) -> Result<usize> {
    if p_max < 1 {
        return Err(Error::InvalidParameter("p_max must be >= 1".into()));
    }
    let mut best: Option<(f64, usize)> = None;
    for p in 1..=p_max {
        let fit = fit_adf(ts, deterministic, p, p_max)?;
        let score = match criterion {
            Criterion::Aic => fit.aic(),
            Criterion::Sbc => fit.sbc(),
        };
        if best.map_or(true, |(s, _)| score < s) {
            best = Some((score, p));
        }
    }
    Ok(best.expect("p_max >= 1").1)
}

pub fn adf_test(ts: &TimeSeries, spec: &AdfSpec) -> Result<AdfResult> {
    let chosen_lag = match spec.lag_mode {
        LagMode::Fixed { p } => p,
        LagMode::Auto { criterion, p_max } => {
            let bound = p_max.unwrap_or_else(|| schwert_p_max(ts.len()));
            select_lag(ts, spec.deterministic, criterion, bound)?
        }
    };
    // Final regression re-fits on the maximal sample for the chosen lag.
    let fit = fit_adf(ts, spec.deterministic, chosen_lag, chosen_lag)?;
    let gamma_hat = fit.coefficients[0];
    let gamma_se = fit.standard_errors[0];
    if gamma_se == 0.0 {
        return Err(Error::Numeric("zero standard error for the level coefficient".into()));
    }
    let statistic = gamma_hat / gamma_se;
    let n_effective = fit.n_obs;
    let critical_values = adf_critical_values(spec.deterministic, n_effective)?;
    let p_value = adf_p_value(statistic, &critical_values);
    let cv_alpha = if (spec.alpha - 0.01).abs() < 1e-9 {
        critical_values.pct_1
    } else if (spec.alpha - 0.10).abs() < 1e-9 {
        critical_values.pct_10
    } else {
        critical_values.pct_5
    };
    Ok(AdfResult {
        statistic,
        gamma_hat,
        gamma_se,
        chosen_lag,
        deterministic: spec.deterministic,
        critical_values,
        p_value,
        alpha: spec.alpha,
        reject: statistic < cv_alpha,
        n_effective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    use crate::generators::{generate, GeneratorConfig, GeneratorKind, SplitMix64};
    use crate::timeseries::TimeSeries;

    fn ts(values: &[f64]) -> TimeSeries {
        TimeSeries::from_values(values.to_vec(), "test").unwrap()
    }

    fn random_walk(n: usize, seed: u64) -> TimeSeries {
        generate(&GeneratorConfig {
            kind: GeneratorKind::RandomWalk { x0: 100.0, sigma: 1.0 },
            length: n,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn design_hand_construction() {
        let (design, response) = build_adf_design(&ts(&[1.0, 2.0, 3.0, 4.0]), Deterministic::Constant, 1).unwrap();
        assert_eq!(response, vec![1.0, 1.0, 1.0]);
        assert_eq!(design, vec![vec![1.0, 1.0], vec![2.0, 1.0], vec![3.0, 1.0]]);
    }

    #[test]
    fn design_row_counts() {
        let values: Vec<f64> = (0..10).map(|i| (i as f64).sin() + 10.0).collect();
        let (design, response) = build_adf_design(&ts(&values), Deterministic::None, 3).unwrap();
        assert_eq!(response.len(), 7);
        assert_eq!(design[0].len(), 3); // level + 2 lagged diffs
    }

    #[test]
    fn critical_values_large_sample() {
        let cv = adf_critical_values(Deterministic::Constant, 100_000).unwrap();
        assert_abs_diff_eq!(cv.pct_5, -2.86, epsilon = 0.01);
        let cv = adf_critical_values(Deterministic::ConstantAndTrend, 100_000).unwrap();
        assert_abs_diff_eq!(cv.pct_5, -3.41, epsilon = 0.02);
        let cv = adf_critical_values(Deterministic::None, 100_000).unwrap();
        assert_abs_diff_eq!(cv.pct_5, -1.94, epsilon = 0.02);
    }

    #[test]
    fn p_value_brackets_published_statistic() {
        let cv = adf_critical_values(Deterministic::Constant, 5000).unwrap();
        let p = adf_p_value(-3.27, &cv);
        assert!(p > 0.01 && p < 0.05, "p = {p}");
    }

    #[test]
    fn p_value_monotone_and_clamped() {
        let cv = adf_critical_values(Deterministic::Constant, 5000).unwrap();
        let mut prev = 0.0;
        for s in [-8.0, -4.0, -3.0, -2.0, -1.0, 2.0] {
            let p = adf_p_value(s, &cv);
            assert!(p >= prev);
            assert!((0.001..=0.999).contains(&p));
            prev = p;
        }
        assert_eq!(adf_p_value(-50.0, &cv), 0.001);
        assert_eq!(adf_p_value(50.0, &cv), 0.999);
    }

    #[test]
    fn select_lag_single_candidate() {
        let series = random_walk(200, 1);
        assert_eq!(select_lag(&series, Deterministic::Constant, Criterion::Sbc, 1).unwrap(), 1);
    }

    #[test]
    fn sbc_prefers_lag_one_on_random_walk() {
        let mut hits = 0;
        for seed in 0..200u64 {
            let series = random_walk(2000, 100 + seed);
            if select_lag(&series, Deterministic::Constant, Criterion::Sbc, 6).unwrap() == 1 {
                hits += 1;
            }
        }
        assert!(hits > 100, "lag-1 chosen {hits}/200");
    }

    #[test]
    fn sbc_detects_needed_lags_on_ma_noise() {
        // Differences of y follow an MA process, so lag augmentation helps.
        let mut hits = 0;
        for seed in 0..50u64 {
            let mut rng = SplitMix64::new(700 + seed);
            let n = 2000;
            let eps: Vec<f64> = (0..=n).map(|_| rng.next_normal()).collect();
            let mut y = Vec::with_capacity(n);
            let mut level = 0.0;
            for t in 1..=n {
                level += eps[t] + 0.8 * eps[t - 1];
                y.push(level);
            }
            if select_lag(&ts(&y), Deterministic::Constant, Criterion::Sbc, 8).unwrap() > 1 {
                hits += 1;
            }
        }
        assert!(hits > 40, "augmentation chosen {hits}/50");
    }

    #[test]
    fn adf_scale_and_shift_invariance() {
        let series = random_walk(500, 3);
        let spec = AdfSpec { lag_mode: LagMode::Fixed { p: 2 }, ..Default::default() };
        let base = adf_test(&series, &spec).unwrap();
        let scaled = ts(&series.values().iter().map(|v| 3.0 * v).collect::<Vec<_>>());
        let s = adf_test(&scaled, &spec).unwrap();
        assert_abs_diff_eq!(s.statistic, base.statistic, epsilon = 1e-8);
        let shifted = ts(&series.values().iter().map(|v| v + 250.0).collect::<Vec<_>>());
        let sh = adf_test(&shifted, &spec).unwrap();
        assert_abs_diff_eq!(sh.statistic, base.statistic, epsilon = 1e-8);
    }

    #[test]
    fn auto_mode_matches_fixed_refit() {
        let series = random_walk(800, 17);
        let auto = adf_test(
            &series,
            &AdfSpec {
                lag_mode: LagMode::Auto { criterion: Criterion::Sbc, p_max: Some(8) },
                ..Default::default()
            },
        )
        .unwrap();
        let fixed = adf_test(
            &series,
            &AdfSpec { lag_mode: LagMode::Fixed { p: auto.chosen_lag }, ..Default::default() },
        )
        .unwrap();
        assert_eq!(auto.statistic, fixed.statistic);
        assert_eq!(auto.n_effective, fixed.n_effective);
    }

    #[test]
    fn constant_series_is_rank_deficient() {
        let spec = AdfSpec { lag_mode: LagMode::Fixed { p: 1 }, ..Default::default() };
        assert!(adf_test(&ts(&[5.0; 100]), &spec).is_err());
    }

    #[test]
    fn white_noise_strongly_rejected() {
        let mut rejects = 0;
        for seed in 0..100u64 {
            let mut rng = SplitMix64::new(3000 + seed);
            let y: Vec<f64> = (0..500).map(|_| rng.next_normal()).collect();
            let spec = AdfSpec { lag_mode: LagMode::Fixed { p: 1 }, ..Default::default() };
            if adf_test(&ts(&y), &spec).unwrap().reject {
                rejects += 1;
            }
        }
        assert!(rejects >= 99, "{rejects}/100");
    }
}
