//! Orchestration: run the full test battery in order, derive the
//! efficiency/first-digit verdict, and scan sub-period windows.
//!
//! The verdict logic ties the pieces together: IID randomness is the
//! precondition for the logarithmic first-digit law, a unit root is the
//! random-walk (efficient-market) signature, and the direct digit test
//! either agrees with that indirect prediction or not.

use serde::{Deserialize, Serialize};

use crate::digits::{benford_expected, chi_square_gof, digit_histogram, uniform_expected, DigitHistogram, GofResult};
use crate::distribution::{anderson_darling, jarque_bera, ks_test, DistTestResult, ReferenceDistribution};
use crate::error::{Error, Result};
use crate::randomness::{bds_test, runs_test, BdsConfig, BdsResult, RunsConfig, RunsResult};
use crate::timeseries::{detect_gaps, summarize, IngestReport, SummaryStats, TimeSeries, DEFAULT_MAX_GAP_DAYS};
use crate::unit_root::{adf_test, AdfResult, AdfSpec};

/// A test outcome that records its error instead of aborting the rest
/// of the battery.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TestEntry<T> {
    Ok { result: T },
    Error { message: String },
}

impl<T> TestEntry<T> {
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(result) => TestEntry::Ok { result },
            Err(e) => TestEntry::Error { message: e.to_string() },
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            TestEntry::Ok { result } => Some(result),
            TestEntry::Error { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub alpha: f64,
    pub runs: RunsConfig,
    pub bds: BdsConfig,
    pub adf: AdfSpec,
    pub ks_reference: ReferenceDistribution,
    pub ad_reference: ReferenceDistribution,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            runs: RunsConfig::default(),
            bds: BdsConfig::default(),
            adf: AdfSpec::default(),
            ks_reference: ReferenceDistribution::UniformMinMax,
            ad_reference: ReferenceDistribution::NormalFitted,
        }
    }
}

impl BatteryConfig {
    /// Propagates one significance level to every sub-test.
    pub fn with_alpha(alpha: f64) -> Self {
        let mut c = Self::default();
        c.alpha = alpha;
        c.runs.alpha = alpha;
        c.bds.alpha = alpha;
        c.adf.alpha = alpha;
        c
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatteryResult {
    pub label: String,
    pub n: usize,
    pub alpha: f64,
    /// Set when n < 500, below the BDS asymptotic guidance.
    pub small_sample: bool,
    pub ingest: IngestReport,
    pub summary: TestEntry<SummaryStats>,
    pub dist_tests: Vec<TestEntry<DistTestResult>>,
    pub runs: TestEntry<RunsResult>,
    pub bds: TestEntry<BdsResult>,
    pub adf: TestEntry<AdfResult>,
    pub histogram: TestEntry<DigitHistogram>,
    pub benford_gof: TestEntry<GofResult>,
    pub uniform_gof: TestEntry<GofResult>,
}

/// Runs every test in order. One failing test records an error entry;
/// only a series too short for anything (< 10) aborts.
pub fn run_battery(ts: &TimeSeries, config: &BatteryConfig, ingest: Option<IngestReport>) -> Result<BatteryResult> {
    if ts.len() < 10 {
        return Err(Error::TooShort { needed: 10, got: ts.len() });
    }
    let ingest = ingest.unwrap_or_else(|| {
        let (gap_count, gap_spans, gap_audit_skipped) = detect_gaps(ts, DEFAULT_MAX_GAP_DAYS);
        IngestReport { rows_read: ts.len(), rows_dropped: 0, gap_count, gap_spans, gap_audit_skipped }
    });
    let alpha = config.alpha;
    let dist_tests = vec![
        TestEntry::from_result(jarque_bera(ts, alpha)),
        TestEntry::from_result(ks_test(ts, config.ks_reference, alpha)),
        TestEntry::from_result(anderson_darling(ts, config.ad_reference, alpha)),
    ];
    let histogram = digit_histogram(ts);
    let total = ts.len() as u64;
    let benford_gof = histogram
        .as_ref()
        .map_err(|e| Error::InvalidParameter(e.to_string()))
        .and_then(|h| chi_square_gof(h, &benford_expected(total)?, alpha));
    let uniform_gof = histogram
        .as_ref()
        .map_err(|e| Error::InvalidParameter(e.to_string()))
        .and_then(|h| chi_square_gof(h, &uniform_expected(total)?, alpha));
    Ok(BatteryResult {
        label: ts.label().to_string(),
        n: ts.len(),
        alpha,
        small_sample: ts.len() < 500,
        ingest,
        summary: TestEntry::from_result(summarize(ts)),
        dist_tests,
        runs: TestEntry::from_result(runs_test(ts, &config.runs)),
        bds: TestEntry::from_result(bds_test(ts, &config.bds)),
        adf: TestEntry::from_result(adf_test(ts, &config.adf)),
        histogram: TestEntry::from_result(histogram),
        benford_gof: TestEntry::from_result(benford_gof),
        uniform_gof: TestEntry::from_result(uniform_gof),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomnessVerdict {
    ConsistentWithIid,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmhVerdict {
    UnitRootNotRejected,
    UnitRootRejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenfordVerdict {
    Conforms,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NexusConclusion {
    /// Randomness and the unit root both survive: the market looks
    /// efficient and the first-digit law has a chance to hold.
    EfficiencyConsistentLawPossible,
    /// Any randomness or unit-root rejection: the market is not
    /// efficient and the law is not expected to hold.
    InefficientLawNotExpected,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictReport {
    pub randomness_verdict: RandomnessVerdict,
    pub emh_verdict: EmhVerdict,
    pub benford_verdict: BenfordVerdict,
    pub nexus_conclusion: NexusConclusion,
    /// Does the direct digit test agree with the indirect prediction
    /// from randomness and efficiency?
    pub concordance: bool,
    pub narrative: String,
}

/// Decision matrix over the battery's reject flags.
pub fn render_verdict(battery: &BatteryResult) -> Result<VerdictReport> {
    let runs = battery.runs.ok().ok_or_else(|| missing("runs"))?;
    let bds = battery.bds.ok().ok_or_else(|| missing("bds"))?;
    let adf = battery.adf.ok().ok_or_else(|| missing("adf"))?;
    let benford = battery.benford_gof.ok().ok_or_else(|| missing("benford"))?;

    let bds_any_reject = bds.rows.iter().any(|r| r.reject);
    let randomness_verdict = if runs.reject || bds_any_reject {
        RandomnessVerdict::Rejected
    } else {
        RandomnessVerdict::ConsistentWithIid
    };
    let emh_verdict = if adf.reject {
        EmhVerdict::UnitRootRejected
    } else {
        EmhVerdict::UnitRootNotRejected
    };
    let benford_verdict = if benford.reject { BenfordVerdict::Rejected } else { BenfordVerdict::Conforms };

    let law_predicted_plausible = randomness_verdict == RandomnessVerdict::ConsistentWithIid
        && emh_verdict == EmhVerdict::UnitRootNotRejected;
    let nexus_conclusion = if law_predicted_plausible {
        NexusConclusion::EfficiencyConsistentLawPossible
    } else {
        NexusConclusion::InefficientLawNotExpected
    };
    let concordance = law_predicted_plausible == (benford_verdict == BenfordVerdict::Conforms);

    let mut drivers = Vec::new();
    if runs.reject {
        drivers.push(format!("runs test rejects IID (Z = {:.2})", runs.z));
    }
    if bds_any_reject {
        let dims: Vec<String> = bds.rows.iter().filter(|r| r.reject).map(|r| r.m.to_string()).collect();
        drivers.push(format!("BDS rejects IID at dimension(s) {}", dims.join(", ")));
    }
    if adf.reject {
        drivers.push(format!("ADF rejects the unit root (tau = {:.2})", adf.statistic));
    }
    let narrative = if law_predicted_plausible {
        format!(
            "No randomness or unit-root rejection: consistent with an efficient market, so the first-digit law may hold. Direct digit test: {}. Concordant: {}.",
            if benford.reject { "rejected" } else { "not rejected" },
            concordance
        )
    } else {
        format!(
            "Market efficiency is contradicted ({}); the first-digit law is not expected to hold. Direct digit test: {}. Concordant: {}.",
            drivers.join("; "),
            if benford.reject { "rejected" } else { "not rejected" },
            concordance
        )
    };
    Ok(VerdictReport {
        randomness_verdict,
        emh_verdict,
        benford_verdict,
        nexus_conclusion,
        concordance,
        narrative,
    })
}

fn missing(name: &str) -> Error {
    Error::InvalidParameter(format!("verdict requires a completed {name} test entry"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowResult {
    pub start: usize,
    pub end: usize,
    pub p_value: f64,
    pub reject: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowScanResult {
    pub window_length: usize,
    pub step: usize,
    pub alpha: f64,
    pub windows: Vec<WindowResult>,
    pub conforming_fraction: f64,
}

/// Benford GOF over sliding sub-periods; full windows only.
pub fn window_scan(ts: &TimeSeries, window_length: usize, step: usize, alpha: f64) -> Result<WindowScanResult> {
    if window_length < 100 {
        return Err(Error::InvalidParameter(format!("window length {window_length} below minimum 100")));
    }
    if step < 1 {
        return Err(Error::InvalidParameter("step must be >= 1".into()));
    }
    if window_length > ts.len() {
        return Err(Error::InvalidParameter(format!(
            "window length {window_length} exceeds series length {}",
            ts.len()
        )));
    }
    let mut windows = Vec::new();
    let mut start = 0;
    while start + window_length <= ts.len() {
        let slice = ts.slice(start, start + window_length)?;
        let hist = digit_histogram(&slice)?;
        let gof = chi_square_gof(&hist, &benford_expected(hist.total)?, alpha)?;
        windows.push(WindowResult {
            start,
            end: start + window_length,
            p_value: gof.p_value,
            reject: gof.reject,
        });
        start += step;
    }
    let conforming = windows.iter().filter(|w| !w.reject).count();
    let conforming_fraction = conforming as f64 / windows.len() as f64;
    Ok(WindowScanResult { window_length, step, alpha, windows, conforming_fraction })
}
