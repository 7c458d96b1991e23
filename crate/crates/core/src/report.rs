//! Report emission: lossless JSON and human-readable markdown whose
//! tables can be eyeballed against published results at two decimals.

use serde::{Deserialize, Serialize};

use crate::battery::{BatteryResult, TestEntry, VerdictReport, WindowScanResult};
use crate::digits::GofResult;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub input: String,
    pub column: String,
    pub artifact_version: String,
    /// Omitted by default so identical inputs yield byte-identical
    /// reports; enabled with an explicit flag.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub metadata: ReportMetadata,
    pub battery: BatteryResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub windows: Option<WindowScanResult>,
}

pub fn render_json(doc: &ReportDocument) -> Result<String> {
    serde_json::to_string_pretty(doc).map_err(|e| Error::Numeric(format!("serialization failed: {e}")))
}

pub fn parse_json(raw: &str) -> Result<ReportDocument> {
    serde_json::from_str(raw).map_err(|e| Error::InvalidParameter(format!("invalid report JSON: {e}")))
}

fn gof_markdown(out: &mut String, title: &str, gof: &TestEntry<GofResult>) {
    out.push_str(&format!("## {title}\n\n"));
    match gof {
        TestEntry::Error { message } => {
            out.push_str(&format!("not available: {message}\n\n"));
        }
        TestEntry::Ok { result } => {
            out.push_str("| Digit | Expected | Actual | Expected (%) | Actual (%) | Deviation | Chi-Sq |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            let total = result.per_digit.iter().map(|r| r.actual).sum::<u64>() as f64;
            for row in &result.per_digit {
                out.push_str(&format!(
                    "| {} | {:.2} | {} | {:.4} | {:.4} | {:.2} | {:.2} |\n",
                    row.digit,
                    row.expected,
                    row.actual,
                    row.expected / total,
                    row.actual as f64 / total,
                    row.deviation,
                    row.contribution
                ));
            }
            out.push_str(&format!("| Sum |  |  |  |  |  | {:.2} |\n\n", result.statistic));
            out.push_str(&format!(
                "Critical value ({}%, df={}): {:.3}; p-value {:.4}; **{}**\n\n",
                result.alpha * 100.0,
                result.df,
                result.critical_value,
                result.p_value,
                if result.reject { "rejected" } else { "not rejected" }
            ));
        }
    }
}

pub fn render_markdown(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let b = &doc.battery;
    out.push_str(&format!("# First-digit and market-efficiency report: {}\n\n", b.label));
    out.push_str(&format!(
        "Input `{}`, column `{}`, n = {}, alpha = {}.\n\n",
        doc.metadata.input, doc.metadata.column, b.n, b.alpha
    ));
    if b.ingest.rows_dropped > 0 || b.ingest.gap_count > 0 {
        out.push_str(&format!(
            "Ingestion: {} rows read, {} dropped, {} calendar gaps.\n\n",
            b.ingest.rows_read, b.ingest.rows_dropped, b.ingest.gap_count
        ));
    }
    if b.ingest.gap_audit_skipped {
        out.push_str("No dates available; the calendar-gap audit was skipped.\n\n");
    }
    if b.small_sample {
        out.push_str("Warning: fewer than 500 observations; BDS asymptotics are unreliable.\n\n");
    }

    out.push_str("## Descriptive Statistics\n\n");
    match &b.summary {
        TestEntry::Error { message } => out.push_str(&format!("not available: {message}\n\n")),
        TestEntry::Ok { result: s } => {
            out.push_str("| Mean | Median | Std. Dev | Skewness | Kurtosis | Max. | Min. |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            out.push_str(&format!(
                "| {:.2} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} |\n\n",
                s.mean, s.median, s.std_dev, s.skewness, s.kurtosis, s.max, s.min
            ));
        }
    }

    out.push_str("## Data Distribution\n\n| Test | Reference | Stat. | Prob. |\n|---|---|---|---|\n");
    for entry in &b.dist_tests {
        match entry {
            TestEntry::Error { message } => out.push_str(&format!("| (failed) | | | {message} |\n")),
            TestEntry::Ok { result } => {
                let p = result
                    .p_value
                    .map(|p| format!("{p:.4}{}", if result.approximate { " (approx.)" } else { "" }))
                    .unwrap_or_else(|| {
                        format!("band only: {}", if result.reject { "rejected" } else { "not rejected" })
                    });
                out.push_str(&format!(
                    "| {:?} | {:?} | {:.2} | {} |\n",
                    result.test, result.reference, result.statistic, p
                ));
            }
        }
    }
    out.push('\n');

    out.push_str("## Runs Test\n\n");
    match &b.runs {
        TestEntry::Error { message } => out.push_str(&format!("not available: {message}\n\n")),
        TestEntry::Ok { result: r } => {
            out.push_str(&format!(
                "| Test Value | {:.2} |\n|---|---|\n| Cases Less Than Test Value | {} |\n| Cases Greater Than Test Value | {} |\n| Total Cases | {} |\n| Number of Runs | {} |\n| Z Statistic | {:.2} |\n| Prob. | {:.2} |\n\n",
                r.cutoff,
                r.n2,
                r.n1,
                r.n1 + r.n2,
                r.runs,
                r.z,
                r.p_value
            ));
        }
    }

    out.push_str("## BDS Test\n\n");
    match &b.bds {
        TestEntry::Error { message } => out.push_str(&format!("not available: {message}\n\n")),
        TestEntry::Ok { result } => {
            out.push_str(&format!("Raw Epsilon: {:.4}\n\n", result.epsilon));
            out.push_str("| Dimension | BDS-Stat. | Z-Stat. | Prob. |\n|---|---|---|---|\n");
            for row in &result.rows {
                out.push_str(&format!(
                    "| {} | {:.2} | {:.2} | {:.2} |\n",
                    row.m, row.raw_stat, row.z, row.p_value
                ));
            }
            out.push('\n');
        }
    }

    gof_markdown(&mut out, "Testing a Benford Distribution for First Digit", &b.benford_gof);
    gof_markdown(&mut out, "Testing a Uniform Distribution for First Digit", &b.uniform_gof);

    out.push_str("## ADF Unit Root Test\n\nNull Hypothesis: The Time Series Has a Unit Root\n\n");
    match &b.adf {
        TestEntry::Error { message } => out.push_str(&format!("not available: {message}\n\n")),
        TestEntry::Ok { result: a } => {
            out.push_str(&format!(
                "Deterministic terms: {:?}; chosen lag: {}\n\n| ADF-Stat. | Critical Value (5%) | P-Value |\n|---|---|---|\n| {:.2} | {:.2} | {:.2} |\n\n",
                a.deterministic, a.chosen_lag, a.statistic, a.critical_values.pct_5, a.p_value
            ));
        }
    }

    if let Some(v) = &doc.verdict {
        out.push_str("## Verdict\n\n");
        out.push_str(&format!(
            "- Randomness: {:?}\n- Efficiency: {:?}\n- First-digit law: {:?}\n- Conclusion: {:?}\n- Concordant: {}\n\n{}\n",
            v.randomness_verdict, v.emh_verdict, v.benford_verdict, v.nexus_conclusion, v.concordance, v.narrative
        ));
    }

    if let Some(w) = &doc.windows {
        out.push_str(&format!(
            "\n## Sub-period scan\n\nWindow {} / step {}: {:.1}% of {} windows conform.\n\n| Start | End | p-value | Reject |\n|---|---|---|---|\n",
            w.window_length,
            w.step,
            w.conforming_fraction * 100.0,
            w.windows.len()
        ));
        for win in &w.windows {
            out.push_str(&format!(
                "| {} | {} | {:.4} | {} |\n",
                win.start, win.end, win.p_value, win.reject
            ));
        }
    }
    out
}
