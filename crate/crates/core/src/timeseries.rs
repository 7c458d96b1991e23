//! Price-series ingestion, validation, and descriptive statistics.
//!
//! A [`TimeSeries`] is an ordered sequence of finite observations with
//! optional strictly increasing calendar dates. It is immutable after
//! construction; every test in the battery consumes it read-only.

use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    dates: Option<Vec<NaiveDate>>,
    label: String,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, dates: Option<Vec<NaiveDate>>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSeries("empty series".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!("non-finite value at index {i}")));
        }
        if let Some(d) = &dates {
            if d.len() != values.len() {
                return Err(Error::InvalidSeries(format!(
                    "{} dates for {} values",
                    d.len(),
                    values.len()
                )));
            }
            if let Some(i) = d.windows(2).position(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSeries(format!(
                    "dates not strictly increasing at index {}",
                    i + 1
                )));
            }
        }
        Ok(Self { values, dates, label: label.into() })
    }

    pub fn from_values(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        Self::new(values, None, label)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dates(&self) -> Option<&[NaiveDate]> {
        self.dates.as_deref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sub-series over `range` (half-open), keeping aligned dates.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        if start >= end || end > self.values.len() {
            return Err(Error::InvalidParameter(format!("bad slice {start}..{end}")));
        }
        Ok(Self {
            values: self.values[start..end].to_vec(),
            dates: self.dates.as_ref().map(|d| d[start..end].to_vec()),
            label: format!("{}[{start}..{end}]", self.label),
        })
    }
}

/// Descriptive statistics in the moment conventions used throughout:
/// sample std dev (divisor n-1), skewness m3/m2^1.5, raw Pearson
/// kurtosis m4/m2^2 (not excess).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub std_dev: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    pub max: f64,
    pub min: f64,
}

pub fn summarize(ts: &TimeSeries) -> Result<SummaryStats> {
    let x = ts.values();
    let n = x.len();
    if n < 2 {
        return Err(Error::TooShort { needed: 2, got: n });
    }
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    for v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;
    let std_dev = (m2 * nf / (nf - 1.0)).sqrt();
    let (skewness, kurtosis) = if m2 > 0.0 {
        (m3 / m2.powf(1.5), m4 / (m2 * m2))
    } else {
        (0.0, 0.0)
    };
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Ok(SummaryStats {
        n,
        mean,
        median,
        std_dev,
        skewness,
        kurtosis,
        max: sorted[n - 1],
        min: sorted[0],
    })
}

/// Ingestion audit. Calendar gaps are advisory metadata only; nothing
/// is imputed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IngestReport {
    pub rows_read: usize,
    pub rows_dropped: usize,
    pub gap_count: usize,
    pub gap_spans: Vec<(NaiveDate, NaiveDate)>,
    /// True when no dates were available so the gap audit could not run.
    pub gap_audit_skipped: bool,
}

/// Default maximum tolerated day gap: weekend plus one holiday.
pub const DEFAULT_MAX_GAP_DAYS: i64 = 4;

/// Flags consecutive-date jumps larger than `max_gap_days`.
pub fn detect_gaps(ts: &TimeSeries, max_gap_days: i64) -> (usize, Vec<(NaiveDate, NaiveDate)>, bool) {
    let Some(dates) = ts.dates() else {
        return (0, Vec::new(), true);
    };
    let mut spans = Vec::new();
    for w in dates.windows(2) {
        if (w[1] - w[0]).num_days() > max_gap_days {
            spans.push((w[0], w[1]));
        }
    }
    (spans.len(), spans, false)
}

fn parse_date(s: &str) -> Option<NaiveDate> {
    let s = s.trim().trim_matches('"');
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .or_else(|_| NaiveDate::parse_from_str(s, "%d.%m.%Y"))
        .ok()
}

fn parse_value(s: &str) -> Option<f64> {
    let cleaned: String = s
        .trim()
        .trim_matches('"')
        .chars()
        .filter(|c| *c != ',' && *c != ' ' && *c != '\u{a0}')
        .collect();
    if cleaned.is_empty() {
        return None;
    }
    cleaned.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Loads one numeric column (and optionally a date column) from a CSV
/// file. Unparseable or empty target cells drop the whole row and are
/// counted, never treated as zeros. `path` of `-` reads stdin.
pub fn load_csv(path: &str, column: &str, date_column: Option<&str>) -> Result<(TimeSeries, IngestReport)> {
    let raw = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| Error::Io { path: path.into(), source })?;
        buf
    } else {
        std::fs::read_to_string(Path::new(path)).map_err(|source| Error::Io { path: path.into(), source })?
    };
    load_csv_str(&raw, column, date_column, path)
}

pub fn load_csv_str(
    raw: &str,
    column: &str,
    date_column: Option<&str>,
    label: &str,
) -> Result<(TimeSeries, IngestReport)> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(raw.as_bytes());
    let headers = reader.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let value_idx = find(column)?;
    let date_idx = date_column.map(find).transpose()?;

    let mut values = Vec::new();
    let mut dates = date_idx.map(|_| Vec::new());
    let mut rows_read = 0usize;
    let mut rows_dropped = 0usize;
    for record in reader.records() {
        let record = record?;
        rows_read += 1;
        let value = record.get(value_idx).and_then(parse_value);
        let date = date_idx.map(|i| record.get(i).and_then(parse_date));
        match (value, date) {
            (Some(v), None) => values.push(v),
            (Some(v), Some(Some(d))) => {
                values.push(v);
                dates.as_mut().unwrap().push(d);
            }
            _ => rows_dropped += 1,
        }
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    // Exported price histories are often newest-first; flip to
    // chronological order when dates are strictly decreasing.
    if let Some(d) = &mut dates {
        if d.len() >= 2 && d.windows(2).all(|w| w[0] > w[1]) {
            d.reverse();
            values.reverse();
        }
    }
    let ts = TimeSeries::new(values, dates, label)?;
    let (gap_count, gap_spans, gap_audit_skipped) = detect_gaps(&ts, DEFAULT_MAX_GAP_DAYS);
    Ok((
        ts,
        IngestReport { rows_read, rows_dropped, gap_count, gap_spans, gap_audit_skipped },
    ))
}

/// Serializes a series back to the CSV schema `load_csv` reads.
pub fn to_csv(ts: &TimeSeries, column: &str) -> String {
    let mut out = String::new();
    match ts.dates() {
        Some(dates) => {
            out.push_str(&format!("Date,{column}\n"));
            for (d, v) in dates.iter().zip(ts.values()) {
                out.push_str(&format!("{d},{v}\n"));
            }
        }
        None => {
            out.push_str(&format!("{column}\n"));
            for v in ts.values() {
                out.push_str(&format!("{v}\n"));
            }
        }
    }
    out
}
