use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use benford_battery::battery::{render_verdict, run_battery, window_scan, BatteryConfig};
use benford_battery::digits::{benford_expected, chi_square_gof, digit_histogram, uniform_expected};
use benford_battery::distribution::{anderson_darling, jarque_bera, ks_test, ReferenceDistribution};
use benford_battery::error::{Error, Result};
use benford_battery::generators::{generate, GeneratorConfig, GeneratorKind};
use benford_battery::randomness::{bds_test, runs_test, BdsConfig, CutoffPolicy, EpsilonMethod, RunsConfig};
use benford_battery::report::{render_json, render_markdown, ReportDocument, ReportFormat, ReportMetadata};
use benford_battery::timeseries::{load_csv_str, to_csv, IngestReport, TimeSeries};
use benford_battery::unit_root::{adf_test, AdfSpec, Criterion, Deterministic, LagMode};

/// First-digit law and market-efficiency test battery.
#[derive(Parser)]
#[command(name = "benford-battery", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// CSV file path, or `-` for stdin.
    path: String,
    /// Value column name; defaults to the first of Close, Value, Price.
    #[arg(long)]
    column: Option<String>,
    /// Date column name for the calendar-gap audit.
    #[arg(long)]
    date_column: Option<String>,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Report format; env BENFORD_BATTERY_REPORT sets the default.
    #[arg(long, value_parser = parse_format)]
    report: Option<ReportFormat>,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full battery plus verdict on a CSV series.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Sub-period window length; enables the window scan.
        #[arg(long)]
        windows: Option<usize>,
        /// Step between window starts (defaults to the window length).
        #[arg(long)]
        window_step: Option<usize>,
        /// Maximum BDS embedding dimension (2..=6).
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        /// BDS epsilon: frac:Q, std:K, or raw:V.
        #[arg(long, default_value = "frac:0.7", value_parser = parse_eps)]
        eps_method: EpsilonMethod,
        /// ADF deterministic terms: const, trend, or none.
        #[arg(long = "spec", default_value = "const", value_parser = parse_det)]
        deterministic: Deterministic,
        /// ADF lag selection: auto:sbc, auto:aic, or fixed:N.
        #[arg(long, default_value = "auto:sbc", value_parser = parse_lag)]
        lag: LagMode,
        /// Runs-test cutoff: mean, median, or value:V.
        #[arg(long, default_value = "mean", value_parser = parse_cutoff)]
        cutoff: CutoffPolicy,
        /// Use the runs variance with the trailing +1 term.
        #[arg(long)]
        plus_one_variance: bool,
        /// Stamp the report with the current time (off by default so
        /// identical inputs produce byte-identical reports).
        #[arg(long)]
        timestamp: bool,
    },
    /// First-digit chi-square test against Benford and uniform references.
    Benford {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Wald-Wolfowitz runs test.
    Runs {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value = "mean", value_parser = parse_cutoff)]
        cutoff: CutoffPolicy,
        #[arg(long)]
        plus_one_variance: bool,
    },
    /// BDS correlation-integral test.
    Bds {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        #[arg(long, default_value = "frac:0.7", value_parser = parse_eps)]
        eps_method: EpsilonMethod,
    },
    /// Augmented Dickey-Fuller unit-root test.
    Adf {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long = "spec", default_value = "const", value_parser = parse_det)]
        deterministic: Deterministic,
        #[arg(long, default_value = "auto:sbc", value_parser = parse_lag)]
        lag: LagMode,
    },
    /// Jarque-Bera, Kolmogorov-Smirnov, and Anderson-Darling tests.
    Dist {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Reference for KS and AD: normal (fitted) or uniform (min/max).
        #[arg(long = "ref", default_value = "uniform", value_parser = parse_ref)]
        reference: ReferenceDistribution,
    },
    /// Emit a seeded synthetic series as CSV.
    Simulate {
        #[command(subcommand)]
        kind: SimulateKind,
    },
}

#[derive(Args, Clone)]
struct SimulateCommon {
    /// Number of observations.
    #[arg(long)]
    n: usize,
    /// PRNG seed (required: runs are reproducible by construction).
    #[arg(long)]
    seed: u64,
    /// Write CSV to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand, Clone)]
enum SimulateKind {
    /// Random walk x_t = x_{t-1} + sigma * e_t.
    RandomWalk {
        #[command(flatten)]
        common: SimulateCommon,
        #[arg(long, default_value_t = 100.0)]
        x0: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },
    /// Stationary AR(1) noise.
    Ar1 {
        #[command(flatten)]
        common: SimulateCommon,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },
    /// Deterministic logistic map.
    LogisticMap {
        #[command(flatten)]
        common: SimulateCommon,
        #[arg(long, default_value_t = 4.0)]
        r: f64,
        #[arg(long, default_value_t = 0.2)]
        x0: f64,
    },
    /// Ratio of two uniforms on (0,1).
    RatioUniform {
        #[command(flatten)]
        common: SimulateCommon,
    },
    /// Ratio of two exponentials.
    RatioExponential {
        #[command(flatten)]
        common: SimulateCommon,
        #[arg(long, default_value_t = 1.0)]
        lambda1: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda2: f64,
    },
    /// Exact logarithmic first-digit sampler.
    BenfordExact {
        #[command(flatten)]
        common: SimulateCommon,
    },
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    match s {
        "json" => Ok(ReportFormat::Json),
        "md" | "markdown" => Ok(ReportFormat::Markdown),
        other => Err(format!("unknown format '{other}' (expected json or md)")),
    }
}

fn parse_eps(s: &str) -> std::result::Result<EpsilonMethod, String> {
    let (kind, value) = s.split_once(':').ok_or_else(|| format!("expected kind:value, got '{s}'"))?;
    let v: f64 = value.parse().map_err(|_| format!("bad number '{value}'"))?;
    match kind {
        "frac" | "fraction" => Ok(EpsilonMethod::FractionOfPairs { target: v }),
        "std" => Ok(EpsilonMethod::StdMultiple { multiple: v }),
        "raw" => Ok(EpsilonMethod::Raw { value: v }),
        other => Err(format!("unknown epsilon method '{other}' (frac, std, raw)")),
    }
}

fn parse_cutoff(s: &str) -> std::result::Result<CutoffPolicy, String> {
    match s {
        "mean" => Ok(CutoffPolicy::Mean),
        "median" => Ok(CutoffPolicy::Median),
        other => match other.split_once(':') {
            Some(("value", v)) => v
                .parse()
                .map(|value| CutoffPolicy::Value { value })
                .map_err(|_| format!("bad cutoff value '{v}'")),
            _ => Err(format!("unknown cutoff '{other}' (mean, median, value:V)")),
        },
    }
}

fn parse_det(s: &str) -> std::result::Result<Deterministic, String> {
    match s {
        "const" | "constant" => Ok(Deterministic::Constant),
        "trend" => Ok(Deterministic::ConstantAndTrend),
        "none" => Ok(Deterministic::None),
        other => Err(format!("unknown spec '{other}' (const, trend, none)")),
    }
}

fn parse_lag(s: &str) -> std::result::Result<LagMode, String> {
    match s {
        "auto:sbc" => Ok(LagMode::Auto { criterion: Criterion::Sbc, p_max: None }),
        "auto:aic" => Ok(LagMode::Auto { criterion: Criterion::Aic, p_max: None }),
        other => match other.split_once(':') {
            Some(("fixed", n)) => n
                .parse()
                .map(|p| LagMode::Fixed { p })
                .map_err(|_| format!("bad lag order '{n}'")),
            _ => Err(format!("unknown lag mode '{other}' (auto:sbc, auto:aic, fixed:N)")),
        },
    }
}

fn parse_ref(s: &str) -> std::result::Result<ReferenceDistribution, String> {
    match s {
        "normal" => Ok(ReferenceDistribution::NormalFitted),
        "uniform" => Ok(ReferenceDistribution::UniformMinMax),
        other => Err(format!("unknown reference '{other}' (normal, uniform)")),
    }
}

const COLUMN_CANDIDATES: [&str; 3] = ["Close", "Value", "Price"];

fn load_series(input: &InputArgs) -> Result<(TimeSeries, IngestReport, String)> {
    let raw = if input.path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| Error::Io { path: "-".into(), source })?;
        buf
    } else {
        std::fs::read_to_string(&input.path).map_err(|source| Error::Io { path: input.path.clone(), source })?
    };
    let date_col = input.date_column.as_deref();
    if let Some(col) = &input.column {
        let (ts, report) = load_csv_str(&raw, col, date_col, &input.path)?;
        return Ok((ts, report, col.clone()));
    }
    for col in COLUMN_CANDIDATES {
        if let Ok((ts, report)) = load_csv_str(&raw, col, date_col, &input.path) {
            return Ok((ts, report, col.to_string()));
        }
    }
    Err(Error::MissingColumn(format!(
        "none of {} present; pass --column",
        COLUMN_CANDIDATES.join(", ")
    )))
}

fn default_format(output: &OutputArgs) -> ReportFormat {
    output.report.unwrap_or_else(|| {
        match std::env::var("BENFORD_BATTERY_REPORT").ok().as_deref() {
            Some("md") | Some("markdown") => ReportFormat::Markdown,
            _ => ReportFormat::Json,
        }
    })
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| Error::Io { path: path.clone(), source })
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Serialize a single-test result for the fragment subcommands.
fn emit_fragment<T: serde::Serialize>(output: &OutputArgs, value: &T, markdown: impl FnOnce() -> String) -> Result<()> {
    let text = match default_format(output) {
        ReportFormat::Json => serde_json::to_string_pretty(value)
            .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?,
        ReportFormat::Markdown => markdown(),
    };
    emit(output, &text)
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            input,
            output,
            windows,
            window_step,
            max_dim,
            eps_method,
            deterministic,
            lag,
            cutoff,
            plus_one_variance,
            timestamp,
        } => {
            let (ts, ingest, column) = load_series(&input)?;
            let mut config = BatteryConfig::with_alpha(input.alpha);
            config.runs.cutoff = cutoff;
            config.runs.variance_plus_one = plus_one_variance;
            config.bds.max_dim = max_dim;
            config.bds.epsilon_method = eps_method;
            config.adf.deterministic = deterministic;
            config.adf.lag_mode = lag;
            let battery = run_battery(&ts, &config, Some(ingest))?;
            let verdict = render_verdict(&battery).ok();
            let scan = match windows {
                Some(len) => Some(window_scan(&ts, len, window_step.unwrap_or(len), input.alpha)?),
                None => None,
            };
            let doc = ReportDocument {
                metadata: ReportMetadata {
                    input: input.path.clone(),
                    column,
                    artifact_version: env!("CARGO_PKG_VERSION").to_string(),
                    timestamp: timestamp.then(|| chrono::Utc::now().to_rfc3339()),
                },
                battery,
                verdict,
                windows: scan,
            };
            let text = match default_format(&output) {
                ReportFormat::Json => render_json(&doc)?,
                ReportFormat::Markdown => render_markdown(&doc),
            };
            emit(&output, &text)
        }
        Command::Benford { input, output } => {
            let (ts, _, _) = load_series(&input)?;
            let hist = digit_histogram(&ts)?;
            let benford = chi_square_gof(&hist, &benford_expected(hist.total)?, input.alpha)?;
            let uniform = chi_square_gof(&hist, &uniform_expected(hist.total)?, input.alpha)?;
            let pair = serde_json::json!({ "benford": benford, "uniform": uniform });
            emit_fragment(&output, &pair, || {
                format!(
                    "Benford chi-sq {:.2} ({}), uniform chi-sq {:.2} ({}); critical {:.3}\n",
                    benford.statistic,
                    if benford.reject { "rejected" } else { "not rejected" },
                    uniform.statistic,
                    if uniform.reject { "rejected" } else { "not rejected" },
                    benford.critical_value
                )
            })
        }
        Command::Runs { input, output, cutoff, plus_one_variance } => {
            let (ts, _, _) = load_series(&input)?;
            let config = RunsConfig { cutoff, alpha: input.alpha, variance_plus_one: plus_one_variance };
            let result = runs_test(&ts, &config)?;
            emit_fragment(&output, &result, || {
                format!(
                    "Runs: {} of expected {:.2} (n1={}, n2={}), Z = {:.2}, p = {:.4} ({})\n",
                    result.runs,
                    result.expected_runs,
                    result.n1,
                    result.n2,
                    result.z,
                    result.p_value,
                    if result.reject { "rejected" } else { "not rejected" }
                )
            })
        }
        Command::Bds { input, output, max_dim, eps_method } => {
            let (ts, _, _) = load_series(&input)?;
            let config = BdsConfig { max_dim, epsilon_method: eps_method, alpha: input.alpha };
            let result = bds_test(&ts, &config)?;
            emit_fragment(&output, &result, || {
                let mut s = format!("Raw Epsilon: {:.4}\n\n| Dimension | BDS-Stat. | Z-Stat. | Prob. |\n|---|---|---|---|\n", result.epsilon);
                for row in &result.rows {
                    s.push_str(&format!("| {} | {:.2} | {:.2} | {:.2} |\n", row.m, row.raw_stat, row.z, row.p_value));
                }
                s
            })
        }
        Command::Adf { input, output, deterministic, lag } => {
            let (ts, _, _) = load_series(&input)?;
            let spec = AdfSpec { deterministic, lag_mode: lag, alpha: input.alpha };
            let result = adf_test(&ts, &spec)?;
            emit_fragment(&output, &result, || {
                format!(
                    "ADF tau = {:.2} (lag {}), 5% critical {:.2}, p = {:.2} ({})\n",
                    result.statistic,
                    result.chosen_lag,
                    result.critical_values.pct_5,
                    result.p_value,
                    if result.reject { "unit root rejected" } else { "unit root not rejected" }
                )
            })
        }
        Command::Dist { input, output, reference } => {
            let (ts, _, _) = load_series(&input)?;
            let results = vec![
                jarque_bera(&ts, input.alpha)?,
                ks_test(&ts, reference, input.alpha)?,
                anderson_darling(&ts, reference, input.alpha)?,
            ];
            emit_fragment(&output, &results, || {
                let mut s = String::from("| Test | Stat. | Reject |\n|---|---|---|\n");
                for r in &results {
                    s.push_str(&format!("| {:?} | {:.2} | {} |\n", r.test, r.statistic, r.reject));
                }
                s
            })
        }
        Command::Simulate { kind } => {
            let (common, gen_kind) = match kind {
                SimulateKind::RandomWalk { common, x0, sigma } => {
                    (common, GeneratorKind::RandomWalk { x0, sigma })
                }
                SimulateKind::Ar1 { common, phi, sigma } => (common, GeneratorKind::Ar1 { phi, sigma }),
                SimulateKind::LogisticMap { common, r, x0 } => (common, GeneratorKind::LogisticMap { r, x0 }),
                SimulateKind::RatioUniform { common } => (common, GeneratorKind::RatioUniform),
                SimulateKind::RatioExponential { common, lambda1, lambda2 } => {
                    (common, GeneratorKind::RatioExponential { lambda1, lambda2 })
                }
                SimulateKind::BenfordExact { common } => (common, GeneratorKind::BenfordExact),
            };
            let series = generate(&GeneratorConfig { kind: gen_kind, length: common.n, seed: common.seed })?;
            let csv = to_csv(&series, "Value");
            match &common.out {
                Some(path) => std::fs::write(path, csv).map_err(|source| Error::Io { path: path.clone(), source }),
                None => {
                    print!("{csv}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
