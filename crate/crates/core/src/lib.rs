//! Tests whether a price time series follows the first-digit
//! (Benford) law and whether it behaves like a random walk in the
//! efficient-market sense, and links the two conclusions.
//!
//! The battery runs, in order: descriptive statistics, distribution
//! tests (Jarque-Bera, Kolmogorov-Smirnov, Anderson-Darling), the
//! Wald-Wolfowitz runs test, the BDS correlation-integral test, the
//! augmented Dickey-Fuller unit-root test, and chi-square goodness of
//! fit of the first-digit histogram against the logarithmic and
//! uniform references. A verdict layer combines the reject flags:
//! IID randomness is the precondition for the digit law, and a unit
//! root is the efficient-market signature, so any randomness or
//! unit-root rejection predicts that the digit law will fail.
//!
//! ```
//! use benford_battery::battery::{run_battery, render_verdict, BatteryConfig};
//! use benford_battery::generators::{generate, GeneratorConfig, GeneratorKind};
//!
//! let series = generate(&GeneratorConfig {
//!     kind: GeneratorKind::BenfordExact,
//!     length: 1000,
//!     seed: 7,
//! }).unwrap();
//! let battery = run_battery(&series, &BatteryConfig::default(), None).unwrap();
//! let verdict = render_verdict(&battery).unwrap();
//! println!("{}", verdict.narrative);
//! ```
//!
//! The `book/` directory of the repository walks through each test
//! with worked examples; the snippets there mirror the doc-tests in
//! these modules.

pub mod battery;
pub mod digits;
pub mod distribution;
pub mod error;
pub mod generators;
pub mod numerics;
pub mod randomness;
pub mod report;
pub mod timeseries;
pub mod unit_root;

pub use error::{Error, Result};
