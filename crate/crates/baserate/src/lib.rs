//! Reliability math for binary damage detection under low base rates.
//!
//! A detector is summarized by two conditional rates, the true positive rate
//! and the false positive rate. Those rates look excellent in isolation and
//! still produce alarm streams dominated by false positives once damage is
//! rare, because the flood of intact cases multiplies even a small fpr into
//! an absolute number of false alarms that swamps the handful of true ones.
//! This crate makes that effect computable in closed form and checkable by
//! simulation:
//!
//! * [`metrics`] and friends: exact confusion-matrix metrics, expected
//!   counts, and the posterior probability of damage given an alarm
//! * [`required_fpr`] / [`required_base_rate`]: inverse solvers answering
//!   "what would it take" for a precision target
//! * [`montecarlo`]: a seeded, reproducible frequentist cross-check
//! * [`decision`]: sequential evidence updating and expected-cost act/no-act
//! * [`sweep`]: metric grids over `(b, fpr)` and requirement curves, as CSV
//!   or JSON
//!
//! Everything numeric is generic over [`num::Real`] (`f32` or `f64`);
//! simulation is `f64` only so tallies stay exact. The `*64` aliases at the
//! crate root pick `f64` for callers that do not care about the generics.

pub mod decimal;
pub mod decision;
mod error;
pub mod metrics;
pub mod montecarlo;
pub mod num;
pub mod sweep;

pub use error::{Error, Result};
pub use metrics::{
    expected_counts, metrics, metrics_perfect_recall, posterior_given_positive, render_confusion,
    required_base_rate, required_fpr, ConfusionCounts, ConfusionView, CountMode, DetectorProfile,
    MetricsReport, Population, PosteriorReport, Requirement, RequirementFlag, RATES_CAVEAT,
};
pub use num::Probability;

/// [`DetectorProfile`] over `f64`.
pub type DetectorProfile64 = DetectorProfile<f64>;
/// [`Population`] over `f64`.
pub type Population64 = Population<f64>;
/// [`Probability`] over `f64`.
pub type Probability64 = Probability<f64>;
/// [`ConfusionCounts`] over `f64`.
pub type ConfusionCounts64 = ConfusionCounts<f64>;
/// [`MetricsReport`] over `f64`.
pub type MetricsReport64 = MetricsReport<f64>;
/// [`PosteriorReport`] over `f64`.
pub type PosteriorReport64 = PosteriorReport<f64>;
/// [`Requirement`] over `f64`.
pub type Requirement64 = Requirement<f64>;
/// [`decision::Evidence`] over `f64`.
pub type Evidence64 = decision::Evidence<f64>;
/// [`decision::CostModel`] over `f64`.
pub type CostModel64 = decision::CostModel<f64>;
/// [`decision::Decision`] over `f64`.
pub type Decision64 = decision::Decision<f64>;
/// [`decision::OperatingPoint`] over `f64`.
pub type OperatingPoint64 = decision::OperatingPoint<f64>;
/// [`decision::RocCurve`] over `f64`.
pub type RocCurve64 = decision::RocCurve<f64>;
/// [`sweep::SweepSpec`] over `f64`.
pub type SweepSpec64 = sweep::SweepSpec<f64>;
/// [`sweep::SweepResult`] over `f64`.
pub type SweepResult64 = sweep::SweepResult<f64>;
