//! Closed-form confusion matrix algebra for a binary detector screening a
//! population with a known base rate.
//!
//! The detector is summarized by its conditional rates, the population by how
//! common damage is. Everything else follows in closed form: expected counts,
//! threshold-free quality metrics, the Bayes posterior of a positive result,
//! and the inverse solvers that turn a precision target into a requirement on
//! the false positive rate or the base rate.

mod counts;
mod profile;
mod render;
mod report;
mod solve;

pub use counts::{ConfusionCounts, CountMode};
pub use profile::{DetectorProfile, Population};
pub use render::{render_confusion, ConfusionView, RATES_CAVEAT};
pub use report::{
    expected_counts, metrics, metrics_perfect_recall, posterior_given_positive, MetricsReport,
    PosteriorReport,
};
pub use solve::{required_base_rate, required_fpr, Requirement, RequirementFlag};
