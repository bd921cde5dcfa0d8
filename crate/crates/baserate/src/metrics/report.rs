use serde::Serialize;

use crate::metrics::{ConfusionCounts, DetectorProfile, Population};
use crate::num::{Probability, Real};

/// Threshold-free quality metrics of a detector at a given base rate.
///
/// `None` marks a metric whose defining ratio is 0/0 at these inputs. It
/// serializes as an explicit null so downstream tables can mask the cell
/// instead of mistaking it for a zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct MetricsReport<R: Real> {
    pub accuracy: Option<R>,
    pub precision: Option<R>,
    pub recall: Option<R>,
    pub f1: Option<R>,
}

/// Bayes update for a single positive detection.
///
/// `posterior` is the probability of damage given the alarm. It equals the
/// precision of the detector at this base rate, bit for bit: both are the
/// share of true alarms in the total alarm rate, and this crate computes them
/// through one shared expression.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct PosteriorReport<R: Real> {
    /// P(damaged), the base rate.
    pub prior: R,
    /// P(alarm | damaged), the detector's tpr.
    pub likelihood_positive: R,
    /// P(alarm | intact), the detector's fpr.
    pub likelihood_false: R,
    /// P(alarm) over the whole population.
    pub marginal_positive: R,
    /// P(damaged | alarm); `None` when no alarm can occur.
    pub posterior: Option<R>,
}

/// Alarm marginal and posterior through one expression tree, so that
/// `posterior_given_positive` and `metrics` agree bit for bit on precision.
fn alarm_rate_and_posterior<R: Real>(profile: &DetectorProfile<R>, b: R) -> (R, Option<R>) {
    let true_alarm = b * profile.tpr();
    let marginal = profile.fpr() * (R::one() - b) + true_alarm;
    let posterior = (marginal > R::zero()).then(|| true_alarm / marginal);
    (marginal, posterior)
}

/// Expected confusion counts for a detector over a population.
///
/// Cells are the exact rate products `N*b*tpr`, `N*b*(1-tpr)`, `N*fpr*(1-b)`
/// and `N*(1-b)*(1-fpr)`, kept real-valued. They conserve mass: the four sum
/// to N, the damaged row to `N*b`, the intact row to `N*(1-b)`.
pub fn expected_counts<R: Real>(
    profile: &DetectorProfile<R>,
    population: &Population<R>,
) -> ConfusionCounts<R> {
    let n = R::from_u64(population.size()).expect("u64 converts to float");
    let b = population.base_rate().get();
    let intact = R::one() - b;
    ConfusionCounts::expected_unchecked(
        n * b * profile.tpr(),
        n * b * profile.fnr(),
        n * profile.fpr() * intact,
        n * intact * profile.tnr(),
    )
}

/// Closed-form metrics of a detector at a base rate.
///
/// These do not depend on a population size:
///
/// * accuracy  = 1 - fpr*(1-b) - b*(1-tpr)
/// * precision = b*tpr / (fpr*(1-b) + b*tpr)
/// * recall    = tpr
/// * f1        = 2*b*tpr / (fpr*(1-b) + b*(1+tpr))
///
/// Precision and f1 are `None` when their denominators vanish (no alarm can
/// occur, or no damage and no false alarms exist to trade off).
pub fn metrics<R: Real>(profile: &DetectorProfile<R>, base_rate: Probability<R>) -> MetricsReport<R> {
    let b = base_rate.get();
    let intact = R::one() - b;
    let accuracy = R::one() - profile.fpr() * intact - b * profile.fnr();
    let (_, precision) = alarm_rate_and_posterior(profile, b);
    let two = R::one() + R::one();
    let f1_denominator = profile.fpr() * intact + b * (R::one() + profile.tpr());
    let f1 = (f1_denominator > R::zero()).then(|| two * b * profile.tpr() / f1_denominator);
    MetricsReport {
        accuracy: Some(accuracy),
        precision,
        recall: Some(profile.tpr()),
        f1,
    }
}

/// Metrics of a detector that never misses damage (tpr = 1).
///
/// The general formulas collapse to expressions in `fpr` and `b` alone:
///
/// * accuracy  = 1 - fpr*(1-b)
/// * precision = b / (fpr*(1-b) + b)
/// * recall    = 1
/// * f1        = 2*b / (fpr*(1-b) + 2*b)
///
/// Matches `metrics` with `tpr = 1` field for field, exactly.
pub fn metrics_perfect_recall<R: Real>(
    fpr: Probability<R>,
    base_rate: Probability<R>,
) -> MetricsReport<R> {
    let b = base_rate.get();
    let false_alarm = fpr.get() * (R::one() - b);
    let precision_denominator = false_alarm + b;
    let precision = (precision_denominator > R::zero()).then(|| b / precision_denominator);
    let two = R::one() + R::one();
    let f1_denominator = false_alarm + two * b;
    let f1 = (f1_denominator > R::zero()).then(|| two * b / f1_denominator);
    MetricsReport {
        accuracy: Some(R::one() - false_alarm),
        precision,
        recall: Some(R::one()),
        f1,
    }
}

/// Probability of damage given a positive result, with the terms of the
/// update spelled out.
///
/// The marginal alarm rate mixes true and false alarms by the base rate; the
/// posterior is the true-alarm share of that mixture and is `None` exactly
/// when the marginal is zero.
pub fn posterior_given_positive<R: Real>(
    profile: &DetectorProfile<R>,
    base_rate: Probability<R>,
) -> PosteriorReport<R> {
    let b = base_rate.get();
    let (marginal_positive, posterior) = alarm_rate_and_posterior(profile, b);
    PosteriorReport {
        prior: b,
        likelihood_positive: profile.tpr(),
        likelihood_false: profile.fpr(),
        marginal_positive,
        posterior,
    }
}
