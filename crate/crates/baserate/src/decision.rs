//! Turning posteriors into actions.
//!
//! Three pieces quantify what to do with a detection result: sequential
//! posterior updating across independent follow-up tests, an expected-cost
//! act/no-act rule, and selection of an operating point on a detector's
//! threshold curve against a precision target.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{metrics, DetectorProfile};
use crate::num::{Probability, Real};

/// Result of one test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Positive,
    Negative,
}

/// One test result together with the profile of the test that produced it.
///
/// Serializes flat as `{"tpr": .., "fpr": .., "outcome": ".."}`, the row
/// format of evidence files. Tests in a sequence are modeled as conditionally
/// independent given the damage state; correlated tests are out of scope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Evidence<R: Real> {
    #[serde(flatten)]
    pub profile: DetectorProfile<R>,
    pub outcome: Outcome,
}

impl<R: Real> Evidence<R> {
    pub fn positive(profile: DetectorProfile<R>) -> Self {
        Self {
            profile,
            outcome: Outcome::Positive,
        }
    }

    pub fn negative(profile: DetectorProfile<R>) -> Self {
        Self {
            profile,
            outcome: Outcome::Negative,
        }
    }

    /// `(P(outcome | damaged), P(outcome | intact))`.
    fn likelihoods(&self) -> (R, R) {
        match self.outcome {
            Outcome::Positive => (self.profile.tpr(), self.profile.fpr()),
            Outcome::Negative => (self.profile.fnr(), self.profile.tnr()),
        }
    }
}

/// Posterior probability of damage after observing a sequence of independent
/// test results.
///
/// Computed as the two joint probabilities
///
/// * damaged: `prior * prod P(outcome_i | damaged)`
/// * intact:  `(1-prior) * prod P(outcome_i | intact)`
///
/// normalized against each other. This is the odds-form update with the
/// likelihood ratios multiplied out, so certain evidence needs no special
/// case: a positive from a zero-fpr test zeroes the intact branch and drives
/// the posterior to 1. A single positive result reproduces
/// [`posterior_given_positive`](crate::metrics::posterior_given_positive)
/// bit for bit, and an empty sequence returns the prior.
///
/// A prior of 0 or 1 is already certain and stays fixed. Errors only when
/// both joints vanish, meaning the observed sequence has probability zero
/// under either damage state and carries no information at all.
pub fn update_posterior<R: Real>(prior: Probability<R>, evidence: &[Evidence<R>]) -> Result<R> {
    let prior = prior.get();
    if evidence.is_empty() || prior == R::zero() || prior == R::one() {
        return Ok(prior);
    }
    let mut damaged = prior;
    let mut intact = R::one() - prior;
    for item in evidence {
        let (if_damaged, if_intact) = item.likelihoods();
        damaged = damaged * if_damaged;
        intact = intact * if_intact;
    }
    let total = damaged + intact;
    if total == R::zero() {
        return Err(Error::UninformativeDegenerate);
    }
    Ok(damaged / total)
}

/// Economic weights of the two kinds of mistake.
///
/// Only these two enter the act/no-act tradeoff: costs of correct outcomes
/// shift both branches equally and cancel. At least one must be positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct CostModel<R: Real> {
    cost_false_positive: R,
    cost_false_negative: R,
}

impl<R: Real> CostModel<R> {
    pub fn new(cost_false_positive: R, cost_false_negative: R) -> Result<Self> {
        for (value, name) in [
            (cost_false_positive, "cost_false_positive"),
            (cost_false_negative, "cost_false_negative"),
        ] {
            if !(value.is_finite() && value >= R::zero()) {
                return Err(Error::InvalidCost {
                    name,
                    value: value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        if cost_false_positive + cost_false_negative == R::zero() {
            return Err(Error::ZeroCostModel);
        }
        Ok(Self {
            cost_false_positive,
            cost_false_negative,
        })
    }

    /// Cost of acting on a false alarm (needless inspection or repair).
    pub fn cost_false_positive(&self) -> R {
        self.cost_false_positive
    }

    /// Cost of ignoring real damage (failure risk gone unaddressed).
    pub fn cost_false_negative(&self) -> R {
        self.cost_false_negative
    }
}

/// Posterior above which acting minimizes expected cost:
/// `p* = c_fp / (c_fp + c_fn)`.
///
/// Expensive misses push the threshold down, so safety-critical assets act
/// on weak evidence.
pub fn act_threshold<R: Real>(costs: &CostModel<R>) -> R {
    costs.cost_false_positive / (costs.cost_false_positive + costs.cost_false_negative)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Act,
    NoAct,
}

/// The chosen action with both branch costs, so the margin is auditable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Decision<R: Real> {
    pub action: Action,
    pub expected_cost_act: R,
    pub expected_cost_no_act: R,
}

/// Absolute cost difference treated as a tie by [`decide`].
pub const COST_TIE_TOLERANCE: f64 = 1e-12;

/// Picks the cheaper branch given a posterior probability of damage.
///
/// * acting costs `(1-p) * c_fp` (the alarm may be false)
/// * not acting costs `p * c_fn` (the damage may be real)
///
/// Ties within [`COST_TIE_TOLERANCE`] resolve to acting, the conservative
/// choice when a miss and an intervention cost the same.
pub fn decide<R: Real>(posterior: Probability<R>, costs: &CostModel<R>) -> Decision<R> {
    let p = posterior.get();
    let expected_cost_act = (R::one() - p) * costs.cost_false_positive;
    let expected_cost_no_act = p * costs.cost_false_negative;
    let tie = R::from_f64(COST_TIE_TOLERANCE).expect("tolerance converts");
    let action = if expected_cost_act <= expected_cost_no_act + tie {
        Action::Act
    } else {
        Action::NoAct
    };
    Decision {
        action,
        expected_cost_act,
        expected_cost_no_act,
    }
}

/// One realizable threshold of a scored detector and the conditional rates
/// it induces. Serializes flat as `{"threshold": .., "tpr": .., "fpr": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct OperatingPoint<R: Real> {
    pub threshold: R,
    #[serde(flatten)]
    profile: DetectorProfile<R>,
}

impl<R: Real> OperatingPoint<R> {
    pub fn new(threshold: R, tpr: R, fpr: R) -> Result<Self> {
        if !threshold.is_finite() {
            return Err(Error::NonFiniteThreshold {
                value: threshold.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            threshold,
            profile: DetectorProfile::new(tpr, fpr)?,
        })
    }

    pub fn profile(&self) -> &DetectorProfile<R> {
        &self.profile
    }

    pub fn tpr(&self) -> R {
        self.profile.tpr()
    }

    pub fn fpr(&self) -> R {
        self.profile.fpr()
    }
}

/// A detector's realizable operating points, held in staircase order.
///
/// Points are sorted by descending fpr (ties by descending tpr) at
/// construction; tpr must then be non-increasing, or the input was not a
/// threshold sweep of one detector and is rejected. Selection never
/// interpolates: only listed thresholds are realizable.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct RocCurve<R: Real> {
    points: Vec<OperatingPoint<R>>,
}

impl<R: Real> RocCurve<R> {
    pub fn new(mut points: Vec<OperatingPoint<R>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCurve);
        }
        points.sort_by(|a, b| {
            (b.fpr(), b.tpr())
                .partial_cmp(&(a.fpr(), a.tpr()))
                .expect("rates are never NaN")
        });
        for (index, pair) in points.windows(2).enumerate() {
            if pair[1].tpr() > pair[0].tpr() {
                return Err(Error::NonMonotoneCurve { index: index + 1 });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[OperatingPoint<R>] {
        &self.points
    }
}

/// Outcome of an operating point search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Selection<R: Real> {
    /// The qualifying point with the highest tpr, ties broken by lower fpr.
    Selected(OperatingPoint<R>),
    /// No point reaches the target; reports the best precision on the curve
    /// (`None` when precision is undefined at every point).
    NoneQualify { best_precision: Option<R> },
}

/// Finds the most sensitive operating point whose precision at `base_rate`
/// reaches `target_precision`.
///
/// Precision per point comes from the closed-form metrics, so the selection
/// threshold means exactly what the metric reports. Rejects a zero target,
/// which every point meets vacuously.
pub fn select_operating_point<R: Real>(
    curve: &RocCurve<R>,
    base_rate: Probability<R>,
    target_precision: Probability<R>,
) -> Result<Selection<R>> {
    if target_precision.get() == R::zero() {
        return Err(Error::ZeroTargetPrecision);
    }
    let mut best_precision: Option<R> = None;
    let mut chosen: Option<OperatingPoint<R>> = None;
    for point in &curve.points {
        let Some(precision) = metrics(&point.profile, base_rate).precision else {
            continue;
        };
        if best_precision.is_none_or(|best| precision > best) {
            best_precision = Some(precision);
        }
        if precision < target_precision.get() {
            continue;
        }
        let better = match &chosen {
            None => true,
            Some(current) => {
                point.tpr() > current.tpr()
                    || (point.tpr() == current.tpr() && point.fpr() < current.fpr())
            }
        };
        if better {
            chosen = Some(*point);
        }
    }
    Ok(match chosen {
        Some(point) => Selection::Selected(point),
        None => Selection::NoneQualify { best_precision },
    })
}
