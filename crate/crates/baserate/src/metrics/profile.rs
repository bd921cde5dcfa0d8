use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::num::{Probability, Real};

/// Conditional performance of a binary detector.
///
/// `tpr` is the probability of flagging a damaged case, `fpr` the probability
/// of flagging an intact one. Both condition on the true state, so they are
/// properties of the detector alone and say nothing about how rare damage is.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DetectorProfile<R: Real> {
    tpr: Probability<R>,
    fpr: Probability<R>,
}

impl<R: Real> DetectorProfile<R> {
    pub fn new(tpr: R, fpr: R) -> Result<Self> {
        Ok(Self {
            tpr: Probability::named(tpr, "tpr")?,
            fpr: Probability::named(fpr, "fpr")?,
        })
    }

    /// Assembles a profile from rates that already passed validation.
    pub fn from_probabilities(tpr: Probability<R>, fpr: Probability<R>) -> Self {
        Self { tpr, fpr }
    }

    /// True positive rate (sensitivity, recall).
    pub fn tpr(&self) -> R {
        self.tpr.get()
    }

    /// False positive rate (false alarm rate).
    pub fn fpr(&self) -> R {
        self.fpr.get()
    }

    /// Miss rate. The sum `tpr() + fnr()` evaluates to exactly 1: the
    /// complement rounds by at most half an ulp of 1, which the sum absorbs.
    pub fn fnr(&self) -> R {
        R::one() - self.tpr()
    }

    /// Specificity. The sum `fpr() + tnr()` evaluates to exactly 1.
    pub fn tnr(&self) -> R {
        R::one() - self.fpr()
    }
}

/// The monitored stock: how common damage is and how many cases are examined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Population<R: Real> {
    base_rate: Probability<R>,
    size: u64,
}

impl<R: Real> Population<R> {
    pub fn new(base_rate: R, size: u64) -> Result<Self> {
        Ok(Self {
            base_rate: Probability::named(base_rate, "base_rate")?,
            size,
        })
    }

    /// Prior probability that a randomly chosen case is damaged.
    pub fn base_rate(&self) -> Probability<R> {
        self.base_rate
    }

    /// Number of examined cases.
    pub fn size(&self) -> u64 {
        self.size
    }
}
