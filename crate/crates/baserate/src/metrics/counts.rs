use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metrics::MetricsReport;
use crate::num::{max_exact_count, Real};

/// How the four cells were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Real-valued products of rates and the population size. Deliberately
    /// unrounded: rounding would make the derived metrics drift with N.
    Expected,
    /// Realized integer tallies from observation or simulation.
    Empirical,
}

/// The four cells of a binary confusion matrix.
///
/// Rows are the true state, columns the prediction: `tp` and `fn` split the
/// damaged cases, `fp` and `tn` the intact ones. Cells are stored on the
/// scalar type in both modes; empirical construction rejects totals the
/// scalar cannot represent exactly, so empirical cells are always exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfusionCounts<R: Real> {
    tp: R,
    fn_: R,
    fp: R,
    tn: R,
    mode: CountMode,
}

impl<R: Real> ConfusionCounts<R> {
    /// Expected-mode cells. Each must be finite and nonnegative.
    pub fn expected(tp: R, fn_: R, fp: R, tn: R) -> Result<Self> {
        for (value, name) in [(tp, "tp"), (fn_, "fn"), (fp, "fp"), (tn, "tn")] {
            if !(value.is_finite() && value >= R::zero()) {
                return Err(Error::InvalidCount {
                    name,
                    value: value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            tp,
            fn_,
            fp,
            tn,
            mode: CountMode::Expected,
        })
    }

    /// Empirical-mode cells. The total must stay within the scalar's exact
    /// integer range so tallies and their ratios do not silently round.
    pub fn empirical(tp: u64, fn_: u64, fp: u64, tn: u64) -> Result<Self> {
        let total = tp as u128 + fn_ as u128 + fp as u128 + tn as u128;
        let max = max_exact_count::<R>();
        if total > max as u128 {
            return Err(Error::PopulationTooLarge {
                size: total.min(u64::MAX as u128) as u64,
                max,
            });
        }
        let cell = |c: u64| R::from_u64(c).expect("cell within exact integer range");
        Ok(Self {
            tp: cell(tp),
            fn_: cell(fn_),
            fp: cell(fp),
            tn: cell(tn),
            mode: CountMode::Empirical,
        })
    }

    pub(crate) fn expected_unchecked(tp: R, fn_: R, fp: R, tn: R) -> Self {
        Self {
            tp,
            fn_,
            fp,
            tn,
            mode: CountMode::Expected,
        }
    }

    /// Cells in `(tp, fn, fp, tn)` order.
    pub fn cells(&self) -> (R, R, R, R) {
        (self.tp, self.fn_, self.fp, self.tn)
    }

    pub fn true_positives(&self) -> R {
        self.tp
    }

    pub fn false_negatives(&self) -> R {
        self.fn_
    }

    pub fn false_positives(&self) -> R {
        self.fp
    }

    pub fn true_negatives(&self) -> R {
        self.tn
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    /// Sum of all four cells, the population size the cells came from.
    pub fn total(&self) -> R {
        self.tp + self.fn_ + self.fp + self.tn
    }

    /// Metrics recomputed from the cells alone.
    ///
    /// Pure cell ratios: accuracy is the share of correct calls, precision
    /// conditions on the predicted-positive column, recall on the damaged
    /// row, and f1 is the harmonic mean of the last two. Ratios with an empty
    /// denominator are `None`, including f1 when precision and recall are
    /// both zero.
    pub fn metrics(&self) -> MetricsReport<R> {
        let total = self.total();
        let accuracy = (total > R::zero()).then(|| (self.tp + self.tn) / total);
        let predicted_positive = self.tp + self.fp;
        let precision = (predicted_positive > R::zero()).then(|| self.tp / predicted_positive);
        let damaged = self.tp + self.fn_;
        let recall = (damaged > R::zero()).then(|| self.tp / damaged);
        let two = R::one() + R::one();
        let f1 = match (precision, recall) {
            (Some(p), Some(r)) if p + r > R::zero() => Some(two * p * r / (p + r)),
            _ => None,
        };
        MetricsReport {
            accuracy,
            precision,
            recall,
            f1,
        }
    }
}

impl<R: Real> Serialize for ConfusionCounts<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("ConfusionCounts", 5)?;
        match self.mode {
            CountMode::Empirical => {
                let as_int = |v: R| v.to_u64().expect("empirical cell is an exact integer");
                state.serialize_field("tp", &as_int(self.tp))?;
                state.serialize_field("fn", &as_int(self.fn_))?;
                state.serialize_field("fp", &as_int(self.fp))?;
                state.serialize_field("tn", &as_int(self.tn))?;
            }
            CountMode::Expected => {
                let as_float = |v: R| v.to_f64().expect("cell converts to f64");
                state.serialize_field("tp", &as_float(self.tp))?;
                state.serialize_field("fn", &as_float(self.fn_))?;
                state.serialize_field("fp", &as_float(self.fp))?;
                state.serialize_field("tn", &as_float(self.tn))?;
            }
        }
        state.serialize_field("mode", &self.mode)?;
        state.end()
    }
}
