use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::{Probability, Real};

/// Qualifier attached to a solved requirement when the plain number alone
/// would mislead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RequirementFlag {
    /// The solved rate exceeds 1: the target is below the base rate, every
    /// detector meets it, and no requirement exists. The carried value is the
    /// raw formula output.
    Unconstrained,
    /// No damage exists, so there is nothing to detect and the requirement is
    /// vacuous.
    DegenerateNoDamage,
    /// A detector that never false-alarms meets the target at every nonzero
    /// base rate.
    AnyBaseRate,
}

/// A solved requirement together with an optional qualifier.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Requirement<R: Real> {
    pub value: R,
    pub flag: Option<RequirementFlag>,
}

impl<R: Real> Requirement<R> {
    fn plain(value: R) -> Self {
        Self { value, flag: None }
    }

    fn flagged(value: R, flag: RequirementFlag) -> Self {
        Self {
            value,
            flag: Some(flag),
        }
    }
}

/// False positive rate a perfect-recall detector must stay under to reach a
/// precision target at a given base rate.
///
/// Solves `precision = b / (fpr*(1-b) + b)` for fpr:
///
/// * fpr = (b/p) * ((1-p)/(1-b))
///
/// At `p = b` the two factors cancel exactly and the answer is 1. Below the
/// base rate the formula leaves its probability domain, reported as
/// [`RequirementFlag::Unconstrained`] rather than clamped. A zero base rate
/// short-circuits to 0 with [`RequirementFlag::DegenerateNoDamage`].
///
/// Rejects a zero target (nothing to solve) and a base rate of 1 (no intact
/// cases constrain the false positive rate).
pub fn required_fpr<R: Real>(
    base_rate: Probability<R>,
    target_precision: Probability<R>,
) -> Result<Requirement<R>> {
    let b = base_rate.get();
    let p = target_precision.get();
    if p == R::zero() {
        return Err(Error::ZeroTargetPrecision);
    }
    if b == R::one() {
        return Err(Error::UnitBaseRate);
    }
    if b == R::zero() {
        return Ok(Requirement::flagged(
            R::zero(),
            RequirementFlag::DegenerateNoDamage,
        ));
    }
    let value = (b / p) * ((R::one() - p) / (R::one() - b));
    if value > R::one() {
        Ok(Requirement::flagged(value, RequirementFlag::Unconstrained))
    } else {
        Ok(Requirement::plain(value))
    }
}

/// Base rate at which a perfect-recall detector with the given false positive
/// rate reaches a precision target.
///
/// Inverts the same precision formula in `b`:
///
/// * b = p*fpr / (1 - p + p*fpr)
///
/// Feeding the result back through the forward formula reproduces the target
/// to well within 1e-9. With `fpr = 0` precision is 1 at every nonzero base
/// rate, so the answer is 0 flagged [`RequirementFlag::AnyBaseRate`] for any
/// target. Rejects a zero target.
pub fn required_base_rate<R: Real>(
    fpr: Probability<R>,
    target_precision: Probability<R>,
) -> Result<Requirement<R>> {
    let f = fpr.get();
    let p = target_precision.get();
    if p == R::zero() {
        return Err(Error::ZeroTargetPrecision);
    }
    if f == R::zero() {
        return Ok(Requirement::flagged(R::zero(), RequirementFlag::AnyBaseRate));
    }
    let hit = p * f;
    Ok(Requirement::plain(hit / (R::one() - p + hit)))
}
