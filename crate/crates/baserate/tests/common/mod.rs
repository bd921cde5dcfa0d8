#![allow(dead_code)]

use baserate::decision::{Evidence, Outcome};

pub fn assert_close(actual: f64, expected: f64, tolerance: f64, label: &str) {
    let error = (actual - expected).abs();
    assert!(
        error <= tolerance,
        "{label}: {actual} vs {expected} differ by {error:e} > {tolerance:e}"
    );
}

pub fn assert_opt_close(actual: Option<f64>, expected: Option<f64>, tolerance: f64, label: &str) {
    match (actual, expected) {
        (None, None) => {}
        (Some(a), Some(e)) => assert_close(a, e, tolerance, label),
        _ => panic!("{label}: definedness mismatch, {actual:?} vs {expected:?}"),
    }
}

/// Brute-force posterior: walks every joint (damage state, outcome pattern)
/// configuration, accumulates the probability mass of configurations whose
/// pattern equals the observed sequence, and conditions on it. Shares no
/// code with the library's odds-form update.
pub fn enumerated_posterior(prior: f64, evidence: &[Evidence<f64>]) -> Option<f64> {
    assert!(evidence.len() <= 16, "enumeration is exponential in length");
    let mut matched = [0.0f64; 2];
    for damaged in [false, true] {
        let state_prob = if damaged { prior } else { 1.0 - prior };
        for pattern in 0u32..(1 << evidence.len()) {
            let mut joint = state_prob;
            let mut observed = true;
            for (index, item) in evidence.iter().enumerate() {
                let flagged = pattern & (1 << index) != 0;
                let flag_prob = if damaged {
                    item.profile.tpr()
                } else {
                    item.profile.fpr()
                };
                joint *= if flagged { flag_prob } else { 1.0 - flag_prob };
                if flagged != (item.outcome == Outcome::Positive) {
                    observed = false;
                }
            }
            if observed {
                matched[usize::from(damaged)] += joint;
            }
        }
    }
    let total = matched[0] + matched[1];
    (total > 0.0).then(|| matched[1] / total)
}
