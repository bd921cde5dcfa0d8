//! Evidence updating against a brute-force enumeration oracle, expected-cost
//! decisions against direct two-branch evaluation, and operating point
//! selection worked through by hand.

mod common;

use baserate::decision::{
    act_threshold, decide, select_operating_point, update_posterior, Action, Evidence,
    OperatingPoint, Outcome, RocCurve, Selection, COST_TIE_TOLERANCE,
};
use baserate::{posterior_given_positive, CostModel64, DetectorProfile64, Error, Probability64};
use common::{assert_close, enumerated_posterior};

fn prob(value: f64) -> Probability64 {
    Probability64::new(value).unwrap()
}

fn profile(tpr: f64, fpr: f64) -> DetectorProfile64 {
    DetectorProfile64::new(tpr, fpr).unwrap()
}

#[test]
fn single_positive_reproduces_the_worked_posterior() {
    let evidence = [Evidence::positive(profile(0.98, 0.05))];
    let posterior = update_posterior(prob(0.001), &evidence).unwrap();
    assert_close(posterior, 0.01924, 1e-5, "worked posterior");
    assert_close(
        posterior,
        enumerated_posterior(0.001, &evidence).unwrap(),
        1e-12,
        "enumeration agreement",
    );
}

#[test]
fn single_positive_equals_the_posterior_report_bit_for_bit() {
    for (tpr, fpr, b) in [(0.98, 0.05, 0.001), (0.9, 0.2, 0.05), (0.3, 0.7, 0.5)] {
        let report = posterior_given_positive(&profile(tpr, fpr), prob(b));
        let updated = update_posterior(prob(b), &[Evidence::positive(profile(tpr, fpr))]);
        assert_eq!(updated.ok(), report.posterior, "at ({tpr}, {fpr}, {b})");
    }
}

#[test]
fn empty_sequence_returns_the_prior() {
    assert_eq!(update_posterior(prob(0.3), &[]).unwrap(), 0.3);
}

#[test]
fn certain_priors_stay_fixed() {
    let evidence = [Evidence::negative(profile(0.98, 0.05))];
    assert_eq!(update_posterior(prob(0.0), &evidence).unwrap(), 0.0);
    assert_eq!(update_posterior(prob(1.0), &evidence).unwrap(), 1.0);
}

#[test]
fn two_stacked_positives_match_enumeration() {
    let evidence = [
        Evidence::positive(profile(0.98, 0.05)),
        Evidence::positive(profile(0.98, 0.05)),
    ];
    let posterior = update_posterior(prob(0.001), &evidence).unwrap();
    let oracle = enumerated_posterior(0.001, &evidence).unwrap();
    assert_close(posterior, oracle, 1e-12, "two positives");
    // A second concordant test multiplies the odds again, so the posterior
    // must rise well above the single-test 0.019.
    assert!(posterior > 0.2, "got {posterior}");
}

#[test]
fn certain_evidence_drives_the_posterior_to_a_boundary() {
    // fpr=0: a positive can only come from damage.
    let certain_alarm = [Evidence::positive(profile(0.7, 0.0))];
    assert_eq!(update_posterior(prob(0.01), &certain_alarm).unwrap(), 1.0);
    // tpr=1: a negative can only come from an intact case.
    let certain_clear = [Evidence::negative(profile(1.0, 0.4))];
    assert_eq!(update_posterior(prob(0.99), &certain_clear).unwrap(), 0.0);
}

#[test]
fn impossible_sequences_are_rejected_as_uninformative() {
    // A positive from a test that never fires in either state.
    let never_fires = [Evidence::positive(profile(0.0, 0.0))];
    assert!(matches!(
        update_posterior(prob(0.5), &never_fires),
        Err(Error::UninformativeDegenerate)
    ));
    // Contradictory certainties: the first item proves damage, the second
    // proves its absence, so the sequence has probability zero outright.
    let contradiction = [
        Evidence::positive(profile(0.7, 0.0)),
        Evidence::negative(profile(1.0, 0.4)),
    ];
    assert!(matches!(
        update_posterior(prob(0.5), &contradiction),
        Err(Error::UninformativeDegenerate)
    ));
}

// The exhaustive oracle sweep: every evidence sequence up to length 3 over
// the 5x5 rate grid, at three priors. Degenerate sequences must error
// exactly when the oracle's conditioning mass vanishes.
#[test]
fn all_short_sequences_match_the_enumeration_oracle() {
    let rates = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut kinds = Vec::new();
    for &tpr in &rates {
        for &fpr in &rates {
            for outcome in [Outcome::Positive, Outcome::Negative] {
                kinds.push(Evidence {
                    profile: profile(tpr, fpr),
                    outcome,
                });
            }
        }
    }

    let mut checked = 0u64;
    let mut sequence: Vec<Evidence<f64>> = Vec::with_capacity(3);
    // Index stacks enumerate kinds^length for each length 0..=3.
    for length in 0usize..=3 {
        let mut indices = vec![0usize; length];
        loop {
            sequence.clear();
            sequence.extend(indices.iter().map(|&i| kinds[i]));
            for prior in [0.001, 0.3, 0.9] {
                let oracle = enumerated_posterior(prior, &sequence);
                match (update_posterior(prob(prior), &sequence), oracle) {
                    (Ok(posterior), Some(expected)) => {
                        assert!(
                            (posterior - expected).abs() <= 1e-12,
                            "{sequence:?} at prior {prior}: {posterior} vs {expected}"
                        );
                    }
                    (Err(Error::UninformativeDegenerate), None) => {}
                    (got, expected) => {
                        panic!("{sequence:?} at prior {prior}: {got:?} vs oracle {expected:?}")
                    }
                }
                checked += 1;
            }
            // Odometer increment over the index stack.
            let mut position = length;
            loop {
                if position == 0 {
                    break;
                }
                indices[position - 1] += 1;
                if indices[position - 1] < kinds.len() {
                    break;
                }
                indices[position - 1] = 0;
                position -= 1;
            }
            if position == 0 {
                break;
            }
        }
    }
    // 3 priors times (1 + 50 + 50^2 + 50^3) sequences.
    assert_eq!(checked, 3 * (1 + 50 + 2_500 + 125_000));
}

#[test]
fn act_threshold_follows_the_cost_ratio() {
    assert_eq!(
        act_threshold(&CostModel64::new(1.0, 1.0).unwrap()),
        0.5
    );
    assert_eq!(
        act_threshold(&CostModel64::new(1.0, 99.0).unwrap()),
        0.01
    );
    assert_eq!(
        act_threshold(&CostModel64::new(5.0, 20.0).unwrap()),
        0.2
    );
}

#[test]
fn decide_flips_across_the_threshold_with_verified_costs() {
    let costs = CostModel64::new(5.0, 20.0).unwrap();
    for (posterior, expected_action) in [(0.19, Action::NoAct), (0.21, Action::Act)] {
        let decision = decide(prob(posterior), &costs);
        assert_eq!(decision.action, expected_action, "at {posterior}");
        assert_close(
            decision.expected_cost_act,
            (1.0 - posterior) * 5.0,
            1e-15,
            "act branch",
        );
        assert_close(
            decision.expected_cost_no_act,
            posterior * 20.0,
            1e-15,
            "no-act branch",
        );
    }
}

#[test]
fn decide_prefers_waiting_at_the_worked_posterior() {
    let decision = decide(prob(0.01924), &CostModel64::new(1.0, 10.0).unwrap());
    assert_eq!(decision.action, Action::NoAct);
    assert_close(decision.expected_cost_act, 0.981, 1e-3, "act branch");
    assert_close(decision.expected_cost_no_act, 0.192, 1e-3, "no-act branch");
}

#[test]
fn certain_damage_always_acts_for_free() {
    let decision = decide(prob(1.0), &CostModel64::new(7.0, 2.0).unwrap());
    assert_eq!(decision.action, Action::Act);
    assert_eq!(decision.expected_cost_act, 0.0);
}

#[test]
fn exact_ties_resolve_to_acting() {
    let costs = CostModel64::new(1.0, 1.0).unwrap();
    let at_threshold = decide(prob(0.5), &costs);
    assert_eq!(at_threshold.action, Action::Act);
    // Just beyond the tie band the cheaper branch wins again.
    let below = decide(prob(0.5 - 1e-9), &costs);
    assert_eq!(below.action, Action::NoAct);
    // The band must be far tighter than the probability scales tested here.
    const { assert!(COST_TIE_TOLERANCE < 1e-9) };
}

#[test]
fn cost_model_rejects_invalid_weights() {
    assert!(matches!(
        CostModel64::new(-1.0, 2.0),
        Err(Error::InvalidCost {
            name: "cost_false_positive",
            ..
        })
    ));
    assert!(matches!(
        CostModel64::new(1.0, f64::INFINITY),
        Err(Error::InvalidCost {
            name: "cost_false_negative",
            ..
        })
    ));
    assert!(matches!(CostModel64::new(0.0, 0.0), Err(Error::ZeroCostModel)));
    assert!(CostModel64::new(0.0, 1.0).is_ok());
}

fn point(threshold: f64, tpr: f64, fpr: f64) -> OperatingPoint<f64> {
    OperatingPoint::new(threshold, tpr, fpr).unwrap()
}

#[test]
fn curves_are_sorted_and_staircase_violations_rejected() {
    let curve = RocCurve::new(vec![point(2.0, 0.8, 0.005), point(1.0, 1.0, 0.05)]).unwrap();
    let fprs: Vec<f64> = curve.points().iter().map(|p| p.fpr()).collect();
    assert_eq!(fprs, vec![0.05, 0.005]);

    assert!(matches!(
        RocCurve::<f64>::new(vec![]),
        Err(Error::EmptyCurve)
    ));
    // tpr rises while fpr falls: impossible for one detector's thresholds.
    assert!(matches!(
        RocCurve::new(vec![point(1.0, 0.9, 0.05), point(2.0, 0.95, 0.005)]),
        Err(Error::NonMonotoneCurve { index: 1 })
    ));
    assert!(matches!(
        OperatingPoint::new(f64::NAN, 0.5, 0.5),
        Err(Error::NonFiniteThreshold { .. })
    ));
}

#[test]
fn selection_reports_none_with_the_best_achievable_precision() {
    // At b=0.05, theta_1 = (1.0, 0.05) has precision 0.5128 and
    // theta_2 = (0.8, 0.005) has 0.04/0.04475 = 0.8938..., still short of
    // the 0.90 target.
    let curve = RocCurve::new(vec![point(1.0, 1.0, 0.05), point(2.0, 0.8, 0.005)]).unwrap();
    let selection = select_operating_point(&curve, prob(0.05), prob(0.90)).unwrap();
    match selection {
        Selection::NoneQualify { best_precision } => {
            assert_close(
                best_precision.unwrap(),
                0.04 / 0.04475,
                1e-12,
                "best precision",
            );
        }
        Selection::Selected(point) => panic!("unexpected selection: {point:?}"),
    }

    // Raising theta_2's sensitivity lifts its precision over the target.
    let improved = RocCurve::new(vec![point(1.0, 1.0, 0.05), point(2.0, 0.9, 0.005)]).unwrap();
    match select_operating_point(&improved, prob(0.05), prob(0.90)).unwrap() {
        Selection::Selected(chosen) => {
            assert_eq!(chosen.threshold, 2.0);
            assert_eq!(chosen.tpr(), 0.9);
        }
        other => panic!("expected a selection, got {other:?}"),
    }
}

#[test]
fn zero_fpr_point_meets_a_perfect_target() {
    let curve = RocCurve::new(vec![point(3.0, 1.0, 0.0)]).unwrap();
    match select_operating_point(&curve, prob(0.2), prob(1.0)).unwrap() {
        Selection::Selected(chosen) => assert_eq!(chosen.threshold, 3.0),
        other => panic!("expected the only point, got {other:?}"),
    }
}

#[test]
fn target_below_base_rate_qualifies_any_informative_point() {
    let curve = RocCurve::new(vec![point(1.0, 0.6, 0.3)]).unwrap();
    match select_operating_point(&curve, prob(0.5), prob(0.3)).unwrap() {
        Selection::Selected(chosen) => assert_eq!(chosen.tpr(), 0.6),
        other => panic!("expected the informative point, got {other:?}"),
    }
}

#[test]
fn selection_prefers_sensitivity_then_fewer_false_alarms() {
    // Both points meet the target; equal tpr resolves to the lower fpr.
    let tied = RocCurve::new(vec![point(1.0, 0.9, 0.01), point(2.0, 0.9, 0.002)]).unwrap();
    match select_operating_point(&tied, prob(0.5), prob(0.5)).unwrap() {
        Selection::Selected(chosen) => assert_eq!(chosen.fpr(), 0.002),
        other => panic!("expected a selection, got {other:?}"),
    }

    let zero_target = select_operating_point(&tied, prob(0.5), prob(0.0));
    assert!(matches!(zero_target, Err(Error::ZeroTargetPrecision)));
}

#[test]
fn raising_the_target_never_raises_the_selected_sensitivity() {
    let curve = RocCurve::new(vec![
        point(1.0, 1.0, 0.08),
        point(2.0, 0.9, 0.02),
        point(3.0, 0.7, 0.004),
        point(4.0, 0.5, 0.0),
    ])
    .unwrap();
    let mut last_tpr = f64::INFINITY;
    for target in [0.2, 0.4, 0.6, 0.8, 0.95, 1.0] {
        if let Selection::Selected(chosen) =
            select_operating_point(&curve, prob(0.05), prob(target)).unwrap()
        {
            assert!(
                chosen.tpr() <= last_tpr,
                "target {target} raised tpr to {}",
                chosen.tpr()
            );
            last_tpr = chosen.tpr();
        }
    }
}
