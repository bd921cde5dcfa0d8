//! Behavioral checks of the simulator: forced corners, determinism under
//! rechunking, statistical agreement with the closed forms, and the pinned
//! golden tallies.
//!
//! Stochastic assertions use standard-error bands (3 or 4 sigma as stated
//! per test), never exact tallies; exact tallies live only in golden files
//! pinned from a verified first run.

mod common;

use std::fs;
use std::path::PathBuf;

use baserate::montecarlo::{convergence_report, golden_csv, simulate, SimulationConfig};
use baserate::{metrics, DetectorProfile64, Error, Population64};
use common::assert_close;

fn config(tpr: f64, fpr: f64, b: f64, n: u64, seed: u64) -> SimulationConfig {
    SimulationConfig::new(
        DetectorProfile64::new(tpr, fpr).unwrap(),
        Population64::new(b, n).unwrap(),
        seed,
    )
}

#[test]
fn forced_draws_fill_a_single_cell() {
    let result = simulate(&config(1.0, 0.0, 1.0, 1000, 123)).unwrap();
    let (tp, fn_, fp, tn) = result.counts.cells();
    assert_eq!((tp, fn_, fp, tn), (1000.0, 0.0, 0.0, 0.0));
    assert_eq!(result.empirical_metrics.precision, Some(1.0));
}

#[test]
fn empty_population_is_all_zeros() {
    let result = simulate(&config(0.9, 0.1, 0.5, 0, 7)).unwrap();
    assert_eq!(result.counts.total(), 0.0);
    assert_eq!(result.empirical_metrics.accuracy, None);
    assert_eq!(result.standard_error_precision, None);
}

#[test]
fn population_beyond_exact_tally_range_is_rejected() {
    let too_large = (1u64 << 53) + 1;
    assert!(matches!(
        simulate(&config(0.5, 0.5, 0.5, too_large, 1)),
        Err(Error::PopulationTooLarge { .. })
    ));
}

#[test]
fn zero_chunk_size_is_rejected() {
    assert!(matches!(
        config(0.5, 0.5, 0.5, 10, 1).with_chunk_size(0),
        Err(Error::ZeroChunkSize)
    ));
}

// The pinned golden run: verified statistically first, then frozen so any
// change to the stream construction shows up as a tally diff.
#[test]
fn seeded_worked_scenario_matches_closed_form_and_pinned_tallies() {
    let config = config(0.98, 0.05, 0.001, 10_000_000, 42);
    let result = simulate(&config).unwrap();

    let p_hat = result.empirical_metrics.precision.unwrap();
    let se = result.standard_error_precision.unwrap();
    let closed_form = 0.019242097;
    assert!(
        (p_hat - closed_form).abs() <= 3.0 * se,
        "empirical precision {p_hat} outside 3 standard errors ({se}) of {closed_form}"
    );

    let golden = golden_csv(&config, &result);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/simulate_tpr098_fpr005_b0001_n1e7_seed42.csv");
    if path.exists() {
        let pinned = fs::read_to_string(&path).unwrap();
        assert_eq!(golden, pinned, "tallies drifted from the pinned run");
    } else {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &golden).unwrap();
    }
}

#[test]
fn balanced_coin_cells_concentrate_around_a_quarter() {
    let n = 1_000_000u64;
    let result = simulate(&config(0.5, 0.5, 0.5, n, 7)).unwrap();
    // Each cell is Binomial(n, 1/4); bound is 4*sqrt(n*p*(1-p)).
    let bound = 4.0 * ((n as f64) * 0.25 * 0.75).sqrt();
    let (tp, fn_, fp, tn) = result.counts.cells();
    let quarter = n as f64 / 4.0;
    for (cell, label) in [(tp, "tp"), (fn_, "fn"), (fp, "fp"), (tn, "tn")] {
        assert!(
            (cell - quarter).abs() <= bound,
            "{label}={cell} strays more than {bound} from {quarter}"
        );
    }
}

#[test]
fn rechunking_never_changes_the_outcome() {
    let base = config(0.98, 0.05, 0.001, 100_000, 11);
    let reference = simulate(&base).unwrap();
    for chunk_size in [1, 7_777, 100_000, 1 << 40] {
        let rechunked = simulate(&base.with_chunk_size(chunk_size).unwrap()).unwrap();
        assert_eq!(
            rechunked.counts.cells(),
            reference.counts.cells(),
            "chunk_size {chunk_size} altered the tallies"
        );
    }
}

#[test]
fn identical_configs_reproduce_byte_identical_output() {
    let config = config(0.9, 0.2, 0.05, 100_000, 3);
    let first = simulate(&config).unwrap();
    let second = simulate(&config).unwrap();
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&second).unwrap()
    );
    assert_eq!(golden_csv(&config, &first), golden_csv(&config, &second));
}

#[test]
fn error_shrinks_with_scale_for_most_seeds() {
    let mut improved = 0;
    let mut signs = (0, 0);
    for seed in 0..20u64 {
        let report = convergence_report(
            &config(0.98, 0.05, 0.001, 1, seed),
            &[1_000, 100_000, 10_000_000],
        )
        .unwrap();
        let closed = report.rows[0].closed_form_precision;
        assert!(report.rows.iter().all(|r| r.closed_form_precision == closed));
        let coarse = report.rows[0].abs_error;
        let fine = report.rows[2].abs_error;
        // The 10^3 row can have no alarms at all; that counts as no
        // improvement rather than a skip.
        if let (Some(coarse), Some(fine)) = (coarse, fine) {
            if fine < coarse {
                improved += 1;
            }
        }
        let signed = report.rows[2].empirical_precision.unwrap() - closed.unwrap();
        if signed >= 0.0 {
            signs.0 += 1;
        } else {
            signs.1 += 1;
        }
    }
    assert!(improved >= 14, "only {improved}/20 seeds improved at 10^7");
    assert!(
        signs.0 > 0 && signs.1 > 0,
        "errors are systematic: {signs:?} (positive, negative)"
    );
}

#[test]
fn zero_size_grid_row_is_undefined_but_present() {
    let report = convergence_report(&config(0.98, 0.05, 0.001, 1, 5), &[0]).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.rows[0].n, 0);
    assert_eq!(report.rows[0].empirical_precision, None);
    assert_eq!(report.rows[0].abs_error, None);
    assert!(report.rows[0].closed_form_precision.is_some());
    assert!(report.to_csv().lines().nth(1).unwrap().starts_with("0,,"));
}

#[test]
fn convergence_grid_must_be_ascending_and_nonempty() {
    let config = config(0.98, 0.05, 0.001, 1, 5);
    assert!(matches!(
        convergence_report(&config, &[]),
        Err(Error::UnsortedGrid { name: "n_grid" })
    ));
    assert!(matches!(
        convergence_report(&config, &[100, 100]),
        Err(Error::UnsortedGrid { name: "n_grid" })
    ));
}

#[test]
fn convergence_report_is_reproducible() {
    let config = config(0.98, 0.05, 0.001, 1, 9);
    let first = convergence_report(&config, &[100_000]).unwrap();
    let second = convergence_report(&config, &[100_000]).unwrap();
    assert_eq!(first.to_csv(), second.to_csv());
    assert_eq!(first.to_string(), second.to_string());
}

#[test]
fn simulated_posterior_agrees_with_the_closed_form() {
    let n = 10_000_000u64;
    let result = simulate(&config(0.9, 0.2, 0.05, n, 21)).unwrap();
    let profile = DetectorProfile64::new(0.9, 0.2).unwrap();
    let closed = metrics(&profile, baserate::Probability64::new(0.05).unwrap())
        .precision
        .unwrap();
    let p_hat = result.empirical_metrics.precision.unwrap();
    let se = result.standard_error_precision.unwrap();
    assert!(
        (p_hat - closed).abs() <= 3.0 * se,
        "{p_hat} outside 3 standard errors ({se}) of {closed}"
    );
}

#[test]
fn mean_cell_frequencies_are_unbiased_over_many_seeds() {
    let n = 100_000u64;
    let seeds = 100u64;
    let mut sums = [0.0f64; 4];
    let mut alarm_share_sum = 0.0;
    for seed in 0..seeds {
        let result = simulate(&config(0.98, 0.05, 0.001, n, seed)).unwrap();
        let (tp, fn_, fp, tn) = result.counts.cells();
        for (slot, cell) in sums.iter_mut().zip([tp, fn_, fp, tn]) {
            *slot += cell / n as f64;
        }
        alarm_share_sum += (tp + fp) / n as f64;
    }
    // Expected cell shares; the standard error of each mean share is
    // sqrt(p*(1-p)/n) / sqrt(seeds).
    let b = 0.001;
    let shares = [
        b * 0.98,
        b * 0.02,
        (1.0 - b) * 0.05,
        (1.0 - b) * 0.95,
    ];
    for ((slot, share), label) in sums.iter().zip(shares).zip(["tp", "fn", "fp", "tn"]) {
        let mean = slot / seeds as f64;
        let se = (share * (1.0 - share) / n as f64).sqrt() / (seeds as f64).sqrt();
        assert!(
            (mean - share).abs() <= 3.0 * se,
            "{label}: mean share {mean} outside 3 standard errors ({se}) of {share}"
        );
    }

    let marginal = 0.98 * b + 0.05 * (1.0 - b);
    let mean_alarm = alarm_share_sum / seeds as f64;
    let se = (marginal * (1.0 - marginal) / n as f64).sqrt() / (seeds as f64).sqrt();
    assert_close(mean_alarm, marginal, 3.0 * se, "marginal alarm share");
}
