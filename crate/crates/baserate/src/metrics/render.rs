use crate::decimal::sig9;
use crate::metrics::{ConfusionCounts, CountMode, DetectorProfile};
use crate::num::Real;

/// Caveat printed under every rates table. Row rates condition on the true
/// state, so a table of them looks reassuring no matter how rare damage is.
pub const RATES_CAVEAT: &str =
    "note: rates condition on the true state; the base rate of damage plays no part here";

/// What to render: the detector's conditional rates, or realized counts.
pub enum ConfusionView<'a, R: Real> {
    Rates(&'a DetectorProfile<R>),
    Counts(&'a ConfusionCounts<R>),
}

/// Plain-text confusion table.
///
/// The rates view prints row percentages (each row sums to 100%) followed by
/// [`RATES_CAVEAT`]. The counts view prints the four cells with row sums,
/// column sums and the grand total.
pub fn render_confusion<R: Real>(view: ConfusionView<'_, R>) -> String {
    match view {
        ConfusionView::Rates(profile) => render_rates(profile),
        ConfusionView::Counts(counts) => render_counts(counts),
    }
}

fn percent<R: Real>(rate: R) -> String {
    let hundred = R::from_f64(100.0).expect("100 converts");
    format!("{}%", sig9(rate * hundred))
}

fn render_rates<R: Real>(profile: &DetectorProfile<R>) -> String {
    let rows = [
        vec![
            String::new(),
            "predicted damaged".to_string(),
            "predicted intact".to_string(),
        ],
        vec![
            "actual damaged".to_string(),
            percent(profile.tpr()),
            percent(profile.fnr()),
        ],
        vec![
            "actual intact".to_string(),
            percent(profile.fpr()),
            percent(profile.tnr()),
        ],
    ];
    let mut out = align(&rows);
    out.push_str(RATES_CAVEAT);
    out.push('\n');
    out
}

fn render_counts<R: Real>(counts: &ConfusionCounts<R>) -> String {
    let (tp, fn_, fp, tn) = counts.cells();
    let cell = |v: R| match counts.mode() {
        CountMode::Empirical => v
            .to_u64()
            .expect("empirical cell is an exact integer")
            .to_string(),
        CountMode::Expected => sig9(v),
    };
    let rows = [
        vec![
            String::new(),
            "predicted damaged".to_string(),
            "predicted intact".to_string(),
            "total".to_string(),
        ],
        vec![
            "actual damaged".to_string(),
            cell(tp),
            cell(fn_),
            cell(tp + fn_),
        ],
        vec![
            "actual intact".to_string(),
            cell(fp),
            cell(tn),
            cell(fp + tn),
        ],
        vec![
            "total".to_string(),
            cell(tp + fp),
            cell(fn_ + tn),
            cell(counts.total()),
        ],
    ];
    align(&rows)
}

/// Joins rows into left-aligned columns separated by two spaces.
fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|row| row.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, value) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{value:<width$}", width = widths[c]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
