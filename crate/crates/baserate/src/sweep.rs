//! Parametric sweeps over base rate and false positive rate.
//!
//! A sweep evaluates the closed-form metrics over a grid of `(b, fpr)` cells
//! at a fixed tpr and emits CSV or JSON. Presets cover the two standard
//! views: the full unit square at percent resolution, and a zoom into the
//! rare-event corner `b, fpr <= 0.1` at per-mille resolution where precision
//! collapses. A separate curve tabulates the fpr required to hit precision
//! targets as the base rate varies.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::decimal::sig9;
use crate::error::{Error, Result};
use crate::metrics::{metrics, required_fpr, DetectorProfile, MetricsReport, RequirementFlag};
use crate::num::{Probability, Real};

/// The derived metrics a sweep can tabulate. Order is fixed (CSV columns
/// always appear in this order regardless of selection order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Accuracy,
    Precision,
    Recall,
    F1,
}

impl MetricKind {
    pub fn all() -> BTreeSet<MetricKind> {
        BTreeSet::from([
            MetricKind::Accuracy,
            MetricKind::Precision,
            MetricKind::Recall,
            MetricKind::F1,
        ])
    }

    fn column(self) -> &'static str {
        match self {
            MetricKind::Accuracy => "accuracy",
            MetricKind::Precision => "precision",
            MetricKind::Recall => "recall",
            MetricKind::F1 => "f1",
        }
    }

    fn pick<R: Real>(self, report: &MetricsReport<R>) -> Option<R> {
        match self {
            MetricKind::Accuracy => report.accuracy,
            MetricKind::Precision => report.precision,
            MetricKind::Recall => report.recall,
            MetricKind::F1 => report.f1,
        }
    }
}

/// Grid definition for a sweep: which `(b, fpr)` cells to evaluate, at what
/// tpr, and which metrics to keep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec<R: Real> {
    b_values: Vec<Probability<R>>,
    fpr_values: Vec<Probability<R>>,
    tpr: Probability<R>,
    metrics_selected: BTreeSet<MetricKind>,
}

fn checked_axis<R: Real>(values: Vec<R>, name: &'static str) -> Result<Vec<Probability<R>>> {
    if values.is_empty() {
        return Err(Error::UnsortedGrid { name });
    }
    let ascending = |pair: &[R]| pair[0].partial_cmp(&pair[1]) == Some(Ordering::Less);
    if values.windows(2).any(|pair| !ascending(pair)) {
        return Err(Error::UnsortedGrid { name });
    }
    values
        .into_iter()
        .map(|value| Probability::named(value, name))
        .collect()
}

impl<R: Real> SweepSpec<R> {
    /// Axes must be nonempty and strictly ascending; values must be
    /// probabilities.
    pub fn new(
        b_values: Vec<R>,
        fpr_values: Vec<R>,
        tpr: R,
        metrics_selected: BTreeSet<MetricKind>,
    ) -> Result<Self> {
        Ok(Self {
            b_values: checked_axis(b_values, "b_values")?,
            fpr_values: checked_axis(fpr_values, "fpr_values")?,
            tpr: Probability::named(tpr, "tpr")?,
            metrics_selected,
        })
    }

    /// The full unit square at percent resolution with a perfect-recall
    /// detector: `b, fpr in {0.00, 0.01, .., 1.00}`, all metrics.
    pub fn full_grid() -> Result<Self> {
        let axis: Vec<R> = (0..=100)
            .map(|i| R::from_f64(f64::from(i) / 100.0).expect("grid value converts"))
            .collect();
        Self::new(axis.clone(), axis, R::one(), MetricKind::all())
    }

    /// The rare-event corner at per-mille resolution with a perfect-recall
    /// detector: `b, fpr in {0.000, 0.001, .., 0.100}`, all metrics.
    pub fn zoom_grid() -> Result<Self> {
        let axis: Vec<R> = (0..=100)
            .map(|i| R::from_f64(f64::from(i) / 1000.0).expect("grid value converts"))
            .collect();
        Self::new(axis.clone(), axis, R::one(), MetricKind::all())
    }

    pub fn b_values(&self) -> &[Probability<R>] {
        &self.b_values
    }

    pub fn fpr_values(&self) -> &[Probability<R>] {
        &self.fpr_values
    }

    pub fn tpr(&self) -> Probability<R> {
        self.tpr
    }

    pub fn metrics_selected(&self) -> &BTreeSet<MetricKind> {
        &self.metrics_selected
    }
}

/// One evaluated grid cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow<R: Real> {
    pub b: R,
    pub fpr: R,
    pub tpr: R,
    pub report: MetricsReport<R>,
}

/// All evaluated cells of a sweep, in b-major order (b ascending, fpr
/// ascending within each b).
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult<R: Real> {
    spec: SweepSpec<R>,
    rows: Vec<SweepRow<R>>,
    version: &'static str,
}

/// Evaluates every cell of the grid.
pub fn run_sweep<R: Real>(spec: &SweepSpec<R>) -> SweepResult<R> {
    let mut rows = Vec::with_capacity(spec.b_values.len() * spec.fpr_values.len());
    for &b in &spec.b_values {
        for &fpr in &spec.fpr_values {
            let profile = DetectorProfile::from_probabilities(spec.tpr, fpr);
            rows.push(SweepRow {
                b: b.get(),
                fpr: fpr.get(),
                tpr: spec.tpr.get(),
                report: metrics(&profile, b),
            });
        }
    }
    SweepResult {
        spec: spec.clone(),
        rows,
        version: env!("CARGO_PKG_VERSION"),
    }
}

/// Like [`run_sweep`] but insists the grid stays inside the rare-event
/// corner (`b, fpr <= 0.1`), the region the zoom view is meant to show.
pub fn zoom_sweep<R: Real>(spec: &SweepSpec<R>) -> Result<SweepResult<R>> {
    let corner = R::from_f64(0.1).expect("bound converts");
    for (axis, name) in [
        (&spec.b_values, "b_values"),
        (&spec.fpr_values, "fpr_values"),
    ] {
        // Axes are ascending, so the last value bounds the rest.
        if axis.last().expect("axes are nonempty").get() > corner {
            return Err(Error::GridBeyondZoom { name });
        }
    }
    Ok(run_sweep(spec))
}

impl<R: Real> SweepResult<R> {
    pub fn spec(&self) -> &SweepSpec<R> {
        &self.spec
    }

    pub fn rows(&self) -> &[SweepRow<R>] {
        &self.rows
    }

    /// CSV with header `b,fpr,tpr,<selected metric columns>`. Values carry
    /// 9 significant digits; undefined metrics are empty fields.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("b,fpr,tpr");
        for kind in &self.spec.metrics_selected {
            write!(out, ",{}", kind.column()).expect("string write");
        }
        out.push('\n');
        for row in &self.rows {
            write!(out, "{},{},{}", sig9(row.b), sig9(row.fpr), sig9(row.tpr))
                .expect("string write");
            for kind in &self.spec.metrics_selected {
                out.push(',');
                if let Some(value) = kind.pick(&row.report) {
                    out.push_str(&sig9(value));
                }
            }
            out.push('\n');
        }
        out
    }

    /// JSON document with a `metadata` object (grid axes, tpr, selected
    /// metrics, library version) and a `rows` array. Undefined metrics are
    /// `null`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut cell = serde_json::Map::new();
                cell.insert("b".into(), json!(row.b.to_f64()));
                cell.insert("fpr".into(), json!(row.fpr.to_f64()));
                cell.insert("tpr".into(), json!(row.tpr.to_f64()));
                for kind in &self.spec.metrics_selected {
                    let value = kind.pick(&row.report).and_then(|v| v.to_f64());
                    cell.insert(kind.column().into(), json!(value));
                }
                serde_json::Value::Object(cell)
            })
            .collect();
        json!({
            "metadata": {
                "b_values": self.spec.b_values,
                "fpr_values": self.spec.fpr_values,
                "tpr": self.spec.tpr,
                "metrics_selected": self.spec.metrics_selected,
                "version": self.version,
            },
            "rows": rows,
        })
    }
}

/// One cell of a requirement curve: the fpr needed to reach `target`
/// precision at base rate `b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct RequirementRow<R: Real> {
    pub b: R,
    pub target: R,
    pub required_fpr: R,
    pub flag: Option<RequirementFlag>,
}

/// Requirement rows in target-major order.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct RequirementCurve<R: Real> {
    pub rows: Vec<RequirementRow<R>>,
}

/// Tabulates [`required_fpr`] over `targets x b_range`, target-major.
///
/// Targets must be strictly ascending in `(0, 1]`; base rates strictly
/// ascending in `[0, 1)`. Within one target the required fpr is
/// non-decreasing in `b` (more prevalent damage tolerates more false
/// alarms), which downstream rendering relies on.
pub fn requirement_curve<R: Real>(targets: &[R], b_range: &[R]) -> Result<RequirementCurve<R>> {
    let targets = checked_axis(targets.to_vec(), "targets")?;
    let b_range = checked_axis(b_range.to_vec(), "b_range")?;
    let mut rows = Vec::with_capacity(targets.len() * b_range.len());
    for &target in &targets {
        for &b in &b_range {
            let requirement = required_fpr(b, target)?;
            rows.push(RequirementRow {
                b: b.get(),
                target: target.get(),
                required_fpr: requirement.value,
                flag: requirement.flag,
            });
        }
    }
    Ok(RequirementCurve { rows })
}

impl<R: Real> RequirementCurve<R> {
    /// CSV with header `b,target,required_fpr,flag`; the flag field is empty
    /// for ordinary rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("b,target,required_fpr,flag\n");
        for row in &self.rows {
            let flag = match row.flag {
                None => "",
                Some(RequirementFlag::Unconstrained) => "unconstrained",
                Some(RequirementFlag::DegenerateNoDamage) => "degenerate_no_damage",
                Some(RequirementFlag::AnyBaseRate) => "any_base_rate",
            };
            writeln!(
                out,
                "{},{},{},{}",
                sig9(row.b),
                sig9(row.target),
                sig9(row.required_fpr),
                flag
            )
            .expect("string write");
        }
        out
    }
}
