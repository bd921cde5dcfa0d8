//! Command-line front door to the baserate library.
//!
//! Every subcommand prints the same numbers the library computes; tables are
//! for people, `--format json` for scripts. Exit codes: 0 success, 2 bad
//! input, 1 internal failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use baserate::decimal::sig9;
use baserate::decision::{
    act_threshold, decide, select_operating_point, update_posterior, Action, Evidence,
    OperatingPoint, RocCurve, Selection,
};
use baserate::montecarlo::{simulate, SimulationConfig};
use baserate::sweep::{run_sweep, zoom_sweep, MetricKind, SweepResult, SweepSpec};
use baserate::{
    expected_counts, metrics, posterior_given_positive, render_confusion, required_base_rate,
    required_fpr, ConfusionView, CostModel64, DetectorProfile64, Population64, Probability64,
};

#[derive(Parser)]
#[command(
    name = "baserate",
    version,
    about = "Reliability math for binary damage detection under low base rates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    Full,
    Zoom,
}

#[derive(Args)]
struct ProfileArgs {
    /// True positive rate of the detector
    #[arg(long, value_parser = parse_probability)]
    tpr: f64,
    /// False positive rate of the detector
    #[arg(long, value_parser = parse_probability)]
    fpr: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form confusion-matrix metrics at a base rate
    Metrics {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Fraction of cases that are truly damaged
        #[arg(long, value_parser = parse_probability)]
        base_rate: f64,
        /// Population size; adds the expected-count table
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Posterior probability of damage given a positive result
    Posterior {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, value_parser = parse_probability)]
        base_rate: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// False positive rate needed to reach a precision target
    RequiredFpr {
        #[arg(long, value_parser = parse_probability)]
        base_rate: f64,
        #[arg(long, value_parser = parse_probability)]
        target_precision: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Base rate at which a detector reaches a precision target
    RequiredBaseRate {
        #[arg(long, value_parser = parse_probability)]
        fpr: f64,
        #[arg(long, value_parser = parse_probability)]
        target_precision: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Seeded Monte Carlo cross-check of the closed-form metrics
    Simulate {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, value_parser = parse_probability)]
        base_rate: f64,
        /// Number of simulated cases
        #[arg(long)]
        n: u64,
        /// RNG seed; equal seeds reproduce results exactly
        #[arg(long)]
        seed: u64,
        /// Cases per parallel work unit; does not affect the outcome
        #[arg(long)]
        chunk_size: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Evaluate metrics over a (base rate, fpr) grid
    Sweep {
        /// Canned grid: the full unit square or the rare-event corner
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Comma-separated base rates, ascending
        #[arg(long, value_delimiter = ',')]
        b_list: Option<Vec<f64>>,
        /// Comma-separated false positive rates, ascending
        #[arg(long, value_delimiter = ',')]
        fpr_list: Option<Vec<f64>>,
        /// True positive rate held fixed across the grid
        #[arg(long, value_parser = parse_probability)]
        tpr: Option<f64>,
        /// Output path; `-` writes to standard output
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
    },
    /// Expected-cost act/no-act decision
    Decide {
        /// Already-computed posterior probability of damage
        #[arg(long, value_parser = parse_probability)]
        posterior: Option<f64>,
        /// True positive rate of the detector that fired
        #[arg(long, value_parser = parse_probability)]
        tpr: Option<f64>,
        /// False positive rate of the detector that fired
        #[arg(long, value_parser = parse_probability)]
        fpr: Option<f64>,
        /// Prior probability of damage (detector route only)
        #[arg(long, value_parser = parse_probability)]
        base_rate: Option<f64>,
        /// Follow-up test results, JSON lines or a JSON array
        #[arg(long)]
        evidence: Option<PathBuf>,
        /// Cost of acting on a false alarm
        #[arg(long, value_parser = parse_cost)]
        cost_fp: f64,
        /// Cost of ignoring real damage
        #[arg(long, value_parser = parse_cost)]
        cost_fn: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Most sensitive ROC operating point meeting a precision target
    SelectOperatingPoint {
        /// Operating points, JSON lines or a JSON array
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_parser = parse_probability)]
        base_rate: f64,
        #[arg(long, value_parser = parse_probability)]
        target_precision: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn parse_probability(raw: &str) -> Result<f64, String> {
    let value: f64 = raw
        .parse()
        .map_err(|_| format!("not a number: {raw}"))?;
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(format!("must be a probability in [0, 1], got {raw}"))
    }
}

fn parse_cost(raw: &str) -> Result<f64, String> {
    let value: f64 = raw
        .parse()
        .map_err(|_| format!("not a number: {raw}"))?;
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(format!("must be a nonnegative cost, got {raw}"))
    }
}

enum CliError {
    Usage(String),
    Internal(String),
}

impl From<baserate::Error> for CliError {
    fn from(err: baserate::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(1)
        }
    }
}

// Flag values have passed the clap parsers, so probability construction
// cannot fail here.
fn probability(value: f64) -> Probability64 {
    Probability64::new(value).expect("validated by the flag parser")
}

fn profile(args: &ProfileArgs) -> DetectorProfile64 {
    DetectorProfile64::new(args.tpr, args.fpr).expect("validated by the flag parser")
}

fn opt_sig9(value: Option<f64>) -> String {
    value.map_or_else(|| "undefined".into(), sig9)
}

fn print_json(value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|err| CliError::Internal(err.to_string()))?;
    println!("{text}");
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<serde_json::Value, CliError> {
    serde_json::to_value(value).map_err(|err| CliError::Internal(err.to_string()))
}

/// Two-column table: left-aligned labels, one value per row.
fn print_rows(rows: &[(&str, String)]) {
    let width = rows.iter().map(|(label, _)| label.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (label, value) in rows {
        writeln!(out, "{label:<width$}  {value}").expect("string write");
    }
    print!("{out}");
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Metrics {
            profile: profile_args,
            base_rate,
            n,
            format,
        } => {
            let profile = profile(&profile_args);
            let report = metrics(&profile, probability(base_rate));
            let counts = n.map(|size| {
                let population = Population64::new(base_rate, size)
                    .expect("validated by the flag parser");
                expected_counts(&profile, &population)
            });
            match format {
                Format::Json => {
                    let value = match &counts {
                        Some(counts) => json!({
                            "metrics": to_json(&report)?,
                            "counts": to_json(counts)?,
                        }),
                        None => to_json(&report)?,
                    };
                    print_json(&value)?;
                }
                Format::Table => {
                    print_rows(&[
                        ("accuracy", opt_sig9(report.accuracy)),
                        ("precision", opt_sig9(report.precision)),
                        ("recall", opt_sig9(report.recall)),
                        ("f1", opt_sig9(report.f1)),
                    ]);
                    if let Some(counts) = &counts {
                        println!();
                        print!("{}", render_confusion(ConfusionView::Counts(counts)));
                    }
                }
            }
        }
        Command::Posterior {
            profile: profile_args,
            base_rate,
            format,
        } => {
            let report = posterior_given_positive(&profile(&profile_args), probability(base_rate));
            match format {
                Format::Json => print_json(&to_json(&report)?)?,
                Format::Table => print_rows(&[
                    ("prior", sig9(report.prior)),
                    ("likelihood_positive", sig9(report.likelihood_positive)),
                    ("likelihood_false", sig9(report.likelihood_false)),
                    ("marginal_positive", sig9(report.marginal_positive)),
                    ("posterior", opt_sig9(report.posterior)),
                ]),
            }
        }
        Command::RequiredFpr {
            base_rate,
            target_precision,
            format,
        } => {
            let requirement = required_fpr(probability(base_rate), probability(target_precision))?;
            print_requirement("required_fpr", &requirement, format)?;
        }
        Command::RequiredBaseRate {
            fpr,
            target_precision,
            format,
        } => {
            let requirement = required_base_rate(probability(fpr), probability(target_precision))?;
            print_requirement("required_base_rate", &requirement, format)?;
        }
        Command::Simulate {
            profile: profile_args,
            base_rate,
            n,
            seed,
            chunk_size,
            format,
        } => {
            let population =
                Population64::new(base_rate, n).expect("validated by the flag parser");
            let mut config = SimulationConfig::new(profile(&profile_args), population, seed);
            if let Some(chunk_size) = chunk_size {
                config = config.with_chunk_size(chunk_size)?;
            }
            let result = simulate(&config)?;
            match format {
                Format::Json => print_json(&to_json(&result)?)?,
                Format::Table => {
                    print!(
                        "{}",
                        render_confusion(ConfusionView::Counts(&result.counts))
                    );
                    println!();
                    let report = &result.empirical_metrics;
                    print_rows(&[
                        ("accuracy", opt_sig9(report.accuracy)),
                        ("precision", opt_sig9(report.precision)),
                        ("recall", opt_sig9(report.recall)),
                        ("f1", opt_sig9(report.f1)),
                        (
                            "precision_standard_error",
                            opt_sig9(result.standard_error_precision),
                        ),
                        ("seed", result.seed.to_string()),
                    ]);
                }
            }
        }
        Command::Sweep {
            preset,
            b_list,
            fpr_list,
            tpr,
            out,
            format,
        } => {
            let result = match (preset, b_list, fpr_list, tpr) {
                (Some(preset), None, None, None) => match preset {
                    Preset::Full => run_sweep(&SweepSpec::full_grid()?),
                    Preset::Zoom => zoom_sweep(&SweepSpec::zoom_grid()?)?,
                },
                (None, Some(b_list), Some(fpr_list), Some(tpr)) => {
                    let spec = SweepSpec::new(b_list, fpr_list, tpr, MetricKind::all())?;
                    run_sweep(&spec)
                }
                _ => {
                    return Err(CliError::Usage(
                        "pass either --preset, or all of --b-list, --fpr-list and --tpr".into(),
                    ))
                }
            };
            let content = render_sweep(&result, format)?;
            write_output(&out, &content)?;
        }
        Command::Decide {
            posterior,
            tpr,
            fpr,
            base_rate,
            evidence,
            cost_fp,
            cost_fn,
            format,
        } => {
            let posterior = resolve_posterior(posterior, tpr, fpr, base_rate, evidence.as_deref())?;
            let costs = CostModel64::new(cost_fp, cost_fn)?;
            let decision = decide(posterior, &costs);
            let action = match decision.action {
                Action::Act => "act",
                Action::NoAct => "no_act",
            };
            match format {
                Format::Json => print_json(&json!({
                    "posterior": posterior.get(),
                    "act_threshold": act_threshold(&costs),
                    "expected_cost_act": decision.expected_cost_act,
                    "expected_cost_no_act": decision.expected_cost_no_act,
                    "action": action,
                }))?,
                Format::Table => print_rows(&[
                    ("posterior", sig9(posterior.get())),
                    ("act_threshold", sig9(act_threshold(&costs))),
                    ("expected_cost_act", sig9(decision.expected_cost_act)),
                    ("expected_cost_no_act", sig9(decision.expected_cost_no_act)),
                    ("action", action.into()),
                ]),
            }
        }
        Command::SelectOperatingPoint {
            curve,
            base_rate,
            target_precision,
            format,
        } => {
            let curve = load_curve(&curve)?;
            let selection = select_operating_point(
                &curve,
                probability(base_rate),
                probability(target_precision),
            )?;
            match (format, selection) {
                (Format::Json, Selection::Selected(point)) => {
                    print_json(&json!({ "selected": to_json(&point)? }))?;
                }
                (Format::Json, Selection::NoneQualify { best_precision }) => {
                    print_json(&json!({
                        "selected": serde_json::Value::Null,
                        "best_precision": best_precision,
                    }))?;
                }
                (Format::Table, Selection::Selected(point)) => print_rows(&[
                    ("threshold", sig9(point.threshold)),
                    ("tpr", sig9(point.tpr())),
                    ("fpr", sig9(point.fpr())),
                ]),
                (Format::Table, Selection::NoneQualify { best_precision }) => print_rows(&[
                    ("selected", "none".into()),
                    ("best_precision", opt_sig9(best_precision)),
                ]),
            }
        }
    }
    Ok(())
}

fn print_requirement(
    label: &str,
    requirement: &baserate::Requirement64,
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Json => print_json(&to_json(requirement)?),
        Format::Table => {
            let mut rows = vec![(label, sig9(requirement.value))];
            if let Some(flag) = requirement.flag {
                let value = serde_json::to_value(flag)
                    .map_err(|err| CliError::Internal(err.to_string()))?;
                let name = value.as_str().expect("flags serialize as strings");
                rows.push(("flag", name.to_string()));
            }
            print_rows(&rows);
            Ok(())
        }
    }
}

fn render_sweep(result: &SweepResult<f64>, format: SweepFormat) -> Result<String, CliError> {
    Ok(match format {
        SweepFormat::Csv => result.to_csv(),
        SweepFormat::Json => {
            let mut text = serde_json::to_string(&result.to_json())
                .map_err(|err| CliError::Internal(err.to_string()))?;
            text.push('\n');
            text
        }
    })
}

fn write_output(out: &str, content: &str) -> Result<(), CliError> {
    if out == "-" {
        io::stdout()
            .write_all(content.as_bytes())
            .map_err(|err| CliError::Internal(err.to_string()))
    } else {
        fs::write(out, content)
            .map_err(|err| CliError::Usage(format!("cannot write {out}: {err}")))
    }
}

/// Posterior from either `--posterior` directly or the detector route: prior
/// `base_rate`, the primary detector's positive result, then any follow-up
/// evidence from the file.
fn resolve_posterior(
    posterior: Option<f64>,
    tpr: Option<f64>,
    fpr: Option<f64>,
    base_rate: Option<f64>,
    evidence_path: Option<&Path>,
) -> Result<Probability64, CliError> {
    match (posterior, tpr, fpr, base_rate) {
        (Some(value), None, None, None) => {
            if evidence_path.is_some() {
                return Err(CliError::Usage(
                    "--evidence applies to the detector route, not --posterior".into(),
                ));
            }
            Ok(probability(value))
        }
        (None, Some(tpr), Some(fpr), Some(base_rate)) => {
            let primary = Evidence::positive(
                DetectorProfile64::new(tpr, fpr).expect("validated by the flag parser"),
            );
            let mut sequence = vec![primary];
            if let Some(path) = evidence_path {
                sequence.extend(load_evidence(path)?);
            }
            let value = update_posterior(probability(base_rate), &sequence)?;
            Ok(Probability64::new(value).expect("posteriors lie in [0, 1]"))
        }
        _ => Err(CliError::Usage(
            "pass either --posterior, or all of --tpr, --fpr and --base-rate".into(),
        )),
    }
}

/// Reads JSON lines, or a single JSON array if the content starts with `[`.
fn load_json_records<T: serde::de::DeserializeOwned>(
    path: &Path,
    what: &str,
) -> Result<Vec<T>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Usage(format!("cannot read {what} file {}: {err}", path.display())))?;
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(&text)
            .map_err(|err| CliError::Usage(format!("{what} file {}: {err}", path.display())));
    }
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(index, line)| {
            serde_json::from_str(line).map_err(|err| {
                CliError::Usage(format!(
                    "{what} file {} line {}: {err}",
                    path.display(),
                    index + 1
                ))
            })
        })
        .collect()
}

fn load_evidence(path: &Path) -> Result<Vec<Evidence<f64>>, CliError> {
    load_json_records(path, "evidence")
}

fn load_curve(path: &Path) -> Result<RocCurve<f64>, CliError> {
    let points: Vec<OperatingPoint<f64>> = load_json_records(path, "curve")?;
    Ok(RocCurve::new(points)?)
}
