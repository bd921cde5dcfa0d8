use thiserror::Error as ThisError;

/// Errors reported by constructors and operations across the crate.
///
/// Every variant is an input problem. Valid inputs never fail: degenerate
/// ratios inside computations surface as `None` fields, not errors.
#[derive(Debug, Clone, PartialEq, ThisError)]
#[non_exhaustive]
pub enum Error {
    #[error("{name} must lie in [0, 1], got {value}")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("{name} must be a finite nonnegative number, got {value}")]
    InvalidCount { name: &'static str, value: f64 },
    #[error("{name} must be a finite nonnegative cost, got {value}")]
    InvalidCost { name: &'static str, value: f64 },
    #[error("at least one of the two costs must be positive")]
    ZeroCostModel,
    #[error("target precision must be positive")]
    ZeroTargetPrecision,
    #[error("a base rate of 1 leaves no intact cases, so no false positive rate can be solved for")]
    UnitBaseRate,
    #[error("chunk size must be at least 1")]
    ZeroChunkSize,
    #[error("count {size} exceeds {max}, the largest total this scalar type tallies exactly")]
    PopulationTooLarge { size: u64, max: u64 },
    #[error("evidence sequence has zero probability under both damage states")]
    UninformativeDegenerate,
    #[error("threshold must be finite, got {value}")]
    NonFiniteThreshold { value: f64 },
    #[error("an operating point curve needs at least one point")]
    EmptyCurve,
    #[error("operating points do not form a staircase: tpr rises as fpr falls at sorted index {index}")]
    NonMonotoneCurve { index: usize },
    #[error("{name} must be nonempty and strictly ascending")]
    UnsortedGrid { name: &'static str },
    #[error("{name} must stay at or below 0.1 in the zoomed grid")]
    GridBeyondZoom { name: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;
