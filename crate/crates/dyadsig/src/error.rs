use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by signature computation, feature extraction, statistics,
/// classification, and the file pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Two tensors with different alphabet size or truncation depth were combined.
    #[error("tensor shape mismatch: {left_dim} letters at depth {left_depth} vs {right_dim} letters at depth {right_depth}")]
    ShapeMismatch {
        left_dim: usize,
        left_depth: usize,
        right_dim: usize,
        right_depth: usize,
    },

    /// A path or series was given with no points.
    #[error("path must contain at least one point")]
    EmptyPath,

    /// A point's coordinate count does not match the declared dimension.
    #[error("point {index} has {got} coordinates, expected {expected}")]
    PointDimMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    /// A coordinate, value, or parameter was NaN or infinite.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// The scalar coefficient of a tensor does not satisfy the operation's requirement.
    #[error("scalar coefficient must be {expected} for this operation, got {got}")]
    BadScalarTerm { expected: f64, got: f64 },

    /// Timestamp count differs from value count in a timed series.
    #[error("series has {values} values but {timestamps} timestamps")]
    TimestampCountMismatch { values: usize, timestamps: usize },

    /// Timestamps must be strictly increasing.
    #[error("timestamp {index} is not greater than its predecessor")]
    TimestampsNotIncreasing { index: usize },

    /// A speech segment has a negative start or does not end after it starts.
    #[error("segment {index} has invalid bounds [{start_s}, {end_s}]")]
    InvalidSegment {
        index: usize,
        start_s: f64,
        end_s: f64,
    },

    /// Speech segments must be sorted by start time and must not overlap.
    #[error("segment {index} starts at {next_start_s} s before the previous segment ends at {prev_end_s} s")]
    OverlappingSegments {
        index: usize,
        prev_end_s: f64,
        next_start_s: f64,
    },

    /// The analysis window length must be positive.
    #[error("analysis window must be positive, got {got} s")]
    InvalidWindow { got: f64 },

    /// A head track has no samples after truncation.
    #[error("{person} track is empty within the frame window")]
    EmptyTrack { person: &'static str },

    /// Two head tracks share no frame indices.
    #[error("tracks share no frame indices and cannot be aligned")]
    UnalignableTracks,

    /// Frame indices within one track must be strictly increasing.
    #[error("{person} track frame {frame} repeats or decreases at row {index}")]
    FramesNotIncreasing {
        person: &'static str,
        frame: u64,
        index: usize,
    },

    /// Two columns that must be paired have different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Not enough samples for the requested statistic.
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },

    /// A rank correlation was requested on a constant column.
    #[error("{side} values are constant; rank correlation is undefined")]
    ConstantInput { side: &'static str },

    /// The correlation target has fewer than two distinct values.
    #[error("target column has fewer than two distinct values")]
    DegenerateTarget,

    /// The confidence level must lie strictly between zero and one.
    #[error("confidence level must be in (0, 1), got {got}")]
    InvalidCiLevel { got: f64 },

    /// A raw test score lies outside the scale's published range.
    #[error("{scale} score {score} is outside the valid range {min}..={max}")]
    ScoreOutOfRange {
        scale: &'static str,
        score: i32,
        min: i32,
        max: i32,
    },

    /// A classification task was given labels of only one class.
    #[error("labels for {scale} contain a single class; classification is undefined")]
    SingleClass { scale: &'static str },

    /// A class is too small for the requested split or fit.
    #[error("{scale} has only {count} samples labelled {label}, need at least {required}")]
    ClassTooSmall {
        scale: &'static str,
        label: bool,
        count: usize,
        required: usize,
    },

    /// A dataset with zero rows was passed to a fit or evaluation routine.
    #[error("dataset has no rows")]
    EmptyDataset,

    /// A scale name did not match any known test scale.
    #[error("unknown scale {got:?}; valid scales are WISC, TEA, NEPSY, CELF")]
    UnknownScale { got: String },

    /// A feature-set name did not match any known feature set.
    #[error("unknown feature set {got:?}; valid sets are interaction, demographics")]
    UnknownFeatureSet { got: String },

    /// A numeric or structural parameter is out of its accepted range.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// A synthetic cohort description is unusable.
    #[error("invalid cohort description: {0}")]
    InvalidCohortSpec(String),

    /// Duplicate feature names in one vector or matrix.
    #[error("duplicate feature name {name:?}")]
    DuplicateFeature { name: String },

    /// No subject could be read from the input directories.
    #[error("no readable subjects found")]
    NoSubjects,

    /// Feature and score files share no subject identifiers.
    #[error("feature matrix and score table share no subject identifiers")]
    NoCommonSubjects,

    /// Filesystem failure with the offending path.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A structured input file does not parse or is missing required content.
    #[error("{path}:{line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
