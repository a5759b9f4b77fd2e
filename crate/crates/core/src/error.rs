use std::path::PathBuf;

use thiserror::Error;

/// Rejected run or problem configuration.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("gene {index}: lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds { index: usize, lower: f64, upper: f64 },
    #[error("gene {index}: integer gene needs integral bounds, got [{lower}, {upper}]")]
    FractionalIntegerBounds { index: usize, lower: f64, upper: f64 },
    #[error("group tags must be contiguous from 0 (missing group {0})")]
    GroupGap(usize),
    #[error("encoding has no genes")]
    EmptyEncoding,
    #[error("reef size {reef_size} is not divisible by {substrates} substrates")]
    UnevenPartition { reef_size: usize, substrates: usize },
    #[error("at least one substrate is required")]
    NoSubstrates,
    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },
    #[error("fa + fd = {0} exceeds 1")]
    FractionOverlap(f64),
    #[error("{given} seed solutions do not fit in {budget} occupied slots")]
    TooManySeeds { given: usize, budget: usize },
    #[error("seed solution {index} has length {len}, encoding expects {expected}")]
    SeedLength { index: usize, len: usize, expected: usize },
    #[error("multi-point crossover needs fewer cut points ({points}) than genes ({genes})")]
    TooManyCutPoints { points: usize, genes: usize },
    #[error("substrate {substrate}: {reason}")]
    Substrate { substrate: String, reason: String },
    #[error("{0}")]
    Invalid(String),
}

/// Failures while reading or validating input data files.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: expected {expected} data rows, found {found}")]
    RowCount { path: PathBuf, expected: usize, found: usize },
    #[error("{path}: row {row}: {message}")]
    Row { path: PathBuf, row: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}
