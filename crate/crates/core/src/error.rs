use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("empty vertex list")]
    EmptyPolytope,
    #[error("region is unbounded")]
    Unbounded,
    #[error("region is infeasible")]
    Infeasible,
    #[error("invalid state space: {0}")]
    InvalidStateSpace(String),
    #[error("invalid effect: {0}")]
    InvalidEffect(String),
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),
    #[error("invalid post-processing: {0}")]
    InvalidPostProcessing(String),
    #[error("effect {effect} of measurement {measurement} is not a member of E")]
    NotInRestriction { measurement: usize, effect: usize },
    #[error("invalid bipartite state: {0}")]
    InvalidState(String),
    #[error("theory has no generating measurement set")]
    MissingMeasurements,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem inapplicable: {0}")]
    TheoremInapplicable(String),
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
