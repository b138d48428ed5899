use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid source specification: {0}")]
    InvalidSource(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("trace file {path}: {source}")]
    TraceIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("trace file {path}, line {line}: {message}")]
    TraceParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("trace file {path}: sample {index} has value {value} outside [-127, 128]")]
    TraceRange {
        path: PathBuf,
        index: usize,
        value: i64,
    },

    #[error("signal exhausted: decision needs sample {needed} but the series has {len}")]
    SeriesExhausted { needed: usize, len: usize },

    #[error("invalid tree parameters: {0}")]
    InvalidParams(String),

    #[error("machine index {machine} out of range for {arms} arms")]
    MachineOutOfRange { machine: usize, arms: usize },

    #[error("invalid bandit problem: {0}")]
    InvalidProblem(String),

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("analysis: {0}")]
    Analysis(String),

    #[error("writing {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("problem file {path}: {message}")]
    ProblemFile { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
