use std::path::PathBuf;

/// Errors produced by the spectra library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("no bound state: {0}")]
    NoBoundState(&'static str),

    #[error("series failed to converge within {terms} terms")]
    Convergence { terms: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown molecule `{0}`")]
    UnknownMolecule(String),
}

pub type Result<T> = std::result::Result<T, SpectraError>;
