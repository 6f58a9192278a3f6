use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("matrix is not symmetric (max asymmetry {defect:.3e})")]
    NotSymmetric { defect: f64 },

    #[error("system is singular or not positive definite")]
    SingularSystem,

    #[error("eigensolver did not converge after {restarts} restarts (worst residual {worst_residual:.3e})")]
    NonConvergence {
        restarts: usize,
        worst_residual: f64,
    },

    #[error("no valid split: all projections are identical")]
    NoValidSplit,

    #[error("degenerate dictionary: every anchor is orthogonal to every non-self point")]
    DegenerateDictionary,

    #[error("non-finite value detected during {0}")]
    NonFinite(&'static str),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("full SSC refused: {n} points exceed the guard of {guard}")]
    TooLargeForFullSsc { n: usize, guard: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Tag an error with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
