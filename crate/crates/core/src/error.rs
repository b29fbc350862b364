use thiserror::Error;

/// Everything that can go wrong while building a basis, running the optics
/// model, or executing an experiment.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("eigen-solver did not converge: {0}")]
    EigenSolve(String),

    #[error("requested {requested} modes but only {max_safe} eigenvalues are above the underflow threshold; largest safe K is {max_safe}")]
    TooManyModes { requested: usize, max_safe: usize },

    #[error("mode index {k} out of range (basis holds {available} modes)")]
    ModeIndex { k: usize, available: usize },

    #[error("field does not match basis: {0}")]
    GridMismatch(String),

    #[error("object has zero energy; photon normalization is undefined")]
    ZeroEnergy,

    #[error("eigenvalue of mode {mode} ({value:e}) is below the reconstruction threshold {threshold:e}")]
    EigenvalueUnderflow {
        mode: usize,
        value: f64,
        threshold: f64,
    },

    #[error("noise model {0} requires a photon scale")]
    MissingPhotonScale(&'static str),

    #[error("reference spectrum is identically zero on the requested band")]
    ZeroReference,

    #[error("invalid scenario:\n{0}")]
    Scenario(crate::experiment::Diagnostics),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 invalid scenario, 2 numerical
    /// failure, 3 I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Scenario(_) | Error::InvalidConfig(_) | Error::Json(_) => 1,
            Error::Io(_) | Error::Csv(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
