use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("value is not a monomial character in the eigenvalues; the section space is zero for every k")]
    NotMonomialCharacter,

    #[error("operation requires an exact (rational) spectrum")]
    SymbolicModeUnsupported,

    #[error("general resonant spectra are only supported in exact mode")]
    SymbolicResonantUnsupported,

    #[error("no closed-form general section for a general resonant spectrum; use the monomial basis")]
    GeneralResonantUnsupported,

    #[error("spectrum is {found}, operation requires a no-resonance spectrum")]
    WrongClass { found: String },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("zero form")]
    ZeroForm,

    #[error("generators are degenerate: their wedge vanishes identically")]
    DegenerateGenerators,

    #[error("kernel vector is not a single monomial form")]
    NonMonomialKernel,

    #[error("invalid input in `{field}`: {message}")]
    Input { field: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Whether the failure is an unsupported class/mode combination rather
    /// than malformed input.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::SymbolicModeUnsupported
                | Error::SymbolicResonantUnsupported
                | Error::GeneralResonantUnsupported
                | Error::WrongClass { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
