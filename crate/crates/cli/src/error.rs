use rico_core::degree::DegreeError;
use rico_core::geometry::GeometryError;
use rico_core::invariants::InvariantError;
use rico_core::pascal::PascalError;
use rico_core::rico::RicoError;
use thiserror::Error;

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("theorem violation: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Violation(_) => 4,
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Degenerate(e.to_string())
    }
}

impl From<PascalError> for CliError {
    fn from(e: PascalError) -> Self {
        match e {
            PascalError::TheoremViolation(m) => CliError::Violation(m),
            e => CliError::Degenerate(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Derivation(m) => CliError::Violation(m),
            e => CliError::Degenerate(e.to_string()),
        }
    }
}

impl From<RicoError> for CliError {
    fn from(e: RicoError) -> Self {
        match e {
            RicoError::Invariant(e) => e.into(),
            e => CliError::Degenerate(e.to_string()),
        }
    }
}

impl From<DegreeError> for CliError {
    fn from(e: DegreeError) -> Self {
        CliError::Degenerate(e.to_string())
    }
}
