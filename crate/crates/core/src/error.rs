use thiserror::Error;

/// Errors raised by the mitigation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed textual input, e.g. a bit-string with non-binary characters.
    #[error("format error: {0}")]
    Format(String),

    /// Two objects that must share a register width do not.
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: u32, found: u32 },

    /// A value lies outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The circuit profile references basis gates absent from the calibration.
    #[error("unknown gate name(s): {}", .0.join(", "))]
    UnknownGates(Vec<String>),

    /// The circuit profile uses more qubits than the calibration covers.
    #[error("profile uses {needed} qubits but calibration covers only {available}")]
    QubitCoverage { needed: usize, available: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
