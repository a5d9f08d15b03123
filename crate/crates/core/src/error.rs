use thiserror::Error;

use crate::contact::{SymmetryClass, ValidationReport};

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid contact parameters: {0}")]
    Invalid(ValidationReport),

    #[error("operation requires class {expected}, got {found}")]
    WrongClass {
        expected: &'static str,
        found: SymmetryClass,
    },

    #[error(
        "no quantization condition: beta = 0 and alpha + delta = 0 with gamma = 0 (free particle)"
    )]
    NoQuantizationCondition,

    #[error("real-axis pole of the scattering amplitude at k = {k}")]
    RealAxisPole { k: f64 },

    #[error("degenerate S-matrix eigenproblem (Delta = 0) at k = {k}")]
    DegenerateEigenproblem { k: f64 },

    #[error("root finder did not converge")]
    NoRoot,

    #[error("no bound-state bands: the isolated contact has no admissible root")]
    NoBands,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
