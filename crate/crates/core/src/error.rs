use thiserror::Error;

use crate::linalg::SkewViolation;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(SkewViolation),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("no skew-symmetrizable matrix realizes this diagram")]
    Unrealizable,
    #[error("not a quasi-Cartan companion: {0}")]
    NotACompanion(String),
    #[error("companion is not admissible")]
    NotAdmissible,
    #[error("shape mismatch: {0}")]
    DifferentShape(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    BadVertex { vertex: usize, n: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("congruence witness not found")]
    WitnessNotFound,
    #[error("form has trivial kernel")]
    EmptyKernel,
    #[error("diagram is not connected")]
    Disconnected,
    #[error("diagram is not acyclic")]
    NotAcyclic,
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSkewSymmetrizable(_) => "NotSkewSymmetrizable",
            Error::InvalidDiagram(_) => "InvalidDiagram",
            Error::Unrealizable => "Unrealizable",
            Error::NotACompanion(_) => "NotACompanion",
            Error::NotAdmissible => "NotAdmissible",
            Error::DifferentShape(_) => "DifferentShape",
            Error::BadVertex { .. } => "BadVertex",
            Error::CapExceeded(_) => "CapExceeded",
            Error::WitnessNotFound => "WitnessNotFound",
            Error::EmptyKernel => "EmptyKernel",
            Error::Disconnected => "Disconnected",
            Error::NotAcyclic => "NotAcyclic",
            Error::BadParams(_) => "BadParams",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
