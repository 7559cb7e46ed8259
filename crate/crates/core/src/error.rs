use thiserror::Error;

/// Every failure the library can report.
///
/// The variants are grouped by how a caller should react: domain errors mean
/// the request itself is mathematically inadmissible, numeric errors mean an
/// algorithm failed on an admissible request.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ZeroDivisor: quaternion norm {0:e} is below the inversion threshold")]
    ZeroDivisor(f64),

    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("StructureViolation: complex-adjoint residual {residual:e} exceeds {allowed:e}")]
    StructureViolation { residual: f64, allowed: f64 },

    #[error("OutOfDomain: ({alpha}, {beta}) is outside {domain}")]
    OutOfDomain { alpha: f64, beta: f64, domain: String },

    #[error("NotIntrinsic: {0}")]
    NotIntrinsic(String),

    #[error("KindMismatch: {0}")]
    KindMismatch(String),

    #[error("NoConvergence: {0}")]
    NoConvergence(String),

    #[error("OddRealMultiplicity: real eigenvalue cluster at {re} has odd size {count}")]
    OddRealMultiplicity { re: f64, count: usize },

    #[error("Singular: {0}")]
    Singular(String),

    #[error("SeriesDiverges: {0}")]
    SeriesDiverges(String),

    #[error("AlphaInSpectrum: {0} lies on the S-spectrum")]
    AlphaInSpectrum(f64),

    #[error("DomainTooTight: {0}")]
    DomainTooTight(String),

    #[error("QuadratureStalled: no convergence with {nodes} nodes per circle (change {change:e})")]
    QuadratureStalled { nodes: usize, change: f64 },

    #[error("SingularNode: {0}")]
    SingularNode(String),

    #[error("BranchCut: {0}")]
    BranchCut(String),

    #[error("InvalidFunction: {0}")]
    InvalidFunction(String),
}

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input was rejected before any numerics ran.
    Input,
    /// The request is mathematically inadmissible (point in the spectrum,
    /// branch cut, divergent series, ...).
    Domain,
    /// An algorithm failed on an admissible request.
    Numeric,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            DimensionMismatch { .. } | InvalidFunction(_) | KindMismatch(_) => ErrorClass::Input,
            ZeroDivisor(_)
            | OutOfDomain { .. }
            | NotIntrinsic(_)
            | Singular(_)
            | SeriesDiverges(_)
            | AlphaInSpectrum(_)
            | DomainTooTight(_)
            | BranchCut(_) => ErrorClass::Domain,
            StructureViolation { .. }
            | NoConvergence(_)
            | OddRealMultiplicity { .. }
            | QuadratureStalled { .. }
            | SingularNode(_) => ErrorClass::Numeric,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
