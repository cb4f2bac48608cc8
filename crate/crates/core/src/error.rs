use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode count must be at least 1")]
    InvalidModes,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("AsymmetryBeyondTolerance: asymmetric part {asymmetry:e} exceeds {tolerance:e}")]
    AsymmetryBeyondTolerance { asymmetry: f64, tolerance: f64 },
    #[error("UncertaintyViolation: min eigenvalue of cov + (i/2)Delta is {min_eigenvalue:e}")]
    UncertaintyViolation { min_eigenvalue: f64 },
    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(&'static str),
    #[error("ConvergenceFailure: {0}")]
    ConvergenceFailure(String),
    #[error("ModeMismatch: {0} vs {1} modes")]
    ModeMismatch(usize, usize),
    #[error("CommutatorTooLarge: |cov Delta - Delta cov| = {0:e}")]
    CommutatorTooLarge(f64),
    #[error("NegativeOperand: cov^2 - I/4 has eigenvalue {0:e}")]
    NegativeOperand(f64),
    #[error("SigmaNotPD: (hat1 + hat2)/2 is not positive definite")]
    SigmaNotPd,
    #[error("NotPure: state {0} has a symplectic eigenvalue away from 1/2")]
    NotPure(usize),
    #[error("NotGaugeInvariant: state {0} has nonzero mean or does not commute with Delta")]
    NotGaugeInvariant(usize),
    #[error("NotThermalLike: cov - I/2 has eigenvalue {0:e}")]
    NotThermalLike(f64),
    #[error("OverlapOutOfRange: {0}")]
    OverlapOutOfRange(f64),
    #[error("invalid state builder: {0}")]
    InvalidBuilder(String),
    #[error("CutoffTooSmall: truncation deficit {deficit:e} exceeds budget {budget:e} at cutoff {cutoff}")]
    CutoffTooSmall { cutoff: usize, deficit: f64, budget: f64 },
    #[error("DimCapExceeded: dimension {dim} exceeds cap {cap}")]
    DimCapExceeded { dim: usize, cap: usize },
    #[error("NotPSD: eigenvalue {0:e} below clamp threshold")]
    NotPsd(f64),
    #[error("CertificationFailure: {tag} violated with margin {margin:e}")]
    CertificationFailure { tag: String, margin: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}
