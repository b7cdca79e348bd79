use thiserror::Error;

/// Errors raised by the analysis pipeline and its oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The two modal frequencies coincide; the closed-form eigenvectors are rank deficient.
    #[error("degenerate spectrum: discriminant {discriminant:e} below tolerance {tolerance:e}")]
    DegenerateSpectrum { discriminant: f64, tolerance: f64 },

    #[error("mode {mode} normalization argument {value:e} is not positive")]
    NormalizationFailure { mode: usize, value: f64 },

    /// Signalled when both coupling rates vanish; use [`crate::modes::decoupled_basis`].
    #[error("uncoupled Hamiltonian: closed-form mode coefficients vanish, use the decoupled basis")]
    DecoupledFallback,

    #[error("momentum coefficient block is singular (|det| = {0:e})")]
    SingularUp(f64),

    #[error("state is not normalizable: {0}")]
    NotNormalizable(String),

    #[error("Ermakov-Pinney width collapsed at t = {t}")]
    SigmaCollapse { t: f64 },

    #[error("step rejected at t = {t}: error estimate {estimate:e} exceeds tolerance")]
    StepRejection { t: f64, estimate: f64 },

    #[error("root finder did not converge after {0} iterations")]
    NonConvergence(usize),

    #[error("singular block in partitioned inverse")]
    SingularBlock,

    #[error("parameter table: {0}")]
    Table(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::DegenerateSpectrum { .. } => "DegenerateSpectrum",
            Error::NormalizationFailure { .. } => "NormalizationFailure",
            Error::DecoupledFallback => "DecoupledFallback",
            Error::SingularUp(_) => "SingularUp",
            Error::NotNormalizable(_) => "NotNormalizable",
            Error::SigmaCollapse { .. } => "SigmaCollapse",
            Error::StepRejection { .. } => "StepRejection",
            Error::NonConvergence(_) => "NonConvergence",
            Error::SingularBlock => "SingularBlock",
            Error::Table(_) => "Table",
        }
    }
}
