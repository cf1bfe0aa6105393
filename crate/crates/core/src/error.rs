use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice needs at least 2 sites, got {0}")]
    TooFewSites(usize),

    #[error("invalid gradient alpha = {0}: must be finite and non-negative")]
    InvalidAlpha(f64),

    #[error("invalid propagation time tau = {0}: must be finite and non-negative")]
    InvalidTau(f64),

    #[error("bessel_j({order}, {x}) outside the supported range |n| <= 500, |x| <= 1000")]
    BesselOutOfRange { order: i64, x: f64 },

    #[error("symmetric eigensolver failed to converge on a {0}x{0} Hamiltonian")]
    Eigensolver(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("W-state amplitudes must have unit norm, got sum |c|^2 = {0}")]
    NotNormalized(f64),

    #[error("correlation matrix is not Hermitian: imaginary intensity residue {0:e}")]
    NonHermitian(f64),

    #[error("negative intensity {value:e} at time index {time_index}, site index {site_index}")]
    NegativeIntensity {
        value: f64,
        time_index: usize,
        site_index: usize,
    },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("spectrum |c(k)|^2 is flat; half-maximum width is undefined")]
    DegenerateSpectrum,

    #[error("spectrum |c(k)|^2 is not unimodal (ripple {0:e} of peak)")]
    NonUnimodalSpectrum(f64),

    #[error("unitarity defect {defect:e} exceeds tolerance {tolerance:e}")]
    UnitarityViolation { defect: f64, tolerance: f64 },

    #[error("cannot render an empty intensity map")]
    EmptyMap,

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the `wbloch` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 3,
            Error::Eigensolver(_)
            | Error::NonHermitian(_)
            | Error::NegativeIntensity { .. }
            | Error::UnitarityViolation { .. }
            | Error::DegenerateSpectrum
            | Error::NonUnimodalSpectrum(_) => 4,
            _ => 2,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
