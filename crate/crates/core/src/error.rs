use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid physical configuration: {0}")]
    InvalidConfig(String),

    #[error("wavenumber {modulus:e} is below the threshold guard; amplitudes are undefined at E = 0")]
    ZeroWavenumber { modulus: f64 },

    #[error("transmission amplitude vanishes (|T| = {modulus:e}); the unified Green function is singular")]
    TransmissionZero { modulus: f64 },

    #[error("energy {re} + {im}i lies on the spectral cut [0, inf); use boundary values or the wavenumber form")]
    OnCut { re: f64, im: f64 },

    #[error("spectral parameter must have a nonzero imaginary part")]
    RealSpectralParameter,

    #[error("adaptive quadrature did not converge on [{lo}, {hi}]: estimated error {error:e} after {intervals} subintervals")]
    QuadratureFailure {
        lo: f64,
        hi: f64,
        error: f64,
        intervals: usize,
    },

    #[error("boundary-value extrapolation is unstable: successive differences {first:e} then {second:e}")]
    ExtrapolationUnstable { first: f64, second: f64 },

    #[error("spectral tail is not negligible: relative tail amplitude {fraction:e} exceeds {tolerance:e}")]
    TailMass { fraction: f64, tolerance: f64 },

    #[error("invalid interval ({e1}, {e2}): {reason}")]
    InvalidInterval { e1: f64, e2: f64, reason: String },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
