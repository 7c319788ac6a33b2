use thiserror::Error;

/// Everything that can go wrong in the library, split between domain
/// conditions (bad parameter regime) and numerical failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dag| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi sweep cap reached, off-diagonal norm {off_norm:e} > tol {tol:e}")]
    NoConvergence { off_norm: f64, tol: f64 },

    #[error("matrix has eigenvalue {value:e} below the PSD clamp")]
    NegativeEigenvalue { value: f64 },

    #[error("operation requires paper mode (exact mode has no closed-form spectrum)")]
    ModeUnsupported,

    #[error("ground state is degenerate at alpha = 0 (pure NQR)")]
    DegenerateGround,

    #[error("amplitudes are not normalized (sum of squares = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidState { reason: String },

    #[error("no entanglement transition inside the beta bracket [{lo}, {hi}]")]
    NoTransition { lo: f64, hi: f64 },

    #[error("bracket failure: already entangled at the lower bracket end beta = {lo}")]
    BracketFailure { lo: f64 },

    #[error("invalid parameters: {reason}")]
    InvalidParams { reason: String },

    #[error("{failed} invariant check(s) failed")]
    CheckFailed { failed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code: 3 for domain errors, 4 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotHermitian { .. }
            | Error::NoConvergence { .. }
            | Error::NegativeEigenvalue { .. }
            | Error::CheckFailed { .. } => 4,
            _ => 3,
        }
    }
}
