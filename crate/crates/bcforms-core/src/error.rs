//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failures reported by the matrix kernels and the canonical-form pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix entry is NaN or infinite.
    NonFinite,
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Matrix dimensions do not match what the operation requires.
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// The half-order `n` must be at least 1.
    InvalidOrder,
    /// Input failed the unitarity test (`‖M·M* − I‖_F` reported).
    NotUnitary { defect: f64 },
    /// Input failed the Hermiticity test (`‖M − M*‖_F` reported).
    NotHermitian { defect: f64 },
    /// The boundary pair does not satisfy the self-adjointness condition.
    NotSelfAdjoint,
    /// Row transform matrix is singular at the given tolerance.
    SingularTransform,
    /// A matrix that must be invertible has a singular value at or below tolerance.
    RankDeficient,
    /// The assembled factors do not reproduce the input within tolerance.
    ReconstructionFailure { residual: f64 },
    /// Within-cluster correction could not reach the CS reconstruction bound.
    DegenerateClusterFailure { residual: f64 },
    /// The eigenbasis does not satisfy its defining eigen-equation; signals a
    /// sign-convention bug rather than bad user input.
    EigenEquationFailure { residual: f64 },
    /// The unitary has 1 as an eigenvalue, so its Cayley preimage does not exist.
    UnitEigenvalue,
    /// The coupling block of a fourth-order coupled form is singular.
    SingularA21,
    /// A generator request that cannot be satisfied.
    InvalidSpec(String),
    /// The iterative SVD kernel failed to converge.
    SvdNoConvergence,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "matrix contains NaN or infinite entries"),
            Error::NotSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::InvalidOrder => write!(f, "half-order n must be at least 1"),
            Error::NotUnitary { defect } => {
                write!(f, "matrix is not unitary (defect {defect:.3e})")
            }
            Error::NotHermitian { defect } => {
                write!(f, "matrix is not Hermitian (defect {defect:.3e})")
            }
            Error::NotSelfAdjoint => write!(f, "boundary pair is not self-adjoint"),
            Error::SingularTransform => write!(f, "row transform matrix is singular"),
            Error::RankDeficient => write!(f, "matrix is rank-deficient at the given tolerance"),
            Error::ReconstructionFailure { residual } => {
                write!(f, "reconstruction residual {residual:.3e} exceeds tolerance")
            }
            Error::DegenerateClusterFailure { residual } => write!(
                f,
                "CS cluster correction failed to reach the residual bound ({residual:.3e})"
            ),
            Error::EigenEquationFailure { residual } => {
                write!(f, "eigenbasis eigen-equation residual {residual:.3e} too large")
            }
            Error::UnitEigenvalue => {
                write!(f, "unitary has eigenvalue 1; Cayley preimage does not exist")
            }
            Error::SingularA21 => write!(f, "coupling block A21 is singular"),
            Error::InvalidSpec(reason) => write!(f, "invalid generator spec: {reason}"),
            Error::SvdNoConvergence => write!(f, "SVD iteration did not converge"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
