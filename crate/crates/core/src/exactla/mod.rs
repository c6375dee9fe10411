//! Exact dense linear algebra over Q and GF(p).

mod field;
mod mat;

pub use field::{scalar_to_string, FieldKind, FieldSpec, Scalar, DEFAULT_PRIME};
pub use mat::{scalar_as_i64, subquotient_dim, Echelon, Mat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidCharacteristic(u32),
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("second span is not contained in the first")]
    ContainmentViolation,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
}

/// Free-function form of [`Mat::rank`].
pub fn rank(m: &Mat) -> usize {
    m.rank()
}

/// Free-function form of [`Mat::kernel_basis`].
pub fn kernel_basis(m: &Mat) -> Mat {
    m.kernel_basis()
}

/// Free-function form of [`Mat::solve`]; `Ok(None)` means the system has no solution.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>, LinalgError> {
    a.solve(b)
}
