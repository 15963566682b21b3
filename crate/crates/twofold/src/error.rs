use thiserror::Error;

use crate::cartan::Sector;

/// Crate-wide error type. Variants are grouped by the subsystem that raises
/// them; all carry enough context to report the offending quantity.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite component encountered (NaN or infinity)")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("sector mismatch: expected {expected:?}, got {got:?}")]
    SectorMismatch { expected: Sector, got: Sector },

    #[error("operator matrix is not block-diagonal across sectors (leak {leak:.3e})")]
    NotBlockDiagonal { leak: f64 },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not pseudo-Hermitian w.r.t. the sector metric (residual {residual:.3e})")]
    NotPseudoHermitian { residual: f64 },

    #[error("energy parameter must be positive, got {0}")]
    NonpositiveEnergy(f64),

    #[error("state is not normalized (norm deviation {deviation:.3e})")]
    NotNormalized { deviation: f64 },

    #[error("composite factors must list all Plus-sector slots before Minus-sector slots")]
    OrderingViolation,

    #[error("arity mismatch: {expected} factors expected, {got} supplied")]
    ArityMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for {len} slots")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("cannot trace out the last remaining factor")]
    LastFactor,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("measurement outcome has zero probability; no reduced state exists")]
    ZeroProbabilityOutcome,

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("matrix parameter must have unit determinant and moderate norm (deviation {det:.3e})")]
    SingularA { det: f64 },

    #[error("translation is null (det W = {det:.3e}); only non-null translations are representable")]
    NullTranslation { det: f64 },

    #[error("bad normalization: {0}")]
    BadNormalization(String),

    #[error("matrix is not special unitary (unitarity residual {unitarity:.3e}, |det-1| = {det:.3e})")]
    NotSpecialUnitary { unitarity: f64, det: f64 },

    #[error("element fails group membership ({0})")]
    InvalidMember(String),

    #[error("transform mode demands both entry and operator invariance, but the observable does not commute with the frame blocks (residual {residual:.3e})")]
    ModeConflict { residual: f64 },

    #[error("matrix cannot be diagonalized by a local unitary (residual {residual:.3e})")]
    NotDiagonalizable { residual: f64 },

    #[error("unknown kind: {0}")]
    UnknownKind(String),

    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
