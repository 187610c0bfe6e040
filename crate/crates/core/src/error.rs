//! Error type shared by all modules.

use thiserror::Error;

/// Errors surfaced by the workbench.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not hermitian (symmetry residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("ambient dimensions differ ({lhs} vs {rhs})")]
    AmbientMismatch { lhs: usize, rhs: usize },
    #[error("elements live in different spaces ({lhs} vs {rhs})")]
    SpaceMismatch { lhs: String, rhs: String },
    #[error("element is not a tripotent (residual {residual:.3e})")]
    NotTripotent { residual: f64 },
    #[error("matrix is not a projection (residual {residual:.3e})")]
    NotProjection { residual: f64 },
    #[error("invalid factor size: {0}")]
    BadSize(String),
    #[error("rank {rank} is not feasible for factor {factor}")]
    InfeasibleRank { rank: usize, factor: String },
    #[error("doubling levels differ ({lhs} vs {rhs})")]
    LevelMismatch { lhs: usize, rhs: usize },
    #[error("tripotent kind mismatch: {0}")]
    KindMismatch(String),
    #[error("zero tripotent not allowed here")]
    ZeroTripotent,
    #[error("iteration did not converge after {iters} steps (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },
    #[error("tripotent extension stalled: no nonzero tripotent found in a nonzero Peirce-0 space")]
    IterationStall,
    #[error("factor has no constructor for this request: {0}")]
    Unsupported(String),
}
