//! Error types shared by the numerical modules.

use num_complex::Complex64;
use thiserror::Error;

/// Failure modes of the evaluation, phase-tracking, and counting machinery.
///
/// Data-level findings (invariant violations, failed predicates) are reported
/// as values, not errors; these variants are reserved for conditions under
/// which a requested computation cannot produce a trustworthy result.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    /// A Gamma factor was evaluated at one of its poles.
    #[error("gamma pole at z = {z}")]
    GammaPole { z: Complex64 },

    /// log-gamma requested on its branch cut (the negative real axis).
    #[error("log-gamma branch cut at z = {z}")]
    BranchCut { z: Complex64 },

    /// The tracked function came within tolerance of zero on a path,
    /// signalling a root on or near the path. The caller must perturb.
    #[error("|f| = {magnitude:e} below tolerance near s = {s}; root on or near the path")]
    NearZero { s: Complex64, magnitude: f64 },

    /// Adaptive refinement of a path subdivision exceeded its depth budget.
    #[error("argument refinement exceeded depth {depth}")]
    DepthExceeded { depth: u32 },

    /// A winding total failed to settle near an integer after refinement.
    #[error("winding residual {residual:e} exceeds threshold after refinement")]
    WindingResidual { residual: f64 },

    /// A root stayed on a contour edge through the whole jitter schedule.
    #[error("boundary root persists after jitter schedule near s = {s}")]
    BoundaryRootExhausted { s: Complex64 },

    /// Branch continuity from a previous sample could not be certified.
    #[error("branch continuity could not be certified at t = {t}")]
    BranchContinuity { t: f64 },

    /// Operation requires a model with all-real coefficients.
    #[error("operation requires real coefficients")]
    NonRealCoefficients,

    /// An a-value census needs a nonzero target.
    #[error("a-value census requires a != 0")]
    ZeroTarget,

    /// Scan-step refinement stalled at the floating-point floor.
    #[error("scan step fell below the resolvable floor at t = {t}")]
    StepFloor { t: f64 },
}
