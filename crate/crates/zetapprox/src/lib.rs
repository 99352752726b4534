//! Numerical engine for truncated Dirichlet-series approximations of a class
//! of L-functions: evaluation of `zeta_N(s) = F_N(s) + G(s) F_N(delta - s)`,
//! a-value counting and localization by the argument principle, critical-line
//! censuses, and closed-form counting asymptotics for comparison.

pub mod asymptotics;
pub mod config;
pub mod counting;
pub mod critical_line;
pub mod error;
pub mod evaluator;
pub mod model;
pub mod runner;
pub mod special;
pub mod workers;

pub use error::NumericError;
pub use model::{
    ApproximationModel, Envelope, FunctionalEquationData, GammaFactorTerm, ModelError, SeriesSpec,
    Violation,
};
