//! # renyi-lab
//!
//! Numerical toolkit for sandwiched Rényi quantities on finite-dimensional
//! quantum systems, together with a randomized harness that checks the
//! divergence inequalities (decomposition and chain rules) and the
//! generalized entropic uncertainty and information exclusion relations.
//!
//! ## Layout
//!
//! - [`linalg`]: dense complex operators, Hermitian eigensolver, SVD, polar
//!   form, functional calculus with pseudoinverse semantics, Schatten norms,
//!   tensor structure and the operator-vector correspondence.
//! - [`states`]: seeded sampling of states and bases, classical registers,
//!   measurement maps and their Stinespring dilation.
//! - [`renyi`]: entropies, the sandwiched divergence, conditional entropies,
//!   mutual informations, weighted norms and the density optimizer.
//! - [`params`]: the order constraint `αβγ − 2βγ − α + β + γ = 0`, conjugate
//!   arithmetic, triple solving, case classification and sampling.
//! - [`interp`]: the Γ map, Pisier-type norms for positive operators and
//!   log-convexity checks.
//! - [`inequalities`]: divergence inequality checks and suites.
//! - [`uncertainty`]: uncertainty and exclusion bounds and their checks.
//! - [`report`]: configuration, CSV output and the command implementations
//!   behind the `renyi-lab` binary.
//!
//! All logarithms are base 2.
//!
//! ```
//! use renyi_lab::{renyi, states::DensityOperator};
//!
//! let rho = DensityOperator::maximally_mixed(2);
//! let h = renyi::renyi_entropy(&rho, 2.0).unwrap();
//! assert!((h - 1.0).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

pub mod inequalities;
pub mod interp;
pub mod linalg;
pub mod params;
pub mod renyi;
pub mod report;
pub mod states;
pub mod uncertainty;

pub use linalg::{Operator, SystemLayout, C64};

use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operator is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("operator is not positive semi-definite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid order {0}")]
    InvalidOrder(f64),

    #[error("degenerate parameter choice: {0}")]
    Degenerate(String),

    #[error("optimizer did not converge after {iterations} iterations (residual {residual:e})")]
    OptimizerDiverged { iterations: usize, residual: f64 },

    #[error("unsupported dimension {0}: optimization oracle handles qubits only")]
    UnsupportedDim(usize),

    #[error("weights do not commute (commutator norm {0:e})")]
    CommutatorViolation(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
