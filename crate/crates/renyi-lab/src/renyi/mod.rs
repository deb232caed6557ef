//! Rényi entropies, the sandwiched divergence and the quantities derived
//! from it, plus the density optimizer those quantities need.

mod derived;
mod divergence;
mod optimize;

pub use derived::{
    cond_entropy_down, cond_entropy_up, cond_entropy_up_with, gen_cond_entropy, gen_mutual_info, gen_mutual_info_with,
    min_entropy, min_entropy_with, mutual_info_down, mutual_info_down_with, mutual_info_up,
};
pub use divergence::{
    classical_renyi_divergence, classical_renyi_entropy, divergence_unchecked, entropy_of_values, renyi_entropy,
    sandwiched_divergence, von_neumann_entropy, weighted_inner, weighted_norm, ONE_TOL,
};
pub use optimize::{
    bloch_density, optimize_density, GridResolution, OptimizerConfig, OptimizerMethod, OptimizerResult,
};
pub(crate) use optimize::{bloch_from_free, bloch_grid_search, minimize_blocks, nelder_mead};

use crate::{Error, Result};

/// A Rényi order `α ∈ [0, ∞]` with its Hölder conjugate `α′ = α/(α−1)` and
/// hat conjugate `α̂ = α/(2α−1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenyiOrder {
    alpha: f64,
}

impl RenyiOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::InvalidOrder(alpha));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    /// `α′`; infinite at `α = 1` (sign from the side of approach is lost).
    pub fn prime(self) -> f64 {
        prime(self.alpha)
    }

    /// `α̂`; infinite at `α = 1/2`.
    pub fn hat(self) -> f64 {
        hat(self.alpha)
    }
}

/// Hölder conjugate `α/(α−1)` with `∞′ = 1`.
pub fn prime(a: f64) -> f64 {
    if a.is_infinite() {
        1.0
    } else if a == 1.0 {
        f64::INFINITY
    } else {
        a / (a - 1.0)
    }
}

/// Hat conjugate `α/(2α−1)` with `∞̂ = 1/2`.
pub fn hat(a: f64) -> f64 {
    if a.is_infinite() {
        0.5
    } else if a == 0.5 {
        f64::INFINITY
    } else {
        a / (2.0 * a - 1.0)
    }
}
