use super::divergence::{divergence_eig, sandwiched_divergence};
use super::optimize::{minimize_blocks, OptimizerConfig, OptimizerMethod, OptimizerResult};
use crate::linalg::{herm_eig, tensor, HermitianEig, Operator};
use crate::states::DensityOperator;
use crate::{Error, Result};

fn check_order(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha < 0.5 {
        return Err(Error::InvalidOrder(alpha));
    }
    Ok(())
}

/// `(d_A, d_B)` of a bipartite state.
pub(crate) fn bipartite_dims(rho: &DensityOperator) -> Result<(usize, usize)> {
    let l = rho.layout();
    if l.len() != 2 {
        return Err(Error::LayoutMismatch(format!("expected a bipartite layout, got {:?}", l.dims())));
    }
    Ok((l.dim(0), l.dim(1)))
}

pub(crate) fn identity_eig(d: usize) -> HermitianEig {
    HermitianEig { values: vec![1.0; d], vectors: Operator::identity(d) }
}

fn check_dim(op: &Operator, d: usize, what: &str) -> Result<()> {
    if !op.is_square() || op.rows() != d {
        return Err(Error::DimensionMismatch(format!("{what} must be {d}x{d}")));
    }
    Ok(())
}

fn finite_or_inf(v: Result<f64>) -> f64 {
    match v {
        Ok(x) if !x.is_nan() => x,
        _ => f64::INFINITY,
    }
}

/// `H↓_α(A|B) = −D_α(ρ_AB‖id_A ⊗ ρ_B)`.
pub fn cond_entropy_down(rho: &DensityOperator, alpha: f64) -> Result<f64> {
    let (da, _) = bipartite_dims(rho)?;
    let rb = rho.marginal(&[1])?;
    Ok(-sandwiched_divergence(rho, &tensor(&Operator::identity(da), rb.op()), alpha)?)
}

/// `H_α(ρ_AB‖τ_B) = −D_α(ρ_AB‖id_A ⊗ τ_B)`.
pub fn gen_cond_entropy(rho: &DensityOperator, tau_b: &Operator, alpha: f64) -> Result<f64> {
    let (da, db) = bipartite_dims(rho)?;
    check_dim(tau_b, db, "τ_B")?;
    Ok(-sandwiched_divergence(rho, &tensor(&Operator::identity(da), tau_b), alpha)?)
}

/// `H↑_α(A|B) = −inf_{σ_B} D_α(ρ_AB‖id_A ⊗ σ_B)`; `α = ∞` gives `H_min`.
pub fn cond_entropy_up(rho: &DensityOperator, alpha: f64) -> Result<OptimizerResult> {
    cond_entropy_up_with(rho, alpha, &OptimizerConfig::default())
}

pub fn cond_entropy_up_with(rho: &DensityOperator, alpha: f64, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    check_order(alpha)?;
    if alpha.is_infinite() {
        return min_entropy_with(rho, cfg);
    }
    let (da, db) = bipartite_dims(rho)?;
    let id = identity_eig(da);
    let op = rho.op();
    let f = |b: &[HermitianEig]| finite_or_inf(divergence_eig(op, &id.tensor(&b[0]), alpha));
    let starts = marginal_starts(rho, &[1])?;
    let m = minimize_blocks(&[db], &f, &starts, cfg)?;
    let v = -m.value;
    Ok(m.into_result(v))
}

/// Conditional min-entropy `H_min(A|B) = −inf_{σ_B} D_max(ρ_AB‖id_A ⊗ σ_B)`.
pub fn min_entropy(rho: &DensityOperator) -> Result<OptimizerResult> {
    min_entropy_with(rho, &OptimizerConfig::default())
}

pub fn min_entropy_with(rho: &DensityOperator, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    let (da, db) = bipartite_dims(rho)?;
    let id = identity_eig(da);
    let op = rho.op();
    let f = |b: &[HermitianEig]| finite_or_inf(divergence_eig(op, &id.tensor(&b[0]), f64::INFINITY));
    let starts = marginal_starts(rho, &[1])?;
    let mut c = cfg.clone();
    if c.method == OptimizerMethod::MirrorDescent {
        c.method = OptimizerMethod::NelderMead;
    }
    let m = minimize_blocks(&[db], &f, &starts, &c)?;
    let v = -m.value;
    Ok(m.into_result(v))
}

/// `I_α(ρ_AB‖τ_A) = inf_{σ_B} D_α(ρ_AB‖τ_A ⊗ σ_B)`.
pub fn gen_mutual_info(rho: &DensityOperator, tau_a: &Operator, alpha: f64) -> Result<OptimizerResult> {
    gen_mutual_info_with(rho, tau_a, alpha, &OptimizerConfig::default())
}

pub fn gen_mutual_info_with(
    rho: &DensityOperator,
    tau_a: &Operator,
    alpha: f64,
    cfg: &OptimizerConfig,
) -> Result<OptimizerResult> {
    check_order(alpha)?;
    let (da, db) = bipartite_dims(rho)?;
    check_dim(tau_a, da, "τ_A")?;
    let ta = herm_eig(tau_a)?;
    ta.psd_values()?;
    let op = rho.op();
    let f = |b: &[HermitianEig]| finite_or_inf(divergence_eig(op, &ta.tensor(&b[0]), alpha));
    let starts = marginal_starts(rho, &[1])?;
    let m = minimize_blocks(&[db], &f, &starts, cfg)?;
    let v = m.value;
    Ok(m.into_result(v))
}

/// `I↑_α(A;B) = I_α(ρ_AB‖ρ_A)`.
pub fn mutual_info_up(rho: &DensityOperator, alpha: f64) -> Result<OptimizerResult> {
    let ra = rho.marginal(&[0])?;
    gen_mutual_info(rho, ra.op(), alpha)
}

/// `I↓_α(A:B) = inf_{σ_A, σ_B} D_α(ρ_AB‖σ_A ⊗ σ_B)`, minimized jointly over
/// both factors from the marginals and from the maximally mixed pair.
pub fn mutual_info_down(rho: &DensityOperator, alpha: f64) -> Result<OptimizerResult> {
    mutual_info_down_with(rho, alpha, &OptimizerConfig::default())
}

pub fn mutual_info_down_with(rho: &DensityOperator, alpha: f64, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    check_order(alpha)?;
    let (da, db) = bipartite_dims(rho)?;
    let op = rho.op();
    let f = |b: &[HermitianEig]| finite_or_inf(divergence_eig(op, &b[0].tensor(&b[1]), alpha));
    let starts = marginal_starts(rho, &[0, 1])?;
    let m = minimize_blocks(&[da, db], &f, &starts, cfg)?;
    let v = m.value;
    Ok(m.into_result(v))
}

/// Start points: the listed marginals, and the maximally mixed states.
fn marginal_starts(rho: &DensityOperator, systems: &[usize]) -> Result<Vec<Vec<Operator>>> {
    let mut marg = Vec::new();
    let mut mixed = Vec::new();
    for &k in systems {
        marg.push(rho.marginal(&[k])?.into_operator());
        let d = rho.layout().dim(k);
        mixed.push(Operator::identity(d).scale(1.0 / d as f64));
    }
    Ok(vec![marg, mixed])
}
