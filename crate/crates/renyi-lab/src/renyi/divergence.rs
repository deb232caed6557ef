use crate::linalg::{herm_eig, herm_eigenvalues, inner, schatten_norm, HermitianEig, Operator};
use crate::states::{DensityOperator, Pmf};
use crate::{Error, Result};

/// Orders within this distance of 1 use the von Neumann closed forms.
pub const ONE_TOL: f64 = 1e-6;

/// Relative weight below which a state counts as supported inside `supp σ`.
const SUPPORT_TOL: f64 = 1e-10;

fn check_entropy_order(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidOrder(alpha));
    }
    Ok(())
}

fn check_divergence_order(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha < 0.5 {
        return Err(Error::InvalidOrder(alpha));
    }
    Ok(())
}

/// `log₂ Σ x_i^a` over the positive entries, computed stably.
pub(crate) fn log_power_sum(values: &[f64], a: f64) -> f64 {
    let m = values.iter().cloned().fold(0.0, f64::max);
    if m <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let s: f64 = values.iter().filter(|&&x| x > 0.0).map(|&x| (x / m).powf(a)).sum();
    a * m.log2() + s.log2()
}

/// Rényi entropy of a probability vector (or spectrum).
pub fn entropy_of_values(p: &[f64], alpha: f64) -> Result<f64> {
    check_entropy_order(alpha)?;
    let top = p.iter().cloned().fold(0.0, f64::max);
    let cut = crate::linalg::CUTOFF_REL * top;
    let pos: Vec<f64> = p.iter().cloned().filter(|&x| x > cut && x > 0.0).collect();
    if pos.is_empty() {
        return Err(Error::InvalidInput("zero distribution".into()));
    }
    if alpha == 0.0 {
        return Ok((pos.len() as f64).log2());
    }
    if alpha.is_infinite() {
        return Ok(-top.log2());
    }
    if (alpha - 1.0).abs() < ONE_TOL {
        return Ok(-pos.iter().map(|x| x * x.log2()).sum::<f64>());
    }
    Ok(log_power_sum(&pos, alpha) / (1.0 - alpha))
}

/// Classical Rényi entropy `H_α(p)`.
pub fn classical_renyi_entropy(p: &Pmf, alpha: f64) -> Result<f64> {
    entropy_of_values(p.probs(), alpha)
}

/// Quantum Rényi entropy `H_α(ρ) = log tr(ρ^α) / (1 − α)`.
pub fn renyi_entropy(rho: &DensityOperator, alpha: f64) -> Result<f64> {
    entropy_of_values(&rho.spectrum(), alpha)
}

/// von Neumann entropy.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    renyi_entropy(rho, 1.0)
}

/// Classical Rényi divergence `D_α(p‖q)`; `α = 1` is the Kullback–Leibler
/// divergence and `α = ∞` the log of the largest ratio.
pub fn classical_renyi_divergence(p: &Pmf, q: &Pmf, alpha: f64) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch("pmfs of different length".into()));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidOrder(alpha));
    }
    let pairs: Vec<(f64, f64)> = p.probs().iter().cloned().zip(q.probs().iter().cloned()).collect();
    let dominated = pairs.iter().all(|&(a, b)| a == 0.0 || b > 0.0);
    let overlap = pairs.iter().any(|&(a, b)| a > 0.0 && b > 0.0);
    if !overlap || (!dominated && alpha >= 1.0 - ONE_TOL) {
        return Ok(f64::INFINITY);
    }
    if alpha.is_infinite() {
        let r = pairs.iter().filter(|p| p.0 > 0.0).map(|&(a, b)| a / b).fold(0.0, f64::max);
        return Ok(r.log2());
    }
    if (alpha - 1.0).abs() < ONE_TOL {
        return Ok(pairs.iter().filter(|p| p.0 > 0.0).map(|&(a, b)| a * (a / b).log2()).sum());
    }
    let terms: Vec<f64> =
        pairs.iter().filter(|&&(a, b)| a > 0.0 && b > 0.0).map(|&(a, b)| a.powf(alpha) * b.powf(1.0 - alpha)).collect();
    let s: f64 = terms.iter().sum();
    Ok(s.log2() / (alpha - 1.0))
}

/// Sandwiched Rényi divergence
/// `D_α(ρ‖σ) = log tr[(σ^{(1−α)/2α} ρ σ^{(1−α)/2α})^α] / (α − 1)`.
///
/// Orders within `1e−6` of 1 give the Umegaki relative entropy and `α = ∞`
/// gives the max-divergence. Returns `+∞` when `ρ ⊥ σ`, or when `σ` does
/// not dominate `ρ` and `α > 1`.
pub fn sandwiched_divergence(rho: &DensityOperator, sigma: &Operator, alpha: f64) -> Result<f64> {
    check_divergence_order(alpha)?;
    divergence_unchecked(rho.op(), sigma, alpha)
}

/// As [`sandwiched_divergence`] but accepting any positive order and
/// operator-valued first argument.
pub fn divergence_unchecked(rho: &Operator, sigma: &Operator, alpha: f64) -> Result<f64> {
    if rho.rows() != sigma.rows() || !sigma.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "ρ is {}x{}, σ is {}x{}",
            rho.rows(),
            rho.cols(),
            sigma.rows(),
            sigma.cols()
        )));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidOrder(alpha));
    }
    divergence_eig(rho, &herm_eig(sigma)?, alpha)
}

/// Core evaluation from the spectral decomposition of `σ`.
pub(crate) fn divergence_eig(rho: &Operator, sig: &HermitianEig, alpha: f64) -> Result<f64> {
    let vals = sig.psd_values()?;
    let n = vals.len();
    let support: Vec<usize> = (0..n).filter(|&k| vals[k] > 0.0).collect();
    let tr = rho.trace().re;
    let cols: Vec<Vec<_>> = support.iter().map(|&k| sig.vectors.column_vec(k)).collect();
    let inside: Vec<f64> = cols.iter().map(|v| inner(v, &rho.apply(v)).re).collect();
    let weight_in: f64 = inside.iter().sum();
    if weight_in <= SUPPORT_TOL * tr {
        return Ok(f64::INFINITY);
    }
    let dominated = support.len() == n || tr - weight_in <= SUPPORT_TOL * tr;
    let above_one = alpha >= 1.0 - ONE_TOL;
    if above_one && !dominated {
        return Ok(f64::INFINITY);
    }
    if (alpha - 1.0).abs() < ONE_TOL {
        let rho_vals = herm_eigenvalues(rho)?;
        let neg_ent: f64 = rho_vals.iter().filter(|&&x| x > 0.0).map(|x| x * x.log2()).sum();
        let cross: f64 = support.iter().zip(&inside).map(|(&k, w)| w * vals[k].log2()).sum();
        return Ok(neg_ent - cross);
    }
    // σ^e ρ σ^e in the eigenbasis of σ, scaled by e^{−c} with c the
    // largest log-diagonal entry so that no entry overflows for small α.
    let exponent = if alpha.is_infinite() { -0.5 } else { (1.0 - alpha) / (2.0 * alpha) };
    let w: Vec<f64> = support.iter().map(|&k| exponent * vals[k].ln()).collect();
    let r = support.len();
    let c = (0..r).filter(|&i| inside[i] > 0.0).map(|i| inside[i].ln() + 2.0 * w[i]).fold(f64::NEG_INFINITY, f64::max);
    let m = Operator::from_fn(r, r, |i, j| {
        let rij = inner(&cols[i], &rho.apply(&cols[j]));
        let a = rij.norm();
        if a == 0.0 {
            rij
        } else {
            rij.scale((a.ln() + w[i] + w[j] - c).exp() / a)
        }
    });
    let mu = herm_eigenvalues(&m.hermitian_part())?;
    let shift = c * std::f64::consts::LOG2_E;
    if alpha.is_infinite() {
        return Ok(shift + mu[0].log2());
    }
    let lq = log_power_sum(&mu, alpha);
    if lq == f64::NEG_INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok((alpha * shift + lq) / (alpha - 1.0))
}

/// Weighted Schatten norm `‖σ^{1/2p} Y τ^{1/2p}‖_p`.
pub fn weighted_norm(y: &Operator, p: f64, sigma: &Operator, tau: &Operator) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidOrder(p));
    }
    let e = if p.is_infinite() { 0.0 } else { 1.0 / (2.0 * p) };
    let a = crate::linalg::frac_power(sigma, e)?;
    let b = crate::linalg::frac_power(tau, e)?;
    schatten_norm(&a.matmul(y).matmul(&b), p)
}

/// Weighted pairing `⟨Y, X⟩_{σ,τ} = tr(Y† σ^{1/2} X τ^{1/2})`.
pub fn weighted_inner(y: &Operator, x: &Operator, sigma: &Operator, tau: &Operator) -> Result<crate::C64> {
    let a = crate::linalg::frac_power(sigma, 0.5)?;
    let b = crate::linalg::frac_power(tau, 0.5)?;
    Ok(y.adjoint().trace_product(&a.matmul(x).matmul(&b)))
}
