//! The Γ super-operator, two- and three-part norms with their density
//! optimizations, and numerical log-convexity checks.

use crate::linalg::{
    frac_power, herm_eig, herm_eigenvalues, norm_of_values, partial_trace, schatten_norm, tensor, Operator,
    SystemLayout,
};
use crate::renyi::{
    bloch_density, bloch_from_free, bloch_grid_search, minimize_blocks, nelder_mead, GridResolution, OptimizerConfig,
};
use crate::{Error, Result};
use rand::Rng;
use std::cell::RefCell;

/// `Γ^{x}_{σ,τ}(M) = σ^{x/2} M τ^{x/2}`; `None` weights are identities.
#[derive(Clone, Debug)]
pub struct GammaSpec {
    pub left: Option<Operator>,
    pub right: Option<Operator>,
    pub exponent: f64,
}

impl GammaSpec {
    pub fn new(left: Option<Operator>, right: Option<Operator>, exponent: f64) -> Result<Self> {
        for w in [&left, &right].into_iter().flatten() {
            check_weight(w)?;
        }
        if !exponent.is_finite() {
            return Err(Error::InvalidInput(format!("exponent {exponent}")));
        }
        Ok(Self { left, right, exponent })
    }

    /// Both weights equal to `σ`.
    pub fn symmetric(sigma: Operator, exponent: f64) -> Result<Self> {
        Self::new(Some(sigma.clone()), Some(sigma), exponent)
    }
}

fn check_weight(w: &Operator) -> Result<()> {
    let vals = herm_eigenvalues(w)?;
    let min = vals.last().copied().unwrap_or(0.0);
    if min < -crate::linalg::CLAMP_TOL {
        return Err(Error::NotPsd(min));
    }
    Ok(())
}

pub fn gamma_apply(spec: &GammaSpec, m: &Operator) -> Result<Operator> {
    let half = spec.exponent / 2.0;
    let mut out = m.clone();
    if let Some(l) = &spec.left {
        if l.dim() != m.rows() {
            return Err(Error::DimensionMismatch(format!("left weight {} vs {} rows", l.dim(), m.rows())));
        }
        out = frac_power(l, half)?.matmul(&out);
    }
    if let Some(r) = &spec.right {
        if r.dim() != m.cols() {
            return Err(Error::DimensionMismatch(format!("right weight {} vs {} cols", r.dim(), m.cols())));
        }
        out = out.matmul(&frac_power(r, half)?);
    }
    Ok(out)
}

/// `w ⊗ id` on a space of total dimension `total`.
pub fn embed_first(w: &Operator, total: usize) -> Result<Operator> {
    if total % w.dim() != 0 {
        return Err(Error::DimensionMismatch(format!("{} does not divide {total}", w.dim())));
    }
    Ok(tensor(w, &Operator::identity(total / w.dim())))
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Options for the qubit density search behind the two-part norms.
#[derive(Clone, Copy, Debug)]
pub struct TwoPartConfig {
    pub grid: GridResolution,
    /// Simplex restarts after the grid, each run to convergence.
    pub refine_steps: usize,
    /// Random starts for the joint `(σ, τ)` search on non-positive inputs.
    pub restarts: usize,
}

impl Default for TwoPartConfig {
    fn default() -> Self {
        Self { grid: GridResolution { radial: 64, polar: 32, azimuthal: 32 }, refine_steps: 20, restarts: 8 }
    }
}

/// `‖Y‖_{(p,q)}` with the optimization on the qubit factor `A` of `A ⊗ B`:
/// the supremum over `σ, τ ∈ Den*(A)` of `‖Γ^{−1/p}_{σ,τ}(Y)‖_{q,(σ,τ)}`
/// when `p ≥ q`, the infimum otherwise.
pub fn two_part_norm<R: Rng + ?Sized>(y: &Operator, layout: &SystemLayout, p: f64, q: f64, rng: &mut R) -> Result<f64> {
    two_part_norm_with(y, layout, p, q, rng, &TwoPartConfig::default())
}

pub fn two_part_norm_with<R: Rng + ?Sized>(
    y: &Operator,
    layout: &SystemLayout,
    p: f64,
    q: f64,
    rng: &mut R,
    cfg: &TwoPartConfig,
) -> Result<f64> {
    layout.check(y)?;
    if layout.len() != 2 {
        return Err(Error::LayoutMismatch(format!("need A ⊗ B, got {:?}", layout.dims())));
    }
    if layout.dim(0) != 2 {
        return Err(Error::UnsupportedDim(layout.dim(0)));
    }
    for r in [p, q] {
        if !(r >= 1.0) {
            return Err(Error::InvalidOrder(r));
        }
    }
    let sign = if p >= q { -1.0 } else { 1.0 };
    let s = (inv(q) - inv(p)) / 2.0;
    if s == 0.0 {
        return schatten_norm(y, q);
    }
    let total = layout.total();
    let weight = |r: [f64; 3]| -> Option<Operator> {
        let w = frac_power(&bloch_density(r), s).ok()?;
        embed_first(&w, total).ok()
    };
    if is_positive(y) {
        let f = |r: [f64; 3]| match weight(r) {
            Some(w) => {
                let z = w.matmul(y).matmul(&w).hermitian_part();
                match herm_eigenvalues(&z) {
                    Ok(v) => sign * norm_of_values(&v.iter().map(|x| x.max(0.0)).collect::<Vec<_>>(), q),
                    Err(_) => f64::INFINITY,
                }
            }
            None => f64::INFINITY,
        };
        let best = qubit_search(&f, cfg);
        return Ok(sign * best);
    }
    let f = |x: &[f64]| -> f64 {
        let (Some(l), Some(r)) = (weight(bloch_from_free(&x[..3])), weight(bloch_from_free(&x[3..]))) else {
            return f64::INFINITY;
        };
        let v = sign * schatten_norm(&l.matmul(y).matmul(&r), q).unwrap_or(f64::NAN);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let coarse = GridResolution { radial: 16, polar: 8, azimuthal: 8 };
    let (r0, _, _) = bloch_grid_search(&|r: [f64; 3]| f(&[free_of(r), free_of(r)].concat()), coarse);
    let mut starts = vec![[free_of(r0), free_of(r0)].concat()];
    for _ in 0..cfg.restarts {
        starts.push((0..6).map(|_| rng.gen_range(-1.5..1.5)).collect());
    }
    let mut best = f64::INFINITY;
    for x0 in starts {
        best = best.min(refine(&f, &x0, cfg.refine_steps));
    }
    Ok(sign * best)
}

fn is_positive(y: &Operator) -> bool {
    y.is_square()
        && y.is_hermitian(1e-12)
        && herm_eigenvalues(y).map(|v| v.last().copied().unwrap_or(0.0) >= -crate::linalg::CLAMP_TOL).unwrap_or(false)
}

/// Free coordinates mapping to the Bloch vector `r` under `tanh`.
fn free_of(r: [f64; 3]) -> Vec<f64> {
    let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if n == 0.0 {
        return vec![0.0; 3];
    }
    let t = n.min(1.0 - 1e-15).atanh() / n;
    r.iter().map(|c| c * t).collect()
}

fn refine(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], rounds: usize) -> f64 {
    refine_to(f, x0, rounds, 1e-15)
}

fn refine_to(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], rounds: usize, ftol: f64) -> f64 {
    let mut x = x0.to_vec();
    let mut best = f(&x);
    let mut step = 0.2;
    for _ in 0..rounds {
        let m = nelder_mead(f, &x, step, 2_000, ftol);
        if m.value < best - 1e-15 {
            best = m.value;
            x = m.x;
        } else if step < 1e-6 {
            break;
        }
        step *= 0.5;
    }
    best
}

/// Minimum of `f` over the Bloch ball: lattice search then simplex
/// refinement through the `tanh` map.
fn qubit_search(f: &dyn Fn([f64; 3]) -> f64, cfg: &TwoPartConfig) -> f64 {
    let (r0, v0, _) = bloch_grid_search(f, cfg.grid);
    let free = |x: &[f64]| f(bloch_from_free(x));
    v0.min(refine(&free, &free_of(r0), cfg.refine_steps))
}

/// `|‖X_{ABC}‖_{(p,q,1)} − ‖X_{AB}‖_{(p,q)}|` for positive `X` on
/// `A ⊗ B ⊗ C` with a qubit `A`.
///
/// The left side optimizes `σ_A` by simplex search and, inside, the
/// `(q,1;AB)` norm over `Den*(AB)` by quasi-Newton descent; the right side
/// is [`two_part_norm`] on the `AB` marginal.
pub fn three_part_reduction_check<R: Rng + ?Sized>(
    x: &Operator,
    layout: &SystemLayout,
    p: f64,
    q: f64,
    rng: &mut R,
) -> Result<f64> {
    layout.check(x)?;
    if layout.len() != 3 {
        return Err(Error::LayoutMismatch(format!("need A ⊗ B ⊗ C, got {:?}", layout.dims())));
    }
    if layout.dim(0) != 2 {
        return Err(Error::UnsupportedDim(layout.dim(0)));
    }
    if !is_positive(x) {
        return Err(Error::NotPsd(herm_eigenvalues(x)?.last().copied().unwrap_or(0.0)));
    }
    let (da, db) = (layout.dim(0), layout.dim(1));
    let x_ab = partial_trace(x, layout, &[0, 1])?;
    let rhs = two_part_norm(&x_ab, &SystemLayout::bipartite(da, db), p, q, rng)?;

    let sign = if p >= q { -1.0 } else { 1.0 };
    let s = (inv(q) - inv(p)) / 2.0;
    let dab = da * db;
    let total = layout.total();
    let inner_cfg = OptimizerConfig { extrapolate: false, ..OptimizerConfig::default() };
    let warm = RefCell::new(Operator::identity(dab).scale(1.0 / dab as f64));
    // ‖Z‖_{(q,1;AB)} = sup_{ω ∈ Den*(AB)} ‖(ω^{1/2q′} ⊗ id_C) Z (ω^{1/2q′} ⊗ id_C)‖_1;
    // the operator is positive, so its trace norm is tr(ω^{1/q′} Z_{AB}).
    let inner_norm = |z: &Operator| -> Result<f64> {
        let z_ab = partial_trace(z, layout, &[0, 1])?;
        let scale = z_ab.trace().re;
        let z_ab = z_ab.scale(1.0 / scale);
        let t = 1.0 - inv(q);
        let obj = |b: &[crate::linalg::HermitianEig]| -> f64 {
            let w = b[0].map(|v| if v > 0.0 { v.powf(t) } else { 0.0 });
            -w.trace_product(&z_ab).re
        };
        let starts = [vec![warm.borrow().clone()], vec![z_ab.clone()]];
        let m = minimize_blocks(&[dab], &obj, &starts, &inner_cfg)?;
        *warm.borrow_mut() = m.blocks[0].clone();
        Ok(-m.value * scale)
    };
    let outer = |r: [f64; 3]| -> f64 {
        let Ok(w) = frac_power(&bloch_density(r), s) else { return f64::INFINITY };
        let wl = tensor(&w, &Operator::identity(total / da));
        let z = wl.matmul(x).matmul(&wl).hermitian_part();
        match inner_norm(&z) {
            Ok(v) => sign * v,
            Err(_) => f64::INFINITY,
        }
    };
    let coarse = GridResolution { radial: 6, polar: 4, azimuthal: 4 };
    let (r0, v0, _) = bloch_grid_search(&outer, coarse);
    let free = |x: &[f64]| outer(bloch_from_free(x));
    let lhs = sign * v0.min(refine_to(&free, &free_of(r0), 3, 1e-12));
    Ok((lhs - rhs).abs())
}

/// Affine exponent map `f(θ) = slope·θ + offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Affine {
    pub slope: f64,
    pub offset: f64,
}

impl Affine {
    pub fn at(self, theta: f64) -> f64 {
        self.slope * theta + self.offset
    }
}

/// Inputs of a log-convexity instance: `Y ∈ Lin(A, B)` with `σ₁, τ₁` on
/// `B` and `σ₂, τ₂` on `A`.
#[derive(Clone, Debug)]
pub struct LogConvexityInstance {
    pub y: Operator,
    pub sigma1: Operator,
    pub sigma2: Operator,
    pub tau1: Operator,
    pub tau2: Operator,
    pub f: Affine,
    pub q0: f64,
    pub q1: f64,
    pub theta: f64,
}

const COMMUTATOR_TOL: f64 = 1e-9;

/// `‖Γ^{f(0)}(Y)‖_{q₀}^{1−θ} ‖Γ^{f(1)}(Y)‖_{q₁}^θ − ‖Γ^{f(θ)}(Y)‖_{q_θ}`
/// with `Γ = Γ_{σ₁,σ₂}` and norms weighted by `(τ₁, τ₂)`.
pub fn log_convexity_check(inst: &LogConvexityInstance) -> Result<f64> {
    let LogConvexityInstance { y, sigma1, sigma2, tau1, tau2, f, q0, q1, theta } = inst;
    for (s, t) in [(sigma1, tau1), (sigma2, tau2)] {
        let c = s.commutator(t).max_abs();
        if c > COMMUTATOR_TOL {
            return Err(Error::CommutatorViolation(c));
        }
    }
    if !(0.0..=1.0).contains(theta) {
        return Err(Error::InvalidInput(format!("θ = {theta} outside [0, 1]")));
    }
    for q in [*q0, *q1] {
        if !(q >= 1.0) {
            return Err(Error::InvalidOrder(q));
        }
    }
    let s1 = herm_eig(sigma1)?;
    let s2 = herm_eig(sigma2)?;
    let t1 = herm_eig(tau1)?;
    let t2 = herm_eig(tau2)?;
    let norm_at = |x: f64, q: f64| -> Result<f64> {
        let g = s1.power(x / 2.0)?.matmul(y).matmul(&s2.power(x / 2.0)?);
        let e = inv(q) / 2.0;
        schatten_norm(&t1.power(e)?.matmul(&g).matmul(&t2.power(e)?), q)
    };
    let n0 = norm_at(f.at(0.0), *q0)?;
    let n1 = norm_at(f.at(1.0), *q1)?;
    let (lhs, rhs) = if *theta == 0.0 {
        (n0, n0)
    } else if *theta == 1.0 {
        (n1, n1)
    } else {
        let qt = 1.0 / ((1.0 - theta) * inv(*q0) + theta * inv(*q1));
        (norm_at(f.at(*theta), qt)?, n0.powf(1.0 - theta) * n1.powf(*theta))
    };
    Ok(rhs - lhs)
}

/// `‖Y‖_{(p₀,q₀)}^{1−θ} ‖Y‖_{(p₁,q₁)}^θ − ‖Y‖_{(p_θ,q_θ)}`; measured only.
pub fn pq_interpolation_gap<R: Rng + ?Sized>(
    y: &Operator,
    layout: &SystemLayout,
    (p0, q0): (f64, f64),
    (p1, q1): (f64, f64),
    theta: f64,
    rng: &mut R,
) -> Result<f64> {
    let pt = 1.0 / ((1.0 - theta) * inv(p0) + theta * inv(p1));
    let qt = 1.0 / ((1.0 - theta) * inv(q0) + theta * inv(q1));
    let n0 = two_part_norm(y, layout, p0, q0, rng)?;
    let n1 = two_part_norm(y, layout, p1, q1, rng)?;
    let nt = two_part_norm(y, layout, pt, qt, rng)?;
    Ok(n0.powf(1.0 - theta) * n1.powf(theta) - nt)
}
