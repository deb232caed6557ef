//! States, bases and classical registers.
//!
//! Samplers take an explicit RNG. Per-trial generators are derived from a
//! master seed with [`trial_seed`], so trial `i` draws the same state no
//! matter which trials ran before it.

use crate::linalg::{
    herm_eig, inner, partial_trace, tensor, vec_norm, HermitianEig, Operator, SystemLayout, C64, CLAMP_TOL,
};
use crate::{Error, Result};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const TRACE_TOL: f64 = 1e-10;
const PMF_TOL: f64 = 1e-12;

/// Unit-trace positive semi-definite operator on a composite space.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    op: Operator,
    layout: SystemLayout,
}

impl DensityOperator {
    /// Validates Hermiticity, positivity (up to clamping) and unit trace.
    pub fn new(op: Operator, layout: SystemLayout) -> Result<Self> {
        layout.check(&op)?;
        let e = herm_eig(&op)?;
        if e.min() < -CLAMP_TOL {
            return Err(Error::NotPsd(e.min()));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidInput(format!("trace {tr} is not 1")));
        }
        Ok(Self { op: op.hermitian_part(), layout })
    }

    /// Divides a nonzero PSD operator by its trace.
    pub fn normalized(op: Operator, layout: SystemLayout) -> Result<Self> {
        let tr = op.trace().re;
        if !(tr > 0.0) {
            return Err(Error::InvalidInput("trace must be positive".into()));
        }
        Self::new(op.scale(1.0 / tr), layout)
    }

    /// Single-system state without further structure.
    pub fn from_operator(op: Operator) -> Result<Self> {
        let d = op.rows();
        Self::new(op, SystemLayout::single(d))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self { op: Operator::identity(d).scale(1.0 / d as f64), layout: SystemLayout::single(d) }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: &[C64], layout: SystemLayout) -> Result<Self> {
        let n = vec_norm(psi);
        if n == 0.0 {
            return Err(Error::InvalidInput("zero vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / n).collect();
        let op = Operator::outer(&v, &v);
        layout.check(&op)?;
        Ok(Self { op, layout })
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.op.rows()
    }

    pub fn with_layout(&self, layout: SystemLayout) -> Result<Self> {
        layout.check(&self.op)?;
        Ok(Self { op: self.op.clone(), layout })
    }

    /// Reduced state on the listed subsystems.
    pub fn marginal(&self, keep: &[usize]) -> Result<Self> {
        let op = partial_trace(&self.op, &self.layout, keep)?;
        Ok(Self { op: op.hermitian_part(), layout: self.layout.restrict(keep) })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.layout.dims().to_vec();
        dims.extend_from_slice(other.layout.dims());
        Self { op: tensor(&self.op, &other.op), layout: SystemLayout::new(&dims).expect("valid") }
    }

    pub fn eig(&self) -> HermitianEig {
        herm_eig(&self.op).expect("density operators are Hermitian")
    }

    /// Eigenvalues after clamping and cutoff, descending.
    pub fn spectrum(&self) -> Vec<f64> {
        let e = self.eig();
        e.psd_values().unwrap_or_else(|_| e.values.iter().map(|x| x.max(0.0)).collect())
    }

    pub fn purity(&self) -> f64 {
        self.op.trace_product(&self.op).re
    }

    /// Applies `U ρ U†` for a unitary `U`.
    pub fn conjugate_by(&self, u: &Operator) -> Self {
        Self { op: u.sandwich(&self.op).hermitian_part(), layout: self.layout.clone() }
    }
}

/// Orthonormal basis; columns are the basis kets.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    vectors: Operator,
}

impl MeasurementBasis {
    pub fn new(vectors: Operator) -> Result<Self> {
        if !vectors.is_square() {
            return Err(Error::DimensionMismatch("basis matrix must be square".into()));
        }
        let d = vectors.dim();
        let gram = vectors.adjoint().matmul(&vectors);
        let err = gram.dist_max(&Operator::identity(d));
        if err > 1e-10 {
            return Err(Error::InvalidInput(format!("basis not orthonormal (error {err:e})")));
        }
        Ok(Self { vectors })
    }

    pub fn computational(d: usize) -> Self {
        Self { vectors: Operator::identity(d) }
    }

    /// Discrete Fourier basis; mutually unbiased with the computational one.
    pub fn fourier(d: usize) -> Self {
        let s = 1.0 / (d as f64).sqrt();
        let w = 2.0 * std::f64::consts::PI / d as f64;
        Self { vectors: Operator::from_fn(d, d, |j, k| C64::from_polar(s, w * (j * k) as f64)) }
    }

    /// Eigenbasis of a Hermitian operator, in descending eigenvalue order.
    pub fn eigenbasis(h: &Operator) -> Result<Self> {
        Ok(Self { vectors: herm_eig(h)?.vectors })
    }

    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    pub fn vectors(&self) -> &Operator {
        &self.vectors
    }

    pub fn ket(&self, x: usize) -> Vec<C64> {
        self.vectors.column_vec(x)
    }

    pub fn projector(&self, x: usize) -> Operator {
        let k = self.ket(x);
        Operator::outer(&k, &k)
    }

    /// Outcome distribution `⟨x|ρ|x⟩` for a single-system operator.
    pub fn probabilities(&self, rho: &Operator) -> Pmf {
        let p: Vec<f64> = (0..self.dim())
            .map(|x| {
                let k = self.ket(x);
                inner(&k, &rho.apply(&k)).re.max(0.0)
            })
            .collect();
        let s: f64 = p.iter().sum();
        Pmf { probs: p.iter().map(|x| x / s).collect() }
    }
}

/// Probability mass function.
#[derive(Clone, Debug, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() || probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidInput("probabilities must be finite and nonnegative".into()));
        }
        let s: f64 = probs.iter().sum();
        if (s - 1.0).abs() > PMF_TOL {
            return Err(Error::InvalidInput(format!("probabilities sum to {s}")));
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        Self { probs: vec![1.0 / n as f64; n] }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Per-trial seed derived from the master seed and the trial index.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(trial);
    rng.next_u64()
}

pub fn trial_rng(master: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, trial))
}

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Haar-random unit vector.
pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    let v: Vec<C64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
    let n = vec_norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

/// Reduced state of a Haar-random pure state on `dim ⊗ rank`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityOperator {
    random_density_on(SystemLayout::single(dim), rank, rng)
}

/// As [`random_density`] with an explicit layout.
pub fn random_density_on<R: Rng + ?Sized>(layout: SystemLayout, rank: usize, rng: &mut R) -> DensityOperator {
    let d = layout.total();
    let r = rank.max(1);
    let g = Operator::from_fn(d, r, |_, _| gaussian_c64(rng));
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    DensityOperator { op: w.scale(1.0 / tr).hermitian_part(), layout }
}

/// Haar-random pure state on a layout, as a vector.
pub fn random_pure_state<R: Rng + ?Sized>(layout: SystemLayout, rng: &mut R) -> DensityOperator {
    let v = random_pure(layout.total(), rng);
    DensityOperator::pure(&v, layout).expect("unit vector")
}

/// Haar-random orthonormal basis (Gram–Schmidt on a Gaussian matrix).
pub fn random_onb<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> MeasurementBasis {
    MeasurementBasis { vectors: random_unitary(dim, rng) }
}

pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Operator {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let p = inner(c, &v);
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= y * p;
                }
            }
        }
        let n = vec_norm(&v);
        if n > 1e-8 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    Operator::from_fn(dim, dim, |i, k| cols[k][i])
}

/// Random positive definite operator with trace drawn from `[lo, hi]`.
pub fn random_positive<R: Rng + ?Sized>(dim: usize, lo: f64, hi: f64, rng: &mut R) -> Operator {
    let rho = random_density(dim, dim, rng);
    let t = rng.gen_range(lo..=hi);
    rho.op.scale(t)
}

/// `diag(p)` in the computational basis.
pub fn classical_state(p: &Pmf) -> DensityOperator {
    let n = p.len();
    DensityOperator { op: Operator::diag(&p.probs), layout: SystemLayout::single(n) }
}

/// `Σ_x p(x) |x⟩⟨x| ⊗ ρ_x`.
pub fn cq_state(p: &Pmf, conditionals: &[DensityOperator]) -> Result<DensityOperator> {
    if conditionals.len() != p.len() {
        return Err(Error::DimensionMismatch("one conditional state per outcome".into()));
    }
    let db = conditionals[0].dim();
    let n = p.len();
    let mut op = Operator::zeros(n * db, n * db);
    for (x, rho) in conditionals.iter().enumerate() {
        if rho.dim() != db {
            return Err(Error::DimensionMismatch("conditional states differ in dimension".into()));
        }
        for i in 0..db {
            for j in 0..db {
                op[(x * db + i, x * db + j)] = rho.op[(i, j)] * p.probs[x];
            }
        }
    }
    Ok(DensityOperator { op, layout: SystemLayout::bipartite(n, db) })
}

/// Embeds a single-system operator acting on subsystem `k` of `layout`.
fn embed(m: &Operator, layout: &SystemLayout, k: usize) -> Operator {
    let left: usize = layout.dims()[..k].iter().product();
    let right: usize = layout.dims()[k + 1..].iter().product();
    tensor(&tensor(&Operator::identity(left), m), &Operator::identity(right))
}

fn check_basis(basis: &MeasurementBasis, layout: &SystemLayout, subsystem: usize) -> Result<()> {
    if subsystem >= layout.len() || layout.dim(subsystem) != basis.dim() {
        return Err(Error::LayoutMismatch(format!(
            "basis of dimension {} on subsystem {subsystem} of {:?}",
            basis.dim(),
            layout.dims()
        )));
    }
    Ok(())
}

/// Pinching `Σ_x (|x⟩⟨x| ⊗ id) ρ (|x⟩⟨x| ⊗ id)` on one subsystem, written
/// in the basis itself.
pub fn measure(rho: &DensityOperator, basis: &MeasurementBasis, subsystem: usize) -> Result<DensityOperator> {
    check_basis(basis, &rho.layout, subsystem)?;
    let n = rho.dim();
    let mut out = Operator::zeros(n, n);
    for x in 0..basis.dim() {
        let p = embed(&basis.projector(x), &rho.layout, subsystem);
        out = &out + &p.sandwich(&rho.op);
    }
    Ok(DensityOperator { op: out.hermitian_part(), layout: rho.layout.clone() })
}

/// Pinched state expressed on the classical register, i.e. rotated so that
/// outcome `x` is the computational ket `|x⟩`.
pub fn measure_register(rho: &DensityOperator, basis: &MeasurementBasis, subsystem: usize) -> Result<DensityOperator> {
    let pinched = measure(rho, basis, subsystem)?;
    let u = embed(&basis.vectors.adjoint(), &rho.layout, subsystem);
    Ok(pinched.conjugate_by(&u))
}

/// Stinespring dilation of the measurement on `subsystem`:
/// `|x⟩ ↦ |x⟩ ⊗ |x⟩`, with the copy inserted right after `subsystem`.
pub fn stinespring_measure(
    rho: &DensityOperator,
    basis: &MeasurementBasis,
    subsystem: usize,
) -> Result<DensityOperator> {
    check_basis(basis, &rho.layout, subsystem)?;
    let d = basis.dim();
    // V = Σ_x (|x⟩ ⊗ |x⟩)⟨x|
    let mut v = Operator::zeros(d * d, d);
    for x in 0..d {
        let k = basis.ket(x);
        for a in 0..d {
            for b in 0..d {
                let amp = k[a] * k[b];
                if amp.norm() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    v[(a * d + b, c)] += amp * k[c].conj();
                }
            }
        }
    }
    let mut dims = rho.layout.dims().to_vec();
    dims.insert(subsystem + 1, d);
    let left: usize = rho.layout.dims()[..subsystem].iter().product();
    let right: usize = rho.layout.dims()[subsystem + 1..].iter().product();
    let big = tensor(&tensor(&Operator::identity(left), &v), &Operator::identity(right));
    Ok(DensityOperator { op: big.sandwich(&rho.op).hermitian_part(), layout: SystemLayout::new(&dims)? })
}

impl DensityOperator {
    /// Regroups the layout into `[first split systems, remaining systems]`.
    pub fn group(&self, split: usize) -> Result<Self> {
        let dims = self.layout.dims();
        if split == 0 || split >= dims.len() {
            return Err(Error::LayoutMismatch(format!("cannot split {dims:?} at {split}")));
        }
        let a: usize = dims[..split].iter().product();
        let b: usize = dims[split..].iter().product();
        Ok(Self { op: self.op.clone(), layout: SystemLayout::bipartite(a, b) })
    }
}
