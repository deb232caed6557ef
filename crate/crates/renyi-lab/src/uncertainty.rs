//! Uncertainty and information exclusion bounds for a pair of measurement
//! bases, and randomized checks of the relations built on them.
//!
//! Measured states are written on a classical register: `ρ_XB` has the
//! outcome of the `X` measurement as its first system.

use crate::inequalities::{
    build_report, restrict_to_support, sample_state, sample_tau, square, Claim, Diagnostics, Dims, InequalityReport,
    RANK_DEFICIENT_SHARE,
};
use crate::linalg::{herm_eigenvalues, log2, permute_systems, Operator, SystemLayout};
use crate::params::{
    const_comp_condition, ier_condition, ier_sym_condition, sample_orders, sdg_condition, sdg_condition_joint,
    triple_sign, Direction, OrderSet, RenyiTriple, TheoremTag,
};
use crate::renyi::{
    classical_renyi_entropy, cond_entropy_up, gen_cond_entropy, gen_mutual_info, hat, min_entropy, mutual_info_down,
    prime, von_neumann_entropy, OptimizerResult,
};
use crate::states::{
    cq_state, measure_register, random_density, random_onb, random_unitary, trial_rng, trial_seed, DensityOperator,
    MeasurementBasis, Pmf,
};
use crate::{Error, Result};
use rand::Rng;

/// Distance from `δ = 1` below which the `δ → 1` closed forms are used.
pub const DELTA_ONE_TOL: f64 = 1e-6;

/// Grid step for the mixing weight of the state-independent bound.
pub const SI_GRID_STEP: f64 = 1e-3;

const GOLDEN_ITERS: usize = 60;

/// Two orthonormal bases of the same space with their overlaps
/// `c_{x,z} = |⟨x|z⟩|²`.
#[derive(Clone, Debug)]
pub struct MeasurementPair {
    basis_x: MeasurementBasis,
    basis_z: MeasurementBasis,
    overlaps: Vec<Vec<f64>>,
    c: f64,
    d: usize,
}

impl MeasurementPair {
    pub fn new(basis_x: MeasurementBasis, basis_z: MeasurementBasis) -> Result<Self> {
        if basis_x.dim() != basis_z.dim() {
            return Err(Error::DimensionMismatch(format!(
                "bases of dimension {} and {}",
                basis_x.dim(),
                basis_z.dim()
            )));
        }
        let overlaps = overlap_matrix(&basis_x, &basis_z);
        let c = overlaps.iter().flatten().cloned().fold(0.0, f64::max);
        let d = basis_x.dim();
        Ok(Self { basis_x, basis_z, overlaps, c, d })
    }

    /// Computational and Fourier bases.
    pub fn mub(d: usize) -> Self {
        Self::new(MeasurementBasis::computational(d), MeasurementBasis::fourier(d)).expect("equal dimensions")
    }

    /// The mutually unbiased pair rotated by a common unitary.
    pub fn rotated_mub(u: &Operator) -> Result<Self> {
        let d = u.rows();
        let x = MeasurementBasis::new(u.clone())?;
        let z = MeasurementBasis::new(u.matmul(MeasurementBasis::fourier(d).vectors()))?;
        Self::new(x, z)
    }

    /// Two independent Haar-random bases.
    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let x = random_onb(d, rng);
        let z = random_onb(d, rng);
        Self::new(x, z).expect("equal dimensions")
    }

    /// The pair with the roles of `X` and `Z` exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.basis_z.clone(), self.basis_x.clone()).expect("equal dimensions")
    }

    pub fn basis_x(&self) -> &MeasurementBasis {
        &self.basis_x
    }

    pub fn basis_z(&self) -> &MeasurementBasis {
        &self.basis_z
    }

    pub fn overlaps(&self) -> &[Vec<f64>] {
        &self.overlaps
    }

    /// `c = max_{x,z} c_{x,z}`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `max_z c_{x,z}` for each `x` (`XZ`) or `max_x c_{x,z}` for each `z`
    /// (`ZX`).
    pub fn best_overlaps(&self, o: Orientation) -> Vec<f64> {
        let n = self.d;
        match o {
            Orientation::XZ => self.overlaps.iter().map(|r| r.iter().cloned().fold(0.0, f64::max)).collect(),
            Orientation::ZX => (0..n).map(|z| (0..n).map(|x| self.overlaps[x][z]).fold(0.0, f64::max)).collect(),
        }
    }

    fn first(&self, o: Orientation) -> &MeasurementBasis {
        match o {
            Orientation::XZ => &self.basis_x,
            Orientation::ZX => &self.basis_z,
        }
    }
}

/// Which basis is measured first in an oriented bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    XZ,
    ZX,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    QMu,
    QRho,
    QDelta,
    QDeltaSi,
    RH,
    RXz,
    RCp,
    RG,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::QMu => "q_mu",
            Self::QRho => "q_rho",
            Self::QDelta => "q_delta",
            Self::QDeltaSi => "q_delta_si",
            Self::RH => "r_h",
            Self::RXz => "r_xz",
            Self::RCp => "r_cp",
            Self::RG => "r_g",
        }
    }
}

/// A bound constant in bits, with the parameters it was evaluated at.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundValue {
    pub kind: BoundKind,
    pub value: f64,
    pub params: Vec<(&'static str, f64)>,
}

impl BoundValue {
    fn plain(kind: BoundKind, value: f64) -> Self {
        Self { kind, value, params: Vec::new() }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

/// `c_{x,z} = |⟨x|z⟩|²`, rows indexed by `x`.
pub fn overlap_matrix(basis_x: &MeasurementBasis, basis_z: &MeasurementBasis) -> Vec<Vec<f64>> {
    let g = basis_x.vectors().adjoint().matmul(basis_z.vectors());
    (0..g.rows()).map(|x| (0..g.cols()).map(|z| g[(x, z)].norm_sqr()).collect()).collect()
}

/// `q_MU = log(1/c)`.
pub fn q_mu(pair: &MeasurementPair) -> BoundValue {
    BoundValue::plain(BoundKind::QMu, -log2(pair.c))
}

/// `ρ_A` of a state whose first system is measured.
fn first_marginal(rho: &DensityOperator, d: usize) -> Result<DensityOperator> {
    let ra = if rho.layout().len() > 1 { rho.marginal(&[0])? } else { rho.clone() };
    if ra.dim() != d {
        return Err(Error::DimensionMismatch(format!("state of dimension {} for bases of dimension {d}", ra.dim())));
    }
    Ok(ra)
}

fn outcome_pmf(rho: &DensityOperator, pair: &MeasurementPair, o: Orientation) -> Result<Pmf> {
    let ra = first_marginal(rho, pair.d)?;
    Ok(pair.first(o).probabilities(ra.op()))
}

/// `−Σ_a p(a) log max_b c_{a,b}`.
fn q_oriented_vn(p: &Pmf, m: &[f64]) -> f64 {
    -p.probs().iter().zip(m).filter(|(&pa, _)| pa > 0.0).map(|(&pa, &ma)| pa * log2(ma)).sum::<f64>()
}

/// `q(ρ) = max{q(ρ, X, Z), q(ρ, Z, X)}`.
pub fn q_rho(rho: &DensityOperator, pair: &MeasurementPair) -> Result<BoundValue> {
    let mut best = f64::NEG_INFINITY;
    for o in [Orientation::XZ, Orientation::ZX] {
        best = best.max(q_oriented_vn(&outcome_pmf(rho, pair, o)?, &pair.best_overlaps(o)));
    }
    Ok(BoundValue::plain(BoundKind::QRho, best))
}

/// `−δ′ log Σ_a p(a) (max_b c_{a,b})^{1/δ′}`, with the `δ → 1` limit used
/// near `δ = 1`.
fn q_delta_of(p: &Pmf, m: &[f64], delta: f64) -> Result<f64> {
    if delta.is_nan() || delta == 0.0 {
        return Err(Error::InvalidOrder(delta));
    }
    if (delta - 1.0).abs() < DELTA_ONE_TOL {
        return Ok(q_oriented_vn(p, m));
    }
    let dp = prime(delta);
    let t = 1.0 / dp;
    let terms: Vec<f64> =
        p.probs().iter().zip(m).filter(|(&pa, _)| pa > 0.0).map(|(&pa, &ma)| log2(pa) + t * log2(ma)).collect();
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = top + log2(terms.iter().map(|x| (x - top).exp2()).sum::<f64>());
    Ok(-dp * lse)
}

/// `q_δ(ρ, X, Z)` (or `q_δ(ρ, Z, X)`). `δ = 0` is rejected; use small
/// `|δ|` for the `δ → 0` limit.
pub fn q_delta(rho: &DensityOperator, pair: &MeasurementPair, delta: f64, o: Orientation) -> Result<BoundValue> {
    let v = q_delta_of(&outcome_pmf(rho, pair, o)?, &pair.best_overlaps(o), delta)?;
    Ok(BoundValue { kind: BoundKind::QDelta, value: v, params: vec![("delta", delta)] })
}

/// `q_δ(ρ) = max{q_δ(ρ, X, Z), q_δ(ρ, Z, X)}`.
pub fn q_delta_max(rho: &DensityOperator, pair: &MeasurementPair, delta: f64) -> Result<BoundValue> {
    let a = q_delta(rho, pair, delta, Orientation::XZ)?.value;
    let b = q_delta(rho, pair, delta, Orientation::ZX)?.value;
    Ok(BoundValue { kind: BoundKind::QDelta, value: a.max(b), params: vec![("delta", delta)] })
}

/// `Σ_a f(m_a) |a⟩⟨a|` in the given basis.
fn diagonal_in(basis: &MeasurementBasis, values: &[f64]) -> Operator {
    let v = basis.vectors();
    v.matmul(&Operator::diag(values)).matmul(&v.adjoint())
}

/// `q_δ = −min_p log λ_max[Δ_δ(p)^{δ′}]`, minimized over `p` on a grid
/// of step [`SI_GRID_STEP`] and refined by golden-section search.
pub fn q_delta_state_independent(pair: &MeasurementPair, delta: f64) -> Result<BoundValue> {
    if delta.is_nan() || delta == 0.0 {
        return Err(Error::InvalidOrder(delta));
    }
    let mx = pair.best_overlaps(Orientation::XZ);
    let mz = pair.best_overlaps(Orientation::ZX);
    let near_one = (delta - 1.0).abs() < DELTA_ONE_TOL;
    let dp = prime(delta);
    // Entries m^{1/δ′} are stored as 2^{(log m)/δ′ − shift}: the shift is
    // the largest exponent for δ′ > 0 and the smallest for δ′ < 0, so the
    // extreme eigenvalue stays of order one.
    let mut shift = 0.0;
    let (ox, oz) = if near_one {
        let lx: Vec<f64> = mx.iter().map(|&m| log2(m)).collect();
        let lz: Vec<f64> = mz.iter().map(|&m| log2(m)).collect();
        (diagonal_in(&pair.basis_x, &lx), diagonal_in(&pair.basis_z, &lz))
    } else {
        let t = 1.0 / dp;
        let ex: Vec<f64> = mx.iter().map(|&m| t * log2(m)).collect();
        let ez: Vec<f64> = mz.iter().map(|&m| t * log2(m)).collect();
        let all = ex.iter().chain(&ez).cloned();
        shift = if dp > 0.0 { all.fold(f64::NEG_INFINITY, f64::max) } else { all.fold(f64::INFINITY, f64::min) };
        let px: Vec<f64> = ex.iter().map(|&e| (e - shift).exp2()).collect();
        let pz: Vec<f64> = ez.iter().map(|&e| (e - shift).exp2()).collect();
        (diagonal_in(&pair.basis_x, &px), diagonal_in(&pair.basis_z, &pz))
    };
    let g = |p: f64| -> f64 {
        let m = &ox.scale(p) + &oz.scale(1.0 - p);
        let ev = match herm_eigenvalues(&m) {
            Ok(v) => v,
            Err(_) => return f64::INFINITY,
        };
        let (top, bottom) = (ev[0], ev[ev.len() - 1]);
        if near_one {
            top
        } else if dp > 0.0 {
            dp * (shift + log2(top))
        } else {
            dp * (shift + log2(bottom))
        }
    };
    let n = (1.0 / SI_GRID_STEP).round() as usize;
    let (mut p_best, mut g_best) = (0.0, f64::INFINITY);
    for k in 0..=n {
        let p = k as f64 / n as f64;
        let v = g(p);
        if v < g_best {
            p_best = p;
            g_best = v;
        }
    }
    let (p_ref, g_ref) = golden_section(&g, (p_best - SI_GRID_STEP).max(0.0), (p_best + SI_GRID_STEP).min(1.0));
    if g_ref < g_best {
        p_best = p_ref;
        g_best = g_ref;
    }
    Ok(BoundValue { kind: BoundKind::QDeltaSi, value: -g_best, params: vec![("delta", delta), ("p", p_best)] })
}

fn golden_section(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `r_H = log(d² c)`.
pub fn hall_bound(pair: &MeasurementPair) -> BoundValue {
    let d = pair.d as f64;
    BoundValue::plain(BoundKind::RH, log2(d * d * pair.c))
}

/// `r(X, Z) = log(d Σ_x max_z c_{x,z})`, or `r(Z, X)`.
pub fn r_xz(pair: &MeasurementPair, o: Orientation) -> BoundValue {
    let s: f64 = pair.best_overlaps(o).iter().sum();
    let mut b = BoundValue::plain(BoundKind::RXz, log2(pair.d as f64 * s));
    b.params.push(("orientation", if o == Orientation::XZ { 0.0 } else { 1.0 }));
    b
}

/// `r_CP = min{r(X, Z), r(Z, X)}`.
pub fn r_cp(pair: &MeasurementPair) -> BoundValue {
    let v = r_xz(pair, Orientation::XZ).value.min(r_xz(pair, Orientation::ZX).value);
    BoundValue::plain(BoundKind::RCp, v)
}

/// `r_G = log(d · sum of the d largest overlaps)`.
pub fn r_g(pair: &MeasurementPair) -> BoundValue {
    let mut all: Vec<f64> = pair.overlaps.iter().flatten().cloned().collect();
    all.sort_by(|a, b| b.total_cmp(a));
    let s: f64 = all.iter().take(pair.d).sum();
    BoundValue::plain(BoundKind::RG, log2(pair.d as f64 * s))
}

/// `ρ_XB` and `ρ_ZB`.
fn measured(rho: &DensityOperator, pair: &MeasurementPair) -> Result<(DensityOperator, DensityOperator)> {
    let l = rho.layout();
    if l.len() != 2 {
        return Err(Error::LayoutMismatch(format!("expected A ⊗ B, got {:?}", l.dims())));
    }
    if l.dim(0) != pair.d {
        return Err(Error::DimensionMismatch(format!("A has dimension {}, bases {}", l.dim(0), pair.d)));
    }
    Ok((measure_register(rho, &pair.basis_x, 0)?, measure_register(rho, &pair.basis_z, 0)?))
}

/// `I_γ(ρ_ZB‖τ_B) = inf_{σ_Z} D_γ(ρ_ZB‖σ_Z ⊗ τ_B)`.
pub fn register_mutual_info(rho_zb: &DensityOperator, tau_b: &Operator, gamma: f64) -> Result<OptimizerResult> {
    let l = rho_zb.layout();
    let swapped = permute_systems(rho_zb.op(), l, &[1, 0])?;
    let rho_bz = DensityOperator::new(swapped, SystemLayout::bipartite(l.dim(1), l.dim(0)))?;
    gen_mutual_info(&rho_bz, tau_b, gamma)
}

fn invalid(what: &str, orders: &[f64]) -> Error {
    Error::InvalidInput(format!("{orders:?} outside the {what} range"))
}

fn orders(alpha: f64, beta: f64, gamma: f64, delta: Option<f64>, mu: Option<f64>, direction: Direction) -> OrderSet {
    OrderSet { alpha, beta, gamma, delta, mu, direction }
}

fn tol(tag: TheoremTag) -> f64 {
    crate::inequalities::default_tolerance(tag)
}

/// Normalized copy of `τ`.
fn normalized(tau: &Operator) -> Result<Operator> {
    let t = tau.trace().re;
    if !(t > 0.0) {
        return Err(Error::InvalidInput("τ_B has zero trace".into()));
    }
    Ok(tau.scale(1.0 / t))
}

/// One candidate `lhs ⋚ rhs` of a check with several component
/// inequalities; the report keeps the one with the smallest gap.
struct Component {
    lhs: f64,
    rhs: f64,
}

fn worst(parts: &[Component], claim: Claim) -> &Component {
    let gap = |c: &Component| match claim {
        Claim::Ge => c.lhs - c.rhs,
        Claim::Le => c.rhs - c.lhs,
    };
    parts.iter().min_by(|a, b| gap(a).total_cmp(&gap(b))).expect("at least one component")
}

/// `H_α(X) + H_α̂(Z) ≥ q_MU` for `α ≥ 1/2`, `1/α + 1/α̂ = 2`.
pub fn check_rmu(rho_a: &DensityOperator, pair: &MeasurementPair, alpha: f64) -> Result<InequalityReport> {
    let tag = TheoremTag::Rmu;
    if !(alpha >= 0.5) {
        return Err(invalid("α ≥ 1/2", &[alpha]));
    }
    let ah = hat(alpha);
    let hx = classical_renyi_entropy(&outcome_pmf(rho_a, pair, Orientation::XZ)?, alpha)?;
    let hz = classical_renyi_entropy(&outcome_pmf(rho_a, pair, Orientation::ZX)?, ah)?;
    let q = q_mu(pair).value;
    Ok(build_report(
        tag,
        rho_a.layout(),
        orders(alpha, ah, ah, None, None, Direction::Forward),
        hx + hz,
        q,
        Claim::Ge,
        vec![("h_alpha_x", hx), ("h_hat_z", hz), ("q_mu", q)],
        Diagnostics::default(),
        tol(tag),
    ))
}

fn check_gbur_range(t: &RenyiTriple) -> Result<()> {
    let ok = t.alpha >= 0.5 && t.gamma >= 0.5 && t.beta > 0.5 && 1.0 / t.beta + 1.0 / t.gamma >= 2.0 - 1e-12;
    if !ok {
        return Err(invalid("α, γ ≥ 1/2, β > 1/2, 1/β + 1/γ ≥ 2", &[t.alpha, t.beta, t.gamma]));
    }
    Ok(())
}

/// `H↑_β(X|B) + H_γ(M_Z(ρ_AB)‖τ_B) ≥ H_α(ρ_AB‖τ_B) + q_MU` for
/// `α, γ ≥ 1/2`, `β > 1/2` on the constraint surface with `1/β + 1/γ ≥ 2`.
pub fn check_gbur(
    rho: &DensityOperator,
    pair: &MeasurementPair,
    t: &RenyiTriple,
    tau_b: &Operator,
) -> Result<InequalityReport> {
    check_gbur_range(t)?;
    gbur(rho, pair, t, tau_b)
}

fn gbur(rho: &DensityOperator, pair: &MeasurementPair, t: &RenyiTriple, tau_b: &Operator) -> Result<InequalityReport> {
    let tag = TheoremTag::Gbur;
    let (rx, rz) = measured(rho, pair)?;
    square(tau_b, rho.layout().dim(1), "τ_B")?;
    let hx = cond_entropy_up(&rx, t.beta)?;
    let hz = gen_cond_entropy(&rz, tau_b, t.gamma)?;
    let ha = gen_cond_entropy(rho, tau_b, t.alpha)?;
    let q = q_mu(pair).value;
    let mut diag = Diagnostics::default();
    diag.add(&hx);
    Ok(build_report(
        tag,
        rho.layout(),
        orders(t.alpha, t.beta, t.gamma, None, None, t.direction),
        hx.value + hz,
        ha + q,
        Claim::Ge,
        vec![("h_up_beta_x", hx.value), ("h_gamma_z", hz), ("h_alpha", ha), ("q_mu", q)],
        diag,
        tol(tag),
    ))
}

/// The state-dependent relations. When `(α, β, γ, δ)` admits `μ` with
/// `(α−γ)/(αγ−2γ+1) = (β−δ)/(βδ−2δ+1) = μ` the two oriented relations
///
/// `H↑_β(X|B) + H_γ(M_Z(ρ)‖τ_B) ≥ H_α(ρ‖τ_B) + q_δ(ρ, X, Z)`,
/// `H_γ(M_X(ρ)‖τ_B) + H↑_β(Z|B) ≥ H_α(ρ‖τ_B) + q_δ(ρ, Z, X)`
///
/// are checked; when it admits `μ̃` with the roles of `β` and `γ`
/// exchanged, `H↑_β(X|B) + H↑_γ(Z|B) ≥ H_α(ρ‖τ_B) + q_δ(ρ)` is checked
/// with `τ_B` normalized. The report carries the tightest component.
#[allow(clippy::too_many_arguments)]
pub fn check_sdgbur(
    rho: &DensityOperator,
    pair: &MeasurementPair,
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    tau_b: &Operator,
) -> Result<InequalityReport> {
    let tag = TheoremTag::Sdgbur;
    let (mu, oriented) = sdg_condition(alpha, beta, gamma, delta);
    let (mu_joint, joint) = sdg_condition_joint(alpha, beta, gamma, delta);
    if !oriented && !joint {
        return Err(invalid("state-dependent", &[alpha, beta, gamma, delta]));
    }
    let (rx, rz) = measured(rho, pair)?;
    square(tau_b, rho.layout().dim(1), "τ_B")?;
    let mut diag = Diagnostics::default();
    let mut terms = Vec::new();
    let mut parts = Vec::new();
    if oriented {
        let ha = gen_cond_entropy(rho, tau_b, alpha)?;
        let hx = cond_entropy_up(&rx, beta)?;
        let hz = cond_entropy_up(&rz, beta)?;
        let gx = gen_cond_entropy(&rx, tau_b, gamma)?;
        let gz = gen_cond_entropy(&rz, tau_b, gamma)?;
        let qxz = q_delta(rho, pair, delta, Orientation::XZ)?.value;
        let qzx = q_delta(rho, pair, delta, Orientation::ZX)?.value;
        diag.add(&hx);
        diag.add(&hz);
        parts.push(Component { lhs: hx.value + gz, rhs: ha + qxz });
        parts.push(Component { lhs: gx + hz.value, rhs: ha + qzx });
        terms.extend([
            ("h_alpha", ha),
            ("h_up_beta_x", hx.value),
            ("h_up_beta_z", hz.value),
            ("h_gamma_x", gx),
            ("h_gamma_z", gz),
            ("q_delta_xz", qxz),
            ("q_delta_zx", qzx),
        ]);
    }
    if joint {
        let (lhs, rhs, extra) = joint_sides(rho, &rx, &rz, alpha, beta, gamma, tau_b, &mut diag, || {
            Ok(q_delta_max(rho, pair, delta)?.value)
        })?;
        parts.push(Component { lhs, rhs });
        terms.extend(extra);
    }
    let w = worst(&parts, Claim::Ge);
    let m = if oriented { mu } else { mu_joint };
    Ok(build_report(
        tag,
        rho.layout(),
        orders(alpha, beta, gamma, Some(delta), Some(m), Direction::Reverse),
        w.lhs,
        w.rhs,
        Claim::Ge,
        terms,
        diag,
        tol(tag),
    ))
}

/// `H↑_β(X|B) + H↑_γ(Z|B)` against `H_α(ρ‖τ̂_B) + q` with `τ̂_B = τ_B / tr τ_B`.
#[allow(clippy::too_many_arguments)]
fn joint_sides(
    rho: &DensityOperator,
    rx: &DensityOperator,
    rz: &DensityOperator,
    alpha: f64,
    beta: f64,
    gamma: f64,
    tau_b: &Operator,
    diag: &mut Diagnostics,
    bound: impl FnOnce() -> Result<f64>,
) -> Result<(f64, f64, Vec<(&'static str, f64)>)> {
    let tau = normalized(tau_b)?;
    let hx = cond_entropy_up(rx, beta)?;
    let hz = cond_entropy_up(rz, gamma)?;
    let ha = gen_cond_entropy(rho, &tau, alpha)?;
    let q = bound()?;
    diag.add(&hx);
    diag.add(&hz);
    let terms = vec![("h_up_beta_x", hx.value), ("h_up_gamma_z", hz.value), ("h_alpha_normalized", ha), ("q_joint", q)];
    Ok((hx.value + hz.value, ha + q, terms))
}

/// `H↑_β(X|B) + H↑_γ(Z|B) ≥ H_α(ρ_AB‖τ_B) + q_δ` with the state-independent
/// `q_δ`, under the `μ̃` conditions; `τ_B` is normalized.
pub fn check_sigbur(
    rho: &DensityOperator,
    pair: &MeasurementPair,
    o: &OrderSet,
    tau_b: &Operator,
) -> Result<InequalityReport> {
    let tag = TheoremTag::Sigbur;
    let delta = o.delta.ok_or_else(|| Error::InvalidInput("δ is required".into()))?;
    let (mu, ok) = sdg_condition_joint(o.alpha, o.beta, o.gamma, delta);
    if !ok {
        return Err(invalid("state-independent", &[o.alpha, o.beta, o.gamma, delta]));
    }
    let (rx, rz) = measured(rho, pair)?;
    square(tau_b, rho.layout().dim(1), "τ_B")?;
    let mut diag = Diagnostics::default();
    let (lhs, rhs, terms) = joint_sides(rho, &rx, &rz, o.alpha, o.beta, o.gamma, tau_b, &mut diag, || {
        Ok(q_delta_state_independent(pair, delta)?.value)
    })?;
    Ok(build_report(
        tag,
        rho.layout(),
        orders(o.alpha, o.beta, o.gamma, Some(delta), Some(mu), Direction::Reverse),
        lhs,
        rhs,
        Claim::Ge,
        terms,
        diag,
        tol(tag),
    ))
}

/// `H↑_γ(X|B) + H↑_β(Z|B) ≥ q_MU + H↑_α(A|B)` on the constraint surface
/// with `(α−1)(β−1)(γ−1) < 0`.
pub fn check_marcos(rho: &DensityOperator, pair: &MeasurementPair, t: &RenyiTriple) -> Result<InequalityReport> {
    if !(t.alpha >= 0.5 && t.beta >= 0.5 && t.gamma >= 0.5 && triple_sign(t.alpha, t.beta, t.gamma) < 0.0) {
        return Err(invalid("(α−1)(β−1)(γ−1) < 0", &[t.alpha, t.beta, t.gamma]));
    }
    marcos(rho, pair, t)
}

fn marcos(rho: &DensityOperator, pair: &MeasurementPair, t: &RenyiTriple) -> Result<InequalityReport> {
    let tag = TheoremTag::Marcos;
    let (rx, rz) = measured(rho, pair)?;
    let hx = cond_entropy_up(&rx, t.gamma)?;
    let hz = cond_entropy_up(&rz, t.beta)?;
    let ha = cond_entropy_up(rho, t.alpha)?;
    let q = q_mu(pair).value;
    let mut diag = Diagnostics::default();
    diag.add(&hx);
    diag.add(&hz);
    diag.add(&ha);
    Ok(build_report(
        tag,
        rho.layout(),
        orders(t.alpha, t.beta, t.gamma, None, None, t.direction),
        hx.value + hz.value,
        q + ha.value,
        Claim::Ge,
        vec![("h_up_gamma_x", hx.value), ("h_up_beta_z", hz.value), ("q_mu", q), ("h_up_alpha", ha.value)],
        diag,
        tol(tag),
    ))
}

/// `I↓_β(X:B) + I_γ(M_Z(ρ_AB)‖τ_B) ≤ r_H − H_α(ρ_AB‖τ_B)` under the
/// conditions of [`check_gbur`].
pub fn check_result2(
    rho: &DensityOperator,
    pair: &MeasurementPair,
    t: &RenyiTriple,
    tau_b: &Operator,
) -> Result<InequalityReport> {
    check_gbur_range(t)?;
    result2(rho, pair, t, tau_b)
}

fn result2(
    rho: &DensityOperator,
    pair: &MeasurementPair,
    t: &RenyiTriple,
    tau_b: &Operator,
) -> Result<InequalityReport> {
    let tag = TheoremTag::Result2;
    let (rx, rz) = measured(rho, pair)?;
    square(tau_b, rho.layout().dim(1), "τ_B")?;
    let ix = mutual_info_down(&rx, t.beta)?;
    let iz = register_mutual_info(&rz, tau_b, t.gamma)?;
    let ha = gen_cond_entropy(rho, tau_b, t.alpha)?;
    let r = hall_bound(pair).value;
    let mut diag = Diagnostics::default();
    diag.add(&ix);
    diag.add(&iz);
    Ok(build_report(
        tag,
        rho.layout(),
        orders(t.alpha, t.beta, t.gamma, None, None, t.direction),
        ix.value + iz.value,
        r - ha,
        Claim::Le,
        vec![("i_down_beta_x", ix.value), ("i_gamma_z", iz.value), ("r_h", r), ("h_alpha", ha)],
        diag,
        tol(tag),
    ))
}

/// `I↓_α(X:B) + I_{1/α}(M_Z(ρ_AB)‖ρ_B) ≤ r_H − H_min(A|B)` for
/// `1/2 < α < 2`.
pub fn check_res2c(rho: &DensityOperator, pair: &MeasurementPair, alpha: f64) -> Result<InequalityReport> {
    let tag = TheoremTag::Res2c;
    if !(alpha > 0.5 && alpha < 2.0) {
        return Err(invalid("1/2 < α < 2", &[alpha]));
    }
    let (rx, rz) = measured(rho, pair)?;
    let rb = rho.marginal(&[1])?;
    let ix = mutual_info_down(&rx, alpha)?;
    let iz = register_mutual_info(&rz, rb.op(), 1.0 / alpha)?;
    let hm = min_entropy(rho)?;
    let r = hall_bound(pair).value;
    let mut diag = Diagnostics::default();
    diag.add(&ix);
    diag.add(&iz);
    diag.add(&hm);
    Ok(build_report(
        tag,
        rho.layout(),
        orders(alpha, alpha, 1.0 / alpha, None, None, Direction::Reverse),
        ix.value + iz.value,
        r - hm.value,
        Claim::Le,
        vec![("i_down_alpha_x", ix.value), ("i_inv_alpha_z", iz.value), ("r_h", r), ("h_min", hm.value)],
        diag,
        tol(tag),
    ))
}

/// Exclusion relations with the oriented Coles–Piani constants.
///
/// Plain form (`τ_B` required): both
/// `I↓_β(X:B) + I_γ(M_Z(ρ)‖τ_B) ≤ r(X, Z) − H_α(ρ‖τ_B)` and
/// `I_γ(M_X(ρ)‖τ_B) + I↓_β(Z:B) ≤ r(Z, X) − H_α(ρ‖τ_B)`.
///
/// Symmetric form: `I↓_β(X:B) + I↓_γ(Z:B) ≤ r_CP − H↑_α(A|B)`.
#[allow(clippy::too_many_arguments)]
pub fn check_ier(
    rho: &DensityOperator,
    pair: &MeasurementPair,
    alpha: f64,
    beta: f64,
    gamma: f64,
    tau_b: Option<&Operator>,
    symmetric: bool,
) -> Result<InequalityReport> {
    let (rx, rz) = measured(rho, pair)?;
    let mut diag = Diagnostics::default();
    if symmetric {
        let tag = TheoremTag::IerSym;
        if !ier_sym_condition(alpha, beta, gamma) {
            return Err(invalid("symmetric exclusion", &[alpha, beta, gamma]));
        }
        let ix = mutual_info_down(&rx, beta)?;
        let iz = mutual_info_down(&rz, gamma)?;
        let ha = cond_entropy_up(rho, alpha)?;
        let r = r_cp(pair).value;
        diag.add(&ix);
        diag.add(&iz);
        diag.add(&ha);
        return Ok(build_report(
            tag,
            rho.layout(),
            orders(alpha, beta, gamma, None, None, Direction::Reverse),
            ix.value + iz.value,
            r - ha.value,
            Claim::Le,
            vec![("i_down_beta_x", ix.value), ("i_down_gamma_z", iz.value), ("r_cp", r), ("h_up_alpha", ha.value)],
            diag,
            tol(tag),
        ));
    }
    let tag = TheoremTag::Ier;
    if !ier_condition(alpha, beta, gamma) {
        return Err(invalid("exclusion", &[alpha, beta, gamma]));
    }
    let tau_b = tau_b.ok_or_else(|| Error::InvalidInput("τ_B is required".into()))?;
    square(tau_b, rho.layout().dim(1), "τ_B")?;
    let ha = gen_cond_entropy(rho, tau_b, alpha)?;
    let ix = mutual_info_down(&rx, beta)?;
    let iz = mutual_info_down(&rz, beta)?;
    let gx = register_mutual_info(&rx, tau_b, gamma)?;
    let gz = register_mutual_info(&rz, tau_b, gamma)?;
    let rxz = r_xz(pair, Orientation::XZ).value;
    let rzx = r_xz(pair, Orientation::ZX).value;
    for r in [&ix, &iz, &gx, &gz] {
        diag.add(r);
    }
    let parts =
        [Component { lhs: ix.value + gz.value, rhs: rxz - ha }, Component { lhs: gx.value + iz.value, rhs: rzx - ha }];
    let w = worst(&parts, Claim::Le);
    Ok(build_report(
        tag,
        rho.layout(),
        orders(alpha, beta, gamma, None, Some(1.0 / (2.0 - beta)), Direction::Reverse),
        w.lhs,
        w.rhs,
        Claim::Le,
        vec![
            ("h_alpha", ha),
            ("i_down_beta_x", ix.value),
            ("i_down_beta_z", iz.value),
            ("i_gamma_x", gx.value),
            ("i_gamma_z", gz.value),
            ("r_xz", rxz),
            ("r_zx", rzx),
        ],
        diag,
        tol(tag),
    ))
}

/// For `1/2 ≤ α ≤ 3/2`:
/// `I↓_α(X:B) + I_{2−α}(M_Z(ρ_AB)‖ρ_B) ≤ r(X, Z) − H_min(A|B)` and
/// `I↓_{1/2}(X:B) + I↓_{3/2}(Z:B) ≤ r_CP − H_min(A|B)`.
pub fn check_iier_opt(rho: &DensityOperator, pair: &MeasurementPair, alpha: f64) -> Result<InequalityReport> {
    let tag = TheoremTag::IierOpt;
    if !(0.5..=1.5).contains(&alpha) {
        return Err(invalid("1/2 ≤ α ≤ 3/2", &[alpha]));
    }
    let (rx, rz) = measured(rho, pair)?;
    let rb = rho.marginal(&[1])?;
    let hm = min_entropy(rho)?;
    let ix = mutual_info_down(&rx, alpha)?;
    let iz = register_mutual_info(&rz, rb.op(), 2.0 - alpha)?;
    let ix_half = mutual_info_down(&rx, 0.5)?;
    let iz_three = mutual_info_down(&rz, 1.5)?;
    let rxz = r_xz(pair, Orientation::XZ).value;
    let rc = r_cp(pair).value;
    let mut diag = Diagnostics::default();
    for r in [&hm, &ix, &iz, &ix_half, &iz_three] {
        diag.add(r);
    }
    let parts = [
        Component { lhs: ix.value + iz.value, rhs: rxz - hm.value },
        Component { lhs: ix_half.value + iz_three.value, rhs: rc - hm.value },
    ];
    let w = worst(&parts, Claim::Le);
    Ok(build_report(
        tag,
        rho.layout(),
        orders(alpha, alpha, 2.0 - alpha, None, None, Direction::Reverse),
        w.lhs,
        w.rhs,
        Claim::Le,
        vec![
            ("h_min", hm.value),
            ("i_down_alpha_x", ix.value),
            ("i_two_minus_alpha_z", iz.value),
            ("i_down_half_x", ix_half.value),
            ("i_down_three_halves_z", iz_three.value),
            ("r_xz", rxz),
            ("r_cp", rc),
        ],
        diag,
        tol(tag),
    ))
}

/// `H_α(ρ_X) − q_δ(ρ, X, Z) ≤ log Σ_x max_z c_{x,z}` for `α ≥ 1/2`,
/// `δ < α` with `(α−δ)/(αδ−2δ+1) ≥ 1/2` and
/// `(α−1)(δ−1)/(α−δ) + 1/δ ≥ 1`.
pub fn check_const_comp(
    rho_a: &DensityOperator,
    pair: &MeasurementPair,
    alpha: f64,
    delta: f64,
) -> Result<InequalityReport> {
    let tag = TheoremTag::ConstComp;
    if !const_comp_condition(alpha, delta) {
        return Err(invalid("constant comparison", &[alpha, delta]));
    }
    let hx = classical_renyi_entropy(&outcome_pmf(rho_a, pair, Orientation::XZ)?, alpha)?;
    let q = q_delta(rho_a, pair, delta, Orientation::XZ)?.value;
    let s = log2(pair.best_overlaps(Orientation::XZ).iter().sum::<f64>());
    Ok(build_report(
        tag,
        rho_a.layout(),
        orders(alpha, alpha, alpha, Some(delta), None, Direction::Reverse),
        hx - q,
        s,
        Claim::Le,
        vec![("h_alpha_x", hx), ("q_delta_xz", q), ("log_sum_max", s)],
        Diagnostics::default(),
        tol(tag),
    ))
}

/// `I(X:Y) + I(Z:Y) ≤ log(d² c)` for a state of `A ⊗ Y` whose `Y` register
/// is read out in the computational basis.
pub fn check_hall_classical(rho_ay: &DensityOperator, pair: &MeasurementPair) -> Result<InequalityReport> {
    let tag = TheoremTag::HallClassical;
    let (rx, rz) = measured(rho_ay, pair)?;
    let dy = rho_ay.layout().dim(1);
    let y = MeasurementBasis::computational(dy);
    let info = |r: &DensityOperator| -> Result<f64> {
        let c = measure_register(r, &y, 1)?;
        Ok(von_neumann_entropy(&c.marginal(&[0])?)? + von_neumann_entropy(&c.marginal(&[1])?)?
            - von_neumann_entropy(&c)?)
    };
    let ix = info(&rx)?;
    let iz = info(&rz)?;
    let r = hall_bound(pair).value;
    Ok(build_report(
        tag,
        rho_ay.layout(),
        orders(1.0, 1.0, 1.0, None, None, Direction::Reverse),
        ix + iz,
        r,
        Claim::Le,
        vec![("i_xy", ix), ("i_zy", iz), ("r_h", r)],
        Diagnostics::default(),
        tol(tag),
    ))
}

/// Fraction of trials that use a rotated mutually unbiased pair.
pub const MUB_SHARE: f64 = 0.25;

/// Random pair: a rotated mutually unbiased pair or two Haar bases.
pub fn sample_pair<R: Rng + ?Sized>(d: usize, rng: &mut R) -> MeasurementPair {
    if rng.gen_bool(MUB_SHARE) {
        MeasurementPair::rotated_mub(&random_unitary(d, rng)).expect("unitary columns are orthonormal")
    } else {
        MeasurementPair::random(d, rng)
    }
}

/// `Σ_y p(y) ρ_y ⊗ |y⟩⟨y|` with random `p` and conditionals.
fn sample_cq<R: Rng + ?Sized>(da: usize, dy: usize, rng: &mut R) -> Result<DensityOperator> {
    let w: Vec<f64> = (0..dy).map(|_| rng.gen_range(0.0..1.0)).collect();
    let s: f64 = w.iter().sum();
    let p = Pmf::new(w.iter().map(|x| x / s).collect())?;
    let cond: Vec<DensityOperator> = (0..dy).map(|_| random_density(da, rng.gen_range(1..=da), rng)).collect();
    let yx = cq_state(&p, &cond)?;
    let op = permute_systems(yx.op(), yx.layout(), &[1, 0])?;
    DensityOperator::new(op, SystemLayout::bipartite(da, dy))
}

/// Draws the pair, orders and states for one trial of an uncertainty
/// theorem and runs its check.
pub fn run_trial(tag: TheoremTag, dims: Dims, master_seed: u64, trial: u64) -> Result<InequalityReport> {
    if tag.is_divergence() {
        return Err(Error::InvalidInput(format!("{tag} is not an uncertainty relation")));
    }
    let mut rng = trial_rng(master_seed, trial);
    let o = sample_orders(&mut rng, tag)?;
    let pair = sample_pair(dims.a, &mut rng);
    let bi = SystemLayout::bipartite(dims.a, dims.b);
    let deficient = rng.gen_bool(RANK_DEFICIENT_SHARE);
    let triple = || RenyiTriple::new(o.alpha, o.beta, o.gamma);
    let with_tau = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<(DensityOperator, Operator)> {
        let rho = sample_state(bi.clone(), rng);
        let tau = sample_tau(dims.b, deficient, rng);
        let rho = if deficient { restrict_to_support(&rho, &tau, 1)? } else { rho };
        Ok((rho, tau))
    };
    let delta = || o.delta.ok_or_else(|| Error::InvalidInput("missing δ".into()));
    let mut report = match tag {
        TheoremTag::Rmu => check_rmu(&sample_state(SystemLayout::single(dims.a), &mut rng), &pair, o.alpha)?,
        TheoremTag::Gbur => {
            let (rho, tau) = with_tau(&mut rng)?;
            check_gbur(&rho, &pair, &triple()?, &tau)?
        }
        TheoremTag::Sdgbur => {
            let (rho, tau) = with_tau(&mut rng)?;
            check_sdgbur(&rho, &pair, o.alpha, o.beta, o.gamma, delta()?, &tau)?
        }
        TheoremTag::Sigbur => {
            let (rho, tau) = with_tau(&mut rng)?;
            check_sigbur(&rho, &pair, &o, &tau)?
        }
        TheoremTag::Marcos => check_marcos(&sample_state(bi, &mut rng), &pair, &triple()?)?,
        TheoremTag::Result2 => {
            let (rho, tau) = with_tau(&mut rng)?;
            check_result2(&rho, &pair, &triple()?, &tau)?
        }
        TheoremTag::Res2c => check_res2c(&sample_state(bi, &mut rng), &pair, o.alpha)?,
        TheoremTag::Ier => {
            let (rho, tau) = with_tau(&mut rng)?;
            check_ier(&rho, &pair, o.alpha, o.beta, o.gamma, Some(&tau), false)?
        }
        TheoremTag::IerSym => check_ier(&sample_state(bi, &mut rng), &pair, o.alpha, o.beta, o.gamma, None, true)?,
        TheoremTag::IierOpt => check_iier_opt(&sample_state(bi, &mut rng), &pair, o.alpha)?,
        TheoremTag::ConstComp => {
            check_const_comp(&sample_state(SystemLayout::single(dims.a), &mut rng), &pair, o.alpha, delta()?)?
        }
        TheoremTag::HallClassical => check_hall_classical(&sample_cq(dims.a, dims.b, &mut rng)?, &pair)?,
        _ => unreachable!("divergence tags are rejected above"),
    };
    report.trial_id = trial;
    report.trial_seed = trial_seed(master_seed, trial);
    Ok(report)
}

/// Exploration counterpart of [`run_trial`] for the relations stated on a
/// plain triple: the triple is drawn from the whole constraint surface.
pub fn explore_trial(tag: TheoremTag, dims: Dims, master_seed: u64, trial: u64) -> Result<InequalityReport> {
    let mut rng = trial_rng(master_seed, trial);
    let t = crate::inequalities::explore_triple(&mut rng, 0.5)?;
    let pair = sample_pair(dims.a, &mut rng);
    let rho = sample_state(SystemLayout::bipartite(dims.a, dims.b), &mut rng);
    let tau = crate::states::random_positive(dims.b, 0.5, 2.0, &mut rng);
    let mut report = match tag {
        TheoremTag::Gbur => gbur(&rho, &pair, &t, &tau)?,
        TheoremTag::Result2 => result2(&rho, &pair, &t, &tau)?,
        TheoremTag::Marcos => marcos(&rho, &pair, &t)?,
        _ => return Err(Error::InvalidInput(format!("{tag} has no exploration mode"))),
    };
    report.trial_id = trial;
    report.trial_seed = trial_seed(master_seed, trial);
    Ok(report)
}
