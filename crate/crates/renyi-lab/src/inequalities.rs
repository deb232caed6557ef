//! Randomized verification of the divergence inequalities: the general
//! bipartite form, decomposition and chain rules and their variants.
//!
//! Every check returns an [`InequalityReport`] whose `gap` is oriented so
//! that `gap ≥ 0` means the claimed inequality holds.

use crate::linalg::{herm_eig, log2, partial_trace, tensor, Operator, SystemLayout};
use crate::params::{
    chain_range, decomp_dup_range, decomp_range, sample_orders, triple_sign, Direction, OrderSet, RenyiTriple,
    TheoremTag,
};
use crate::renyi::{
    cond_entropy_up, divergence_unchecked, gen_mutual_info, mutual_info_down, renyi_entropy, sandwiched_divergence,
    OptimizerResult,
};
use crate::states::{random_density, random_density_on, random_positive, trial_rng, trial_seed, DensityOperator};
use crate::{Error, Result};
use rand::Rng;

/// Base tolerance for checks without an optimized term.
pub const BASE_TOL: f64 = 1e-6;

/// Tolerance once an optimized term can bias the comparison.
pub const OPTIMIZED_TOL: f64 = 1e-5;

/// Support threshold for `τ ≫ ρ`.
const DOMINATION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The support condition fails with orders above 1.
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Skipped => "skipped",
        }
    }
}

/// Aggregate optimizer bookkeeping for the optimized terms of a check.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub iterations: usize,
    pub residual: f64,
}

impl Diagnostics {
    pub(crate) fn add(&mut self, r: &OptimizerResult) {
        self.iterations += r.iterations;
        self.residual = self.residual.max(r.residual);
    }
}

/// Outcome of one trial.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub tag: TheoremTag,
    pub trial_id: u64,
    pub trial_seed: u64,
    pub dims: SystemLayout,
    pub orders: OrderSet,
    pub lhs: f64,
    pub rhs: f64,
    /// Claimed-larger side minus claimed-smaller side.
    pub gap: f64,
    pub direction: Direction,
    pub diagnostics: Diagnostics,
    /// Named terms making up the two sides.
    pub terms: Vec<(&'static str, f64)>,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl InequalityReport {
    /// Re-evaluates the verdict at a different tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        if self.verdict != Verdict::Skipped {
            self.verdict = verdict_of(self.gap, tol);
        }
        self
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

fn verdict_of(gap: f64, tol: f64) -> Verdict {
    if gap >= -tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Which side of `lhs ⋚ rhs` is claimed larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `lhs ≥ rhs`.
    Ge,
    /// `lhs ≤ rhs`.
    Le,
}

/// Assembles a report; infinite sides that agree in the claimed direction
/// count as a pass.
#[allow(clippy::too_many_arguments)]
pub(crate) fn build_report(
    tag: TheoremTag,
    dims: &SystemLayout,
    orders: OrderSet,
    lhs: f64,
    rhs: f64,
    claim: Claim,
    terms: Vec<(&'static str, f64)>,
    diagnostics: Diagnostics,
    tol: f64,
) -> InequalityReport {
    let (big, small) = match claim {
        Claim::Ge => (lhs, rhs),
        Claim::Le => (rhs, lhs),
    };
    let gap = if big == small { 0.0 } else { big - small };
    let verdict = if gap.is_nan() { Verdict::Fail } else { verdict_of(gap, tol) };
    InequalityReport {
        tag,
        trial_id: 0,
        trial_seed: 0,
        dims: dims.clone(),
        orders,
        lhs,
        rhs,
        gap,
        direction: orders.direction,
        diagnostics,
        terms,
        tolerance: tol,
        verdict,
    }
}

pub(crate) fn skipped(tag: TheoremTag, dims: &SystemLayout, orders: OrderSet) -> InequalityReport {
    InequalityReport {
        tag,
        trial_id: 0,
        trial_seed: 0,
        dims: dims.clone(),
        orders,
        lhs: f64::NAN,
        rhs: f64::NAN,
        gap: f64::NAN,
        direction: orders.direction,
        diagnostics: Diagnostics::default(),
        terms: Vec::new(),
        tolerance: 0.0,
        verdict: Verdict::Skipped,
    }
}

pub fn default_tolerance(tag: TheoremTag) -> f64 {
    match tag {
        TheoremTag::DivFormIntLem => BASE_TOL,
        _ => OPTIMIZED_TOL,
    }
}

fn orders_of(t: &RenyiTriple) -> OrderSet {
    OrderSet { alpha: t.alpha, beta: t.beta, gamma: t.gamma, delta: None, mu: None, direction: t.direction }
}

fn claim_of(d: Direction) -> Claim {
    match d {
        Direction::Forward => Claim::Ge,
        Direction::Reverse => Claim::Le,
    }
}

fn check_range(ok: bool, t: &RenyiTriple, what: &str) -> Result<()> {
    if !ok {
        return Err(Error::InvalidInput(format!("({}, {}, {}) outside the {what} range", t.alpha, t.beta, t.gamma)));
    }
    Ok(())
}

/// Whether `sigma` dominates `rho`: `rho` has no weight off `supp(sigma)`.
pub fn dominates(sigma: &Operator, rho: &Operator) -> Result<bool> {
    let e = herm_eig(sigma)?;
    let p = e.support()?;
    let outside = rho.trace().re - p.trace_product(rho).re;
    Ok(outside <= DOMINATION_TOL * (1.0 + rho.trace().re.abs()))
}

fn bipartite(rho: &DensityOperator) -> Result<(usize, usize)> {
    let l = rho.layout();
    if l.len() != 2 {
        return Err(Error::LayoutMismatch(format!("expected A ⊗ B, got {:?}", l.dims())));
    }
    Ok((l.dim(0), l.dim(1)))
}

pub(crate) fn square(op: &Operator, d: usize, what: &str) -> Result<()> {
    if !op.is_square() || op.rows() != d {
        return Err(Error::DimensionMismatch(format!("{what} must be {d}x{d}")));
    }
    Ok(())
}

/// `γ′ · log tr(ρ_A σ_A^{1/γ′})` evaluated in the eigenbasis of `σ_A` with a
/// log-sum-exp.
pub fn weighted_log_trace(rho_a: &Operator, sigma_a: &Operator, gamma: f64) -> Result<f64> {
    let gp = crate::renyi::prime(gamma);
    let e = herm_eig(sigma_a)?;
    let vals = e.psd_values()?;
    if vals.iter().any(|&v| v <= 0.0) {
        return Err(Error::InvalidInput("σ_A must be strictly positive".into()));
    }
    if gp.is_infinite() {
        // γ′ log tr(ρ σ^{1/γ′}) → tr(ρ log σ) as γ′ → ±∞
        return Ok(e.log2()?.trace_product(rho_a).re);
    }
    let t = 1.0 / gp;
    let mut terms = Vec::with_capacity(vals.len());
    for (k, &v) in vals.iter().enumerate() {
        let col = e.vectors.column_vec(k);
        let w = crate::linalg::inner(&col, &rho_a.apply(&col)).re;
        if w > 0.0 {
            terms.push(log2(w) + t * log2(v));
        }
    }
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = m + log2(terms.iter().map(|x| (x - m).exp2()).sum::<f64>());
    Ok(gp * lse)
}

/// `−H_α(ρ_AB‖τ_B) ⋚ D_β(ρ_AB‖σ_A ⊗ τ_B) + γ′ log tr(ρ_A σ_A^{1/γ′})`:
/// `≤` when `1/β + 1/γ ≤ 2`, `≥` otherwise.
pub fn check_general_bipartite(
    rho: &DensityOperator,
    sigma_a: &Operator,
    tau_b: &Operator,
    t: &RenyiTriple,
) -> Result<InequalityReport> {
    check_range(t.alpha >= 0.5 && t.beta >= 0.5, t, "α, β ≥ 1/2")?;
    general_bipartite(rho, sigma_a, tau_b, t)
}

fn general_bipartite(
    rho: &DensityOperator,
    sigma_a: &Operator,
    tau_b: &Operator,
    t: &RenyiTriple,
) -> Result<InequalityReport> {
    let tag = TheoremTag::DivFormIntLem;
    let (da, db) = bipartite(rho)?;
    square(sigma_a, da, "σ_A")?;
    square(tau_b, db, "τ_B")?;
    let id_tau = tensor(&Operator::identity(da), tau_b);
    if !(t.alpha < 1.0 && t.beta < 1.0) && !dominates(&id_tau, rho.op())? {
        return Ok(skipped(tag, rho.layout(), orders_of(t)));
    }
    let neg_h = sandwiched_divergence(rho, &id_tau, t.alpha)?;
    let d = sandwiched_divergence(rho, &tensor(sigma_a, tau_b), t.beta)?;
    let w = weighted_log_trace(rho.marginal(&[0])?.op(), sigma_a, t.gamma)?;
    let claim = match t.direction {
        Direction::Forward => Claim::Le,
        Direction::Reverse => Claim::Ge,
    };
    Ok(build_report(
        tag,
        rho.layout(),
        orders_of(t),
        neg_h,
        d + w,
        claim,
        vec![("neg_h_alpha", neg_h), ("d_beta", d), ("weighted_log_trace", w)],
        Diagnostics::default(),
        default_tolerance(tag),
    ))
}

fn decomposition(
    tag: TheoremTag,
    rho: &DensityOperator,
    tau_a: &Operator,
    t: &RenyiTriple,
) -> Result<InequalityReport> {
    let (da, db) = bipartite(rho)?;
    square(tau_a, da, "τ_A")?;
    let tau_id = tensor(tau_a, &Operator::identity(db));
    if !(t.alpha < 1.0 && t.beta < 1.0) && !dominates(&tau_id, rho.op())? {
        return Ok(skipped(tag, rho.layout(), orders_of(t)));
    }
    let mi = gen_mutual_info(rho, tau_a, t.beta)?;
    let hb = renyi_entropy(&rho.marginal(&[1])?, t.gamma)?;
    let ha = -divergence_unchecked(rho.op(), &tau_id, t.alpha)?;
    let mut diag = Diagnostics::default();
    diag.add(&mi);
    Ok(build_report(
        tag,
        rho.layout(),
        orders_of(t),
        mi.value,
        hb - ha,
        claim_of(t.direction),
        vec![("i_beta", mi.value), ("h_gamma_b", hb), ("h_alpha_cond", ha)],
        diag,
        default_tolerance(tag),
    ))
}

/// `I_β(ρ_AB‖τ_A) ⋚ H_γ(ρ_B) − H_α(ρ_AB‖τ_A)` for `α, β ≥ 1/2`, `γ ≥ 0`.
pub fn check_decomposition(rho: &DensityOperator, tau_a: &Operator, t: &RenyiTriple) -> Result<InequalityReport> {
    check_range(decomp_range(t.alpha, t.beta, t.gamma), t, "decomposition")?;
    decomposition(TheoremTag::Decomp, rho, tau_a, t)
}

/// The decomposition rule on the alternative range `α ≥ 0`, `β > 1/2`,
/// `γ ≥ 1/2`.
pub fn check_decomp_appendix(rho: &DensityOperator, tau_a: &Operator, t: &RenyiTriple) -> Result<InequalityReport> {
    check_range(decomp_dup_range(t.alpha, t.beta, t.gamma), t, "alternative decomposition")?;
    decomposition(TheoremTag::DecompDup, rho, tau_a, t)
}

fn bipartite_chain(tag: TheoremTag, rho: &DensityOperator, t: &RenyiTriple) -> Result<InequalityReport> {
    bipartite(rho)?;
    let ha = renyi_entropy(rho, t.alpha)?;
    let hu = cond_entropy_up(rho, t.beta)?;
    let hb = renyi_entropy(&rho.marginal(&[1])?, t.gamma)?;
    let mut diag = Diagnostics::default();
    diag.add(&hu);
    Ok(build_report(
        tag,
        rho.layout(),
        orders_of(t),
        ha,
        hu.value + hb,
        claim_of(t.direction),
        vec![("h_alpha_ab", ha), ("h_up_beta", hu.value), ("h_gamma_b", hb)],
        diag,
        default_tolerance(tag),
    ))
}

/// `H_α(ρ_AB) ⋚ H↑_β(A|B) + H_γ(ρ_B)` for `α, β ≥ 1/2`, `γ ≥ 0`.
pub fn check_bipartite_chain(rho: &DensityOperator, t: &RenyiTriple) -> Result<InequalityReport> {
    check_range(decomp_range(t.alpha, t.beta, t.gamma), t, "bipartite chain")?;
    bipartite_chain(TheoremTag::Bchain, rho, t)
}

/// The bipartite chain rule on the range `α ≥ 0`, `β > 1/2`, `γ ≥ 1/2`.
pub fn check_bipartite_chain_appendix(rho: &DensityOperator, t: &RenyiTriple) -> Result<InequalityReport> {
    check_range(decomp_dup_range(t.alpha, t.beta, t.gamma), t, "alternative bipartite chain")?;
    bipartite_chain(TheoremTag::BchainCor, rho, t)
}

fn tripartite_chain(
    tag: TheoremTag,
    rho: &DensityOperator,
    tau_c: &Operator,
    t: &RenyiTriple,
    claim: Claim,
) -> Result<InequalityReport> {
    let l = rho.layout();
    if l.len() != 3 {
        return Err(Error::LayoutMismatch(format!("expected A ⊗ B ⊗ C, got {:?}", l.dims())));
    }
    let (da, db, dc) = (l.dim(0), l.dim(1), l.dim(2));
    square(tau_c, dc, "τ_C")?;
    let id_tau = tensor(&Operator::identity(da * db), tau_c);
    if !(t.alpha < 1.0 && t.gamma < 1.0) && !dominates(&id_tau, rho.op())? {
        return Ok(skipped(tag, l, orders_of(t)));
    }
    let ha = -sandwiched_divergence(rho, &id_tau, t.alpha)?;
    let hu = cond_entropy_up(&rho.group(1)?, t.beta)?;
    let rho_bc = DensityOperator::new(partial_trace(rho.op(), l, &[1, 2])?, SystemLayout::bipartite(db, dc))?;
    let hg = -sandwiched_divergence(&rho_bc, &tensor(&Operator::identity(db), tau_c), t.gamma)?;
    let mut diag = Diagnostics::default();
    diag.add(&hu);
    Ok(build_report(
        tag,
        l,
        orders_of(t),
        ha,
        hu.value + hg,
        claim,
        vec![("h_alpha_abc", ha), ("h_up_beta", hu.value), ("h_gamma_bc", hg)],
        diag,
        default_tolerance(tag),
    ))
}

/// `H_α(ρ_ABC‖τ_C) ⋚ H↑_β(A|BC) + H_γ(ρ_BC‖τ_C)` for `α, γ ≥ 1/2`,
/// `β > 1/2`.
pub fn check_tripartite_chain(rho: &DensityOperator, tau_c: &Operator, t: &RenyiTriple) -> Result<InequalityReport> {
    check_range(chain_range(t.alpha, t.beta, t.gamma), t, "tripartite chain")?;
    tripartite_chain(TheoremTag::Chain, rho, tau_c, t, claim_of(t.direction))
}

/// The tripartite chain rule with direction from the sign of
/// `(α−1)(β−1)(γ−1)`, all orders in `(1/2, 1) ∪ (1, ∞)`.
pub fn check_dupuis_chain(rho: &DensityOperator, tau_c: &Operator, t: &RenyiTriple) -> Result<InequalityReport> {
    let inside = |x: f64| x > 0.5 && x != 1.0;
    check_range(inside(t.alpha) && inside(t.beta) && inside(t.gamma), t, "(1/2, 1) ∪ (1, ∞)")?;
    let s = triple_sign(t.alpha, t.beta, t.gamma);
    let claim = if s > 0.0 { Claim::Ge } else { Claim::Le };
    let mut r = tripartite_chain(TheoremTag::ChainDup, rho, tau_c, t, claim)?;
    r.direction = if s > 0.0 { Direction::Forward } else { Direction::Reverse };
    r.orders.direction = r.direction;
    Ok(r)
}

/// `I↓_β(A:B) ⋚ H_α(ρ_A) + H_γ(ρ_B) − H_δ(ρ_AB)` where
/// `δ′ = α′ + β′ + γ′`; `≥` when the intermediate order
/// `α̃ = solve_alpha(β, α)` satisfies `1/β + 1/α ≤ 2` and
/// `1/α̃ + 1/γ ≤ 2`, `≤` when both comparisons reverse.
pub fn check_noncond(rho: &DensityOperator, alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<InequalityReport> {
    let tag = TheoremTag::Noncond;
    bipartite(rho)?;
    let at = crate::params::solve_alpha(beta, alpha)?;
    let d1 = Direction::of(beta, alpha);
    let d2 = Direction::of(at, gamma);
    let residual = crate::params::noncond_condition(alpha, beta, gamma, delta);
    if d1 != d2
        || residual > 1e-9 * (1.0 + delta.abs())
        || alpha < 0.0
        || beta < 0.5
        || gamma < 0.0
        || at < 0.5
        || delta < 0.5
    {
        return Err(Error::InvalidInput(format!("({alpha}, {beta}, {gamma}, {delta}) outside the admissible range")));
    }
    let orders = OrderSet { alpha, beta, gamma, delta: Some(delta), mu: Some(at), direction: d1 };
    let mi = mutual_info_down(rho, beta)?;
    let ha = renyi_entropy(&rho.marginal(&[0])?, alpha)?;
    let hb = renyi_entropy(&rho.marginal(&[1])?, gamma)?;
    let hd = renyi_entropy(rho, delta)?;
    let mut diag = Diagnostics::default();
    diag.add(&mi);
    Ok(build_report(
        tag,
        rho.layout(),
        orders,
        mi.value,
        ha + hb - hd,
        claim_of(d1),
        vec![("i_down_beta", mi.value), ("h_alpha_a", ha), ("h_gamma_b", hb), ("h_delta_ab", hd)],
        diag,
        default_tolerance(tag),
    ))
}

/// Subsystem dimensions for a suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Default for Dims {
    fn default() -> Self {
        Self { a: 2, b: 2, c: 2 }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteSummary {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Smallest gap over non-skipped trials.
    pub min_gap: f64,
}

impl SuiteSummary {
    pub fn of(reports: &[InequalityReport]) -> Self {
        let mut s = Self { trials: reports.len(), min_gap: f64::INFINITY, ..Self::default() };
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::Fail => s.failed += 1,
                Verdict::Skipped => s.skipped += 1,
            }
            if r.verdict != Verdict::Skipped {
                s.min_gap = s.min_gap.min(if r.gap.is_nan() { f64::NEG_INFINITY } else { r.gap });
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub reports: Vec<InequalityReport>,
    pub summary: SuiteSummary,
}

/// Fraction of trials whose reference operator `τ` is rank-deficient.
pub const RANK_DEFICIENT_SHARE: f64 = 0.2;

/// Random `τ` on `dim`: usually full rank with a random scale, otherwise
/// rank-deficient.
pub(crate) fn sample_tau<R: Rng + ?Sized>(dim: usize, deficient: bool, rng: &mut R) -> Operator {
    if deficient && dim > 1 {
        let r = rng.gen_range(1..dim);
        random_density(dim, r, rng).into_operator().scale(rng.gen_range(0.5..2.0))
    } else {
        random_positive(dim, 0.5, 2.0, rng)
    }
}

/// Projects `ρ` into `supp(id ⊗ τ ⊗ id)` so that the reference dominates.
pub(crate) fn restrict_to_support(rho: &DensityOperator, tau: &Operator, subsystem: usize) -> Result<DensityOperator> {
    let l = rho.layout();
    let left: usize = l.dims()[..subsystem].iter().product();
    let right: usize = l.dims()[subsystem + 1..].iter().product();
    let p = herm_eig(tau)?.support()?;
    let big = tensor(&tensor(&Operator::identity(left), &p), &Operator::identity(right));
    DensityOperator::normalized(big.sandwich(rho.op()).hermitian_part(), l.clone())
}

/// Random state with a random rank, so pure and rank-deficient states
/// appear alongside full-rank ones.
pub(crate) fn sample_state<R: Rng + ?Sized>(layout: SystemLayout, rng: &mut R) -> DensityOperator {
    let d = layout.total();
    let rank = rng.gen_range(1..=d);
    random_density_on(layout, rank, rng)
}

/// Draws the orders and states for one trial of `tag` and runs the check.
/// Uncertainty tags are forwarded to [`crate::uncertainty::run_trial`].
pub fn run_trial(tag: TheoremTag, dims: Dims, master_seed: u64, trial: u64) -> Result<InequalityReport> {
    if !tag.is_divergence() {
        return crate::uncertainty::run_trial(tag, dims, master_seed, trial);
    }
    let mut rng = trial_rng(master_seed, trial);
    let orders = sample_orders(&mut rng, tag)?;
    let triple = || RenyiTriple::new(orders.alpha, orders.beta, orders.gamma);
    let bi = SystemLayout::bipartite(dims.a, dims.b);
    let tri = SystemLayout::tripartite(dims.a, dims.b, dims.c);
    let deficient = rng.gen_bool(RANK_DEFICIENT_SHARE);
    let mut report = match tag {
        TheoremTag::DivFormIntLem => {
            let rho = sample_state(bi, &mut rng);
            let sigma = random_positive(dims.a, 0.5, 2.0, &mut rng);
            let tau = sample_tau(dims.b, deficient, &mut rng);
            let rho = if deficient { restrict_to_support(&rho, &tau, 1)? } else { rho };
            check_general_bipartite(&rho, &sigma, &tau, &triple()?)?
        }
        TheoremTag::Decomp | TheoremTag::DecompDup => {
            let rho = sample_state(bi, &mut rng);
            let tau = sample_tau(dims.a, deficient, &mut rng);
            let rho = if deficient { restrict_to_support(&rho, &tau, 0)? } else { rho };
            if tag == TheoremTag::Decomp {
                check_decomposition(&rho, &tau, &triple()?)?
            } else {
                check_decomp_appendix(&rho, &tau, &triple()?)?
            }
        }
        TheoremTag::Bchain => check_bipartite_chain(&sample_state(bi, &mut rng), &triple()?)?,
        TheoremTag::BchainCor => check_bipartite_chain_appendix(&sample_state(bi, &mut rng), &triple()?)?,
        TheoremTag::Chain | TheoremTag::ChainDup => {
            let rho = sample_state(tri, &mut rng);
            let tau = sample_tau(dims.c, deficient, &mut rng);
            let rho = if deficient { restrict_to_support(&rho, &tau, 2)? } else { rho };
            if tag == TheoremTag::Chain {
                check_tripartite_chain(&rho, &tau, &triple()?)?
            } else {
                check_dupuis_chain(&rho, &tau, &triple()?)?
            }
        }
        TheoremTag::Noncond => {
            let rho = sample_state(bi, &mut rng);
            let delta = orders.delta.ok_or_else(|| Error::InvalidInput("missing δ".into()))?;
            check_noncond(&rho, orders.alpha, orders.beta, orders.gamma, delta)?
        }
        _ => return Err(Error::InvalidInput(format!("{tag} is not a divergence inequality"))),
    };
    report.trial_id = trial;
    report.trial_seed = trial_seed(master_seed, trial);
    Ok(report)
}

/// Failed trial record for a check that raised an error.
pub(crate) fn errored(tag: TheoremTag, dims: &SystemLayout, trial: u64, master_seed: u64) -> InequalityReport {
    let orders = OrderSet {
        alpha: f64::NAN,
        beta: f64::NAN,
        gamma: f64::NAN,
        delta: None,
        mu: None,
        direction: Direction::Forward,
    };
    let mut r = skipped(tag, dims, orders);
    r.verdict = Verdict::Fail;
    r.trial_id = trial;
    r.trial_seed = trial_seed(master_seed, trial);
    r
}

/// Runs `trials` seeded trials of any theorem. Trial `i` uses
/// the generator derived from `(master_seed, i)`, so results do not depend
/// on execution order. Checks that raise errors are recorded as failures.
pub fn run_suite(tag: TheoremTag, trials: usize, dims: Dims, master_seed: u64, tol: f64) -> SuiteResult {
    let layout = if tag.is_tripartite() {
        SystemLayout::tripartite(dims.a, dims.b, dims.c)
    } else {
        SystemLayout::bipartite(dims.a, dims.b)
    };
    let reports: Vec<InequalityReport> = (0..trials as u64)
        .map(|i| match run_trial(tag, dims, master_seed, i) {
            Ok(r) => r.with_tolerance(tol),
            Err(_) => errored(tag, &layout, i, master_seed),
        })
        .collect();
    let summary = SuiteSummary::of(&reports);
    SuiteResult { reports, summary }
}

/// Exploration triple: any point of the constraint surface with
/// `β ∈ [1/2, 4]`, `γ ∈ [γ_lo, 4]` and `α ∈ [1/2, 10³]`, ignoring the
/// admissible set of the theorem.
pub(crate) fn explore_triple<R: Rng + ?Sized>(rng: &mut R, gamma_lo: f64) -> Result<RenyiTriple> {
    for _ in 0..100_000 {
        let b = rng.gen_range(0.5..4.0);
        let g = rng.gen_range(gamma_lo..4.0);
        let Ok(a) = crate::params::solve_alpha(b, g) else { continue };
        if !(0.5..=1e3).contains(&a) || [a, b, g].iter().any(|x| (x - 1.0).abs() < 1e-4) {
            continue;
        }
        if let Ok(t) = RenyiTriple::new(a, b, g) {
            return Ok(t);
        }
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

/// Evaluates the inequality of `tag` at an exploration triple, outside the
/// admissible set of the theorem. The claimed direction is the one the
/// theorem would assign to the triple.
pub fn explore_trial(tag: TheoremTag, dims: Dims, master_seed: u64, trial: u64) -> Result<InequalityReport> {
    if !tag.is_divergence() {
        return crate::uncertainty::explore_trial(tag, dims, master_seed, trial);
    }
    let mut rng = trial_rng(master_seed, trial);
    let bi = SystemLayout::bipartite(dims.a, dims.b);
    let tri = SystemLayout::tripartite(dims.a, dims.b, dims.c);
    let mut report = match tag {
        TheoremTag::DivFormIntLem => {
            let t = explore_triple(&mut rng, 0.0)?;
            let rho = sample_state(bi, &mut rng);
            let sigma = random_positive(dims.a, 0.5, 2.0, &mut rng);
            let tau = random_positive(dims.b, 0.5, 2.0, &mut rng);
            general_bipartite(&rho, &sigma, &tau, &t)?
        }
        TheoremTag::Decomp | TheoremTag::DecompDup => {
            let t = explore_triple(&mut rng, 0.0)?;
            let rho = sample_state(bi, &mut rng);
            let tau = random_positive(dims.a, 0.5, 2.0, &mut rng);
            decomposition(tag, &rho, &tau, &t)?
        }
        TheoremTag::Bchain | TheoremTag::BchainCor => {
            let t = explore_triple(&mut rng, 0.0)?;
            bipartite_chain(tag, &sample_state(bi, &mut rng), &t)?
        }
        TheoremTag::Chain | TheoremTag::ChainDup => {
            let t = explore_triple(&mut rng, 0.5)?;
            let rho = sample_state(tri, &mut rng);
            let tau = random_positive(dims.c, 0.5, 2.0, &mut rng);
            tripartite_chain(tag, &rho, &tau, &t, claim_of(t.direction))?
        }
        _ => return Err(Error::InvalidInput(format!("{tag} has no exploration mode"))),
    };
    report.trial_id = trial;
    report.trial_seed = trial_seed(master_seed, trial);
    Ok(report)
}

/// Whether [`explore_trial`] supports `tag`.
pub fn explorable(tag: TheoremTag) -> bool {
    tag.is_divergence() && tag != TheoremTag::Noncond
        || matches!(tag, TheoremTag::Gbur | TheoremTag::Result2 | TheoremTag::Marcos)
}
