//! The order constraint `αβγ − 2βγ − α + β + γ = 0`, equivalently
//! `α′ = β′ + γ′`, together with conjugates, solvers, the case analysis of
//! admissible triples and the per-theorem samplers.

use crate::{Error, Result};
use rand::Rng;
use std::fmt;

/// Largest residual accepted for a triple on the constraint surface.
pub const SURFACE_TOL: f64 = 1e-10;

/// Samplers keep every order at least this far from 1.
pub const AWAY_FROM_ONE: f64 = 1e-4;

const DEGENERATE_TOL: f64 = 1e-12;

/// Extended real with signed infinities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
    NegInf,
}

impl ExtReal {
    pub fn from_f64(x: f64) -> Self {
        if x == f64::INFINITY {
            Self::PosInf
        } else if x == f64::NEG_INFINITY {
            Self::NegInf
        } else {
            Self::Finite(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Self::Finite(x) => x,
            Self::PosInf => f64::INFINITY,
            Self::NegInf => f64::NEG_INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => write!(f, "{x}"),
            Self::PosInf => write!(f, "+inf"),
            Self::NegInf => write!(f, "-inf"),
        }
    }
}

/// Side from which an order approaches a pole of its conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

/// `α′ = α/(α−1)`, with `α = 1` resolved by the side of approach.
pub fn prime_ext(alpha: f64, side: Side) -> ExtReal {
    if alpha == 1.0 {
        return match side {
            Side::Above => ExtReal::PosInf,
            Side::Below => ExtReal::NegInf,
        };
    }
    ExtReal::Finite(crate::renyi::prime(alpha))
}

/// `α̂ = α/(2α−1)`, with `α = 1/2` resolved by the side of approach.
pub fn hat_ext(alpha: f64, side: Side) -> ExtReal {
    if alpha == 0.5 {
        return match side {
            Side::Above => ExtReal::PosInf,
            Side::Below => ExtReal::NegInf,
        };
    }
    ExtReal::Finite(crate::renyi::hat(alpha))
}

/// `(α′, α̂)`; poles are approached from above.
pub fn conjugates(alpha: f64) -> (ExtReal, ExtReal) {
    (prime_ext(alpha, Side::Above), hat_ext(alpha, Side::Above))
}

/// Inverse of the Hölder conjugate: `α = α′/(α′−1)`.
pub fn from_prime(p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

/// `|αβγ − 2βγ − α + β + γ|`, with infinite arguments replaced by the
/// leading coefficient in those variables.
pub fn constraint_residual(alpha: f64, beta: f64, gamma: f64) -> f64 {
    let (ia, ib, ig) = (alpha.is_infinite(), beta.is_infinite(), gamma.is_infinite());
    let r = match (ia, ib, ig) {
        (false, false, false) => alpha * beta * gamma - 2.0 * beta * gamma - alpha + beta + gamma,
        (true, false, false) => beta * gamma - 1.0,
        (false, true, false) => gamma * (alpha - 2.0) + 1.0,
        (false, false, true) => beta * (alpha - 2.0) + 1.0,
        (true, true, false) => gamma,
        (true, false, true) => beta,
        (false, true, true) => alpha - 2.0,
        (true, true, true) => 1.0,
    };
    r.abs()
}

/// Solves the constraint for `β` given `α` and `γ`.
pub fn solve_beta(alpha: f64, gamma: f64) -> Result<f64> {
    if alpha.is_nan() || gamma.is_nan() {
        return Err(Error::Degenerate("NaN order".into()));
    }
    match (alpha.is_infinite(), gamma.is_infinite()) {
        (true, true) => return Ok(0.0),
        (true, false) => return Ok(if gamma == 0.0 { f64::INFINITY } else { 1.0 / gamma }),
        (false, true) => {
            return Ok(if alpha == 2.0 { f64::INFINITY } else { 1.0 / (2.0 - alpha) });
        }
        _ => {}
    }
    let num = alpha - gamma;
    let den = alpha * gamma - 2.0 * gamma + 1.0;
    if den.abs() <= DEGENERATE_TOL {
        if num.abs() <= DEGENERATE_TOL {
            return Err(Error::Degenerate(format!("α = {alpha}, γ = {gamma} leaves β unconstrained")));
        }
        return Ok(f64::INFINITY);
    }
    Ok(num / den)
}

/// Solves the constraint for `α` given `β` and `γ`: `α′ = β′ + γ′`.
pub fn solve_alpha(beta: f64, gamma: f64) -> Result<f64> {
    if beta.is_nan() || gamma.is_nan() {
        return Err(Error::Degenerate("NaN order".into()));
    }
    if beta == 1.0 || gamma == 1.0 {
        return Err(Error::Degenerate("an order equal to 1 leaves α unconstrained".into()));
    }
    match (beta.is_infinite(), gamma.is_infinite()) {
        (true, true) => return Ok(2.0),
        (true, false) => return Ok(if gamma == 0.5 { f64::INFINITY } else { 2.0 - 1.0 / gamma }),
        (false, true) => return Ok(if beta == 0.5 { f64::INFINITY } else { 2.0 - 1.0 / beta }),
        _ => {}
    }
    let den = beta * gamma - 1.0;
    let num = 2.0 * beta * gamma - beta - gamma;
    if den.abs() <= DEGENERATE_TOL {
        if num.abs() <= DEGENERATE_TOL {
            return Err(Error::Degenerate(format!("β = {beta}, γ = {gamma}")));
        }
        return Ok(f64::INFINITY);
    }
    Ok(num / den)
}

/// Which inequality of a forward/reverse pair applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `1/β + 1/γ ≤ 2`.
    Forward,
    /// `1/β + 1/γ ≥ 2`.
    Reverse,
}

impl Direction {
    pub fn of(beta: f64, gamma: f64) -> Self {
        if 1.0 / beta + 1.0 / gamma <= 2.0 {
            Self::Forward
        } else {
            Self::Reverse
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Self::Forward => Self::Reverse,
            Self::Reverse => Self::Forward,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Forward => "forward",
            Self::Reverse => "reverse",
        }
    }
}

/// Cases 1–6 of the case analysis of admissible triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
    Unclassified,
}

/// A point on the constraint surface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenyiTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub residual: f64,
    pub direction: Direction,
    pub case: CaseId,
}

impl RenyiTriple {
    /// Validates that the triple lies on the surface.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let residual = constraint_residual(alpha, beta, gamma);
        let scale =
            1.0 + [alpha, beta, gamma].iter().filter(|x| x.is_finite()).map(|x| x.abs()).fold(0.0, f64::max).powi(2);
        if !(residual <= SURFACE_TOL * scale) {
            return Err(Error::Degenerate(format!(
                "({alpha}, {beta}, {gamma}) is off the constraint surface (residual {residual:e})"
            )));
        }
        Ok(Self::unchecked(alpha, beta, gamma))
    }

    /// Builds the triple with `α` solved from `β` and `γ`.
    pub fn from_beta_gamma(beta: f64, gamma: f64) -> Result<Self> {
        Self::new(solve_alpha(beta, gamma)?, beta, gamma)
    }

    /// Builds the triple with `β` solved from `α` and `γ`.
    pub fn from_alpha_gamma(alpha: f64, gamma: f64) -> Result<Self> {
        Self::new(alpha, solve_beta(alpha, gamma)?, gamma)
    }

    fn unchecked(alpha: f64, beta: f64, gamma: f64) -> Self {
        let residual = constraint_residual(alpha, beta, gamma);
        Self {
            alpha,
            beta,
            gamma,
            residual,
            direction: Direction::of(beta, gamma),
            case: classify_case(alpha, beta, gamma),
        }
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }
}

/// Case plus admissibility for the individual theorems.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub case: CaseId,
    pub direction: Direction,
    /// `α, β ≥ 1/2`, `γ ≥ 0`.
    pub decomp: bool,
    /// `α, γ ≥ 1/2`, `β > 1/2`.
    pub chain: bool,
    /// `α ≥ 0`, `β > 1/2`, `γ ≥ 1/2`.
    pub decomp_dup: bool,
}

pub fn classify(t: &RenyiTriple) -> Classification {
    let (a, b, g) = (t.alpha, t.beta, t.gamma);
    Classification {
        case: if t.residual <= SURFACE_TOL * (1.0 + a.abs().max(b.abs()).max(g.abs()).powi(2)) {
            classify_case(a, b, g)
        } else {
            CaseId::Unclassified
        },
        direction: t.direction,
        decomp: decomp_range(a, b, g),
        chain: chain_range(a, b, g),
        decomp_dup: decomp_dup_range(a, b, g),
    }
}

pub fn decomp_range(a: f64, b: f64, g: f64) -> bool {
    a >= 0.5 && b >= 0.5 && g >= 0.0
}

pub fn chain_range(a: f64, b: f64, g: f64) -> bool {
    a >= 0.5 && g >= 0.5 && b > 0.5
}

pub fn decomp_dup_range(a: f64, b: f64, g: f64) -> bool {
    a >= 0.0 && b > 0.5 && g >= 0.5
}

/// Sign and ordering tests of the case analysis, applied with `β ≥ γ`.
fn classify_case(alpha: f64, beta: f64, gamma: f64) -> CaseId {
    let (a, b, g) = (alpha, beta.max(gamma), beta.min(gamma));
    if a < 0.5 || b < 0.5 {
        return CaseId::Unclassified;
    }
    if a > 1.0 && b > 1.0 && g > 1.0 && a < g && g <= b {
        CaseId::Case1
    } else if a < 1.0 && b < 1.0 && g < 1.0 && g <= b && b < a {
        CaseId::Case2
    } else if a > 1.0 && b > 1.0 && g <= 0.0 && g < a && a <= b {
        CaseId::Case3
    } else if a < 1.0 && g < 1.0 && b > 1.0 && a < g && g < b {
        CaseId::Case4
    } else if a > 1.0 && b > 1.0 && g < 1.0 && g < b && b < a {
        CaseId::Case5
    } else if a < 1.0 && b < 1.0 && g <= 0.0 && g < a && a <= b {
        CaseId::Case6
    } else {
        CaseId::Unclassified
    }
}

/// `|(δ−γ)/(δγ−2γ+1) − (2βα−β−α)/(βα−1)|`, i.e. `|δ′ − (α′ + β′ + γ′)|` in
/// rational form.
pub fn noncond_condition(alpha: f64, beta: f64, gamma: f64, delta: f64) -> f64 {
    match (solve_beta(delta, gamma), solve_alpha(beta, alpha)) {
        (Ok(l), Ok(r)) if l.is_finite() && r.is_finite() => (l - r).abs(),
        (Ok(l), Ok(r)) if l == r => 0.0,
        _ => f64::INFINITY,
    }
}

/// `μ = (α−γ)/(αγ−2γ+1)` and whether
/// `(β−δ)/(βδ−2δ+1) = μ ≥ 1/2` with `1/δ ≤ 2 − 1/μ ≤ 1/γ`.
pub fn sdg_condition(alpha: f64, beta: f64, gamma: f64, delta: f64) -> (f64, bool) {
    let Ok(mu) = solve_beta(alpha, gamma) else { return (f64::NAN, false) };
    let Ok(mu2) = solve_beta(beta, delta) else { return (mu, false) };
    let same = (mu - mu2).abs() <= 1e-9 * (1.0 + mu.abs());
    let ok = same
        && mu >= 0.5
        && alpha >= 0.5
        && gamma >= 0.5
        && beta > 0.5
        && 1.0 / delta <= 2.0 - 1.0 / mu + 1e-12
        && 2.0 - 1.0 / mu <= 1.0 / gamma + 1e-12;
    (mu, ok)
}

/// Second constraint set: `μ̃ = (α−β)/(αβ−2β+1) = (γ−δ)/(γδ−2δ+1) ≥ 1/2`
/// with `1/δ ≤ 2 − 1/μ̃ ≤ 1/β` and `γ > 1/2`.
pub fn sdg_condition_joint(alpha: f64, beta: f64, gamma: f64, delta: f64) -> (f64, bool) {
    let Ok(mu) = solve_beta(alpha, beta) else { return (f64::NAN, false) };
    let Ok(mu2) = solve_beta(gamma, delta) else { return (mu, false) };
    let same = (mu - mu2).abs() <= 1e-9 * (1.0 + mu.abs());
    let ok = same
        && mu >= 0.5
        && alpha >= 0.5
        && gamma > 0.5
        && beta > 0.5
        && 1.0 / delta <= 2.0 - 1.0 / mu + 1e-12
        && 2.0 - 1.0 / mu <= 1.0 / beta + 1e-12;
    (mu, ok)
}

/// `(α−γ)/(αγ−2γ+1) = 1/(2−β)` with `βγ ≤ 1`, `β ∈ [1/2, 2]`, `α, γ ≥ 1/2`.
pub fn ier_condition(alpha: f64, beta: f64, gamma: f64) -> bool {
    if !(alpha >= 0.5 && gamma >= 0.5 && (0.5..=2.0).contains(&beta) && beta * gamma <= 1.0 + 1e-12) {
        return false;
    }
    let target = 1.0 / (2.0 - beta);
    match solve_beta(alpha, gamma) {
        Ok(mu) if mu.is_finite() && target.is_finite() => (mu - target).abs() <= 1e-9 * (1.0 + target.abs()),
        Ok(mu) => mu == target,
        Err(_) => false,
    }
}

/// Symmetric variant: `(2α−αγ−1)/(α−γ) = 1/(2−β)`,
/// `(2α−αβ−1)/(α−β) = 1/(2−γ)` and `γ ≤ 2 − β`.
pub fn ier_sym_condition(alpha: f64, beta: f64, gamma: f64) -> bool {
    if !(alpha >= 0.5 && gamma >= 0.5 && beta >= 0.5 && gamma <= 2.0 - beta + 1e-12) {
        return false;
    }
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * (1.0 + y.abs());
    let l1 = (2.0 * alpha - alpha * gamma - 1.0) / (alpha - gamma);
    let l2 = (2.0 * alpha - alpha * beta - 1.0) / (alpha - beta);
    close(l1, 1.0 / (2.0 - beta)) && close(l2, 1.0 / (2.0 - gamma))
}

/// `(α−1)(β−1)(γ−1)` sign test shared by the reference chain rules.
pub fn triple_sign(alpha: f64, beta: f64, gamma: f64) -> f64 {
    (alpha - 1.0) * (beta - 1.0) * (gamma - 1.0)
}

/// Theorems exercised by the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremTag {
    DivFormIntLem,
    Decomp,
    Bchain,
    BchainCor,
    Chain,
    ChainDup,
    Noncond,
    DecompDup,
    Rmu,
    Gbur,
    Sdgbur,
    Sigbur,
    Marcos,
    Result2,
    Res2c,
    Ier,
    IerSym,
    IierOpt,
    ConstComp,
    HallClassical,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 20] = [
        Self::DivFormIntLem,
        Self::Decomp,
        Self::Bchain,
        Self::BchainCor,
        Self::Chain,
        Self::ChainDup,
        Self::Noncond,
        Self::DecompDup,
        Self::Rmu,
        Self::Gbur,
        Self::Sdgbur,
        Self::Sigbur,
        Self::Marcos,
        Self::Result2,
        Self::Res2c,
        Self::Ier,
        Self::IerSym,
        Self::IierOpt,
        Self::ConstComp,
        Self::HallClassical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::DivFormIntLem => "div-form",
            Self::Decomp => "decomp",
            Self::Bchain => "bchain",
            Self::BchainCor => "bchain-cor",
            Self::Chain => "chain",
            Self::ChainDup => "chain-dup",
            Self::Noncond => "noncond",
            Self::DecompDup => "decomp-dup",
            Self::Rmu => "rmu",
            Self::Gbur => "gbur",
            Self::Sdgbur => "sdgbur",
            Self::Sigbur => "sigbur",
            Self::Marcos => "marcos",
            Self::Result2 => "result2",
            Self::Res2c => "res2c",
            Self::Ier => "ier",
            Self::IerSym => "ier-sym",
            Self::IierOpt => "iier-opt",
            Self::ConstComp => "const-comp",
            Self::HallClassical => "hall",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|t| t.name() == s)
    }

    /// Divergence-inequality suites (as opposed to uncertainty suites).
    pub fn is_divergence(self) -> bool {
        matches!(
            self,
            Self::DivFormIntLem
                | Self::Decomp
                | Self::Bchain
                | Self::BchainCor
                | Self::Chain
                | Self::ChainDup
                | Self::Noncond
                | Self::DecompDup
        )
    }

    pub fn is_tripartite(self) -> bool {
        matches!(self, Self::Chain | Self::ChainDup)
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Orders drawn for one trial. `delta` and `mu` are present where the
/// theorem uses them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderSet {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: Option<f64>,
    pub mu: Option<f64>,
    pub direction: Direction,
}

impl OrderSet {
    fn triple(t: &RenyiTriple) -> Self {
        Self { alpha: t.alpha, beta: t.beta, gamma: t.gamma, delta: None, mu: None, direction: t.direction }
    }
}

fn away_from_one(xs: &[f64]) -> bool {
    xs.iter().all(|x| x.is_finite() && (x - 1.0).abs() > AWAY_FROM_ONE)
}

/// Uniform draw from `[lo, 1)` or `(1, hi]`, each side with probability 1/2.
fn draw_split<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo < 1.0 && (hi <= 1.0 || rng.gen_bool(0.5)) {
        rng.gen_range(lo..1.0)
    } else {
        rng.gen_range(1.0..hi)
    }
}

const ORDER_MAX: f64 = 4.0;
const ALPHA_MAX: f64 = 1e3;
const MAX_DRAWS: usize = 100_000;

fn sample_surface<R: Rng + ?Sized>(
    rng: &mut R,
    beta_lo: f64,
    gamma_lo: f64,
    alpha_ok: impl Fn(f64) -> bool,
    extra: impl Fn(f64, f64, f64) -> bool,
) -> Result<RenyiTriple> {
    let want = if rng.gen_bool(0.5) { Direction::Forward } else { Direction::Reverse };
    for _ in 0..MAX_DRAWS {
        let b = draw_split(rng, beta_lo, ORDER_MAX);
        let g = draw_split(rng, gamma_lo, ORDER_MAX);
        if Direction::of(b, g) != want {
            continue;
        }
        let Ok(a) = solve_alpha(b, g) else { continue };
        if !(a.abs() <= ALPHA_MAX) || !alpha_ok(a) || !away_from_one(&[a, b, g]) || !extra(a, b, g) {
            continue;
        }
        if let Ok(t) = RenyiTriple::new(a, b, g) {
            return Ok(t);
        }
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

/// Draws a triple admissible for `tag`, with both directions equally likely
/// where the theorem has two.
pub fn sample_triple<R: Rng + ?Sized>(rng: &mut R, tag: TheoremTag) -> Result<RenyiTriple> {
    const STRICT: f64 = 0.5 + 1e-9;
    match tag {
        TheoremTag::DivFormIntLem => sample_surface(rng, 0.5, -3.0, |a| a >= 0.5, |_, _, _| true),
        TheoremTag::Decomp | TheoremTag::Bchain => sample_surface(rng, 0.5, 0.0, |a| a >= 0.5, |_, _, _| true),
        TheoremTag::Chain => sample_surface(rng, STRICT, 0.5, |a| a >= 0.5, |_, _, _| true),
        TheoremTag::DecompDup | TheoremTag::BchainCor => sample_surface(rng, STRICT, 0.5, |a| a >= 0.0, |_, _, _| true),
        TheoremTag::ChainDup => sample_surface(rng, STRICT, STRICT, |a| a > 0.5, |a, b, g| triple_sign(a, b, g) != 0.0),
        TheoremTag::Marcos => {
            // (α−1)(β−1)(γ−1) < 0 fixes the direction, so none is preselected
            for _ in 0..MAX_DRAWS {
                let b = draw_split(rng, STRICT, ORDER_MAX);
                let g = draw_split(rng, STRICT, ORDER_MAX);
                let Ok(a) = solve_alpha(b, g) else { continue };
                if !(a > 0.5 && a <= ALPHA_MAX) || !away_from_one(&[a, b, g]) || triple_sign(a, b, g) >= 0.0 {
                    continue;
                }
                if let Ok(t) = RenyiTriple::new(a, b, g) {
                    return Ok(t);
                }
            }
            Err(Error::Degenerate("sampler exhausted its draw budget".into()))
        }
        TheoremTag::Gbur | TheoremTag::Result2 => {
            for _ in 0..MAX_DRAWS {
                let t = sample_surface(rng, STRICT, 0.5, |a| a >= 0.5, |_, _, _| true)?;
                if t.direction == Direction::Reverse {
                    return Ok(t);
                }
            }
            Err(Error::Degenerate("sampler exhausted its draw budget".into()))
        }
        _ => Err(Error::InvalidInput(format!("{tag} does not use a plain triple"))),
    }
}

/// Draws the full order set used by `tag`.
pub fn sample_orders<R: Rng + ?Sized>(rng: &mut R, tag: TheoremTag) -> Result<OrderSet> {
    match tag {
        TheoremTag::Noncond => sample_noncond(rng),
        TheoremTag::Sdgbur => {
            if rng.gen_bool(0.5) {
                sample_sdgbur(rng)
            } else {
                sample_joint(rng)
            }
        }
        TheoremTag::Sigbur => sample_joint(rng),
        TheoremTag::Ier => sample_ier(rng),
        TheoremTag::IerSym => sample_ier_sym(rng),
        TheoremTag::Rmu => {
            let a = draw_split(rng, 0.5, ORDER_MAX);
            let h = crate::renyi::hat(a);
            Ok(OrderSet { alpha: a, beta: h, gamma: h, delta: None, mu: None, direction: Direction::Forward })
        }
        TheoremTag::Res2c => {
            let a = draw_split(rng, 0.5 + 1e-6, 2.0);
            let t = 1.0 / a;
            Ok(OrderSet { alpha: a, beta: a, gamma: t, delta: None, mu: None, direction: Direction::Reverse })
        }
        TheoremTag::IierOpt => {
            let a = draw_split(rng, 0.5, 1.5);
            Ok(OrderSet { alpha: a, beta: a, gamma: 2.0 - a, delta: None, mu: None, direction: Direction::Reverse })
        }
        TheoremTag::ConstComp => sample_const_comp(rng),
        TheoremTag::HallClassical => {
            Ok(OrderSet { alpha: 1.0, beta: 1.0, gamma: 1.0, delta: None, mu: None, direction: Direction::Reverse })
        }
        _ => sample_triple(rng, tag).map(|t| OrderSet::triple(&t)),
    }
}

/// `α̃ = solve_alpha(β, α)` and `δ = solve_alpha(α̃, γ)`, with the two
/// intermediate comparisons pointing the same way.
fn sample_noncond<R: Rng + ?Sized>(rng: &mut R) -> Result<OrderSet> {
    for _ in 0..MAX_DRAWS {
        let a = draw_split(rng, 0.0, ORDER_MAX);
        let b = draw_split(rng, 0.5, ORDER_MAX);
        let g = draw_split(rng, 0.0, ORDER_MAX);
        let (Ok(at), true) = (solve_alpha(b, a), true) else { continue };
        let Ok(d) = solve_alpha(at, g) else { continue };
        if !away_from_one(&[a, b, g, at, d]) || at < 0.5 || d < 0.5 || d > ALPHA_MAX || at > ALPHA_MAX {
            continue;
        }
        let dir = Direction::of(b, a);
        if dir != Direction::of(at, g) {
            continue;
        }
        return Ok(OrderSet { alpha: a, beta: b, gamma: g, delta: Some(d), mu: Some(at), direction: dir });
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

/// Fixes `μ` first, then `γ` with `1/μ + 1/γ ≥ 2` and `δ` with
/// `1/μ + 1/δ ≤ 2`.
fn sample_sdgbur<R: Rng + ?Sized>(rng: &mut R) -> Result<OrderSet> {
    for _ in 0..MAX_DRAWS {
        let mu = draw_split(rng, 0.5, ORDER_MAX);
        let g = draw_split(rng, 0.5, ORDER_MAX);
        if 1.0 / mu + 1.0 / g < 2.0 {
            continue;
        }
        let Ok(a) = solve_alpha(mu, g) else { continue };
        let d: f64 = rng.gen_range(-3.0..5.0);
        if d.abs() < AWAY_FROM_ONE || 1.0 / mu + 1.0 / d > 2.0 {
            continue;
        }
        let Ok(b) = solve_alpha(mu, d) else { continue };
        if !(a >= 0.5 && b > 0.5 && a <= ALPHA_MAX && b <= ALPHA_MAX) || !away_from_one(&[a, b, g, mu, d]) {
            continue;
        }
        if !sdg_condition(a, b, g, d).1 {
            continue;
        }
        return Ok(OrderSet {
            alpha: a,
            beta: b,
            gamma: g,
            delta: Some(d),
            mu: Some(mu),
            direction: Direction::Reverse,
        });
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

/// Orders for the joint-measurement bound: `α = solve_alpha(μ̃, β)` and
/// `γ = solve_alpha(μ̃, δ)`.
fn sample_joint<R: Rng + ?Sized>(rng: &mut R) -> Result<OrderSet> {
    for _ in 0..MAX_DRAWS {
        let mu = draw_split(rng, 0.5, ORDER_MAX);
        let b = draw_split(rng, 0.5 + 1e-9, ORDER_MAX);
        if 1.0 / mu + 1.0 / b < 2.0 {
            continue;
        }
        let Ok(a) = solve_alpha(mu, b) else { continue };
        let d: f64 = rng.gen_range(-3.0..5.0);
        if d.abs() < AWAY_FROM_ONE || 1.0 / mu + 1.0 / d > 2.0 {
            continue;
        }
        let Ok(g) = solve_alpha(mu, d) else { continue };
        if !(a >= 0.5 && g > 0.5 && a <= ALPHA_MAX && g <= ALPHA_MAX) || !away_from_one(&[a, b, g, mu, d]) {
            continue;
        }
        if !sdg_condition_joint(a, b, g, d).1 {
            continue;
        }
        return Ok(OrderSet {
            alpha: a,
            beta: b,
            gamma: g,
            delta: Some(d),
            mu: Some(mu),
            direction: Direction::Reverse,
        });
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

/// `β ∈ [1/2, 2]`, `μ = 1/(2−β)`, `γ` with `βγ ≤ 1`, `α = solve_alpha(μ, γ)`.
fn sample_ier<R: Rng + ?Sized>(rng: &mut R) -> Result<OrderSet> {
    for _ in 0..MAX_DRAWS {
        let b = draw_split(rng, 0.5, 2.0);
        let g = draw_split(rng, 0.5, 2.0);
        if b * g > 1.0 {
            continue;
        }
        let mu = 1.0 / (2.0 - b);
        let Ok(a) = solve_alpha(mu, g) else { continue };
        if !(a >= 0.5 && a <= ALPHA_MAX) || !away_from_one(&[a, b, g, mu]) || !ier_condition(a, b, g) {
            continue;
        }
        return Ok(OrderSet { alpha: a, beta: b, gamma: g, delta: None, mu: Some(mu), direction: Direction::Reverse });
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

/// `α′ = 1/(β−1) + 1/(γ−1)` with `γ ≤ 2 − β`.
fn sample_ier_sym<R: Rng + ?Sized>(rng: &mut R) -> Result<OrderSet> {
    for _ in 0..MAX_DRAWS {
        let b = draw_split(rng, 0.5, 2.0);
        let g = draw_split(rng, 0.5, 2.0);
        if g > 2.0 - b {
            continue;
        }
        let a = from_prime(1.0 / (b - 1.0) + 1.0 / (g - 1.0));
        if !(a >= 0.5 && a <= ALPHA_MAX) || !away_from_one(&[a, b, g]) || !ier_sym_condition(a, b, g) {
            continue;
        }
        return Ok(OrderSet { alpha: a, beta: b, gamma: g, delta: None, mu: None, direction: Direction::Reverse });
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

/// `α ≥ 1/2` and `δ < α` with `(α−δ)/(αδ−2δ+1) ≥ 1/2` and
/// `(α−1)(δ−1)/(α−δ) + 1/δ ≥ 1`.
fn sample_const_comp<R: Rng + ?Sized>(rng: &mut R) -> Result<OrderSet> {
    for _ in 0..MAX_DRAWS {
        let a = draw_split(rng, 0.5, ORDER_MAX);
        let d: f64 = rng.gen_range(-3.0..a);
        if d.abs() < AWAY_FROM_ONE || !away_from_one(&[a, d]) || !const_comp_condition(a, d) {
            continue;
        }
        return Ok(OrderSet { alpha: a, beta: a, gamma: a, delta: Some(d), mu: None, direction: Direction::Reverse });
    }
    Err(Error::Degenerate("sampler exhausted its draw budget".into()))
}

pub fn const_comp_condition(alpha: f64, delta: f64) -> bool {
    if !(alpha >= 0.5 && delta < alpha) {
        return false;
    }
    let Ok(m) = solve_beta(alpha, delta) else { return false };
    m >= 0.5 && (alpha - 1.0) * (delta - 1.0) / (alpha - delta) + 1.0 / delta >= 1.0
}
