//! Acceptance criteria 1–11, one PASS/FAIL line each.

use rand::Rng;
use renyi_lab::inequalities::{check_bipartite_chain, check_decomposition, run_suite, Dims, SuiteSummary};
use renyi_lab::interp::{log_convexity_check, three_part_reduction_check, two_part_norm, Affine, LogConvexityInstance};
use renyi_lab::linalg::{frac_power, partial_trace, schatten_norm};
use renyi_lab::params::{constraint_residual, solve_beta, RenyiTriple, TheoremTag};
use renyi_lab::renyi::{cond_entropy_up, gen_mutual_info, hat, sandwiched_divergence, von_neumann_entropy};
use renyi_lab::report::{limit_residuals, write_csv, LIMIT_TOL};
use renyi_lab::states::{
    measure, random_density, random_density_on, random_onb, random_positive, random_pure_state, random_unitary,
    trial_rng, DensityOperator,
};
use renyi_lab::uncertainty::{
    check_rmu, hall_bound, q_delta_max, q_delta_state_independent, q_mu, r_cp, r_g, sample_pair, MeasurementPair,
};
use renyi_lab::{Operator, SystemLayout, C64};
use std::time::{Duration, Instant};

const SEED: u64 = 20_240_601;
const INF: f64 = f64::INFINITY;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn c1_parameter_table() -> Outcome {
    let gammas = [0.0, 0.5, 1.0, 2.0, INF];
    let alphas = [0.0, 0.5, 1.0, 2.0, INF];
    // Rows γ, columns α; NaN marks the cell where β is unconstrained.
    let table = [
        [0.0, 0.5, 1.0, 2.0, INF],
        [INF, 0.0, 1.0, 1.5, 2.0],
        [1.0, 1.0, f64::NAN, 1.0, 1.0],
        [2.0 / 3.0, 0.75, 1.0, 0.0, 0.5],
        [0.5, 2.0 / 3.0, 1.0, INF, 0.0],
    ];
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (i, &g) in gammas.iter().enumerate() {
        for (j, &a) in alphas.iter().enumerate() {
            let want = table[i][j];
            if want.is_nan() {
                let free = (0..5).all(|k| constraint_residual(a, k as f64 * 0.7 - 1.0, g) <= 1e-12);
                if solve_beta(a, g).is_ok() || !free {
                    bad.push(format!("(α={a}, γ={g})"));
                }
                continue;
            }
            match solve_beta(a, g) {
                Ok(b) => {
                    let r = constraint_residual(a, b, g);
                    worst = worst.max(r);
                    let same = if want.is_infinite() { b == want } else { (b - want).abs() <= 1e-12 };
                    if !same || r > 1e-12 {
                        bad.push(format!("(α={a}, γ={g}) → β={b}, residual {r:e}"));
                    }
                }
                Err(e) => bad.push(format!("(α={a}, γ={g}): {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("25 cells, max residual {worst:.1e} {}", bad.join("; ")))
}

fn c2_equality_collapse() -> Outcome {
    let t = RenyiTriple::new(1.0, 1.0, 1.0).expect("on surface");
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let mut rng = trial_rng(SEED, i);
        let rank = rng.gen_range(1..=4);
        let rho = random_density_on(SystemLayout::bipartite(2, 2), rank, &mut rng);
        let rho_a = rho.marginal(&[0]).unwrap();
        let rho_b = rho.marginal(&[1]).unwrap();
        let (ha, hb, hab) = (
            von_neumann_entropy(&rho_a).unwrap(),
            von_neumann_entropy(&rho_b).unwrap(),
            von_neumann_entropy(&rho).unwrap(),
        );
        let dec = check_decomposition(&rho, rho_a.op(), &t).unwrap();
        // I(A:B) = H(B) − H(B|A) with H(B|A) = H(AB) − H(A).
        for (got, want) in [
            (dec.gap, 0.0),
            (dec.term("i_beta").unwrap(), ha + hb - hab),
            (dec.term("h_alpha_cond").unwrap(), hab - ha),
        ] {
            worst = worst.max((got - want).abs());
        }
        let ch = check_bipartite_chain(&rho, &t).unwrap();
        // H(AB) = H(A|B) + H(B).
        for (got, want) in [(ch.gap, 0.0), (ch.term("h_up_beta").unwrap(), hab - hb)] {
            worst = worst.max((got - want).abs());
        }
    }
    outcome(worst <= 1e-6, format!("100 states, max deviation {worst:.2e}"))
}

fn suite_line(tag: TheoremTag, s: &SuiteSummary) -> String {
    format!("{} {}/{} (skipped {}, min gap {:.1e})", tag.name(), s.passed, s.trials, s.skipped, s.min_gap)
}

fn suites(tags: &[TheoremTag], trials: usize) -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for &tag in tags {
        let r = run_suite(tag, trials, Dims::default(), SEED, 1e-5);
        ok &= r.summary.failed == 0 && r.summary.trials == trials;
        lines.push(suite_line(tag, &r.summary));
    }
    outcome(ok, lines.join(", "))
}

fn c3_divergence_suites() -> Outcome {
    use TheoremTag::*;
    suites(&[DivFormIntLem, Decomp, Bchain, BchainCor, Chain, ChainDup, Noncond, DecompDup], 1000)
}

fn c4_duality() -> Outcome {
    let orders = [0.6, 0.75, 1.0, 1.5, 2.0, 3.0];
    let (mut cond, mut mi): (f64, f64) = (0.0, 0.0);
    for i in 0..200 {
        let mut rng = trial_rng(SEED ^ 4, i);
        let psi = random_pure_state(SystemLayout::tripartite(2, 2, 2), &mut rng);
        let ab = psi.marginal(&[0, 1]).unwrap();
        let ac = psi.marginal(&[0, 2]).unwrap();
        let a = orders[i as usize % orders.len()];
        let up_ab = cond_entropy_up(&ab, a).unwrap().value;
        let up_ac = cond_entropy_up(&ac, hat(a)).unwrap().value;
        cond = cond.max((up_ab + up_ac).abs());
        let tau = random_positive(2, 0.3, 2.0, &mut rng);
        let tau_inv = frac_power(&tau, -1.0).unwrap();
        let i_ab = gen_mutual_info(&ab, &tau, a).unwrap().value;
        let i_ac = gen_mutual_info(&ac, &tau_inv, hat(a)).unwrap().value;
        mi = mi.max((i_ab + i_ac).abs());
    }
    outcome(cond <= 2e-5 && mi <= 2e-5, format!("200 states, conditional {cond:.2e}, mutual information {mi:.2e}"))
}

fn c5_dpi_monotonicity() -> Outcome {
    let alphas = [0.5, 0.7, 1.0, 2.0, 5.0, INF];
    let (mut dpi, mut mono) = (0usize, 0usize);
    let mut worst = f64::INFINITY;
    for i in 0..1000 {
        let mut rng = trial_rng(SEED ^ 5, i);
        let layout = SystemLayout::bipartite(2, 2);
        let rho = random_density_on(layout.clone(), rng.gen_range(1..=4), &mut rng);
        let sigma = random_density_on(layout.clone(), 4, &mut rng);
        let basis = random_onb(2, &mut rng);
        let pr = measure(&rho, &basis, 0).unwrap();
        let ps = measure(&sigma, &basis, 0).unwrap();
        let tr = rho.marginal(&[0]).unwrap();
        let ts = sigma.marginal(&[0]).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for &a in &alphas {
            let d = sandwiched_divergence(&rho, sigma.op(), a).unwrap();
            for processed in [sandwiched_divergence(&pr, ps.op(), a), sandwiched_divergence(&tr, ts.op(), a)] {
                let g = d - processed.unwrap();
                worst = worst.min(g);
                if g < -1e-9 {
                    dpi += 1;
                }
            }
            if d < prev - 1e-9 {
                mono += 1;
            }
            prev = d;
        }
    }
    outcome(
        dpi == 0 && mono == 0,
        format!("1000 trials, DPI violations {dpi}, monotonicity violations {mono}, min DPI gap {worst:.1e}"),
    )
}

fn c6_limits() -> Outcome {
    let r = limit_residuals(100, SEED).unwrap();
    let ok = r.entropy_to_one <= LIMIT_TOL && r.q_delta_to_one <= LIMIT_TOL && r.q_delta_to_zero <= LIMIT_TOL;
    outcome(
        ok,
        format!(
            "100 qubits, entropy {:.1e}, q_δ→1 {:.1e}, q_δ→0 {:.1e} (divergence {:.1e})",
            r.entropy_to_one, r.q_delta_to_one, r.q_delta_to_zero, r.divergence_to_one
        ),
    )
}

fn c7_tightness() -> Outcome {
    let pair = MeasurementPair::mub(2);
    let zero = DensityOperator::pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], SystemLayout::single(2)).unwrap();
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0] {
        let r = check_rmu(&zero, &pair, a).unwrap();
        worst = worst.max((r.lhs - 1.0).abs()).max((r.rhs - 1.0).abs());
    }
    let qm = q_mu(&pair).value;
    let rh = hall_bound(&pair).value;
    let ok = worst <= 1e-6 && (qm - 1.0).abs() <= 1e-12 && (rh - 1.0).abs() <= 1e-12;
    outcome(ok, format!("RMU deviation {worst:.1e}, q_MU {qm}, r_H {rh}"))
}

fn c8_exclusion_suites() -> Outcome {
    use TheoremTag::*;
    let s = suites(&[Result2, Ier, IerSym, Gbur, Sdgbur, Sigbur, Res2c, IierOpt], 500);
    let mut ladder = 0;
    let mut pairs = 0;
    for d in 2..=4 {
        for i in 0..2000 {
            let mut rng = trial_rng(SEED ^ 8, (d * 10_000 + i) as u64);
            let p = sample_pair(d, &mut rng);
            let (cp, g, h) = (r_cp(&p).value, r_g(&p).value, hall_bound(&p).value);
            pairs += 1;
            if cp > g + 1e-9 || g > h + 1e-9 {
                ladder += 1;
            }
        }
    }
    outcome(s.ok && ladder == 0, format!("{}; ladder violations {ladder}/{pairs}", s.detail))
}

fn c9_minimax() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut rng = trial_rng(SEED ^ 9, 0);
    let mut pairs = vec![MeasurementPair::mub(2)];
    for _ in 0..3 {
        pairs.push(MeasurementPair::random(2, &mut rng));
    }
    for pair in &pairs {
        let states: Vec<DensityOperator> = (0..10_000)
            .map(|k| {
                if k % 2 == 0 {
                    random_pure_state(SystemLayout::single(2), &mut rng)
                } else {
                    random_density(2, 2, &mut rng)
                }
            })
            .collect();
        for delta in [0.5, 0.9, 1.1, 2.0] {
            let si = q_delta_state_independent(pair, delta).unwrap().value;
            let brute = states.iter().map(|s| q_delta_max(s, pair, delta).unwrap().value).fold(f64::INFINITY, f64::min);
            worst = worst.max((si - brute).abs());
        }
    }
    outcome(worst <= 2e-3, format!("4 pairs × 4 orders × 10⁴ states, max |q_SI − min| {worst:.1e}"))
}

fn random_commuting(d: usize, u: &Operator, rng: &mut impl Rng) -> Operator {
    let vals: Vec<f64> = (0..d).map(|_| rng.gen_range(0.2..3.0)).collect();
    u.matmul(&Operator::diag(&vals)).matmul(&u.adjoint())
}

fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Operator {
    Operator::from_fn(rows, cols, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn c10_interpolation() -> Outcome {
    let mut rng = trial_rng(SEED ^ 10, 0);
    let ab = SystemLayout::bipartite(2, 2);
    let abc = SystemLayout::tripartite(2, 2, 2);
    let ps = [1.0, 1.5, 2.0, 3.0, INF];
    let mut p1: f64 = 0.0;
    for i in 0..50 {
        let x = random_density(4, 4, &mut rng).into_operator().scale(rng.gen_range(0.5..2.0));
        let p = ps[i % ps.len()];
        let lhs = two_part_norm(&x, &ab, p, 1.0, &mut rng).unwrap();
        let rhs = schatten_norm(&partial_trace(&x, &ab, &[0]).unwrap(), p).unwrap();
        p1 = p1.max((lhs - rhs).abs());
    }
    let mut pq: f64 = 0.0;
    for _ in 0..50 {
        let x = random_density(8, 8, &mut rng).into_operator();
        let p = rng.gen_range(1.0..4.0);
        let q = rng.gen_range(1.0..4.0);
        pq = pq.max(three_part_reduction_check(&x, &abc, p, q, &mut rng).unwrap());
    }
    let mut lc = f64::INFINITY;
    for _ in 0..500 {
        let (da, db) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
        let ub = random_unitary(db, &mut rng);
        let ua = random_unitary(da, &mut rng);
        let inst = LogConvexityInstance {
            y: random_matrix(db, da, &mut rng),
            sigma1: random_commuting(db, &ub, &mut rng),
            tau1: random_commuting(db, &ub, &mut rng),
            sigma2: random_commuting(da, &ua, &mut rng),
            tau2: random_commuting(da, &ua, &mut rng),
            f: Affine { slope: rng.gen_range(-2.0..2.0), offset: rng.gen_range(-1.0..1.0) },
            q0: rng.gen_range(1.0..5.0),
            q1: rng.gen_range(1.0..5.0),
            theta: rng.gen_range(0.0..1.0),
        };
        lc = lc.min(log_convexity_check(&inst).unwrap());
    }
    let ok = p1 <= 1e-4 && pq <= 1e-4 && lc >= -1e-9;
    outcome(ok, format!("p1eqp {p1:.1e}, pq1eqpq {pq:.1e} (50 each), log-convexity min gap {lc:.1e} (500)"))
}

fn c11_determinism() -> Outcome {
    let mut differing = Vec::new();
    for &tag in TheoremTag::ALL.iter() {
        let csv = || {
            let r = run_suite(tag, 5, Dims::default(), SEED, 1e-5);
            let mut buf = Vec::new();
            write_csv(&r.reports, &mut buf).unwrap();
            buf
        };
        if csv() != csv() {
            differing.push(tag.name());
        }
    }
    outcome(differing.is_empty(), format!("20 suites × 5 trials rerun; differing: {differing:?}"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("parameter table", 1, c1_parameter_table),
        ("equality collapse", 10, c2_equality_collapse),
        ("divergence inequality suites", 600, c3_divergence_suites),
        ("duality", 300, c4_duality),
        ("DPI and monotonicity in order", 60, c5_dpi_monotonicity),
        ("limits", 30, c6_limits),
        ("uncertainty tightness", 1, c7_tightness),
        ("exclusion-relation suites and bound ladder", 900, c8_exclusion_suites),
        ("state-independent minimax", 120, c9_minimax),
        ("interpolation identities", 300, c10_interpolation),
        ("determinism", 600, c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let ok = o.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = if in_time { String::new() } else { format!(" over the {budget} s budget") };
        println!(
            "{} {:>2} {name}: {} [{:.2} s{timing}]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
