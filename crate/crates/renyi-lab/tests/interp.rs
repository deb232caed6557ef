mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng as _;
use renyi_lab::interp::*;
use renyi_lab::linalg::{frac_power, partial_trace, schatten_norm, tensor};
use renyi_lab::renyi::weighted_norm;
use renyi_lab::states::{random_density, random_positive, random_unitary};
use renyi_lab::{Error, Operator, SystemLayout};

#[test]
fn gamma_with_identity_weights_is_identity() {
    let m = random_matrix(3, 2, &mut rng(1));
    let none = GammaSpec::new(None, None, 0.7).unwrap();
    assert_op_close(&gamma_apply(&none, &m).unwrap(), &m, 1e-15);
    let ids = GammaSpec::new(Some(Operator::identity(3)), Some(Operator::identity(2)), -1.3).unwrap();
    assert_op_close(&gamma_apply(&ids, &m).unwrap(), &m, 1e-12);
}

#[test]
fn gamma_matches_direct_sandwich() {
    let mut r = rng(2);
    let m = random_matrix(3, 2, &mut r);
    let s = random_positive(3, 0.2, 2.0, &mut r);
    let t = random_positive(2, 0.2, 2.0, &mut r);
    let g = gamma_apply(&GammaSpec::new(Some(s.clone()), Some(t.clone()), 1.4).unwrap(), &m).unwrap();
    let direct = frac_power(&s, 0.7).unwrap().matmul(&m).matmul(&frac_power(&t, 0.7).unwrap());
    assert_op_close(&g, &direct, 1e-12);
}

#[test]
fn inverse_gamma_gives_support_projection() {
    let mut r = rng(3);
    let m = random_matrix(3, 3, &mut r);
    let sigma = random_density(3, 2, &mut r).into_operator();
    let fwd = gamma_apply(&GammaSpec::symmetric(sigma.clone(), 1.0).unwrap(), &m).unwrap();
    let back = gamma_apply(&GammaSpec::symmetric(sigma.clone(), -1.0).unwrap(), &fwd).unwrap();
    let proj = frac_power(&sigma, 0.0).unwrap();
    assert_op_close(&back, &proj.matmul(&m).matmul(&proj), 1e-9);
}

#[test]
fn gamma_exponents_add() {
    let mut r = rng(4);
    let m = random_matrix(2, 2, &mut r);
    let s = random_positive(2, 0.3, 2.0, &mut r);
    let once = gamma_apply(&GammaSpec::symmetric(s.clone(), 0.8).unwrap(), &m).unwrap();
    let twice = gamma_apply(&GammaSpec::symmetric(s.clone(), -0.3).unwrap(), &once).unwrap();
    let direct = gamma_apply(&GammaSpec::symmetric(s, 0.5).unwrap(), &m).unwrap();
    assert_op_close(&twice, &direct, 1e-12);
}

#[test]
fn tensor_embedded_weights_act_on_the_first_factor() {
    let mut r = rng(5);
    let w = random_positive(2, 0.3, 2.0, &mut r);
    let m = random_matrix(6, 6, &mut r);
    let big = embed_first(&w, 6).unwrap();
    let g = gamma_apply(&GammaSpec::symmetric(big, 0.6).unwrap(), &m).unwrap();
    let half = tensor(&frac_power(&w, 0.3).unwrap(), &Operator::identity(3));
    assert_op_close(&g, &half.matmul(&m).matmul(&half), 1e-12);
    assert!(matches!(embed_first(&w, 5), Err(Error::DimensionMismatch(_))));
}

#[test]
fn gamma_rejects_bad_weights() {
    assert!(matches!(GammaSpec::symmetric(Operator::diag(&[1.0, -0.5]), 1.0), Err(Error::NotPsd(_))));
    let spec = GammaSpec::symmetric(Operator::identity(2), 1.0).unwrap();
    assert!(matches!(gamma_apply(&spec, &Operator::identity(3)), Err(Error::DimensionMismatch(_))));
}

#[test]
fn equal_indices_give_the_schatten_norm() {
    let mut r = rng(6);
    let l = SystemLayout::bipartite(2, 2);
    let y = random_matrix(4, 4, &mut r);
    for p in [1.0, 2.0, 3.5] {
        assert_close(two_part_norm(&y, &l, p, p, &mut r).unwrap(), schatten_norm(&y, p).unwrap(), 1e-12);
    }
}

#[test]
fn second_index_one_reduces_to_the_marginal() {
    let mut r = rng(7);
    let l = SystemLayout::bipartite(2, 2);
    for p in [1.5, 2.0, 4.0] {
        let x = random_density(4, 4, &mut r).into_operator();
        let lhs = two_part_norm(&x, &l, p, 1.0, &mut r).unwrap();
        let rhs = schatten_norm(&partial_trace(&x, &l, &[0]).unwrap(), p).unwrap();
        assert_close(lhs, rhs, 1e-5);
    }
}

#[test]
fn product_operators_factorize() {
    let mut r = rng(8);
    let l = SystemLayout::bipartite(2, 2);
    for (p, q) in [(3.0, 1.5), (2.0, 1.0), (4.0, 2.0)] {
        let ya = random_matrix(2, 2, &mut r);
        let yb = random_matrix(2, 2, &mut r);
        let lhs = two_part_norm(&tensor(&ya, &yb), &l, p, q, &mut r).unwrap();
        let rhs = schatten_norm(&ya, p).unwrap() * schatten_norm(&yb, q).unwrap();
        assert_close(lhs, rhs, 1e-5 * rhs);
    }
}

#[test]
fn two_part_norm_needs_a_qubit_first_factor() {
    let l = SystemLayout::bipartite(3, 2);
    let y = Operator::identity(6);
    assert!(matches!(two_part_norm(&y, &l, 2.0, 1.0, &mut rng(9)), Err(Error::UnsupportedDim(3))));
    let l = SystemLayout::bipartite(2, 2);
    assert!(matches!(two_part_norm(&Operator::identity(4), &l, 0.5, 1.0, &mut rng(9)), Err(Error::InvalidOrder(_))));
}

#[test]
fn three_part_norm_reduces_to_two_part_norm() {
    let mut r = rng(10);
    let l = SystemLayout::tripartite(2, 2, 2);
    for _ in 0..3 {
        let x = random_density(8, 8, &mut r).into_operator();
        let p = r.gen_range(1.0..4.0);
        let q = r.gen_range(1.0..4.0);
        assert!(three_part_reduction_check(&x, &l, p, q, &mut r).unwrap() <= 1e-4);
    }
    let bad = SystemLayout::tripartite(3, 2, 2);
    assert!(matches!(
        three_part_reduction_check(&Operator::identity(12), &bad, 2.0, 1.0, &mut r),
        Err(Error::UnsupportedDim(3))
    ));
}

fn instance(r: &mut impl rand::Rng, theta: f64) -> LogConvexityInstance {
    let (da, db) = (r.gen_range(2..=3), r.gen_range(2..=3));
    let ua = random_unitary(da, r);
    let ub = random_unitary(db, r);
    LogConvexityInstance {
        y: random_matrix(db, da, r),
        sigma1: commuting_positive(&ub, r),
        tau1: commuting_positive(&ub, r),
        sigma2: commuting_positive(&ua, r),
        tau2: commuting_positive(&ua, r),
        f: Affine { slope: r.gen_range(-2.0..2.0), offset: r.gen_range(-1.0..1.0) },
        q0: r.gen_range(1.0..5.0),
        q1: r.gen_range(1.0..5.0),
        theta,
    }
}

#[test]
fn log_convexity_is_exact_at_endpoints() {
    let mut r = rng(11);
    for theta in [0.0, 1.0] {
        assert_eq!(log_convexity_check(&instance(&mut r, theta)).unwrap(), 0.0);
    }
}

#[test]
fn log_convexity_with_identity_weights_is_schatten_interpolation() {
    let mut r = rng(12);
    let y = random_matrix(3, 3, &mut r);
    let id = Operator::identity(3);
    let inst = LogConvexityInstance {
        y: y.clone(),
        sigma1: id.clone(),
        sigma2: id.clone(),
        tau1: id.clone(),
        tau2: id,
        f: Affine { slope: 0.0, offset: 0.0 },
        q0: 1.0,
        q1: 4.0,
        theta: 0.5,
    };
    let qt = 1.0 / (0.5 + 0.5 / 4.0);
    let want = schatten_norm(&y, 1.0).unwrap().sqrt() * schatten_norm(&y, 4.0).unwrap().sqrt()
        - schatten_norm(&y, qt).unwrap();
    assert_close(log_convexity_check(&inst).unwrap(), want, 1e-12);
    assert!(want >= 0.0);
}

#[test]
fn log_convexity_rejects_non_commuting_weights() {
    let mut r = rng(13);
    let mut inst = instance(&mut r, 0.5);
    inst.tau1 = random_positive(inst.sigma1.dim(), 0.2, 2.0, &mut r);
    assert!(matches!(log_convexity_check(&inst), Err(Error::CommutatorViolation(_))));
}

#[test]
fn pq_interpolation_gap_is_measured() {
    let mut r = rng(14);
    let l = SystemLayout::bipartite(2, 2);
    let y = random_density(4, 4, &mut r).into_operator();
    let gap = pq_interpolation_gap(&y, &l, (2.0, 1.0), (4.0, 2.0), 0.5, &mut r).unwrap();
    assert!(gap.is_finite());
    println!("pq interpolation gap {gap:e}");
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn log_convexity_holds_for_commuting_weights(s in any::<u64>(), theta in 0.0f64..1.0) {
        let mut r = rng(s);
        prop_assert!(log_convexity_check(&instance(&mut r, theta)).unwrap() >= -1e-9);
    }

    #[test]
    fn weighted_norms_are_unitarily_covariant(s in any::<u64>(), p in 0.6f64..5.0) {
        let mut r = rng(s);
        let y = random_matrix(3, 2, &mut r);
        let sigma = random_positive(3, 0.2, 2.0, &mut r);
        let tau = random_positive(2, 0.2, 2.0, &mut r);
        let u = random_unitary(3, &mut r);
        let v = random_unitary(2, &mut r);
        let rotated = weighted_norm(
            &u.matmul(&y).matmul(&v.adjoint()),
            p,
            &u.matmul(&sigma).matmul(&u.adjoint()),
            &v.matmul(&tau).matmul(&v.adjoint()),
        ).unwrap();
        let plain = weighted_norm(&y, p, &sigma, &tau).unwrap();
        prop_assert!((rotated - plain).abs() <= 1e-9 * (1.0 + plain));
    }
}
