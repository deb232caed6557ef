#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use renyi_lab::states::trial_rng;
use renyi_lab::{Operator, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    trial_rng(seed, 0)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Operator {
    Operator::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> Operator {
    random_matrix(n, n, rng).hermitian_part()
}

pub fn random_vector(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

pub fn ket(d: usize, k: usize) -> Vec<C64> {
    (0..d).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
}

pub fn bell() -> Vec<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]
}

/// Commuting positive pair sharing the eigenbasis `u`.
pub fn commuting_positive(u: &Operator, rng: &mut impl Rng) -> Operator {
    let vals: Vec<f64> = (0..u.rows()).map(|_| rng.gen_range(0.2..3.0)).collect();
    u.matmul(&Operator::diag(&vals)).matmul(&u.adjoint())
}

pub fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
}

pub fn assert_op_close(a: &Operator, b: &Operator, tol: f64) {
    let d = a.dist_max(b);
    assert!(d <= tol, "operators differ by {d:e} (tol {tol:e})");
}

pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases: n, failure_persistence: None, ..Default::default() }
}
