mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng as _;
use renyi_lab::inequalities::{run_suite, Dims, Verdict, OPTIMIZED_TOL};
use renyi_lab::params::TheoremTag;
use renyi_lab::states::*;
use renyi_lab::uncertainty::*;
use renyi_lab::{Error, Operator, SystemLayout};

fn bell_state() -> DensityOperator {
    DensityOperator::pure(&bell(), SystemLayout::bipartite(2, 2)).unwrap()
}

fn identical(d: usize) -> MeasurementPair {
    MeasurementPair::new(MeasurementBasis::computational(d), MeasurementBasis::computational(d)).unwrap()
}

#[test]
fn qubit_mub_overlaps_are_one_half() {
    let p = MeasurementPair::mub(2);
    for row in p.overlaps() {
        for &c in row {
            assert_close(c, 0.5, 1e-15);
        }
    }
    assert_close(p.c(), 0.5, 1e-15);
}

#[test]
fn identical_bases_have_identity_overlaps() {
    let p = identical(3);
    for (x, row) in p.overlaps().iter().enumerate() {
        for (z, &c) in row.iter().enumerate() {
            assert_close(c, if x == z { 1.0 } else { 0.0 }, 1e-15);
        }
    }
    assert_close(q_mu(&p).value, 0.0, 1e-15);
    assert_close(hall_bound(&identical(2)).value, 2.0, 1e-15);
}

#[test]
fn fourier_pair_bounds() {
    for d in [2usize, 3, 5] {
        let p = MeasurementPair::mub(d);
        let ld = (d as f64).log2();
        assert_close(q_mu(&p).value, ld, 1e-12);
        assert_close(hall_bound(&p).value, ld, 1e-12);
        assert_close(r_cp(&p).value, ld, 1e-12);
    }
    assert_close(q_mu(&MeasurementPair::mub(2)).value, 1.0, 1e-15);
    assert_close(hall_bound(&MeasurementPair::mub(2)).value, 1.0, 1e-15);
}

#[test]
fn pair_construction_errors() {
    let r = MeasurementPair::new(MeasurementBasis::computational(2), MeasurementBasis::computational(3));
    assert!(matches!(r, Err(Error::DimensionMismatch(_))));
}

#[test]
fn swapping_transposes_overlaps() {
    let p = MeasurementPair::random(3, &mut rng(1));
    let s = p.swapped();
    for x in 0..3 {
        for z in 0..3 {
            assert_close(p.overlaps()[x][z], s.overlaps()[z][x], 1e-15);
        }
    }
    assert_eq!(p.best_overlaps(Orientation::XZ), s.best_overlaps(Orientation::ZX));
}

#[test]
fn rmu_is_tight_on_a_basis_state() {
    let pair = MeasurementPair::mub(2);
    let zero = DensityOperator::pure(&ket(2, 0), SystemLayout::single(2)).unwrap();
    for a in [0.5, 0.75, 1.0, 2.0, 5.0] {
        let r = check_rmu(&zero, &pair, a).unwrap();
        assert_close(r.lhs, 1.0, 1e-9);
        assert_close(r.rhs, 1.0, 1e-15);
    }
    let mixed = DensityOperator::maximally_mixed(2);
    assert_close(check_rmu(&mixed, &pair, 2.0).unwrap().lhs, 2.0, 1e-12);
    assert!(matches!(check_rmu(&zero, &pair, 0.3), Err(Error::InvalidInput(_))));
}

#[test]
fn q_delta_of_a_mub_is_log_d() {
    let mut r = rng(2);
    let pair = MeasurementPair::mub(3);
    let rho = random_density(3, 3, &mut r);
    for delta in [-1.0, 0.5, 1.0, 2.0, 10.0] {
        assert_close(q_delta_max(&rho, &pair, delta).unwrap().value, 3f64.log2(), 1e-12);
    }
    assert_close(q_delta_state_independent(&MeasurementPair::mub(2), 2.0).unwrap().value, 1.0, 1e-9);
    assert!(matches!(q_delta(&rho, &pair, 0.0, Orientation::XZ), Err(Error::InvalidOrder(_))));
    assert!(matches!(q_delta_state_independent(&pair, 0.0), Err(Error::InvalidOrder(_))));
}

#[test]
fn q_delta_limits() {
    let mut r = rng(3);
    let pair = MeasurementPair::random(3, &mut r);
    let rho = random_density(3, 3, &mut r);
    let at_one = q_rho(&rho, &pair).unwrap().value;
    for delta in [1.0 - 1e-5, 1.0 + 1e-5] {
        assert_close(q_delta_max(&rho, &pair, delta).unwrap().value, at_one, 1e-4);
    }
    let p = pair.basis_x().probabilities(rho.op());
    let m = pair.best_overlaps(Orientation::XZ);
    let large: f64 = -p.probs().iter().zip(&m).map(|(a, b)| a * b).sum::<f64>().log2();
    assert_close(q_delta(&rho, &pair, 1e9, Orientation::XZ).unwrap().value, large, 1e-6);
}

#[test]
fn qutrit_state_independent_bound_is_the_minimum() {
    let mut r = rng(4);
    for _ in 0..2 {
        let pair = MeasurementPair::random(3, &mut r);
        let states: Vec<_> = (0..2000)
            .map(|k| if k % 2 == 0 { random_density(3, 1, &mut r) } else { random_density(3, 3, &mut r) })
            .collect();
        for delta in [0.5, 2.0] {
            let si = q_delta_state_independent(&pair, delta).unwrap().value;
            let min = states.iter().map(|s| q_delta_max(s, &pair, delta).unwrap().value).fold(f64::INFINITY, f64::min);
            assert!(si <= min + 1e-9, "δ={delta}: {si} > {min}");
            assert!(si >= q_mu(&pair).value - 1e-9);
        }
    }
}

#[test]
fn bell_state_saturates_the_collision_exclusion_relation() {
    let pair = MeasurementPair::mub(2);
    for a in [0.75, 1.5] {
        let r = check_res2c(&bell_state(), &pair, a).unwrap();
        assert_close(r.term("h_min").unwrap(), -1.0, 1e-6);
        assert!(r.gap >= -1e-5 && r.gap <= 1e-4, "gap {}", r.gap);
    }
    assert!(check_res2c(&bell_state(), &pair, 2.5).is_err());
}

#[test]
fn hall_relation_is_tight_for_copied_outcomes() {
    let p = Pmf::new(vec![0.5, 0.0, 0.0, 0.5]).unwrap();
    let rho = classical_state(&p).with_layout(SystemLayout::bipartite(2, 2)).unwrap();
    let r = check_hall_classical(&rho, &MeasurementPair::mub(2)).unwrap();
    assert_close(r.term("i_xy").unwrap(), 1.0, 1e-12);
    assert_close(r.term("i_zy").unwrap(), 0.0, 1e-12);
    assert_close(r.gap, 0.0, 1e-12);
}

#[test]
fn constant_comparison_example() {
    let pair = MeasurementPair::random(3, &mut rng(5));
    let rho = random_density(3, 3, &mut rng(6));
    let r = check_const_comp(&rho, &pair, 2.0, 0.5).unwrap();
    assert_ne!(r.verdict, Verdict::Fail);
    assert!(check_const_comp(&rho, &pair, 2.0, 3.0).is_err());
}

#[test]
fn register_mutual_information_of_a_product_vanishes() {
    let mut r = rng(7);
    let rz = classical_state(&Pmf::new(vec![0.3, 0.7]).unwrap());
    let rb = random_density(2, 2, &mut r);
    let zb = rz.tensor(&rb);
    let i = register_mutual_info(&zb, rb.op(), 1.5).unwrap();
    assert_close(i.value, 0.0, 1e-6);
}

#[test]
fn uncertainty_suites_pass() {
    for tag in TheoremTag::ALL.into_iter().filter(|t| !t.is_divergence()) {
        let s = run_suite(tag, 8, Dims::default(), 11, OPTIMIZED_TOL).summary;
        assert_eq!(s.failed, 0, "{tag}: min gap {}", s.min_gap);
        assert_eq!(s.passed + s.skipped, 8);
    }
    let s = run_suite(TheoremTag::Rmu, 20, Dims { a: 4, b: 2, c: 2 }, 11, OPTIMIZED_TOL).summary;
    assert_eq!(s.failed, 0);
}

#[test]
fn non_uncertainty_tags_are_rejected() {
    assert!(run_trial(TheoremTag::Decomp, Dims::default(), 0, 0).is_err());
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn overlaps_are_doubly_stochastic(s in any::<u64>(), d in 2usize..6) {
        let p = MeasurementPair::random(d, &mut rng(s));
        for k in 0..d {
            let row: f64 = p.overlaps()[k].iter().sum();
            let col: f64 = (0..d).map(|x| p.overlaps()[x][k]).sum();
            prop_assert!((row - 1.0).abs() <= 1e-10 && (col - 1.0).abs() <= 1e-10);
        }
        prop_assert!(p.c() >= 1.0 / d as f64 - 1e-12 && p.c() <= 1.0 + 1e-12);
    }

    #[test]
    fn bound_ladder_is_ordered(s in any::<u64>(), d in 2usize..5) {
        let p = sample_pair(d, &mut rng(s));
        let (cp, g, h) = (r_cp(&p).value, r_g(&p).value, hall_bound(&p).value);
        prop_assert!(cp <= g + 1e-9 && g <= h + 1e-9, "{cp} {g} {h}");
    }

    #[test]
    fn state_dependent_bounds_dominate_q_mu(s in any::<u64>(), d in 2usize..5, delta in prop_oneof![-3.0f64..-0.1, 0.1f64..5.0]) {
        let mut r = rng(s);
        let p = sample_pair(d, &mut r);
        let rho = random_density(d, d, &mut r);
        let qm = q_mu(&p).value;
        prop_assert!(q_rho(&rho, &p).unwrap().value >= qm - 1e-9);
        prop_assert!(q_delta_max(&rho, &p, delta).unwrap().value >= qm - 1e-9);
    }

    #[test]
    fn rmu_holds(s in any::<u64>(), d in 2usize..5, a in 0.5f64..6.0) {
        let mut r = rng(s);
        let p = sample_pair(d, &mut r);
        let rho = random_density(d, r.gen_range(1..=d), &mut r);
        prop_assert!(check_rmu(&rho, &p, a).unwrap().gap >= -1e-9);
    }
}

#[test]
fn diagonal_states_have_deterministic_x_outcomes() {
    let pair = identical(3);
    let rho = DensityOperator::from_operator(Operator::diag(&[1.0, 0.0, 0.0])).unwrap();
    assert_close(q_rho(&rho, &pair).unwrap().value, 0.0, 1e-15);
}
