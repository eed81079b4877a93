use super::alternating::simplex_qp;
use super::*;
use crate::seq::{GroupDescriptor, SparseSeq};
use crate::Error;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn half_half() -> SparseSeq {
    SparseSeq::from_real(0, &[0.5, 0.5]).unwrap()
}

#[test]
fn binomials_and_combinations() {
    assert_eq!(binomial(6, 3), 20);
    assert_eq!(binomial(3, 5), 0);
    assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    let all: Vec<Vec<usize>> = combinations(4, 2).collect();
    assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    assert_eq!(combinations(3, 0).count(), 1);
    assert_eq!(combinations(2, 3).count(), 0);
    assert_eq!(combinations(10, 4).count() as u128, binomial(10, 4));
}

#[test]
fn rho_min_examples() {
    let d = SparseSeq::delta(GroupDescriptor::Integers, vec![0]).unwrap();
    for (s, n) in [(1, 1), (2, 4), (3, 5)] {
        assert!((rho_min(s, &d, n).unwrap() - 1.0).abs() < 1e-15);
    }
    assert!((rho_min(1, &half_half(), 4).unwrap() - 0.5).abs() < 1e-15);
    let (v, t) = rho_min_with_support(2, &half_half(), 2).unwrap();
    assert!((v - 0.25).abs() < 1e-15);
    assert_eq!(t, vec![0, 1]);
    assert!(matches!(rho_min(10, &d, 40), Err(Error::Budget { .. })));
    assert!(rho_min(3, &d, 2).is_err());
}

#[test]
fn rho_min_full_support_matches_eigensolver() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=7 {
        let vals: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let y = SparseSeq::from_dense(0, &vals).unwrap();
        let g = crate::seq::toeplitz_gram(&y, n).unwrap();
        let full = crate::numerics::hermitian_smallest_eigenvalue(&g.matrix, 1e-12).unwrap();
        assert!((rho_min(n, &y, n).unwrap() - full).abs() <= 1e-12 * full.abs().max(1e-3));
    }
}

#[test]
fn rho_min_translation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let vals: Vec<Complex64> =
            (0..3).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let y = SparseSeq::from_dense(0, &vals).unwrap();
        let base = rho_min(2, &y, 6).unwrap();
        for shift in 1..=3 {
            let moved = y.translate(&[shift]).unwrap();
            assert!((rho_min(2, &moved, 6).unwrap() - base).abs() <= 1e-10);
        }
    }
}

#[test]
fn simplex_qp_small() {
    // identity: uniform weights
    let r = simplex_qp(&[1.0, 0.0, 0.0, 1.0], 2);
    assert!((r[0] - 0.5).abs() < 1e-15 && (r[1] - 0.5).abs() < 1e-15);
    // strongly preferring the first coordinate
    let r = simplex_qp(&[1.0, 0.0, 0.0, 100.0], 2);
    assert!((r[0] - 100.0 / 101.0).abs() < 1e-14);
    // projected-gradient path agrees with the uniform answer on a large identity
    let m = 16;
    let q: Vec<f64> = (0..m * m).map(|i| if i % (m + 1) == 0 { 1.0 } else { 0.0 }).collect();
    let r = simplex_qp(&q, m);
    assert!(r.iter().all(|v| (v - 1.0 / m as f64).abs() < 1e-12));
}

#[test]
fn exhaustive_two_two_two() {
    let r = sharp_alpha_exhaustive(2, 2, 2, 12).unwrap();
    assert!((r.alpha() - 0.5).abs() < 1e-6, "{}", r.alpha());
    assert_eq!(r.kind, BoundKind::SharpExhaustive);
    assert!(!r.upper_bound);
    let x = r.witness_x.as_ref().unwrap();
    let y = r.witness_y.as_ref().unwrap();
    assert!((crate::seq::norm(x, 2.0) - 1.0).abs() < 1e-12);
    assert!((crate::seq::norm(y, 1.0) - 1.0).abs() < 1e-12);
    assert!((r.witness_value().unwrap() - r.alpha()).abs() < 1e-8);
    // minimizer: |x| uniform, y opposite signs of equal magnitude
    let xs: Vec<f64> = x.iter().map(|(_, v)| v.norm()).collect();
    assert!((xs[0] - xs[1]).abs() < 1e-4);
    // for n = 2 only |y| matters: lambda = |y0|^2 + |y1|^2 - |y0||y1|
    assert!(y.iter().all(|(_, v)| (v.norm() - 0.5).abs() < 1e-4));
}

#[test]
fn exhaustive_special_cases() {
    for f in [2usize, 3, 4] {
        for n in [4usize, 6] {
            let r = sharp_alpha_exhaustive(1, f, n, 12).unwrap();
            assert!((r.alpha() - 1.0 / libm::sqrt(f as f64)).abs() < 1e-6, "f={f} n={n}");
        }
    }
    for s in [1usize, 2, 3] {
        let r = sharp_alpha_exhaustive(s, 1, 4, 12).unwrap();
        assert!((r.alpha() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn exhaustive_budget_errors() {
    assert!(matches!(sharp_alpha_exhaustive(4, 3, 12, 8), Err(Error::Budget { .. })));
    assert!(matches!(sharp_alpha_exhaustive(2, 4, 5, 8), Err(Error::Budget { .. })));
    assert!(sharp_alpha_exhaustive(3, 2, 2, 8).is_err());
}

#[test]
fn alternating_two_two_two() {
    let r = sharp_alpha_alternating(2, 2, 2, 32, 0).unwrap();
    assert!((r.alpha() - 0.5).abs() < 1e-6, "{}", r.alpha());
    assert!(r.upper_bound);
    assert!((r.witness_value().unwrap() - r.alpha()).abs() < 1e-8);
}

#[test]
fn alternating_special_cases() {
    for f in [2usize, 3, 4] {
        for n in [4usize, 6] {
            let r = sharp_alpha_alternating(1, f, n, 8, 1).unwrap();
            assert!((r.alpha() - 1.0 / libm::sqrt(f as f64)).abs() < 1e-6, "f={f} n={n}");
        }
    }
    let r = sharp_alpha_alternating(3, 1, 5, 4, 1).unwrap();
    assert!((r.alpha() - 1.0).abs() < 1e-12);
}

#[test]
fn alternating_is_deterministic() {
    let a = sharp_alpha_alternating(2, 2, 3, 16, 7).unwrap();
    let b = sharp_alpha_alternating(2, 2, 3, 16, 7).unwrap();
    assert_eq!(a.log2_alpha, b.log2_alpha);
    assert_eq!(a.witness_y, b.witness_y);
}

#[test]
fn alternating_not_below_exhaustive() {
    for (s, f, n) in [(2, 2, 3), (2, 3, 4), (3, 2, 4)] {
        let e = sharp_alpha_exhaustive(s, f, n, 12).unwrap().alpha();
        let a = sharp_alpha_alternating(s, f, n, 32, 3).unwrap().alpha();
        assert!(a >= e - 1e-6, "({s},{f},{n}): alternating {a} < exhaustive {e}");
    }
}

#[test]
fn analytic_values() {
    assert_eq!(analytic_alpha_log2(2, 2, 2).unwrap(), -7.5);
    assert_eq!(analytic_alpha_log2(1, 4, 10).unwrap(), -1.0);
    assert_eq!(analytic_alpha_log2(5, 1, 10).unwrap(), 0.0);
    let b = analytic_alpha(2, 2, 3).unwrap();
    assert!((b.log2_alpha - -9.254_887_502_163_468_5).abs() < 1e-13);
    assert!((b.log2_alpha_equal_sparsity.unwrap() - -3.962_406_251_802_890_5).abs() < 1e-13);
    assert!((b.terms.unwrap().total() - b.log2_alpha).abs() < 1e-15);
    assert!(analytic_alpha(2, 3, 5).unwrap().log2_alpha_equal_sparsity.is_none());
    assert!((analytic_alpha_log2(2, 3, 5).unwrap() - -26.895_602_921_783_676).abs() < 1e-12);
    assert!((analytic_alpha_log2(3, 2, 5).unwrap() - -12.635_709_286_104_399).abs() < 1e-12);
    assert!(analytic_alpha(2, 2, 0).is_err());
}

#[test]
fn corollary_values() {
    let r = corollary_universal_bound(1, 1).unwrap();
    assert_eq!(r.log2_alpha, 0.0);
    let r = corollary_universal_bound(2, 2).unwrap();
    assert_eq!(r.n, Some(3));
    assert_eq!(r.log2_alpha, analytic_alpha_log2(2, 2, 3).unwrap());
    let r = corollary_universal_bound(3, 3).unwrap();
    assert_eq!(r.n, Some(275));
    assert!((r.log2_alpha - -70.874_895_920_783_23).abs() < 1e-12);
    let eq = r.analytic.unwrap().log2_alpha_equal_sparsity.unwrap();
    assert!((eq - -62.030_770_766_216_64).abs() < 1e-12);
    let r = corollary_universal_bound(4, 4).unwrap();
    assert_eq!(r.n, Some(366_415));
    assert!((r.log2_alpha - -274.280_547_506_476_2).abs() < 1e-10);
    let r = corollary_universal_bound(8, 8).unwrap();
    assert!(r.n.is_none() && r.log2_alpha.is_finite() && r.log2_alpha < 0.0);
}

#[test]
fn vandermonde_values() {
    assert!((vandermonde_min_det(2, 4).unwrap() - 2.0).abs() < 1e-14);
    assert!(vandermonde_min_det(5, 4).is_err());
    assert_eq!(libm::log2(vandermonde_min_det(2, 2).unwrap()), mindet_lower_bound_log2(2, 2));
    for f in 2..=4usize {
        // at f = M = 2 the two sides coincide (4 sin^2(pi/2) = 4)
        for m in f.max(3)..=40 {
            let v = vandermonde_min_det(f, m).unwrap();
            assert!(libm::log2(v) > mindet_lower_bound_log2(f, m), "f={f} M={m}");
        }
    }
    let (j, _) = vandermonde_min_det_exhaustive(3, 8, 72).unwrap();
    assert_eq!(j, vec![0, 1, 2]);
    let r = vandermonde_lambda_min_bound(&[0], 2).unwrap();
    assert!((r.lambda_min - 1.0).abs() < 1e-15 && (r.bound - 1.0).abs() < 1e-15);
    let r = vandermonde_lambda_min_bound(&[0, 1], 4).unwrap();
    assert!((r.bound - 0.5).abs() < 1e-14 && r.lambda_min >= r.bound);
    assert!(vandermonde_lambda_min_bound(&[1, 1], 4).is_err());
}

#[test]
fn vandermonde_lambda_bound_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..300 {
        let m = rng.gen_range(2..=64usize);
        let d = rng.gen_range(1..=5usize.min(m));
        let mut j: Vec<usize> = Vec::new();
        while j.len() < d {
            let v = rng.gen_range(0..m);
            if !j.contains(&v) {
                j.push(v);
            }
        }
        let r = vandermonde_lambda_min_bound(&j, m).unwrap();
        assert!(r.lambda_min >= r.bound * (1.0 - 1e-8), "J={j:?} M={m}: {r:?}");
    }
}
