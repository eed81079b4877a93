use super::*;
use crate::seq::GroupDescriptor;
use alloc::vec;
use num_complex::Complex64;

// ln ratio at sigma = (s - 1)/2, from a 50-digit evaluation
const REFERENCE: [(usize, f64); 6] = [
    (3, -0.521_875_400_882_457_870_81),
    (11, -5.128_045_243_011_120_800_5),
    (17, -8.690_159_436_624_834_358_9),
    (31, -16.883_371_472_346_048_189),
    (51, -27.368_179_750_719_975_169),
    (71, -37.453_389_643_729_486_401),
];

#[test]
fn make_pair_values() {
    let p = make_pair(3, 1.0).unwrap();
    let e = libm::exp(-1.0);
    assert_eq!(p.half_width, 1);
    assert_eq!(p.g.get(&[-1]), Complex64::new(e, 0.0));
    assert_eq!(p.g.get(&[0]), Complex64::new(1.0, 0.0));
    assert_eq!(p.g.get(&[1]), Complex64::new(e, 0.0));
    assert_eq!(p.mg.get(&[0]), Complex64::new(1.0, 0.0));
    assert_eq!(p.mg.get(&[-1]), Complex64::new(-e, 0.0));
    assert_eq!(p.mg.get(&[1]), Complex64::new(-e, 0.0));
    let p = make_pair(71, 35.0).unwrap();
    assert_eq!((p.g.len(), p.mg.len()), (71, 71));
    assert_eq!(p.g.group(), GroupDescriptor::Integers);
    for k in 1..=35i64 {
        assert_eq!(p.g.get(&[k]), p.g.get(&[-k]));
    }
    assert!(make_pair(4, 1.0).is_err());
    assert!(make_pair(1, 1.0).is_err());
    assert!(make_pair(5, 0.0).is_err());
}

#[test]
fn closed_form_s3() {
    let e2 = libm::exp(-2.0);
    let expect = libm::log(libm::sqrt(2.0 * e2 * e2 + (1.0 - 2.0 * e2) * (1.0 - 2.0 * e2)) / (1.0 + 2.0 * e2));
    let r = gaussian_ratio(&make_pair(3, 1.0).unwrap());
    assert!((r.log_ratio - expect).abs() < 1e-15);
    assert_eq!(r.precision_used, Precision::Native);
    let pipe = gaussian_ratio_pipeline(&make_pair(3, 1.0).unwrap()).unwrap();
    assert!((libm::exp(r.log_ratio) - pipe).abs() <= 1e-12 * pipe);
}

#[test]
fn reference_values() {
    for (s, want) in REFERENCE {
        let r = gaussian_ratio(&make_pair(s, (s as f64 - 1.0) / 2.0).unwrap());
        let tol = if r.precision_used == Precision::Extended { 1e-12 } else { 1e-8 };
        assert!((r.log_ratio - want).abs() < tol, "s={s}: {} vs {want}", r.log_ratio);
        assert!(r.log_ratio < 0.0);
        assert!(r.log_ratio_l1 <= r.log_ratio);
    }
    assert_eq!(predicted_precision(31), Precision::Native);
    assert_eq!(predicted_precision(33), Precision::Extended);
    assert_eq!(predicted_precision(71), Precision::Extended);
}

#[test]
fn extended_agrees_with_native_where_native_is_good() {
    for s in [3usize, 7, 11, 15] {
        let p = make_pair(s, (s as f64 - 1.0) / 2.0).unwrap();
        let a = gaussian_ratio_with(&p, Precision::Native).log_ratio;
        let b = gaussian_ratio_with(&p, Precision::Extended).log_ratio;
        assert!((a - b).abs() < 1e-9, "s={s}");
    }
}

#[test]
fn two_path_consistency() {
    for s in (3..=31usize).step_by(2) {
        for sigma in 2..=16 {
            let p = make_pair(s, sigma as f64).unwrap();
            let explicit = libm::exp(gaussian_ratio(&p).log_ratio);
            let pipe = gaussian_ratio_pipeline(&p).unwrap();
            if explicit > 1e-12 {
                assert!((explicit - pipe).abs() <= 1e-10 * pipe, "s={s} sigma={sigma}");
            }
            assert!(explicit <= 1.0);
        }
    }
}

#[test]
fn scale_invariance() {
    let p = make_pair(9, 4.0).unwrap();
    let a = gaussian_ratio_pipeline(&p).unwrap();
    let k = Complex64::new(1e3, 0.0);
    let b = ratio_of_sequences(&p.mg.scale(k), &p.g.scale(k)).unwrap();
    assert!((a - b).abs() <= 1e-13 * a);
}

#[test]
fn sweep_shape() {
    let rows = sweep(&[3], &[0.5, 1.0]).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.log_ratio < 0.0));
    let rows = sweep(&[5, 3], &[1.0, 2.0, 3.0]).unwrap();
    let order: Vec<(usize, f64)> = rows.iter().map(|r| (r.s, r.sigma)).collect();
    assert_eq!(order, vec![(5, 1.0), (5, 2.0), (5, 3.0), (3, 1.0), (3, 2.0), (3, 3.0)]);
    assert!(sweep(&[], &[1.0]).is_err());
    assert!(sweep(&[4], &[1.0]).is_err());
}

#[test]
fn optimal_sigma_values() {
    let o = optimal_sigma(11, 1.0, 20.0, 1e-4).unwrap();
    assert!((o.sigma_star - 5.883_819_710_1).abs() < 1e-3, "{o:?}");
    assert!((o.log_ratio_star - -5.798_698_194_257_75).abs() < 1e-8);
    assert!((o.sigma_star - 5.0).abs() <= 1.0);
    let o = optimal_sigma(31, 1.0, 40.0, 1e-4).unwrap();
    assert!((o.sigma_star - 15.052_682_57).abs() < 1e-3, "{o:?}");
    assert!((o.sigma_star - 15.0).abs() <= 1.5);
    assert!(optimal_sigma(11, 2.0, 1.0, 0.1).is_err());
}
