use sparseconv_core::stability::{analytic_alpha_log2, rho_min, sharp_alpha_alternating, sharp_alpha_exhaustive};
use std::collections::BTreeMap;

fn sharp_table() -> BTreeMap<(usize, usize, usize), f64> {
    let mut out = BTreeMap::new();
    for s in 1..=3 {
        for f in 1..=3 {
            for n in s.max(f)..=6 {
                let r = sharp_alpha_exhaustive(s, f, n, 12).unwrap();
                out.insert((s, f, n), r.log2_alpha);
            }
        }
    }
    out
}

#[test]
fn sandwich_and_monotonicity() {
    let t = std::time::Instant::now();
    let table = sharp_table();
    eprintln!("exhaustive grid: {:?}", t.elapsed());
    for (&(s, f, n), &v) in &table {
        eprintln!("alpha({s},{f},{n}) = {:.9}", v.exp2());
        assert!(v <= 0.0 && v.is_finite());
        if s >= 2 && f >= 2 && n >= 3 {
            let a = analytic_alpha_log2(s, f, n as u64).unwrap();
            assert!(a < v, "({s},{f},{n}): analytic {a} vs sharp {v}");
        }
    }
    for (&(s, f, n), &v) in &table {
        for (ds, df, dn) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
            if let Some(&w) = table.get(&(s + ds, f + df, n + dn)) {
                assert!(w <= v + 1e-6, "alpha not monotone at ({s},{f},{n}) -> +({ds},{df},{dn}): {v} -> {w}");
            }
        }
    }
}

#[test]
fn rho_min_dominates_sharp_value() {
    // for every individual l1-normalized y, rho_min(s, y, n) >= alpha(s, f, n)^2
    let sharp = sharp_alpha_exhaustive(2, 2, 4, 12).unwrap().log2_alpha;
    for k in 0..50 {
        let t = k as f64 / 50.0;
        let y = sparseconv_core::seq::SparseSeq::from_dense(
            0,
            &[
                num_complex::Complex64::from_polar(t, 0.0),
                num_complex::Complex64::from_polar(1.0 - t, 2.0 * t),
            ],
        )
        .unwrap();
        if y.is_empty() {
            continue;
        }
        let r = rho_min(2, &y, 4).unwrap();
        assert!(r >= (2.0 * sharp).exp2() - 1e-9);
    }
}

#[test]
fn alternating_matches_exhaustive_on_grid() {
    for (s, f, n) in [(2, 2, 4), (3, 3, 5), (2, 3, 6), (3, 2, 6)] {
        let e = sharp_alpha_exhaustive(s, f, n, 12).unwrap().alpha();
        let a = sharp_alpha_alternating(s, f, n, 32, 11).unwrap().alpha();
        eprintln!("({s},{f},{n}) exhaustive {e:.9} alternating {a:.9}");
        assert!(a >= e - 1e-6);
    }
}
