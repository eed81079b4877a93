use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, Signed, Zero};
use proptest::prelude::*;
use sparseconv_core::numerics::{
    extended_sum, extended_sum_of, hermitian_smallest_eigenvalue, ComplexMatrix, ExtendedReal,
};
use sparseconv_core::Complex64;

fn exact(x: ExtendedReal) -> BigRational {
    BigRational::from_f64(x.hi()).unwrap() + BigRational::from_f64(x.lo()).unwrap()
}

fn rel_err(got: ExtendedReal, want: &BigRational) -> f64 {
    if want.is_zero() {
        return if got.is_zero() { 0.0 } else { f64::INFINITY };
    }
    let diff = (exact(got) - want).abs() / want.abs();
    // diff is tiny; scale before converting
    let scaled = diff * BigRational::from_integer(BigInt::from(10).pow(40));
    let n: f64 = scaled.to_integer().to_string().parse().unwrap();
    n * 1e-40
}

fn arb_extended() -> impl Strategy<Value = ExtendedReal> {
    (-1.0f64..1.0, -150i32..150, -1.0f64..1.0).prop_map(|(m, e, l)| {
        let hi = m * 10f64.powi(e);
        ExtendedReal::from_parts(hi, hi * l * 1e-17)
    })
}

fn arb_hermitian() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..9).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            let mut m = ComplexMatrix::zeros(n, n).unwrap();
            for r in 0..n {
                for c in r..n {
                    let (a, b) = v[r * n + c];
                    let z = if r == c { Complex64::new(a, 0.0) } else { Complex64::new(a, b) };
                    m[(r, c)] = z;
                    m[(c, r)] = z.conj();
                }
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn extended_add_mul_accuracy(a in arb_extended(), b in arb_extended()) {
        let (ea, eb) = (exact(a), exact(b));
        let prod = ea.clone() * eb.clone();
        // below ~2^-968 the low word of a double-double is subnormal
        if (a.hi() * b.hi()).abs() > 1e-291 {
            prop_assert!(rel_err(a * b, &prod) <= 1e-30);
        }
        // same-sign sums are well conditioned
        let b = if a.signum() == b.signum() { b } else { -b };
        let sum = ea + exact(b);
        prop_assert!(rel_err(a + b, &sum) <= 1e-30);
    }

    #[test]
    fn rayleigh_quotient_dominance(m in arb_hermitian(), seed in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8)) {
        let n = m.rows();
        let mut u: Vec<Complex64> = seed.iter().take(n).map(|&(a, b)| Complex64::new(a, b)).collect();
        let len = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(len > 1e-6);
        u.iter_mut().for_each(|z| *z /= len);
        let q = m.quadratic_form(&u).unwrap().re;
        let lambda = hermitian_smallest_eigenvalue(&m, 1e-12).unwrap();
        prop_assert!(lambda <= q + 1e-12 * q.abs() + 1e-14);
    }

    #[test]
    fn extended_sum_permutation_invariant(mut terms in proptest::collection::vec(-1e10f64..1e10, 1..40), seed in any::<u64>()) {
        let a = extended_sum(&terms);
        let n = terms.len();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            terms.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let b = extended_sum(&terms);
        let scale = a.abs().to_f64().max(1e-300);
        prop_assert!((a - b).abs().to_f64() <= 1e-30 * scale);
    }
}

#[test]
fn alternating_gaussian_sum_matches_reference() {
    // sum_{k=1}^{35} (-1)^k e^{-2k^2/35}
    // = -0.49999999999999999868940949540277362101909821995993
    let terms: Vec<ExtendedReal> = (1..=35i64)
        .map(|k| {
            let t = (-(ExtendedReal::from_f64((2 * k * k) as f64) / ExtendedReal::from_f64(35.0))).exp();
            if k % 2 == 0 { t } else { -t }
        })
        .collect();
    let s = extended_sum_of(&terms);
    let want = ExtendedReal::from_parts(-0.5, 1.310_590_504_597_226_4e-18);
    assert!((s - want).abs().to_f64() <= 1e-30 * 0.5, "{s:?}");
}

#[test]
fn extended_sum_cancellation() {
    assert_eq!(extended_sum(&[1.0, -1.0, 1e-20]).to_f64(), 1e-20);
    assert_eq!(extended_sum(&[1.0, 2.0, 3.0]).to_f64(), 6.0);
    // condition number 1e25
    let s = extended_sum(&[1e25, 1.0, -1e25, 3e-7]);
    assert!((s.to_f64() - (1.0 + 3e-7)).abs() <= 1e-30);
}
