use alloc::vec::Vec;

use num_complex::Complex64;

use super::{binomial, combinations, RHO_BUDGET};
use crate::numerics::{hermitian_smallest_eigenpair, ComplexMatrix, DEFAULT_TOL};
use crate::seq::{toeplitz_gram, SparseSeq};
use crate::{Error, Result};

/// Autocorrelation `b(d)` of a dense vector for `d in (-n, n)`, stored at `d + n - 1`.
pub(crate) fn autocorr_table(y: &[Complex64], nz: &[usize]) -> Vec<Complex64> {
    let n = y.len();
    let mut b = alloc::vec![Complex64::new(0.0, 0.0); 2 * n - 1];
    for &g in nz {
        for &h in nz {
            // b(h - g) += y(h) conj(y(g))
            b[h + n - 1 - g] += y[h] * y[g].conj();
        }
    }
    b
}

/// Principal minor of the Toeplitz matrix with entries `b(l - k)` on `t`.
pub(crate) fn toeplitz_minor(b: &[Complex64], n: usize, t: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(t.len(), t.len(), |r, c| b[t[r] + n - 1 - t[c]]).expect("nonempty")
}

/// Smallest eigenvalue of the principal minor, closed form for sizes 1 and 2.
pub(crate) fn minor_lambda_min(b: &[Complex64], n: usize, t: &[usize]) -> f64 {
    match t.len() {
        1 => b[n - 1].re,
        2 => {
            let d = b[n - 1].re;
            d - b[t[1] + n - 1 - t[0]].norm()
        }
        _ => {
            let m = toeplitz_minor(b, n, t);
            hermitian_smallest_eigenpair(&m, DEFAULT_TOL).map(|(l, _)| l).unwrap_or(f64::NAN)
        }
    }
}

pub(crate) fn check_rho_budget(n: usize, s: usize) -> Result<()> {
    if s == 0 || s > n {
        return Err(Error::InvalidArgument(alloc::format!("need 1 <= s <= n, got s = {s}, n = {n}")));
    }
    let needed = binomial(n, s);
    if needed > RHO_BUDGET {
        return Err(Error::Budget {
            needed,
            limit: RHO_BUDGET,
            advice: "reduce n or s so that C(n, s) <= 1e6",
        });
    }
    Ok(())
}

/// Smallest `s`-sparse eigenvalue of `B_y` on `[0, n)` and the first support attaining it.
pub fn rho_min_with_support(s: usize, y: &SparseSeq, n: usize) -> Result<(f64, Vec<usize>)> {
    check_rho_budget(n, s)?;
    let gram = toeplitz_gram(y, n)?.matrix;
    let mut best = (f64::INFINITY, Vec::new());
    for t in combinations(n, s) {
        let minor = gram.principal_minor(&t)?;
        let (lambda, _) = hermitian_smallest_eigenpair(&minor, DEFAULT_TOL)?;
        if lambda < best.0 {
            best = (lambda, t);
        }
    }
    Ok(best)
}

/// Smallest `s`-sparse eigenvalue of `B_y` on `[0, n)`.
pub fn rho_min(s: usize, y: &SparseSeq, n: usize) -> Result<f64> {
    rho_min_with_support(s, y, n).map(|(v, _)| v)
}
