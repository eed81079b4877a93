use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{binomial, combinations};
use crate::numerics::{hermitian_smallest_eigenvalue, vandermonde, DEFAULT_TOL};
use crate::{Error, Result};

/// `|det V_J|^2 = prod_{l<k} 4 sin^2(pi (j_k - j_l) / M)`.
fn det_sq(j: &[usize], m: usize) -> f64 {
    let mut acc = 1.0;
    for a in 0..j.len() {
        for b in (a + 1)..j.len() {
            let s = libm::sin(PI * (j[b] as f64 - j[a] as f64) / m as f64);
            acc *= 4.0 * s * s;
        }
    }
    acc
}

/// `|det V_{[f]}|^2` for the consecutive nodes `0, 1, ..., f-1`.
pub fn vandermonde_min_det(f: usize, m: usize) -> Result<f64> {
    if f == 0 || f > m {
        return Err(Error::InvalidArgument(format!("need 1 <= f <= M, got f = {f}, M = {m}")));
    }
    let j: Vec<usize> = (0..f).collect();
    Ok(det_sq(&j, m))
}

/// `log2` of `2^{2f^2 - 4} M^{-f(f-1)}`.
pub fn mindet_lower_bound_log2(f: usize, m: usize) -> f64 {
    let ff = f as f64;
    2.0 * ff * ff - 4.0 - ff * (ff - 1.0) * libm::log2(m as f64)
}

/// Scans all `J` in `[0, n)` with `|J| = f` and returns the first minimizer of
/// `|det V_J|^2` (ties within relative `1e-12` keep the earlier set).
pub fn vandermonde_min_det_exhaustive(f: usize, n: usize, m: usize) -> Result<(Vec<usize>, f64)> {
    if n > 12 || n > m || f == 0 || f > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= f <= n <= min(12, M), got f = {f}, n = {n}, M = {m}"
        )));
    }
    debug_assert!(binomial(n, f) <= 924);
    let mut best: Option<(Vec<usize>, f64)> = None;
    for j in combinations(n, f) {
        let v = det_sq(&j, m);
        if best.as_ref().is_none_or(|b| v < b.1 * (1.0 - 1e-12)) {
            best = Some((j, v));
        }
    }
    Ok(best.expect("f <= n"))
}

/// `lambda_min(V_J^* V_J)` and the estimate `|det V_J|^2 / (2d)^{d-1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaMinBound {
    pub lambda_min: f64,
    pub bound: f64,
}

pub fn vandermonde_lambda_min_bound(j: &[usize], m: usize) -> Result<LambdaMinBound> {
    if j.len() > 12 {
        return Err(Error::InvalidArgument(format!("|J| = {} exceeds 12", j.len())));
    }
    let v = vandermonde(j, m)?;
    let d = j.len();
    let gram = v.adjoint().matmul(&v)?;
    let lambda_min = hermitian_smallest_eigenvalue(&gram, DEFAULT_TOL)?;
    let det = v.determinant()?.norm_sqr();
    let bound = det / libm::pow(2.0 * d as f64, d as f64 - 1.0);
    Ok(LambdaMinBound { lambda_min, bound })
}
