use alloc::format;

use super::{BoundKind, BoundResult};
use crate::addset::compression_bound_n;
use crate::{Error, Result};

/// The four summands of the closed-form bound (all `log2`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticTerms {
    /// `-f^2 log2(s f / 4)`
    pub sparsity: f64,
    /// `f log2(s / 2)`
    pub modulation: f64,
    /// `-(3/2) log2(4 f)`
    pub constant: f64,
    /// `(-f^2 + f - 1) log2 n`
    pub dimension: f64,
}

impl AnalyticTerms {
    pub fn total(&self) -> f64 {
        self.sparsity + self.modulation + self.constant + self.dimension
    }
}

/// Closed-form lower bound on `alpha(s, f, n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticBound {
    pub s: usize,
    pub f: usize,
    pub log2_n: f64,
    pub log2_alpha: f64,
    /// `None` for `s = 1` or `f = 1`, where the exact value is returned.
    pub terms: Option<AnalyticTerms>,
    /// `-(2s^2 - s + 1) log2(s/2) + (-s^2 + s - 1/2) log2 n`, only for `s = f >= 2`.
    pub log2_alpha_equal_sparsity: Option<f64>,
    /// `s = 1` or `f = 1`: the value is exact.
    pub exact: bool,
}

/// Bound from `s`, `f` and `log2 n` (lets `n` exceed the integer range).
pub fn analytic_alpha_from_log2n(s: usize, f: usize, log2_n: f64) -> Result<AnalyticBound> {
    if s == 0 || f == 0 {
        return Err(Error::InvalidArgument(format!("need s, f >= 1, got s = {s}, f = {f}")));
    }
    if !(log2_n >= 0.0) {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let (sf, ff) = (s as f64, f as f64);
    if s == 1 || f == 1 {
        // alpha(1, f, n) = f^{-1/2} and alpha(s, 1, n) = 1
        let log2_alpha = if s == 1 { -0.5 * libm::log2(ff) } else { 0.0 };
        return Ok(AnalyticBound {
            s,
            f,
            log2_n,
            log2_alpha,
            terms: None,
            log2_alpha_equal_sparsity: None,
            exact: true,
        });
    }
    let terms = AnalyticTerms {
        sparsity: -ff * ff * libm::log2(sf * ff / 4.0),
        modulation: ff * libm::log2(sf / 2.0),
        constant: -1.5 * libm::log2(4.0 * ff),
        dimension: (-ff * ff + ff - 1.0) * log2_n,
    };
    let equal = (s == f).then(|| {
        -(2.0 * sf * sf - sf + 1.0) * libm::log2(sf / 2.0) + (-sf * sf + sf - 0.5) * log2_n
    });
    Ok(AnalyticBound {
        s,
        f,
        log2_n,
        log2_alpha: terms.total(),
        terms: Some(terms),
        log2_alpha_equal_sparsity: equal,
        exact: false,
    })
}

pub fn analytic_alpha(s: usize, f: usize, n: u64) -> Result<AnalyticBound> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    analytic_alpha_from_log2n(s, f, libm::log2(n as f64))
}

/// `log2` of the closed-form lower bound on `alpha(s, f, n)`.
pub fn analytic_alpha_log2(s: usize, f: usize, n: u64) -> Result<f64> {
    analytic_alpha(s, f, n).map(|b| b.log2_alpha)
}

/// The group-independent bound: the closed form at `n = n(s + f - 1)`.
pub fn corollary_universal_bound(s: usize, f: usize) -> Result<BoundResult> {
    let nb = compression_bound_n(s, f)?;
    let log2_n = match nb.n {
        Some(n) => libm::log2(n as f64),
        None => nb.log2_n,
    };
    let bound = analytic_alpha_from_log2n(s, f, log2_n)?;
    Ok(BoundResult {
        s,
        f,
        n: nb.n,
        log2_n,
        log2_alpha: bound.log2_alpha,
        kind: BoundKind::Analytic,
        witness_x: None,
        witness_y: None,
        iterations: 0,
        tolerance: 0.0,
        upper_bound: false,
        analytic: Some(bound),
    })
}
