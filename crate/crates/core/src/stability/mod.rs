//! The stability constant `alpha(s, f)`: sharp values by optimization, the
//! closed-form lower bound and the Vandermonde estimates behind it.
//!
//! All constants are carried as `log2` values.

mod alternating;
mod analytic;
mod combin;
mod rho;
mod sharp;
mod vandermonde;

use alloc::vec::Vec;

use crate::seq::{convolve, norm, SparseSeq};

pub use alternating::sharp_alpha_alternating;
pub use analytic::{
    analytic_alpha, analytic_alpha_from_log2n, analytic_alpha_log2, corollary_universal_bound, AnalyticBound,
    AnalyticTerms,
};
pub use combin::{binomial, combinations};
pub use rho::{rho_min, rho_min_with_support};
pub use sharp::sharp_alpha_exhaustive;
pub use vandermonde::{
    mindet_lower_bound_log2, vandermonde_lambda_min_bound, vandermonde_min_det,
    vandermonde_min_det_exhaustive, LambdaMinBound,
};

/// Budget on `C(n, s) * C(n, f)` for the exhaustive search.
pub const EXHAUSTIVE_BUDGET: u128 = 10_000;
/// Budget on `C(n, s)` for [`rho_min`].
pub const RHO_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    SharpExhaustive,
    SharpAlternating,
    Analytic,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::SharpExhaustive => "sharp_exhaustive",
            BoundKind::SharpAlternating => "sharp_alternating",
            BoundKind::Analytic => "analytic",
        }
    }
}

/// A computed bound on `alpha(s, f, n)`.
#[derive(Clone, Debug)]
pub struct BoundResult {
    pub s: usize,
    pub f: usize,
    /// Interval length; `None` if it does not fit in 64 bits.
    pub n: Option<u64>,
    pub log2_n: f64,
    pub log2_alpha: f64,
    pub kind: BoundKind,
    /// `||witness_x||_2 = 1`.
    pub witness_x: Option<SparseSeq>,
    /// `||witness_y||_1 = 1`.
    pub witness_y: Option<SparseSeq>,
    pub iterations: usize,
    pub tolerance: f64,
    /// Set for heuristic results that only bound the sharp constant from above.
    pub upper_bound: bool,
    pub analytic: Option<AnalyticBound>,
}

impl BoundResult {
    pub fn alpha(&self) -> f64 {
        libm::exp2(self.log2_alpha)
    }

    /// `||x * y||_2` recomputed from the witnesses.
    pub fn witness_value(&self) -> Option<f64> {
        let (x, y) = (self.witness_x.as_ref()?, self.witness_y.as_ref()?);
        Some(norm(&convolve(x, y).ok()?, 2.0) / (norm(x, 2.0) * norm(y, 1.0)))
    }
}

/// Dense vector on `[0, n)` to a sparse sequence on `Z`.
pub(crate) fn dense_to_seq(v: &[num_complex::Complex64]) -> SparseSeq {
    SparseSeq::from_dense(0, v).expect("finite values")
}

pub(crate) fn support_vec(t: &[usize], vals: &[num_complex::Complex64], n: usize) -> Vec<num_complex::Complex64> {
    let mut out = alloc::vec![num_complex::Complex64::new(0.0, 0.0); n];
    for (&i, &v) in t.iter().zip(vals) {
        out[i] = v;
    }
    out
}

#[cfg(test)]
mod tests;
