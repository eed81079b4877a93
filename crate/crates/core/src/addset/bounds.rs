use alloc::format;

use super::{diffset, sumset, PointSet};
use crate::numerics::ExtendedReal;
use crate::{Error, Result};

/// `max(1, m - floor(sqrt(2(m - 1)) + 1/2))`.
pub fn freiman_dim_formula(m: usize) -> usize {
    if m == 0 {
        return 1;
    }
    let shift = libm::floor(libm::sqrt(2.0 * (m - 1) as f64) + 0.5) as usize;
    m.saturating_sub(shift).max(1)
}

/// Dimension data for a finite set `A` with `m = |A|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionBounds {
    pub m: usize,
    pub d_formula: usize,
    /// Smallest `d >= 1` with `min(|A+A|, |A-A|) <= (d+1)m - d(d+1)/2`.
    pub d_exact: usize,
    pub sumset_size: usize,
    pub diffset_size: usize,
}

impl DimensionBounds {
    /// Whether the closed formula dominates the exact value for this set.
    pub fn formula_dominates(&self) -> bool {
        self.d_exact <= self.d_formula
    }
}

pub fn freiman_dim_exact(a: &PointSet) -> Result<DimensionBounds> {
    let m = a.len();
    if m > 24 {
        return Err(Error::InvalidArgument(format!("|A| = {m} exceeds 24")));
    }
    let sumset_size = sumset(a, a)?.len();
    let diffset_size = diffset(a, a)?.len();
    let target = sumset_size.min(diffset_size);
    // (d+1)m - d(d+1)/2 reaches m(m+1)/2 >= |A+A| at d = m - 1
    let d_exact = (1..=m.max(1))
        .find(|&d| target <= (d + 1) * m - d * (d + 1) / 2)
        .unwrap_or(m.max(1));
    Ok(DimensionBounds { m, d_formula: freiman_dim_formula(m), d_exact, sumset_size, diffset_size })
}

/// Length `n(m)` of the interval that every `(s, f)`-sparse convolution
/// compresses into, `m = s + f - 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompressionBound {
    pub m: usize,
    /// `log2` of the unfloored value, in double-double.
    pub log2_n_extended: ExtendedReal,
    pub log2_n: f64,
    /// `None` when the value does not fit below `2^63`.
    pub n: Option<u64>,
    pub exceeds_integer_range: bool,
}

/// `n(m) = floor(2^{2 (m - sqrt m) log2(m - sqrt m)})` for `m >= 5`, else
/// `floor(2^{m-2} + 1)`.
pub fn compression_bound_for_m(m: usize) -> Result<CompressionBound> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if m < 5 {
        let n: u64 = [1, 2, 3, 5][m - 1];
        let log2 = ExtendedReal::from_f64(n as f64).log2();
        return Ok(CompressionBound {
            m,
            log2_n_extended: log2,
            log2_n: log2.to_f64(),
            n: Some(n),
            exceeds_integer_range: false,
        });
    }
    let mm = ExtendedReal::from_f64(m as f64);
    let t = mm - mm.sqrt();
    let exponent = t.ldexp(1) * t.log2();
    let exceeds = exponent.to_f64() >= 63.0;
    let n = if exceeds {
        None
    } else {
        let v = exponent.exp2().floor();
        Some((v.hi() as i128 + v.lo() as i128) as u64)
    };
    Ok(CompressionBound {
        m,
        log2_n_extended: exponent,
        log2_n: exponent.to_f64(),
        n,
        exceeds_integer_range: exceeds,
    })
}

pub fn compression_bound_n(s: usize, f: usize) -> Result<CompressionBound> {
    if s == 0 || f == 0 {
        return Err(Error::InvalidArgument("s and f must be at least 1".into()));
    }
    compression_bound_for_m(s + f - 1)
}

/// `log2 (d!) <= (d + 1) log2 (d + 1) - d / ln 2`.
pub fn log_factorial_bound(d: usize) -> f64 {
    let d1 = (d + 1) as f64;
    d1 * libm::log2(d1) - d as f64 / core::f64::consts::LN_2
}

/// `2^{m-2}`, the conjectured worst-case diameter of an `m`-point set.
pub fn konyagin_lev_bound(m: usize) -> f64 {
    libm::exp2(m as f64 - 2.0)
}
