//! Truncated Gaussians `g(k) = e^{-k^2/sigma}` on `|k| <= (s-1)/2` and their
//! alternating modulation `Mg(k) = (-1)^k g(k)`, whose convolution cancels
//! almost completely.

use alloc::format;
use alloc::vec::Vec;

use crate::numerics::{ExactSum, ExtendedReal};
use crate::seq::{convolve, norm, SparseSeq};
use crate::{Error, Result};

/// Predicted ratios below this switch the computation to double-double.
pub const EXTENDED_THRESHOLD: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct GaussianPair {
    pub s: usize,
    pub sigma: f64,
    pub half_width: usize,
    pub g: SparseSeq,
    pub mg: SparseSeq,
}

fn check_s(s: usize) -> Result<()> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("s must be odd and at least 3, got {s}")));
    }
    Ok(())
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    Ok(())
}

fn sign(k: i64) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn make_pair(s: usize, sigma: f64) -> Result<GaussianPair> {
    check_s(s)?;
    check_sigma(sigma)?;
    let h = (s / 2) as i64;
    let g: Vec<f64> = (-h..=h).map(|k| libm::exp(-((k * k) as f64) / sigma)).collect();
    let mg: Vec<f64> = (-h..=h).zip(&g).map(|(k, v)| sign(k) * v).collect();
    Ok(GaussianPair {
        s,
        sigma,
        half_width: h as usize,
        g: SparseSeq::from_real(-h, &g)?,
        mg: SparseSeq::from_real(-h, &mg)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Native,
    Extended,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Native => "native",
            Precision::Extended => "extended",
        }
    }
}

/// One `(s, sigma)` cell of the experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub s: usize,
    pub sigma: f64,
    /// `ln(||Mg * g||_2 / (||Mg||_2 ||g||_2))`.
    pub log_ratio: f64,
    /// `ln(||Mg * g||_2 / (||Mg||_2 ||g||_1))`.
    pub log_ratio_l1: f64,
    pub precision_used: Precision,
}

impl SweepRecord {
    pub fn log2_ratio(&self) -> f64 {
        self.log_ratio / core::f64::consts::LN_2
    }
}

/// `g(k)` for `k = 0..=h`, as double-double values.
fn gaussian_values(h: usize, sigma: f64, precision: Precision) -> Vec<ExtendedReal> {
    let sig = ExtendedReal::from_f64(sigma);
    (0..=h as i64)
        .map(|k| match precision {
            Precision::Native => ExtendedReal::from_f64(libm::exp(-((k * k) as f64) / sigma)),
            Precision::Extended => (-(ExtendedReal::from_f64((k * k) as f64) / sig)).exp(),
        })
        .collect()
}

/// Squared norms from the folded double sums, in double-double:
/// `||Mg * g||_2^2 = 2 sum_{l=1}^{2h} |c_l|^2 + c_0^2` with
/// `c_l = sum_{k=l-h}^{h} Mg(k) g(l-k)`, and `||g||_2^2`, `||g||_1`.
fn folded_sums(h: usize, sigma: f64, precision: Precision) -> (ExtendedReal, ExtendedReal, ExtendedReal) {
    let g = gaussian_values(h, sigma, precision);
    let gk = |k: i64| g[k.unsigned_abs() as usize];
    let hi = h as i64;
    let coefficient = |l: i64| -> ExtendedReal {
        let mut acc = ExactSum::new();
        for k in (l - hi)..=hi {
            let t = gk(k) * gk(l - k);
            acc.add_extended(if k % 2 == 0 { t } else { -t });
        }
        acc.value()
    };
    let mut conv = ExactSum::new();
    for l in 1..=2 * hi {
        conv.add_extended(coefficient(l).square().ldexp(1));
    }
    conv.add_extended(coefficient(0).square());

    let mut l2 = ExactSum::new();
    let mut l1 = ExactSum::new();
    l2.add(1.0);
    l1.add(1.0);
    for k in 1..=hi {
        l2.add_extended(gk(k).square().ldexp(1));
        l1.add_extended(gk(k).ldexp(1));
    }
    (conv.value(), l2.value(), l1.value())
}

/// The precision `gaussian_ratio` picks: extended when `e^{-s/2} < 1e-7`.
pub fn predicted_precision(s: usize) -> Precision {
    if libm::exp(-(s as f64) / 2.0) < EXTENDED_THRESHOLD {
        Precision::Extended
    } else {
        Precision::Native
    }
}

pub fn gaussian_ratio_with(pair: &GaussianPair, precision: Precision) -> SweepRecord {
    let (conv, l2, l1) = folded_sums(pair.half_width, pair.sigma, precision);
    // ratio^2 = ||Mg * g||^2 / ||g||_2^4; the l1 variant divides by ||g||_2^2 ||g||_1^2
    let log_ratio = 0.5 * (conv / l2.square()).ln().to_f64();
    let log_ratio_l1 = 0.5 * (conv / (l2 * l1.square())).ln().to_f64();
    SweepRecord { s: pair.s, sigma: pair.sigma, log_ratio, log_ratio_l1, precision_used: precision }
}

/// Norm ratio from the explicit folded sums, escalating precision when needed.
pub fn gaussian_ratio(pair: &GaussianPair) -> SweepRecord {
    gaussian_ratio_with(pair, predicted_precision(pair.s))
}

/// `||x * y||_2 / (||x||_2 ||y||_2)` through the generic convolution and norms.
pub fn ratio_of_sequences(x: &SparseSeq, y: &SparseSeq) -> Result<f64> {
    Ok(norm(&convolve(x, y)?, 2.0) / (norm(x, 2.0) * norm(y, 2.0)))
}

/// Same ratio as [`gaussian_ratio`], via [`convolve`] and [`norm`].
pub fn gaussian_ratio_pipeline(pair: &GaussianPair) -> Result<f64> {
    ratio_of_sequences(&pair.mg, &pair.g)
}

/// Full Cartesian sweep, `s`-major.
pub fn sweep(s_values: &[usize], sigma_grid: &[f64]) -> Result<Vec<SweepRecord>> {
    if s_values.is_empty() || sigma_grid.is_empty() {
        return Err(Error::InvalidArgument("sweep grids must be nonempty".into()));
    }
    let mut out = Vec::with_capacity(s_values.len() * sigma_grid.len());
    for &s in s_values {
        for &sigma in sigma_grid {
            out.push(gaussian_ratio(&make_pair(s, sigma)?));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimalSigma {
    pub sigma_star: f64,
    pub log_ratio_star: f64,
}

/// Grid step used before golden-section refinement.
pub const SIGMA_GRID_STEP: f64 = 0.5;

/// Minimizes the log ratio over `sigma in [lo, hi]`: a grid scan with step 0.5,
/// then golden-section search within one step of the best grid point.
pub fn optimal_sigma(s: usize, lo: f64, hi: f64, tol: f64) -> Result<OptimalSigma> {
    check_s(s)?;
    if !(lo > 0.0 && hi > lo) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("need 0 < lo < hi and tol > 0, got [{lo}, {hi}], {tol}")));
    }
    let eval = |sigma: f64| -> Result<f64> { Ok(gaussian_ratio(&make_pair(s, sigma)?).log_ratio) };
    let steps = libm::floor((hi - lo) / SIGMA_GRID_STEP + 1e-9) as usize;
    let mut best = (lo, eval(lo)?);
    for i in 1..=steps {
        let sigma = lo + i as f64 * SIGMA_GRID_STEP;
        let v = eval(sigma)?;
        if v < best.1 {
            best = (sigma, v);
        }
    }
    if hi > lo + steps as f64 * SIGMA_GRID_STEP {
        let v = eval(hi)?;
        if v < best.1 {
            best = (hi, v);
        }
    }
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut a = (best.0 - SIGMA_GRID_STEP).max(lo);
    let mut b = (best.0 + SIGMA_GRID_STEP).min(hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
        }
    }
    let mid = 0.5 * (a + b);
    let fm = eval(mid)?;
    let (sigma_star, log_ratio_star) = [(mid, fm), (c, fc), (d, fd), best]
        .into_iter()
        .fold((mid, fm), |acc, p| if p.1 < acc.1 { p } else { acc });
    Ok(OptimalSigma { sigma_star, log_ratio_star })
}

#[cfg(test)]
mod tests;
