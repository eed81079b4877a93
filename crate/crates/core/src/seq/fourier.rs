use core::f64::consts::PI;

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{autocorrelation, SparseSeq};
use crate::{Error, Result};

/// `p_x(w) = |sum_k x_k e^{-2 pi i k w}|^2`.
pub fn trig_poly(x: &SparseSeq, omega: f64) -> Result<f64> {
    x.group().require_integers()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, v) in x.iter() {
        let ang = -2.0 * PI * (k[0] as f64) * omega;
        acc += v * Complex64::new(libm::cos(ang), libm::sin(ang));
    }
    Ok(acc.norm_sqr())
}

/// Grid estimates for Bernstein's inequality applied to `p_x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernsteinReport {
    pub max_p: f64,
    /// `max |dp/dw|`, derivative in `w` (carries the factor `2 pi`).
    pub max_dp: f64,
    /// `max |dp/dt|` with `t = 2 pi w`.
    pub max_dp_unit: f64,
    /// `2 pi n max_p`, the bound on `max_dp`.
    pub bound: f64,
    /// Relative slack allowed for the grid underestimating `||p||_inf`.
    pub slack: f64,
    pub holds: bool,
    /// Same test in the unit normalization: `max_dp_unit <= n max_p`.
    pub holds_unit: bool,
}

/// Checks `||p_x'||_inf <= 2 pi n ||p_x||_inf` on a uniform grid.
///
/// `p_x(w) = sum_l b_x(l) e^{-2 pi i l w}` is differentiated term-wise.
pub fn bernstein_check(x: &SparseSeq, n: usize, grid: usize) -> Result<BernsteinReport> {
    x.group().require_integers()?;
    if grid < 2048 {
        return Err(Error::InvalidArgument(format!("grid {grid} is below 2048")));
    }
    if x.iter().any(|(k, _)| k[0] < 0 || k[0] > n as i64) {
        return Err(Error::SupportOutOfRange { n: n + 1 });
    }
    let n_i = n as i64;
    let coeffs: Vec<(f64, Complex64)> = (-n_i..=n_i)
        .map(|l| autocorrelation(x, l).map(|b| (l as f64, b)))
        .collect::<Result<_>>()?;
    let mut max_p: f64 = 0.0;
    let mut max_dp: f64 = 0.0;
    for j in 0..grid {
        let w = j as f64 / grid as f64;
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &(l, b) in &coeffs {
            let ang = -2.0 * PI * l * w;
            let e = Complex64::new(libm::cos(ang), libm::sin(ang));
            p += b * e;
            dp += b * e * Complex64::new(0.0, -2.0 * PI * l);
        }
        max_p = max_p.max(p.re.abs());
        max_dp = max_dp.max(dp.re.abs());
    }
    let slack = 2.0 * PI * n as f64 / grid as f64;
    let bound = 2.0 * PI * n as f64 * max_p;
    let factor = (1.0 + slack) * (1.0 + 1e-6);
    let max_dp_unit = max_dp / (2.0 * PI);
    Ok(BernsteinReport {
        max_p,
        max_dp,
        max_dp_unit,
        bound,
        slack,
        holds: max_dp <= bound * factor,
        holds_unit: max_dp_unit <= n as f64 * max_p * factor,
    })
}
