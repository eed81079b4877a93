use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("matrix must be at least 1x1, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut m = Self::zeros(n, n)?;
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].conj());
            }
        }
        ComplexMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).map(|k| self[(r, k)] * other[(k, c)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect())
    }

    /// `<u, M u>` for square `M`, conjugating the left argument.
    pub fn quadratic_form(&self, u: &[Complex64]) -> Result<Complex64> {
        let mu = self.mul_vec(u)?;
        Ok(u.iter().zip(&mu).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// `max |M - M*|` entrywise; `None` if not square.
    pub fn hermitian_deviation(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        Some(dev)
    }

    /// Principal submatrix on the given (row = column) indices.
    pub fn principal_minor(&self, idx: &[usize]) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.rows || i >= self.cols) {
            return Err(Error::Shape(format!("index {bad} out of range")));
        }
        Self::from_fn(idx.len(), idx.len(), |r, c| self[(idx[r], idx[c])])
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows > 64 {
            return Err(Error::Shape(format!("dimension {} exceeds 64", self.rows)));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap_or(k);
            if a[pivot * n + k].norm() == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if pivot != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot * n + c);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for r in (k + 1)..n {
                let factor = a[r * n + k] / p;
                if factor.norm() == 0.0 {
                    continue;
                }
                for c in k..n {
                    let v = a[k * n + c];
                    a[r * n + c] -= factor * v;
                }
            }
        }
        Ok(det)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// `e^{-2 pi i k / m}`.
pub fn unit_root(k: i64, m: usize) -> Complex64 {
    let m_i = m as i64;
    let k = k.rem_euclid(m_i);
    let angle = -2.0 * PI * (k as f64) / (m as f64);
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// The upper-left `d x n` block of the `m`-point Fourier matrix.
pub fn fourier_minor(d: usize, n: usize, m: usize) -> Result<ComplexMatrix> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("fourier minor needs d, n >= 1, got {d}, {n}")));
    }
    if n > m {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds m = {m}")));
    }
    ComplexMatrix::from_fn(d, n, |l, k| unit_root((l * k) as i64, m))
}

/// Square Vandermonde matrix with nodes `w^{j_c}`, `w = e^{-2 pi i / m}`:
/// entry `(r, c)` is `w^{j_c r}`.
pub fn vandermonde(nodes: &[usize], m: usize) -> Result<ComplexMatrix> {
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("vandermonde needs at least one node".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    for (i, &a) in nodes.iter().enumerate() {
        if a >= m {
            return Err(Error::InvalidArgument(format!("node {a} not in [0, {m})")));
        }
        if nodes[..i].contains(&a) {
            return Err(Error::DuplicateIndex(a as i64));
        }
    }
    let d = nodes.len();
    ComplexMatrix::from_fn(d, d, |r, c| unit_root((nodes[c] * r) as i64, m))
}

/// Solves the real system `a x = b` (`a` is `n x n`, row-major); `None` if singular.
pub(crate) fn solve_real(a: &[f64], b: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let scale = m.iter().fold(0.0_f64, |s, v| s.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for k in 0..n {
        let pivot = (k..n).max_by(|&i, &j| m[i * n + k].abs().total_cmp(&m[j * n + k].abs()))?;
        if m[pivot * n + k].abs() <= 1e-14 * scale {
            return None;
        }
        if pivot != k {
            for c in 0..n {
                m.swap(k * n + c, pivot * n + c);
            }
            x.swap(k, pivot);
        }
        for r in (k + 1)..n {
            let f = m[r * n + k] / m[k * n + k];
            if f == 0.0 {
                continue;
            }
            for c in k..n {
                m[r * n + c] -= f * m[k * n + c];
            }
            x[r] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let mut acc = x[k];
        for c in (k + 1)..n {
            acc -= m[k * n + c] * x[c];
        }
        x[k] = acc / m[k * n + k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // rows are powers, columns are nodes, so det = prod_{l<k} (w^{j_k} - w^{j_l})
    fn product_formula(nodes: &[usize], m: usize) -> Complex64 {
        let mut p = c(1.0, 0.0);
        for l in 0..nodes.len() {
            for k in (l + 1)..nodes.len() {
                p *= unit_root(nodes[k] as i64, m) - unit_root(nodes[l] as i64, m);
            }
        }
        p
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexMatrix::zeros(0, 3).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]).is_err());
        let m = ComplexMatrix::zeros(2, 3).unwrap();
        assert!(matches!(m.determinant(), Err(Error::Shape(_))));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(ComplexMatrix::identity(4).unwrap().determinant().unwrap(), c(1.0, 0.0));
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let d = m.determinant().unwrap();
        assert!((d - c(-2.0, 0.0)).norm() < 1e-14);
        let singular = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(singular.determinant().unwrap().norm() < 1e-14);
    }

    #[test]
    fn vandermonde_matches_product_formula() {
        let v = vandermonde(&[0, 1], 4).unwrap();
        let d = v.determinant().unwrap();
        let p = product_formula(&[0, 1], 4);
        assert!((d - p).norm() <= 1e-12 * p.norm());

        let v = vandermonde(&[0, 1, 2], 6).unwrap();
        let d = v.determinant().unwrap();
        let p = product_formula(&[0, 1, 2], 6);
        assert!((d - p).norm() <= 1e-12 * p.norm());
    }

    #[test]
    fn vandermonde_trivial_cases() {
        let v = vandermonde(&[0], 7).unwrap();
        assert_eq!(v.as_slice(), &[c(1.0, 0.0)]);
        let v = vandermonde(&[0, 1], 2).unwrap();
        let expect = [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)];
        for (a, b) in v.as_slice().iter().zip(expect) {
            assert!((a - b).norm() < 1e-15);
        }
        assert_eq!(vandermonde(&[1, 1], 4), Err(Error::DuplicateIndex(1)));
        assert!(vandermonde(&[4], 4).is_err());
    }

    #[test]
    fn determinant_product_formula_exhaustive() {
        for m in 1..=16usize {
            let max_d = 5.min(m);
            // all subsets of [m] with 1..=5 elements
            for mask in 1u32..(1 << m) {
                if mask.count_ones() as usize > max_d {
                    continue;
                }
                let nodes: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
                let d = vandermonde(&nodes, m).unwrap().determinant().unwrap();
                let p = product_formula(&nodes, m);
                assert!((d - p).norm() <= 1e-10 * p.norm(), "nodes {nodes:?}, m {m}");
            }
        }
    }

    #[test]
    fn fourier_minor_values() {
        let f = fourier_minor(1, 5, 9).unwrap();
        assert!(f.as_slice().iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-15));
        let f = fourier_minor(2, 2, 4).unwrap();
        assert!((f[(1, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((f[(1, 1)] - c(0.0, -1.0)).norm() < 1e-15);
        assert!(fourier_minor(2, 5, 4).is_err());
    }

    #[test]
    fn fourier_minor_gram_matches_direct_sum() {
        // G = F^* F with F the 3x3 block of the 6-point Fourier matrix:
        // G[k][k'] = sum_l e^{2 pi i l (k - k') / 6}
        let f = fourier_minor(3, 3, 6).unwrap();
        let g = f.adjoint().matmul(&f).unwrap();
        for k in 0..3 {
            for kk in 0..3 {
                let mut direct = c(0.0, 0.0);
                for l in 0..3 {
                    let ang = 2.0 * PI * (l as f64) * (k as f64 - kk as f64) / 6.0;
                    direct += c(libm::cos(ang), libm::sin(ang));
                }
                assert!((g[(k, kk)] - direct).norm() < 1e-12);
            }
        }
        assert!((g[(0, 0)] - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn solve_real_small() {
        let x = solve_real(&[2.0, 1.0, 1.0, 3.0], &[3.0, 5.0], 2).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
        assert!(solve_real(&[1.0, 2.0, 2.0, 4.0], &[1.0, 1.0], 2).is_none());
    }
}
