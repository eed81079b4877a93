use alloc::vec::Vec;

use num_complex::Complex64;

use super::SparseSeq;
use crate::numerics::{ComplexMatrix, ExactSum};
use crate::{Error, Result};

/// `b_y(k) = sum_g y(g + k) * conj(y(g))`.
pub fn autocorrelation(y: &SparseSeq, k: i64) -> Result<Complex64> {
    y.group().require_integers()?;
    let mut re = ExactSum::new();
    let mut im = ExactSum::new();
    for (g, a) in y.iter() {
        let b = y.get(&[g[0] + k]);
        if b == Complex64::new(0.0, 0.0) {
            continue;
        }
        // b * conj(a)
        re.add_product(b.re, a.re);
        re.add_product(b.im, a.im);
        im.add_product(b.im, a.re);
        im.add_product(-b.re, a.im);
    }
    Ok(Complex64::new(re.value().to_f64(), im.value().to_f64()))
}

fn dense_in_range(y: &SparseSeq, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    y.to_dense(n)
}

/// The `(2n-1) x n` matrix of translates of `y`, with `S x = x * y`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftMatrix {
    pub n: usize,
    pub matrix: ComplexMatrix,
}

impl ShiftMatrix {
    /// `S x` for `x` given on `[0, n)`.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.matrix.mul_vec(x)
    }
}

/// Entry `(l, k)` is `y(l - k)` for `l in [0, 2n-1)`, `k in [0, n)`.
pub fn shift_matrix(y: &SparseSeq, n: usize) -> Result<ShiftMatrix> {
    let dense = dense_in_range(y, n)?;
    let matrix = ComplexMatrix::from_fn(2 * n - 1, n, |l, k| {
        if l >= k && l - k < n {
            dense[l - k]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })?;
    Ok(ShiftMatrix { n, matrix })
}

/// `B_y = S_y^* S_y`, Hermitian Toeplitz with entry `(l, k) = b_y(l - k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzGram {
    pub n: usize,
    pub matrix: ComplexMatrix,
}

pub fn toeplitz_gram(y: &SparseSeq, n: usize) -> Result<ToeplitzGram> {
    dense_in_range(y, n)?;
    let n_i = n as i64;
    let b: Vec<Complex64> = (-(n_i - 1)..n_i)
        .map(|k| autocorrelation(y, k))
        .collect::<Result<_>>()?;
    let matrix = ComplexMatrix::from_fn(n, n, |l, k| b[(l as i64 - k as i64 + n_i - 1) as usize])?;
    Ok(ToeplitzGram { n, matrix })
}

/// Gram matrix of a dense vector on `[0, n)`.
pub(crate) fn gram_of_dense(y: &[Complex64]) -> ComplexMatrix {
    let n = y.len();
    let b = |d: i64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for g in 0..n as i64 {
            let h = g + d;
            if h >= 0 && h < n as i64 {
                acc += y[h as usize] * y[g as usize].conj();
            }
        }
        acc
    };
    let table: Vec<Complex64> = (-(n as i64) + 1..n as i64).map(b).collect();
    ComplexMatrix::from_fn(n, n, |l, k| table[(l as i64 - k as i64 + n as i64 - 1) as usize])
        .expect("n >= 1")
}
