use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

const MAX_DIM: usize = 64;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Column `k` is a unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    if m.rows() > MAX_DIM {
        return Err(Error::Shape(format!("dimension {} exceeds {MAX_DIM}", m.rows())));
    }
    let scale = m.max_abs();
    let deviation = m.hermitian_deviation().unwrap_or(f64::INFINITY);
    if !(deviation <= 1e-12 * scale) {
        return Err(Error::NotHermitian { deviation, scale });
    }
    Ok(())
}

/// Cyclic complex Jacobi. Each rotation first rotates the phase of index `q`
/// so that `a_pq` is real, then applies an ordinary Jacobi rotation.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<Eigen> {
    check_hermitian(m)?;
    let n = m.rows();
    let tol = if tol > 0.0 { tol.min(1e-14) } else { 1e-14 };
    let mut a = m.clone();
    // symmetrize exactly so the iteration sees a true Hermitian matrix
    for r in 0..n {
        a[(r, r)] = Complex64::new(a[(r, r)].re, 0.0);
        for c in (r + 1)..n {
            let v = (a[(r, c)] + a[(c, r)].conj()) * 0.5;
            a[(r, c)] = v;
            a[(c, r)] = v.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n)?;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if r <= 1e-300 || r <= tol * libm::sqrt((app * aqq).abs()) {
                    continue;
                }
                rotated = true;
                let phase = apq / r;
                let unphase = phase.conj();
                for k in 0..n {
                    a[(k, q)] *= unphase;
                    a[(q, k)] *= phase;
                    v[(k, q)] *= unphase;
                }
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.is_finite() {
                    let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                } else {
                    0.0
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let kp = a[(k, p)];
                    let kq = a[(k, q)];
                    a[(k, p)] = kp * c - kq * s;
                    a[(k, q)] = kp * s + kq * c;
                }
                for k in 0..n {
                    let pk = a[(p, k)];
                    let qk = a[(q, k)];
                    a[(p, k)] = pk * c - qk * s;
                    a[(q, k)] = pk * s + qk * c;
                }
                for k in 0..n {
                    let kp = v[(k, p)];
                    let kq = v[(k, q)];
                    v[(k, p)] = kp * c - kq * s;
                    v[(k, q)] = kp * s + kq * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])])?;
    Ok(Eigen { values, vectors })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn hermitian_smallest_eigenvalue(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    Ok(hermitian_eigen(m, tol)?.values[0])
}

/// Smallest eigenvalue together with a unit eigenvector.
pub fn hermitian_smallest_eigenpair(m: &ComplexMatrix, tol: f64) -> Result<(f64, Vec<Complex64>)> {
    let e = hermitian_eigen(m, tol)?;
    Ok((e.values[0], e.vectors.column(0)))
}
