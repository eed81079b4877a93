use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::rho::{autocorr_table, minor_lambda_min, toeplitz_minor};
use super::{binomial, combinations, dense_to_seq, support_vec, BoundKind, BoundResult, EXHAUSTIVE_BUDGET};
use crate::numerics::{hermitian_smallest_eigenpair, DEFAULT_TOL};
use crate::{Error, Result};

const REFINE_TOL: f64 = 1e-8;
const KEEP_PER_PAIR: usize = 2;

/// `y` on its support: magnitudes `r` and phases `theta` (with `theta_0 = 0`).
#[derive(Clone, Debug)]
struct Point {
    r: Vec<f64>,
    theta: Vec<f64>,
}

impl Point {
    fn values(&self) -> Vec<Complex64> {
        let total: f64 = self.r.iter().sum();
        self.r
            .iter()
            .zip(&self.theta)
            .map(|(&r, &t)| Complex64::from_polar(r / total, t))
            .collect()
    }
}

struct Problem<'a> {
    n: usize,
    tx: &'a [usize],
    ty: &'a [usize],
}

impl Problem<'_> {
    /// `lambda_min(B_y[T_x]) / ||y||_1^2`.
    fn objective(&self, p: &Point) -> f64 {
        let total: f64 = p.r.iter().sum();
        if !(total > 0.0) || p.r.iter().any(|&r| r < 0.0) {
            return f64::INFINITY;
        }
        let y = support_vec(self.ty, &p.values(), self.n);
        let b = autocorr_table(&y, self.ty);
        minor_lambda_min(&b, self.n, self.tx)
    }

    /// Pattern search on each coordinate, halving the step until it drops below
    /// [`REFINE_TOL`].
    fn refine(&self, mut p: Point, mut value: f64, grid: usize, iterations: &mut usize) -> (Point, f64) {
        let f = p.r.len();
        let mut h_r = 1.0 / grid as f64;
        let mut h_t = 2.0 * PI / grid as f64;
        while h_r > REFINE_TOL || h_t > REFINE_TOL {
            let mut improved = true;
            while improved {
                improved = false;
                for coord in 0..(2 * f - 1) {
                    for sign in [1.0, -1.0] {
                        let mut q = p.clone();
                        if coord < f {
                            q.r[coord] = (q.r[coord] + sign * h_r).max(0.0);
                            let total: f64 = q.r.iter().sum();
                            if total > 0.0 {
                                q.r.iter_mut().for_each(|r| *r /= total);
                            }
                        } else {
                            q.theta[coord - f + 1] += sign * h_t;
                        }
                        *iterations += 1;
                        let v = self.objective(&q);
                        if v < value {
                            p = q;
                            value = v;
                            improved = true;
                        }
                    }
                }
            }
            h_r *= 0.5;
            h_t *= 0.5;
        }
        (p, value)
    }
}

/// Compositions of `total` into `parts` nonnegative parts with a positive first part.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=rem {
            cur.push(v);
            rec(rem - v, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for first in 1..=total {
        let mut cur = vec![first];
        if parts == 1 {
            if first == total {
                out.push(cur);
            }
            continue;
        }
        rec(total - first, parts - 1, &mut cur, &mut out);
    }
    out
}

/// Phase grids: all `(f-1)`-tuples of multiples of `2 pi / grid`.
fn phase_grid(grid: usize, free: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0]];
    for _ in 0..free {
        let mut next = Vec::with_capacity(out.len() * grid);
        for t in &out {
            for j in 0..grid {
                let mut u = t.clone();
                u.push(2.0 * PI * j as f64 / grid as f64);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn validate(s: usize, f: usize, n: usize, grid: usize) -> Result<()> {
    if s == 0 || f == 0 || s > n || f > n {
        return Err(Error::InvalidArgument(format!("need 1 <= s, f <= n, got s = {s}, f = {f}, n = {n}")));
    }
    if grid < 2 {
        return Err(Error::InvalidArgument("grid must be at least 2".into()));
    }
    let needed = binomial(n, s).saturating_mul(binomial(n, f));
    if needed > EXHAUSTIVE_BUDGET {
        return Err(Error::Budget {
            needed,
            limit: EXHAUSTIVE_BUDGET,
            advice: "reduce n, s or f so that C(n, s) * C(n, f) <= 1e4, or use the alternating method",
        });
    }
    // for s = 1 the objective ignores phases, so only magnitudes are gridded
    if f > 3 && s > 1 {
        return Err(Error::Budget {
            needed: f as u128,
            limit: 3,
            advice: "the phase grid grows like grid^(f-1); use f <= 3 or the alternating method",
        });
    }
    Ok(())
}

/// Sharp `alpha(s, f, n)` by exhaustive search over support pairs.
///
/// Both supports are translated to contain 0. For every pair `(T_x, T_y)` the
/// outer minimization over `y` on the l1-sphere runs over a grid (magnitudes
/// `k / grid`, phases `2 pi j / grid`), the best grid points are refined by
/// coordinate pattern search, and the inner minimization over `x` is the
/// smallest eigenvalue of the Gram minor.
pub fn sharp_alpha_exhaustive(s: usize, f: usize, n: usize, grid: usize) -> Result<BoundResult> {
    validate(s, f, n, grid)?;
    let tx_all: Vec<Vec<usize>> = combinations(n - 1, s - 1)
        .map(|c| core::iter::once(0).chain(c.into_iter().map(|i| i + 1)).collect())
        .collect();
    let ty_all: Vec<Vec<usize>> = combinations(n - 1, f - 1)
        .map(|c| core::iter::once(0).chain(c.into_iter().map(|i| i + 1)).collect())
        .collect();
    let mags = compositions(grid, f);
    let phases = if s == 1 { vec![vec![0.0; f]] } else { phase_grid(grid, f - 1) };

    let mut iterations = 0usize;
    // candidates[ix][iy]: best grid points, ascending by value
    let mut candidates: Vec<Vec<Vec<(f64, Point)>>> = vec![vec![Vec::new(); ty_all.len()]; tx_all.len()];
    for (iy, ty) in ty_all.iter().enumerate() {
        for m in &mags {
            for th in &phases {
                let p = Point { r: m.iter().map(|&c| c as f64 / grid as f64).collect(), theta: th.clone() };
                let y = support_vec(ty, &p.values(), n);
                let b = autocorr_table(&y, ty);
                for (ix, tx) in tx_all.iter().enumerate() {
                    iterations += 1;
                    let v = minor_lambda_min(&b, n, tx);
                    let list = &mut candidates[ix][iy];
                    if list.len() < KEEP_PER_PAIR || v < list[list.len() - 1].0 {
                        let pos = list.iter().position(|(w, _)| v < *w).unwrap_or(list.len());
                        list.insert(pos, (v, p.clone()));
                        list.truncate(KEEP_PER_PAIR);
                    }
                }
            }
        }
    }

    let mut best: Option<(f64, usize, usize, Point)> = None;
    for (ix, tx) in tx_all.iter().enumerate() {
        for (iy, ty) in ty_all.iter().enumerate() {
            let problem = Problem { n, tx, ty };
            for (v, p) in candidates[ix][iy].drain(..) {
                let (p, v) = if f == 1 {
                    (p, v)
                } else {
                    problem.refine(p, v, grid, &mut iterations)
                };
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, ix, iy, p));
                }
            }
        }
    }
    let (value, ix, iy, p) = best.expect("at least one support pair");
    let (tx, ty) = (&tx_all[ix], &ty_all[iy]);
    let y = support_vec(ty, &p.values(), n);
    let b = autocorr_table(&y, ty);
    let (_, xv) = hermitian_smallest_eigenpair(&toeplitz_minor(&b, n, tx), DEFAULT_TOL)?;
    let x = support_vec(tx, &xv, n);
    let value = value.max(0.0);
    Ok(BoundResult {
        s,
        f,
        n: Some(n as u64),
        log2_n: libm::log2(n as f64),
        log2_alpha: (0.5 * libm::log2(value)).min(0.0),
        kind: BoundKind::SharpExhaustive,
        witness_x: Some(dense_to_seq(&x)),
        witness_y: Some(dense_to_seq(&y)),
        iterations,
        tolerance: REFINE_TOL,
        upper_bound: false,
        analytic: None,
    })
}
