use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rho::{autocorr_table, minor_lambda_min, toeplitz_minor};
use super::{binomial, combinations, dense_to_seq, BoundKind, BoundResult};
use crate::numerics::{hermitian_smallest_eigenpair, solve_real, ComplexMatrix, DEFAULT_TOL};
use crate::seq::gram_of_dense;
use crate::{Error, Result};

const MAX_ITER: usize = 500;
const STOP_REL: f64 = 1e-10;
const ENUMERATE_SUPPORTS: u128 = 20_000;
const ENUMERATE_QP: usize = 10;

fn nonzero(v: &[Complex64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] != Complex64::new(0.0, 0.0)).collect()
}

fn l1_normalize(v: &mut [Complex64]) {
    let total: f64 = v.iter().map(|z| z.norm()).sum();
    if total > 0.0 {
        v.iter_mut().for_each(|z| *z /= total);
    }
}

/// Step (a): best `s`-support of `B_y` and the eigenvector on it.
fn best_x(y: &[Complex64], s: usize, hint: &[usize]) -> Result<(f64, Vec<Complex64>)> {
    let n = y.len();
    let b = autocorr_table(y, &nonzero(y));
    let support = if binomial(n, s) <= ENUMERATE_SUPPORTS {
        let mut best = (f64::INFINITY, Vec::new());
        for t in combinations(n, s) {
            let v = minor_lambda_min(&b, n, &t);
            if v < best.0 {
                best = (v, t);
            }
        }
        best.1
    } else {
        greedy_support(&b, n, s, hint)
    };
    let (lambda, vec_t) = hermitian_smallest_eigenpair(&toeplitz_minor(&b, n, &support), DEFAULT_TOL)?;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for (&i, v) in support.iter().zip(vec_t) {
        x[i] = v;
    }
    Ok((lambda, x))
}

/// Single-swap local search over supports, starting from `hint` padded to size `s`.
fn greedy_support(b: &[Complex64], n: usize, s: usize, hint: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = hint.iter().copied().take(s).collect();
    for i in 0..n {
        if t.len() == s {
            break;
        }
        if !t.contains(&i) {
            t.push(i);
        }
    }
    t.sort_unstable();
    let mut value = minor_lambda_min(b, n, &t);
    loop {
        let mut improved = false;
        for pos in 0..s {
            for cand in 0..n {
                if t.contains(&cand) {
                    continue;
                }
                let mut u = t.clone();
                u[pos] = cand;
                u.sort_unstable();
                let v = minor_lambda_min(b, n, &u);
                if v < value {
                    value = v;
                    t = u;
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            return t;
        }
    }
}

/// `min r^T Q r` over the probability simplex, `Q` symmetric positive definite.
pub(crate) fn simplex_qp(q: &[f64], m: usize) -> Vec<f64> {
    let value = |r: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..m {
            for j in 0..m {
                acc += r[i] * q[i * m + j] * r[j];
            }
        }
        acc
    };
    let solve_on = |set: &[usize]| -> Option<Vec<f64>> {
        let k = set.len();
        let sub: Vec<f64> = set.iter().flat_map(|&i| set.iter().map(move |&j| q[i * m + j])).collect();
        let z = solve_real(&sub, &vec![1.0; k], k)?;
        let total: f64 = z.iter().sum();
        if !(total > 0.0) || z.iter().any(|&v| v < -1e-12 * total) {
            return None;
        }
        let mut r = vec![0.0; m];
        for (&i, &v) in set.iter().zip(&z) {
            r[i] = v.max(0.0) / total;
        }
        Some(r)
    };
    if m <= ENUMERATE_QP {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for mask in 1u32..(1 << m) {
            let set: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            if let Some(r) = solve_on(&set) {
                let v = value(&r);
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, r));
                }
            }
        }
        return best.map(|b| b.1).unwrap_or_else(|| vec![1.0 / m as f64; m]);
    }
    // projected gradient, then an exact solve on the detected active set
    let lipschitz = (0..m)
        .map(|i| (0..m).map(|j| q[i * m + j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut r = vec![1.0 / m as f64; m];
    for _ in 0..20_000 {
        let grad: Vec<f64> = (0..m).map(|i| 2.0 * (0..m).map(|j| q[i * m + j] * r[j]).sum::<f64>()).collect();
        let step: Vec<f64> = r.iter().zip(&grad).map(|(a, g)| a - g / (2.0 * lipschitz)).collect();
        let next = project_simplex(&step);
        let change: f64 = next.iter().zip(&r).map(|(a, b)| (a - b).abs()).sum();
        r = next;
        if change < 1e-15 {
            break;
        }
    }
    let active: Vec<usize> = (0..m).filter(|&i| r[i] > 1e-12).collect();
    if let Some(exact) = solve_on(&active) {
        if value(&exact) <= value(&r) {
            return exact;
        }
    }
    r
}

fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut tau = 0.0;
    for (k, &val) in u.iter().enumerate() {
        cum += val;
        let t = (cum - 1.0) / (k + 1) as f64;
        if val - t > 0.0 {
            tau = t;
        }
    }
    v.iter().map(|&a| (a - tau).max(0.0)).collect()
}

/// Minimizes `<y, Q y> / ||y||_1^2` over `y` supported on `t`, starting from `init`.
/// Alternates exact coordinate phase updates with the simplex QP for magnitudes.
fn optimize_on_support(q: &ComplexMatrix, t: &[usize], init: &[Complex64]) -> (f64, Vec<Complex64>) {
    let k = t.len();
    let mut y: Vec<Complex64> = t.iter().map(|&i| init[i]).collect();
    if y.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        y = vec![Complex64::new(1.0 / k as f64, 0.0); k];
    }
    let mut phase: Vec<Complex64> = y
        .iter()
        .map(|z| if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) })
        .collect();
    let mut prev = f64::INFINITY;
    let mut value = f64::INFINITY;
    for _ in 0..200 {
        for a in 0..k {
            let w: Complex64 = (0..k).filter(|&b| b != a).map(|b| q[(t[a], t[b])] * y[b]).sum();
            if w.norm() > 0.0 {
                phase[a] = -w / w.norm();
                y[a] = phase[a] * y[a].norm();
            }
        }
        let qr: Vec<f64> = (0..k)
            .flat_map(|a| {
                let phase = &phase;
                (0..k).map(move |b| (phase[a].conj() * q[(t[a], t[b])] * phase[b]).re)
            })
            .collect();
        let r = simplex_qp(&qr, k);
        for a in 0..k {
            y[a] = phase[a] * r[a];
        }
        value = (0..k)
            .map(|a| (0..k).map(|b| qr[a * k + b] * r[a] * r[b]).sum::<f64>())
            .sum();
        if prev - value <= 1e-14 * value.abs() {
            break;
        }
        prev = value;
    }
    let mut full = vec![Complex64::new(0.0, 0.0); q.rows()];
    for (&i, v) in t.iter().zip(y) {
        full[i] = v;
    }
    (value, full)
}

/// Step (b): best `f`-sparse `y` for the current `x`.
fn best_y(x: &[Complex64], f: usize, y: &[Complex64]) -> (f64, Vec<Complex64>) {
    let n = x.len();
    let q = gram_of_dense(x);
    let mut current = nonzero(y);
    for i in 0..n {
        if current.len() >= f {
            break;
        }
        if !current.contains(&i) {
            current.push(i);
        }
    }
    current.truncate(f);
    current.sort_unstable();
    let mut best = optimize_on_support(&q, &current, y);
    if f < n {
        let all: Vec<usize> = (0..n).collect();
        let (_, relaxed) = optimize_on_support(&q, &all, y);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| relaxed[b].norm().total_cmp(&relaxed[a].norm()).then(a.cmp(&b)));
        let mut t: Vec<usize> = order[..f].to_vec();
        t.sort_unstable();
        if t != current {
            let cand = optimize_on_support(&q, &t, &relaxed);
            if cand.0 < best.0 {
                best = cand;
            }
        }
    }
    best
}

fn gaussian_start(s: usize, n: usize) -> Vec<Complex64> {
    let c = (s as f64 - 1.0) / 2.0;
    let sigma = c.max(0.5);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for (k, v) in y.iter_mut().enumerate().take(s) {
        let d = k as f64 - c;
        *v = Complex64::new(libm::exp(-d * d / sigma), 0.0);
    }
    l1_normalize(&mut y);
    y
}

fn random_start(rng: &mut ChaCha8Rng, f: usize, n: usize) -> Vec<Complex64> {
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    let mut placed = 0;
    while placed < f {
        let i = rng.gen_range(0..n);
        if y[i] == Complex64::new(0.0, 0.0) {
            let r: f64 = rng.gen_range(0.05..1.0);
            let t: f64 = rng.gen_range(0.0..core::f64::consts::TAU);
            y[i] = Complex64::from_polar(r, t);
            placed += 1;
        }
    }
    l1_normalize(&mut y);
    y
}

/// Upper bound on sharp `alpha(s, f, n)` by alternating minimization.
///
/// Each restart alternates (a) the best `s`-sparse `x` for fixed `y` (smallest
/// eigenvalue over supports of `B_y`) and (b) the best `f`-sparse `y` on the
/// l1-sphere for fixed `x`. Deterministic for a given seed.
pub fn sharp_alpha_alternating(s: usize, f: usize, n: usize, restarts: usize, seed: u64) -> Result<BoundResult> {
    if s == 0 || f == 0 || s > n || f > n || n > 32 {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= s, f <= n <= 32, got s = {s}, f = {f}, n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = Vec::new();
    if s == f && s >= 2 {
        starts.push(gaussian_start(s, n));
    }
    for _ in 0..restarts.max(1) {
        starts.push(random_start(&mut rng, f, n));
    }

    let mut iterations = 0usize;
    let mut best: Option<(f64, Vec<Complex64>, Vec<Complex64>)> = None;
    for start in starts {
        let mut y = start;
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        let mut prev = f64::INFINITY;
        for _ in 0..MAX_ITER {
            iterations += 1;
            let hint = nonzero(&x);
            let (_, xn) = best_x(&y, s, &hint)?;
            x = xn;
            let (value, yn) = best_y(&x, f, &y);
            y = yn;
            l1_normalize(&mut y);
            if best.as_ref().is_none_or(|b| value < b.0) {
                best = Some((value, x.clone(), y.clone()));
            }
            if prev - value <= STOP_REL * prev.abs() {
                break;
            }
            prev = value;
        }
    }
    let (value, x, y) = best.expect("at least one start");
    Ok(BoundResult {
        s,
        f,
        n: Some(n as u64),
        log2_n: libm::log2(n as f64),
        log2_alpha: (0.5 * libm::log2(value.max(0.0))).min(0.0),
        kind: BoundKind::SharpAlternating,
        witness_x: Some(dense_to_seq(&x)),
        witness_y: Some(dense_to_seq(&y)),
        iterations,
        tolerance: STOP_REL,
        upper_bound: true,
        analytic: None,
    })
}
