//! Finitely supported sequences on `Z`, `Z^d` and `Z_N`.

mod fourier;
mod gram;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numerics::ExactSum;
use crate::{Error, Result};

pub use fourier::{bernstein_check, trig_poly, BernsteinReport};
pub use gram::{autocorrelation, shift_matrix, toeplitz_gram, ShiftMatrix, ToeplitzGram};
pub(crate) use gram::gram_of_dense;

/// A group element as an integer tuple.
pub type Point = Vec<i64>;

/// The ambient group of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    Integers,
    Lattice(usize),
    Cyclic(u64),
}

impl GroupDescriptor {
    pub fn validate(self) -> Result<Self> {
        match self {
            GroupDescriptor::Lattice(0) => {
                Err(Error::InvalidArgument("lattice rank must be at least 1".into()))
            }
            GroupDescriptor::Cyclic(0) => {
                Err(Error::InvalidArgument("cyclic order must be at least 1".into()))
            }
            g => Ok(g),
        }
    }

    /// Length of the integer tuple representing a point.
    pub fn arity(self) -> usize {
        match self {
            GroupDescriptor::Lattice(d) => d,
            _ => 1,
        }
    }

    pub fn is_torsion_free(self) -> bool {
        !matches!(self, GroupDescriptor::Cyclic(_))
    }

    /// Rejects cyclic groups.
    pub fn require_torsion_free(self) -> Result<()> {
        match self {
            GroupDescriptor::Cyclic(n) => Err(Error::UnsupportedGroup(format!(
                "Z_{n} has torsion; bounds are only defined on torsion-free groups"
            ))),
            _ => Ok(()),
        }
    }

    pub fn require_integers(self) -> Result<()> {
        match self {
            GroupDescriptor::Integers => Ok(()),
            g => Err(Error::UnsupportedGroup(format!("{g:?}: operation needs Z"))),
        }
    }

    /// Checks arity and, for `Z_N`, reduces coordinates into `[0, N)`.
    pub fn normalize(self, mut p: Point) -> Result<Point> {
        if p.len() != self.arity() {
            return Err(Error::InvalidPoint(format!(
                "point {p:?} has arity {}, group {self:?} needs {}",
                p.len(),
                self.arity()
            )));
        }
        if let GroupDescriptor::Cyclic(n) = self {
            p[0] = reduce(p[0], n);
        }
        Ok(p)
    }

    /// `a + b` in the group.
    pub fn add(self, a: &[i64], b: &[i64]) -> Point {
        match self {
            GroupDescriptor::Cyclic(n) => vec![reduce(a[0] + b[0], n)],
            _ => a.iter().zip(b).map(|(u, v)| u + v).collect(),
        }
    }

    /// `a - b` in the group.
    pub fn sub(self, a: &[i64], b: &[i64]) -> Point {
        match self {
            GroupDescriptor::Cyclic(n) => vec![reduce(a[0] - b[0], n)],
            _ => a.iter().zip(b).map(|(u, v)| u - v).collect(),
        }
    }
}

fn reduce(v: i64, n: u64) -> i64 {
    v.rem_euclid(n as i64)
}

/// Finitely supported complex sequence. Zero amplitudes are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSeq {
    group: GroupDescriptor,
    entries: BTreeMap<Point, Complex64>,
}

impl SparseSeq {
    pub fn zero(group: GroupDescriptor) -> Result<Self> {
        Ok(SparseSeq { group: group.validate()?, entries: BTreeMap::new() })
    }

    /// Builds a sequence; duplicate points are an error, zero amplitudes are dropped.
    pub fn from_entries<I>(group: GroupDescriptor, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, Complex64)>,
    {
        let group = group.validate()?;
        let mut map = BTreeMap::new();
        for (p, v) in entries {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidArgument(format!("non-finite amplitude at {p:?}")));
            }
            let p = group.normalize(p)?;
            if map.contains_key(&p) {
                return Err(Error::InvalidPoint(format!("duplicate point {p:?}")));
            }
            map.insert(p, v);
        }
        map.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        Ok(SparseSeq { group, entries: map })
    }

    /// Unit impulse at `point`.
    pub fn delta(group: GroupDescriptor, point: Point) -> Result<Self> {
        Self::from_entries(group, [(point, Complex64::new(1.0, 0.0))])
    }

    /// Sequence on `Z` with `values[k]` at `start + k`.
    pub fn from_dense(start: i64, values: &[Complex64]) -> Result<Self> {
        Self::from_entries(
            GroupDescriptor::Integers,
            values.iter().enumerate().map(|(k, &v)| (vec![start + k as i64], v)),
        )
    }

    /// Real-valued variant of [`SparseSeq::from_dense`].
    pub fn from_real(start: i64, values: &[f64]) -> Result<Self> {
        let v: Vec<Complex64> = values.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Self::from_dense(start, &v)
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: &[i64]) -> Complex64 {
        self.entries.get(p).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Entries in ascending point order.
    pub fn iter(&self) -> impl Iterator<Item = (&Point, &Complex64)> {
        self.entries.iter()
    }

    pub fn support(&self) -> Vec<Point> {
        self.entries.keys().cloned().collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Values on `[0, n)` for a sequence on `Z`.
    pub fn to_dense(&self, n: usize) -> Result<Vec<Complex64>> {
        self.group.require_integers()?;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (p, v) in &self.entries {
            let k = p[0];
            if k < 0 || k >= n as i64 {
                return Err(Error::SupportOutOfRange { n });
            }
            out[k as usize] = *v;
        }
        Ok(out)
    }

    pub fn map_values(&self, mut f: impl FnMut(Complex64) -> Complex64) -> Self {
        let entries = self.entries.iter().map(|(p, v)| (p.clone(), f(*v)));
        let mut out = SparseSeq { group: self.group, entries: entries.collect() };
        out.entries.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_values(|v| v * c)
    }

    /// Shifts the support by `offset`.
    pub fn translate(&self, offset: &[i64]) -> Result<Self> {
        if offset.len() != self.group.arity() {
            return Err(Error::InvalidPoint(format!("offset {offset:?} has wrong arity")));
        }
        let group = self.group;
        let entries = self.entries.iter().map(|(p, v)| (group.add(p, offset), *v));
        Ok(SparseSeq { group, entries: entries.collect() })
    }

    fn combine(&self, other: &Self, sign: f64) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut entries = self.entries.clone();
        for (p, v) in &other.entries {
            *entries.entry(p.clone()).or_insert(Complex64::new(0.0, 0.0)) += v * sign;
        }
        entries.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        Ok(SparseSeq { group: self.group, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }
}

/// `(x * y)(g) = sum_h x(h) y(g - h)`, accumulated exactly and rounded once.
///
/// Amplitudes below `1e-30 * max|x| * max|y|` are dropped.
pub fn convolve(x: &SparseSeq, y: &SparseSeq) -> Result<SparseSeq> {
    if x.group != y.group {
        return Err(Error::GroupMismatch);
    }
    let group = x.group;
    let mut acc: BTreeMap<Point, (ExactSum, ExactSum)> = BTreeMap::new();
    for (h, a) in &x.entries {
        for (k, b) in &y.entries {
            let slot = acc.entry(group.add(h, k)).or_default();
            slot.0.add_product(a.re, b.re);
            slot.0.add_product(-a.im, b.im);
            slot.1.add_product(a.re, b.im);
            slot.1.add_product(a.im, b.re);
        }
    }
    let threshold = 1e-30 * x.max_abs() * y.max_abs();
    let entries = acc
        .into_iter()
        .map(|(p, (re, im))| (p, Complex64::new(re.value().to_f64(), im.value().to_f64())))
        .filter(|(_, v)| v.norm() > threshold)
        .collect();
    Ok(SparseSeq { group, entries })
}

/// The `l^p` norm; `p = f64::INFINITY` gives the max norm. Returns NaN for `p <= 0`.
pub fn norm(x: &SparseSeq, p: f64) -> f64 {
    if !(p > 0.0) {
        return f64::NAN;
    }
    let m = x.max_abs();
    if m == 0.0 {
        return 0.0;
    }
    if p == f64::INFINITY {
        return m;
    }
    let mut sum = ExactSum::new();
    for v in x.entries.values() {
        let t = v.norm() / m;
        sum.add(if p == 1.0 {
            t
        } else if p == 2.0 {
            t * t
        } else {
            libm::pow(t, p)
        });
    }
    let s = sum.value().to_f64();
    m * if p == 1.0 {
        s
    } else if p == 2.0 {
        libm::sqrt(s)
    } else {
        libm::pow(s, 1.0 / p)
    }
}

/// Both sides of Young's inequality `||x * y||_r <= ||x||_p ||y||_q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YoungReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn young_check(x: &SparseSeq, y: &SparseSeq, p: f64, q: f64, r: f64) -> Result<YoungReport> {
    let inv = |e: f64| if e == f64::INFINITY { 0.0 } else { 1.0 / e };
    let in_range = |e: f64| e >= 1.0;
    if !(in_range(p) && in_range(q) && in_range(r)) || (inv(p) + inv(q) - 1.0 - inv(r)).abs() > 1e-9 {
        return Err(Error::YoungExponents { p, q, r });
    }
    let lhs = norm(&convolve(x, y)?, r);
    let rhs = norm(x, p) * norm(y, q);
    Ok(YoungReport { lhs, rhs, holds: lhs <= rhs * (1.0 + 1e-12) })
}
