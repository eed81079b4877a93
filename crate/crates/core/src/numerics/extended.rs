//! Double-double arithmetic and exact floating-point summation.
//!
//! [`ExtendedReal`] is an unevaluated sum `hi + lo` of two doubles with
//! `|lo| <= ulp(hi) / 2`, giving roughly 32 significant decimal digits.
//! [`ExactSum`] keeps a nonoverlapping expansion (a list of doubles whose sum
//! is the exact value) so that long alternating sums are rounded only once.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
const SPLIT_THRESHOLD: f64 = 6.696_928_794_914_17e299; // 2^996

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

// requires |a| >= |b|
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    if a.abs() > SPLIT_THRESHOLD {
        let a = a * 3.725_290_298_461_914e-9; // 2^-28
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        (hi * 268_435_456.0, lo * 268_435_456.0)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

/// `a * b = p + e` exactly (Dekker), barring overflow or underflow.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

/// A real number carried as `hi + lo` with about 106 significant bits.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct ExtendedReal {
    hi: f64,
    lo: f64,
}

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal { hi: 0.0, lo: 0.0 };
    pub const ONE: ExtendedReal = ExtendedReal { hi: 1.0, lo: 0.0 };
    pub const LN2: ExtendedReal = ExtendedReal {
        hi: core::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        ExtendedReal { hi: x, lo: 0.0 }
    }

    /// Builds a value from two components, renormalizing them.
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        ExtendedReal { hi, lo }
    }

    /// Exact product of two doubles.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        ExtendedReal { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Nearest double.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplication by a power of two, exact.
    pub fn ldexp(self, exp: i32) -> Self {
        let scale = libm::ldexp(1.0, exp);
        ExtendedReal { hi: self.hi * scale, lo: self.lo * scale }
    }

    pub fn square(self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, self.hi);
        p2 += 2.0 * self.hi * self.lo;
        p2 += self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        ExtendedReal { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 += self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        ExtendedReal { hi, lo }
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::ZERO } else { Self::from_f64(f64::NAN) };
        }
        let y = libm::sqrt(self.hi);
        let residual = self - Self::product(y, y);
        Self::from_f64(y) + Self::from_f64(residual.hi / (2.0 * y))
    }

    /// Natural exponential.
    pub fn exp(self) -> Self {
        const HALVINGS: i32 = 10;
        if self.hi > 709.7 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        if self.hi == 0.0 {
            return Self::ONE;
        }
        let m = libm::floor(self.hi / Self::LN2.hi + 0.5);
        let r = (self - Self::LN2.mul_f64(m)).ldexp(-HALVINGS);
        // e^r - 1 by Taylor series, |r| < 3.4e-4
        let mut sum = r;
        let mut term = r;
        let mut k = 2.0;
        loop {
            term = (term * r) / Self::from_f64(k);
            sum = sum + term;
            if term.hi.abs() <= 1e-36 * sum.hi.abs() || k > 30.0 {
                break;
            }
            k += 1.0;
        }
        for _ in 0..HALVINGS {
            sum = sum.ldexp(1) + sum.square();
        }
        (sum + Self::ONE).ldexp(m as i32)
    }

    /// Natural logarithm, by Newton iteration on `exp`.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        let mut y = Self::from_f64(libm::log(self.hi));
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::ONE;
        }
        y
    }

    pub fn log2(self) -> Self {
        self.ln() / Self::LN2
    }

    /// `2^self`.
    pub fn exp2(self) -> Self {
        (self * Self::LN2).exp()
    }

    /// Largest integer not above `self`, as an extended value.
    pub fn floor(self) -> Self {
        let hi = libm::floor(self.hi);
        if hi == self.hi {
            let lo = libm::floor(self.lo);
            let (hi, lo) = quick_two_sum(hi, lo);
            ExtendedReal { hi, lo }
        } else {
            ExtendedReal { hi, lo: 0.0 }
        }
    }
}

impl fmt::Debug for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtendedReal({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for ExtendedReal {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        ExtendedReal { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for ExtendedReal {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        ExtendedReal { hi, lo }
    }
}

impl Sub for ExtendedReal {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for ExtendedReal {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        ExtendedReal { hi, lo }
    }
}

impl Div for ExtendedReal {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        ExtendedReal { hi, lo } + Self::from_f64(q3)
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

/// Exact accumulator: the running sum is held as a nonoverlapping expansion.
#[derive(Clone, Debug, Default)]
pub struct ExactSum {
    // increasing magnitude, no zeros
    parts: Vec<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        if x == 0.0 {
            return;
        }
        let mut q = x;
        let mut write = 0;
        for i in 0..self.parts.len() {
            let (s, e) = two_sum(q, self.parts[i]);
            q = s;
            if e != 0.0 {
                self.parts[write] = e;
                write += 1;
            }
        }
        self.parts.truncate(write);
        if q != 0.0 {
            self.parts.push(q);
        }
    }

    pub fn add_extended(&mut self, x: ExtendedReal) {
        self.add(x.lo);
        self.add(x.hi);
    }

    /// Adds `a * b` exactly.
    pub fn add_product(&mut self, a: f64, b: f64) {
        let (p, e) = two_prod(a, b);
        self.add(e);
        self.add(p);
    }

    /// Number of expansion components currently held.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The exact sum rounded to double-double.
    pub fn value(&self) -> ExtendedReal {
        self.parts
            .iter()
            .fold(ExtendedReal::ZERO, |acc, &p| acc + ExtendedReal::from_f64(p))
    }
}

/// Sum of doubles, exact up to the final rounding to double-double.
pub fn extended_sum(terms: &[f64]) -> ExtendedReal {
    let mut acc = ExactSum::new();
    for &t in terms {
        acc.add(t);
    }
    acc.value()
}

/// Sum of double-double values, exact up to the final rounding.
pub fn extended_sum_of(terms: &[ExtendedReal]) -> ExtendedReal {
    let mut acc = ExactSum::new();
    for &t in terms {
        acc.add_extended(t);
    }
    acc.value()
}
