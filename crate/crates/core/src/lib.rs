//! Stability (reverse-Young) lower bounds for sparse convolutions.
//!
//! For finitely supported sequences on a torsion-free discrete Abelian group the
//! convolution of an `s`-sparse `x` with an `f`-sparse `y` can never cancel
//! completely, and there is a constant `alpha(s, f) > 0` with
//!
//! ```text
//! alpha(s, f) * ||x||_2 * ||y||_1 <= ||x * y||_2 <= ||x||_2 * ||y||_1
//! ```
//!
//! This crate provides the pieces needed to compute, verify and probe that
//! constant:
//!
//! * [`numerics`]: small dense complex matrices, a cyclic Jacobi eigensolver and
//!   double-double arithmetic with exact expansion sums.
//! * [`seq`]: sparse sequences on `Z`, `Z^d` and `Z_N`, convolution, norms and the
//!   shift/Gram matrices that turn `||x * y||_2^2` into a quadratic form.
//! * [`addset`]: sumsets, order-2 Freiman maps and the compression of sparse
//!   convolutions onto a short integer interval.
//! * [`stability`]: the sharp constant by exhaustive or alternating minimization,
//!   the closed-form lower bound and the Vandermonde machinery behind it.
//! * [`gauss`]: the Gaussian / modulated-Gaussian cancellation experiment.
//!
//! The crate is `no_std` (it needs `alloc`); enable the `std` feature to get
//! `std::error::Error` for [`Error`].

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod addset;
mod error;
pub mod gauss;
pub mod numerics;
pub mod seq;
pub mod stability;

pub use error::{Error, Result};
pub use num_complex::Complex64;
