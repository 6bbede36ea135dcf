//! Exact q-series arithmetic for eta quotients, Jacobi theta functions,
//! Appell-Lerch sums at half periods, and the u-plane constant-term
//! functional that produces the SO(3)-Donaldson invariants of CP².
//!
//! Everything is exact: coefficients are Gaussian rationals over
//! arbitrary-precision integers and every series carries an absolute
//! precision bound. Exponents live on the lattice `(1/24)Z`; one lattice
//! unit is `q^(1/24)`, so `q^1` is [`Q`] units.
//!
//! The crate is `no_std` (it needs `alloc`). IO, the command-line tool and
//! file formats live in the companion `qmock` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod brackets;
pub mod error;
pub mod forms;
pub mod gauss;
pub mod mock;
pub mod moonshine;
pub mod reference;
pub mod series;
pub mod uplane;
pub mod verify;

pub use error::{Error, Result};
pub use gauss::GaussRat;
pub use series::{RealSeries, Series, LATTICE_DEN, Q};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
