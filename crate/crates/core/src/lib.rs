//! Gate-level simulation of a quantum computer running the single-particle
//! Schrödinger equation on an `n`-qubit register.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature. Everything here is pure computation; file formats, the command
//! line runner and the dense validation oracles live in the `qschrod` crate.
//!
//! Qubit `j` is bit `j` of the amplitude index, so qubit `n - 1` is the most
//! significant one.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod diagonal;
mod error;
mod kernel;
pub mod measurement;
pub mod preparation;
pub mod qft;
pub mod schrodinger;
pub mod statevector;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use statevector::{inner_product, Circuit, Control, GateOp, StateVector};

use core::f64::consts::TAU;

/// Reduces an angle to `(-π, π]`.
pub(crate) fn wrap_phase(phase: f64) -> f64 {
    let mut r = libm::remainder(phase, TAU);
    if r <= -core::f64::consts::PI {
        r += TAU;
    }
    r
}

/// `e^{iθ}`.
#[inline]
pub(crate) fn cis(theta: f64) -> C64 {
    let (s, c) = libm::sincos(theta);
    C64::new(c, s)
}
