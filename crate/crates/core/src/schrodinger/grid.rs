use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::{Error, Result};

/// `2ⁿ` cells of width `Δ = 2d/2ⁿ` covering `[-d, d]`, sampled at the cell
/// centres `x_k = -d + (k + ½)Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    n_qubits: usize,
    half_width: f64,
    delta: f64,
}

impl SpatialGrid {
    pub fn new(n_qubits: usize, half_width: f64) -> Result<Self> {
        if n_qubits < 1 {
            return Err(Error::NoQubits);
        }
        if n_qubits > 30 {
            return Err(Error::invalid("n_qubits", "at most 30 qubits are supported"));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::invalid("d", "half-width must be positive and finite"));
        }
        let delta = 2.0 * half_width / (1usize << n_qubits) as f64;
        Ok(SpatialGrid { n_qubits, half_width, delta })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Box length `L = 2d`.
    pub fn length(&self) -> f64 {
        2.0 * self.half_width
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn point(&self, k: usize) -> f64 {
        -self.half_width + (k as f64 + 0.5) * self.delta
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.point(k)).collect()
    }

    pub fn momenta(&self, hbar: f64, twist: f64) -> MomentumGrid {
        MomentumGrid { n_qubits: self.n_qubits, length: self.length(), hbar, twist }
    }
}

/// Momentum attached to each QFT output index: `p_l = (2πħ/L) s(l)` with
/// the wrapped index `s(l) = l` below `2^(n-1)` and `l − 2ⁿ` above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumGrid {
    n_qubits: usize,
    length: f64,
    hbar: f64,
    twist: f64,
}

impl MomentumGrid {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Aharonov-Bohm flux φ threading the ring.
    pub fn twist(&self) -> f64 {
        self.twist
    }

    /// Momentum spacing `2πħ/L`.
    pub fn quantum(&self) -> f64 {
        TAU * self.hbar / self.length
    }

    pub fn signed_index(&self, l: usize) -> i64 {
        let half = 1usize << (self.n_qubits - 1);
        if l < half {
            l as i64
        } else {
            l as i64 - (1i64 << self.n_qubits)
        }
    }

    pub fn momentum(&self, l: usize) -> f64 {
        self.quantum() * self.signed_index(l) as f64
    }

    /// Momentum entering the kinetic phase: `p_l + ħφ/L`.
    pub fn kinetic_momentum(&self, l: usize) -> f64 {
        self.momentum(l) + self.hbar * self.twist / self.length
    }

    /// Largest momentum magnitude on the grid, `πħ2ⁿ/L`.
    pub fn max_momentum(&self) -> f64 {
        PI * self.hbar * self.dim() as f64 / self.length
    }
}
