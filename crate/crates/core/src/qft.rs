//! Quantum Fourier transform as an explicit Hadamard / controlled-phase
//! circuit.
//!
//! Forward convention: `f̃(l) = N^{-1/2} Σ_k e^{+2πikl/N} f(k)`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::statevector::{GateOp, StateVector};
use crate::{Error, Result};

/// How the reversed output qubit order of the textbook circuit is undone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reversal {
    /// Bit-reversal permutation of the amplitude indices; no gates.
    #[default]
    IndexRelabel,
    /// Explicit swaps, each emitted as three CNOTs.
    SwapGates,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QftPlan {
    pub n_qubits: usize,
    pub inverse: bool,
    pub reversal: Reversal,
    pub gates: Vec<GateOp>,
}

/// Angle of `R_k`.
pub fn rk_angle(k: u32) -> f64 {
    TAU / libm::ldexp(1.0, k as i32)
}

/// `(hadamards, cphases)` needed by an `n`-qubit QFT.
pub fn gate_count(n: usize) -> (usize, usize) {
    (n, n * n.saturating_sub(1) / 2)
}

pub fn build_qft_plan(n: usize, inverse: bool) -> Result<QftPlan> {
    build_qft_plan_with(n, inverse, Reversal::default())
}

pub fn build_qft_plan_with(n: usize, inverse: bool, reversal: Reversal) -> Result<QftPlan> {
    if n < 1 {
        return Err(Error::NoQubits);
    }
    let mut gates = Vec::with_capacity(n * (n + 1) / 2 + 3 * (n / 2));
    for j in (0..n).rev() {
        gates.push(GateOp::Hadamard(j));
        for k in 2..=(j + 1) {
            gates.push(GateOp::CPhase { control: j + 1 - k, target: j, phase: rk_angle(k as u32) });
        }
    }
    if reversal == Reversal::SwapGates {
        for a in 0..n / 2 {
            let b = n - 1 - a;
            gates.push(GateOp::Cnot { control: a, target: b });
            gates.push(GateOp::Cnot { control: b, target: a });
            gates.push(GateOp::Cnot { control: a, target: b });
        }
    }
    if inverse {
        gates = gates.iter().rev().map(GateOp::inverse).collect();
    }
    Ok(QftPlan { n_qubits: n, inverse, reversal, gates })
}

impl QftPlan {
    pub fn hadamard_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, GateOp::Hadamard(_))).count()
    }

    pub fn cphase_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, GateOp::CPhase { .. })).count()
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { left: state.n_qubits(), right: self.n_qubits });
        }
        let relabel = self.reversal == Reversal::IndexRelabel;
        if relabel && self.inverse {
            bit_reverse_permute(state);
        }
        state.apply_all(&self.gates)?;
        if relabel && !self.inverse {
            bit_reverse_permute(state);
        }
        Ok(())
    }

    /// Gate list including the qubit reversal, for embedding in larger
    /// circuits. Index relabelling is materialised as CNOT swaps here since
    /// a gate list cannot carry a permutation.
    pub fn to_gates(&self) -> Vec<GateOp> {
        if self.reversal == Reversal::SwapGates {
            return self.gates.clone();
        }
        build_qft_plan_with(self.n_qubits, self.inverse, Reversal::SwapGates)
            .expect("n_qubits already validated")
            .gates
    }
}

/// Applies the unitary DFT (or its inverse) to `state` through the gate
/// circuit.
pub fn apply_qft(state: &mut StateVector, inverse: bool) -> Result<()> {
    build_qft_plan(state.n_qubits(), inverse)?.apply(state)
}

fn bit_reverse_permute(state: &mut StateVector) {
    let n = state.n_qubits() as u32;
    let amps = state.amplitudes_mut();
    for i in 0..amps.len() {
        let j = i.reverse_bits() >> (usize::BITS - n);
        if i < j {
            amps.swap(i, j);
        }
    }
}
