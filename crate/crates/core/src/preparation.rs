//! State preparation `S|0…0⟩ = |ψ⟩` from the elementary gate set.
//!
//! Magnitudes are loaded one qubit at a time, most significant first, by a
//! uniformly controlled `R_y`: conjugating a multiplexed `R_z` (a set of
//! [`GateOp::ControlledPhasePair`]) with `H · S†` turns it into `R_y`.
//! Phases are then written by the generic diagonal circuit.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::diagonal::{build_generic_diagonal_circuit, PhaseTable};
use crate::statevector::{Control, GateOp, StateVector};
use crate::Result;

/// Gates taking `|0…0⟩` to `target` (exactly, global phase included).
pub fn preparation_circuit(target: &StateVector) -> Result<Vec<GateOp>> {
    let n = target.n_qubits();
    let total = target.norm_sqr();
    let probs: Vec<f64> = target.amplitudes().iter().map(|c| c.norm_sqr() / total).collect();
    let mut gates = Vec::new();

    for q in (0..n).rev() {
        let span = 1usize << q;
        let prefixes = 1usize << (n - 1 - q);
        let mut rotations = Vec::new();
        for h in 0..prefixes {
            let base = h << (q + 1);
            let m0: f64 = probs[base..base + span].iter().sum();
            let m1: f64 = probs[base + span..base + 2 * span].iter().sum();
            let theta = 2.0 * libm::atan2(libm::sqrt(m1), libm::sqrt(m0));
            if theta != 0.0 {
                let controls = ((q + 1)..n).rev().map(|c| Control::new(c, (h >> (c - q - 1)) & 1 == 1)).collect();
                rotations.push(GateOp::ControlledPhasePair { controls, target: q, phase0: -theta / 2.0, phase1: theta / 2.0 });
            }
        }
        if rotations.is_empty() {
            continue;
        }
        gates.push(GateOp::PhaseShift { qubit: q, phase: -FRAC_PI_2 });
        gates.push(GateOp::Hadamard(q));
        gates.extend(rotations);
        gates.push(GateOp::Hadamard(q));
        gates.push(GateOp::PhaseShift { qubit: q, phase: FRAC_PI_2 });
    }

    let phases = PhaseTable(target.amplitudes().iter().map(|c| if c.norm_sqr() > 0.0 { c.arg() } else { 0.0 }).collect());
    if phases.0.iter().any(|&p| p != 0.0) {
        gates.extend(build_generic_diagonal_circuit(&phases, n)?);
    }
    Ok(gates)
}
