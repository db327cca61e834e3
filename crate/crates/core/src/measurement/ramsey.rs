use alloc::vec::Vec;

use crate::statevector::{Control, GateOp, StateVector};
use crate::{Error, Result};

/// Ramsey interferometer on `n` system qubits plus one ancilla (qubit `n`,
/// the most significant).
///
/// Holds the state after the first ancilla Hadamard and the
/// ancilla-selected `W` (ancilla 0) / `W*` (ancilla 1); the closing Hadamard
/// is applied on read-out, so the circuit can grow step by step.
#[derive(Debug, Clone)]
pub struct RamseyInterferometer {
    n: usize,
    selected: StateVector,
}

impl RamseyInterferometer {
    pub fn new(n: usize) -> Result<Self> {
        let mut selected = StateVector::zero(n + 1)?;
        selected.apply_hadamard(n)?;
        Ok(RamseyInterferometer { n, selected })
    }

    pub fn system_qubits(&self) -> usize {
        self.n
    }

    /// Appends gates to `W` (and their conjugates to `W*`).
    pub fn append(&mut self, gates: &[GateOp]) -> Result<()> {
        let off = Control::off(self.n);
        let on = Control::on(self.n);
        for g in gates {
            g.validate(self.n)?;
            self.selected.apply_conditioned(g, off)?;
            self.selected.apply_conditioned(&g.conjugate(), on)?;
        }
        Ok(())
    }

    /// `|Φ⟩ = ½|0⟩(|ψ⟩+|ψ*⟩) + ½|1⟩(|ψ⟩−|ψ*⟩)`.
    pub fn output(&self) -> StateVector {
        let mut phi = self.selected.clone();
        phi.apply_hadamard(self.n).expect("ancilla index is in range");
        phi
    }

    pub fn outcome(&self) -> RamseyOutcome {
        ramsey_probabilities(&self.output()).expect("register has n + 1 >= 2 qubits")
    }
}

/// Builds `|Φ⟩` for `W|0⟩ = ψ` on `n` system qubits.
pub fn ramsey_state(w: &[GateOp], n: usize) -> Result<StateVector> {
    let mut r = RamseyInterferometer::new(n)?;
    r.append(w)?;
    Ok(r.output())
}

/// `P0(x_k) = |⟨0|⟨k|Φ⟩|²` and `P1(x_k) = |⟨1|⟨k|Φ⟩|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct RamseyOutcome {
    pub p0: Vec<f64>,
    pub p1: Vec<f64>,
}

impl RamseyOutcome {
    /// Marginal probabilities of the ancilla reading 0 and 1.
    pub fn ancilla_marginals(&self) -> (f64, f64) {
        (self.p0.iter().sum(), self.p1.iter().sum())
    }

    pub fn total(&self) -> f64 {
        let (a, b) = self.ancilla_marginals();
        a + b
    }
}

/// Splits an `(n+1)`-qubit Ramsey output by ancilla value.
pub fn ramsey_probabilities(phi: &StateVector) -> Result<RamseyOutcome> {
    if phi.n_qubits() < 2 {
        return Err(Error::invalid("phi", "needs at least one system qubit and the ancilla"));
    }
    let half = phi.dim() / 2;
    let (lo, hi) = phi.amplitudes().split_at(half);
    Ok(RamseyOutcome { p0: lo.iter().map(|c| c.norm_sqr()).collect(), p1: hi.iter().map(|c| c.norm_sqr()).collect() })
}
