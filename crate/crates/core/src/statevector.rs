//! The quantum register and the elementary gates acting on it.

use alloc::vec;
use alloc::vec::Vec;

use crate::kernel;
use crate::{Error, Result, C64};

/// Dense amplitude vector `Σ_k c_k |k⟩` over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

/// A control condition: the gate acts only where `qubit` holds `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub value: bool,
}

impl Control {
    pub fn new(qubit: usize, value: bool) -> Self {
        Control { qubit, value }
    }

    /// Filled circle: active on `|1⟩`.
    pub fn on(qubit: usize) -> Self {
        Control::new(qubit, true)
    }

    /// Empty circle: active on `|0⟩`.
    pub fn off(qubit: usize) -> Self {
        Control::new(qubit, false)
    }
}

/// Elementary gate set used by every circuit in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum GateOp {
    Hadamard(usize),
    /// `|1⟩ → e^{iφ}|1⟩` on one qubit.
    PhaseShift { qubit: usize, phase: f64 },
    Cnot { control: usize, target: usize },
    /// Phase `e^{iφ}` on `|11⟩` of the two qubits.
    CPhase { control: usize, target: usize, phase: f64 },
    /// When every control matches, target `|0⟩` gains `phase0` and `|1⟩`
    /// gains `phase1`. With no controls this is a single-qubit diagonal
    /// including its global phase.
    ControlledPhasePair { controls: Vec<Control>, target: usize, phase0: f64, phase1: f64 },
}

impl GateOp {
    /// Qubits the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            GateOp::Hadamard(q) | GateOp::PhaseShift { qubit: q, .. } => vec![*q],
            GateOp::Cnot { control, target } | GateOp::CPhase { control, target, .. } => {
                vec![*control, *target]
            }
            GateOp::ControlledPhasePair { controls, target, .. } => {
                controls.iter().map(|c| c.qubit).chain(core::iter::once(*target)).collect()
            }
        }
    }

    /// Checks that all indices are distinct and below `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        let mut seen = 0usize;
        for &q in &qubits {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
            if seen & (1 << q) != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            seen |= 1 << q;
        }
        Ok(())
    }

    pub fn is_diagonal(&self) -> bool {
        !matches!(self, GateOp::Hadamard(_) | GateOp::Cnot { .. })
    }

    /// Elementwise complex conjugate of the gate matrix. Hadamard and CNOT
    /// are real; diagonal gates have their angles negated.
    pub fn conjugate(&self) -> GateOp {
        match self {
            GateOp::Hadamard(_) | GateOp::Cnot { .. } => self.clone(),
            GateOp::PhaseShift { qubit, phase } => GateOp::PhaseShift { qubit: *qubit, phase: -phase },
            GateOp::CPhase { control, target, phase } => {
                GateOp::CPhase { control: *control, target: *target, phase: -phase }
            }
            GateOp::ControlledPhasePair { controls, target, phase0, phase1 } => GateOp::ControlledPhasePair {
                controls: controls.clone(),
                target: *target,
                phase0: -phase0,
                phase1: -phase1,
            },
        }
    }

    /// Inverse gate. All gates in the set are either self-inverse or
    /// diagonal, so this coincides with [`GateOp::conjugate`].
    pub fn inverse(&self) -> GateOp {
        self.conjugate()
    }
}

/// An ordered gate list on a fixed register size.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<GateOp>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new() }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<GateOp>) -> Result<Self> {
        for g in &gates {
            g.validate(n_qubits)?;
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn push(&mut self, gate: GateOp) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend_from(&mut self, gates: &[GateOp]) -> Result<()> {
        for g in gates {
            self.push(g.clone())?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gate-by-gate conjugate: `W*` with `W*|0⟩ = (W|0⟩)*`.
    pub fn conjugate(&self) -> Circuit {
        Circuit { n_qubits: self.n_qubits, gates: self.gates.iter().map(GateOp::conjugate).collect() }
    }

    /// `W†`: reversed order, each gate inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit { n_qubits: self.n_qubits, gates: self.gates.iter().rev().map(GateOp::inverse).collect() }
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { left: state.n_qubits(), right: self.n_qubits });
        }
        state.apply_all(&self.gates)
    }
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis_state(n_qubits, 0)
    }

    /// Computational basis state `|k⟩`.
    pub fn basis_state(n_qubits: usize, k: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::NoQubits);
        }
        if n_qubits >= usize::BITS as usize {
            return Err(Error::invalid("n_qubits", "register too large"));
        }
        let dim = 1usize << n_qubits;
        if k >= dim {
            return Err(Error::BasisIndexOutOfRange { index: k, dim });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        Ok(StateVector { n_qubits: len.trailing_zeros() as usize, amps })
    }

    /// Wraps amplitudes and rescales them to unit norm.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let mut s = Self::from_amplitudes(amps)?;
        let norm = libm::sqrt(s.norm_sqr());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::DegenerateInput);
        }
        s.amps.iter_mut().for_each(|c| *c /= norm);
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `|c_k|²` for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|c| c.norm_sqr()).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<usize> {
        if q >= self.n_qubits {
            Err(Error::QubitOutOfRange { qubit: q, n_qubits: self.n_qubits })
        } else {
            Ok(1 << q)
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(usize, usize)> {
        let ba = self.check_qubit(a)?;
        let bb = self.check_qubit(b)?;
        if a == b {
            return Err(Error::DuplicateQubit(a));
        }
        Ok((ba, bb))
    }

    pub fn apply_hadamard(&mut self, q: usize) -> Result<()> {
        let bit = self.check_qubit(q)?;
        kernel::hadamard(&mut self.amps, bit, 0, 0);
        Ok(())
    }

    pub fn apply_phase_shift(&mut self, q: usize, phase: f64) -> Result<()> {
        let bit = self.check_qubit(q)?;
        kernel::phase(&mut self.amps, bit, bit, phase);
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        let (c, t) = self.check_pair(control, target)?;
        kernel::flip(&mut self.amps, t, c, c);
        Ok(())
    }

    pub fn apply_cphase(&mut self, control: usize, target: usize, phase: f64) -> Result<()> {
        let (c, t) = self.check_pair(control, target)?;
        kernel::phase(&mut self.amps, c | t, c | t, phase);
        Ok(())
    }

    pub fn apply_multi_controlled_phase_pair(
        &mut self,
        controls: &[Control],
        target: usize,
        phase0: f64,
        phase1: f64,
    ) -> Result<()> {
        self.apply(&GateOp::ControlledPhasePair { controls: controls.to_vec(), target, phase0, phase1 })
    }

    /// Applies one gate.
    pub fn apply(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.n_qubits)?;
        apply_masked(&mut self.amps, gate, 0, 0);
        Ok(())
    }

    pub fn apply_all(&mut self, gates: &[GateOp]) -> Result<()> {
        gates.iter().try_for_each(|g| self.apply(g))
    }

    /// Applies `gate` only on the subspace where `condition` holds. Used to
    /// promote a circuit to an ancilla-selected one.
    pub fn apply_conditioned(&mut self, gate: &GateOp, condition: Control) -> Result<()> {
        gate.validate(self.n_qubits)?;
        let bit = self.check_qubit(condition.qubit)?;
        if gate.qubits().contains(&condition.qubit) {
            return Err(Error::DuplicateQubit(condition.qubit));
        }
        apply_masked(&mut self.amps, gate, bit, if condition.value { bit } else { 0 });
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &StateVector) -> Result<C64> {
        inner_product(self, other)
    }

    /// `‖self − e^{iλ} other‖` with the global phase `λ = arg⟨other|self⟩`
    /// fitted.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let overlap = inner_product(other, self)?;
        let rot = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
        let sq: f64 = self.amps.iter().zip(&other.amps).map(|(a, b)| (a - rot * b).norm_sqr()).sum();
        Ok(libm::sqrt(sq))
    }

    /// Largest elementwise deviation `max_k |a_k − b_k|`.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Gate kernel dispatch with an extra `(mask, value)` selection. The gate is
/// assumed validated and disjoint from `mask`.
fn apply_masked(amps: &mut [C64], gate: &GateOp, mask: usize, value: usize) {
    match gate {
        GateOp::Hadamard(q) => kernel::hadamard(amps, 1 << q, mask, value),
        GateOp::PhaseShift { qubit, phase } => {
            let b = 1 << qubit;
            kernel::phase(amps, mask | b, value | b, *phase);
        }
        GateOp::Cnot { control, target } => {
            let c = 1 << control;
            kernel::flip(amps, 1 << target, mask | c, value | c);
        }
        GateOp::CPhase { control, target, phase } => {
            let b = (1 << control) | (1 << target);
            kernel::phase(amps, mask | b, value | b, *phase);
        }
        GateOp::ControlledPhasePair { controls, target, phase0, phase1 } => {
            let (mut m, mut v) = (mask, value);
            for c in controls {
                m |= 1 << c.qubit;
                if c.value {
                    v |= 1 << c.qubit;
                }
            }
            let t = 1 << target;
            kernel::phase(amps, m | t, v, *phase0);
            kernel::phase(amps, m | t, v | t, *phase1);
        }
    }
}

/// `⟨a|b⟩`, conjugating `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::DimensionMismatch { left: a.n_qubits, right: b.n_qubits });
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn basis_states() {
        assert_eq!(StateVector::basis_state(1, 0).unwrap().amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = StateVector::basis_state(3, 5).unwrap();
        for (k, a) in s.amplitudes().iter().enumerate() {
            assert_eq!(*a, if k == 5 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        }
        assert_eq!(StateVector::basis_state(2, 4), Err(Error::BasisIndexOutOfRange { index: 4, dim: 4 }));
        assert_eq!(StateVector::basis_state(0, 0), Err(Error::NoQubits));
    }

    #[test]
    fn hadamard_on_basis() {
        let mut s = StateVector::basis_state(1, 0).unwrap();
        s.apply_hadamard(0).unwrap();
        assert!(close(s.amplitudes(), &[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], 1e-15));
        let mut s = StateVector::basis_state(1, 1).unwrap();
        s.apply_hadamard(0).unwrap();
        assert!(close(s.amplitudes(), &[c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)], 1e-15));
        assert!(matches!(s.apply_hadamard(1), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn phase_shift() {
        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let mut s = StateVector::from_amplitudes(vec![alpha, beta]).unwrap();
        s.apply_phase_shift(0, 0.7).unwrap();
        assert!(close(s.amplitudes(), &[alpha, beta * crate::cis(0.7)], 1e-15));
        let before = s.clone();
        s.apply_phase_shift(0, 0.0).unwrap();
        assert_eq!(s, before);
        s.apply_phase_shift(0, TAU).unwrap();
        assert!(s.max_abs_diff(&before).unwrap() < 1e-12);
    }

    #[test]
    fn cnot_truth_table() {
        // |10⟩ has the control (left, qubit 1) set.
        let mut s = StateVector::basis_state(2, 0b10).unwrap();
        s.apply_cnot(1, 0).unwrap();
        assert_eq!(s, StateVector::basis_state(2, 0b11).unwrap());
        let mut s = StateVector::basis_state(2, 0b01).unwrap();
        s.apply_cnot(1, 0).unwrap();
        assert_eq!(s, StateVector::basis_state(2, 0b01).unwrap());
        assert_eq!(s.apply_cnot(1, 1), Err(Error::DuplicateQubit(1)));
    }

    #[test]
    fn cphase_truth_table_and_symmetry() {
        let mut s = StateVector::basis_state(2, 0b11).unwrap();
        s.apply_cphase(1, 0, 0.3).unwrap();
        assert!(close(s.amplitudes(), &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), crate::cis(0.3)], 1e-15));
        let mut s = StateVector::basis_state(2, 0b10).unwrap();
        s.apply_cphase(1, 0, 0.3).unwrap();
        assert_eq!(s, StateVector::basis_state(2, 0b10).unwrap());

        let amps: Vec<C64> = (0..8).map(|k| c(k as f64 + 1.0, 0.5 - k as f64)).collect();
        let mut a = StateVector::normalized(amps.clone()).unwrap();
        let mut b = StateVector::normalized(amps).unwrap();
        a.apply_cphase(2, 0, 1.1).unwrap();
        b.apply_cphase(0, 2, 1.1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.apply_cphase(2, 2, 1.0), Err(Error::DuplicateQubit(2)));
    }

    #[test]
    fn multi_controlled_pair_three_qubit_example() {
        let f = |k: usize| 0.1 + 0.37 * k as f64;
        let mut s = StateVector::zero(3).unwrap();
        for q in 0..3 {
            s.apply_hadamard(q).unwrap();
        }
        s.apply_multi_controlled_phase_pair(&[Control::off(2), Control::off(1)], 0, f(0), f(1)).unwrap();
        let u = 1.0 / libm::sqrt(8.0);
        for (k, a) in s.amplitudes().iter().enumerate() {
            let expected = match k {
                0 => crate::cis(f(0)) * u,
                1 => crate::cis(f(1)) * u,
                _ => c(u, 0.0),
            };
            assert!((a - expected).norm() < 1e-15, "k = {k}");
        }
        let before = s.clone();
        s.apply_multi_controlled_phase_pair(&[Control::on(1)], 2, 0.0, 0.0).unwrap();
        assert_eq!(s, before);
        assert_eq!(
            s.apply_multi_controlled_phase_pair(&[Control::on(0)], 0, 1.0, 1.0),
            Err(Error::DuplicateQubit(0))
        );
    }

    #[test]
    fn inner_products() {
        let a = StateVector::basis_state(2, 3).unwrap();
        assert_eq!(a.inner_product(&a).unwrap(), c(1.0, 0.0));
        let z = StateVector::basis_state(1, 0).unwrap();
        let o = StateVector::basis_state(1, 1).unwrap();
        assert_eq!(inner_product(&z, &o).unwrap(), c(0.0, 0.0));
        assert!(matches!(inner_product(&a, &z), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn conditioned_gate_only_touches_selected_half() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_hadamard(1).unwrap();
        s.apply_conditioned(&GateOp::Hadamard(0), Control::on(1)).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!(close(s.amplitudes(), &[c(h, 0.0), c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0)], 1e-15));
        assert!(s.apply_conditioned(&GateOp::Hadamard(1), Control::on(1)).is_err());
    }

    #[test]
    fn distance_ignores_global_phase() {
        let a = StateVector::normalized(vec![c(1.0, 2.0), c(-0.5, 0.1)]).unwrap();
        let mut b = a.clone();
        b.amplitudes_mut().iter_mut().for_each(|x| *x *= crate::cis(PI / 3.0));
        assert!(a.distance_up_to_phase(&b).unwrap() < 1e-15);
        assert!(a.max_abs_diff(&b).unwrap() > 0.1);
    }

    #[test]
    fn state_is_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<StateVector>();
        assert_send_sync::<Circuit>();
    }
}
