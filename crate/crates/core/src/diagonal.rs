//! Diagonal unitaries `|k⟩ → e^{if(k)}|k⟩`.
//!
//! Three interchangeable routes:
//! * direct multiplication of each amplitude,
//! * the generic circuit of `2^(n-1)` multi-controlled phase pairs `F_k`,
//! * the `n²`-factor decomposition for phases quadratic in a coordinate that
//!   is linear in the index bits (harmonic potential, kinetic energy).

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::kernel;
use crate::schrodinger::{MomentumGrid, SpatialGrid};
use crate::statevector::{Control, GateOp, StateVector};
use crate::{cis, wrap_phase, Error, Result};

/// A phase `f(k)` in radians for every basis index.
pub trait PhaseFunction {
    fn phase(&self, k: usize) -> f64;
}

impl<F: Fn(usize) -> f64> PhaseFunction for F {
    fn phase(&self, k: usize) -> f64 {
        self(k)
    }
}

/// Tabulated phases.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable(pub Vec<f64>);

impl PhaseFunction for PhaseTable {
    fn phase(&self, k: usize) -> f64 {
        self.0[k]
    }
}

impl PhaseTable {
    pub fn tabulate(n_qubits: usize, f: &impl PhaseFunction) -> Self {
        PhaseTable((0..1usize << n_qubits).map(|k| f.phase(k)).collect())
    }
}

/// `c_k → e^{if(k)} c_k`.
pub fn apply_diagonal_direct(state: &mut StateVector, f: &impl PhaseFunction) {
    for (k, c) in state.amplitudes_mut().iter_mut().enumerate() {
        let phi = f.phase(k);
        if phi != 0.0 {
            *c *= cis(phi);
        }
    }
}

/// The `F_k` circuit: for `k = 0..2^(n-1)`, a phase pair on qubit 0 gated by
/// qubits `n-1..1` matching the binary digits of `k`, with phases
/// `(f(2k), f(2k+1))` reduced mod 2π.
pub fn build_generic_diagonal_circuit(f: &impl PhaseFunction, n: usize) -> Result<Vec<GateOp>> {
    if n < 1 {
        return Err(Error::NoQubits);
    }
    let half = 1usize << (n - 1);
    let mut gates = Vec::with_capacity(half);
    for k in 0..half {
        let controls = (1..n).rev().map(|q| Control::new(q, (k >> (q - 1)) & 1 == 1)).collect();
        gates.push(GateOp::ControlledPhasePair {
            controls,
            target: 0,
            phase0: wrap_phase(f.phase(2 * k)),
            phase1: wrap_phase(f.phase(2 * k + 1)),
        });
    }
    Ok(gates)
}

/// Parameters of `e^{-iγ (Σ_j (w_j k_j + β))²}` where the coordinate is
/// `α Σ_j (w_j k_j + β)`.
///
/// `w_j = 2^j`, except that with `signed_top_bit` the most significant bit
/// weighs `-2^(n-1)`; that form covers the wrapped momentum index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticPhaseSpec {
    pub gamma: f64,
    pub beta: f64,
    pub alpha: f64,
    pub n_qubits: usize,
    pub signed_top_bit: bool,
}

/// One factor of the product, acting on qubits `(j, l)`. `phases[2a + b]`
/// is the phase for `k_j = a`, `k_l = b`. When `j == l` only entries 0 and 3
/// are meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairFactor {
    pub j: usize,
    pub l: usize,
    pub phases: [f64; 4],
}

impl QuadraticPhaseSpec {
    pub fn new(gamma: f64, beta: f64, alpha: f64, n_qubits: usize) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::invalid("alpha", "must be positive"));
        }
        if n_qubits < 1 {
            return Err(Error::NoQubits);
        }
        Ok(QuadraticPhaseSpec { gamma, beta, alpha, n_qubits, signed_top_bit: false })
    }

    /// Harmonic potential step `e^{-iVε/ħ}` with `V = mω²x²/2` on `grid`:
    /// `α = Δ`, `β = (−d + Δ/2)/(αn)`, `γ = mω²α²ε/2ħ`.
    pub fn harmonic(grid: &SpatialGrid, mass: f64, omega: f64, epsilon: f64, hbar: f64) -> Self {
        let alpha = grid.delta();
        let n = grid.n_qubits();
        QuadraticPhaseSpec {
            gamma: mass * omega * omega * alpha * alpha * epsilon / (2.0 * hbar),
            beta: (-grid.half_width() + alpha / 2.0) / (alpha * n as f64),
            alpha,
            n_qubits: n,
            signed_top_bit: false,
        }
    }

    /// Free propagator `e^{-ip²ε/2mħ}` in the momentum representation, with
    /// the twist offset `ħφ/L` folded into `β`.
    pub fn kinetic(momenta: &MomentumGrid, mass: f64, epsilon: f64) -> Self {
        let alpha = momenta.quantum();
        let n = momenta.n_qubits();
        let hbar = momenta.hbar();
        QuadraticPhaseSpec {
            gamma: alpha * alpha * epsilon / (2.0 * mass * hbar),
            beta: momenta.twist() / (TAU * n as f64),
            alpha,
            n_qubits: n,
            signed_top_bit: true,
        }
    }

    pub fn weight(&self, j: usize) -> f64 {
        let w = libm::ldexp(1.0, j as i32);
        if self.signed_top_bit && j + 1 == self.n_qubits {
            -w
        } else {
            w
        }
    }

    fn bit_term(&self, j: usize, bit: usize) -> f64 {
        bit as f64 * self.weight(j) + self.beta
    }

    /// `Σ_j (w_j k_j + β)`, the coordinate in units of `α`.
    pub fn scaled_coordinate(&self, k: usize) -> f64 {
        (0..self.n_qubits).map(|j| self.bit_term(j, (k >> j) & 1)).sum()
    }

    pub fn coordinate(&self, k: usize) -> f64 {
        self.alpha * self.scaled_coordinate(k)
    }

    /// The full phase `f(k) = −γ (Σ_j (w_j k_j + β))²`.
    pub fn phase(&self, k: usize) -> f64 {
        let s = self.scaled_coordinate(k);
        -self.gamma * s * s
    }

    /// All `n²` factors, `(j, l)` and `(l, j)` kept separately.
    pub fn factors(&self) -> Vec<PairFactor> {
        let n = self.n_qubits;
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for l in 0..n {
                let mut phases = [0.0; 4];
                for (slot, p) in phases.iter_mut().enumerate() {
                    let (a, b) = (slot >> 1, slot & 1);
                    if j == l && a != b {
                        continue;
                    }
                    *p = wrap_phase(-self.gamma * self.bit_term(j, a) * self.bit_term(l, b));
                }
                out.push(PairFactor { j, l, phases });
            }
        }
        out
    }

    pub fn factor_count(&self) -> usize {
        self.n_qubits * self.n_qubits
    }

    /// Factors that act on two distinct qubits.
    pub fn two_qubit_factor_count(&self) -> usize {
        self.n_qubits * (self.n_qubits - 1)
    }

    /// The factors expanded into the elementary gate set. A single-qubit
    /// factor is one uncontrolled phase pair; a two-qubit factor becomes a
    /// phase pair on `j`, a phase shift on `l` and a CPHASE, so global phases
    /// are carried exactly.
    pub fn to_gates(&self) -> Vec<GateOp> {
        let mut gates = Vec::new();
        for f in self.factors() {
            let p = f.phases;
            if f.j == f.l {
                gates.push(GateOp::ControlledPhasePair { controls: Vec::new(), target: f.j, phase0: p[0], phase1: p[3] });
            } else {
                gates.push(GateOp::ControlledPhasePair { controls: Vec::new(), target: f.j, phase0: p[0], phase1: p[2] });
                gates.push(GateOp::PhaseShift { qubit: f.l, phase: wrap_phase(p[1] - p[0]) });
                gates.push(GateOp::CPhase { control: f.j, target: f.l, phase: wrap_phase(p[3] - p[2] - p[1] + p[0]) });
            }
        }
        gates
    }
}

impl PhaseFunction for QuadraticPhaseSpec {
    fn phase(&self, k: usize) -> f64 {
        QuadraticPhaseSpec::phase(self, k)
    }
}

/// Applies the `n²` factors one by one.
pub fn apply_quadratic_phase(state: &mut StateVector, spec: &QuadraticPhaseSpec) -> Result<()> {
    if state.n_qubits() != spec.n_qubits {
        return Err(Error::DimensionMismatch { left: state.n_qubits(), right: spec.n_qubits });
    }
    let amps = state.amplitudes_mut();
    for f in spec.factors() {
        let (bj, bl) = (1usize << f.j, 1usize << f.l);
        if f.j == f.l {
            kernel::phase(amps, bj, 0, f.phases[0]);
            kernel::phase(amps, bj, bj, f.phases[3]);
        } else {
            kernel::pair_diagonal(amps, bj, bl, &f.phases);
        }
    }
    Ok(())
}

/// Selects how a diagonal stage is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalRoute {
    Direct,
    GenericCircuit,
    Quadratic,
}
