//! Gate kernels and the QFT circuit checked against dense matrices built
//! straight from the gate definitions (tensor products of 2×2 blocks and
//! projector sums), sharing nothing with the strided kernels.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use proptest::prelude::*;
use qschrod_core::qft::{apply_qft, build_qft_plan};
use qschrod_core::{Control, GateOp, StateVector, C64};
use rand::{Rng, SeedableRng};

type Dense = Vec<Vec<C64>>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn identity(dim: usize) -> Dense {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect()).collect()
}

fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Embeds a one-qubit matrix on qubit `q`: the ket is |k_{n−1}⟩⊗…⊗|k_0⟩.
fn single(n: usize, q: usize, m: &Dense) -> Dense {
    let id = identity(2);
    let mut out = identity(1);
    for j in (0..n).rev() {
        out = kron(&out, if j == q { m } else { &id });
    }
    out
}

fn projector(bit: bool) -> Dense {
    let mut p = vec![vec![c(0.0, 0.0); 2]; 2];
    p[bit as usize][bit as usize] = c(1.0, 0.0);
    p
}

/// Sum over control configurations of ⊗ projectors, with `m` on the target
/// only in the matching configuration.
fn controlled(n: usize, controls: &[(usize, bool)], target: usize, m: &Dense) -> Dense {
    let dim = 1 << n;
    let id = identity(2);
    let mut total = vec![vec![c(0.0, 0.0); dim]; dim];
    for config in 0..(1usize << controls.len()) {
        let bit = |pos: usize| (config >> pos) & 1 == 1;
        let active = controls.iter().enumerate().all(|(pos, &(_, v))| bit(pos) == v);
        let mut op = identity(1);
        for j in (0..n).rev() {
            let factor = match controls.iter().position(|&(q, _)| q == j) {
                Some(pos) => projector(bit(pos)),
                None if j == target && active => m.clone(),
                None => id.clone(),
            };
            op = kron(&op, &factor);
        }
        for i in 0..dim {
            for k in 0..dim {
                total[i][k] += op[i][k];
            }
        }
    }
    total
}

fn gate_matrix(n: usize, g: &GateOp) -> Dense {
    let h = vec![vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]];
    let x = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]];
    let ph = |d: f64| vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), C64::from_polar(1.0, d)]];
    match g {
        GateOp::Hadamard(q) => single(n, *q, &h),
        GateOp::PhaseShift { qubit, phase } => single(n, *qubit, &ph(*phase)),
        GateOp::Cnot { control, target } => controlled(n, &[(*control, true)], *target, &x),
        GateOp::CPhase { control, target, phase } => controlled(n, &[(*control, true)], *target, &ph(*phase)),
        GateOp::ControlledPhasePair { controls, target, phase0, phase1 } => {
            let pair = vec![
                vec![C64::from_polar(1.0, *phase0), c(0.0, 0.0)],
                vec![c(0.0, 0.0), C64::from_polar(1.0, *phase1)],
            ];
            let cs: Vec<(usize, bool)> = controls.iter().map(|c| (c.qubit, c.value)).collect();
            controlled(n, &cs, *target, &pair)
        }
    }
}

fn matvec(m: &Dense, v: &[C64]) -> Vec<C64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn random_state(n: usize, rng: &mut impl Rng) -> StateVector {
    let amps = (0..1usize << n).map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    StateVector::normalized(amps).unwrap()
}

fn random_gate(n: usize, rng: &mut impl Rng) -> GateOp {
    let mut qubits: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        qubits.swap(i, rng.random_range(0..=i));
    }
    let phase = rng.random_range(-PI..PI);
    match rng.random_range(0..5) {
        0 => GateOp::Hadamard(qubits[0]),
        1 => GateOp::PhaseShift { qubit: qubits[0], phase },
        2 if n > 1 => GateOp::Cnot { control: qubits[0], target: qubits[1] },
        3 if n > 1 => GateOp::CPhase { control: qubits[0], target: qubits[1], phase },
        _ => {
            let k = rng.random_range(0..n);
            GateOp::ControlledPhasePair {
                controls: qubits[1..=k.min(n - 1)].iter().map(|&q| Control::new(q, rng.random())).collect(),
                target: qubits[0],
                phase0: rng.random_range(-PI..PI),
                phase1: phase,
            }
        }
    }
}

#[test]
fn every_gate_matches_its_dense_matrix() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6 {
        for _ in 0..25 {
            let g = random_gate(n, &mut rng);
            let psi = random_state(n, &mut rng);
            let expected = matvec(&gate_matrix(n, &g), psi.amplitudes());
            let mut got = psi.clone();
            got.apply(&g).unwrap();
            let dev = got.amplitudes().iter().zip(&expected).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(dev < 1e-12, "{g:?} on n = {n}: {dev}");
        }
    }
}

/// Dense unitary DFT with `e^{+2πikl/N}`.
fn dft(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    let s = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|l| (0..n).map(|k| v[k] * C64::from_polar(s, TAU * (k * l) as f64 / n as f64)).sum())
        .collect()
}

#[test]
fn qft_of_basis_one_is_roots_of_unity() {
    let mut s = StateVector::basis_state(3, 1).unwrap();
    apply_qft(&mut s, false).unwrap();
    for (l, a) in s.amplitudes().iter().enumerate() {
        let expected = C64::from_polar(1.0 / 8f64.sqrt(), TAU * l as f64 / 8.0);
        assert!((a - expected).norm() < 1e-14);
    }
}

#[test]
fn qft_matches_dense_dft_up_to_eight_qubits() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for n in 1..=8 {
        for _ in 0..5 {
            let psi = random_state(n, &mut rng);
            let expected = dft(psi.amplitudes());
            let mut got = psi.clone();
            apply_qft(&mut got, false).unwrap();
            let dev = got.amplitudes().iter().zip(&expected).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(dev < 1e-10, "n = {n}: {dev}");
        }
    }
}

#[test]
fn inverse_after_forward_is_identity() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for n in 1..=12 {
        let psi = random_state(n, &mut rng);
        let mut s = psi.clone();
        apply_qft(&mut s, false).unwrap();
        apply_qft(&mut s, true).unwrap();
        assert!(s.max_abs_diff(&psi).unwrap() < 1e-10, "n = {n}");
    }
    let fwd = build_qft_plan(3, false).unwrap();
    let inv = build_qft_plan(3, true).unwrap();
    for _ in 0..20 {
        let psi = random_state(3, &mut rng);
        let mut s = psi.clone();
        fwd.apply(&mut s).unwrap();
        inv.apply(&mut s).unwrap();
        assert!(s.max_abs_diff(&psi).unwrap() < 1e-10);
    }
}

#[test]
fn long_random_sequences_preserve_norm() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let n = 6;
    let mut s = random_state(n, &mut rng);
    for _ in 0..10_000 {
        let g = random_gate(n, &mut rng);
        s.apply(&g).unwrap();
    }
    assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
}

proptest! {
    #[test]
    fn hadamard_and_cnot_are_self_inverse(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(n, &mut rng);
        let q = rng.random_range(0..n);
        let t = (q + 1 + rng.random_range(0..n - 1)) % n;
        let mut s = psi.clone();
        s.apply_hadamard(q).unwrap();
        s.apply_hadamard(q).unwrap();
        prop_assert!(s.max_abs_diff(&psi).unwrap() < 1e-12);
        s.apply_cnot(q, t).unwrap();
        s.apply_cnot(q, t).unwrap();
        prop_assert!(s.max_abs_diff(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn phase_shift_inverse(seed in any::<u64>(), delta in -10.0f64..10.0) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(4, &mut rng);
        let mut s = psi.clone();
        s.apply_phase_shift(2, delta).unwrap();
        s.apply_phase_shift(2, -delta).unwrap();
        prop_assert!(s.max_abs_diff(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn diagonal_gates_keep_moduli(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(5, &mut rng);
        let mut s = psi.clone();
        for _ in 0..20 {
            let g = random_gate(5, &mut rng);
            if g.is_diagonal() {
                s.apply(&g).unwrap();
            }
        }
        for (a, b) in s.amplitudes().iter().zip(psi.amplitudes()) {
            prop_assert!((a.norm() - b.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn qft_parseval_and_flat_basis_spectrum(n in 1usize..9, k_raw in any::<usize>(), seed in any::<u64>()) {
        let k = k_raw % (1 << n);
        let mut s = StateVector::basis_state(n, k).unwrap();
        apply_qft(&mut s, false).unwrap();
        let flat = 1.0 / ((1usize << n) as f64).sqrt();
        for a in s.amplitudes() {
            prop_assert!((a.norm() - flat).abs() < 1e-12);
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(n, &mut rng);
        let mut t = psi.clone();
        apply_qft(&mut t, false).unwrap();
        prop_assert!((t.norm_sqr().sqrt() - psi.norm_sqr().sqrt()).abs() < 1e-12);
    }

    #[test]
    fn conjugated_circuit_prepares_conjugate_state(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = 4;
        let gates: Vec<GateOp> = (0..40).map(|_| random_gate(n, &mut rng)).collect();
        let mut a = StateVector::zero(n).unwrap();
        a.apply_all(&gates).unwrap();
        let conj: Vec<GateOp> = gates.iter().map(GateOp::conjugate).collect();
        let mut b = StateVector::zero(n).unwrap();
        b.apply_all(&conj).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            prop_assert!((x.conj() - y).norm() < 1e-12);
        }
    }
}
