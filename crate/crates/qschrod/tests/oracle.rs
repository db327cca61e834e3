use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use qschrod::oracle::{
    dft_matrix, exact_propagator, expectation, hamiltonian, split_operator_reference, DenseOperator,
};
use qschrod::{trotter_error, Error};
use qschrod_core::qft::apply_qft;
use qschrod_core::schrodinger::{
    evolve, kinetic_step, prepare, EvolutionParams, GaussianParams, Potential, PotentialShape, SpatialGrid,
    WavepacketSpec,
};
use qschrod_core::{StateVector, C64};
use rand::{Rng, SeedableRng};

fn gaussian(x0: f64, p0: f64, sigma: f64, grid: &SpatialGrid) -> StateVector {
    prepare(&WavepacketSpec::Gaussian(GaussianParams { x0, p0, sigma }), grid, 1.0, 1.0).unwrap().state
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn one_qubit_dft_is_hadamard() {
    let d = dft_matrix(1).unwrap();
    let h = [[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]];
    for (i, row) in h.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            assert!((d.matrix[(i, j)] - C64::new(*v, 0.0)).norm() < 1e-15);
        }
    }
}

#[test]
fn dft_is_unitary_and_maps_delta_one_to_roots_of_unity() {
    for n in 1..=7 {
        assert!(dft_matrix(n).unwrap().unitarity_error() < 1e-12);
    }
    let d = dft_matrix(3).unwrap();
    let mut delta = vec![C64::new(0.0, 0.0); 8];
    delta[1] = C64::new(1.0, 0.0);
    for (l, a) in d.apply(&delta).iter().enumerate() {
        assert!((a - C64::from_polar(1.0 / 8f64.sqrt(), TAU * l as f64 / 8.0)).norm() < 1e-15);
    }
}

#[test]
fn oversized_oracles_are_refused() {
    assert!(matches!(dft_matrix(13), Err(Error::TooLarge { .. })));
    let grid = SpatialGrid::new(9, 5.0).unwrap();
    let params = EvolutionParams::new(0.1, 1);
    assert!(matches!(exact_propagator(&Potential::free(), &grid, 1.0, &params), Err(Error::TooLarge { .. })));
    let psi = StateVector::zero(9).unwrap();
    assert!(trotter_error(&psi, &Potential::free(), &grid, &params).is_err());
}

#[test]
fn qft_circuit_matches_dense_dft() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for n in 1..=8 {
        let d = dft_matrix(n).unwrap();
        for _ in 0..20 {
            let amps = (0..1 << n).map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
            let psi = StateVector::normalized(amps).unwrap();
            let mut s = psi.clone();
            apply_qft(&mut s, false).unwrap();
            assert!(max_diff(s.amplitudes(), &d.apply(psi.amplitudes())) < 1e-10);
        }
    }
}

#[test]
fn propagator_at_zero_time_is_identity() {
    let grid = SpatialGrid::new(4, 3.0).unwrap();
    let pot = Potential::new(PotentialShape::Harmonic { mass: 1.0, omega: 1.0 });
    let u = exact_propagator(&pot, &grid, 0.0, &EvolutionParams::new(0.1, 1)).unwrap();
    let id = DenseOperator { matrix: nalgebra::DMatrix::identity(16, 16) };
    assert!((u.matrix - id.matrix).iter().all(|z| z.norm() < 1e-12));
}

#[test]
fn propagators_are_unitary() {
    for n in [3, 5, 7] {
        let grid = SpatialGrid::new(n, 5.0).unwrap();
        let pot = Potential::new(PotentialShape::PiecewiseCubic { mass: 1.0, omega: 1.0, a_cubic: -0.2 }).with_twist(0.7);
        let u = exact_propagator(&pot, &grid, 1.3, &EvolutionParams::new(0.1, 1)).unwrap();
        assert!(u.unitarity_error() < 1e-10, "n = {n}");
    }
}

#[test]
fn hamiltonian_is_hermitian_with_grid_plane_wave_eigenstates() {
    let grid = SpatialGrid::new(4, 2.5).unwrap();
    let params = EvolutionParams::new(0.1, 1);
    let h = hamiltonian(&Potential::free().with_twist(0.5), &grid, &params).unwrap();
    assert!((h.adjoint() - &h).iter().all(|z| z.norm() < 1e-12));
    let m = grid.momenta(1.0, 0.5);
    for l in 0..16 {
        let p = m.momentum(l);
        let wave: Vec<C64> = (0..16).map(|k| C64::from_polar(0.25, p * grid.point(k))).collect();
        let e = expectation(&h, &wave);
        let pk = m.kinetic_momentum(l);
        assert!((e - pk * pk / 2.0).abs() < 1e-10);
    }
}

#[test]
fn free_kinetic_step_matches_propagator() {
    let grid = SpatialGrid::new(6, 5.0).unwrap();
    for twist in [0.0, 1.1] {
        let params = EvolutionParams::new(0.07, 1);
        let psi = gaussian(0.5, 1.5, 0.8, &grid);
        let mut s = psi.clone();
        kinetic_step(&mut s, &grid, &params, twist).unwrap();
        let u = exact_propagator(&Potential::free().with_twist(twist), &grid, params.epsilon, &params).unwrap();
        assert!(max_diff(s.amplitudes(), &u.apply(psi.amplitudes())) < 1e-10);
    }
}

#[test]
fn splitting_is_exact_without_potential() {
    let grid = SpatialGrid::new(5, 4.0).unwrap();
    let psi = gaussian(-1.0, 2.0, 0.7, &grid);
    for eps in [0.3, 0.05] {
        let err = trotter_error(&psi, &Potential::free(), &grid, &EvolutionParams::new(eps, 10)).unwrap();
        assert!(err < 1e-10, "{err}");
    }
}

#[test]
fn trotter_error_shrinks_monotonically() {
    let grid = SpatialGrid::new(5, 6.0).unwrap();
    let pot = Potential::new(PotentialShape::Harmonic { mass: 1.0, omega: 1.0 });
    let psi = gaussian(1.0, 0.0, FRAC_1_SQRT_2, &grid);
    let errs: Vec<f64> = [0.08, 0.04, 0.02, 0.01]
        .iter()
        .map(|&eps| trotter_error(&psi, &pot, &grid, &EvolutionParams::new(eps, (2.0 / eps) as usize)).unwrap())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    for w in errs.windows(2) {
        assert!((1.7..=2.3).contains(&(w[0] / w[1])), "{errs:?}");
    }
}

#[test]
fn split_operator_reference_matches_gate_path() {
    let cases = [
        (Potential::free(), SpatialGrid::new(10, 12.0).unwrap(), (0.0, 2.0, 1.0)),
        (
            Potential::new(PotentialShape::Harmonic { mass: 1.0, omega: 1.0 }),
            SpatialGrid::new(8, 8.0).unwrap(),
            (2.0, 0.0, FRAC_1_SQRT_2),
        ),
        (
            Potential::new(PotentialShape::SquareBarrier { height: 3.0, left: 0.0, right: 0.5 }).with_twist(0.3),
            SpatialGrid::new(7, 8.0).unwrap(),
            (-3.0, 2.0, 1.0),
        ),
    ];
    for (pot, grid, (x0, p0, sigma)) in cases {
        let psi = gaussian(x0, p0, sigma, &grid);
        let params = EvolutionParams::new(0.02, 60);
        let gate = evolve(&psi, &pot, &grid, &params).unwrap();
        let reference = split_operator_reference(psi.amplitudes(), &pot, &grid, &params);
        assert_eq!(gate.len(), reference.len());
        for (a, b) in gate.iter().zip(&reference) {
            assert!(max_diff(a.amplitudes(), b) < 1e-8, "n = {}", grid.n_qubits());
        }
    }
}

#[test]
fn split_operator_with_zero_epsilon_is_constant() {
    let grid = SpatialGrid::new(5, 4.0).unwrap();
    let psi = gaussian(1.0, -1.0, 0.9, &grid);
    let pot = Potential::new(PotentialShape::Linear { force: 2.0 });
    for s in split_operator_reference(psi.amplitudes(), &pot, &grid, &EvolutionParams::new(0.0, 5)) {
        assert!(max_diff(&s, psi.amplitudes()) < 1e-12);
    }
}

#[test]
fn energy_drift_over_one_period_is_small() {
    let grid = SpatialGrid::new(6, 8.0).unwrap();
    let pot = Potential::new(PotentialShape::Harmonic { mass: 1.0, omega: 1.0 });
    let params = EvolutionParams::new(TAU / 200.0, 200);
    let h = hamiltonian(&pot, &grid, &params).unwrap();
    let psi = gaussian(2.0, 0.5, 1.0, &grid);
    let e0 = expectation(&h, psi.amplitudes());
    let rel: Vec<f64> = evolve(&psi, &pot, &grid, &params)
        .unwrap()
        .iter()
        .map(|s| expectation(&h, s.amplitudes()) / e0 - 1.0)
        .collect();
    let within = rel.iter().map(|r| r.abs()).fold(0.0, f64::max);
    assert!(rel.last().unwrap().abs() < 0.01, "{rel:?}");
    // Within the period ⟨H⟩ swings by about (ε/2)·⟨xp+px⟩/2, the gap between
    // H and the Hamiltonian the first-order step conserves.
    assert!(within < params.epsilon, "{within}");
}

#[test]
fn eigenphases_are_energies_times_time() {
    let grid = SpatialGrid::new(4, 3.0).unwrap();
    let pot = Potential::new(PotentialShape::Harmonic { mass: 1.0, omega: 1.0 });
    let params = EvolutionParams::new(0.1, 1);
    let h = hamiltonian(&pot, &grid, &params).unwrap();
    let eig = h.clone().symmetric_eigen();
    let t = 0.37;
    let u = exact_propagator(&pot, &grid, t, &params).unwrap();
    for (i, lam) in eig.eigenvalues.iter().enumerate() {
        let v: Vec<C64> = eig.eigenvectors.column(i).iter().copied().collect();
        let uv = u.apply(&v);
        let expect: Vec<C64> = v.iter().map(|c| c * C64::from_polar(1.0, -lam * t)).collect();
        assert!(max_diff(&uv, &expect) < 1e-10);
    }
}
