//! Dense and FFT reference implementations. Nothing here touches the gate
//! kernels; only grid and potential definitions are shared.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use qschrod_core::schrodinger::{EvolutionParams, Potential, SpatialGrid};
use qschrod_core::C64;
use rustfft::FftPlanner;

use crate::{Error, Result};

pub const MAX_DFT_QUBITS: usize = 12;
pub const MAX_DENSE_QUBITS: usize = 8;

/// A dense `N × N` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub matrix: DMatrix<C64>,
}

impl DenseOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        (&self.matrix * DVector::from_column_slice(v)).as_slice().to_vec()
    }

    /// `max |U†U − I|`.
    pub fn unitarity_error(&self) -> f64 {
        let g = self.matrix.adjoint() * &self.matrix;
        let id = DMatrix::<C64>::identity(self.dim(), self.dim());
        (g - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn check(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::TooLarge { what, n, max });
    }
    Ok(())
}

/// `D[l][k] = e^{2πikl/N}/√N`.
pub fn dft_matrix(n: usize) -> Result<DenseOperator> {
    check("dft_matrix", n, MAX_DFT_QUBITS)?;
    let dim = 1usize << n;
    let s = 1.0 / (dim as f64).sqrt();
    let matrix = DMatrix::from_fn(dim, dim, |l, k| C64::from_polar(s, TAU * ((k * l) % dim) as f64 / dim as f64));
    Ok(DenseOperator { matrix })
}

/// Kinetic energy `(p_l + ħφ/L)²/2m` of momentum mode `l` (signed grid).
fn mode_energies(grid: &SpatialGrid, params: &EvolutionParams, twist: f64) -> Vec<f64> {
    let momenta = grid.momenta(params.hbar, twist);
    (0..grid.dim())
        .map(|l| {
            let p = momenta.kinetic_momentum(l);
            p * p / (2.0 * params.mass)
        })
        .collect()
}

/// Discretized `H = D diag(E_l) D† + diag(V(x_k))`, where column `l` of `D`
/// is the grid plane wave of momentum `p_l`.
pub fn hamiltonian(potential: &Potential, grid: &SpatialGrid, params: &EvolutionParams) -> Result<DMatrix<C64>> {
    check("hamiltonian", grid.n_qubits(), MAX_DENSE_QUBITS)?;
    let d = dft_matrix(grid.n_qubits())?.matrix;
    let e = mode_energies(grid, params, potential.twist_flux);
    let mut h = DMatrix::<C64>::zeros(grid.dim(), grid.dim());
    for j in 0..grid.dim() {
        for k in 0..grid.dim() {
            h[(j, k)] = (0..grid.dim()).map(|l| d[(j, l)] * e[l] * d[(k, l)].conj()).sum();
        }
        h[(j, j)] += potential.value(grid.point(j));
    }
    Ok(h)
}

/// `e^{−iHt/ħ}` from the eigendecomposition of the dense Hamiltonian.
pub fn exact_propagator(
    potential: &Potential,
    grid: &SpatialGrid,
    t: f64,
    params: &EvolutionParams,
) -> Result<DenseOperator> {
    let h = hamiltonian(potential, grid, params)?;
    let eig = h.symmetric_eigen();
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|lam| C64::from_polar(1.0, -lam * t / params.hbar)));
    let v = &eig.eigenvectors;
    Ok(DenseOperator { matrix: v * phases * v.adjoint() })
}

/// `⟨ψ|H|ψ⟩` for a dense Hamiltonian.
pub fn expectation(h: &DMatrix<C64>, psi: &[C64]) -> f64 {
    let v = DVector::from_column_slice(psi);
    (v.adjoint() * h * &v)[(0, 0)].re
}

/// Plain-array split-operator evolution: potential phase, FFT, kinetic
/// phase, inverse FFT. Returns `frames` snapshots `substeps` steps apart,
/// the first being `psi0`.
pub fn split_operator_frames(
    psi0: &[C64],
    potential: &Potential,
    grid: &SpatialGrid,
    params: &EvolutionParams,
    frames: usize,
    substeps: usize,
) -> Vec<Vec<C64>> {
    let dim = psi0.len();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(dim);
    let inverse = planner.plan_fft_inverse(dim);
    let v_phase: Vec<C64> = (0..dim)
        .map(|k| C64::from_polar(1.0, -potential.value(grid.point(k)) * params.epsilon / params.hbar))
        .collect();
    let k_phase: Vec<C64> = mode_energies(grid, params, potential.twist_flux)
        .into_iter()
        .map(|e| C64::from_polar(1.0 / dim as f64, -e * params.epsilon / params.hbar))
        .collect();

    let mut psi = psi0.to_vec();
    let mut out = Vec::with_capacity(frames);
    if frames == 0 {
        return out;
    }
    out.push(psi.clone());
    for _ in 1..frames {
        for _ in 0..substeps {
            psi.iter_mut().zip(&v_phase).for_each(|(a, b)| *a *= b);
            forward.process(&mut psi);
            psi.iter_mut().zip(&k_phase).for_each(|(a, b)| *a *= b);
            inverse.process(&mut psi);
        }
        out.push(psi.clone());
    }
    out
}

/// [`split_operator_frames`] with one snapshot per step, `params.steps + 1`
/// in total.
pub fn split_operator_reference(
    psi0: &[C64],
    potential: &Potential,
    grid: &SpatialGrid,
    params: &EvolutionParams,
) -> Vec<Vec<C64>> {
    split_operator_frames(psi0, potential, grid, params, params.steps + 1, 1)
}
