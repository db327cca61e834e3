use qschrod_core::schrodinger::{evolve, EvolutionParams, Potential, SpatialGrid};
use qschrod_core::StateVector;

use crate::oracle::{exact_propagator, MAX_DENSE_QUBITS};
use crate::{Error, Result};

/// `‖ψ_trotter(t) − ψ_exact(t)‖` at `t = ε · steps`, with the exact state
/// from the dense propagator.
pub fn trotter_error(
    state0: &StateVector,
    potential: &Potential,
    grid: &SpatialGrid,
    params: &EvolutionParams,
) -> Result<f64> {
    if grid.n_qubits() > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge { what: "trotter_error", n: grid.n_qubits(), max: MAX_DENSE_QUBITS });
    }
    let t = params.epsilon * params.steps as f64;
    let exact = exact_propagator(potential, grid, t, params)?.apply(state0.amplitudes());
    let trotter = evolve(state0, potential, grid, params)?.pop().expect("at least the initial state");
    Ok(trotter.amplitudes().iter().zip(&exact).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
}
