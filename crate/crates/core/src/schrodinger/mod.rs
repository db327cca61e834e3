//! Physics layer: grids, potentials, wave packets and the Trotter driver
//! `F⁻¹ e^{-ip²ε/2mħ} F e^{-iV(x)ε/ħ}`.

mod evolution;
mod grid;
mod potential;
mod wavepacket;

pub use evolution::{
    apply_twist_gauge, evolve, evolve_frames, kinetic_step, kinetic_step_via, potential_step, potential_step_via, EvolutionParams,
    Routing, TrotterStep,
};
pub use grid::{MomentumGrid, SpatialGrid};
pub use potential::{Potential, PotentialShape, HARD_WALL_KINETIC_FACTOR};
pub use wavepacket::{discretize, prepare, GaussianParams, Prepared, WavepacketSpec, TAIL_MASS_WARNING};
