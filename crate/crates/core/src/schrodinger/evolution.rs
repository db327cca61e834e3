use alloc::vec::Vec;

use super::{Potential, SpatialGrid};
use crate::diagonal::{
    apply_diagonal_direct, apply_quadratic_phase, build_generic_diagonal_circuit, DiagonalRoute, PhaseTable,
    QuadraticPhaseSpec,
};
use crate::qft::{build_qft_plan, QftPlan};
use crate::statevector::{GateOp, StateVector};
use crate::{Error, Result};

/// Trotter step `ε`, number of steps `l`, and units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub epsilon: f64,
    pub steps: usize,
    pub hbar: f64,
    pub mass: f64,
}

impl EvolutionParams {
    /// `ħ = m = 1`.
    pub fn new(epsilon: f64, steps: usize) -> Self {
        EvolutionParams { epsilon, steps, hbar: 1.0, mass: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::invalid("epsilon", "must be finite and non-negative"));
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::invalid("hbar", "must be positive"));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::invalid("mass", "must be positive"));
        }
        Ok(())
    }
}

/// Which diagonal route each half of the step takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Routing {
    pub potential: DiagonalRoute,
    pub kinetic: DiagonalRoute,
}

impl Routing {
    /// Quadratic circuit for a harmonic potential, the generic circuit for
    /// anything else; the kinetic phase always takes the quadratic circuit.
    pub fn auto(potential: &Potential) -> Self {
        let potential = if potential.harmonic_parameters().is_some() {
            DiagonalRoute::Quadratic
        } else {
            DiagonalRoute::GenericCircuit
        };
        Routing { potential, kinetic: DiagonalRoute::Quadratic }
    }

    pub fn direct() -> Self {
        Routing { potential: DiagonalRoute::Direct, kinetic: DiagonalRoute::Direct }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Stage {
    Identity,
    Direct(PhaseTable),
    Gates(Vec<GateOp>),
    Quadratic(QuadraticPhaseSpec),
}

impl Stage {
    fn build(route: DiagonalRoute, table: PhaseTable, quadratic: Option<QuadraticPhaseSpec>, n: usize) -> Result<Self> {
        if table.0.iter().all(|&p| p == 0.0) {
            return Ok(Stage::Identity);
        }
        Ok(match route {
            DiagonalRoute::Direct => Stage::Direct(table),
            DiagonalRoute::GenericCircuit => Stage::Gates(build_generic_diagonal_circuit(&table, n)?),
            DiagonalRoute::Quadratic => match quadratic {
                Some(spec) => Stage::Quadratic(spec),
                None => return Err(Error::invalid("route", "quadratic circuit needs a harmonic potential")),
            },
        })
    }

    fn apply(&self, state: &mut StateVector) -> Result<()> {
        match self {
            Stage::Identity => Ok(()),
            Stage::Direct(table) => {
                apply_diagonal_direct(state, table);
                Ok(())
            }
            Stage::Gates(gates) => state.apply_all(gates),
            Stage::Quadratic(spec) => apply_quadratic_phase(state, spec),
        }
    }

    fn gates(&self, n: usize) -> Vec<GateOp> {
        match self {
            Stage::Identity => Vec::new(),
            Stage::Direct(table) => build_generic_diagonal_circuit(table, n).expect("n >= 1"),
            Stage::Gates(g) => g.clone(),
            Stage::Quadratic(spec) => spec.to_gates(),
        }
    }
}

/// One precompiled Trotter step: potential phase, inverse QFT into the
/// momentum representation, kinetic phase, forward QFT back.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterStep {
    n_qubits: usize,
    potential: Stage,
    kinetic: Stage,
    to_momentum: QftPlan,
    to_position: QftPlan,
}

fn potential_table(potential: &Potential, grid: &SpatialGrid, params: &EvolutionParams) -> PhaseTable {
    let scale = -params.epsilon / params.hbar;
    PhaseTable((0..grid.dim()).map(|k| scale * potential.value(grid.point(k))).collect())
}

fn kinetic_table(grid: &SpatialGrid, params: &EvolutionParams, twist: f64) -> PhaseTable {
    let momenta = grid.momenta(params.hbar, twist);
    let scale = -params.epsilon / (2.0 * params.mass * params.hbar);
    PhaseTable(
        (0..grid.dim())
            .map(|l| {
                let p = momenta.kinetic_momentum(l);
                scale * p * p
            })
            .collect(),
    )
}

impl TrotterStep {
    pub fn new(potential: &Potential, grid: &SpatialGrid, params: &EvolutionParams, routing: Routing) -> Result<Self> {
        params.validate()?;
        potential.validate()?;
        let n = grid.n_qubits();
        let harmonic = potential
            .harmonic_parameters()
            .map(|(m, w)| QuadraticPhaseSpec::harmonic(grid, m, w, params.epsilon, params.hbar));
        let potential_stage = Stage::build(routing.potential, potential_table(potential, grid, params), harmonic, n)?;
        let momenta = grid.momenta(params.hbar, potential.twist_flux);
        let kinetic_spec = QuadraticPhaseSpec::kinetic(&momenta, params.mass, params.epsilon);
        let kinetic_stage = Stage::build(
            routing.kinetic,
            kinetic_table(grid, params, potential.twist_flux),
            Some(kinetic_spec),
            n,
        )?;
        Ok(TrotterStep {
            n_qubits: n,
            potential: potential_stage,
            kinetic: kinetic_stage,
            to_momentum: build_qft_plan(n, true)?,
            to_position: build_qft_plan(n, false)?,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { left: state.n_qubits(), right: self.n_qubits });
        }
        Ok(())
    }

    pub fn apply_potential(&self, state: &mut StateVector) -> Result<()> {
        self.check(state)?;
        self.potential.apply(state)
    }

    pub fn apply_kinetic(&self, state: &mut StateVector) -> Result<()> {
        self.check(state)?;
        if self.kinetic == Stage::Identity {
            return Ok(());
        }
        self.to_momentum.apply(state)?;
        self.kinetic.apply(state)?;
        self.to_position.apply(state)
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.apply_potential(state)?;
        self.apply_kinetic(state)
    }

    /// The whole step as an elementary gate list (QFT reversal as CNOT
    /// swaps, direct stages expanded to the generic circuit).
    pub fn to_gates(&self) -> Vec<GateOp> {
        let mut gates = self.potential.gates(self.n_qubits);
        if self.kinetic != Stage::Identity {
            gates.extend(self.to_momentum.to_gates());
            gates.extend(self.kinetic.gates(self.n_qubits));
            gates.extend(self.to_position.to_gates());
        }
        gates
    }
}

/// `c_k → e^{−iV(x_k)ε/ħ} c_k` via the automatic route.
pub fn potential_step(
    state: &mut StateVector,
    potential: &Potential,
    grid: &SpatialGrid,
    params: &EvolutionParams,
) -> Result<()> {
    potential_step_via(state, potential, grid, params, Routing::auto(potential).potential)
}

pub fn potential_step_via(
    state: &mut StateVector,
    potential: &Potential,
    grid: &SpatialGrid,
    params: &EvolutionParams,
    route: DiagonalRoute,
) -> Result<()> {
    let routing = Routing { potential: route, kinetic: DiagonalRoute::Direct };
    TrotterStep::new(potential, grid, params, routing)?.apply_potential(state)
}

/// `F⁻¹ e^{−i(p+ħφ/L)²ε/2mħ} F` with the signed momentum grid.
pub fn kinetic_step(state: &mut StateVector, grid: &SpatialGrid, params: &EvolutionParams, twist: f64) -> Result<()> {
    kinetic_step_via(state, grid, params, twist, DiagonalRoute::Quadratic)
}

pub fn kinetic_step_via(
    state: &mut StateVector,
    grid: &SpatialGrid,
    params: &EvolutionParams,
    twist: f64,
    route: DiagonalRoute,
) -> Result<()> {
    let routing = Routing { potential: DiagonalRoute::Direct, kinetic: route };
    TrotterStep::new(&Potential::free().with_twist(twist), grid, params, routing)?.apply_kinetic(state)
}

/// Converts between the periodic frame the evolution runs in and the
/// physical twisted frame where `ψ(x + L) = e^{iφ} ψ(x)`:
/// `c_k → e^{±iφ(x_k + d)/L} c_k`, `+` going to the physical frame.
pub fn apply_twist_gauge(state: &mut StateVector, grid: &SpatialGrid, flux: f64, to_physical: bool) -> Result<()> {
    if state.n_qubits() != grid.n_qubits() {
        return Err(Error::DimensionMismatch { left: state.n_qubits(), right: grid.n_qubits() });
    }
    let sign = if to_physical { 1.0 } else { -1.0 };
    let scale = sign * flux / grid.length();
    let d = grid.half_width();
    apply_diagonal_direct(state, &|k: usize| scale * (grid.point(k) + d));
    Ok(())
}

/// Applies `params.steps` Trotter steps and returns every intermediate
/// state, the initial one included.
pub fn evolve(
    state: &StateVector,
    potential: &Potential,
    grid: &SpatialGrid,
    params: &EvolutionParams,
) -> Result<Vec<StateVector>> {
    evolve_frames(state, potential, grid, params, Routing::auto(potential), params.steps + 1, 1)
}

/// Records `frames` snapshots (the first is `state`), advancing `substeps`
/// Trotter steps between consecutive snapshots.
pub fn evolve_frames(
    state: &StateVector,
    potential: &Potential,
    grid: &SpatialGrid,
    params: &EvolutionParams,
    routing: Routing,
    frames: usize,
    substeps: usize,
) -> Result<Vec<StateVector>> {
    if state.n_qubits() != grid.n_qubits() {
        return Err(Error::DimensionMismatch { left: state.n_qubits(), right: grid.n_qubits() });
    }
    let step = TrotterStep::new(potential, grid, params, routing)?;
    let mut out = Vec::with_capacity(frames);
    if frames == 0 {
        return Ok(out);
    }
    let mut current = state.clone();
    out.push(current.clone());
    for _ in 1..frames {
        for _ in 0..substeps {
            step.apply(&mut current)?;
        }
        out.push(current.clone());
    }
    Ok(out)
}
