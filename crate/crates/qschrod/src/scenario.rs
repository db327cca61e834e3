use std::collections::BTreeMap;
use std::time::Instant;

use qschrod_core::measurement::{sample, RamseyInterferometer, RNG_ALGORITHM};
use qschrod_core::preparation::preparation_circuit;
use qschrod_core::schrodinger::{prepare, Potential, PotentialShape, Routing, TrotterStep};
use qschrod_core::StateVector;
use serde::{Deserialize, Serialize};

use crate::config::{Quantity, ScenarioConfig};
use crate::oracle::split_operator_frames;
use crate::{Error, Result};

type Rows = Vec<Vec<f64>>;

/// Largest tolerated `|‖ψ‖² − 1|` over a run.
pub const NORM_TOLERANCE: f64 = 1e-8;
/// Largest tolerated elementwise gap to the split-operator reference.
pub const ORACLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub name: String,
    pub code_version: String,
    pub n_qubits: usize,
    pub dim: usize,
    pub d: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub frames: usize,
    pub substeps: usize,
    pub total_steps: usize,
    pub hbar: f64,
    pub mass: f64,
    /// Resolved potential (hard-wall height included).
    pub potential: String,
    pub wavepacket: String,
    pub re_im_readout: Option<String>,
    pub rng: Option<String>,
    pub seed: u64,
    pub shots: u64,
    pub tail_mass: f64,
    pub warnings: Vec<String>,
    pub norm_drift: f64,
    pub oracle_max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub config: ScenarioConfig,
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    /// `frames × 2ⁿ` per requested quantity.
    pub matrices: BTreeMap<Quantity, Vec<Vec<f64>>>,
    pub trajectory: Vec<StateVector>,
    pub metadata: RunMetadata,
    /// Always measured; only written out on request.
    pub wall_time_seconds: f64,
}

impl ScenarioResult {
    pub fn matrix(&self, q: Quantity) -> Option<&Vec<Vec<f64>>> {
        self.matrices.get(&q)
    }
}

fn describe_potential(p: &Potential) -> String {
    let shape = match p.shape {
        PotentialShape::Free => "free".to_string(),
        PotentialShape::Linear { force } => format!("linear force={force}"),
        PotentialShape::SquareBarrier { height, left, right } => {
            format!("square_barrier height={height} on [{left}, {right}]")
        }
        PotentialShape::Harmonic { mass, omega } => format!("harmonic mass={mass} omega={omega}"),
        PotentialShape::PiecewiseCubic { mass, omega, a_cubic } => {
            format!("piecewise_cubic mass={mass} omega={omega} a_cubic={a_cubic}")
        }
        PotentialShape::HardWalls { height, left, right } => {
            format!("hard_walls height={height} outside [{left}, {right}]")
        }
    };
    format!("{shape} twist_flux={}", p.twist_flux)
}

/// Prepares the packet, evolves it through the gate path and records the
/// requested quantities. `re2`/`im2` come from the Ramsey interferometer
/// driven by the same gates.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioResult> {
    run_scenario_with(config, false)
}

/// As [`run_scenario`], optionally comparing every frame with the
/// split-operator reference.
pub fn run_scenario_with(config: &ScenarioConfig, oracle_check: bool) -> Result<ScenarioResult> {
    config.validate()?;
    let start = Instant::now();
    let grid = config.grid()?;
    let params = config.params();
    let potential = config.build_potential()?;
    let spec = config.build_wavepacket();
    let prepared = prepare(&spec, &grid, config.hbar, config.mass)?;

    let step = TrotterStep::new(&potential, &grid, &params, Routing::auto(&potential))?;
    let mut trajectory = Vec::with_capacity(config.frames);
    let mut psi = prepared.state.clone();
    trajectory.push(psi.clone());
    for _ in 1..config.frames {
        for _ in 0..config.substeps {
            step.apply(&mut psi)?;
        }
        trajectory.push(psi.clone());
    }

    let norm_drift = trajectory.iter().map(|s| (s.norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
    let times: Vec<f64> = (0..config.frames).map(|f| (f * config.substeps) as f64 * config.epsilon).collect();
    let positions = grid.points();

    let mut matrices = BTreeMap::new();
    let wants = |q| config.outputs.contains(&q);
    if wants(Quantity::Abs2) {
        matrices.insert(Quantity::Abs2, trajectory.iter().map(|s| s.probabilities()).collect());
    }
    if wants(Quantity::Abs) {
        matrices.insert(Quantity::Abs, trajectory.iter().map(|s| s.amplitudes().iter().map(|c| c.norm()).collect()).collect());
    }
    let mut readout = None;
    if wants(Quantity::Re2) || wants(Quantity::Im2) {
        let (re2, im2) = ramsey_readout(&prepared.state, &step, config)?;
        if wants(Quantity::Re2) {
            matrices.insert(Quantity::Re2, re2);
        }
        if wants(Quantity::Im2) {
            matrices.insert(Quantity::Im2, im2);
        }
        readout = Some("ramsey interferometer, ancilla = most significant qubit".to_string());
    }
    let mut rng = None;
    if wants(Quantity::Samples) {
        let mut rows = Vec::with_capacity(config.frames);
        for (f, s) in trajectory.iter().enumerate() {
            rows.push(sample(s, config.shots, config.seed.wrapping_add(f as u64))?.estimates());
        }
        matrices.insert(Quantity::Samples, rows);
        rng = Some(format!("{RNG_ALGORITHM}, frame f uses seed + f"));
    }

    let oracle_max_deviation = if oracle_check {
        let reference = split_operator_frames(
            prepared.state.amplitudes(),
            &potential,
            &grid,
            &params,
            config.frames,
            config.substeps,
        );
        let dev = trajectory
            .iter()
            .zip(&reference)
            .flat_map(|(s, r)| s.amplitudes().iter().zip(r).map(|(a, b)| (a - b).norm()))
            .fold(0.0, f64::max);
        Some(dev)
    } else {
        None
    };

    let wall_time_seconds = start.elapsed().as_secs_f64();
    let metadata = RunMetadata {
        name: config.name.clone(),
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        n_qubits: config.n_qubits,
        dim: grid.dim(),
        d: config.d,
        delta: grid.delta(),
        epsilon: config.epsilon,
        frames: config.frames,
        substeps: config.substeps,
        total_steps: config.total_steps(),
        hbar: config.hbar,
        mass: config.mass,
        potential: describe_potential(&potential),
        wavepacket: format!("{spec:?}"),
        re_im_readout: readout,
        rng,
        seed: config.seed,
        shots: if wants(Quantity::Samples) { config.shots } else { 0 },
        tail_mass: prepared.tail_mass,
        warnings: prepared.warnings,
        norm_drift,
        oracle_max_deviation,
        wall_time_seconds: None,
    };
    Ok(ScenarioResult {
        config: config.clone(),
        times,
        positions,
        matrices,
        trajectory,
        metadata,
        wall_time_seconds,
    })
}

/// Per-frame `(P0, P1)` of the Ramsey interferometer whose `W` is the
/// preparation circuit followed by the Trotter gates so far.
fn ramsey_readout(
    psi0: &StateVector,
    step: &TrotterStep,
    config: &ScenarioConfig,
) -> Result<(Rows, Rows)> {
    let gates = step.to_gates();
    let mut ramsey = RamseyInterferometer::new(config.n_qubits)?;
    ramsey.append(&preparation_circuit(psi0)?)?;
    let (mut re2, mut im2) = (Vec::with_capacity(config.frames), Vec::with_capacity(config.frames));
    for f in 0..config.frames {
        if f > 0 {
            for _ in 0..config.substeps {
                ramsey.append(&gates)?;
            }
        }
        let out = ramsey.outcome();
        re2.push(out.p0);
        im2.push(out.p1);
    }
    Ok((re2, im2))
}

/// Fails with an invariant error when the run broke unitarity or
/// disagreed with the reference.
pub fn check_invariants(result: &ScenarioResult) -> Result<()> {
    if result.metadata.norm_drift > NORM_TOLERANCE {
        return Err(Error::Invariant {
            what: "norm drift",
            detail: format!("{:.3e} exceeds {NORM_TOLERANCE:e}", result.metadata.norm_drift),
        });
    }
    if let Some(dev) = result.metadata.oracle_max_deviation {
        if dev > ORACLE_TOLERANCE {
            return Err(Error::Invariant {
                what: "oracle check",
                detail: format!("max deviation {dev:.3e} exceeds {ORACLE_TOLERANCE:e}"),
            });
        }
    }
    Ok(())
}
