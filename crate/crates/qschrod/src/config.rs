//! Scenario files: TOML with flat run settings plus `[potential]` and
//! `[wavepacket]` tables selected by `kind`.

use std::fmt;
use std::path::{Path, PathBuf};

use qschrod_core::schrodinger::{
    EvolutionParams, GaussianParams, Potential, PotentialShape, SpatialGrid, WavepacketSpec,
};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest register the runner accepts (2²⁴ amplitudes).
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Abs2,
    Re2,
    Im2,
    Abs,
    Samples,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [Quantity::Abs2, Quantity::Re2, Quantity::Im2, Quantity::Abs, Quantity::Samples];

    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Abs2 => "abs2",
            Quantity::Re2 => "re2",
            Quantity::Im2 => "im2",
            Quantity::Abs => "abs",
            Quantity::Samples => "samples",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Free {
        #[serde(default)]
        twist_flux: f64,
    },
    Linear {
        force: f64,
        #[serde(default)]
        twist_flux: f64,
    },
    SquareBarrier {
        height: f64,
        left: f64,
        right: f64,
        #[serde(default)]
        twist_flux: f64,
    },
    Harmonic {
        omega: f64,
        #[serde(default)]
        twist_flux: f64,
    },
    PiecewiseCubic {
        omega: f64,
        a_cubic: f64,
        #[serde(default)]
        twist_flux: f64,
    },
    /// Height defaults to the grid-derived value when omitted.
    HardWalls {
        left: f64,
        right: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        height: Option<f64>,
        #[serde(default)]
        twist_flux: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketConfig {
    pub x0: f64,
    #[serde(default)]
    pub p0: f64,
    pub sigma: f64,
}

impl From<PacketConfig> for GaussianParams {
    fn from(p: PacketConfig) -> Self {
        GaussianParams { x0: p.x0, p0: p.p0, sigma: p.sigma }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WavepacketConfig {
    Gaussian {
        x0: f64,
        #[serde(default)]
        p0: f64,
        sigma: f64,
    },
    /// `omega` falls back to the harmonic potential's frequency.
    Squeezed {
        x0: f64,
        #[serde(default)]
        p0: f64,
        width_factor: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega: Option<f64>,
    },
    TwoPacket {
        first: PacketConfig,
        second: PacketConfig,
        #[serde(default)]
        relative_phase: f64,
    },
}

fn default_frames() -> usize {
    40
}
fn default_one_usize() -> usize {
    1
}
fn default_one() -> f64 {
    1.0
}
fn default_outputs() -> Vec<Quantity> {
    vec![Quantity::Abs2]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    /// Parameters picked by hand to show the qualitative behaviour rather
    /// than taken from a reference table.
    #[serde(default)]
    pub reconstructed: bool,
    pub n_qubits: usize,
    /// Half-width of the box `(−d, d)`.
    pub d: f64,
    pub epsilon: f64,
    /// Recorded rows, the initial state included.
    #[serde(default = "default_frames")]
    pub frames: usize,
    /// Trotter steps between consecutive rows.
    #[serde(default = "default_one_usize")]
    pub substeps: usize,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<Quantity>,
    #[serde(default)]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_one")]
    pub hbar: f64,
    #[serde(default = "default_one")]
    pub mass: f64,
    pub potential: PotentialConfig,
    pub wavepacket: WavepacketConfig,
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(path, format!("must be positive and finite, got {v}")))
    }
}

fn finite(path: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(path, format!("must be finite, got {v}")))
    }
}

fn packet(path: &str, p: &PacketConfig) -> Result<()> {
    finite(&format!("{path}.x0"), p.x0)?;
    finite(&format!("{path}.p0"), p.p0)?;
    positive(&format!("{path}.sigma"), p.sigma)
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
            let path = e.span().map(|s| line_of(text, s.start)).unwrap_or_default();
            Error::config(path, e.message().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config { path: field, message } => {
                Error::config(format!("{}: {field}", path.display()), message)
            }
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(Error::config("name", "must be non-empty and use only [A-Za-z0-9_-]"));
        }
        if !(1..=MAX_QUBITS).contains(&self.n_qubits) {
            return Err(Error::config("n_qubits", format!("must lie in 1..={MAX_QUBITS}, got {}", self.n_qubits)));
        }
        positive("d", self.d)?;
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::config("epsilon", format!("must be finite and non-negative, got {}", self.epsilon)));
        }
        if self.frames == 0 {
            return Err(Error::config("frames", "must be at least 1"));
        }
        if self.substeps == 0 {
            return Err(Error::config("substeps", "must be at least 1"));
        }
        if self.outputs.is_empty() {
            return Err(Error::config("outputs", "request at least one quantity"));
        }
        for (i, q) in self.outputs.iter().enumerate() {
            if self.outputs[..i].contains(q) {
                return Err(Error::config(format!("outputs[{i}]"), format!("`{q}` listed twice")));
            }
        }
        if self.outputs.contains(&Quantity::Samples) && self.shots == 0 {
            return Err(Error::config("shots", "must be positive when `samples` is requested"));
        }
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        self.validate_potential()?;
        self.validate_wavepacket()
    }

    fn validate_potential(&self) -> Result<()> {
        let twist = match &self.potential {
            PotentialConfig::Free { twist_flux } => *twist_flux,
            PotentialConfig::Linear { force, twist_flux } => {
                finite("potential.force", *force)?;
                *twist_flux
            }
            PotentialConfig::SquareBarrier { height, left, right, twist_flux } => {
                finite("potential.height", *height)?;
                finite("potential.left", *left)?;
                finite("potential.right", *right)?;
                if left.is_nan() || right.is_nan() || left >= right {
                    return Err(Error::config("potential.right", "must exceed potential.left"));
                }
                *twist_flux
            }
            PotentialConfig::Harmonic { omega, twist_flux } => {
                positive("potential.omega", *omega)?;
                *twist_flux
            }
            PotentialConfig::PiecewiseCubic { omega, a_cubic, twist_flux } => {
                positive("potential.omega", *omega)?;
                finite("potential.a_cubic", *a_cubic)?;
                if *a_cubic > 0.0 {
                    return Err(Error::config("potential.a_cubic", "must be ≤ 0 for a confining x < 0 branch"));
                }
                *twist_flux
            }
            PotentialConfig::HardWalls { left, right, height, twist_flux } => {
                finite("potential.left", *left)?;
                finite("potential.right", *right)?;
                if left.is_nan() || right.is_nan() || left >= right {
                    return Err(Error::config("potential.right", "must exceed potential.left"));
                }
                if let Some(h) = height {
                    positive("potential.height", *h)?;
                }
                if self.epsilon == 0.0 && height.is_none() {
                    return Err(Error::config("potential.height", "needs epsilon > 0 to derive a default"));
                }
                *twist_flux
            }
        };
        finite("potential.twist_flux", twist)
    }

    fn validate_wavepacket(&self) -> Result<()> {
        match &self.wavepacket {
            WavepacketConfig::Gaussian { x0, p0, sigma } => {
                packet("wavepacket", &PacketConfig { x0: *x0, p0: *p0, sigma: *sigma })
            }
            WavepacketConfig::Squeezed { x0, p0, width_factor, omega } => {
                finite("wavepacket.x0", *x0)?;
                finite("wavepacket.p0", *p0)?;
                positive("wavepacket.width_factor", *width_factor)?;
                match omega {
                    Some(w) => positive("wavepacket.omega", *w),
                    None if self.harmonic_omega().is_some() => Ok(()),
                    None => Err(Error::config("wavepacket.omega", "required unless the potential is harmonic")),
                }
            }
            WavepacketConfig::TwoPacket { first, second, relative_phase } => {
                packet("wavepacket.first", first)?;
                packet("wavepacket.second", second)?;
                finite("wavepacket.relative_phase", *relative_phase)
            }
        }
    }

    fn harmonic_omega(&self) -> Option<f64> {
        match self.potential {
            PotentialConfig::Harmonic { omega, .. } | PotentialConfig::PiecewiseCubic { omega, .. } => Some(omega),
            _ => None,
        }
    }

    pub fn grid(&self) -> Result<SpatialGrid> {
        Ok(SpatialGrid::new(self.n_qubits, self.d)?)
    }

    /// Total Trotter steps `(frames − 1) · substeps`.
    pub fn total_steps(&self) -> usize {
        (self.frames - 1) * self.substeps
    }

    pub fn params(&self) -> EvolutionParams {
        EvolutionParams { epsilon: self.epsilon, steps: self.total_steps(), hbar: self.hbar, mass: self.mass }
    }

    pub fn build_potential(&self) -> Result<Potential> {
        let grid = self.grid()?;
        let m = self.mass;
        let pot = match self.potential {
            PotentialConfig::Free { twist_flux } => Potential::free().with_twist(twist_flux),
            PotentialConfig::Linear { force, twist_flux } => {
                Potential::new(PotentialShape::Linear { force }).with_twist(twist_flux)
            }
            PotentialConfig::SquareBarrier { height, left, right, twist_flux } => {
                Potential::new(PotentialShape::SquareBarrier { height, left, right }).with_twist(twist_flux)
            }
            PotentialConfig::Harmonic { omega, twist_flux } => {
                Potential::new(PotentialShape::Harmonic { mass: m, omega }).with_twist(twist_flux)
            }
            PotentialConfig::PiecewiseCubic { omega, a_cubic, twist_flux } => {
                Potential::new(PotentialShape::PiecewiseCubic { mass: m, omega, a_cubic }).with_twist(twist_flux)
            }
            PotentialConfig::HardWalls { left, right, height: Some(height), twist_flux } => {
                Potential::new(PotentialShape::HardWalls { height, left, right }).with_twist(twist_flux)
            }
            PotentialConfig::HardWalls { left, right, height: None, twist_flux } => {
                Potential::hard_walls(left, right, &grid, &self.params())?.with_twist(twist_flux)
            }
        };
        Ok(pot)
    }

    pub fn build_wavepacket(&self) -> WavepacketSpec {
        match self.wavepacket {
            WavepacketConfig::Gaussian { x0, p0, sigma } => WavepacketSpec::Gaussian(GaussianParams { x0, p0, sigma }),
            WavepacketConfig::Squeezed { x0, p0, width_factor, omega } => WavepacketSpec::Squeezed {
                x0,
                p0,
                width_factor,
                omega: omega.or(self.harmonic_omega()).unwrap_or(1.0),
            },
            WavepacketConfig::TwoPacket { first, second, relative_phase } => {
                WavepacketSpec::TwoPacket { first: first.into(), second: second.into(), relative_phase }
            }
        }
    }
}

fn line_of(text: &str, offset: usize) -> String {
    let line = text[..offset.min(text.len())].matches('\n').count() + 1;
    format!("line {line}")
}

pub const BUILTINS: [(&str, &str); 6] = [
    ("accelerated", include_str!("../scenarios/accelerated.toml")),
    ("barrier", include_str!("../scenarios/barrier.toml")),
    ("squeezed", include_str!("../scenarios/squeezed.toml")),
    ("anharmonic", include_str!("../scenarios/anharmonic.toml")),
    ("accelerated_reim", include_str!("../scenarios/accelerated_reim.toml")),
    ("two_packets", include_str!("../scenarios/two_packets.toml")),
];

pub fn builtin(name: &str) -> Option<ScenarioConfig> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| ScenarioConfig::from_toml(text).expect("built-in scenarios parse"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSource {
    Builtin,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioEntry {
    pub name: String,
    pub description: String,
    pub source: ScenarioSource,
    /// Set when a user file fails to parse or validate.
    pub error: Option<String>,
}

/// The built-ins followed by every `*.toml` in `user_dir`, sorted by file
/// name. Broken files are listed with their error.
pub fn list_scenarios(user_dir: Option<&Path>) -> Vec<ScenarioEntry> {
    let mut out: Vec<ScenarioEntry> = BUILTINS
        .iter()
        .map(|(name, _)| {
            let cfg = builtin(name).expect("listed built-in");
            ScenarioEntry {
                name: cfg.name,
                description: cfg.description,
                source: ScenarioSource::Builtin,
                error: None,
            }
        })
        .collect();
    let Some(dir) = user_dir else { return out };
    let Ok(read) = std::fs::read_dir(dir) else { return out };
    let mut files: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    for path in files {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.push(match ScenarioConfig::load(&path) {
            Ok(cfg) => ScenarioEntry {
                name: cfg.name,
                description: cfg.description,
                source: ScenarioSource::File(path),
                error: None,
            },
            Err(e) => ScenarioEntry {
                name: stem,
                description: String::new(),
                source: ScenarioSource::File(path),
                error: Some(e.to_string()),
            },
        });
    }
    out
}

/// Resolves a scenario argument: an existing file path, then a built-in
/// name, then a `<name>.toml` or matching `name` in `user_dir`.
pub fn resolve(arg: &str, user_dir: Option<&Path>) -> Result<ScenarioConfig> {
    let path = Path::new(arg);
    if path.is_file() {
        return ScenarioConfig::load(path);
    }
    if let Some(cfg) = builtin(arg) {
        return Ok(cfg);
    }
    if let Some(dir) = user_dir {
        let candidate = dir.join(format!("{arg}.toml"));
        if candidate.is_file() {
            return ScenarioConfig::load(&candidate);
        }
        for entry in list_scenarios(Some(dir)) {
            if let (ScenarioSource::File(p), None) = (&entry.source, &entry.error) {
                if entry.name == arg {
                    return ScenarioConfig::load(p);
                }
            }
        }
    }
    Err(Error::UnknownScenario(arg.to_string()))
}
