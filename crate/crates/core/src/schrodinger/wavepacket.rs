use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use super::SpatialGrid;
use crate::statevector::StateVector;
use crate::{cis, Error, Result, C64};

/// Probability outside `(−d, d)` above which [`prepare`] records a warning.
pub const TAIL_MASS_WARNING: f64 = 1e-6;

/// `ψ(x) ∝ exp(−(x−x0)²/4σ² + i p0 x/ħ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub x0: f64,
    pub p0: f64,
    pub sigma: f64,
}

impl GaussianParams {
    pub fn eval(&self, x: f64, hbar: f64) -> C64 {
        let u = (x - self.x0) / self.sigma;
        cis(self.p0 * x / hbar) * libm::exp(-0.25 * u * u)
    }

    /// Analytic `|ψ|²` mass outside `(−d, d)`.
    fn tail_mass(&self, d: f64) -> f64 {
        let s = self.sigma * SQRT_2;
        0.5 * libm::erfc((d - self.x0) / s) + 0.5 * libm::erfc((d + self.x0) / s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WavepacketSpec {
    Gaussian(GaussianParams),
    /// Gaussian of width `width_factor · sqrt(ħ/2mω)`.
    Squeezed { x0: f64, p0: f64, width_factor: f64, omega: f64 },
    /// `ψ₁ + e^{iθ} ψ₂`, normalized after summation.
    TwoPacket { first: GaussianParams, second: GaussianParams, relative_phase: f64 },
}

impl WavepacketSpec {
    pub fn validate(&self) -> Result<()> {
        let check = |g: &GaussianParams| {
            if !(g.sigma > 0.0 && g.sigma.is_finite()) {
                Err(Error::invalid("sigma", "must be positive"))
            } else if !(g.x0.is_finite() && g.p0.is_finite()) {
                Err(Error::invalid("x0", "position and momentum must be finite"))
            } else {
                Ok(())
            }
        };
        match self {
            WavepacketSpec::Gaussian(g) => check(g),
            WavepacketSpec::Squeezed { width_factor, omega, .. } => {
                if !(*width_factor > 0.0 && width_factor.is_finite()) {
                    Err(Error::invalid("width_factor", "must be positive"))
                } else if !(*omega > 0.0 && omega.is_finite()) {
                    Err(Error::invalid("omega", "must be positive"))
                } else {
                    Ok(())
                }
            }
            WavepacketSpec::TwoPacket { first, second, .. } => check(first).and(check(second)),
        }
    }

    /// The Gaussian components, with squeezing resolved to a width.
    fn components(&self, hbar: f64, mass: f64) -> Vec<GaussianParams> {
        match *self {
            WavepacketSpec::Gaussian(g) => alloc::vec![g],
            WavepacketSpec::Squeezed { x0, p0, width_factor, omega } => {
                let coherent = libm::sqrt(hbar / (2.0 * mass * omega));
                alloc::vec![GaussianParams { x0, p0, sigma: width_factor * coherent }]
            }
            WavepacketSpec::TwoPacket { first, second, .. } => alloc::vec![first, second],
        }
    }
}

/// A prepared initial state with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Prepared {
    pub state: StateVector,
    /// Estimated probability of the continuum packet outside `(−d, d)`.
    pub tail_mass: f64,
    pub warnings: Vec<String>,
}

/// Samples `ψ` at the grid points and divides by the discrete norm
/// `𝒩 = sqrt(Σ_k |ψ(x_k)|²)`.
pub fn discretize(psi: impl Fn(f64) -> C64, grid: &SpatialGrid) -> Result<StateVector> {
    let samples: Vec<C64> = (0..grid.dim()).map(|k| psi(grid.point(k))).collect();
    if samples.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::invalid("psi", "non-finite sample"));
    }
    StateVector::normalized(samples)
}

pub fn prepare(spec: &WavepacketSpec, grid: &SpatialGrid, hbar: f64, mass: f64) -> Result<Prepared> {
    spec.validate()?;
    let parts = spec.components(hbar, mass);
    let state = match *spec {
        WavepacketSpec::TwoPacket { first, second, relative_phase } => {
            let rot = cis(relative_phase);
            discretize(|x| first.eval(x, hbar) + rot * second.eval(x, hbar), grid)?
        }
        _ => {
            let g = parts[0];
            discretize(|x| g.eval(x, hbar), grid)?
        }
    };
    let tail_mass = parts.iter().map(|g| g.tail_mass(grid.half_width())).sum::<f64>() / parts.len() as f64;
    let mut warnings = Vec::new();
    if tail_mass > TAIL_MASS_WARNING {
        warnings.push(format!(
            "wave packet has probability {tail_mass:.3e} outside (-d, d); periodic wraparound will distort it"
        ));
    }
    Ok(Prepared { state, tail_mass, warnings })
}
