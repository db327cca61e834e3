use core::f64::consts::PI;

use super::{EvolutionParams, SpatialGrid};
use crate::{Error, Result};

/// Hard walls default to at least this multiple of the largest kinetic
/// energy representable on the grid.
pub const HARD_WALL_KINETIC_FACTOR: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialShape {
    Free,
    /// Uniform force: `V(x) = −F x`.
    Linear { force: f64 },
    /// `height` on `[left, right]`, zero elsewhere.
    SquareBarrier { height: f64, left: f64, right: f64 },
    /// `V(x) = mω²x²/2`.
    Harmonic { mass: f64, omega: f64 },
    /// Harmonic for `x ≥ 0`, `a_cubic · x³` for `x < 0` (confining when
    /// `a_cubic < 0`).
    PiecewiseCubic { mass: f64, omega: f64, a_cubic: f64 },
    /// `height` outside `[left, right]`, zero inside.
    HardWalls { height: f64, left: f64, right: f64 },
}

/// A potential shape plus the Aharonov-Bohm twist flux `φ` that sets the
/// boundary condition `ψ(d) = e^{iφ} ψ(−d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Potential {
    pub shape: PotentialShape,
    pub twist_flux: f64,
}

impl From<PotentialShape> for Potential {
    fn from(shape: PotentialShape) -> Self {
        Potential { shape, twist_flux: 0.0 }
    }
}

impl Potential {
    pub fn new(shape: PotentialShape) -> Self {
        shape.into()
    }

    pub fn free() -> Self {
        PotentialShape::Free.into()
    }

    pub fn with_twist(mut self, flux: f64) -> Self {
        self.twist_flux = flux;
        self
    }

    /// Hard walls around `[left, right]` with a height derived from the
    /// grid and the time step.
    ///
    /// Only `V₀ε/ħ mod 2π` reaches the Trotter map, so the height is the
    /// smallest odd multiple of `πħ/ε` above `HARD_WALL_KINETIC_FACTOR ×
    /// p_max²/2m`: the wall then flips the sign of the enclosed amplitude
    /// every step, which is the strongest reflection the split step can
    /// express.
    pub fn hard_walls(left: f64, right: f64, grid: &SpatialGrid, params: &EvolutionParams) -> Result<Self> {
        if left.is_nan() || right.is_nan() || left >= right {
            return Err(Error::invalid("walls", "left edge must lie below right edge"));
        }
        if params.epsilon.is_nan() || params.epsilon <= 0.0 {
            return Err(Error::invalid("epsilon", "hard walls need a positive time step"));
        }
        let p_max = grid.momenta(params.hbar, 0.0).max_momentum();
        let target = HARD_WALL_KINETIC_FACTOR * p_max * p_max / (2.0 * params.mass);
        let unit = PI * params.hbar / params.epsilon;
        let mut m = libm::ceil(target / unit);
        if m % 2.0 == 0.0 {
            m += 1.0;
        }
        Ok(PotentialShape::HardWalls { height: m * unit, left, right }.into())
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.shape {
            PotentialShape::Free => 0.0,
            PotentialShape::Linear { force } => -force * x,
            PotentialShape::SquareBarrier { height, left, right } => {
                if x >= left && x <= right {
                    height
                } else {
                    0.0
                }
            }
            PotentialShape::Harmonic { mass, omega } => 0.5 * mass * omega * omega * x * x,
            PotentialShape::PiecewiseCubic { mass, omega, a_cubic } => {
                if x >= 0.0 {
                    0.5 * mass * omega * omega * x * x
                } else {
                    a_cubic * x * x * x
                }
            }
            PotentialShape::HardWalls { height, left, right } => {
                if x < left || x > right {
                    height
                } else {
                    0.0
                }
            }
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.shape, PotentialShape::Free)
    }

    /// `(m, ω)` when the potential is purely harmonic.
    pub fn harmonic_parameters(&self) -> Option<(f64, f64)> {
        match self.shape {
            PotentialShape::Harmonic { mass, omega } => Some((mass, omega)),
            _ => None,
        }
    }

    /// Mirror symmetry `V(x) = V(−x)`.
    pub fn is_even(&self) -> bool {
        match self.shape {
            PotentialShape::Free | PotentialShape::Harmonic { .. } => true,
            PotentialShape::Linear { force } => force == 0.0,
            PotentialShape::SquareBarrier { left, right, .. } | PotentialShape::HardWalls { left, right, .. } => {
                left == -right
            }
            PotentialShape::PiecewiseCubic { .. } => false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64, name: &'static str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(name, "must be finite"))
            }
        };
        finite(self.twist_flux, "twist_flux")?;
        match self.shape {
            PotentialShape::Free => Ok(()),
            PotentialShape::Linear { force } => finite(force, "force"),
            PotentialShape::SquareBarrier { height, left, right } | PotentialShape::HardWalls { height, left, right } => {
                finite(height, "height")?;
                finite(left, "left")?;
                finite(right, "right")?;
                if left < right {
                    Ok(())
                } else {
                    Err(Error::invalid("left", "left edge must lie below right edge"))
                }
            }
            PotentialShape::Harmonic { mass, omega } | PotentialShape::PiecewiseCubic { mass, omega, .. } => {
                if !(mass > 0.0 && mass.is_finite()) {
                    return Err(Error::invalid("mass", "must be positive"));
                }
                if !(omega > 0.0 && omega.is_finite()) {
                    return Err(Error::invalid("omega", "must be positive"));
                }
                if let PotentialShape::PiecewiseCubic { a_cubic, .. } = self.shape {
                    finite(a_cubic, "a_cubic")?;
                }
                Ok(())
            }
        }
    }
}
