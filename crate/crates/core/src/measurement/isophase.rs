use alloc::vec::Vec;

use crate::statevector::StateVector;
use crate::{Error, Result};

/// A real field sampled on `frames × positions`, row-major by frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub values: Vec<f64>,
}

impl SpaceTimeField {
    pub fn new(times: Vec<f64>, positions: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.is_empty() || positions.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if values.len() != times.len() * positions.len() {
            return Err(Error::DimensionMismatch { left: values.len(), right: times.len() * positions.len() });
        }
        Ok(SpaceTimeField { times, positions, values })
    }

    /// Builds a field from a trajectory with `f` applied to each amplitude.
    pub fn from_trajectory(
        times: &[f64],
        positions: &[f64],
        trajectory: &[StateVector],
        f: impl Fn(crate::C64) -> f64,
    ) -> Result<Self> {
        let values = trajectory.iter().flat_map(|s| s.amplitudes().iter().map(|&c| f(c))).collect();
        Self::new(times.to_vec(), positions.to_vec(), values)
    }

    pub fn frames(&self) -> usize {
        self.times.len()
    }

    pub fn width(&self) -> usize {
        self.positions.len()
    }

    pub fn row(&self, frame: usize) -> &[f64] {
        let w = self.width();
        &self.values[frame * w..(frame + 1) * w]
    }

    fn same_shape(&self, other: &SpaceTimeField) -> bool {
        self.frames() == other.frames() && self.width() == other.width()
    }
}

/// Which level set a curve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `θ ∈ {0, π}`: zeros of `Im ψ`.
    ImZero,
    /// `θ ∈ {π/2, 3π/2}`: zeros of `Re ψ`.
    ReZero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsophaseCurve {
    pub branch: Branch,
    /// `(t, x)` points, one per consecutive frame.
    pub points: Vec<(f64, f64)>,
    /// `dx/dt` at each point (central differences inside, one-sided at the
    /// ends); empty for single-point curves.
    pub slopes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IsophaseSet {
    pub curves: Vec<IsophaseCurve>,
    /// `Re ψ` vanishes everywhere, so its zero set is the whole grid.
    pub re_degenerate: bool,
    /// `Im ψ` vanishes everywhere.
    pub im_degenerate: bool,
}

impl IsophaseSet {
    pub fn slopes(&self, branch: Branch) -> impl Iterator<Item = f64> + '_ {
        self.curves.iter().filter(move |c| c.branch == branch).flat_map(|c| c.slopes.iter().copied())
    }

    pub fn all_slopes(&self) -> impl Iterator<Item = f64> + '_ {
        self.curves.iter().flat_map(|c| c.slopes.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsophaseOptions {
    /// Crossings where `|ψ|²` is below this fraction of the frame maximum
    /// are ignored (tails carry only rounding noise).
    pub density_floor: f64,
    /// Squared mode: a local minimum counts as a zero only below this
    /// fraction of the frame maximum of `|ψ|²`.
    pub minimum_threshold: f64,
    /// Largest `|Δx|` between frames for two points to join one curve;
    /// `None` uses half the smallest crossing spacing of the earlier frame.
    pub max_jump: Option<f64>,
}

impl Default for IsophaseOptions {
    fn default() -> Self {
        IsophaseOptions { density_floor: 1e-4, minimum_threshold: 0.02, max_jump: None }
    }
}

/// Locates the zero sets of `Re ψ` and `Im ψ` in the `(t, x)` plane and
/// estimates the phase velocity along each.
///
/// With a trajectory the signed fields are used (linear interpolation of
/// sign changes); otherwise zeros are local minima of the squared fields,
/// refined by a parabola through three samples.
pub fn isophase_extract(
    re2: &SpaceTimeField,
    im2: &SpaceTimeField,
    psi: Option<&[StateVector]>,
    options: IsophaseOptions,
) -> Result<IsophaseSet> {
    if re2.values.is_empty() || im2.values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if !re2.same_shape(im2) || re2.positions != im2.positions || re2.times != im2.times {
        return Err(Error::DimensionMismatch { left: re2.values.len(), right: im2.values.len() });
    }
    if let Some(traj) = psi {
        if traj.len() != re2.frames() || traj.iter().any(|s| s.dim() != re2.width()) {
            return Err(Error::DimensionMismatch { left: traj.len(), right: re2.frames() });
        }
    }

    let density: Vec<f64> = re2.values.iter().zip(&im2.values).map(|(a, b)| a + b).collect();
    let peak = density.iter().copied().fold(0.0, f64::max);
    let vanishes = |f: &SpaceTimeField| f.values.iter().all(|&v| v <= 1e-24 * peak);
    let mut set = IsophaseSet { re_degenerate: vanishes(re2), im_degenerate: vanishes(im2), ..Default::default() };

    let w = re2.width();
    for (branch, field, degenerate) in [(Branch::ImZero, im2, set.im_degenerate), (Branch::ReZero, re2, set.re_degenerate)] {
        if degenerate {
            continue;
        }
        let mut per_frame = Vec::with_capacity(field.frames());
        for f in 0..field.frames() {
            let rho = &density[f * w..(f + 1) * w];
            let rho_max = rho.iter().copied().fold(0.0, f64::max);
            let zeros = match psi {
                Some(traj) => {
                    let signed: Vec<f64> = traj[f]
                        .amplitudes()
                        .iter()
                        .map(|c| if branch == Branch::ReZero { c.re } else { c.im })
                        .collect();
                    signed_zeros(&signed, &field.positions, rho, rho_max * options.density_floor)
                }
                None => squared_zeros(
                    field.row(f),
                    &field.positions,
                    rho,
                    rho_max * options.density_floor,
                    rho_max * options.minimum_threshold,
                ),
            };
            per_frame.push(zeros);
        }
        set.curves.extend(link(branch, &field.times, &per_frame, options.max_jump));
    }
    Ok(set)
}

fn signed_zeros(values: &[f64], xs: &[f64], rho: &[f64], floor: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for k in 0..values.len().saturating_sub(1) {
        let (a, b) = (values[k], values[k + 1]);
        if rho[k].max(rho[k + 1]) < floor {
            continue;
        }
        if a == 0.0 {
            out.push(xs[k]);
        } else if a * b < 0.0 {
            out.push(xs[k] + (xs[k + 1] - xs[k]) * a / (a - b));
        }
    }
    out
}

fn squared_zeros(values: &[f64], xs: &[f64], rho: &[f64], floor: f64, threshold: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for k in 1..values.len().saturating_sub(1) {
        let (l, c, r) = (values[k - 1], values[k], values[k + 1]);
        if !(c < l && c <= r) || c > threshold {
            continue;
        }
        if rho[k - 1].max(rho[k + 1]) < floor {
            continue;
        }
        let curvature = l - 2.0 * c + r;
        let shift = if curvature > 0.0 { (0.5 * (l - r) / curvature).clamp(-0.5, 0.5) } else { 0.0 };
        out.push(xs[k] + shift * (xs[k + 1] - xs[k - 1]) / 2.0);
    }
    out
}

fn link(branch: Branch, times: &[f64], per_frame: &[Vec<f64>], max_jump: Option<f64>) -> Vec<IsophaseCurve> {
    let mut finished: Vec<IsophaseCurve> = Vec::new();
    // Curves still growing, with the x of their last point.
    let mut open: Vec<IsophaseCurve> = Vec::new();
    for (f, zeros) in per_frame.iter().enumerate() {
        let t = times[f];
        let mut claimed = alloc::vec![false; zeros.len()];
        let mut next_open = Vec::new();
        if !open.is_empty() {
            let lasts: Vec<f64> = open.iter().map(|c| c.points.last().unwrap().1).collect();
            let jump = max_jump.unwrap_or_else(|| {
                let spacing = lasts.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min);
                if spacing.is_finite() {
                    0.5 * spacing
                } else {
                    f64::INFINITY
                }
            });
            // Greedy nearest-pair assignment.
            let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
            for (ci, &xl) in lasts.iter().enumerate() {
                for (zi, &x) in zeros.iter().enumerate() {
                    let d = (x - xl).abs();
                    if d <= jump {
                        pairs.push((d, ci, zi));
                    }
                }
            }
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut taken = alloc::vec![None; open.len()];
            for (_, ci, zi) in pairs {
                if taken[ci].is_none() && !claimed[zi] {
                    taken[ci] = Some(zi);
                    claimed[zi] = true;
                }
            }
            for (mut curve, slot) in open.drain(..).zip(taken) {
                match slot {
                    Some(zi) => {
                        curve.points.push((t, zeros[zi]));
                        next_open.push(curve);
                    }
                    None => finished.push(curve),
                }
            }
        }
        for (zi, &x) in zeros.iter().enumerate() {
            if !claimed[zi] {
                next_open.push(IsophaseCurve { branch, points: alloc::vec![(t, x)], slopes: Vec::new() });
            }
        }
        next_open.sort_by(|a, b| a.points.last().unwrap().1.total_cmp(&b.points.last().unwrap().1));
        open = next_open;
    }
    finished.extend(open);
    for c in &mut finished {
        c.slopes = slopes(&c.points);
    }
    finished.sort_by(|a, b| a.points[0].0.total_cmp(&b.points[0].0).then(a.points[0].1.total_cmp(&b.points[0].1)));
    finished
}

fn slopes(points: &[(f64, f64)]) -> Vec<f64> {
    let m = points.len();
    if m < 2 {
        return Vec::new();
    }
    (0..m)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(m - 1));
            (points[b].1 - points[a].1) / (points[b].0 - points[a].0)
        })
        .collect()
}
