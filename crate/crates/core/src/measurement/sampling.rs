use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::statevector::StateVector;
use crate::{Error, Result};

/// Generator identity recorded with every histogram.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng/seed_from_u64 (rand_chacha 0.9)";

/// Outcome histogram of `shots` projective measurements in the
/// computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub shots: u64,
    pub counts: Vec<u64>,
    pub seed: u64,
    pub rng: &'static str,
    /// Discrete normalization `𝒩` of the sampled wave function, if known.
    pub normalization: Option<f64>,
}

impl MeasurementRecord {
    /// `𝒩² N_k / N`, or `N_k / N` without a normalization factor.
    pub fn estimates(&self) -> Vec<f64> {
        let scale = self.normalization.map_or(1.0, |n| n * n) / self.shots as f64;
        self.counts.iter().map(|&c| c as f64 * scale).collect()
    }

    pub fn with_normalization(mut self, normalization: f64) -> Self {
        self.normalization = Some(normalization);
        self
    }

    /// `max_k |N_k/N − p_k|`.
    pub fn max_deviation(&self, probabilities: &[f64]) -> f64 {
        let n = self.shots as f64;
        self.counts.iter().zip(probabilities).map(|(&c, p)| (c as f64 / n - p).abs()).fold(0.0, f64::max)
    }
}

/// Draws `shots` outcomes with probabilities `|c_k|²`. Deterministic for a
/// given `(state, shots, seed)`.
pub fn sample(state: &StateVector, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut cumulative = Vec::with_capacity(state.dim());
    let mut acc = 0.0;
    for c in state.amplitudes() {
        acc += c.norm_sqr();
        cumulative.push(acc);
    }
    if acc.is_nan() || acc <= 0.0 {
        return Err(Error::DegenerateInput);
    }
    let last = cumulative.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; state.dim()];
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * acc;
        let k = cumulative.partition_point(|&c| c <= u).min(last);
        counts[k] += 1;
    }
    Ok(MeasurementRecord { shots, counts, seed, rng: RNG_ALGORITHM, normalization: None })
}
