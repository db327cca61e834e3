//! Strided amplitude kernels.
//!
//! Every gate reduces to a walk over the indices `i` with `i & mask == value`.
//! The walk enumerates the submasks of the free bits, so its cost is
//! `2^(n - popcount(mask))` rather than `2^n`.

use crate::{cis, C64};

/// Calls `f` on every index `i < dim` with `i & mask == value`.
#[inline]
pub(crate) fn for_each_matching(dim: usize, mask: usize, value: usize, mut f: impl FnMut(usize)) {
    debug_assert_eq!(value & !mask, 0);
    let free = (dim - 1) & !mask;
    let mut sub = free;
    loop {
        f(value | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
}

/// Multiplies every amplitude selected by `(mask, value)` by `e^{iφ}`.
pub(crate) fn phase(amps: &mut [C64], mask: usize, value: usize, phi: f64) {
    if phi == 0.0 {
        return;
    }
    let z = cis(phi);
    for_each_matching(amps.len(), mask, value, |i| amps[i] *= z);
}

/// Hadamard on `bit` restricted to indices selected by `(mask, value)`
/// (`mask` must not contain `bit`).
pub(crate) fn hadamard(amps: &mut [C64], bit: usize, mask: usize, value: usize) {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    for_each_matching(amps.len(), mask | bit, value, |i| {
        let j = i | bit;
        let a = amps[i];
        let b = amps[j];
        amps[i] = (a + b) * s;
        amps[j] = (a - b) * s;
    });
}

/// Swaps the `bit = 0` and `bit = 1` amplitudes on the selected indices.
pub(crate) fn flip(amps: &mut [C64], bit: usize, mask: usize, value: usize) {
    for_each_matching(amps.len(), mask | bit, value, |i| amps.swap(i, i | bit));
}

/// Applies a two-qubit diagonal with `phases[2 * a + b]` on `(bit_a, bit_b)`
/// values `(a, b)`.
pub(crate) fn pair_diagonal(amps: &mut [C64], bit_a: usize, bit_b: usize, phases: &[f64; 4]) {
    let z = phases.map(cis);
    let mask = bit_a | bit_b;
    for (slot, factor) in z.iter().enumerate() {
        let value = if slot & 2 != 0 { bit_a } else { 0 } | if slot & 1 != 0 { bit_b } else { 0 };
        if phases[slot] != 0.0 {
            for_each_matching(amps.len(), mask, value, |i| amps[i] *= *factor);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn enumerates_exactly_the_matching_indices() {
        let dim = 64;
        for &(mask, value) in &[(0usize, 0usize), (0b101, 0b001), (0b111111, 0b010101), (0b100000, 0b100000)] {
            let mut seen = Vec::new();
            for_each_matching(dim, mask, value, |i| seen.push(i));
            seen.sort_unstable();
            let expected: Vec<usize> = (0..dim).filter(|i| i & mask == value).collect();
            assert_eq!(seen, expected);
        }
    }
}
