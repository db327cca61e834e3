//! Read-out: projective sampling, the Ramsey ancilla interferometer for
//! `Re²ψ`/`Im²ψ`, and isophase curve extraction.

mod isophase;
mod ramsey;
mod sampling;

pub use isophase::{isophase_extract, Branch, IsophaseCurve, IsophaseOptions, IsophaseSet, SpaceTimeField};
pub use ramsey::{ramsey_probabilities, ramsey_state, RamseyInterferometer, RamseyOutcome};
pub use sampling::{sample, MeasurementRecord, RNG_ALGORITHM};
