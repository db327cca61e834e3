//! Scenario runner for `qschrod-core`: TOML scenario files, CSV/JSON
//! output, and the dense/FFT reference oracles used to validate the gate
//! path.

pub mod config;
pub mod emit;
mod error;
pub mod oracle;
pub mod scenario;
mod trotter;

pub use error::{Error, Result};
pub use trotter::trotter_error;

pub use qschrod_core;
