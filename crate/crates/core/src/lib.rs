//! Compute-centric task automation economy.
//!
//! Tasks are ordered by complexity; a share Φ of them can be performed by
//! capital (compute) and the rest only by labor. Output is a CES aggregate
//! over tasks. The crate evaluates static equilibria, solves the Ramsey
//! problem along exogenous automation paths, classifies long-run wage
//! regimes, and runs the fixed-factor, automated-R&D, nostalgic-jobs,
//! skill and specific-capital extensions.

pub mod analysis;
pub mod distributions;
pub mod dynamics;
pub mod error;
pub mod extensions;
pub mod scenario_runner;
pub mod static_economy;

pub use error::{Error, Result};
