//! Variations on the baseline economy: a fixed factor in production,
//! automated R&D, a societal cap on automation, skill heterogeneity and
//! capital that is specific to newly automated tasks.

pub mod fixed_factor;
pub mod nostalgic;
pub mod rnd;
pub mod skills;
pub mod specific;

pub use fixed_factor::*;
pub use nostalgic::*;
pub use rnd::*;
pub use skills::*;
pub use specific::*;
