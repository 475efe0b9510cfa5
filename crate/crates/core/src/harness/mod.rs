//! Seeded random bodies, scenario generation, JSON I/O and fuzzing.

pub mod fuzz;
pub mod io;
pub mod random;
pub mod rng;
pub mod scenario;

pub use fuzz::{run_fuzz, run_fuzz_with, FuzzConfig, FuzzMode, FuzzReport};
pub use random::random_body;
pub use scenario::{EqualityKind, GroundTruth, Scenario};
