//! Computational convex geometry around the Brunn-Minkowski inequality and
//! its Bonnesen refinements for sections and projections.
//!
//! The crate works with convex polytopes in dimensions 2 through 4. It
//! computes both Bonnesen bounds, verifies the chain
//! `vol(aA + bB) >= Bonnesen bound >= Brunn-Minkowski bound`, implements
//! Steiner symmetrization and Schwarz rounding, and classifies equality
//! cases with checkable witnesses (homothety, or a pair of homothetic
//! bodies stretched along a common direction).

pub mod bonnesen;
pub mod equality;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod oracle;
pub mod profile;
pub mod symmetrize;
pub mod tolerance;

pub use error::{Error, Result};
pub use geometry::{ConvexBody, Direction, Halfspace};
pub use profile::{build_profile, SampledProfile, SectionProfile};
pub use tolerance::Tolerances;
