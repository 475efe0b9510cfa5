//! Polytope kernel: hulls, Minkowski combinations, support functions,
//! faces, projections, sections, volumes and membership.

mod body;
pub mod distance;
pub(crate) mod hull;
pub mod ops;
pub mod shapes;

pub use body::{BodyJson, ConvexBody, Direction, Halfspace};
pub use distance::{hausdorff, point_distance};
pub use ops::{
    contains, face, hull, minkowski_combination, project, section, slice, stretch, support, volume,
};
