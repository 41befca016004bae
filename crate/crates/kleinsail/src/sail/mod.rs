//! Klein sails: cone location, lattice-point enumeration, exact hulls and
//! fixed points of symmetries.

mod cone;
mod hull;
mod patch;

pub use cone::{cone_fiber_ends, enumerate_cone_points, locate_cone, Cone, ConeFrame, Location};
pub use hull::{convex_hull, Facet, Hull};
pub use patch::{fixed_point_on_sail, sail_patch, FixedPoint, SailPatch};

use thiserror::Error;

use crate::cf::CfError;

pub type Point = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SailError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("all points lie in a hyperplane through the origin")]
    Degenerate,
    #[error("hulls are supported in dimensions 2 and 3 only (got {0})")]
    UnsupportedDimension(usize),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error(transparent)]
    Cf(#[from] CfError),
}
