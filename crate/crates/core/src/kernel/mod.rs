//! Exact rational linear algebra and polyhedral primitives.

pub mod bitset;
pub mod fm;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod redundancy;

pub use bitset::BitSet;
pub use fm::{fm_image, fm_project};
pub use hull::{affine_hull, hull, in_hull, is_vertex, vertices};
pub use linalg::RatMatrix;
pub use lp::{feasible_point, lp_solve, LpResult, LpStatus, Sense};
pub use poly::{AffineMap, Constraint, HPoly, VPoly};
pub use rational::{RatVector, Rational};
pub use redundancy::{as_inequalities, poly_equal, remove_redundancy, Comparison, Polytope, Side};
