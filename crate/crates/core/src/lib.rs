//! Exact-arithmetic toolkit for extended formulations of polytopes.
//!
//! Modules, from the bottom up:
//!
//! * [`kernel`]: rational linear algebra, an exact simplex solver and the
//!   polyhedral primitives built on it (affine hulls, vertex and facet
//!   enumeration, Fourier-Motzkin projection, redundancy removal).
//! * [`zoo`]: generators for the classical combinatorial polytopes
//!   (matchings, permutahedra, Birkhoff, spanning trees, knapsack, ...).
//! * [`constructions`]: extended formulations built as [`Extension`]s,
//!   plus exact verification that an extension projects onto its target.
//! * [`slack`]: slack maps and slack matrices, and the conversion between
//!   nonnegative factorizations and extensions.
//! * [`bounds`]: lower bounds on extension complexity (rank, rectangle
//!   covers, fooling sets, face counting) and face-lattice embeddings.
//!
//! All arithmetic is exact; there are no tolerances anywhere.

pub mod bounds;
pub mod constructions;
mod error;
pub mod kernel;
pub mod slack;
pub mod zoo;

pub use constructions::Extension;
pub use error::{Error, Result};
pub use kernel::{AffineMap, Constraint, HPoly, RatMatrix, RatVector, Rational, VPoly};
