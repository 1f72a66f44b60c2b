//! Extended formulations: a polyhedron `Q ⊆ R^d` with an affine map `p`
//! such that `p(Q)` is the target polytope.

mod balas;
mod classic;
mod colorful;
mod knapsack;
mod sorting;
mod verify;

pub use balas::balas_union;
pub use classic::{birkhoff_extension, martin_spanning_tree_extension, martin_tree_lift};
pub use colorful::{
    colorful_matching_extension, colorful_matchings, covering_coloring_family, Coloring,
    ColoringFamily, FAMILY_SEED,
};
pub use knapsack::{knapsack_flow_extension, knapsack_network, Arc, DPNetwork, Node};
pub use sorting::{batcher_network, bubble_network, sorting_network_extension, SortingNetwork};
pub use verify::{verify_extension, Failure, Target, VerifyReport};

use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::linalg::nullspace;
use crate::kernel::rational::dot;
use crate::kernel::{AffineMap, HPoly, RatMatrix, Rational, VPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub name: String,
    pub q: HPoly,
    pub proj: AffineMap,
}

impl Extension {
    pub fn new(name: impl Into<String>, q: HPoly, proj: AffineMap) -> Result<Self> {
        q.validate()?;
        Error::check_dim(q.dim, proj.source_dim())?;
        Ok(Extension {
            name: name.into(),
            q,
            proj,
        })
    }

    /// Number of inequalities of `Q`.
    pub fn size(&self) -> usize {
        self.q.size()
    }

    pub fn dim(&self) -> usize {
        self.q.dim
    }

    pub fn target_dim(&self) -> usize {
        self.proj.target_dim()
    }

    /// `P` itself, with the identity map.
    pub fn identity(p: &HPoly) -> Self {
        Extension {
            name: "identity".into(),
            q: p.clone(),
            proj: AffineMap::identity(p.dim),
        }
    }

    /// The simplex over the points of `x`, mapped by `λ ↦ Σ λ_x x`.
    pub fn trivial(x: &VPoly) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::input("trivial extension of an empty point set"));
        }
        let m = x.len();
        let mut q = HPoly::new(m);
        for j in 0..m {
            q.push_nonneg(j, Some(format!("lambda {}", x.label(j))));
        }
        q.push_eq(vec![Rational::one(); m], Rational::one(), Some("convexity".into()));
        let cols = RatMatrix::from_rows(x.dim, x.points.clone());
        Extension::new("trivial", q, AffineMap::linear(cols.transpose()))
    }

    /// Basis of the lineality space `{y : A y = 0, C y = 0}` of `Q`.
    pub fn lineality(&self) -> Vec<crate::kernel::RatVector> {
        let rows = self
            .q
            .ineqs
            .iter()
            .chain(&self.q.eqs)
            .map(|r| r.coeffs.clone())
            .collect();
        nullspace(&RatMatrix::from_rows(self.q.dim, rows))
    }

    /// Intersects `Q` with the orthogonal complement of its lineality space.
    /// When `p(Q)` is a polytope the projection is unchanged and the result
    /// is pointed.
    pub fn pointed(&self) -> Result<Extension> {
        let lin = self.lineality();
        if lin.is_empty() {
            return Ok(self.clone());
        }
        for l in &lin {
            if !self.proj.matrix.mul_vec(l).iter().all(num_traits::Zero::is_zero) {
                return Err(Error::Unbounded);
            }
        }
        let mut q = self.q.clone();
        for (i, l) in lin.into_iter().enumerate() {
            debug_assert!(dot(&l, &l) > Rational::from_integer(0.into()));
            q.push_eq(l, Rational::from_integer(0.into()), Some(format!("lineality {}", i + 1)));
        }
        Ok(Extension {
            name: self.name.clone(),
            q,
            proj: self.proj.clone(),
        })
    }
}
