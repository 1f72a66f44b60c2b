//! H- and V-descriptions of polyhedra and affine maps between spaces.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use super::linalg::RatMatrix;
use super::rational::{dot, zero_vec, RatVector, Rational};
use crate::error::{Error, Result};

/// One row `coeffs · x (≤ | =) rhs`. Whether it is an inequality or an
/// equation depends on which list of an [`HPoly`] it sits in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: RatVector,
    pub rhs: Rational,
    pub label: Option<String>,
}

impl Constraint {
    pub fn new(coeffs: RatVector, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            rhs,
            label: None,
        }
    }

    pub fn labeled(coeffs: RatVector, rhs: Rational, label: impl Into<String>) -> Self {
        Constraint {
            coeffs,
            rhs,
            label: Some(label.into()),
        }
    }

    /// `rhs − coeffs · x`
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.rhs - dot(&self.coeffs, x)
    }

    /// If the row reads `−c·x_j ≤ 0` with `c > 0`, returns `(j, c)`.
    pub(crate) fn as_sign_bound(&self) -> Option<(usize, Rational)> {
        if !self.rhs.is_zero() {
            return None;
        }
        let mut found = None;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if found.is_some() || !a.is_negative() {
                return None;
            }
            found = Some((j, -a.clone()));
        }
        found
    }
}

/// Polyhedron `{x ∈ R^dim : A x ≤ b, C x = d}`.
///
/// The size of a description is its number of inequalities; equations are
/// not counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPoly {
    pub dim: usize,
    pub ineqs: Vec<Constraint>,
    pub eqs: Vec<Constraint>,
}

impl HPoly {
    pub fn new(dim: usize) -> Self {
        HPoly {
            dim,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.ineqs.len()
    }

    /// Adds `coeffs · x ≤ rhs`.
    pub fn push_ineq(&mut self, coeffs: RatVector, rhs: Rational, label: Option<String>) {
        debug_assert_eq!(coeffs.len(), self.dim);
        self.ineqs.push(Constraint { coeffs, rhs, label });
    }

    /// Adds `coeffs · x = rhs`.
    pub fn push_eq(&mut self, coeffs: RatVector, rhs: Rational, label: Option<String>) {
        debug_assert_eq!(coeffs.len(), self.dim);
        self.eqs.push(Constraint { coeffs, rhs, label });
    }

    /// Adds `x_j ≥ 0` as the row `−x_j ≤ 0`.
    pub fn push_nonneg(&mut self, j: usize, label: Option<String>) {
        let mut a = zero_vec(self.dim);
        a[j] = -Rational::from_integer(1.into());
        self.push_ineq(a, Rational::zero(), label);
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(row) = self
            .ineqs
            .iter()
            .chain(&self.eqs)
            .find(|r| r.coeffs.len() != self.dim)
        {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: row.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.ineqs.iter().all(|r| !r.slack(x).is_negative())
            && self.eqs.iter().all(|r| r.slack(x).is_zero())
    }

    pub fn ineq_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.dim, self.ineqs.iter().map(|r| r.coeffs.clone()).collect())
    }

    pub fn eq_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.dim, self.eqs.iter().map(|r| r.coeffs.clone()).collect())
    }

    /// Copy of this polyhedron with all labels dropped.
    pub fn unlabeled(&self) -> HPoly {
        let strip = |rows: &[Constraint]| {
            rows.iter()
                .map(|r| Constraint::new(r.coeffs.clone(), r.rhs.clone()))
                .collect()
        };
        HPoly {
            dim: self.dim,
            ineqs: strip(&self.ineqs),
            eqs: strip(&self.eqs),
        }
    }

    /// Re-expresses the rows in a space of dimension `new_dim`, placing the
    /// current coordinates at `offset..offset + dim`.
    pub fn embed(&self, new_dim: usize, offset: usize) -> HPoly {
        assert!(offset + self.dim <= new_dim);
        let widen = |r: &Constraint| {
            let mut a = zero_vec(new_dim);
            a[offset..offset + self.dim].clone_from_slice(&r.coeffs);
            Constraint {
                coeffs: a,
                rhs: r.rhs.clone(),
                label: r.label.clone(),
            }
        };
        HPoly {
            dim: new_dim,
            ineqs: self.ineqs.iter().map(widen).collect(),
            eqs: self.eqs.iter().map(widen).collect(),
        }
    }

    /// Intersection of two polyhedra in the same space.
    pub fn intersect(&self, other: &HPoly) -> Result<HPoly> {
        Error::check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        out.ineqs.extend(other.ineqs.iter().cloned());
        out.eqs.extend(other.eqs.iter().cloned());
        Ok(out)
    }
}

/// Polytope given as the convex hull of a finite point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPoly {
    pub dim: usize,
    pub points: Vec<RatVector>,
    pub labels: Vec<Option<String>>,
}

impl VPoly {
    /// Fails on ragged input or duplicate points.
    pub fn new(dim: usize, points: Vec<RatVector>) -> Result<Self> {
        let labels = vec![None; points.len()];
        Self::with_labels(dim, points, labels)
    }

    pub fn with_labels(
        dim: usize,
        points: Vec<RatVector>,
        labels: Vec<Option<String>>,
    ) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::input("label count differs from point count"));
        }
        let mut seen = HashSet::new();
        for p in &points {
            Error::check_dim(dim, p.len())?;
            if !seen.insert(p) {
                return Err(Error::input("duplicate point in vertex list"));
            }
        }
        Ok(VPoly {
            dim,
            points,
            labels,
        })
    }

    /// Builds from points, silently dropping duplicates (first occurrence
    /// wins).
    pub fn dedup(dim: usize, points: Vec<RatVector>) -> Result<Self> {
        let mut seen = HashSet::new();
        let unique: Vec<RatVector> = points
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        Self::new(dim, unique)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels[i].clone().unwrap_or_else(|| format!("v{}", i + 1))
    }
}

/// `y ↦ matrix · y + offset` from `R^d` to `R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: RatMatrix,
    pub offset: RatVector,
}

impl AffineMap {
    pub fn new(matrix: RatMatrix, offset: RatVector) -> Result<Self> {
        Error::check_dim(matrix.rows(), offset.len())?;
        Ok(AffineMap { matrix, offset })
    }

    pub fn linear(matrix: RatMatrix) -> Self {
        let offset = zero_vec(matrix.rows());
        AffineMap { matrix, offset }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(RatMatrix::identity(n))
    }

    /// Orthogonal projection of `R^d` onto the listed coordinates.
    pub fn coordinate_projection(d: usize, coords: &[usize]) -> Self {
        let mut m = RatMatrix::zeros(coords.len(), d);
        for (i, &c) in coords.iter().enumerate() {
            m[(i, c)] = Rational::from_integer(1.into());
        }
        Self::linear(m)
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, y: &[Rational]) -> RatVector {
        let mut out = self.matrix.mul_vec(y);
        for (o, c) in out.iter_mut().zip(&self.offset) {
            *o += c;
        }
        out
    }

    /// `self ∘ inner`, i.e. `y ↦ self(inner(y))`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        assert_eq!(self.source_dim(), inner.target_dim());
        AffineMap {
            matrix: self.matrix.mul(&inner.matrix),
            offset: self.apply(&inner.offset),
        }
    }

    /// Pulls the affine functional `a · x + c` back through the map:
    /// returns `(aᵀ M, a · offset + c)`.
    pub fn pull_back(&self, a: &[Rational], c: &Rational) -> (RatVector, Rational) {
        (self.matrix.vec_mul(a), dot(a, &self.offset) + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, vec_from_ints};

    #[test]
    fn sign_bound_detection() {
        let r = Constraint::new(vec_from_ints(&[0, -3, 0]), int(0));
        assert_eq!(r.as_sign_bound(), Some((1, int(3))));
        assert_eq!(Constraint::new(vec_from_ints(&[0, 3, 0]), int(0)).as_sign_bound(), None);
        assert_eq!(Constraint::new(vec_from_ints(&[-1, -1]), int(0)).as_sign_bound(), None);
        assert_eq!(Constraint::new(vec_from_ints(&[-1, 0]), int(1)).as_sign_bound(), None);
    }

    #[test]
    fn vpoly_rejects_duplicates() {
        let p = vec_from_ints(&[1, 2]);
        assert!(VPoly::new(2, vec![p.clone(), p.clone()]).is_err());
        assert_eq!(VPoly::dedup(2, vec![p.clone(), p]).unwrap().len(), 1);
        assert!(VPoly::new(3, vec![vec_from_ints(&[1, 2])]).is_err());
    }

    #[test]
    fn affine_composition_is_associative() {
        let a = AffineMap::new(RatMatrix::from_ints(&[&[1, 2], &[0, 1]]), vec_from_ints(&[1, 0])).unwrap();
        let b = AffineMap::new(RatMatrix::from_ints(&[&[2, 0], &[1, 1]]), vec_from_ints(&[0, 3])).unwrap();
        let c = AffineMap::new(RatMatrix::from_ints(&[&[1, -1], &[3, 0]]), vec_from_ints(&[-2, 1])).unwrap();
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        let y = vec_from_ints(&[5, -7]);
        assert_eq!(a.compose(&b).apply(&y), a.apply(&b.apply(&y)));
    }

    #[test]
    fn embed_shifts_coordinates() {
        let mut h = HPoly::new(1);
        h.push_ineq(vec_from_ints(&[1]), int(1), None);
        let e = h.embed(3, 2);
        assert_eq!(e.ineqs[0].coeffs, vec_from_ints(&[0, 0, 1]));
        assert!(e.contains(&vec_from_ints(&[9, 9, 1])));
    }
}
